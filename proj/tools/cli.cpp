// Copyright 2026 The qkd3 Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "qkd3/errors.hpp"
#include "qkd3/serialize.hpp"

namespace qkd3::cli {

namespace {

// Raw option values. Each one the command line leaves unset may be filled
// from the --config file.
struct Settings {
    std::string config_path;
    std::string protocol = "three-state";
    std::size_t n = 0;
    std::uint32_t m = 0;
    std::string attack = "none";
    std::string resend_policy = "orthogonal-inference";
    std::vector<std::string> resend_policies;
    double fraction = 1.0;
    std::vector<double> fractions;
    std::string eve_filter = "uniform";
    std::vector<std::string> eve_filters;
    std::size_t trials = 1;
    std::uint64_t seed = 0;
    std::string output;
    std::string format;
    bool continue_on_tamper = false;
    bool transcripts = false;
    unsigned threads = 0;
};

bool given(const CLI::App& app, const std::string& name) {
    const auto* opt = app.get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
}

template <typename T>
void fill(const CLI::App& app, const Json& file, const std::string& name, T& target) {
    if (given(app, "--" + name)) {
        return;
    }
    // Config keys may spell dashes as underscores.
    std::string alt = name;
    std::replace(alt.begin(), alt.end(), '-', '_');
    for (const std::string& key : {name, alt}) {
        if (file.contains(key)) {
            try {
                target = file.at(key).get<T>();
            } catch (const Json::exception& e) {
                throw InvalidConfig(name, std::string("bad value in config file: ") + e.what());
            }
            return;
        }
    }
}

void merge_config_file(const CLI::App& app, Settings& s) {
    if (s.config_path.empty()) {
        return;
    }
    std::ifstream in(s.config_path);
    if (!in) {
        throw InvalidConfig("config", "cannot open " + s.config_path);
    }
    Json file;
    try {
        file = Json::parse(in);
    } catch (const Json::exception& e) {
        throw InvalidConfig("config", e.what());
    }
    if (!file.is_object()) {
        throw InvalidConfig("config", "config file must hold a JSON object");
    }
    fill(app, file, "protocol", s.protocol);
    fill(app, file, "n", s.n);
    fill(app, file, "m", s.m);
    fill(app, file, "attack", s.attack);
    fill(app, file, "resend-policy", s.resend_policy);
    fill(app, file, "resend-policies", s.resend_policies);
    fill(app, file, "fraction", s.fraction);
    fill(app, file, "fractions", s.fractions);
    fill(app, file, "eve-filter", s.eve_filter);
    fill(app, file, "eve-filters", s.eve_filters);
    fill(app, file, "trials", s.trials);
    fill(app, file, "seed", s.seed);
    fill(app, file, "output", s.output);
    fill(app, file, "format", s.format);
    fill(app, file, "continue-on-tamper", s.continue_on_tamper);
    fill(app, file, "transcripts", s.transcripts);
    fill(app, file, "threads", s.threads);
}

bool file_sets(const Settings& s, const std::string& key) {
    if (s.config_path.empty()) {
        return false;
    }
    std::ifstream in(s.config_path);
    const Json file = Json::parse(in, nullptr, false);
    return file.is_object() && file.contains(key);
}

void apply_env_seed(const CLI::App& app, Settings& s) {
    if (given(app, "--seed") || file_sets(s, "seed")) {
        return;
    }
    if (const char* env = std::getenv(kSeedEnvVar); env != nullptr && *env != '\0') {
        try {
            std::size_t used = 0;
            s.seed = std::stoull(env, &used, 0);
            if (used != std::string(env).size()) {
                throw std::invalid_argument(env);
            }
        } catch (const std::exception&) {
            throw InvalidConfig("seed", std::string(kSeedEnvVar) + " is not an unsigned integer");
        }
    }
}

ResendPolicy parse_policy(const std::string& text) {
    if (auto p = resend_policy_from_string(text)) {
        return *p;
    }
    throw InvalidConfig("resend-policy", "unknown policy '" + text + "'");
}

EveFilterChoice parse_eve_filter(const std::string& text) {
    if (text == "uniform") {
        return {};
    }
    try {
        std::size_t used = 0;
        const int deg = std::stoi(text, &used);
        if (used == text.size()) {
            if (auto p = polarization_from_degrees(deg)) {
                return EveFilterChoice{*p};
            }
        }
    } catch (const std::exception&) {
    }
    throw InvalidConfig("eve-filter", "expected 'uniform' or one of 0, 45, 90, 135; got '" + text + "'");
}

AttackStrategy parse_attack(const CLI::App& app, const Settings& s) {
    const bool active = s.attack == "intercept-resend" || s.attack == "stuck-filter";
    if (!active) {
        for (const char* name : {"--resend-policy", "--fraction", "--eve-filter"}) {
            if (given(app, name)) {
                throw InvalidConfig(std::string(name).substr(2), "only applies to active attacks");
            }
        }
    }
    if (s.attack == "none") {
        return NoAttack{};
    }
    if (s.attack == "passive") {
        return PassiveClassical{};
    }
    if (s.attack == "intercept-resend") {
        return InterceptResend{parse_eve_filter(s.eve_filter), parse_policy(s.resend_policy), s.fraction};
    }
    if (s.attack == "stuck-filter") {
        const std::string angle = s.eve_filter == "uniform" ? "0" : s.eve_filter;
        return StuckFilter{*parse_eve_filter(angle).fixed, parse_policy(s.resend_policy)};
    }
    throw InvalidConfig("attack", "expected none, passive, intercept-resend or stuck-filter; got '" + s.attack + "'");
}

Protocol parse_protocol(const std::string& text) {
    if (auto p = protocol_from_string(text)) {
        return *p;
    }
    throw InvalidConfig("protocol", "expected three-state or bb84; got '" + text + "'");
}

void check_format(const std::string& format) {
    if (format != "json" && format != "csv") {
        throw InvalidConfig("format", "expected json or csv; got '" + format + "'");
    }
}

void emit(const Settings& s, const std::string& text, std::ostream& out) {
    if (s.output.empty()) {
        out << text;
        return;
    }
    std::ofstream file(s.output, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw InvalidConfig("output", "cannot write " + s.output);
    }
    file << text;
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

void add_output_options(CLI::App& cmd, Settings& s) {
    cmd.add_option("--output", s.output, "Write to this file instead of stdout");
    cmd.add_option("--format", s.format, "json or csv");
}

void add_run_options(CLI::App& cmd, Settings& s) {
    cmd.add_option("--config", s.config_path, "JSON file supplying any option; the command line wins");
    cmd.add_option("--n", s.n, "Photons per session");
    cmd.add_option("--trials", s.trials, "Sessions to run");
    cmd.add_option("--seed", s.seed, "Master seed (default from $QKD3_SEED, else 0)");
    cmd.add_option("--threads", s.threads, "Worker threads (0 = hardware concurrency)");
}

int do_simulate(const CLI::App& cmd, Settings& s, std::ostream& out) {
    merge_config_file(cmd, s);
    apply_env_seed(cmd, s);
    SessionConfig config;
    config.protocol = parse_protocol(s.protocol);
    config.n = s.n;
    if (given(cmd, "--m") || file_sets(s, "m")) {
        config.m = s.m;
    }
    config.attack = parse_attack(cmd, s);
    config.seed = s.seed;
    config.trials = s.trials;
    config.abort_on_tamper = !s.continue_on_tamper;
    config.include_transcripts = s.transcripts;
    config.threads = s.threads;
    const std::string format = s.format.empty() ? "json" : s.format;
    check_format(format);
    validate(config);

    const auto reports = run(config);
    emit(s, format == "json" ? dump(simulate_document(config, reports)) : simulate_csv(reports), out);
    for (const auto& r : reports) {
        if (config.abort_on_tamper && r.tamper_detected) {
            return kExitTamperAbort;
        }
    }
    return kExitOk;
}

int do_analyze(Settings& s, std::ostream& out) {
    const std::string format = s.format.empty() ? "json" : s.format;
    check_format(format);
    emit(s, format == "json" ? dump(analyze_document()) : analyze_csv(), out);
    return kExitOk;
}

int do_compare(const CLI::App& cmd, Settings& s, std::ostream& out) {
    if (!given(cmd, "--n") || !given(cmd, "--m")) {
        throw InvalidConfig(given(cmd, "--n") ? "m" : "n", "compare needs both --n and --m");
    }
    if (s.n < 1) {
        throw InvalidConfig("n", "photon count must be at least 1");
    }
    const std::string format = s.format.empty() ? "json" : s.format;
    check_format(format);
    const RateComparison c = compare(static_cast<std::int64_t>(s.n), static_cast<std::int64_t>(s.m));
    emit(s, format == "json" ? dump(compare_document(c)) : compare_csv(c), out);
    return kExitOk;
}

int do_sweep(const CLI::App& cmd, Settings& s, std::ostream& out) {
    merge_config_file(cmd, s);
    apply_env_seed(cmd, s);
    SessionConfig base;
    base.protocol = parse_protocol(s.protocol);
    base.n = s.n;
    base.seed = s.seed;
    base.trials = s.trials;
    base.threads = s.threads;
    base.abort_on_tamper = false;

    SweepGrid grid = SweepGrid::standard();
    if (!s.eve_filters.empty()) {
        grid.filters.clear();
        for (const auto& f : s.eve_filters) {
            grid.filters.push_back(parse_eve_filter(f));
        }
    }
    if (!s.resend_policies.empty()) {
        grid.policies.clear();
        for (const auto& p : s.resend_policies) {
            grid.policies.push_back(parse_policy(p));
        }
    }
    if (!s.fractions.empty()) {
        grid.fractions = s.fractions;
    }
    for (double f : grid.fractions) {
        if (!(f >= 0.0 && f <= 1.0)) {
            throw InvalidConfig("fractions", "every fraction must lie in [0, 1]");
        }
    }
    const std::string format = s.format.empty() ? "csv" : s.format;
    check_format(format);
    validate(base);

    const auto rows = attack_sweep(base, grid);
    emit(s, format == "json" ? dump(sweep_document(base, rows)) : sweep_csv(rows), out);
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Three-state and BB84 quantum key distribution simulator", "qkd3"};
    app.require_subcommand(1);

    Settings sim;
    auto* simulate = app.add_subcommand("simulate", "Run seeded protocol sessions and report");
    add_run_options(*simulate, sim);
    simulate->add_option("--protocol", sim.protocol, "three-state or bb84");
    simulate->add_option("--m", sim.m, "BB84 parity rounds");
    simulate->add_option("--attack", sim.attack, "none, passive, intercept-resend or stuck-filter");
    simulate->add_option("--resend-policy", sim.resend_policy,
                         "orthogonal-inference, send-nothing or uniform-random");
    simulate->add_option("--fraction", sim.fraction, "Share of photons Eve intercepts");
    simulate->add_option("--eve-filter", sim.eve_filter, "uniform, or a fixed angle 0/45/90/135");
    simulate->add_flag("--continue-on-tamper", sim.continue_on_tamper, "Release keys even after tampering is seen");
    simulate->add_flag("--transcripts", sim.transcripts, "Include public transcripts in the report");
    add_output_options(*simulate, sim);

    Settings ana;
    auto* analyze = app.add_subcommand("analyze", "Exact joint distribution, entropies and rate chain");
    add_output_options(*analyze, ana);

    Settings cmp;
    auto* comparison = app.add_subcommand("compare", "Key size and certification of both protocols");
    comparison->add_option("--n", cmp.n, "Photons sent");
    comparison->add_option("--m", cmp.m, "BB84 parity rounds");
    add_output_options(*comparison, cmp);

    Settings swp;
    swp.n = 9000;
    swp.trials = 10;
    auto* sweep = app.add_subcommand("attack-sweep", "Disturbance per eavesdropping policy against the exact oracle");
    add_run_options(*sweep, swp);
    sweep->add_option("--protocol", swp.protocol, "Must be three-state");
    sweep->add_option("--eve-filters", swp.eve_filters, "Filter choices to sweep (uniform, 0, 45, 90)")->delimiter(',');
    sweep->add_option("--resend-policies", swp.resend_policies, "Resend policies to sweep")->delimiter(',');
    sweep->add_option("--fractions", swp.fractions, "Intercepted fractions to sweep")->delimiter(',');
    add_output_options(*sweep, swp);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalidConfig;
    }

    try {
        if (simulate->parsed()) {
            return do_simulate(*simulate, sim, out);
        }
        if (analyze->parsed()) {
            return do_analyze(ana, out);
        }
        if (comparison->parsed()) {
            return do_compare(*comparison, cmp, out);
        }
        return do_sweep(*sweep, swp, out);
    } catch (const InvalidConfig& e) {
        err << "invalid config: " << e.what() << "\n";
        return kExitInvalidConfig;
    }
}

}  // namespace qkd3::cli
