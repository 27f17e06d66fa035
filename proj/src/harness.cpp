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

#include "qkd3/harness.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>

#include "qkd3/errors.hpp"

namespace qkd3 {

void validate(const SessionConfig& config) {
    if (config.n < 1) {
        throw InvalidConfig("n", "photon count must be at least 1");
    }
    if (config.trials < 1) {
        throw InvalidConfig("trials", "at least one trial is required");
    }
    if (config.protocol == Protocol::Bb84 && !config.m) {
        throw InvalidConfig("m", "BB84 requires the number of parity rounds");
    }
    if (config.protocol == Protocol::ThreeState && config.m) {
        throw InvalidConfig("m", "parity rounds apply to BB84 only");
    }
    try {
        validate(config.attack);
    } catch (const std::invalid_argument& e) {
        throw InvalidConfig("fraction", e.what());
    }
    std::optional<Polarization> eve_angle;
    if (const auto* stuck = std::get_if<StuckFilter>(&config.attack)) {
        eve_angle = stuck->angle;
    } else if (const auto* ir = std::get_if<InterceptResend>(&config.attack)) {
        eve_angle = ir->filter_choice.fixed;
    }
    if (eve_angle) {
        const bool ok = config.protocol == Protocol::ThreeState
                            ? *eve_angle != Polarization::D135
                            : (*eve_angle == Polarization::Z0 || *eve_angle == Polarization::D45);
        if (!ok) {
            throw InvalidConfig("eve-filter", "Eve's angle is not a filter setting of this protocol");
        }
    }
}

std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial) { return derive_seed(master, trial); }

namespace {

template <typename Sent, typename Outcomes>
JointCounts count_joint(const Sent& sent, const Outcomes& outcomes) {
    JointCounts counts{};
    for (std::size_t i = 0; i < sent.size(); ++i) {
        ++counts[static_cast<std::size_t>(sent[i])][received_column(outcomes[i])];
    }
    return counts;
}

}  // namespace

SessionReport make_report(const ThreeStateRun& run, std::uint64_t trial, std::uint64_t seed,
                          bool include_transcript) {
    SessionReport r{.protocol = Protocol::ThreeState, .trial = trial, .seed = seed};
    r.sent = run.alice.sent.size();
    r.key = run.key.key_positions.size();
    r.auth = run.key.auth_positions.size();
    r.confirmed = r.key + r.auth;
    r.auth_failures = run.tamper.auth_failures;
    r.tamper_detected = run.tamper.tamper_detected;
    r.model_certification = run.tamper.model_certification;
    r.key_released = run.key_released;
    r.key_compared = run.key.key_bits.size();
    for (std::size_t i = 0; i < run.key.key_bits.size(); ++i) {
        r.key_mismatches += run.key.key_bits[i] != run.key.alice_key_bits[i];
    }
    r.joint_counts = count_joint(run.alice.sent, run.bob.outcomes);
    if (include_transcript) {
        r.transcript = run.transcript;
    }
    return r;
}

SessionReport make_report(const Bb84Session& session, std::uint32_t m, bool abort_on_tamper, std::uint64_t trial,
                          std::uint64_t seed, bool include_transcript) {
    SessionReport r{.protocol = Protocol::Bb84, .trial = trial, .seed = seed};
    r.sent = session.run.alice.sent.size();
    r.confirmed = session.sifted.kept_indices.size();
    r.parity_rounds = m;
    r.model_certification = bb84_certification(m);
    if (session.certification) {
        const auto& cert = *session.certification;
        r.tamper_detected = cert.mismatch_detected;
        r.detection_round = cert.detection_round;
        r.key = cert.final_key_length;
    } else {
        r.key_too_short = true;
        r.key = 0;
    }
    r.key_released = !r.key_too_short && !(abort_on_tamper && r.tamper_detected);
    r.key_compared = session.sifted.alice_key.size();
    for (std::size_t i = 0; i < session.sifted.alice_key.size(); ++i) {
        r.key_mismatches += session.sifted.alice_key[i] != session.sifted.bob_key[i];
    }
    r.joint_counts = count_joint(session.run.alice.sent, session.run.bob.outcomes);
    if (include_transcript) {
        r.transcript = session.run.transcript;
    }
    return r;
}

SessionReport run_trial(const SessionConfig& config, std::uint64_t trial) {
    const std::uint64_t seed = trial_seed(config.seed, trial);
    RandomSource rng(seed);
    if (config.protocol == Protocol::ThreeState) {
        const auto run = three_state_run(config.n, rng, config.attack, {.abort_on_tamper = config.abort_on_tamper});
        return make_report(run, trial, seed, config.include_transcripts);
    }
    const auto session = bb84_session(config.n, *config.m, rng, config.attack);
    return make_report(session, *config.m, config.abort_on_tamper, trial, seed, config.include_transcripts);
}

std::vector<SessionReport> run(const SessionConfig& config) {
    validate(config);
    std::vector<SessionReport> reports(config.trials);
    unsigned workers = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, config.trials));

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (std::size_t t = next++; t < config.trials; t = next++) {
            try {
                reports[t] = run_trial(config, t);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
            }
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back(work);
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return reports;
}

RunSummary summarize(const std::vector<SessionReport>& reports) {
    RunSummary s;
    s.trials = reports.size();
    std::uint64_t sent = 0;
    std::uint64_t confirmed = 0;
    std::uint64_t key = 0;
    std::uint64_t auth = 0;
    for (const auto& r : reports) {
        sent += r.sent;
        confirmed += r.confirmed;
        key += r.key;
        auth += r.auth;
        s.tamper_detected += r.tamper_detected;
        s.keys_released += r.key_released;
        s.key_compared += r.key_compared;
        s.key_mismatches += r.key_mismatches;
    }
    if (s.trials) {
        const double t = static_cast<double>(s.trials);
        s.mean_sent = static_cast<double>(sent) / t;
        s.mean_confirmed = static_cast<double>(confirmed) / t;
        s.mean_key = static_cast<double>(key) / t;
        s.mean_auth = static_cast<double>(auth) / t;
    }
    return s;
}

SweepGrid SweepGrid::standard() {
    return SweepGrid{
        .filters = {EveFilterChoice{}, EveFilterChoice{Polarization::Z0}, EveFilterChoice{Polarization::D45},
                    EveFilterChoice{Polarization::Z90}},
        .policies = {ResendPolicy::OrthogonalInference, ResendPolicy::SendNothing, ResendPolicy::UniformRandom},
        .fractions = {0.0, 0.5, 1.0},
    };
}

std::vector<SweepRow> attack_sweep(const SessionConfig& base, const SweepGrid& grid) {
    if (base.protocol != Protocol::ThreeState) {
        throw InvalidConfig("protocol", "attack sweeps run on the three-state protocol");
    }
    if (grid.filters.empty() || grid.policies.empty() || grid.fractions.empty()) {
        throw InvalidConfig("grid", "sweep grid has an empty axis");
    }
    for (const auto& f : grid.filters) {
        if (f.fixed == Polarization::D135) {
            throw InvalidConfig("eve-filter", "135 degrees is not a three-state filter");
        }
    }
    std::vector<SweepRow> rows;
    std::uint64_t cell = 0;
    for (const auto& filter : grid.filters) {
        for (ResendPolicy policy : grid.policies) {
            const DisturbanceOracle oracle = three_state_disturbance(filter, policy);
            for (double fraction : grid.fractions) {
                SessionConfig config = base;
                config.attack = InterceptResend{filter, policy, fraction};
                config.seed = derive_seed(base.seed, cell++);
                config.abort_on_tamper = false;
                config.include_transcripts = false;
                validate(config);
                const auto reports = run(config);

                SweepRow row{.filter = filter, .policy = policy, .fraction = fraction};
                row.sessions = reports.size();
                for (const auto& r : reports) {
                    row.auth_positions += r.auth;
                    row.auth_failures += r.auth_failures;
                    row.detected_sessions += r.tamper_detected;
                    row.key_bits += r.key_compared;
                    row.key_errors += r.key_mismatches;
                }
                const auto ratio = [](std::size_t a, std::size_t b) {
                    return b ? static_cast<double>(a) / static_cast<double>(b) : 0.0;
                };
                row.empirical_failure = ratio(row.auth_failures, row.auth_positions);
                row.oracle_failure = oracle.auth_failure_at(fraction);
                row.model_failure = to_double(kModelAuthFailure);
                row.detection_rate = ratio(row.detected_sessions, row.sessions);
                row.oracle_detection_rate = oracle.session_detection(base.n, fraction);
                row.key_error_rate = ratio(row.key_errors, row.key_bits);
                row.oracle_key_error = oracle.key_error_at(fraction);
                rows.push_back(row);
            }
        }
    }
    return rows;
}

}  // namespace qkd3
