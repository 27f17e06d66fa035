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

#include "qkd3/serialize.hpp"

#include <cmath>
#include <variant>

#include <fmt/format.h>

namespace qkd3 {

namespace {

std::string decimal(double v, int places) { return fmt::format("{:.{}f}", v, places); }

Json log_form_json(const LogForm& form) {
    return Json{{"exact", form.to_string()},
                {"log2_3_coefficient", to_string(form.log3_coefficient)},
                {"constant", to_string(form.constant)},
                {"value", static_cast<double>(form.value())},
                {"decimal", decimal(static_cast<double>(form.value()), 4)}};
}

std::int64_t floor_of(const Rational& r) { return static_cast<std::int64_t>(std::floor(to_double(r))); }

Json rational_json(const Rational& r) {
    return Json{{"exact", to_string(r)}, {"value", to_double(r)}, {"floor", floor_of(r)}};
}

Json estimate_json(const Estimate& e) { return Json{{"value", e.value}, {"std_error", e.std_error}}; }

const char* kColumnNames[5] = {"0", "k", "1", "l", "e"};

}  // namespace

Json to_json(const Transcript& transcript) {
    Json entries = Json::array();
    for (const auto& entry : transcript.entries()) {
        Json e{{"sender", to_string(entry.sender)}};
        std::visit(
            [&](const auto& payload) {
                using T = std::decay_t<decltype(payload)>;
                if constexpr (std::is_same_v<T, FilterAnnouncement>) {
                    std::string s;
                    s.reserve(payload.filters.size());
                    for (const auto& f : payload.filters) {
                        s += symbol(f.angle);
                    }
                    e["kind"] = "filter_announcement";
                    e["filters"] = std::move(s);
                } else if constexpr (std::is_same_v<T, ConfirmationAnnouncement>) {
                    std::string s;
                    s.reserve(payload.correct.size());
                    for (bool c : payload.correct) {
                        s += c ? '1' : '0';
                    }
                    e["kind"] = "confirmation_announcement";
                    e["correct"] = std::move(s);
                } else if constexpr (std::is_same_v<T, ParityQuery>) {
                    e["kind"] = "parity_query";
                    e["round"] = payload.round;
                    e["positions"] = payload.positions;
                } else {
                    e["kind"] = "parity_response";
                    e["round"] = payload.round;
                    e["parity"] = payload.odd ? 1 : 0;
                }
            },
            entry.payload);
        entries.push_back(std::move(e));
    }
    return entries;
}

Json to_json(const AttackStrategy& attack) {
    return std::visit(
        [](const auto& a) -> Json {
            using T = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<T, NoAttack>) {
                return Json{{"kind", "none"}};
            } else if constexpr (std::is_same_v<T, PassiveClassical>) {
                return Json{{"kind", "passive"}};
            } else if constexpr (std::is_same_v<T, InterceptResend>) {
                return Json{{"kind", "intercept-resend"},
                            {"eve_filter", to_string(a.filter_choice)},
                            {"resend_policy", to_string(a.resend)},
                            {"fraction", a.fraction}};
            } else {
                return Json{{"kind", "stuck-filter"},
                            {"eve_filter", std::to_string(degrees(a.angle))},
                            {"resend_policy", to_string(a.resend)}};
            }
        },
        attack);
}

Json to_json(const SessionConfig& config) {
    Json j{{"protocol", to_string(config.protocol)}, {"n", config.n}};
    if (config.m) {
        j["m"] = *config.m;
    }
    j["attack"] = to_json(config.attack);
    j["seed"] = config.seed;
    j["trials"] = config.trials;
    j["abort_on_tamper"] = config.abort_on_tamper;
    return j;
}

Json to_json(const SessionReport& r) {
    Json j{{"trial", r.trial}, {"seed", r.seed}};
    j["counts"] = Json{{"sent", r.sent}, {"confirmed", r.confirmed}, {"key", r.key}, {"auth", r.auth}};
    Json tamper{{"tamper_detected", r.tamper_detected}, {"model_certification", r.model_certification}};
    if (r.protocol == Protocol::ThreeState) {
        tamper["auth_checked"] = r.auth;
        tamper["auth_failures"] = r.auth_failures;
    } else {
        tamper["parity_rounds"] = r.parity_rounds.value_or(0);
        tamper["detection_round"] = r.detection_round ? Json(*r.detection_round) : Json(nullptr);
        tamper["key_too_short"] = r.key_too_short;
    }
    j["tamper"] = std::move(tamper);
    j["key_released"] = r.key_released;
    j["key_agreement"] = Json{{"compared", r.key_compared},
                              {"mismatches", r.key_mismatches},
                              {"identical", r.key_mismatches == 0}};
    Json outcomes = Json::object();
    for (std::size_t a = 0; a < r.joint_counts.size(); ++a) {
        Json row = Json::object();
        for (std::size_t b = 0; b < r.joint_counts[a].size(); ++b) {
            if (r.joint_counts[a][b] != 0) {
                row[kColumnNames[b]] = r.joint_counts[a][b];
            }
        }
        if (!row.empty()) {
            outcomes[kColumnNames[a]] = std::move(row);
        }
    }
    j["outcome_counts"] = std::move(outcomes);
    if (r.transcript) {
        j["transcript"] = to_json(*r.transcript);
    }
    return j;
}

Json to_json(const EmpiricalStatistics& s) {
    return Json{{"sessions", s.sessions},
                {"photons", s.photons},
                {"h_a", estimate_json(s.h_a)},
                {"h_b", estimate_json(s.h_b)},
                {"h_ab", estimate_json(s.h_ab)},
                {"mutual_info", estimate_json(s.mutual_info)},
                {"confirmed_fraction", estimate_json(s.confirmed_fraction)},
                {"key_fraction", estimate_json(s.key_fraction)},
                {"auth_fraction", estimate_json(s.auth_fraction)}};
}

Json simulate_document(const SessionConfig& config, const std::vector<SessionReport>& reports) {
    Json doc{{"schema_version", kSchemaVersion}, {"command", "simulate"}, {"config", to_json(config)}};
    const RunSummary s = summarize(reports);
    doc["summary"] = Json{{"trials", s.trials},
                          {"mean_sent", s.mean_sent},
                          {"mean_confirmed", s.mean_confirmed},
                          {"mean_key", s.mean_key},
                          {"mean_auth", s.mean_auth},
                          {"tamper_detected", s.tamper_detected},
                          {"keys_released", s.keys_released},
                          {"key_bits_compared", s.key_compared},
                          {"key_bit_mismatches", s.key_mismatches}};
    if (!reports.empty()) {
        doc["statistics"] = to_json(empirical_statistics(reports));
    }
    Json trials = Json::array();
    for (const auto& r : reports) {
        trials.push_back(to_json(r));
    }
    doc["trials"] = std::move(trials);
    return doc;
}

std::string simulate_csv(const std::vector<SessionReport>& reports) {
    std::string out = "trial,seed,sent,confirmed,key,auth,auth_failures,tamper_detected,key_released,key_mismatches\n";
    for (const auto& r : reports) {
        out += fmt::format("{},{},{},{},{},{},{},{},{},{}\n", r.trial, r.seed, r.sent, r.confirmed, r.key, r.auth,
                           r.auth_failures, r.tamper_detected ? 1 : 0, r.key_released ? 1 : 0, r.key_mismatches);
    }
    return out;
}

Json analyze_document() {
    const JointDistribution d = joint_distribution();
    const EntropyReport e = entropy_report();
    const RateChain chain = information_rate_chain();

    Json joint = Json::array();
    for (std::size_t a = 0; a < d.p.size(); ++a) {
        for (std::size_t b = 0; b < d.p[a].size(); ++b) {
            joint.push_back(Json{{"alice", std::string(symbol(JointDistribution::kAliceStates[a]))},
                                 {"bob", JointDistribution::kBobSymbols[b]},
                                 {"p", to_string(d.p[a][b])},
                                 {"value", to_double(d.p[a][b])}});
        }
    }
    Json bob = Json::object();
    const auto bm = d.bob_marginal();
    for (std::size_t b = 0; b < bm.size(); ++b) {
        bob[JointDistribution::kBobSymbols[b]] = to_string(bm[b]);
    }
    Json alice = Json::object();
    const auto am = d.alice_marginal();
    for (std::size_t a = 0; a < am.size(); ++a) {
        alice[std::string(symbol(JointDistribution::kAliceStates[a]))] = to_string(am[a]);
    }

    return Json{{"schema_version", kSchemaVersion},
                {"command", "analyze"},
                {"joint_distribution",
                 Json{{"entries", std::move(joint)},
                      {"alice_marginal", std::move(alice)},
                      {"bob_marginal", std::move(bob)},
                      {"sum", to_string(d.total())}}},
                {"entropy",
                 Json{{"h_a", log_form_json(e.h_a_exact)},
                      {"h_b", log_form_json(e.h_b_exact)},
                      {"h_ab", log_form_json(e.h_ab_exact)},
                      {"mutual_info", log_form_json(e.mutual_info_exact)}}},
                {"rate_chain",
                 Json{{"per_photon_uncertainty", to_string(chain.per_photon_uncertainty)},
                      {"after_k_exclusion", to_string(chain.after_k_exclusion)},
                      {"after_resolution", to_string(chain.after_resolution)}}}};
}

std::string analyze_csv() {
    const JointDistribution d = joint_distribution();
    std::string out = "alice,bob,p,value\n";
    for (std::size_t a = 0; a < d.p.size(); ++a) {
        for (std::size_t b = 0; b < d.p[a].size(); ++b) {
            out += fmt::format("{},{},{},{:.6f}\n", symbol(JointDistribution::kAliceStates[a]),
                               JointDistribution::kBobSymbols[b], to_string(d.p[a][b]), to_double(d.p[a][b]));
        }
    }
    return out;
}

Json compare_document(const RateComparison& c) {
    return Json{{"schema_version", kSchemaVersion},
                {"command", "compare"},
                {"n", c.n},
                {"m", c.m},
                {"rows",
                 Json::array({Json{{"protocol", "three-state"},
                                   {"key_bits", rational_json(c.three_state_key)},
                                   {"certification", c.three_state_cert}},
                              Json{{"protocol", "bb84"},
                                   {"key_bits", rational_json(c.bb84_key)},
                                   {"certification", c.bb84_cert}}})},
                {"crossover_n", c.crossover_n},
                {"certification_parity_m", certification_parity_rounds(static_cast<double>(c.n))},
                {"favored", std::string(to_string(c.favored))}};
}

std::string compare_csv(const RateComparison& c) {
    std::string out = "protocol,key_bits_exact,key_bits_floor,certification,crossover_n,favored\n";
    out += fmt::format("three-state,{},{},{:.6f},{},{}\n", to_string(c.three_state_key), floor_of(c.three_state_key),
                       c.three_state_cert, c.crossover_n, to_string(c.favored));
    out += fmt::format("bb84,{},{},{:.6f},{},{}\n", to_string(c.bb84_key), floor_of(c.bb84_key), c.bb84_cert,
                       c.crossover_n, to_string(c.favored));
    return out;
}

Json sweep_document(const SessionConfig& base, const std::vector<SweepRow>& rows) {
    Json cells = Json::array();
    for (const auto& r : rows) {
        cells.push_back(Json{{"eve_filter", to_string(r.filter)},
                             {"resend_policy", to_string(r.policy)},
                             {"fraction", r.fraction},
                             {"sessions", r.sessions},
                             {"auth_positions", r.auth_positions},
                             {"auth_failures", r.auth_failures},
                             {"empirical_failure", r.empirical_failure},
                             {"oracle_failure", r.oracle_failure},
                             {"paper_model", r.model_failure},
                             {"detection_rate", r.detection_rate},
                             {"oracle_detection_rate", r.oracle_detection_rate},
                             {"key_error_rate", r.key_error_rate},
                             {"oracle_key_error", r.oracle_key_error}});
    }
    return Json{{"schema_version", kSchemaVersion},
                {"command", "attack-sweep"},
                {"config", to_json(base)},
                {"cells", std::move(cells)}};
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::string out = "policy,fraction,empirical_failure,oracle_failure,paper_model,detection_rate,key_error_rate\n";
    for (const auto& r : rows) {
        out += fmt::format("{}/{},{:.4f},{:.6f},{:.6f},{:.6f},{:.6f},{:.6f}\n", to_string(r.policy),
                           to_string(r.filter), r.fraction, r.empirical_failure, r.oracle_failure, r.model_failure,
                           r.detection_rate, r.key_error_rate);
    }
    return out;
}

}  // namespace qkd3
