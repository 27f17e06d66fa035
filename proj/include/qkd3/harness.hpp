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

#ifndef QKD3_HARNESS_HPP
#define QKD3_HARNESS_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qkd3/adversary.hpp"
#include "qkd3/analysis.hpp"
#include "qkd3/bb84.hpp"
#include "qkd3/session_report.hpp"
#include "qkd3/three_state.hpp"

namespace qkd3 {

struct SessionConfig {
    Protocol protocol = Protocol::ThreeState;
    std::size_t n = 0;
    /// Parity rounds; set iff protocol is BB84.
    std::optional<std::uint32_t> m;
    AttackStrategy attack = NoAttack{};
    std::uint64_t seed = 0;
    std::size_t trials = 1;
    bool abort_on_tamper = true;
    bool include_transcripts = false;
    /// Worker threads; 0 picks the hardware concurrency. Never affects results.
    unsigned threads = 0;
};

/// Throws InvalidConfig naming the offending field.
void validate(const SessionConfig& config);

/// Seed of trial `trial`: derive_seed(master, trial).
std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial);

SessionReport make_report(const ThreeStateRun& run, std::uint64_t trial, std::uint64_t seed,
                          bool include_transcript);
SessionReport make_report(const Bb84Session& session, std::uint32_t m, bool abort_on_tamper, std::uint64_t trial,
                          std::uint64_t seed, bool include_transcript);

/// One session with an explicit seed.
SessionReport run_trial(const SessionConfig& config, std::uint64_t trial);

/// Runs config.trials sessions on a worker pool. Reports come back in trial
/// order whatever the scheduling.
std::vector<SessionReport> run(const SessionConfig& config);

/// Mean counts over a set of reports (sums are integral, so the result does
/// not depend on report order).
struct RunSummary {
    std::size_t trials = 0;
    double mean_sent = 0;
    double mean_confirmed = 0;
    double mean_key = 0;
    double mean_auth = 0;
    std::size_t tamper_detected = 0;
    std::size_t keys_released = 0;
    std::size_t key_compared = 0;
    std::size_t key_mismatches = 0;
};

RunSummary summarize(const std::vector<SessionReport>& reports);

/// Cells of an attack sweep: every combination is simulated.
struct SweepGrid {
    std::vector<EveFilterChoice> filters;
    std::vector<ResendPolicy> policies;
    std::vector<double> fractions;

    static SweepGrid standard();
};

struct SweepRow {
    EveFilterChoice filter;
    ResendPolicy policy = ResendPolicy::OrthogonalInference;
    double fraction = 0;

    std::size_t sessions = 0;
    std::size_t auth_positions = 0;
    std::size_t auth_failures = 0;
    std::size_t detected_sessions = 0;
    std::size_t key_bits = 0;
    std::size_t key_errors = 0;

    double empirical_failure = 0;
    double oracle_failure = 0;
    double model_failure = 0;
    double detection_rate = 0;
    double oracle_detection_rate = 0;
    double key_error_rate = 0;
    double oracle_key_error = 0;
};

/// Simulates each grid cell with `base` as template (protocol must be
/// three-state; sessions never abort so every statistic is measured).
/// Cell c uses master seed derive_seed(base.seed, c).
std::vector<SweepRow> attack_sweep(const SessionConfig& base, const SweepGrid& grid);

}  // namespace qkd3

#endif  // QKD3_HARNESS_HPP
