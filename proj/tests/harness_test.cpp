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

#include <gtest/gtest.h>

#include <set>

#include "qkd3/analysis.hpp"
#include "qkd3/errors.hpp"
#include "qkd3/serialize.hpp"

using namespace qkd3;

namespace {

std::string field_of(const SessionConfig& c) {
    try {
        validate(c);
    } catch (const InvalidConfig& e) {
        return e.field();
    }
    return "";
}

SessionConfig three_state(std::size_t n, std::uint64_t seed, std::size_t trials = 1) {
    return SessionConfig{.protocol = Protocol::ThreeState, .n = n, .seed = seed, .trials = trials};
}

}  // namespace

TEST(validate, names_offending_field) {
    EXPECT_EQ(field_of(three_state(0, 1)), "n");
    EXPECT_EQ(field_of(three_state(10, 1, 0)), "trials");
    SessionConfig bb84{.protocol = Protocol::Bb84, .n = 54};
    EXPECT_EQ(field_of(bb84), "m");
    bb84.m = 6;
    EXPECT_EQ(field_of(bb84), "");
    auto ts = three_state(10, 1);
    ts.m = 3;
    EXPECT_EQ(field_of(ts), "m");
    ts = three_state(10, 1);
    ts.attack = InterceptResend{{}, ResendPolicy::SendNothing, 2.0};
    EXPECT_EQ(field_of(ts), "fraction");
    ts.attack = InterceptResend{EveFilterChoice{Polarization::D135}, ResendPolicy::SendNothing, 1.0};
    EXPECT_EQ(field_of(ts), "eve-filter");
    EXPECT_THROW(run(three_state(0, 1)), InvalidConfig);
}

TEST(run, deterministic_for_a_seed) {
    auto c = three_state(900, 42, 8);
    c.attack = InterceptResend{{}, ResendPolicy::OrthogonalInference, 0.5};
    c.abort_on_tamper = false;
    const auto a = simulate_document(c, run(c)).dump();
    const auto b = simulate_document(c, run(c)).dump();
    EXPECT_EQ(a, b);
    c.seed = 43;
    EXPECT_NE(a, simulate_document(c, run(c)).dump());
}

TEST(run, thread_count_does_not_change_results) {
    for (Protocol p : {Protocol::ThreeState, Protocol::Bb84}) {
        SessionConfig c{.protocol = p, .n = 300, .seed = 9, .trials = 16};
        if (p == Protocol::Bb84) {
            c.m = 4;
        }
        c.threads = 1;
        const auto one = simulate_document(c, run(c));
        c.threads = 4;
        auto four = simulate_document(c, run(c));
        four["config"] = one["config"];
        EXPECT_EQ(one.dump(), four.dump());
    }
}

TEST(run, trials_have_distinct_seeds_in_order) {
    const auto reports = run(three_state(9, 1, 50));
    std::set<std::uint64_t> seeds;
    for (std::size_t i = 0; i < reports.size(); ++i) {
        EXPECT_EQ(reports[i].trial, i);
        EXPECT_EQ(reports[i].seed, trial_seed(1, i));
        seeds.insert(reports[i].seed);
    }
    EXPECT_EQ(seeds.size(), reports.size());
}

TEST(run, three_state_mean_key) {
    const auto reports = run(three_state(54, 11, 10000));
    const auto s = summarize(reports);
    EXPECT_NEAR(s.mean_key, 24.0, 0.5);
    EXPECT_NEAR(s.mean_auth, 6.0, 0.2);
    for (const auto& r : reports) {
        ASSERT_EQ(r.key + r.auth, r.confirmed);
        ASSERT_EQ(r.key_mismatches, 0u);
        ASSERT_FALSE(r.tamper_detected);
    }
}

TEST(run, bb84_mean_key) {
    SessionConfig c{.protocol = Protocol::Bb84, .n = 54, .m = 6, .seed = 12, .trials = 10000};
    const auto reports = run(c);
    EXPECT_NEAR(summarize(reports).mean_key, 21.0, 0.5);
    for (const auto& r : reports) {
        ASSERT_EQ(r.parity_rounds.value_or(0), r.key_too_short ? 0u : 6u);
        ASSERT_FALSE(r.tamper_detected);
        ASSERT_EQ(r.key_mismatches, 0u);
    }
}

TEST(run, tamper_withholds_key_when_aborting) {
    auto c = three_state(900, 13, 5);
    c.attack = InterceptResend{{}, ResendPolicy::SendNothing, 1.0};
    for (const auto& r : run(c)) {
        EXPECT_TRUE(r.tamper_detected);
        EXPECT_FALSE(r.key_released);
    }
    c.abort_on_tamper = false;
    for (const auto& r : run(c)) {
        EXPECT_TRUE(r.tamper_detected);
        EXPECT_TRUE(r.key_released);
    }
}

TEST(serialize, transcripts_carry_only_public_data) {
    auto c = three_state(90, 14, 2);
    c.include_transcripts = true;
    const auto doc = simulate_document(c, run(c));
    const std::set<std::string> allowed = {"sender", "kind", "filters", "correct", "round", "positions", "parity"};
    for (const auto& trial : doc["trials"]) {
        ASSERT_TRUE(trial.contains("transcript"));
        ASSERT_EQ(trial["transcript"].size(), 2u);
        for (const auto& entry : trial["transcript"]) {
            for (const auto& [key, value] : entry.items()) {
                EXPECT_TRUE(allowed.count(key)) << key;
            }
        }
        EXPECT_EQ(trial["transcript"][0]["filters"].get<std::string>().size(), 90u);
        EXPECT_EQ(trial["transcript"][1]["correct"].get<std::string>().find_first_not_of("01"), std::string::npos);
    }
    c.include_transcripts = false;
    EXPECT_FALSE(simulate_document(c, run(c))["trials"][0].contains("transcript"));
}

TEST(serialize, bb84_transcript_has_parity_rounds) {
    SessionConfig c{.protocol = Protocol::Bb84, .n = 200, .m = 5, .seed = 3, .trials = 1, .include_transcripts = true};
    const auto doc = simulate_document(c, run(c));
    const auto& t = doc["trials"][0]["transcript"];
    ASSERT_EQ(t.size(), 2u + 3u * 5u);
    EXPECT_EQ(t[2]["kind"], "parity_query");
}

TEST(attack_sweep, cells_follow_oracle) {
    auto base = three_state(9000, 21, 10);
    SweepGrid grid{.filters = {EveFilterChoice{}},
                   .policies = {ResendPolicy::OrthogonalInference, ResendPolicy::SendNothing},
                   .fractions = {0.0, 1.0}};
    const auto rows = attack_sweep(base, grid);
    ASSERT_EQ(rows.size(), 4u);
    double orth_full = 0;
    double nothing_full = 0;
    for (const auto& r : rows) {
        EXPECT_GT(r.auth_positions, 9000u);
        EXPECT_EQ(r.sessions, 10u);
        if (r.fraction == 0.0) {
            EXPECT_EQ(r.auth_failures, 0u);
            EXPECT_EQ(r.empirical_failure, 0.0);
            EXPECT_EQ(r.key_errors, 0u);
            continue;
        }
        EXPECT_NEAR(r.empirical_failure, r.oracle_failure, 0.015);
        EXPECT_NEAR(r.key_error_rate, r.oracle_key_error, 0.015);
        EXPECT_DOUBLE_EQ(r.model_failure, 2.0 / 3.0);
        EXPECT_EQ(r.detection_rate, 1.0);
        (r.policy == ResendPolicy::OrthogonalInference ? orth_full : nothing_full) = r.empirical_failure;
    }
    EXPECT_NEAR(orth_full, 1.0 / 3.0, 0.015);
    EXPECT_GT(nothing_full, orth_full);
}

TEST(attack_sweep, standard_grid_and_csv_header) {
    const auto grid = SweepGrid::standard();
    EXPECT_EQ(grid.filters.size() * grid.policies.size() * grid.fractions.size(), 36u);
    auto base = three_state(90, 1, 1);
    const auto csv = sweep_csv(attack_sweep(base, grid));
    EXPECT_EQ(csv.substr(0, csv.find('\n')),
              "policy,fraction,empirical_failure,oracle_failure,paper_model,detection_rate,key_error_rate");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 37);
}

TEST(attack_sweep, rejects_bb84) {
    SessionConfig base{.protocol = Protocol::Bb84, .n = 90, .m = 2};
    EXPECT_THROW(attack_sweep(base, SweepGrid::standard()), InvalidConfig);
}
