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

#include "qkd3/photon_channel.hpp"

#include <gtest/gtest.h>

#include <map>

#include "test_util.hpp"

using namespace qkd3;
using qkd3::testing::three_sigma;

namespace {

constexpr FilterSetting F(Polarization p) { return FilterSetting{p}; }

double detected_frequency(Polarization photon, FilterSetting filter, std::uint64_t seed, int trials) {
    RandomSource rng(seed);
    int hits = 0;
    for (int i = 0; i < trials; ++i) {
        const auto o = measure(photon, filter, rng);
        if (o.is_detected()) {
            EXPECT_EQ(*o.detected_as(), filter.angle);
            ++hits;
        }
    }
    return static_cast<double>(hits) / trials;
}

}  // namespace

TEST(polarization, degrees_bijection) {
    for (Polarization p : kAllPolarizations) {
        EXPECT_EQ(polarization_from_degrees(degrees(p)), p);
    }
    EXPECT_EQ(degrees(Polarization::D135), 135);
    EXPECT_FALSE(polarization_from_degrees(30).has_value());
    EXPECT_FALSE(polarization_from_degrees(180).has_value());
}

TEST(polarization, orth_is_an_involution) {
    EXPECT_EQ(orth(Polarization::Z0), Polarization::Z90);
    EXPECT_EQ(orth(Polarization::D45), Polarization::D135);
    for (Polarization p : kAllPolarizations) {
        EXPECT_EQ(orth(orth(p)), p);
        EXPECT_NE(orth(p), p);
        EXPECT_EQ(basis_of(orth(p)), basis_of(p));
    }
}

TEST(polarization, symbols_round_trip) {
    for (Polarization p : kAllPolarizations) {
        EXPECT_EQ(polarization_from_symbol(symbol(p)), p);
    }
    EXPECT_EQ(symbol(Polarization::D45), "k");
    EXPECT_FALSE(polarization_from_symbol("e").has_value());
}

TEST(transition_distribution, examples) {
    auto t = transition_distribution(Polarization::Z90, F(Polarization::Z90));
    EXPECT_EQ(t.detected, 1);
    EXPECT_EQ(t.erasure, 0);
    t = transition_distribution(Polarization::Z90, F(Polarization::D45));
    EXPECT_EQ(t.detected, Rational(1, 2));
    EXPECT_EQ(t.erasure, Rational(1, 2));
    t = transition_distribution(Polarization::D135, F(Polarization::D45));
    EXPECT_EQ(t.detected, 0);
    EXPECT_EQ(t.erasure, 1);
}

TEST(transition_distribution, only_zero_half_one) {
    for (Polarization photon : kAllPolarizations) {
        for (Polarization filter : kAllPolarizations) {
            const auto t = transition_distribution(photon, F(filter));
            EXPECT_TRUE(t.detected == 0 || t.detected == Rational(1, 2) || t.detected == 1);
            EXPECT_EQ(t.detected + t.erasure, 1);
            // Malus: matched passes, orthogonal blocks, 45 degrees off is a coin.
            if (photon == filter) {
                EXPECT_EQ(t.detected, 1);
            } else if (photon == orth(filter)) {
                EXPECT_EQ(t.detected, 0);
            } else {
                EXPECT_EQ(t.detected, Rational(1, 2));
            }
        }
    }
}

TEST(measure, matched_filter_always_detects) {
    RandomSource rng(1);
    for (int i = 0; i < 1000; ++i) {
        EXPECT_EQ(measure(Polarization::Z0, F(Polarization::Z0), rng), MeasurementOutcome::detected(Polarization::Z0));
    }
}

TEST(measure, orthogonal_filter_always_erases) {
    RandomSource rng(2);
    for (int i = 0; i < 1000; ++i) {
        EXPECT_TRUE(measure(Polarization::Z0, F(Polarization::Z90), rng).is_erasure());
    }
}

TEST(measure, diagonal_photon_on_rectilinear_filter_is_a_coin) {
    const double f = detected_frequency(Polarization::D45, F(Polarization::Z0), 3, 100000);
    EXPECT_NEAR(f, 0.5, 0.01);
}

TEST(measure, every_pair_converges_to_exact_distribution) {
    const int n = 20000;
    std::uint64_t seed = 100;
    for (Polarization photon : kAllPolarizations) {
        for (Polarization filter : kAllPolarizations) {
            const double p = to_double(transition_distribution(photon, F(filter)).detected);
            const double f = detected_frequency(photon, F(filter), seed++, n);
            EXPECT_LE(std::abs(f - p), three_sigma(p, n)) << degrees(photon) << " vs " << degrees(filter);
        }
    }
}

TEST(measure, replay_is_bit_identical) {
    RandomSource a(77);
    RandomSource b(77);
    for (int i = 0; i < 5000; ++i) {
        const auto photon = kAllPolarizations[i % 4];
        const auto filter = F(kAllPolarizations[(i / 4) % 4]);
        ASSERT_EQ(measure(photon, filter, a), measure(photon, filter, b));
    }
}

TEST(measure, pure_function_of_variate) {
    RandomSource rng(5);
    for (int i = 0; i < 1000; ++i) {
        const std::uint64_t v = rng.next_u64();
        const auto first = measure_with_variate(Polarization::D45, F(Polarization::Z90), v);
        EXPECT_EQ(first, measure_with_variate(Polarization::D45, F(Polarization::Z90), v));
        // The top bit decides a 1/2 branch.
        EXPECT_EQ(first.is_detected(), (v >> 63) == 0);
    }
}

TEST(measure, absence_is_erasure_under_any_filter) {
    RandomSource rng(6);
    for (Polarization filter : kAllPolarizations) {
        EXPECT_TRUE(measure(std::nullopt, F(filter), rng).is_erasure());
    }
}

TEST(measure, collapse_destroys_input_information) {
    // Z0 and D45 both detected under a Z0 filter look the same.
    const auto a = measure_with_variate(Polarization::Z0, F(Polarization::Z0), 0);
    const auto b = measure_with_variate(Polarization::D45, F(Polarization::Z0), 0);
    ASSERT_TRUE(a.is_detected());
    ASSERT_TRUE(b.is_detected());
    EXPECT_EQ(a, b);
    EXPECT_FALSE(MeasurementOutcome::erasure().detected_as().has_value());
}

TEST(collapse_and_resend, detection_resends_collapsed_state) {
    RandomSource rng(1);
    for (ResendPolicy policy :
         {ResendPolicy::OrthogonalInference, ResendPolicy::SendNothing, ResendPolicy::UniformRandom}) {
        EXPECT_EQ(collapse_and_resend(MeasurementOutcome::detected(Polarization::Z0), F(Polarization::Z0), policy,
                                      kThreeStateAlphabet, rng),
                  Polarization::Z0);
    }
}

TEST(collapse_and_resend, erasure_policies) {
    RandomSource rng(1);
    const auto e = MeasurementOutcome::erasure();
    EXPECT_EQ(collapse_and_resend(e, F(Polarization::Z0), ResendPolicy::OrthogonalInference, kThreeStateAlphabet, rng),
              orth(Polarization::Z0));
    EXPECT_EQ(collapse_and_resend(e, F(Polarization::D45), ResendPolicy::OrthogonalInference, kThreeStateAlphabet, rng),
              Polarization::D135);
    EXPECT_EQ(collapse_and_resend(e, F(Polarization::Z0), ResendPolicy::SendNothing, kThreeStateAlphabet, rng),
              std::nullopt);

    std::map<Polarization, int> counts;
    const int n = 30000;
    for (int i = 0; i < n; ++i) {
        auto r = collapse_and_resend(e, F(Polarization::Z0), ResendPolicy::UniformRandom, kThreeStateAlphabet, rng);
        ASSERT_TRUE(r.has_value());
        ++counts[*r];
    }
    EXPECT_EQ(counts.count(Polarization::D135), 0u);
    for (Polarization p : kThreeStateAlphabet) {
        EXPECT_NEAR(counts[p] / static_cast<double>(n), 1.0 / 3.0, three_sigma(1.0 / 3.0, n));
    }
}

TEST(resend_policy, names_round_trip) {
    for (ResendPolicy p : {ResendPolicy::OrthogonalInference, ResendPolicy::SendNothing, ResendPolicy::UniformRandom}) {
        EXPECT_EQ(resend_policy_from_string(to_string(p)), p);
    }
    EXPECT_FALSE(resend_policy_from_string("clone").has_value());
}
