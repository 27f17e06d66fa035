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

#ifndef QKD3_ANALYSIS_HPP
#define QKD3_ANALYSIS_HPP

#include <array>
#include <cstdint>
#include <span>
#include <string>

#include "qkd3/adversary.hpp"
#include "qkd3/rational.hpp"
#include "qkd3/session_report.hpp"

namespace qkd3 {

/// A quantity of the form coefficient * log2(3) + constant, both exact.
struct LogForm {
    Rational log3_coefficient;
    Rational constant;

    long double value() const;
    /// e.g. "5/3*log2(3) - 7/9".
    std::string to_string() const;

    LogForm operator+(const LogForm& o) const { return {log3_coefficient + o.log3_coefficient, constant + o.constant}; }
    LogForm operator-(const LogForm& o) const { return {log3_coefficient - o.log3_coefficient, constant - o.constant}; }
    bool operator==(const LogForm&) const = default;
};

/// Shannon entropy in bits of a distribution whose probabilities have only
/// 2 and 3 as prime factors. std::domain_error for any other probability.
LogForm exact_entropy(std::span<const Rational> probabilities);

/// Numeric Shannon entropy in bits; zero entries are skipped.
double entropy_bits(std::span<const double> probabilities);

/// Exact joint law of Alice's three-state photon and Bob's received symbol,
/// with Bob's filter uniform and marginalized out.
struct JointDistribution {
    static constexpr std::array<Polarization, 3> kAliceStates = kThreeStateAlphabet;
    /// Received symbols 0, k, 1, e.
    static constexpr std::array<const char*, 4> kBobSymbols = {"0", "k", "1", "e"};

    std::array<std::array<Rational, 4>, 3> p{};

    std::array<Rational, 3> alice_marginal() const;
    std::array<Rational, 4> bob_marginal() const;
    Rational total() const;
};

JointDistribution joint_distribution();

struct EntropyReport {
    double h_a = 0;
    double h_b = 0;
    double h_ab = 0;
    double mutual_info = 0;
    LogForm h_a_exact;
    LogForm h_b_exact;
    LogForm h_ab_exact;
    LogForm mutual_info_exact;
};

EntropyReport entropy_report();

/// Per-photon uncertainty, then with the k photons excluded, then halved by
/// the 50% chance of a usable setting.
struct RateChain {
    Rational per_photon_uncertainty;
    Rational after_k_exclusion;
    Rational after_resolution;
};

/// Throws std::logic_error if the chain does not land on the key rate 4/9.
RateChain information_rate_chain();

enum class Favored : std::uint8_t { ThreeState, Bb84, Equal };

std::string_view to_string(Favored favored);

struct RateComparison {
    std::int64_t n = 0;
    std::int64_t m = 0;
    Rational three_state_key;
    Rational bb84_key;
    double three_state_cert = 0;
    double bb84_cert = 0;
    std::int64_t crossover_n = 0;
    Favored favored = Favored::Equal;
};

/// Key counts 4n/9 vs n/2 - m and certification 1 - 3^(-n/9) vs 1 - 2^-m.
/// std::invalid_argument unless n >= 1 and m >= 0.
RateComparison compare(std::int64_t n, std::int64_t m);

/// The m at which both certification probabilities agree: n*log2(3)/9.
double certification_parity_rounds(double n);

/// Exact disturbance caused by full interception (fraction 1) of a
/// three-state transmission. Every figure scales linearly with the
/// intercepted fraction.
struct DisturbanceOracle {
    /// P(Bob sees an erasure | confirmed 45-degree slot).
    Rational auth_failure;
    /// P(Bob's key bit is wrong | key slot).
    Rational key_error;

    double auth_failure_at(double fraction) const { return to_double(auth_failure) * fraction; }
    double key_error_at(double fraction) const { return to_double(key_error) * fraction; }
    /// P(at least one authentication failure in an n-photon session).
    double session_detection(std::size_t n, double fraction) const;
};

DisturbanceOracle three_state_disturbance(const EveFilterChoice& filter, ResendPolicy policy);

/// Sifted-key error rate of BB84 under full interception.
Rational bb84_disturbance(const EveFilterChoice& filter, ResendPolicy policy);

/// Certification probability the three-state analysis assigns to each
/// authentication slot: Eve picks the right filter 1 time in 3.
inline const Rational kModelAuthFailure{2, 3};

struct Estimate {
    double value = 0;
    double std_error = 0;
};

/// Frequency estimates pooled over sessions.
struct EmpiricalStatistics {
    std::uint64_t sessions = 0;
    std::uint64_t photons = 0;
    std::array<std::array<double, 5>, 4> joint{};
    Estimate h_a;
    Estimate h_b;
    Estimate h_ab;
    Estimate mutual_info;
    Estimate confirmed_fraction;
    Estimate key_fraction;
    Estimate auth_fraction;
};

/// Plug-in estimates with delta-method standard errors. Throws EmptyInput
/// for an empty list.
EmpiricalStatistics empirical_statistics(std::span<const SessionReport> reports);

}  // namespace qkd3

#endif  // QKD3_ANALYSIS_HPP
