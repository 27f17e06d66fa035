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

#include "qkd3/analysis.hpp"

#include <cmath>
#include <cstdlib>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qkd3/errors.hpp"
#include "qkd3/three_state.hpp"

namespace qkd3 {

namespace {

int strip_factor(std::int64_t& v, std::int64_t prime) {
    int count = 0;
    while (v % prime == 0) {
        v /= prime;
        ++count;
    }
    return count;
}

std::size_t three_state_column(Polarization p) {
    switch (p) {
        case Polarization::Z0:
            return 0;
        case Polarization::D45:
            return 1;
        case Polarization::Z90:
            return 2;
        case Polarization::D135:
            break;
    }
    throw std::logic_error("D135 is not a three-state symbol");
}

// Replacement photon law given Eve's filter and outcome; nullopt = nothing sent.
std::vector<std::pair<ChannelSymbol, Rational>> resend_law(FilterSetting eve_filter, bool detected,
                                                           ResendPolicy policy,
                                                           std::span<const Polarization> alphabet) {
    if (detected) {
        return {{eve_filter.angle, Rational(1)}};
    }
    switch (policy) {
        case ResendPolicy::OrthogonalInference:
            return {{orth(eve_filter.angle), Rational(1)}};
        case ResendPolicy::SendNothing:
            return {{std::nullopt, Rational(1)}};
        case ResendPolicy::UniformRandom: {
            std::vector<std::pair<ChannelSymbol, Rational>> law;
            for (Polarization p : alphabet) {
                law.emplace_back(p, Rational(1, static_cast<std::int64_t>(alphabet.size())));
            }
            return law;
        }
    }
    std::abort();
}

// P(Bob records an erasure | Alice sent `sent`, Bob filters with `bob`),
// with every photon intercepted.
Rational erasure_under_attack(Polarization sent, FilterSetting bob, const EveFilterChoice& choice,
                              ResendPolicy policy, const ProtocolAlphabet& protocol) {
    std::vector<std::pair<FilterSetting, Rational>> eve_filters;
    if (choice.fixed) {
        eve_filters.emplace_back(FilterSetting{*choice.fixed}, Rational(1));
    } else {
        for (FilterSetting f : protocol.filters) {
            eve_filters.emplace_back(f, Rational(1, static_cast<std::int64_t>(protocol.filters.size())));
        }
    }
    Rational total = 0;
    for (const auto& [eve_filter, p_filter] : eve_filters) {
        const auto eve_t = transition_distribution(sent, eve_filter);
        for (bool detected : {true, false}) {
            const Rational p_outcome = detected ? eve_t.detected : eve_t.erasure;
            if (p_outcome == 0) {
                continue;
            }
            for (const auto& [resent, p_resent] : resend_law(eve_filter, detected, policy, protocol.sender)) {
                const Rational p_erase = resent ? transition_distribution(*resent, bob).erasure : Rational(1);
                total += p_filter * p_outcome * p_resent * p_erase;
            }
        }
    }
    return total;
}

double estimate_se(double p, std::uint64_t n) { return n ? std::sqrt(p * (1 - p) / static_cast<double>(n)) : 0.0; }

Estimate entropy_estimate(std::span<const double> probabilities, std::uint64_t n) {
    double h = 0;
    double second = 0;
    for (double p : probabilities) {
        if (p > 0) {
            const double l = std::log2(p);
            h -= p * l;
            second += p * l * l;
        }
    }
    const double var = n ? std::max(0.0, second - h * h) / static_cast<double>(n) : 0.0;
    return {h, std::sqrt(var)};
}

}  // namespace

long double LogForm::value() const {
    const auto as_ld = [](const Rational& r) {
        return static_cast<long double>(r.numerator()) / static_cast<long double>(r.denominator());
    };
    return as_ld(log3_coefficient) * std::log2(3.0L) + as_ld(constant);
}

std::string LogForm::to_string() const {
    std::string out;
    if (log3_coefficient != 0) {
        out = log3_coefficient == 1 ? "log2(3)" : qkd3::to_string(log3_coefficient) + "*log2(3)";
        if (constant > 0) {
            out += " + " + qkd3::to_string(constant);
        } else if (constant < 0) {
            out += " - " + qkd3::to_string(-constant);
        }
        return out;
    }
    return qkd3::to_string(constant);
}

LogForm exact_entropy(std::span<const Rational> probabilities) {
    LogForm h{0, 0};
    for (const Rational& p : probabilities) {
        if (p < 0) {
            throw std::domain_error("negative probability");
        }
        if (p == 0) {
            continue;
        }
        std::int64_t num = p.numerator();
        std::int64_t den = p.denominator();
        const int twos = strip_factor(num, 2) - strip_factor(den, 2);
        const int threes = strip_factor(num, 3) - strip_factor(den, 3);
        if (num != 1 || den != 1) {
            throw std::domain_error("probability " + qkd3::to_string(p) + " has a prime factor other than 2 or 3");
        }
        // -p * log2(2^twos * 3^threes)
        h.constant -= p * twos;
        h.log3_coefficient -= p * threes;
    }
    return h;
}

double entropy_bits(std::span<const double> probabilities) {
    double h = 0;
    for (double p : probabilities) {
        if (p > 0) {
            h -= p * std::log2(p);
        }
    }
    return h;
}

std::array<Rational, 3> JointDistribution::alice_marginal() const {
    std::array<Rational, 3> out{};
    for (std::size_t a = 0; a < 3; ++a) {
        for (const auto& v : p[a]) {
            out[a] += v;
        }
    }
    return out;
}

std::array<Rational, 4> JointDistribution::bob_marginal() const {
    std::array<Rational, 4> out{};
    for (const auto& row : p) {
        for (std::size_t b = 0; b < 4; ++b) {
            out[b] += row[b];
        }
    }
    return out;
}

Rational JointDistribution::total() const {
    Rational t = 0;
    for (const auto& v : alice_marginal()) {
        t += v;
    }
    return t;
}

JointDistribution joint_distribution() {
    JointDistribution d;
    const Rational weight(1, 9);
    for (std::size_t a = 0; a < kThreeStateAlphabet.size(); ++a) {
        for (FilterSetting f : kThreeStateFilters) {
            const auto t = transition_distribution(kThreeStateAlphabet[a], f);
            d.p[a][three_state_column(f.angle)] += weight * t.detected;
            d.p[a][3] += weight * t.erasure;
        }
    }
    return d;
}

EntropyReport entropy_report() {
    const JointDistribution d = joint_distribution();
    const auto alice = d.alice_marginal();
    const auto bob = d.bob_marginal();
    std::vector<Rational> cells;
    for (const auto& row : d.p) {
        cells.insert(cells.end(), row.begin(), row.end());
    }

    EntropyReport r;
    r.h_a_exact = exact_entropy(alice);
    r.h_b_exact = exact_entropy(bob);
    r.h_ab_exact = exact_entropy(cells);
    r.mutual_info_exact = r.h_a_exact + r.h_b_exact - r.h_ab_exact;
    r.h_a = static_cast<double>(r.h_a_exact.value());
    r.h_b = static_cast<double>(r.h_b_exact.value());
    r.h_ab = static_cast<double>(r.h_ab_exact.value());
    r.mutual_info = static_cast<double>(r.mutual_info_exact.value());
    return r;
}

RateChain information_rate_chain() {
    const EntropyReport e = entropy_report();
    const LogForm residual = e.h_a_exact - e.mutual_info_exact;
    if (residual.log3_coefficient != 0) {
        throw std::logic_error("residual uncertainty is not rational: " + residual.to_string());
    }
    RateChain chain;
    chain.per_photon_uncertainty = residual.constant;
    // One photon in three is a k photon and never forms key.
    chain.after_k_exclusion = Rational(2, 3) * chain.per_photon_uncertainty;
    chain.after_resolution = chain.after_k_exclusion / 2;
    if (chain.after_resolution != three_state_key_count(9) / 9) {
        throw std::logic_error("information rate chain does not reach the key rate");
    }
    return chain;
}

std::string_view to_string(Favored favored) {
    switch (favored) {
        case Favored::ThreeState:
            return "three-state";
        case Favored::Bb84:
            return "bb84";
        case Favored::Equal:
            return "equal";
    }
    std::abort();
}

RateComparison compare(std::int64_t n, std::int64_t m) {
    if (n < 1 || m < 0) {
        throw std::invalid_argument("need n >= 1 and m >= 0");
    }
    RateComparison c;
    c.n = n;
    c.m = m;
    c.three_state_key = three_state_key_count(n);
    c.bb84_key = Rational(n, 2) - m;
    c.three_state_cert = three_state_certification(static_cast<double>(n));
    c.bb84_cert = 1.0 - std::exp2(-static_cast<double>(m));
    c.crossover_n = 18 * m;
    if (c.three_state_key > c.bb84_key) {
        c.favored = Favored::ThreeState;
    } else if (c.three_state_key < c.bb84_key) {
        c.favored = Favored::Bb84;
    } else {
        c.favored = Favored::Equal;
    }
    return c;
}

double certification_parity_rounds(double n) { return n * std::log2(3.0) / 9.0; }

double DisturbanceOracle::session_detection(std::size_t n, double fraction) const {
    const double per_photon = auth_failure_at(fraction) / 9.0;
    return 1.0 - std::pow(1.0 - per_photon, static_cast<double>(n));
}

DisturbanceOracle three_state_disturbance(const EveFilterChoice& filter, ResendPolicy policy) {
    DisturbanceOracle o;
    o.auth_failure = erasure_under_attack(Polarization::D45, FilterSetting{Polarization::D45}, filter, policy,
                                          kThreeStateProtocol);
    // The four key slot types (Alice 0/1 against filter 0/1) are equally likely.
    Rational error = 0;
    for (Polarization sent : {Polarization::Z0, Polarization::Z90}) {
        for (Polarization bob : {Polarization::Z0, Polarization::Z90}) {
            const Rational erase = erasure_under_attack(sent, FilterSetting{bob}, filter, policy, kThreeStateProtocol);
            error += (sent == bob ? erase : 1 - erase) / 4;
        }
    }
    o.key_error = error;
    return o;
}

Rational bb84_disturbance(const EveFilterChoice& filter, ResendPolicy policy) {
    Rational error = 0;
    int pairs = 0;
    for (Polarization sent : kBb84Alphabet) {
        for (FilterSetting bob : kBb84Filters) {
            if (basis_of(sent) != basis_of(bob.angle)) {
                continue;
            }
            const Rational erase = erasure_under_attack(sent, bob, filter, policy, kBb84Protocol);
            error += sent == bob.angle ? erase : 1 - erase;
            ++pairs;
        }
    }
    return error / pairs;
}

EmpiricalStatistics empirical_statistics(std::span<const SessionReport> reports) {
    if (reports.empty()) {
        throw EmptyInput("no session reports to aggregate");
    }
    EmpiricalStatistics s;
    JointCounts pooled{};
    std::uint64_t confirmed = 0;
    std::uint64_t key = 0;
    std::uint64_t auth = 0;
    for (const auto& r : reports) {
        ++s.sessions;
        s.photons += r.sent;
        confirmed += r.confirmed;
        key += r.key;
        auth += r.auth;
        for (std::size_t a = 0; a < pooled.size(); ++a) {
            for (std::size_t b = 0; b < pooled[a].size(); ++b) {
                pooled[a][b] += r.joint_counts[a][b];
            }
        }
    }
    const std::uint64_t n = s.photons;
    const double total = static_cast<double>(n);

    std::array<double, 4> alice{};
    std::array<double, 5> bob{};
    std::vector<double> cells;
    for (std::size_t a = 0; a < pooled.size(); ++a) {
        for (std::size_t b = 0; b < pooled[a].size(); ++b) {
            const double p = n ? static_cast<double>(pooled[a][b]) / total : 0.0;
            s.joint[a][b] = p;
            alice[a] += p;
            bob[b] += p;
            cells.push_back(p);
        }
    }
    s.h_a = entropy_estimate(alice, n);
    s.h_b = entropy_estimate(bob, n);
    s.h_ab = entropy_estimate(cells, n);

    double mi = 0;
    double second = 0;
    for (std::size_t a = 0; a < 4; ++a) {
        for (std::size_t b = 0; b < 5; ++b) {
            const double p = s.joint[a][b];
            if (p > 0) {
                const double l = std::log2(p / (alice[a] * bob[b]));
                mi += p * l;
                second += p * l * l;
            }
        }
    }
    s.mutual_info = {mi, n ? std::sqrt(std::max(0.0, second - mi * mi) / total) : 0.0};

    const auto fraction = [&](std::uint64_t count) {
        const double p = n ? static_cast<double>(count) / total : 0.0;
        return Estimate{p, estimate_se(p, n)};
    };
    s.confirmed_fraction = fraction(confirmed);
    s.key_fraction = fraction(key);
    s.auth_fraction = fraction(auth);
    return s;
}

}  // namespace qkd3
