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

#ifndef QKD3_TESTS_ENUMERATION_ORACLE_HPP
#define QKD3_TESTS_ENUMERATION_ORACLE_HPP

// Brute-force enumeration over every branch of a session, written in plain
// degrees with its own Malus table. Shares nothing with the library's
// channel or protocol code except the Rational arithmetic type.

#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include "qkd3/rational.hpp"

namespace oracle {

using qkd3::Rational;

enum class Resend { Orthogonal, Nothing, Uniform };

inline Rational pass_probability(int photon_deg, int filter_deg) {
    int d = (photon_deg - filter_deg) % 180;
    if (d < 0) {
        d += 180;
    }
    if (d == 0) {
        return 1;
    }
    if (d == 90) {
        return 0;
    }
    return Rational(1, 2);
}

struct Setup {
    std::vector<int> alice;        // sender alphabet, uniform
    std::vector<int> bob_filters;  // uniform
    std::vector<int> eve_filters;  // uniform over this list
    Resend resend = Resend::Orthogonal;
};

inline Setup three_state(std::vector<int> eve_filters, Resend resend) {
    return {{0, 45, 90}, {0, 45, 90}, std::move(eve_filters), resend};
}

inline Setup bb84(std::vector<int> eve_filters, Resend resend) {
    return {{0, 45, 90, 135}, {0, 45}, std::move(eve_filters), resend};
}

/// P(alice, bob filter, bob detected) with every photon intercepted.
/// An empty eve_filters list means no eavesdropper.
inline std::map<std::tuple<int, int, bool>, Rational> enumerate(const Setup& s) {
    std::map<std::tuple<int, int, bool>, Rational> out;
    const Rational pa(1, static_cast<std::int64_t>(s.alice.size()));
    const Rational pb(1, static_cast<std::int64_t>(s.bob_filters.size()));
    for (int a : s.alice) {
        for (int b : s.bob_filters) {
            // (photon arriving at Bob or nullopt, probability)
            std::vector<std::pair<std::optional<int>, Rational>> arriving;
            if (s.eve_filters.empty()) {
                arriving.emplace_back(a, Rational(1));
            } else {
                const Rational pe(1, static_cast<std::int64_t>(s.eve_filters.size()));
                for (int e : s.eve_filters) {
                    const Rational det = pass_probability(a, e);
                    arriving.emplace_back(e, pe * det);
                    const Rational era = 1 - det;
                    switch (s.resend) {
                        case Resend::Orthogonal:
                            arriving.emplace_back((e + 90) % 180, pe * era);
                            break;
                        case Resend::Nothing:
                            arriving.emplace_back(std::nullopt, pe * era);
                            break;
                        case Resend::Uniform:
                            for (int r : s.alice) {
                                arriving.emplace_back(r, pe * era * Rational(1, static_cast<std::int64_t>(s.alice.size())));
                            }
                            break;
                    }
                }
            }
            for (const auto& [photon, p] : arriving) {
                if (p == 0) {
                    continue;
                }
                const Rational det = photon ? pass_probability(*photon, b) : Rational(0);
                out[{a, b, true}] += pa * pb * p * det;
                out[{a, b, false}] += pa * pb * p * (1 - det);
            }
        }
    }
    return out;
}

/// Three-state "correct setting": exact match, or 0/90 photon against a 0/90 filter.
inline bool confirmed(int a, int b) {
    if (a == 45) {
        return b == 45;
    }
    return b == 0 || b == 90;
}

/// P(erasure | confirmed 45-degree slot).
inline Rational auth_failure(const Setup& s) {
    const auto joint = enumerate(s);
    Rational fail = 0;
    Rational total = 0;
    for (const auto& [key, p] : joint) {
        const auto [a, b, det] = key;
        if (b == 45 && confirmed(a, b)) {
            total += p;
            if (!det) {
                fail += p;
            }
        }
    }
    return fail / total;
}

/// P(Bob's bit wrong | three-state key slot).
inline Rational key_error(const Setup& s) {
    const auto joint = enumerate(s);
    Rational wrong = 0;
    Rational total = 0;
    for (const auto& [key, p] : joint) {
        const auto [a, b, det] = key;
        if (b != 45 && confirmed(a, b)) {
            total += p;
            const int inferred = det ? b : (b + 90) % 180;
            if (inferred != a) {
                wrong += p;
            }
        }
    }
    return wrong / total;
}

/// P(Bob's bit wrong | BB84 sifted slot).
inline Rational bb84_sift_error(const Setup& s) {
    const auto joint = enumerate(s);
    Rational wrong = 0;
    Rational total = 0;
    for (const auto& [key, p] : joint) {
        const auto [a, b, det] = key;
        if (a % 90 == b % 90) {
            total += p;
            const int inferred = det ? b : b + 90;
            if (inferred != a) {
                wrong += p;
            }
        }
    }
    return wrong / total;
}

}  // namespace oracle

#endif  // QKD3_TESTS_ENUMERATION_ORACLE_HPP
