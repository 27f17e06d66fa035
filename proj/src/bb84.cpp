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

#include "qkd3/bb84.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qkd3/errors.hpp"

namespace qkd3 {

Polarization infer_bit(FilterSetting filter, const MeasurementOutcome& outcome) {
    if (filter.angle != Polarization::Z0 && filter.angle != Polarization::D45) {
        throw std::invalid_argument("BB84 filters are Z0 or D45");
    }
    return outcome.is_detected() ? filter.angle : orth(filter.angle);
}

Bb84Run bb84_run(std::size_t n, RandomSource& rng, const AttackStrategy& attack) {
    if (n < 1) {
        throw std::invalid_argument("photon count must be at least 1");
    }
    RandomSource alice_rng = rng.child(0);
    RandomSource filter_rng = rng.child(1);
    RandomSource detector_rng = rng.child(2);
    Eavesdropper eve(attack, kBb84Protocol, rng.child(3));

    Bb84Run run;
    run.alice.sent.reserve(n);
    run.alice.bits.reserve(n);
    run.bob.filters.reserve(n);
    run.bob.outcomes.reserve(n);
    run.bob.inferred.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Polarization sent = kBb84Alphabet[alice_rng.below(kBb84Alphabet.size())];
        const FilterSetting filter = kBb84Filters[filter_rng.below(kBb84Filters.size())];
        const ChannelSymbol arriving = eve.transmit(sent);
        const MeasurementOutcome outcome = measure(arriving, filter, detector_rng);
        run.alice.sent.push_back(sent);
        run.alice.bits.push_back(bit_map(sent));
        run.bob.filters.push_back(filter);
        run.bob.outcomes.push_back(outcome);
        run.bob.inferred.push_back(infer_bit(filter, outcome));
    }

    std::vector<bool> aligned(n);
    for (std::size_t i = 0; i < n; ++i) {
        aligned[i] = basis_of(run.alice.sent[i]) == basis_of(run.bob.filters[i].angle);
    }
    run.transcript.append(Party::Bob, FilterAnnouncement{run.bob.filters});
    run.transcript.append(Party::Alice, ConfirmationAnnouncement{std::move(aligned)});
    run.eve_records = eve.records();
    return run;
}

Bb84SiftResult sift(const Bb84AliceState& alice, const Bb84BobState& bob) {
    if (alice.sent.size() != bob.filters.size() || bob.filters.size() != bob.inferred.size()) {
        throw std::invalid_argument("Alice and Bob states differ in length");
    }
    Bb84SiftResult out;
    for (std::size_t i = 0; i < alice.sent.size(); ++i) {
        if (basis_of(alice.sent[i]) == basis_of(bob.filters[i].angle)) {
            out.kept_indices.push_back(i);
            out.alice_key.push_back(bit_map(alice.sent[i]));
            out.bob_key.push_back(bit_map(bob.inferred[i]));
        }
    }
    return out;
}

std::vector<std::size_t> kept_from_transcript(const Transcript& transcript) {
    const auto* confirmations = transcript.confirmations();
    if (confirmations == nullptr) {
        throw std::invalid_argument("transcript has no confirmation announcement");
    }
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < confirmations->correct.size(); ++i) {
        if (confirmations->correct[i]) {
            kept.push_back(i);
        }
    }
    return kept;
}

CertificationResult parity_certify(std::span<const std::uint8_t> alice_key, std::span<const std::uint8_t> bob_key,
                                   std::uint32_t m, RandomSource& rng, Transcript* transcript,
                                   std::span<const std::size_t> slot_of) {
    if (alice_key.size() != bob_key.size()) {
        throw std::invalid_argument("keys differ in length");
    }
    if (alice_key.size() <= m) {
        throw KeyTooShort("key of " + std::to_string(alice_key.size()) + " bits cannot support " +
                          std::to_string(m) + " parity rounds");
    }
    if (!slot_of.empty() && slot_of.size() != alice_key.size()) {
        throw std::invalid_argument("slot map differs in length from key");
    }

    CertificationResult result{.rounds = m};
    std::vector<std::size_t> surviving(alice_key.size());
    for (std::size_t i = 0; i < surviving.size(); ++i) {
        surviving[i] = i;
    }

    std::vector<std::size_t> subset;
    for (std::uint32_t round = 1; round <= m; ++round) {
        std::vector<bool> chosen(surviving.size());
        do {
            subset.clear();
            for (std::size_t j = 0; j < surviving.size(); ++j) {
                chosen[j] = rng.coin();
                if (chosen[j]) {
                    subset.push_back(surviving[j]);
                }
            }
        } while (subset.empty());

        bool alice_odd = false;
        bool bob_odd = false;
        for (std::size_t pos : subset) {
            alice_odd ^= alice_key[pos] != 0;
            bob_odd ^= bob_key[pos] != 0;
        }
        if (transcript != nullptr) {
            std::vector<std::size_t> slots = subset;
            if (!slot_of.empty()) {
                for (auto& s : slots) {
                    s = slot_of[s];
                }
            }
            transcript->append(Party::Alice, ParityQuery{round, std::move(slots)});
            transcript->append(Party::Alice, ParityResponse{round, alice_odd});
            transcript->append(Party::Bob, ParityResponse{round, bob_odd});
        }

        ++result.bits_discarded;
        if (alice_odd != bob_odd) {
            result.mismatch_detected = true;
            result.detection_round = round;
            result.final_key_length = 0;
            return result;
        }
        // surviving is sorted, so the first chosen entry is the lowest index.
        for (std::size_t j = 0; j < surviving.size(); ++j) {
            if (chosen[j]) {
                surviving.erase(surviving.begin() + static_cast<std::ptrdiff_t>(j));
                break;
            }
        }
    }
    result.final_key_length = surviving.size();
    result.surviving = std::move(surviving);
    return result;
}

Rational bb84_usable_key(std::int64_t n, std::int64_t m) {
    if (n < 1 || m < 0) {
        throw std::invalid_argument("need n >= 1 and m >= 0");
    }
    Rational key = Rational(n, 2) - m;
    if (key <= 0) {
        throw NonPositiveKey("n/2 - m = " + to_string(key) + " is not positive");
    }
    return key;
}

double bb84_certification(std::int64_t m) { return 1.0 - std::exp2(-static_cast<double>(m)); }

Bb84Session bb84_session(std::size_t n, std::uint32_t m, RandomSource& rng, const AttackStrategy& attack) {
    Bb84Session session{.run = bb84_run(n, rng, attack)};
    session.sifted = sift(session.run.alice, session.run.bob);
    RandomSource parity_rng = rng.child(4);
    try {
        session.certification = parity_certify(session.sifted.alice_key, session.sifted.bob_key, m, parity_rng,
                                               &session.run.transcript, session.sifted.kept_indices);
    } catch (const KeyTooShort&) {
        session.certification.reset();
    }
    return session;
}

}  // namespace qkd3
