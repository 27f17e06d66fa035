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

#ifndef QKD3_BB84_HPP
#define QKD3_BB84_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qkd3/adversary.hpp"
#include "qkd3/photon_channel.hpp"
#include "qkd3/random_source.hpp"
#include "qkd3/rational.hpp"
#include "qkd3/transcript.hpp"

namespace qkd3 {

using Bits = std::vector<std::uint8_t>;

/// Fixed bit convention: Z0 and D45 carry 0, Z90 and D135 carry 1.
constexpr std::uint8_t bit_map(Polarization p) {
    return (p == Polarization::Z90 || p == Polarization::D135) ? 1 : 0;
}

struct Bb84AliceState {
    std::vector<Polarization> sent;
    Bits bits;
};

struct Bb84BobState {
    std::vector<FilterSetting> filters;
    std::vector<MeasurementOutcome> outcomes;
    std::vector<Polarization> inferred;
};

struct Bb84SiftResult {
    std::vector<std::size_t> kept_indices;
    Bits alice_key;
    Bits bob_key;
};

struct CertificationResult {
    std::uint32_t rounds = 0;
    bool mismatch_detected = false;
    /// One bit per executed round.
    std::uint32_t bits_discarded = 0;
    /// Zero after a detected mismatch (the key is abandoned).
    std::size_t final_key_length = 0;
    /// 1-based round of the first mismatch.
    std::optional<std::uint32_t> detection_round;
    /// Indices into the input key that survive certification.
    std::vector<std::size_t> surviving;
};

struct Bb84Run {
    Bb84AliceState alice;
    Bb84BobState bob;
    Transcript transcript;
    std::vector<EveRecord> eve_records;
};

/// Detected reads as the filter angle; an erasure in a clocked slot means
/// the photon was orthogonal to the filter. Filter must be Z0 or D45.
Polarization infer_bit(FilterSetting filter, const MeasurementOutcome& outcome);

/// Sends n uniformly chosen photons through the (possibly attacked) channel
/// to Bob's random Z0/D45 detectors. The transcript holds Bob's filter
/// announcement and Alice's basis confirmations.
Bb84Run bb84_run(std::size_t n, RandomSource& rng, const AttackStrategy& attack);

/// Keeps the slots where Alice's basis matches Bob's filter.
Bb84SiftResult sift(const Bb84AliceState& alice, const Bb84BobState& bob);

/// The kept slots as Bob sees them, from the transcript alone.
std::vector<std::size_t> kept_from_transcript(const Transcript& transcript);

/// m rounds of random-subset parity comparison. Each round includes every
/// surviving position independently with probability 1/2 (redrawn if
/// empty), compares odd parity of both keys over the subset, then discards
/// the lowest-index member. A mismatch aborts certification.
///
/// When `transcript` is given, queries and both parities are appended, with
/// positions translated through `slot_of` (identity when empty).
///
/// Throws KeyTooShort when the key has at most m bits.
CertificationResult parity_certify(std::span<const std::uint8_t> alice_key, std::span<const std::uint8_t> bob_key,
                                   std::uint32_t m, RandomSource& rng, Transcript* transcript = nullptr,
                                   std::span<const std::size_t> slot_of = {});

/// Expected certified key size n/2 - m. Throws NonPositiveKey when that is
/// not positive.
Rational bb84_usable_key(std::int64_t n, std::int64_t m);

/// Certification probability 1 - 2^-m.
double bb84_certification(std::int64_t m);

/// Full session: transmission, sifting, then certification.
struct Bb84Session {
    Bb84Run run;
    Bb84SiftResult sifted;
    /// Empty when the sifted key was too short for m rounds.
    std::optional<CertificationResult> certification;
};

Bb84Session bb84_session(std::size_t n, std::uint32_t m, RandomSource& rng, const AttackStrategy& attack);

}  // namespace qkd3

#endif  // QKD3_BB84_HPP
