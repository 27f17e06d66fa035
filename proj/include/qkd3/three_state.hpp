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

#ifndef QKD3_THREE_STATE_HPP
#define QKD3_THREE_STATE_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "qkd3/adversary.hpp"
#include "qkd3/bb84.hpp"
#include "qkd3/photon_channel.hpp"
#include "qkd3/random_source.hpp"
#include "qkd3/rational.hpp"
#include "qkd3/transcript.hpp"

namespace qkd3 {

// Three-state protocol. Alice sends Z0, D45 or Z90; Bob filters with one of
// the same three angles and announces his settings; Alice answers which
// settings were "correct". A setting is correct when Bob can recover
// Alice's photon from his outcome: an exact match, or for a 0/1 photon a
// filter orthogonal to it (then an erasure reads as the other state).
// That makes 5 of the 9 (photon, filter) pairs correct, not just the
// 3 exact matches.
//
// Confirmed slots with a 0 or 90 degree filter carry key bits. Confirmed
// 45-degree slots carry no secret (the transcript reveals them) but must
// always be detected on an undisturbed channel, so an erasure there
// exposes tampering.

struct ThreeStateAliceState {
    std::vector<Polarization> sent;
};

struct ThreeStateBobState {
    std::vector<FilterSetting> filters;
    std::vector<MeasurementOutcome> outcomes;
};

struct Confirmation {
    std::vector<bool> correct;
};

struct KeyMaterial {
    std::vector<std::size_t> key_positions;
    /// Bob's key, from his inferred polarizations.
    Bits key_bits;
    /// Alice's key over the same positions.
    Bits alice_key_bits;
    std::vector<std::size_t> auth_positions;
};

struct TamperReport {
    std::size_t auth_checked = 0;
    std::size_t auth_failures = 0;
    bool tamper_detected = false;
    /// 1 - 3^-auth_checked: the detection probability if each
    /// authentication slot independently catches Eve with probability 2/3.
    double model_certification = 0.0;
};

struct ThreeStateOptions {
    /// Withhold the key once tampering is detected.
    bool abort_on_tamper = true;
};

struct ThreeStateRun {
    ThreeStateAliceState alice;
    ThreeStateBobState bob;
    Confirmation confirmation;
    KeyMaterial key;
    TamperReport tamper;
    Transcript transcript;
    std::vector<EveRecord> eve_records;
    /// False when the session aborted on tamper detection.
    bool key_released = true;
};

/// Whether Alice declares Bob's setting correct for this slot.
bool is_correct_setting(Polarization sent, FilterSetting filter);

/// Alice's per-slot verdicts. Depends on what was sent and Bob's settings,
/// never on his outcomes.
Confirmation confirm(std::span<const Polarization> sent, std::span<const FilterSetting> filters);

/// Bob's reading of a confirmed key slot. Filter must be Z0 or Z90.
Polarization infer_key_bit(FilterSetting filter, const MeasurementOutcome& outcome);

/// Checks the outcomes of all confirmed 45-degree slots.
TamperReport authenticate(std::span<const MeasurementOutcome> auth_outcomes);

/// Expected key bits for n photons: 4n/9.
Rational three_state_key_count(std::int64_t n);

/// 1 - 3^-(n/9).
double three_state_certification(double n);

ThreeStateRun three_state_run(std::size_t n, RandomSource& rng, const AttackStrategy& attack,
                              const ThreeStateOptions& options = {});

}  // namespace qkd3

#endif  // QKD3_THREE_STATE_HPP
