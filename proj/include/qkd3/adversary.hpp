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

#ifndef QKD3_ADVERSARY_HPP
#define QKD3_ADVERSARY_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "qkd3/photon_channel.hpp"
#include "qkd3/random_source.hpp"
#include "qkd3/transcript.hpp"

namespace qkd3 {

struct NoAttack {};

/// Listens to the public channel only.
struct PassiveClassical {};

/// Eve's filter: uniform over the protocol's filter set when `fixed` is
/// empty, otherwise always `*fixed`.
struct EveFilterChoice {
    std::optional<Polarization> fixed;

    bool operator==(const EveFilterChoice&) const = default;
};

std::string to_string(const EveFilterChoice& choice);

/// Measure a `fraction` of the photons and send replacements.
struct InterceptResend {
    EveFilterChoice filter_choice;
    ResendPolicy resend = ResendPolicy::OrthogonalInference;
    double fraction = 1.0;
};

/// Measure every photon with one fixed filter angle.
struct StuckFilter {
    Polarization angle = Polarization::Z0;
    ResendPolicy resend = ResendPolicy::OrthogonalInference;
};

using AttackStrategy = std::variant<NoAttack, PassiveClassical, InterceptResend, StuckFilter>;

/// Throws std::invalid_argument for a fraction outside [0, 1].
void validate(const AttackStrategy& attack);

/// True for strategies that never touch photons.
bool is_passive(const AttackStrategy& attack);

enum class KnowledgeSource : std::uint8_t { Photon, Transcript };

/// What Eve holds about one clock slot.
struct EveRecord {
    std::size_t position = 0;
    std::optional<FilterSetting> filter;
    std::optional<MeasurementOutcome> outcome;
    std::optional<Polarization> known_bit;
    KnowledgeSource source = KnowledgeSource::Photon;
};

/// Sender polarizations that can produce `outcome` under `filter` with
/// non-zero probability.
std::vector<Polarization> consistent_senders(FilterSetting filter, const MeasurementOutcome& outcome,
                                             std::span<const Polarization> sender_alphabet);

struct InterceptResult {
    ChannelSymbol resent;
    EveRecord record;
};

/// One photon through Eve's intercept-resend station. With probability
/// `strategy.fraction` she measures and resends per the policy; otherwise the
/// photon passes untouched and the record has no filter.
InterceptResult intercept_resend(Polarization photon, const InterceptResend& strategy, const ProtocolAlphabet& protocol,
                                 RandomSource& rng, std::size_t position = 0);

/// The attack hook on the quantum channel. Each photon is handed over
/// exactly once, in clock order, and cannot be copied or held back.
class Eavesdropper {
  public:
    Eavesdropper(AttackStrategy attack, ProtocolAlphabet protocol, RandomSource rng);

    ChannelSymbol transmit(Polarization photon);

    const std::vector<EveRecord>& records() const { return records_; }

  private:
    AttackStrategy attack_;
    std::optional<InterceptResend> active_;
    ProtocolAlphabet protocol_;
    RandomSource rng_;
    std::size_t position_ = 0;
    std::vector<EveRecord> records_;
};

/// Eve's inference from the public transcript of a three-state session.
/// Only a confirmed 45-degree setting reveals Alice's photon; every other
/// slot stays ambiguous. Throws std::invalid_argument when the transcript
/// lacks filters or confirmations, or their lengths differ.
std::vector<EveRecord> passive_infer(const Transcript& transcript);

struct StuckFilterReport {
    std::size_t n = 0;
    Polarization angle = Polarization::Z0;
    std::size_t detected = 0;
    std::size_t erased = 0;
    /// Slots where the outcome leaves exactly one sender polarization.
    std::size_t uniquely_determined = 0;

    double detected_frequency() const { return n ? static_cast<double>(detected) / n : 0.0; }
    double erasure_frequency() const { return n ? static_cast<double>(erased) / n : 0.0; }
    double determined_fraction() const { return n ? static_cast<double>(uniquely_determined) / n : 0.0; }
};

/// Eve measures every photon of an n-photon three-state transmission with a
/// filter stuck at `angle` (Z0 or Z90; std::invalid_argument otherwise).
StuckFilterReport stuck_filter_stats(std::size_t n, Polarization angle, RandomSource& rng);

}  // namespace qkd3

#endif  // QKD3_ADVERSARY_HPP
