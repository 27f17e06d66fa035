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

#ifndef QKD3_PHOTON_CHANNEL_HPP
#define QKD3_PHOTON_CHANNEL_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

#include "qkd3/random_source.hpp"
#include "qkd3/rational.hpp"

namespace qkd3 {

/// The four discrete photon angles. Short names follow the usual
/// 0 / k / 1 / l labelling of 0, 45, 90 and 135 degrees.
enum class Polarization : std::uint8_t { Z0 = 0, D45 = 1, Z90 = 2, D135 = 3 };

inline constexpr std::array<Polarization, 4> kAllPolarizations = {
    Polarization::Z0, Polarization::D45, Polarization::Z90, Polarization::D135};

constexpr int degrees(Polarization p) { return 45 * static_cast<int>(p); }

/// Inverse of degrees(); nullopt for anything outside {0, 45, 90, 135}.
std::optional<Polarization> polarization_from_degrees(int deg);

constexpr Polarization orth(Polarization p) {
    return static_cast<Polarization>((static_cast<std::uint8_t>(p) + 2) % 4);
}

/// Rectilinear (Z0/Z90) or diagonal (D45/D135) basis.
enum class Basis : std::uint8_t { Rectilinear, Diagonal };

constexpr Basis basis_of(Polarization p) {
    return (p == Polarization::Z0 || p == Polarization::Z90) ? Basis::Rectilinear : Basis::Diagonal;
}

/// "0", "k", "1", "l".
std::string_view symbol(Polarization p);
std::optional<Polarization> polarization_from_symbol(std::string_view s);

/// Orientation of a polarizing filter placed in front of a detector.
struct FilterSetting {
    Polarization angle;

    constexpr bool operator==(const FilterSetting&) const = default;
};

inline constexpr std::array<Polarization, 3> kThreeStateAlphabet = {Polarization::Z0, Polarization::D45,
                                                                  Polarization::Z90};
inline constexpr std::array<FilterSetting, 3> kThreeStateFilters = {
    FilterSetting{Polarization::Z0}, FilterSetting{Polarization::D45}, FilterSetting{Polarization::Z90}};

inline constexpr std::array<Polarization, 4> kBb84Alphabet = kAllPolarizations;
inline constexpr std::array<FilterSetting, 2> kBb84Filters = {FilterSetting{Polarization::Z0},
                                                              FilterSetting{Polarization::D45}};

/// Sender alphabet and receiver filter set of one protocol.
struct ProtocolAlphabet {
    std::span<const Polarization> sender;
    std::span<const FilterSetting> filters;
};

inline constexpr ProtocolAlphabet kThreeStateProtocol{kThreeStateAlphabet, kThreeStateFilters};
inline constexpr ProtocolAlphabet kBb84Protocol{kBb84Alphabet, kBb84Filters};

/// A clocked detection slot: the photon either passed the filter or nothing
/// was seen. A detected photon has collapsed onto the filter orientation.
class MeasurementOutcome {
  public:
    static constexpr MeasurementOutcome detected(Polarization as) { return MeasurementOutcome(as); }
    static constexpr MeasurementOutcome erasure() { return MeasurementOutcome(); }

    constexpr bool is_detected() const { return detected_as_.has_value(); }
    constexpr bool is_erasure() const { return !detected_as_.has_value(); }
    constexpr std::optional<Polarization> detected_as() const { return detected_as_; }

    constexpr bool operator==(const MeasurementOutcome&) const = default;

  private:
    constexpr MeasurementOutcome() = default;
    constexpr explicit MeasurementOutcome(Polarization p) : detected_as_(p) {}

    std::optional<Polarization> detected_as_;
};

/// What travels on the quantum channel in one clock slot: a photon, or
/// nothing (an intercepting party absorbed it and sent no replacement).
using ChannelSymbol = std::optional<Polarization>;

struct TransitionDistribution {
    Rational detected;
    Rational erasure;
};

/// Exact Malus-law probabilities cos^2 of the angle between photon and
/// filter. For the discrete angle set these are always 0, 1/2 or 1.
TransitionDistribution transition_distribution(Polarization photon, FilterSetting filter);

/// Outcome for one measurement given the raw variate that decides it.
/// measure() draws exactly one variate and delegates here.
MeasurementOutcome measure_with_variate(ChannelSymbol photon, FilterSetting filter, std::uint64_t variate);

MeasurementOutcome measure(ChannelSymbol photon, FilterSetting filter, RandomSource& rng);

/// How an intercepting party replaces a photon after measuring it when
/// its detector saw nothing.
enum class ResendPolicy : std::uint8_t {
    /// Send the state orthogonal to the filter, the polarization a clocked
    /// erasure points to.
    OrthogonalInference,
    /// Send nothing; the receiver records an erasure.
    SendNothing,
    /// Send a polarization drawn uniformly from the sender's alphabet.
    UniformRandom,
};

std::string_view to_string(ResendPolicy policy);
std::optional<ResendPolicy> resend_policy_from_string(std::string_view s);

/// The replacement photon after a measurement under `filter`. A detection
/// always resends the collapsed state. `sender_alphabet` and `rng` are only
/// consulted for UniformRandom after an erasure.
ChannelSymbol collapse_and_resend(const MeasurementOutcome& outcome, FilterSetting filter, ResendPolicy policy,
                                  std::span<const Polarization> sender_alphabet, RandomSource& rng);

}  // namespace qkd3

#endif  // QKD3_PHOTON_CHANNEL_HPP
