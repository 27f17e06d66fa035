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

#ifndef QKD3_SESSION_REPORT_HPP
#define QKD3_SESSION_REPORT_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

#include "qkd3/photon_channel.hpp"
#include "qkd3/transcript.hpp"

namespace qkd3 {

enum class Protocol : std::uint8_t { Bb84, ThreeState };

std::string_view to_string(Protocol protocol);
std::optional<Protocol> protocol_from_string(std::string_view s);

/// Column of a received symbol: the detected polarization (0, k, 1, l) or
/// 4 for an erasure.
inline constexpr std::size_t kErasureColumn = 4;
std::size_t received_column(const MeasurementOutcome& outcome);

/// Counts of (Alice's polarization, Bob's received symbol) pairs.
using JointCounts = std::array<std::array<std::uint64_t, 5>, 4>;

/// Result of one simulated session.
struct SessionReport {
    Protocol protocol = Protocol::ThreeState;
    std::uint64_t trial = 0;
    std::uint64_t seed = 0;

    std::size_t sent = 0;
    /// Confirmed slots (three-state) or sifted slots (BB84).
    std::size_t confirmed = 0;
    /// Key bits: three-state key positions, or BB84 key after certification.
    std::size_t key = 0;
    /// Three-state authentication slots; zero for BB84.
    std::size_t auth = 0;

    /// Three-state authentication failures.
    std::size_t auth_failures = 0;
    /// BB84 only.
    std::optional<std::uint32_t> parity_rounds;
    std::optional<std::uint32_t> detection_round;
    bool key_too_short = false;

    /// Authentication erasure (three-state) or parity mismatch (BB84).
    bool tamper_detected = false;
    /// 1 - 3^-auth (three-state) or 1 - 2^-m (BB84).
    double model_certification = 0.0;
    bool key_released = true;

    /// Bit-level comparison of Alice's and Bob's keys before any abort.
    std::size_t key_compared = 0;
    std::size_t key_mismatches = 0;

    JointCounts joint_counts{};

    std::optional<Transcript> transcript;
};

}  // namespace qkd3

#endif  // QKD3_SESSION_REPORT_HPP
