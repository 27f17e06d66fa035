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

#ifndef QKD3_TRANSCRIPT_HPP
#define QKD3_TRANSCRIPT_HPP

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <variant>
#include <vector>

#include "qkd3/photon_channel.hpp"

namespace qkd3 {

enum class Party : std::uint8_t { Alice, Bob };

std::string_view to_string(Party party);

/// Bob's detector settings, one per clock slot.
struct FilterAnnouncement {
    std::vector<FilterSetting> filters;
};

/// Alice's per-slot verdict on Bob's settings.
struct ConfirmationAnnouncement {
    std::vector<bool> correct;
};

/// A publicly chosen subset of key positions (slot indices) whose parity
/// both sides will reveal.
struct ParityQuery {
    std::uint32_t round = 0;
    std::vector<std::size_t> positions;
};

struct ParityResponse {
    std::uint32_t round = 0;
    bool odd = false;
};

using MessagePayload = std::variant<FilterAnnouncement, ConfirmationAnnouncement, ParityQuery, ParityResponse>;

struct TranscriptEntry {
    Party sender;
    MessagePayload payload;
};

/// Everything said on the public channel during one session, in order.
/// This is the complete view of a passive eavesdropper. Appending enforces
/// protocol order: filter announcements, then confirmations, then parity
/// traffic; std::logic_error otherwise.
class Transcript {
  public:
    void append(Party sender, MessagePayload payload);

    const std::vector<TranscriptEntry>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }

    /// First filter announcement, if any.
    const FilterAnnouncement* filters() const;
    /// First confirmation announcement, if any.
    const ConfirmationAnnouncement* confirmations() const;

  private:
    std::vector<TranscriptEntry> entries_;
};

}  // namespace qkd3

#endif  // QKD3_TRANSCRIPT_HPP
