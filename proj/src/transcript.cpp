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

#include "qkd3/transcript.hpp"

#include <cstdlib>
#include <stdexcept>

namespace qkd3 {

namespace {

// Position in the fixed protocol order; parity query/response interleave.
int phase(const MessagePayload& payload) {
    if (std::holds_alternative<FilterAnnouncement>(payload)) {
        return 0;
    }
    if (std::holds_alternative<ConfirmationAnnouncement>(payload)) {
        return 1;
    }
    return 2;
}

}  // namespace

std::string_view to_string(Party party) {
    switch (party) {
        case Party::Alice:
            return "alice";
        case Party::Bob:
            return "bob";
    }
    std::abort();
}

void Transcript::append(Party sender, MessagePayload payload) {
    if (!entries_.empty() && phase(payload) < phase(entries_.back().payload)) {
        throw std::logic_error("transcript entry out of protocol order");
    }
    entries_.push_back({sender, std::move(payload)});
}

const FilterAnnouncement* Transcript::filters() const {
    for (const auto& e : entries_) {
        if (const auto* f = std::get_if<FilterAnnouncement>(&e.payload)) {
            return f;
        }
    }
    return nullptr;
}

const ConfirmationAnnouncement* Transcript::confirmations() const {
    for (const auto& e : entries_) {
        if (const auto* c = std::get_if<ConfirmationAnnouncement>(&e.payload)) {
            return c;
        }
    }
    return nullptr;
}

}  // namespace qkd3
