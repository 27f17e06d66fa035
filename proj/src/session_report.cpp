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

#include "qkd3/session_report.hpp"

#include <cstdlib>

namespace qkd3 {

std::string_view to_string(Protocol protocol) {
    switch (protocol) {
        case Protocol::Bb84:
            return "bb84";
        case Protocol::ThreeState:
            return "three-state";
    }
    std::abort();
}

std::optional<Protocol> protocol_from_string(std::string_view s) {
    if (s == "bb84") {
        return Protocol::Bb84;
    }
    if (s == "three-state") {
        return Protocol::ThreeState;
    }
    return std::nullopt;
}

std::size_t received_column(const MeasurementOutcome& outcome) {
    if (auto p = outcome.detected_as()) {
        return static_cast<std::size_t>(*p);
    }
    return kErasureColumn;
}

}  // namespace qkd3
