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

#ifndef QKD3_SERIALIZE_HPP
#define QKD3_SERIALIZE_HPP

#include <string>
#include <vector>

#include "json.hpp"

#include "qkd3/analysis.hpp"
#include "qkd3/harness.hpp"
#include "qkd3/transcript.hpp"

namespace qkd3 {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Filters as a symbol string ("0k1..."), confirmations as a '0'/'1'
/// string. Photon states and raw outcomes are never part of a transcript.
Json to_json(const Transcript& transcript);
Json to_json(const AttackStrategy& attack);
Json to_json(const SessionConfig& config);
Json to_json(const SessionReport& report);
Json to_json(const EmpiricalStatistics& stats);

Json simulate_document(const SessionConfig& config, const std::vector<SessionReport>& reports);
std::string simulate_csv(const std::vector<SessionReport>& reports);

Json analyze_document();
std::string analyze_csv();

Json compare_document(const RateComparison& comparison);
std::string compare_csv(const RateComparison& comparison);

Json sweep_document(const SessionConfig& base, const std::vector<SweepRow>& rows);
/// Header: policy,fraction,empirical_failure,oracle_failure,paper_model,detection_rate,key_error_rate
std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace qkd3

#endif  // QKD3_SERIALIZE_HPP
