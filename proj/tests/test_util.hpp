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

#ifndef QKD3_TESTS_TEST_UTIL_HPP
#define QKD3_TESTS_TEST_UTIL_HPP

#include <cmath>
#include <cstddef>

namespace qkd3::testing {

/// Three-sigma half-width of a binomial proportion estimate.
inline double three_sigma(double p, std::size_t n) { return 3.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(n)); }

}  // namespace qkd3::testing

#endif  // QKD3_TESTS_TEST_UTIL_HPP
