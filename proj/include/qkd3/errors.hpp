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

#ifndef QKD3_ERRORS_HPP
#define QKD3_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qkd3 {

/// Parity certification asked for at least as many rounds as key bits.
class KeyTooShort : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Expected key size n/2 - m is not positive.
class NonPositiveKey : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// No session reports to aggregate.
class EmptyInput : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// A session or command configuration rejected at one named field.
class InvalidConfig : public std::invalid_argument {
  public:
    InvalidConfig(std::string field, const std::string& message)
        : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}

    const std::string& field() const { return field_; }

  private:
    std::string field_;
};

}  // namespace qkd3

#endif  // QKD3_ERRORS_HPP
