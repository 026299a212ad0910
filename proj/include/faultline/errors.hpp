// Copyright 2026 The Faultline Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace faultline {

/// Raised when an argument violates a documented precondition (odd L, probability range, ...).
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

inline void require(bool condition, const std::string &message) {
    if (!condition) {
        throw DomainError(message);
    }
}

}  // namespace faultline
