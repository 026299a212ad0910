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

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace faultline {

struct Interval {
    double lo = 0;
    double hi = 0;
    bool operator==(const Interval &) const = default;
};

inline constexpr double kZ95 = 1.959963984540054;

/// Wilson score interval for a binomial proportion; well behaved at 0 and n successes.
inline Interval wilson_interval(uint64_t successes, uint64_t trials, double z = kZ95) {
    if (trials == 0) return {0.0, 1.0};
    const double n = static_cast<double>(trials);
    const double phat = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double centre = (phat + z2 / (2 * n)) / denom;
    const double half = z * std::sqrt(phat * (1 - phat) / n + z2 / (4 * n * n)) / denom;
    Interval out{std::max(0.0, centre - half), std::min(1.0, centre + half)};
    // Clamp rounding so that lo <= phat <= hi holds exactly.
    out.lo = std::min(out.lo, phat);
    out.hi = std::max(out.hi, phat);
    if (successes == 0) out.lo = 0.0;
    if (successes == trials) out.hi = 1.0;
    return out;
}

}  // namespace faultline
