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
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "faultline/blossom.hpp"
#include "faultline/errors.hpp"

namespace faultline {

/// Weighted defect graph handed to the decoder core. Every defect may also be matched to a
/// relevant face at cost boundary_weights[i].
struct MatchingProblem {
    std::vector<uint32_t> defects;
    std::vector<std::vector<int64_t>> pair_weights;
    std::vector<int64_t> boundary_weights;

    size_t size() const { return boundary_weights.size(); }

    static MatchingProblem from_weights(std::vector<std::vector<int64_t>> pair_weights, std::vector<int64_t> boundary) {
        MatchingProblem p;
        p.defects.resize(boundary.size());
        for (size_t i = 0; i < p.defects.size(); ++i) p.defects[i] = static_cast<uint32_t>(i);
        p.pair_weights = std::move(pair_weights);
        p.boundary_weights = std::move(boundary);
        return p;
    }

    void validate() const {
        const size_t n = size();
        require(pair_weights.size() == n, "pair_weights must be an n x n matrix");
        require(defects.empty() || defects.size() == n, "defects and boundary_weights disagree in length");
        for (size_t i = 0; i < n; ++i) {
            require(pair_weights[i].size() == n, "pair_weights must be an n x n matrix");
            require(boundary_weights[i] >= 0, "weights must be nonnegative");
            for (size_t j = 0; j < n; ++j) {
                require(pair_weights[i][j] >= 0, "weights must be nonnegative");
                require(pair_weights[i][j] == pair_weights[j][i], "pair_weights must be symmetric");
            }
        }
    }
};

/// Result of a perfect matching over defects plus faces.
/// Ties between optimal matchings are broken by the lexicographically smallest partner vector,
/// where partner[i] is the paired defect index or n for a face match.
struct Matching {
    std::vector<std::pair<size_t, size_t>> pairs;
    std::vector<size_t> boundary_matches;
    int64_t total_weight = 0;
    std::vector<size_t> partner;

    bool operator==(const Matching &) const = default;
};

namespace detail {

inline Matching matching_from_partners(const MatchingProblem &problem, std::vector<size_t> partner) {
    const size_t n = problem.size();
    Matching m;
    for (size_t i = 0; i < n; ++i) {
        if (partner[i] == n) {
            m.boundary_matches.push_back(i);
            m.total_weight += problem.boundary_weights[i];
        } else if (partner[i] > i) {
            m.pairs.emplace_back(i, partner[i]);
            m.total_weight += problem.pair_weights[i][partner[i]];
        }
    }
    m.partner = std::move(partner);
    return m;
}

}  // namespace detail

inline constexpr size_t kOracleMaxDefects = 20;

/// Exhaustive minimum-weight matching by dynamic programming over defect subsets.
inline Matching oracle_matching(const MatchingProblem &problem) {
    problem.validate();
    const size_t n = problem.size();
    require(n <= kOracleMaxDefects, "oracle_matching: problem too large for the oracle (" + std::to_string(n) +
                                        " defects > " + std::to_string(kOracleMaxDefects) + ")");
    const uint32_t full = (1u << n) - 1;
    std::vector<int64_t> best(size_t{1} << n, 0);
    for (uint32_t mask = 1; mask <= full && mask != 0; ++mask) {
        const size_t i = static_cast<size_t>(__builtin_ctz(mask));
        const uint32_t rest = mask & ~(1u << i);
        int64_t value = problem.boundary_weights[i] + best[rest];
        for (uint32_t others = rest; others; others &= others - 1) {
            const size_t j = static_cast<size_t>(__builtin_ctz(others));
            value = std::min(value, problem.pair_weights[i][j] + best[rest & ~(1u << j)]);
        }
        best[mask] = value;
    }

    std::vector<size_t> partner(n, n);
    uint32_t mask = full;
    while (mask) {
        const size_t i = static_cast<size_t>(__builtin_ctz(mask));
        const uint32_t rest = mask & ~(1u << i);
        bool paired = false;
        for (uint32_t others = rest; others; others &= others - 1) {
            const size_t j = static_cast<size_t>(__builtin_ctz(others));
            if (problem.pair_weights[i][j] + best[rest & ~(1u << j)] == best[mask]) {
                partner[i] = j;
                partner[j] = i;
                mask = rest & ~(1u << j);
                paired = true;
                break;
            }
        }
        if (!paired) {
            partner[i] = n;
            mask = rest;
        }
    }
    return detail::matching_from_partners(problem, std::move(partner));
}

/// Exact minimum-weight perfect matching by the blossom algorithm.
///
/// Each defect i gets a virtual face node i'; the edge (i, i') costs boundary_weights[i] and the
/// virtual nodes are joined to each other at zero cost. The lexicographic tie-break is realised
/// by solving with integer-perturbed weights for a block of the lowest unresolved defects at a
/// time, fixing their partners, and recursing on the remainder.
inline Matching min_weight_matching(const MatchingProblem &problem) {
    problem.validate();
    const size_t n = problem.size();
    const size_t unset = std::numeric_limits<size_t>::max();
    std::vector<size_t> partner(n, unset);
    std::vector<size_t> active(n);
    for (size_t i = 0; i < n; ++i) active[i] = i;

    const unsigned __int128 base = n + 1;
    constexpr unsigned __int128 kLimit = static_cast<unsigned __int128>(1) << 60;

    while (!active.empty()) {
        const size_t m = active.size();
        int64_t max_weight = 0;
        for (size_t a = 0; a < m; ++a) {
            max_weight = std::max(max_weight, problem.boundary_weights[active[a]]);
            for (size_t b = a + 1; b < m; ++b) {
                max_weight = std::max(max_weight, problem.pair_weights[active[a]][active[b]]);
            }
        }
        // scale^block must stay below 2^60 / (max_weight + 2).
        size_t block = 1;
        unsigned __int128 scale = base;
        while (block < m && scale * base * static_cast<unsigned __int128>(max_weight + 2) < kLimit) {
            scale *= base;
            ++block;
        }
        require(scale * static_cast<unsigned __int128>(max_weight + 2) < kLimit,
                "min_weight_matching: weights too large for exact integer arithmetic");
        std::vector<int64_t> place(block);
        {
            unsigned __int128 pw = 1;
            for (size_t a = block; a-- > 0;) {
                place[a] = static_cast<int64_t>(pw);
                pw *= base;
            }
        }
        const int64_t unit = static_cast<int64_t>(scale);
        auto perturbation = [&](size_t a, size_t key) -> int64_t {
            return a < block ? place[a] * static_cast<int64_t>(key) : 0;
        };

        std::vector<std::pair<std::pair<int, int>, int64_t>> costs;
        for (size_t a = 0; a < m; ++a) {
            const size_t ia = active[a];
            const int64_t wb = problem.boundary_weights[ia];
            costs.push_back({{static_cast<int>(a), static_cast<int>(m + a)}, wb * unit + perturbation(a, n)});
            for (size_t b = a + 1; b < m; ++b) {
                const size_t ib = active[b];
                const int64_t w = problem.pair_weights[ia][ib];
                // Strictly worse than two face matches: never in an optimal matching.
                if (w > wb + problem.boundary_weights[ib]) continue;
                costs.push_back({{static_cast<int>(a), static_cast<int>(b)},
                                 w * unit + perturbation(a, ib) + perturbation(b, ia)});
            }
            for (size_t b = a + 1; b < m; ++b) {
                costs.push_back({{static_cast<int>(m + a), static_cast<int>(m + b)}, 0});
            }
        }
        int64_t top = 0;
        for (const auto &c : costs) top = std::max(top, c.second);
        std::vector<detail::WeightedEdge> edges;
        edges.reserve(costs.size());
        for (const auto &c : costs) edges.push_back({c.first.first, c.first.second, top + 1 - c.second});

        const std::vector<int> mate = detail::BlossomMatcher::solve(static_cast<int>(2 * m), edges, true);

        for (size_t a = 0; a < block; ++a) {
            const size_t ia = active[a];
            if (partner[ia] != unset) continue;
            const int other = mate[a];
            require(other >= 0, "min_weight_matching: internal error, unmatched defect");
            if (static_cast<size_t>(other) >= m) {
                partner[ia] = n;
            } else {
                const size_t ib = active[static_cast<size_t>(other)];
                partner[ia] = ib;
                partner[ib] = ia;
            }
        }
        std::vector<size_t> next;
        for (size_t ia : active) {
            if (partner[ia] == unset) next.push_back(ia);
        }
        active = std::move(next);
    }
    return detail::matching_from_partners(problem, std::move(partner));
}

}  // namespace faultline
