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
#include <string>
#include <vector>

#include "faultline/errors.hpp"
#include "faultline/syndrome_graph.hpp"

namespace faultline {

/// Treatment of the first step of a walk leaving the top face.
enum class FirstStep : uint8_t {
    /// Every incident edge is allowed, including edges back into the top face.
    Free,
    /// Edges into the top face are excluded, as if the walk had arrived from it.
    ExcludeFace,
};

inline constexpr int kMaxWalkLength = 16;
inline constexpr uint64_t kMaxWalkWork = 100'000'000;

/// Exact non-backtracking walk counts from the top-face vertices of one syndrome lattice.
struct WalkCountTable {
    int r_max = 0;
    int degree_branch = 11;
    /// Number of starting vertices (the interior vertices adjacent to the top face).
    uint64_t start_vertices = 0;
    /// Rounds times L, the NL in the analytic prefactor.
    uint64_t nl = 0;
    std::vector<uint64_t> free_first_step;
    std::vector<uint64_t> exclude_face_first_step;
    /// Walks of length r ending on the bottom face (free first step).
    std::vector<uint64_t> reaching_opposite;

    /// 2NL d^r: both lattices with one relevant face each.
    double overcount_2nl(int r) const { return 2.0 * static_cast<double>(nl) * std::pow(degree_branch, r); }
    double overcount_4nl(int r) const { return 2.0 * overcount_2nl(r); }
    /// Exact count for both lattices, comparable with overcount_2nl.
    uint64_t both_lattices(int r, FirstStep mode = FirstStep::Free) const {
        return 2 * (mode == FirstStep::Free ? free_first_step : exclude_face_first_step)[static_cast<size_t>(r)];
    }
};

namespace detail {

/// counts[r] for walks of length r; a walk stops as soon as it enters a face.
inline std::vector<uint64_t> walk_dp(const SyndromeGraph &graph, int r_max, FirstStep mode,
                                     std::vector<uint64_t> *to_bottom) {
    const size_t arcs = 2 * graph.num_edges();
    auto head = [&](size_t arc) {
        const Edge &e = graph.edge(static_cast<uint32_t>(arc / 2));
        return arc % 2 == 0 ? e.b : e.a;
    };
    auto tail = [&](size_t arc) {
        const Edge &e = graph.edge(static_cast<uint32_t>(arc / 2));
        return arc % 2 == 0 ? e.a : e.b;
    };
    auto arc_from = [&](uint32_t e, uint32_t node) -> size_t { return 2 * size_t{e} + (graph.edge(e).a == node ? 0 : 1); };

    std::vector<uint64_t> counts(static_cast<size_t>(r_max) + 1, 0);
    if (to_bottom) to_bottom->assign(counts.size(), 0);
    const auto &starts = graph.face_vertices(0);
    counts[0] = starts.size();
    if (r_max == 0) return counts;

    std::vector<uint64_t> cur(arcs, 0), next(arcs, 0);
    for (uint32_t s : starts) {
        for (uint32_t e : graph.incident(s)) {
            if (mode == FirstStep::ExcludeFace && graph.other(e, s) == graph.top_face()) continue;
            ++cur[arc_from(e, s)];
        }
    }
    for (int r = 1; r <= r_max; ++r) {
        for (size_t arc = 0; arc < arcs; ++arc) {
            if (!cur[arc]) continue;
            counts[static_cast<size_t>(r)] += cur[arc];
            if (to_bottom && head(arc) == graph.bottom_face()) (*to_bottom)[static_cast<size_t>(r)] += cur[arc];
        }
        if (r == r_max) break;
        std::fill(next.begin(), next.end(), 0);
        for (size_t arc = 0; arc < arcs; ++arc) {
            if (!cur[arc]) continue;
            const uint32_t v = head(arc), u = tail(arc);
            if (graph.is_face(v)) continue;
            for (uint32_t e : graph.incident(v)) {
                if (graph.other(e, v) == u) continue;
                next[arc_from(e, v)] += cur[arc];
            }
        }
        std::swap(cur, next);
    }
    return counts;
}

}  // namespace detail

inline WalkCountTable count_walks(const SyndromeGraph &graph, int r_max, int degree_branch = 11) {
    require(r_max >= 0, "r_max must be >= 0");
    require(degree_branch >= 1, "degree_branch must be >= 1");
    if (r_max > kMaxWalkLength || 2 * graph.num_edges() * static_cast<uint64_t>(r_max + 1) > kMaxWalkWork) {
        throw DomainError("size guard exceeded: walk enumeration limited to r_max <= " + std::to_string(kMaxWalkLength) +
                          " and arcs * (r_max + 1) <= " + std::to_string(kMaxWalkWork));
    }
    WalkCountTable table;
    table.r_max = r_max;
    table.degree_branch = degree_branch;
    table.start_vertices = graph.face_vertices(0).size();
    table.nl = static_cast<uint64_t>(graph.N()) * static_cast<uint64_t>(graph.L());
    table.free_first_step = detail::walk_dp(graph, r_max, FirstStep::Free, &table.reaching_opposite);
    table.exclude_face_first_step = detail::walk_dp(graph, r_max, FirstStep::ExcludeFace, nullptr);
    return table;
}

inline constexpr uint32_t kMaxSawVertices = 64;
inline constexpr int kMaxSawLength = 24;
inline constexpr uint64_t kMaxSawNodes = 2'000'000'000;

/// Self-avoiding paths from one relevant face to the other, counted per length r (face edges
/// included, so the shortest crossing has length L). side 0 starts on the top face.
inline std::vector<uint64_t> count_spanning_saw(const SyndromeGraph &graph, int r_max, int side = 0) {
    require(r_max >= 0, "r_max must be >= 0");
    require(side == 0 || side == 1, "side must be 0 (top) or 1 (bottom)");
    if (graph.num_vertices() > kMaxSawVertices || r_max > kMaxSawLength) {
        throw DomainError("size guard exceeded: spanning SAW enumeration limited to " + std::to_string(kMaxSawVertices) +
                          " vertices and r_max <= " + std::to_string(kMaxSawLength));
    }
    const uint32_t source = side == 0 ? graph.top_face() : graph.bottom_face();
    const uint32_t target = side == 0 ? graph.bottom_face() : graph.top_face();
    const std::vector<uint32_t> to_target = graph.distances_from(target);
    std::vector<uint64_t> counts(static_cast<size_t>(r_max) + 1, 0);
    uint64_t visited = 0, nodes = 0;

    auto dfs = [&](auto &&self, uint32_t v, int len) -> void {
        if (++nodes > kMaxSawNodes) throw DomainError("size guard exceeded: spanning SAW search budget exhausted");
        for (uint32_t e : graph.incident(v)) {
            const uint32_t w = graph.other(e, v);
            if (w == target) {
                if (len + 1 <= r_max) ++counts[static_cast<size_t>(len + 1)];
                continue;
            }
            if (w == source || (visited >> w & 1)) continue;
            if (static_cast<int64_t>(len) + 1 + to_target[w] > r_max) continue;
            visited |= uint64_t{1} << w;
            self(self, w, len + 1);
            visited &= ~(uint64_t{1} << w);
        }
    };
    for (uint32_t e : graph.incident(source)) {
        const uint32_t v = graph.other(e, source);
        if (1 + static_cast<int64_t>(to_target[v]) > r_max) continue;
        visited = uint64_t{1} << v;
        dfs(dfs, v, 1);
    }
    return counts;
}

}  // namespace faultline
