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
#include <optional>
#include <string>
#include <vector>

#include "faultline/chain.hpp"
#include "faultline/decoder.hpp"
#include "faultline/errors.hpp"
#include "faultline/rng.hpp"
#include "faultline/stats.hpp"
#include "faultline/syndrome_graph.hpp"

namespace faultline {

/// A logical error (base) that a disjoint, individually harmless addition (extra) removes.
struct BreakingWitness {
    Chain spanning_path;
    Chain base_faults;
    Chain extra_faults;
    Chain base_recovery;
    Chain combined_recovery;
    int base_logical_error = 1;
    int combined_logical_error = 0;
    /// logical_error(base + {e}) for each extra edge e, in edge order.
    std::vector<int> single_extra_logical_error;
    uint64_t trials_used = 0;
    uint64_t seed = 0;
};

struct WitnessSearchOptions {
    /// Extra-pair candidates tried per base configuration.
    int extras_per_base = 64;
    /// Maximum excess of the sampled spanning path over the minimum length L.
    int max_path_excess = 2;
    /// Probability of a step that does not approach the far face.
    double detour_probability = 0.25;
};

namespace detail {

/// Random self-avoiding top-to-bottom path of length at most L + max_excess, or empty.
inline std::vector<uint32_t> sample_spanning_path(const SyndromeGraph &graph, const std::vector<uint32_t> &to_bottom,
                                                  const WitnessSearchOptions &opts, Xoshiro256 &rng) {
    const int max_len = graph.L() + opts.max_path_excess;
    auto top_edges = graph.incident(graph.top_face());
    uint32_t e0 = top_edges[rng.below(top_edges.size())];
    uint32_t v = graph.other(e0, graph.top_face());
    std::vector<uint32_t> path{e0};
    std::vector<uint32_t> seen{v};
    std::vector<uint32_t> closer, other;
    while (true) {
        closer.clear();
        other.clear();
        for (uint32_t e : graph.incident(v)) {
            uint32_t w = graph.other(e, v);
            if (w == graph.top_face() || std::find(seen.begin(), seen.end(), w) != seen.end()) continue;
            const int64_t remaining = static_cast<int64_t>(path.size()) + 1 + to_bottom[w];
            if (remaining > max_len) continue;
            (to_bottom[w] < to_bottom[v] ? closer : other).push_back(e);
        }
        if (closer.empty() && other.empty()) return {};
        const bool detour = !other.empty() && (closer.empty() || rng.uniform() < opts.detour_probability);
        const auto &pool = detour ? other : closer;
        uint32_t e = pool[rng.below(pool.size())];
        path.push_back(e);
        v = graph.other(e, v);
        if (v == graph.bottom_face()) return path;
        seen.push_back(v);
    }
}

/// Edges with an interior endpoint within one step of a defect.
inline std::vector<uint32_t> edges_near(const SyndromeGraph &graph, const DefectSet &defects) {
    std::vector<uint32_t> near_vertices;
    for (uint32_t d : defects) {
        near_vertices.push_back(d);
        for (uint32_t e : graph.incident(d)) {
            uint32_t w = graph.other(e, d);
            if (!graph.is_face(w)) near_vertices.push_back(w);
        }
    }
    std::vector<uint32_t> out;
    for (uint32_t v : near_vertices) {
        for (uint32_t e : graph.incident(v)) out.push_back(e);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline bool share_vertex(const SyndromeGraph &graph, uint32_t e1, uint32_t e2) {
    const Edge &a = graph.edge(e1), &b = graph.edge(e2);
    auto hit = [&](uint32_t x) { return !graph.is_face(x) && (x == b.a || x == b.b); };
    return hit(a.a) || hit(a.b);
}

}  // namespace detail

/// Recomputes both adjudications from scratch and checks every structural condition.
inline bool verify_witness(const SyndromeGraph &graph, const BreakingWitness &w) {
    Decoder decoder(graph);
    if (w.extra_faults.empty() || !w.base_faults.intersection(w.extra_faults).empty()) return false;
    Outcome base = decoder.adjudicate(w.base_faults);
    if (base.logical_error != 1) return false;
    if (!base.recovery.intersection(w.extra_faults).empty()) return false;
    if (decoder.adjudicate(w.base_faults ^ w.extra_faults).logical_error != 0) return false;
    if (decoder.adjudicate(w.extra_faults).logical_error != 0) return false;
    for (uint32_t e : w.extra_faults) {
        if (decoder.adjudicate(w.base_faults ^ Chain({e})).logical_error != 1) return false;
    }
    return true;
}

/// Logical error left when only the extra edge at `index` is added to the base.
inline int partial_addition_check(const SyndromeGraph &graph, const BreakingWitness &w, size_t index) {
    require(index < w.extra_faults.weight(), "extra edge index out of range");
    return adjudicate(graph, w.base_faults ^ Chain({w.extra_faults.edges()[index]})).logical_error;
}

/// Randomized search: near-minimal spanning base, then vertex-disjoint extra pairs next to its
/// defects. Each candidate pair tested costs one unit of budget.
inline std::optional<BreakingWitness> find_breaking_witness(const SyndromeGraph &graph, uint64_t budget, uint64_t seed,
                                                           const WitnessSearchOptions &opts = {}) {
    if (budget == 0) return std::nullopt;
    require(opts.extras_per_base >= 1, "extras_per_base must be >= 1");
    Decoder decoder(graph);
    const std::vector<uint32_t> to_bottom = graph.distances_from(graph.bottom_face());
    uint64_t used = 0;
    for (uint64_t attempt = 0; used < budget; ++attempt) {
        Xoshiro256 rng(stream_seed(seed, attempt));
        std::vector<uint32_t> path = detail::sample_spanning_path(graph, to_bottom, opts, rng);
        ++used;
        if (path.empty()) continue;
        std::shuffle(path.begin(), path.end(), rng);
        const size_t k = (path.size() + 1) / 2;
        Chain base(std::vector<uint32_t>(path.begin(), path.begin() + static_cast<std::ptrdiff_t>(k)));
        Outcome outcome = decoder.adjudicate(base);
        if (outcome.logical_error != 1) continue;

        std::vector<uint32_t> pool;
        for (uint32_t e : detail::edges_near(graph, outcome.defects_seen)) {
            if (!base.contains(e) && !outcome.recovery.contains(e)) pool.push_back(e);
        }
        if (pool.size() < 2) continue;
        for (int j = 0; j < opts.extras_per_base && used < budget; ++j) {
            ++used;
            uint32_t e1 = pool[rng.below(pool.size())], e2 = pool[rng.below(pool.size())];
            if (e1 == e2 || detail::share_vertex(graph, e1, e2)) continue;
            Chain extra({e1, e2});
            if (decoder.logical_error(base ^ extra) != 0) continue;
            if (decoder.logical_error(extra) != 0) continue;
            if (decoder.logical_error(base ^ Chain({e1})) != 1 || decoder.logical_error(base ^ Chain({e2})) != 1) continue;

            BreakingWitness w;
            w.spanning_path = Chain(path);
            w.base_faults = base;
            w.extra_faults = extra;
            w.base_recovery = outcome.recovery;
            Outcome combined = decoder.adjudicate(base ^ extra);
            w.combined_recovery = combined.recovery;
            w.base_logical_error = outcome.logical_error;
            w.combined_logical_error = combined.logical_error;
            for (uint32_t e : extra) w.single_extra_logical_error.push_back(decoder.adjudicate(base ^ Chain({e})).logical_error);
            w.trials_used = used;
            w.seed = seed;
            if (verify_witness(graph, w)) return w;
        }
    }
    return std::nullopt;
}

struct ExclusionRow {
    int radius = 0;
    /// Edges outside the radius-neighbourhood, disjoint from base and recovery.
    size_t legal_edges = 0;
    uint64_t samples = 0;
    uint64_t flips = 0;
    /// True when fewer than extra_size legal edges exist.
    bool no_sample = false;
    double fraction = 0.0;
    Interval wilson95{0.0, 1.0};
};

/// Largest accepted radius; beyond 2L + N every graph is exhausted.
inline int max_exclusion_radius(const SyndromeGraph &graph) { return 2 * graph.L() + graph.N(); }

/// Fraction of random extra fault sets, kept at graph distance >= radius from the base residual,
/// that remove the logical error.
inline std::vector<ExclusionRow> exclusion_zone_stats(const SyndromeGraph &graph, const Chain &base_faults,
                                                      const std::vector<int> &radii, uint64_t samples, uint64_t seed,
                                                      size_t extra_size = 2) {
    Decoder decoder(graph);
    Outcome base = decoder.adjudicate(base_faults);
    require(base.logical_error == 1, "exclusion_zone_stats requires base faults with logical_error = 1");
    for (int r : radii) {
        require(r >= 0, "radius must be >= 0");
        require(r <= max_exclusion_radius(graph),
                "radius " + std::to_string(r) + " exceeds lattice size (max " + std::to_string(max_exclusion_radius(graph)) + ")");
    }

    constexpr uint32_t inf = std::numeric_limits<uint32_t>::max();
    std::vector<uint32_t> dist(graph.num_vertices() + 2, inf), queue;
    for (uint32_t e : base.residual) {
        for (uint32_t x : {graph.edge(e).a, graph.edge(e).b}) {
            if (!graph.is_face(x) && dist[x] == inf) {
                dist[x] = 0;
                queue.push_back(x);
            }
        }
    }
    for (size_t head = 0; head < queue.size(); ++head) {
        uint32_t x = queue[head];
        for (uint32_t e : graph.incident(x)) {
            uint32_t y = graph.other(e, x);
            if (!graph.is_face(y) && dist[y] == inf) {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }

    std::vector<ExclusionRow> rows;
    for (size_t i = 0; i < radii.size(); ++i) {
        ExclusionRow row;
        row.radius = radii[i];
        const uint32_t r = static_cast<uint32_t>(radii[i]);
        std::vector<uint32_t> legal;
        for (uint32_t e = 0; e < graph.num_edges(); ++e) {
            if (base_faults.contains(e) || base.recovery.contains(e)) continue;
            const Edge &ed = graph.edge(e);
            bool ok = true;
            for (uint32_t x : {ed.a, ed.b}) ok &= graph.is_face(x) || dist[x] >= r;
            if (ok) legal.push_back(e);
        }
        row.legal_edges = legal.size();
        if (legal.size() < extra_size) {
            row.no_sample = true;
            rows.push_back(row);
            continue;
        }
        Xoshiro256 rng(stream_seed(seed, i));
        std::vector<uint32_t> pick;
        for (uint64_t s = 0; s < samples; ++s) {
            pick.clear();
            // Floyd's sampling of extra_size distinct legal edges.
            for (size_t j = legal.size() - extra_size; j < legal.size(); ++j) {
                uint32_t t = legal[rng.below(j + 1)];
                pick.push_back(std::find(pick.begin(), pick.end(), t) == pick.end() ? t : legal[j]);
            }
            row.flips += decoder.logical_error(base_faults ^ Chain(pick)) == 0;
        }
        row.samples = samples;
        row.fraction = samples ? static_cast<double>(row.flips) / static_cast<double>(samples) : 0.0;
        row.wilson95 = wilson_interval(row.flips, samples);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace faultline
