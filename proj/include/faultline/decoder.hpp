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

#include <cstdint>
#include <limits>
#include <vector>

#include "faultline/chain.hpp"
#include "faultline/matcher.hpp"
#include "faultline/syndrome_graph.hpp"

namespace faultline {

/// Result of running a fault set through measurement, matching and recovery.
struct Outcome {
    DefectSet defects_seen;
    Chain recovery;
    /// faults + recovery; always closed.
    Chain residual;
    int logical_error = 0;
    Matching matching;
};

/// MWPM decoder bound to one syndrome graph. Holds scratch buffers, so use one instance per
/// thread; the graph itself is shared read-only.
class Decoder {
   public:
    explicit Decoder(const SyndromeGraph &graph) : graph_(graph) {}

    const SyndromeGraph &graph() const { return graph_; }

    DefectSet extract_defects(const Chain &faults) const { return graph_.boundary(faults); }

    /// Shortest-path weights between defects and to the nearest relevant face.
    MatchingProblem matching_problem(const DefectSet &defects) {
        explore(defects);
        const size_t n = defects.size();
        MatchingProblem problem;
        problem.defects = defects;
        problem.pair_weights.assign(n, std::vector<int64_t>(n, 0));
        problem.boundary_weights.resize(n);
        for (size_t i = 0; i < n; ++i) {
            problem.boundary_weights[i] = face_distance(i);
            for (size_t j = 0; j < n; ++j) {
                if (i == j) continue;
                uint32_t d = dist_[i][defects[j]];
                require(d != kUnreached, "defects lie in disconnected components");
                problem.pair_weights[i][j] = d;
            }
        }
        return problem;
    }

    /// Recovery chain: union of shortest paths realising the minimum-weight matching.
    Chain decode(const DefectSet &defects, Matching *matching_out = nullptr) {
        Matching matching = min_weight_matching(matching_problem(defects));
        std::vector<uint32_t> edges;
        for (auto [i, j] : matching.pairs) trace(i, defects[j], edges);
        for (size_t i : matching.boundary_matches) {
            uint32_t top = dist_[i][graph_.top_face()], bottom = dist_[i][graph_.bottom_face()];
            trace(i, bottom < top ? graph_.bottom_face() : graph_.top_face(), edges);
        }
        if (matching_out) *matching_out = std::move(matching);
        return Chain(std::move(edges));
    }

    Outcome adjudicate(const Chain &faults) {
        Outcome out;
        out.defects_seen = extract_defects(faults);
        out.recovery = decode(out.defects_seen, &out.matching);
        out.residual = faults ^ out.recovery;
        out.logical_error = graph_.logical_class(out.residual);
        return out;
    }

    /// Logical-error bit only, skipping the residual closure check.
    int logical_error(const Chain &faults) {
        if (faults.empty()) return 0;
        DefectSet defects = extract_defects(faults);
        Chain residual = faults ^ decode(defects);
        return static_cast<int>(graph_.cut_crossings(residual) & 1);
    }

   private:
    static constexpr uint32_t kUnreached = std::numeric_limits<uint32_t>::max();

    void explore(const DefectSet &defects) {
        const uint32_t nodes = graph_.num_vertices() + 2;
        for (size_t i = 0; i < defects.size(); ++i) {
            require(!graph_.is_face(defects[i]) && defects[i] < graph_.num_vertices(), "defect is not a vertex of the graph");
            require(i == 0 || defects[i - 1] < defects[i], "defect set must be sorted and unique");
        }
        if (dist_.size() < defects.size()) {
            dist_.resize(defects.size());
            parent_.resize(defects.size());
        }
        for (size_t i = 0; i < defects.size(); ++i) {
            auto &dist = dist_[i];
            auto &parent = parent_[i];
            dist.assign(nodes, kUnreached);
            parent.assign(nodes, kUnreached);
            queue_.clear();
            queue_.push_back(defects[i]);
            dist[defects[i]] = 0;
            for (size_t head = 0; head < queue_.size(); ++head) {
                uint32_t x = queue_[head];
                if (graph_.is_face(x)) continue;
                for (uint32_t e : graph_.incident(x)) {
                    uint32_t y = graph_.other(e, x);
                    if (dist[y] == kUnreached) {
                        dist[y] = dist[x] + 1;
                        parent[y] = e;
                        queue_.push_back(y);
                    }
                }
            }
        }
    }

    int64_t face_distance(size_t i) const {
        uint32_t d = std::min(dist_[i][graph_.top_face()], dist_[i][graph_.bottom_face()]);
        require(d != kUnreached, "defect cannot reach a relevant face");
        return d;
    }

    void trace(size_t source, uint32_t target, std::vector<uint32_t> &edges) const {
        const auto &parent = parent_[source];
        const auto &dist = dist_[source];
        uint32_t x = target;
        while (dist[x] != 0) {
            uint32_t e = parent[x];
            edges.push_back(e);
            x = graph_.other(e, x);
        }
    }

    const SyndromeGraph &graph_;
    std::vector<std::vector<uint32_t>> dist_;
    std::vector<std::vector<uint32_t>> parent_;
    std::vector<uint32_t> queue_;
};

inline DefectSet extract_defects(const SyndromeGraph &graph, const Chain &faults) { return graph.boundary(faults); }

inline Chain decode(const SyndromeGraph &graph, const DefectSet &defects) { return Decoder(graph).decode(defects); }

inline Outcome adjudicate(const SyndromeGraph &graph, const Chain &faults) { return Decoder(graph).adjudicate(faults); }

}  // namespace faultline
