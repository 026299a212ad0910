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
#include <array>
#include <cstdint>
#include <deque>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "faultline/chain.hpp"
#include "faultline/errors.hpp"

namespace faultline {

enum class EdgeTemplate : uint8_t { Phenomenological6, Circuit12 };

inline std::string_view template_name(EdgeTemplate t) {
    return t == EdgeTemplate::Circuit12 ? "circuit12" : "phenomenological6";
}

inline EdgeTemplate parse_template(std::string_view name) {
    if (name == "circuit12") return EdgeTemplate::Circuit12;
    if (name == "phenomenological6") return EdgeTemplate::Phenomenological6;
    throw DomainError("invalid template name '" + std::string(name) + "' (expected phenomenological6 or circuit12)");
}

enum class EdgeKind : uint8_t { Temporal, Spatial, Diagonal };

inline std::string_view edge_kind_name(EdgeKind k) {
    switch (k) {
        case EdgeKind::Temporal:
            return "temporal";
        case EdgeKind::Spatial:
            return "spatial";
        default:
            return "diagonal";
    }
}

/// Offset of one fault mechanism, taken with dr >= 0 so that `row` is the cut axis.
struct Direction {
    int dc;
    int dr;
    int dt;
    EdgeKind kind;
};

/// Phenomenological edges: the two in-slice data-qubit edges plus the measurement edge.
/// circuit12 adds three space-time diagonals, giving interior degree 12.
inline std::span<const Direction> template_directions(EdgeTemplate t) {
    static constexpr std::array<Direction, 6> dirs{{
        {1, 0, 0, EdgeKind::Spatial},
        {0, 1, 0, EdgeKind::Spatial},
        {0, 0, 1, EdgeKind::Temporal},
        {1, 0, 1, EdgeKind::Diagonal},
        {0, 1, 1, EdgeKind::Diagonal},
        {1, 1, 1, EdgeKind::Diagonal},
    }};
    return t == EdgeTemplate::Circuit12 ? std::span<const Direction>(dirs) : std::span<const Direction>(dirs.data(), 3);
}

struct Coord {
    int col;
    int row;
    int time;
    bool operator==(const Coord &) const = default;
};

/// One single-fault mechanism. `a` is the endpoint with the lower row; either endpoint may be a
/// face sentinel (SyndromeGraph::top_face() / bottom_face()).
struct Edge {
    uint32_t a;
    uint32_t b;
    EdgeKind kind;
    /// Row offset from a to b: 0 or 1.
    int8_t spatial_displacement;
    /// Row of `a` (-1 for the top face).
    int16_t low_row;
};

using DefectSet = std::vector<uint32_t>;

/// Edge count of the syndrome graph, A(L, N), without building it.
inline double syndrome_edge_count(double L, double N, EdgeTemplate t) {
    double a = N * (L * L + (L - 1) * (L - 1)) + L * (L - 1) * (N - 1);
    if (t == EdgeTemplate::Circuit12) {
        a += (N - 1) * ((L - 1) * (L - 1) + L * L + L * (L - 1));
    }
    return a;
}

/// Syndrome lattice for one error type: L columns x (L-1) rows x N rounds of ancilla locations.
/// The relevant faces are the top (row -1) and bottom (row L-1) boundaries of every time slice.
class SyndromeGraph {
   public:
    SyndromeGraph(int L, int N, EdgeTemplate tmpl) : L_(L), N_(N), template_(tmpl) {
        require(L >= 3 && L % 2 == 1, "odd-L required: L must be odd and >= 3, got " + std::to_string(L));
        require(N >= 1, "N must be >= 1, got " + std::to_string(N));
        build();
    }

    int L() const { return L_; }
    int N() const { return N_; }
    EdgeTemplate edge_template() const { return template_; }

    uint32_t num_vertices() const { return num_vertices_; }
    /// A: the number of fault locations.
    size_t num_edges() const { return edges_.size(); }
    const std::vector<Edge> &edges() const { return edges_; }
    const Edge &edge(uint32_t e) const { return edges_[e]; }

    uint32_t top_face() const { return num_vertices_; }
    uint32_t bottom_face() const { return num_vertices_ + 1; }
    bool is_face(uint32_t node) const { return node >= num_vertices_; }
    bool is_boundary_edge(uint32_t e) const { return is_face(edges_[e].a) || is_face(edges_[e].b); }

    uint32_t vertex(int col, int row, int time) const {
        return static_cast<uint32_t>((time * (L_ - 1) + row) * L_ + col);
    }
    Coord coord(uint32_t v) const {
        int col = static_cast<int>(v % static_cast<uint32_t>(L_));
        int rest = static_cast<int>(v / static_cast<uint32_t>(L_));
        return {col, rest % (L_ - 1), rest / (L_ - 1)};
    }

    uint32_t other(uint32_t e, uint32_t node) const { return edges_[e].a == node ? edges_[e].b : edges_[e].a; }

    /// Incident edge ids of an interior vertex or face, ascending.
    std::span<const uint32_t> incident(uint32_t node) const {
        return {incident_.data() + offsets_[node], incident_.data() + offsets_[node + 1]};
    }
    size_t degree(uint32_t node) const { return offsets_[node + 1] - offsets_[node]; }

    /// Interior vertices touching the top (side 0) or bottom (side 1) face.
    const std::vector<uint32_t> &face_vertices(int side) const { return face_vertices_[side]; }

    /// Interior in the sense of the degree invariant: no smooth or temporal boundary nearby.
    bool is_bulk_vertex(uint32_t v) const {
        Coord c = coord(v);
        return c.col > 0 && c.col < L_ - 1 && c.time > 0 && c.time < N_ - 1;
    }

    void check_edge(uint32_t e) const {
        if (e >= edges_.size()) {
            throw DomainError("edge " + std::to_string(e) + " not in graph (A=" + std::to_string(edges_.size()) + ")");
        }
    }
    void check_node(uint32_t node) const {
        if (node >= num_vertices_ + 2) throw DomainError("vertex " + std::to_string(node) + " not in graph");
    }

    /// Vertices touched by an odd number of chain edges; faces absorb parity.
    DefectSet boundary(const Chain &chain) const {
        std::vector<uint32_t> ends;
        ends.reserve(2 * chain.weight());
        for (uint32_t e : chain) {
            check_edge(e);
            if (!is_face(edges_[e].a)) ends.push_back(edges_[e].a);
            if (!is_face(edges_[e].b)) ends.push_back(edges_[e].b);
        }
        std::sort(ends.begin(), ends.end());
        DefectSet out;
        for (size_t i = 0; i < ends.size();) {
            size_t j = i;
            while (j < ends.size() && ends[j] == ends[i]) ++j;
            if ((j - i) & 1) out.push_back(ends[i]);
            i = j;
        }
        return out;
    }

    /// Unit-weight BFS distances from `source` (vertex or face). Faces are reached but never
    /// passed through. Unreachable nodes get max().
    std::vector<uint32_t> distances_from(uint32_t source) const {
        check_node(source);
        constexpr uint32_t inf = std::numeric_limits<uint32_t>::max();
        std::vector<uint32_t> dist(num_vertices_ + 2, inf);
        std::vector<uint32_t> queue{source};
        dist[source] = 0;
        for (size_t head = 0; head < queue.size(); ++head) {
            uint32_t x = queue[head];
            if (x != source && is_face(x)) continue;
            for (uint32_t e : incident(x)) {
                uint32_t y = other(e, x);
                if (dist[y] == inf) {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        return dist;
    }

    uint32_t distance(uint32_t from, uint32_t to) const {
        check_node(to);
        return distances_from(from)[to];
    }

    /// Number of chain edges crossing the cut between row cut-1 and row cut (cut in [0, L-1]).
    size_t cut_crossings(const Chain &chain, int cut = 0) const {
        if (cut < 0 || cut > L_ - 1) throw DomainError("cut position must lie in [0, L-1]");
        size_t n = 0;
        for (uint32_t e : chain) {
            check_edge(e);
            const Edge &ed = edges_[e];
            n += ed.spatial_displacement != 0 && ed.low_row == cut - 1;
        }
        return n;
    }

    /// 1 iff the closed chain connects the two relevant faces an odd number of times.
    int logical_class(const Chain &chain, int cut = 0) const {
        if (!boundary(chain).empty()) throw DomainError("logical_class requires a closed chain (non-empty boundary)");
        return static_cast<int>(cut_crossings(chain, cut) & 1);
    }

   private:
    void build() {
        const int rows = L_ - 1;
        num_vertices_ = static_cast<uint32_t>(L_ * rows * N_);
        auto node_at = [&](int col, int row, int time) -> uint32_t {
            if (row < 0) return top_face();
            if (row >= rows) return bottom_face();
            return vertex(col, row, time);
        };
        auto dirs = template_directions(template_);
        for (int time = 0; time < N_; ++time) {
            for (int row = -1; row < rows; ++row) {
                for (int col = 0; col < L_; ++col) {
                    for (const Direction &d : dirs) {
                        int c2 = col + d.dc, r2 = row + d.dr, t2 = time + d.dt;
                        if (c2 >= L_ || t2 >= N_) continue;
                        if (row < 0 && d.dr == 0) continue;
                        edges_.push_back(Edge{node_at(col, row, time), node_at(c2, r2, t2), d.kind,
                                              static_cast<int8_t>(d.dr), static_cast<int16_t>(row)});
                    }
                }
            }
        }

        const size_t nodes = num_vertices_ + 2;
        offsets_.assign(nodes + 1, 0);
        for (const Edge &e : edges_) {
            ++offsets_[e.a + 1];
            ++offsets_[e.b + 1];
        }
        for (size_t i = 0; i < nodes; ++i) offsets_[i + 1] += offsets_[i];
        incident_.resize(offsets_[nodes]);
        std::vector<size_t> fill(offsets_.begin(), offsets_.end() - 1);
        for (uint32_t e = 0; e < edges_.size(); ++e) {
            incident_[fill[edges_[e].a]++] = e;
            incident_[fill[edges_[e].b]++] = e;
        }

        for (int side = 0; side < 2; ++side) {
            uint32_t face = side == 0 ? top_face() : bottom_face();
            for (uint32_t e : incident(face)) {
                uint32_t v = other(e, face);
                if (std::find(face_vertices_[side].begin(), face_vertices_[side].end(), v) == face_vertices_[side].end()) {
                    face_vertices_[side].push_back(v);
                }
            }
            std::sort(face_vertices_[side].begin(), face_vertices_[side].end());
        }
    }

    int L_;
    int N_;
    EdgeTemplate template_;
    uint32_t num_vertices_ = 0;
    std::vector<Edge> edges_;
    std::vector<size_t> offsets_;
    std::vector<uint32_t> incident_;
    std::vector<uint32_t> face_vertices_[2];
};

inline SyndromeGraph build_syndrome_graph(int L, int N, EdgeTemplate tmpl) { return SyndromeGraph(L, N, tmpl); }

inline DefectSet boundary(const SyndromeGraph &graph, const Chain &chain) { return graph.boundary(chain); }

inline uint32_t graph_distance(const SyndromeGraph &graph, uint32_t from, uint32_t to) {
    return graph.distance(from, to);
}

inline int logical_class(const SyndromeGraph &graph, const Chain &chain, int cut = 0) {
    return graph.logical_class(chain, cut);
}

}  // namespace faultline
