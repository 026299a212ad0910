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


#include "faultline/enumeration.hpp"

#include <map>
#include <set>

#include "gtest/gtest.h"

using namespace faultline;

namespace {

/// Plain recursion over neighbour lists: walks stop on entering a face and never step straight
/// back to the vertex they came from.
void naive_walks(const SyndromeGraph &g, uint32_t v, uint32_t prev, int len, int r_max, std::vector<uint64_t> &out,
                 std::vector<uint64_t> &to_bottom) {
    ++out[static_cast<size_t>(len)];
    if (v == g.bottom_face()) ++to_bottom[static_cast<size_t>(len)];
    if (g.is_face(v) || len == r_max) return;
    for (uint32_t e : g.incident(v)) {
        uint32_t w = g.other(e, v);
        if (w == prev) continue;
        naive_walks(g, w, v, len + 1, r_max, out, to_bottom);
    }
}

struct NaiveCounts {
    std::vector<uint64_t> free, exclude, to_bottom;
};

NaiveCounts naive_counts(const SyndromeGraph &g, int r_max) {
    NaiveCounts c;
    c.free.assign(static_cast<size_t>(r_max) + 1, 0);
    c.exclude = c.free;
    c.to_bottom = c.free;
    std::vector<uint64_t> scratch = c.free;
    for (uint32_t s : g.face_vertices(0)) {
        // Free first step: any neighbour, so "previous" is a node that never occurs.
        naive_walks(g, s, UINT32_MAX, 0, r_max, c.free, c.to_bottom);
        // Excluding the top face on the first step is exactly backtracking from it.
        naive_walks(g, s, g.top_face(), 0, r_max, c.exclude, scratch);
    }
    return c;
}

/// Face-to-face self-avoiding paths by unpruned recursion over sets.
void naive_saw(const SyndromeGraph &g, uint32_t v, std::set<uint32_t> &seen, int len, int r_max, std::vector<uint64_t> &out) {
    if (len > r_max) return;
    if (v == g.bottom_face()) {
        ++out[static_cast<size_t>(len)];
        return;
    }
    for (uint32_t e : g.incident(v)) {
        uint32_t w = g.other(e, v);
        if (w == g.top_face() || seen.count(w)) continue;
        if (w != g.bottom_face()) seen.insert(w);
        naive_saw(g, w, seen, len + 1, r_max, out);
        if (w != g.bottom_face()) seen.erase(w);
    }
}

std::vector<uint64_t> naive_saw(const SyndromeGraph &g, int r_max) {
    std::vector<uint64_t> out(static_cast<size_t>(r_max) + 1, 0);
    std::set<uint32_t> seen;
    for (uint32_t e : g.incident(g.top_face())) {
        uint32_t v = g.other(e, g.top_face());
        seen = {v};
        naive_saw(g, v, seen, 1, r_max, out);
    }
    return out;
}

}  // namespace

TEST(enumeration, starting_vertices) {
    SyndromeGraph g(3, 2, EdgeTemplate::Circuit12);
    WalkCountTable t = count_walks(g, 0);
    EXPECT_EQ(t.free_first_step[0], 6u);
    EXPECT_EQ(t.start_vertices, 6u);
    EXPECT_EQ(t.nl, 6u);
}

TEST(enumeration, first_step_branching) {
    SyndromeGraph g(5, 5, EdgeTemplate::Circuit12);
    WalkCountTable t = count_walks(g, 2);
    EXPECT_LE(t.free_first_step[1], 12 * t.start_vertices);
    EXPECT_LE(t.exclude_face_first_step[1], 11 * t.start_vertices);
    for (uint32_t v = 0; v < g.num_vertices(); ++v) {
        if (g.is_bulk_vertex(v)) EXPECT_EQ(g.degree(v), 12u);
    }
}

TEST(enumeration, dp_matches_naive_recursion) {
    for (EdgeTemplate tmpl : {EdgeTemplate::Circuit12, EdgeTemplate::Phenomenological6}) {
        SyndromeGraph g(3, 2, tmpl);
        WalkCountTable t = count_walks(g, 6);
        NaiveCounts n = naive_counts(g, 6);
        EXPECT_EQ(t.free_first_step, n.free);
        EXPECT_EQ(t.exclude_face_first_step, n.exclude);
        EXPECT_EQ(t.reaching_opposite, n.to_bottom);
    }
    SyndromeGraph g(5, 3, EdgeTemplate::Circuit12);
    WalkCountTable t = count_walks(g, 5);
    EXPECT_EQ(t.free_first_step, naive_counts(g, 5).free);
}

TEST(enumeration, exact_below_overcount) {
    SyndromeGraph g(3, 2, EdgeTemplate::Circuit12);
    WalkCountTable t = count_walks(g, 8);
    for (int r = 0; r <= 8; ++r) {
        for (FirstStep mode : {FirstStep::Free, FirstStep::ExcludeFace}) {
            EXPECT_LE(static_cast<double>(t.both_lattices(r, mode)), t.overcount_2nl(r));
            EXPECT_LE(static_cast<double>(t.both_lattices(r, mode)), t.overcount_4nl(r));
        }
    }
    EXPECT_LT(static_cast<double>(t.both_lattices(5)), t.overcount_2nl(5));
    EXPECT_DOUBLE_EQ(t.overcount_2nl(5), 12.0 * 161051.0);
    EXPECT_DOUBLE_EQ(t.overcount_4nl(5), 24.0 * 161051.0);
}

TEST(enumeration, walk_guards) {
    SyndromeGraph g(3, 2, EdgeTemplate::Circuit12);
    EXPECT_THROW(count_walks(g, kMaxWalkLength + 1), DomainError);
    EXPECT_THROW(count_walks(g, -1), DomainError);
}

TEST(enumeration, spanning_saw_short_lengths_vanish) {
    for (int N : {1, 2, 3}) {
        for (EdgeTemplate tmpl : {EdgeTemplate::Circuit12, EdgeTemplate::Phenomenological6}) {
            SyndromeGraph g(3, N, tmpl);
            auto counts = count_spanning_saw(g, 8);
            for (int r = 0; r < 3; ++r) EXPECT_EQ(counts[static_cast<size_t>(r)], 0u);
            EXPECT_GT(counts[3], 0u);
            EXPECT_EQ(counts, naive_saw(g, 8));
        }
    }
}

TEST(enumeration, spanning_saw_hand_counts) {
    // One 3x2 slice: three straight crossings; at length 4, one sideways step in either row.
    SyndromeGraph g(3, 1, EdgeTemplate::Phenomenological6);
    auto counts = count_spanning_saw(g, 6);
    EXPECT_EQ(counts[3], 3u);
    EXPECT_EQ(counts[4], 8u);
}

TEST(enumeration, spanning_saw_symmetry) {
    for (int N : {1, 2, 3}) {
        for (EdgeTemplate tmpl : {EdgeTemplate::Circuit12, EdgeTemplate::Phenomenological6}) {
            SyndromeGraph g(3, N, tmpl);
            // Point inversion maps the edge set onto itself and swaps the faces.
            auto image = [&](uint32_t x) -> uint32_t {
                if (x == g.top_face()) return g.bottom_face();
                if (x == g.bottom_face()) return g.top_face();
                Coord c = g.coord(x);
                return g.vertex(g.L() - 1 - c.col, g.L() - 2 - c.row, g.N() - 1 - c.time);
            };
            std::multiset<std::pair<uint32_t, uint32_t>> edges, mapped;
            for (const Edge &e : g.edges()) {
                edges.insert(std::minmax(e.a, e.b));
                mapped.insert(std::minmax(image(e.a), image(e.b)));
            }
            EXPECT_EQ(edges, mapped);
            EXPECT_EQ(count_spanning_saw(g, 9, 0), count_spanning_saw(g, 9, 1));
        }
    }
}

TEST(enumeration, overcount_ratio) {
    SyndromeGraph g(3, 2, EdgeTemplate::Circuit12);
    WalkCountTable t = count_walks(g, 12);
    auto saw = count_spanning_saw(g, 12);
    std::vector<double> ratio(13, 0.0);
    for (int r = 3; r <= 12; ++r) {
        ASSERT_GT(saw[static_cast<size_t>(r)], 0u);
        ratio[static_cast<size_t>(r)] =
            static_cast<double>(t.free_first_step[static_cast<size_t>(r)]) / static_cast<double>(saw[static_cast<size_t>(r)]);
        EXPECT_GE(ratio[static_cast<size_t>(r)], 1.0);
    }
    // Short crossings multiply faster than walks up to r = 5; beyond that the ratio only grows.
    EXPECT_LT(ratio[5], ratio[3]);
    for (int r = 6; r <= 12; ++r) EXPECT_GT(ratio[static_cast<size_t>(r)], ratio[static_cast<size_t>(r - 1)]) << r;
    // Frozen from the DP; cross-checked against the naive recursion above for r <= 6.
    EXPECT_EQ(t.free_first_step[5], 12472u);
    EXPECT_EQ(saw[3], 21u);
    EXPECT_EQ(saw[5], 942u);
}

TEST(enumeration, saw_guards) {
    SyndromeGraph big(5, 5, EdgeTemplate::Circuit12);
    EXPECT_THROW(count_spanning_saw(big, 6), DomainError);
    SyndromeGraph g(3, 2, EdgeTemplate::Circuit12);
    EXPECT_THROW(count_spanning_saw(g, kMaxSawLength + 1), DomainError);
    EXPECT_THROW(count_spanning_saw(g, 5, 2), DomainError);
}
