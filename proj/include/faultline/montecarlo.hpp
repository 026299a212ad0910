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
#include <cstdio>
#include <cstdint>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "faultline/decoder.hpp"
#include "faultline/errors.hpp"
#include "faultline/rng.hpp"
#include "faultline/stats.hpp"
#include "faultline/syndrome_graph.hpp"

namespace faultline {

struct SimConfig {
    int L = 3;
    /// Rounds; 0 means N = L.
    int N = 0;
    EdgeTemplate edge_template = EdgeTemplate::Circuit12;
    double p = 0.0;
    uint64_t trials = 1;
    uint64_t seed = 0;
    unsigned workers = 1;

    int rounds() const { return N > 0 ? N : L; }

    void validate() const {
        require(p >= 0.0 && p <= 1.0, "invalid probability: p must lie in [0, 1], got " + std::to_string(p));
        require(trials >= 1, "trials must be >= 1");
        require(workers >= 1, "workers must be >= 1");
    }
};

/// Logical-error statistics for one error type (one syndrome graph).
struct SimResult {
    SimConfig config;
    uint64_t trials = 0;
    uint64_t failures = 0;
    double estimate = 0.0;
    Interval wilson95;
    uint64_t seed = 0;
};

/// Every edge faulty independently with probability p, drawn by geometric skipping.
inline Chain sample_faults(size_t num_edges, double p, Xoshiro256 &rng) {
    std::vector<uint32_t> ids;
    if (p <= 0.0) return Chain{};
    if (p >= 1.0) {
        ids.resize(num_edges);
        for (size_t e = 0; e < num_edges; ++e) ids[e] = static_cast<uint32_t>(e);
        return Chain::from_sorted(std::move(ids));
    }
    const double log_q = std::log1p(-p);
    double pos = -1.0;
    while (true) {
        const double u = 1.0 - rng.uniform();  // (0, 1]
        pos += 1.0 + std::floor(std::log(u) / log_q);
        if (pos >= static_cast<double>(num_edges)) break;
        ids.push_back(static_cast<uint32_t>(pos));
    }
    return Chain::from_sorted(std::move(ids));
}

inline uint64_t count_failures(const SyndromeGraph &graph, double p, uint64_t seed, uint64_t begin, uint64_t end) {
    Decoder decoder(graph);
    uint64_t failures = 0;
    for (uint64_t trial = begin; trial < end; ++trial) {
        Xoshiro256 rng(stream_seed(seed, trial));
        failures += static_cast<uint64_t>(decoder.logical_error(sample_faults(graph.num_edges(), p, rng)));
    }
    return failures;
}

inline SimResult run_trials(const SyndromeGraph &graph, const SimConfig &config) {
    config.validate();
    require(graph.L() == config.L && graph.N() == config.rounds() && graph.edge_template() == config.edge_template,
            "graph does not match the simulation config");
    const unsigned workers = static_cast<unsigned>(std::min<uint64_t>(config.workers, config.trials));
    std::vector<uint64_t> partial(workers, 0);
    auto chunk = [&](unsigned w) {
        const uint64_t begin = config.trials * w / workers;
        const uint64_t end = config.trials * (w + 1) / workers;
        partial[w] = count_failures(graph, config.p, config.seed, begin, end);
    };
    if (workers == 1) {
        chunk(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(chunk, w);
        for (auto &t : pool) t.join();
    }
    SimResult r;
    r.config = config;
    r.trials = config.trials;
    for (uint64_t f : partial) r.failures += f;
    r.estimate = static_cast<double>(r.failures) / static_cast<double>(r.trials);
    r.wilson95 = wilson_interval(r.failures, r.trials);
    r.seed = config.seed;
    return r;
}

inline SimResult run_trials(const SimConfig &config) {
    config.validate();
    SyndromeGraph graph(config.L, config.rounds(), config.edge_template);
    return run_trials(graph, config);
}

/// Cartesian grid of simulations; cell k runs with seed stream_seed(seed, k).
struct SweepGrid {
    std::vector<int> L;
    std::vector<double> p;
    /// Rounds; 0 means N = L.
    int N = 0;
    EdgeTemplate edge_template = EdgeTemplate::Circuit12;
    uint64_t trials = 1;
    uint64_t seed = 0;
    unsigned workers = 1;
};

inline std::vector<SimResult> sweep(const SweepGrid &grid) {
    require(!grid.L.empty() && !grid.p.empty(), "sweep grid must be nonempty");
    std::vector<SimResult> out;
    uint64_t cell = 0;
    for (int L : grid.L) {
        SimConfig base{L, grid.N, grid.edge_template, 0.0, grid.trials, 0, grid.workers};
        base.validate();
        SyndromeGraph graph(L, base.rounds(), grid.edge_template);
        for (double p : grid.p) {
            SimConfig config = base;
            config.p = p;
            config.seed = stream_seed(grid.seed, cell++);
            out.push_back(run_trials(graph, config));
        }
    }
    return out;
}

inline std::string format_real(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::string sweep_csv(const std::vector<SimResult> &rows) {
    std::ostringstream out;
    out << "L,N,p,trials,failures,estimate,lo,hi,seed\n";
    for (const auto &r : rows) {
        out << r.config.L << ',' << r.config.rounds() << ',' << format_real(r.config.p) << ',' << r.trials << ','
            << r.failures << ',' << format_real(r.estimate) << ',' << format_real(r.wilson95.lo) << ','
            << format_real(r.wilson95.hi) << ',' << r.seed << '\n';
    }
    return out.str();
}

}  // namespace faultline
