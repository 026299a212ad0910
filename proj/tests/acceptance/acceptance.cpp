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


// Acceptance harness: one PASS/FAIL line per criterion. `--criterion N` runs a single one.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "faultline.hpp"

using namespace faultline;

namespace {

struct Verdict {
    bool pass = true;
    std::string detail;
};

struct Criterion {
    int id;
    const char *title;
    double time_limit_s;
    std::function<Verdict()> check;
};

std::string fmt(const char *f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

std::string trimmed(std::string s) {
    while (!s.empty() && (s.back() == ' ' || s.back() == ';')) s.pop_back();
    return s;
}

std::vector<int> odd_sizes(int lo, int hi) {
    std::vector<int> out;
    for (int L = lo; L <= hi; L += 2) out.push_back(L);
    return out;
}

/// Smallest L from which log values strictly increase up to the last L; 0 if the last step does not increase.
int growth_onset(const std::vector<int> &Ls, const std::vector<double> &logs) {
    size_t i = logs.size() - 1;
    if (logs.size() < 2 || !(logs[i] > logs[i - 1])) return 0;
    while (i > 0 && logs[i] > logs[i - 1]) --i;
    return Ls[i];
}

BoundParams params(int L, double A, double eta, double alpha = 0.0) {
    BoundParams b;
    b.L = L;
    b.N = L;
    b.eta = eta;
    b.alpha = alpha;
    b.A = A;
    return b;
}

ThresholdOptions scan(double lo, double hi) {
    ThresholdOptions o;
    o.grid = log_grid(lo, hi);
    return o;
}

Verdict criterion_1() {
    Verdict v;
    auto pub = threshold_solve(BoundKind::PUB, scan(1e-6, 1e-2));
    auto wubp = threshold_solve(BoundKind::WUBPrime, scan(1e-8, 1e-2));
    v.pass = pub.threshold && pub.threshold->num == 1 && pub.threshold->den == 484 && wubp.threshold &&
             wubp.threshold->num == 1 && wubp.threshold->den == 968;
    v.detail = "p_ub threshold " + (pub.threshold ? pub.threshold->str() : std::string("none")) +
               ", w_ub_prime threshold " + (wubp.threshold ? wubp.threshold->str() : std::string("none"));
    return v;
}

Verdict criterion_2() {
    Verdict v;
    std::vector<int> Ls = odd_sizes(3, 41);
    std::vector<double> A;
    for (int L : Ls) A.push_back(static_cast<double>(SyndromeGraph(L, L, EdgeTemplate::Circuit12).num_edges()));
    std::ostringstream d;
    for (double eta : {1e-2, 1e-4, 1e-6, 1e-8}) {
        std::vector<double> logs;
        bool divergent = true;
        for (size_t i = 0; i < Ls.size(); ++i) {
            BoundValue w = w_ub(params(Ls[i], A[i], eta));
            divergent = divergent && !w.convergence_ok;
            logs.push_back(w.log_value);
        }
        d << "eta=" << fmt("%.0e", eta) << ": ";
        if (divergent) {
            d << "divergent (infinite) at every L; ";
            continue;
        }
        int onset = growth_onset(Ls, logs);
        if (onset) {
            d << "increasing from L=" << onset << "; ";
        } else {
            v.pass = false;
            d << "not increasing at L=41 (log10 W_UB: L=39 " << fmt("%.6g", logs[logs.size() - 2] / std::log(10.0))
              << ", L=41 " << fmt("%.6g", logs.back() / std::log(10.0)) << "); ";
        }
    }
    auto wub = threshold_solve(BoundKind::WUB, scan(1e-8, 1e-2));
    if (wub.threshold) v.pass = false;
    d << "threshold_solve(WUB) " << (wub.threshold ? wub.threshold->str() : std::string("none"));
    v.detail = d.str();
    return v;
}

Verdict criterion_3() {
    Verdict v;
    std::mt19937_64 rng(3003);
    std::uniform_int_distribution<int> half(1, 20);
    std::uniform_real_distribution<double> lg(-8.0, -3.1);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        int L = 2 * half(rng) + 1;
        double eta = std::pow(10.0, lg(rng));
        double A = syndrome_edge_count(L, L, EdgeTemplate::Circuit12);
        BoundParams b = params(L, A, eta, 0.0);
        double at0 = std::abs(std::expm1(generic_bound(b).value.log_value - w_ub_prime(b).log_value));
        b.alpha = 1.0;
        double at1 = std::abs(std::expm1(generic_bound(b).value.log_value - w_ub(b).log_value));
        worst = std::max({worst, at0, at1});
    }
    std::ostringstream d;
    d << "max relative deviation at alpha in {0,1} over 100 draws " << fmt("%.3g", worst) << "; eta=9e-4: ";
    if (!(worst <= 1e-12)) v.pass = false;
    const double eta = 9e-4;
    std::vector<int> Ls = odd_sizes(3, 41);
    for (double alpha : {0.01, 0.1, 0.5}) {
        std::vector<double> logs;
        bool divergent = true;
        for (int L : Ls) {
            BoundValue g = generic_bound(params(L, syndrome_edge_count(L, L, EdgeTemplate::Circuit12), eta, alpha)).value;
            divergent = divergent && !g.convergence_ok;
            logs.push_back(g.log_value);
        }
        int onset = growth_onset(Ls, logs);
        d << "alpha=" << alpha << " ";
        if (divergent) {
            d << "divergent; ";
        } else if (onset) {
            d << "grows from L=" << onset << "; ";
        } else {
            v.pass = false;
            d << "no growth by L=41; ";
        }
    }
    v.detail = trimmed(d.str());
    return v;
}

Verdict criterion_4() {
    Verdict v;
    std::mt19937_64 rng(4004);
    std::uniform_int_distribution<int64_t> a_dist(1, 1000000);
    std::uniform_real_distribution<double> lp(-6.0, std::log10(0.5));
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        int64_t A = a_dist(rng);
        int64_t r = std::uniform_int_distribution<int64_t>(0, std::min<int64_t>(A, 200))(rng);
        double p = std::pow(10.0, lp(rng));
        worst = std::max(worst, std::abs(disconnected_factor(A, r, p) - 1.0));
    }
    std::ostringstream d;
    d << "disconnected_factor max |f-1| " << fmt("%.3g", worst) << "; methods_sum_check relative gap at r_max=60:";
    if (!(worst <= 1e-12)) v.pass = false;
    for (int L : {3, 5, 7}) {
        MethodsSumCheck m = methods_sum_check(L, L, 1e-3, 60);
        double rel = m.gap / m.closed_form;
        d << " L=" << L << " " << fmt("%.3g", rel);
        if (!(m.gap < 1e-12 * m.closed_form)) v.pass = false;
    }
    d << " (limit 1e-12)";
    v.detail = d.str();
    return v;
}

Verdict criterion_5() {
    Verdict v;
    uint64_t single_failures = 0, single_total = 0;
    for (int L : {3, 5, 7}) {
        SyndromeGraph g(L, L, EdgeTemplate::Circuit12);
        Decoder dec(g);
        for (uint32_t e = 0; e < g.num_edges(); ++e) {
            single_failures += static_cast<uint64_t>(dec.adjudicate(Chain({e})).logical_error);
            ++single_total;
        }
    }
    std::mt19937_64 rng(5005);
    uint64_t random_failures = 0;
    std::vector<SyndromeGraph> graphs;
    for (int L : {3, 5, 7, 9}) graphs.emplace_back(L, L, EdgeTemplate::Circuit12);
    for (int t = 0; t < 10000; ++t) {
        const SyndromeGraph &g = graphs[static_cast<size_t>(t) % graphs.size()];
        int f = std::uniform_int_distribution<int>(0, (g.L() - 1) / 2)(rng);
        std::vector<uint32_t> ids;
        while (static_cast<int>(ids.size()) < f) {
            uint32_t e = std::uniform_int_distribution<uint32_t>(0, static_cast<uint32_t>(g.num_edges() - 1))(rng);
            if (std::find(ids.begin(), ids.end(), e) == ids.end()) ids.push_back(e);
        }
        random_failures += static_cast<uint64_t>(adjudicate(g, Chain(ids)).logical_error);
    }
    uint64_t mismatches = 0;
    for (int t = 0; t < 500; ++t) {
        size_t n = std::uniform_int_distribution<size_t>(0, 12)(rng);
        int64_t max_w = t % 2 ? 3 : 60;
        std::uniform_int_distribution<int64_t> w(0, max_w);
        std::vector<std::vector<int64_t>> pw(n, std::vector<int64_t>(n, 0));
        std::vector<int64_t> bw(n);
        for (size_t i = 0; i < n; ++i) {
            bw[i] = w(rng);
            for (size_t j = i + 1; j < n; ++j) pw[i][j] = pw[j][i] = w(rng);
        }
        MatchingProblem p = MatchingProblem::from_weights(pw, bw);
        if (min_weight_matching(p).total_weight != oracle_matching(p).total_weight) ++mismatches;
    }
    v.pass = single_failures == 0 && random_failures == 0 && mismatches == 0;
    v.detail = "(a) " + std::to_string(single_failures) + "/" + std::to_string(single_total) +
               " single faults fail; (b) " + std::to_string(random_failures) +
               "/10000 sets with 2f<L fail; (c) " + std::to_string(mismatches) + "/500 weight mismatches";
    return v;
}

Verdict criterion_6() {
    Verdict v;
    std::ostringstream d;
    uint64_t seed = 6006;
    for (double p : {0.002, 0.005}) {
        SimResult s = run_trials(SimConfig{3, 3, EdgeTemplate::Circuit12, p, 1000000, seed++, 1});
        BoundParams b = params(3, 0.0, 0.0);
        b.p = p;
        double cap = std::min(p_ub(b).value, 1.0);
        if (!(s.wilson95.hi <= cap)) v.pass = false;
        d << "p=" << p << ": wilson hi " << fmt("%.6g", s.wilson95.hi) << " <= min(P_UB=" << fmt("%.6g", p_ub(b).value)
          << ", 1); ";
    }
    v.detail = trimmed(d.str());
    return v;
}

Verdict criterion_7() {
    Verdict v;
    SimResult r3 = run_trials(SimConfig{3, 3, EdgeTemplate::Circuit12, 1e-3, 1000000, 7007, 1});
    SimResult r5 = run_trials(SimConfig{5, 5, EdgeTemplate::Circuit12, 1e-3, 1000000, 7008, 1});
    v.pass = r5.estimate <= r3.estimate && r5.wilson95.lo <= r3.wilson95.lo && r5.wilson95.hi <= r3.wilson95.hi;
    v.detail = "L=3 " + fmt("%.4e", r3.estimate) + " [" + fmt("%.4e", r3.wilson95.lo) + ", " + fmt("%.4e", r3.wilson95.hi) +
               "]; L=5 " + fmt("%.4e", r5.estimate) + " [" + fmt("%.4e", r5.wilson95.lo) + ", " +
               fmt("%.4e", r5.wilson95.hi) + "]";
    return v;
}

Verdict criterion_8() {
    Verdict v;
    SyndromeGraph g(3, 2, EdgeTemplate::Circuit12);
    WalkCountTable w = count_walks(g, 8);
    std::vector<uint64_t> saw = count_spanning_saw(g, 8);
    std::ostringstream d;
    for (int r = 0; r <= 8; ++r) {
        size_t i = static_cast<size_t>(r);
        double cap = w.overcount_2nl(r);
        if (!(static_cast<double>(w.free_first_step[i]) <= cap && static_cast<double>(w.exclude_face_first_step[i]) <= cap))
            v.pass = false;
        if (!(static_cast<double>(w.both_lattices(r)) <= w.overcount_4nl(r))) v.pass = false;
        if (r < 3 && saw[i] != 0) v.pass = false;
    }
    d << "r=8: walks " << w.free_first_step[8] << " (exclude-face " << w.exclude_face_first_step[8] << ") <= 2NL*11^r "
      << fmt("%.6g", w.overcount_2nl(8)) << ", both lattices " << w.both_lattices(8) << " <= 4NL*11^r "
      << fmt("%.6g", w.overcount_4nl(8)) << "; spanning SAW r<3: " << saw[0] << "," << saw[1] << "," << saw[2]
      << ", r=8: " << saw[8];
    v.detail = d.str();
    return v;
}

Verdict criterion_9() {
    Verdict v;
    SyndromeGraph g(7, 1, EdgeTemplate::Phenomenological6);
    auto w = find_breaking_witness(g, 1000000, 7);
    if (!w) return {false, "no witness within budget 1e6 (seed 7)"};
    bool verified = verify_witness(g, *w);
    bool partial = true;
    for (size_t i = 0; i < w->extra_faults.weight(); ++i) partial = partial && partial_addition_check(g, *w, i) == 1;
    v.pass = verified && partial && w->combined_logical_error == 0;
    v.detail = "seed 7: base " + std::to_string(w->base_faults.weight()) + " faults, extra " +
               std::to_string(w->extra_faults.weight()) + " faults, " + std::to_string(w->trials_used) +
               " candidates; re-verification " + (verified ? "passes" : "fails") + "; single-edge additions " +
               (partial ? "keep" : "lose") + " the logical error";
    return v;
}

}  // namespace

int main(int argc, char **argv) {
    std::vector<Criterion> all{
        {1, "threshold reproduction", 1.0, criterion_1},
        {2, "no-threshold reproduction", 10.0, criterion_2},
        {3, "generic-form consistency", 10.0, criterion_3},
        {4, "identity and series checks", 5.0, criterion_4},
        {5, "decoder correctness suite", 120.0, criterion_5},
        {6, "bound dominance", 600.0, criterion_6},
        {7, "suppression property", 1200.0, criterion_7},
        {8, "overcount quantification", 60.0, criterion_8},
        {9, "witness existence", 300.0, criterion_9},
    };
    CLI::App app{"acceptance checks"};
    int only = 0;
    app.add_option("--criterion", only, "run a single criterion (1-9)")->check(CLI::Range(1, 9));
    CLI11_PARSE(app, argc, argv);

    bool all_pass = true;
    for (const Criterion &c : all) {
        if (only && c.id != only) continue;
        auto start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = c.check();
        } catch (const std::exception &e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        bool in_time = secs <= c.time_limit_s;
        bool pass = v.pass && in_time;
        all_pass = all_pass && pass;
        std::printf("criterion %d [%s] %s: %s; %.2f s (limit %.0f s%s)\n", c.id, pass ? "PASS" : "FAIL", c.title,
                    v.detail.c_str(), secs, c.time_limit_s, in_time ? "" : ", exceeded");
        std::fflush(stdout);
    }
    return all_pass ? 0 : 1;
}
