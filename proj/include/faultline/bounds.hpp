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
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "faultline/errors.hpp"
#include "faultline/syndrome_graph.hpp"

namespace faultline {

enum class PathMode : uint8_t { Exact, Bound };

/// Starting-vertex count in the walk argument: 2NL (both lattices, one face each) or 4NL.
enum class Prefactor : uint8_t { TwoNL, FourNL };

/// Inputs to the closed-form threshold bounds.
///
/// The walk branching factor d enters through b = 2d (22 at the default d = 11) and the
/// constant c = 2 (b + 1) / b (2 * 23/22 at the default).
struct BoundParams {
    int L = 3;
    /// Rounds; 0 means N = L.
    int N = 0;
    double p = 0.0;
    double eta = 0.0;
    double alpha = 0.0;
    int degree_branch = 11;
    /// Syndrome-graph edge count v(L).
    double A = 0.0;
    Prefactor prefactor = Prefactor::TwoNL;

    int rounds() const { return N > 0 ? N : L; }
    double b() const { return 2.0 * degree_branch; }
    double c() const { return 2.0 * (b() + 1.0) / b(); }
    /// ceil(L / 2): the minimum number of faults on a spanning path.
    int ell() const { return (L + 1) / 2; }
    double log_prefactor() const {
        double nl = static_cast<double>(rounds()) * static_cast<double>(L);
        return std::log(c() * nl) + (prefactor == Prefactor::FourNL ? std::log(2.0) : 0.0);
    }

    void validate() const {
        require(L >= 1, "L must be >= 1");
        require(N >= 0, "N must be >= 0");
        require(p >= 0.0 && p <= 1.0, "invalid probability: p must lie in [0, 1]");
        require(eta >= 0.0, "eta must be >= 0");
        require(alpha >= 0.0 && alpha <= 1.0, "alpha must lie in [0, 1]");
        require(degree_branch >= 1, "degree_branch must be >= 1");
        require(A >= 0.0, "A must be >= 0");
    }
};

/// A nonnegative bound held in log space. Divergent series carry convergence_ok = false and
/// value = +inf.
struct BoundValue {
    double value = 0.0;
    double log_value = -std::numeric_limits<double>::infinity();
    bool convergence_ok = true;

    static BoundValue from_log(double log_value) {
        return {std::exp(log_value), log_value, true};
    }
    static BoundValue zero() { return {}; }
    static BoundValue divergent() {
        constexpr double inf = std::numeric_limits<double>::infinity();
        return {inf, inf, false};
    }
};

namespace detail {

/// cNL q^ell / (1 - q) in log space, with the convergence flag.
inline BoundValue geometric_tail(const BoundParams &params, double q, double log_extra) {
    if (q >= 1.0) return BoundValue::divergent();
    if (q <= 0.0) return BoundValue::zero();
    return BoundValue::from_log(params.log_prefactor() + log_extra + params.ell() * std::log(q) - std::log1p(-q));
}

}  // namespace detail

/// Probability that a specific length-r path is realised by faults plus recovery.
inline double p_path(int r, double p, PathMode mode) {
    require(r >= 1, "r must be >= 1");
    require(p >= 0.0 && p <= 1.0, "invalid probability: p must lie in [0, 1]");
    const int kmin = (r + 1) / 2;
    if (mode == PathMode::Bound) return std::pow(p, kmin) * std::pow(2.0, r);
    if (p == 0.0) return 0.0;
    if (p == 1.0) return 1.0;
    const double lp = std::log(p), lq = std::log1p(-p);
    double sum = 0.0;
    for (int k = r; k >= kmin; --k) {
        const double lchoose = std::lgamma(r + 1.0) - std::lgamma(k + 1.0) - std::lgamma(r - k + 1.0);
        sum += std::exp(lchoose + k * lp + (r - k) * lq);
    }
    return sum;
}

/// P_UB(L) = cNL (b^2 p)^ceil(L/2) / (1 - b^2 p).
inline BoundValue p_ub(const BoundParams &params) {
    params.validate();
    return detail::geometric_tail(params, params.b() * params.b() * params.p, 0.0);
}

/// W'_UB(L): P_UB with p read as 2 eta.
inline BoundValue w_ub_prime(const BoundParams &params) {
    BoundParams probabilistic = params;
    probabilistic.p = 2.0 * params.eta;
    probabilistic.validate();
    return p_ub(probabilistic);
}

/// W_UB(L) = cNL (1+eta)^A [b^2 2eta/(1+eta)^2]^ceil(L/2) / (1 - b^2 2eta/(1+eta)^2).
inline BoundValue w_ub(const BoundParams &params) {
    params.validate();
    const double q = params.b() * params.b() * 2.0 * params.eta / ((1.0 + params.eta) * (1.0 + params.eta));
    return detail::geometric_tail(params, q, params.A * std::log1p(params.eta));
}

/// Cost/benefit split f(alpha, eta) (1 + alpha eta)^v(L) * [b^2 2eta / (1 + alpha eta)^2]^ell(L).
struct GenericBound {
    BoundValue cost;
    BoundValue benefit;
    BoundValue value;
};

inline GenericBound generic_bound(const BoundParams &params) {
    params.validate();
    const double ae = params.alpha * params.eta;
    const double q = params.b() * params.b() * 2.0 * params.eta / ((1.0 + ae) * (1.0 + ae));
    GenericBound out;
    if (q >= 1.0) {
        out.cost = out.benefit = out.value = BoundValue::divergent();
        return out;
    }
    out.cost = BoundValue::from_log(params.log_prefactor() - std::log1p(-q) + params.A * std::log1p(ae));
    if (q <= 0.0) {
        out.benefit = out.value = BoundValue::zero();
        return out;
    }
    out.benefit = BoundValue::from_log(params.ell() * std::log(q));
    out.value = BoundValue::from_log(out.cost.log_value + out.benefit.log_value);
    return out;
}

/// Sum_{l=0}^{A-r} C(A-r, l) p^l (1-p)^(A-r-l), evaluated term by term.
///
/// Terms follow the ratio recurrence in extended precision with an explicit binary exponent,
/// so neither underflow of (1-p)^n nor lgamma cancellation limits the accuracy.
inline double disconnected_factor(int64_t A, int64_t r, double p) {
    require(r >= 0 && A >= r, "disconnected_factor requires A >= r >= 0");
    require(p >= 0.0 && p <= 1.0, "invalid probability: p must lie in [0, 1]");
    const int64_t n = A - r;
    long double sum = 0.0L, compensation = 0.0L;
    auto add = [&](long double x) {
        long double t = sum + x;
        compensation += std::fabs(sum) >= std::fabs(x) ? (sum - t) + x : (x - t) + sum;
        sum = t;
    };
    if (p == 0.0 || p == 1.0) {
        for (int64_t l = 0; l <= n; ++l) {
            long double term = std::pow(static_cast<long double>(p), static_cast<long double>(l)) *
                               std::pow(1.0L - p, static_cast<long double>(n - l));
            add(term);
        }
        return static_cast<double>(sum + compensation);
    }
    const long double lp = p, lq = 1.0L - lp;
    const long double log_first = static_cast<long double>(n) * std::log1p(-lp);
    const long double ln2 = std::log(2.0L);
    long double exponent = std::floor(log_first / ln2);
    long double mantissa = std::exp(log_first - exponent * ln2);
    const long double odds = lp / lq;
    for (int64_t l = 0; l <= n; ++l) {
        add(std::ldexp(mantissa, static_cast<int>(std::max<long double>(exponent, -20000.0L))));
        if (exponent < -200.0L && static_cast<long double>(l) > static_cast<long double>(n) * lp) break;
        mantissa *= static_cast<long double>(n - l) / static_cast<long double>(l + 1) * odds;
        int e = 0;
        mantissa = std::frexp(mantissa, &e);
        exponent += e;
    }
    return static_cast<double>(sum + compensation);
}

struct Rational {
    int64_t num = 0;
    int64_t den = 1;
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
    bool operator==(const Rational &) const = default;
};

enum class BoundKind : uint8_t { PUB, WUBPrime, WUB };

/// Per-noise-strength evidence from the threshold analysis.
struct ThresholdEvidence {
    double strength = 0.0;
    bool divergent = false;
    /// Smallest odd L from which the bound is strictly increasing for every larger odd L
    /// (-1 if the bound eventually decreases).
    int64_t growth_from_L = -1;
    /// Smallest odd L from which the bound is strictly decreasing for every larger odd L
    /// (-1 if it eventually grows).
    int64_t decrease_from_L = -1;
};

struct ThresholdResult {
    BoundKind kind = BoundKind::PUB;
    std::optional<Rational> threshold;
    std::vector<ThresholdEvidence> evidence;
};

struct ThresholdOptions {
    int degree_branch = 11;
    EdgeTemplate edge_template = EdgeTemplate::Circuit12;
    /// Noise strengths probed (p for PUB, eta otherwise).
    std::vector<double> grid;
    Prefactor prefactor = Prefactor::TwoNL;
};

/// Log-spaced grid over [lo, hi] with `per_decade` points per decade.
inline std::vector<double> log_grid(double lo, double hi, int per_decade = 4) {
    require(lo > 0.0 && hi >= lo, "grid bounds must satisfy 0 < lo <= hi");
    std::vector<double> out;
    const double span = std::log10(hi / lo);
    const int steps = std::max(1, static_cast<int>(std::ceil(span * per_decade - 1e-9)));
    for (int i = 0; i <= steps; ++i) out.push_back(lo * std::pow(10.0, span * i / steps));
    return out;
}

namespace detail {

/// log of the bound at odd L, with N = L and A = A(L) from the closed-form edge count.
inline double log_bound_at(BoundKind kind, const ThresholdOptions &opts, double strength, double L) {
    const double b = 2.0 * opts.degree_branch;
    const double c = 2.0 * (b + 1.0) / b;
    const double ell = std::ceil(L / 2.0);
    double log_pre = std::log(c * L * L) + (opts.prefactor == Prefactor::FourNL ? std::log(2.0) : 0.0);
    double q = 0.0, extra = 0.0;
    if (kind == BoundKind::PUB) {
        q = b * b * strength;
    } else if (kind == BoundKind::WUBPrime) {
        q = b * b * 2.0 * strength;
    } else {
        q = b * b * 2.0 * strength / ((1.0 + strength) * (1.0 + strength));
        extra = syndrome_edge_count(L, L, opts.edge_template) * std::log1p(strength);
    }
    return log_pre + extra + ell * std::log(q) - std::log1p(-q);
}

inline ThresholdEvidence analyse_strength(BoundKind kind, const ThresholdOptions &opts, double strength) {
    ThresholdEvidence ev;
    ev.strength = strength;
    const double b = 2.0 * opts.degree_branch;
    double q = b * b * (kind == BoundKind::PUB ? strength : 2.0 * strength);
    if (kind == BoundKind::WUB) q /= (1.0 + strength) * (1.0 + strength);
    if (q >= 1.0) {
        ev.divergent = true;
        return ev;
    }
    auto step = [&](double L) { return log_bound_at(kind, opts, strength, L + 2) - log_bound_at(kind, opts, strength, L); };
    if (kind != BoundKind::WUB) {
        // step(L) = 2 ln((L+2)/L) + ln q, decreasing in L and eventually negative.
        int64_t L = 3;
        if (step(3.0) >= 0.0) {
            const double root = 2.0 / (1.0 / std::sqrt(q) - 1.0);
            L = std::max<int64_t>(3, static_cast<int64_t>(root) - 4) | 1;
            while (step(static_cast<double>(L)) >= 0.0) L += 2;
        }
        ev.decrease_from_L = L;
        return ev;
    }
    // The volume term grows cubically: the part of step(L) without the prefactor ratio is
    // increasing in L, so locate where it turns positive, then walk back.
    auto core = [&](double L) {
        return (syndrome_edge_count(L + 2, L + 2, opts.edge_template) - syndrome_edge_count(L, L, opts.edge_template)) *
                   std::log1p(strength) +
               std::log(q);
    };
    int64_t hi = 3;
    while (core(static_cast<double>(hi)) < 0.0) hi = 2 * hi + 1;
    int64_t lo = 3;
    while (hi - lo > 2) {
        int64_t mid = ((lo + hi) / 2) | 1;
        if (mid >= hi) mid = hi - 2;
        if (core(static_cast<double>(mid)) < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    int64_t L = core(static_cast<double>(lo)) >= 0.0 ? lo : hi;
    while (L > 3 && step(static_cast<double>(L - 2)) > 0.0) L -= 2;
    ev.growth_from_L = L;
    return ev;
}

}  // namespace detail

/// Threshold of a bound family.
///
/// PUB and WUBPrime converge iff q < 1 and then decrease for all large L, giving the exact
/// rational thresholds 1/b^2 and 1/(2 b^2). WUB grows without bound in L for every eta > 0
/// because A(L) is cubic; the per-eta evidence records where the growth starts.
inline ThresholdResult threshold_solve(BoundKind kind, const ThresholdOptions &opts) {
    require(opts.degree_branch >= 1, "degree_branch must be >= 1");
    ThresholdResult out;
    out.kind = kind;
    const int64_t b = 2 * static_cast<int64_t>(opts.degree_branch);
    for (double s : opts.grid) {
        require(s > 0.0, "threshold grid values must be > 0");
        out.evidence.push_back(detail::analyse_strength(kind, opts, s));
    }
    if (kind == BoundKind::PUB) {
        out.threshold = Rational{1, b * b};
    } else if (kind == BoundKind::WUBPrime) {
        out.threshold = Rational{1, 2 * b * b};
    }
    return out;
}

/// Direct summation of the Methods series against its closed form.
struct MethodsSumCheck {
    double partial_sum = 0.0;
    double closed_form = 0.0;
    /// closed_form - partial_sum.
    double gap = 0.0;
    /// Analytic value of the omitted terms r > r_max.
    double tail = 0.0;
};

inline MethodsSumCheck methods_sum_check(int L, int N, double p, int r_max, int degree_branch = 11) {
    require(L >= 1 && L % 2 == 1, "odd-L required");
    require(N >= 1, "N must be >= 1");
    require(p >= 0.0 && p <= 1.0, "invalid probability: p must lie in [0, 1]");
    require(r_max >= L, "r_max must be >= L");
    const double b = 2.0 * degree_branch;
    const double q = b * b * p;
    require(q < 1.0, "divergent series: b^2 p must be < 1");
    const double pre = 2.0 * N * L;
    MethodsSumCheck out;
    if (p == 0.0) return out;
    const double lb = std::log(b), lp = std::log(p);
    double sum = 0.0;
    for (int r = r_max; r >= L; --r) sum += std::exp(r * lb + ((r + 1) / 2) * lp);
    out.partial_sum = pre * sum;
    out.closed_form = pre * (b + 1.0) / b * std::pow(q, (L + 1) / 2) / (1.0 - q);
    out.gap = out.closed_form - out.partial_sum;
    const int r0 = r_max + 1;
    if (r0 % 2 == 1) {
        out.tail = pre * (b + 1.0) / b * std::pow(q, (r0 + 1) / 2) / (1.0 - q);
    } else {
        out.tail = pre * (std::pow(q, r0 / 2) + (b + 1.0) / b * std::pow(q, r0 / 2 + 1) / (1.0 - q));
    }
    return out;
}

}  // namespace faultline
