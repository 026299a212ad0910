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

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "faultline.hpp"
#include "json.hpp"

namespace faultline::cli {

using json = nlohmann::ordered_json;

/// Malformed invocation: exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

/// Reals travel as 17-significant-digit decimal strings.
inline std::string real(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return format_real(x);
}

inline json chain_json(const Chain &c) { return json(c.edges()); }

inline json bound_json(const BoundValue &v) {
    json j;
    j["value"] = real(v.value);
    j["log_value"] = real(v.log_value);
    j["convergence_ok"] = v.convergence_ok;
    return j;
}

inline json rational_json(const Rational &r) {
    json j;
    j["rational"] = r.str();
    j["decimal"] = real(r.value());
    return j;
}

inline json interval_json(const Interval &i) {
    json j;
    j["lo"] = real(i.lo);
    j["hi"] = real(i.hi);
    return j;
}

template <class T>
json echo_value(const T &v) {
    if constexpr (std::is_same_v<T, bool>) {
        return v;
    } else if constexpr (std::is_floating_point_v<T>) {
        return real(v);
    } else if constexpr (std::is_integral_v<T>) {
        return v;
    } else if constexpr (std::is_same_v<T, std::string>) {
        return v;
    } else {
        json arr = json::array();
        for (const auto &x : v) arr.push_back(echo_value(x));
        return arr;
    }
}

/// One subcommand: its CLI11 app plus the resolved-config echo.
struct Command {
    CLI::App *app = nullptr;
    std::vector<std::pair<std::string, std::function<json()>>> echo;
    std::set<std::string> keys;
    std::set<std::string> flags;

    template <class T>
    CLI::Option *option(const std::string &name, T &var, const std::string &desc) {
        keys.insert(name);
        echo.emplace_back(name, [&var] { return echo_value(var); });
        CLI::Option *opt = app->add_option("--" + name, var, desc)->capture_default_str();
        if constexpr (!std::is_same_v<T, std::string> && !std::is_arithmetic_v<T>) opt->delimiter(',');
        return opt;
    }

    CLI::Option *flag(const std::string &name, bool &var, const std::string &desc) {
        keys.insert(name);
        flags.insert(name);
        echo.emplace_back(name, [&var] { return json(var); });
        return app->add_flag("--" + name, var, desc);
    }

    json config() const {
        json j = json::object();
        for (const auto &[name, get] : echo) j[name] = get();
        return j;
    }
};

/// All flags of all subcommands; each subcommand binds the subset it accepts.
struct Options {
    int L = 3;
    int N = 0;
    std::string edge_template = "circuit12";
    bool list_edges = false;
    std::string faults_path;
    std::vector<int64_t> fault_ids;
    double p = 0.0;
    uint64_t trials = 100000;
    uint64_t seed = 0;
    unsigned workers = 1;
    std::string format = "json";
    std::string out;
    std::vector<int> L_list;
    std::vector<double> p_list;
    std::string kind;
    double eta = 0.0;
    double alpha = 0.0;
    double A = -1.0;
    int degree_branch = 11;
    std::string prefactor = "2nl";
    int r = 1;
    std::string mode = "exact";
    std::string grid;
    int per_decade = 4;
    int L_max = 41;
    std::string L_range = "3:41";
    int r_max = 8;
    uint64_t budget = 1000000;
    std::string witness_path;
    std::vector<int> radii{0, 1, 2, 3};
    uint64_t samples = 100000;
    uint64_t extra_size = 2;
    std::string problem_path;
    bool oracle = false;
};

inline json read_json_file(const std::string &path, bool usage) {
    std::ifstream in(path);
    if (!in) {
        const std::string msg = "cannot open file: " + path;
        if (usage) throw UsageError(msg);
        throw DomainError(msg);
    }
    try {
        return json::parse(in);
    } catch (const json::exception &e) {
        const std::string msg = "malformed JSON in " + path + ": " + e.what();
        if (usage) throw UsageError(msg);
        throw DomainError(msg);
    }
}

inline std::string config_value(const std::string &key, const json &v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer() || v.is_number_unsigned()) return v.dump();
    if (v.is_number_float()) return format_real(v.get<double>());
    if (v.is_array()) {
        std::string s;
        for (const auto &x : v) {
            if (x.is_array() || x.is_object()) throw UsageError("config key '" + key + "': nested values not allowed");
            if (!s.empty()) s += ',';
            s += config_value(key, x);
        }
        return s;
    }
    throw UsageError("config key '" + key + "': unsupported value type");
}

/// Expands --config FILE into explicit flags. Flags given on the command line win.
inline std::vector<std::string> expand_config(const std::vector<std::string> &args, const std::map<std::string, Command> &commands) {
    std::vector<std::string> out;
    std::string config_path;
    for (size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size()) throw UsageError("--config requires a file argument");
            config_path = args[++i];
        } else if (args[i].rfind("--config=", 0) == 0) {
            config_path = args[i].substr(9);
        } else {
            out.push_back(args[i]);
        }
    }
    if (config_path.empty()) return out;
    if (out.empty() || !commands.count(out[0])) throw UsageError("--config requires a subcommand before it");
    const Command &cmd = commands.at(out[0]);
    json config = read_json_file(config_path, true);
    if (!config.is_object()) throw UsageError("config file must hold a JSON object");
    std::set<std::string> given;
    for (size_t i = 1; i < out.size(); ++i) {
        const std::string &a = out[i];
        if (a.rfind("--", 0) != 0) continue;
        given.insert(a.substr(2, a.find('=') == std::string::npos ? std::string::npos : a.find('=') - 2));
    }
    for (const auto &[key, value] : config.items()) {
        if (key == "command") {
            if (!value.is_string() || value.get<std::string>() != out[0]) {
                throw UsageError("config 'command' does not match subcommand " + out[0]);
            }
            continue;
        }
        if (!cmd.keys.count(key)) throw UsageError("unknown config key for " + out[0] + ": " + key);
        if (given.count(key)) continue;
        if (cmd.flags.count(key)) {
            if (!value.is_boolean()) throw UsageError("config key '" + key + "' must be a boolean");
            if (value.get<bool>()) out.push_back("--" + key);
            continue;
        }
        out.push_back("--" + key + "=" + config_value(key, value));
    }
    return out;
}

inline EdgeTemplate template_of(const Options &o) {
    try {
        return parse_template(o.edge_template);
    } catch (const DomainError &e) {
        throw UsageError(e.what());
    }
}

inline Prefactor prefactor_of(const Options &o) { return o.prefactor == "4nl" ? Prefactor::FourNL : Prefactor::TwoNL; }

inline int rounds_of(const Options &o) { return o.N > 0 ? o.N : o.L; }

/// "lo:hi" pair of reals.
inline std::pair<double, double> parse_range(const std::string &text, const std::string &what) {
    const size_t colon = text.find(':');
    if (colon == std::string::npos) throw UsageError(what + " must have the form lo:hi, got '" + text + "'");
    try {
        size_t used = 0;
        const std::string a = text.substr(0, colon), b = text.substr(colon + 1);
        double lo = std::stod(a, &used);
        if (used != a.size()) throw std::invalid_argument(a);
        double hi = std::stod(b, &used);
        if (used != b.size()) throw std::invalid_argument(b);
        return {lo, hi};
    } catch (const std::logic_error &) {
        throw UsageError(what + " must have the form lo:hi, got '" + text + "'");
    }
}

inline json graph_header(const SyndromeGraph &g) {
    json j;
    j["L"] = g.L();
    j["N"] = g.N();
    j["template"] = std::string(template_name(g.edge_template()));
    return j;
}

inline json cmd_lattice_info(const Options &o) {
    CodeLattice c(o.L);
    json r;
    r["L"] = c.L();
    r["t"] = c.t();
    r["data_qubits"] = c.num_data_qubits();
    r["x_ancillas"] = c.num_x_ancillas();
    r["z_ancillas"] = c.num_z_ancillas();
    r["ancillas"] = c.num_ancillas();
    r["total_qubits"] = c.num_data_qubits() + c.num_ancillas();
    json qubits = json::array();
    for (const DataQubit &q : c.data_qubits()) {
        qubits.push_back(json{{"orientation", q.orientation == Orientation::Vertical ? "vertical" : "horizontal"},
                              {"col", q.col},
                              {"row", q.row}});
    }
    r["qubits"] = qubits;
    r["x_stabilizers"] = c.x_stabilizers();
    r["z_stabilizers"] = c.z_stabilizers();
    r["logical_x"] = c.logical_support(PauliKind::X);
    r["logical_z"] = c.logical_support(PauliKind::Z);
    r["smooth_boundaries"] = json::array({c.smooth_boundary(0), c.smooth_boundary(1)});
    r["rough_boundaries"] = json::array({c.rough_boundary(0), c.rough_boundary(1)});
    return r;
}

inline json cmd_graph_info(const Options &o) {
    SyndromeGraph g(o.L, rounds_of(o), template_of(o));
    json r = graph_header(g);
    r["vertices"] = g.num_vertices();
    r["edges"] = g.num_edges();
    r["A"] = g.num_edges();
    std::map<size_t, size_t> hist, bulk;
    for (uint32_t v = 0; v < g.num_vertices(); ++v) {
        ++hist[g.degree(v)];
        if (g.is_bulk_vertex(v)) ++bulk[g.degree(v)];
    }
    json h = json::object(), b = json::object();
    for (auto [d, n] : hist) h[std::to_string(d)] = n;
    for (auto [d, n] : bulk) b[std::to_string(d)] = n;
    r["degree_histogram"] = h;
    r["bulk_degree_histogram"] = b;
    std::map<std::string, size_t> kinds;
    for (const Edge &e : g.edges()) ++kinds[std::string(edge_kind_name(e.kind))];
    r["edge_kinds"] = kinds;
    r["top_face_vertices"] = g.face_vertices(0).size();
    r["bottom_face_vertices"] = g.face_vertices(1).size();
    r["face_to_face_distance"] = g.distance(g.top_face(), g.bottom_face());
    if (o.list_edges) {
        auto node = [&](uint32_t x) -> json {
            if (x == g.top_face()) return "top";
            if (x == g.bottom_face()) return "bottom";
            Coord c = g.coord(x);
            return json::array({c.col, c.row, c.time});
        };
        json edges = json::array();
        for (uint32_t e = 0; e < g.num_edges(); ++e) {
            const Edge &ed = g.edge(e);
            edges.push_back(json{{"id", e},
                                 {"a", node(ed.a)},
                                 {"b", node(ed.b)},
                                 {"kind", std::string(edge_kind_name(ed.kind))},
                                 {"spatial_displacement", ed.spatial_displacement}});
        }
        r["edge_list"] = edges;
    }
    return r;
}

inline std::vector<uint32_t> ids_from_json(const json &j) {
    const json &arr = j.is_object() ? j.at("faults") : j;
    if (!arr.is_array()) throw DomainError("faults must be a JSON array of edge ids");
    std::vector<uint32_t> ids;
    for (const auto &x : arr) {
        if (!x.is_number_integer() || x.get<int64_t>() < 0) throw DomainError("edge ids must be nonnegative integers");
        ids.push_back(x.get<uint32_t>());
    }
    return ids;
}

inline json matching_json(const Matching &m) {
    json j;
    json pairs = json::array();
    for (auto [a, b] : m.pairs) pairs.push_back(json::array({a, b}));
    j["pairs"] = pairs;
    j["boundary_matches"] = m.boundary_matches;
    j["total_weight"] = m.total_weight;
    return j;
}

inline json cmd_adjudicate(const Options &o) {
    SyndromeGraph g(o.L, rounds_of(o), template_of(o));
    std::vector<uint32_t> ids;
    if (!o.faults_path.empty()) ids = ids_from_json(read_json_file(o.faults_path, false));
    for (int64_t x : o.fault_ids) {
        if (x < 0) throw DomainError("edge ids must be nonnegative integers");
        ids.push_back(static_cast<uint32_t>(x));
    }
    Chain faults(ids);
    Outcome out = adjudicate(g, faults);
    json r = graph_header(g);
    r["faults"] = chain_json(faults);
    r["defects_seen"] = out.defects_seen;
    r["recovery"] = chain_json(out.recovery);
    r["residual"] = chain_json(out.residual);
    r["logical_error"] = out.logical_error;
    r["matching"] = matching_json(out.matching);
    return r;
}

inline json sim_json(const SimResult &s) {
    json j;
    j["L"] = s.config.L;
    j["N"] = s.config.rounds();
    j["p"] = real(s.config.p);
    j["trials"] = s.trials;
    j["failures"] = s.failures;
    j["estimate"] = real(s.estimate);
    j["wilson95"] = interval_json(s.wilson95);
    j["seed"] = s.seed;
    return j;
}

inline SimConfig sim_config(const Options &o) {
    return SimConfig{o.L, o.N, template_of(o), o.p, o.trials, o.seed, o.workers};
}

inline BoundParams bound_params(const Options &o, double A) {
    BoundParams b;
    b.L = o.L;
    b.N = o.N;
    b.p = o.p;
    b.eta = o.eta;
    b.alpha = o.alpha;
    b.degree_branch = o.degree_branch;
    b.A = A;
    b.prefactor = prefactor_of(o);
    return b;
}

inline json cmd_bounds(const Options &o) {
    json r;
    r["kind"] = o.kind;
    if (o.kind == "p_path") {
        const double v = p_path(o.r, o.p, o.mode == "bound" ? PathMode::Bound : PathMode::Exact);
        r["value"] = real(v);
        return r;
    }
    if (o.kind == "disconnected") {
        require(o.A >= 0.0, "disconnected requires --A");
        r["value"] = real(disconnected_factor(static_cast<int64_t>(o.A), o.r, o.p));
        return r;
    }
    require(o.L >= 1 && o.L % 2 == 1, "odd-L required: L must be odd, got " + std::to_string(o.L));
    const double A = o.A >= 0.0 ? o.A : syndrome_edge_count(o.L, rounds_of(o), template_of(o));
    BoundParams b = bound_params(o, A);
    r["A"] = real(A);
    if (o.kind == "p_ub") {
        r.update(bound_json(p_ub(b)));
    } else if (o.kind == "w_ub_prime") {
        r.update(bound_json(w_ub_prime(b)));
    } else if (o.kind == "w_ub") {
        r.update(bound_json(w_ub(b)));
    } else {
        GenericBound gb = generic_bound(b);
        r.update(bound_json(gb.value));
        r["C"] = bound_json(gb.cost);
        r["B"] = bound_json(gb.benefit);
    }
    return r;
}

inline json cmd_threshold(const Options &o) {
    BoundKind kind = o.kind == "pub" ? BoundKind::PUB : o.kind == "wubprime" ? BoundKind::WUBPrime : BoundKind::WUB;
    std::string grid = o.grid;
    if (grid.empty()) grid = kind == BoundKind::PUB ? "1e-6:1e-2" : "1e-8:1e-2";
    auto [lo, hi] = parse_range(grid, "--grid");
    ThresholdOptions opts;
    opts.degree_branch = o.degree_branch;
    opts.edge_template = template_of(o);
    opts.prefactor = prefactor_of(o);
    opts.grid = log_grid(lo, hi, o.per_decade);
    ThresholdResult res = threshold_solve(kind, opts);
    json r;
    r["kind"] = o.kind;
    r["threshold"] = res.threshold ? rational_json(*res.threshold) : json(nullptr);
    json ev = json::array();
    for (const auto &e : res.evidence) {
        json j;
        j["strength"] = real(e.strength);
        j["divergent"] = e.divergent;
        j["growth_from_L"] = e.growth_from_L;
        j["decrease_from_L"] = e.decrease_from_L;
        j["growth_within_L_max"] = e.growth_from_L >= 3 && e.growth_from_L + 2 <= o.L_max;
        ev.push_back(j);
    }
    r["evidence"] = ev;
    return r;
}

/// Odd L values in "lo:hi".
inline std::vector<int> odd_range(const std::string &text) {
    auto [lo, hi] = parse_range(text, "--L-range");
    std::vector<int> out;
    for (int L = static_cast<int>(lo); L <= static_cast<int>(hi); ++L) {
        if (L >= 3 && L % 2 == 1) out.push_back(L);
    }
    if (out.empty()) throw DomainError("--L-range contains no odd L >= 3");
    return out;
}

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::string csv() const {
        std::ostringstream s;
        for (size_t i = 0; i < header.size(); ++i) s << (i ? "," : "") << header[i];
        s << '\n';
        for (const auto &row : rows) {
            for (size_t i = 0; i < row.size(); ++i) s << (i ? "," : "") << row[i];
            s << '\n';
        }
        return s.str();
    }

    json as_json() const {
        json arr = json::array();
        for (const auto &row : rows) {
            json j;
            for (size_t i = 0; i < header.size(); ++i) j[header[i]] = row[i];
            arr.push_back(j);
        }
        return arr;
    }
};

inline Table cmd_cost_benefit(const Options &o) {
    Table t;
    t.header = {"L", "N", "A", "alpha", "eta", "log10_C", "log10_B", "log10_value", "C", "B", "value", "convergence_ok"};
    const EdgeTemplate tmpl = template_of(o);
    const double ln10 = std::log(10.0);
    for (int L : odd_range(o.L_range)) {
        Options at = o;
        at.L = L;
        const int N = rounds_of(at);
        const double A = syndrome_edge_count(L, N, tmpl);
        GenericBound g = generic_bound(bound_params(at, A));
        t.rows.push_back({std::to_string(L), std::to_string(N), real(A), real(o.alpha), real(o.eta),
                          real(g.cost.log_value / ln10), real(g.benefit.log_value / ln10), real(g.value.log_value / ln10),
                          real(g.cost.value), real(g.benefit.value), real(g.value.value), g.value.convergence_ok ? "1" : "0"});
    }
    return t;
}

inline json cmd_methods_check(const Options &o) {
    MethodsSumCheck m = methods_sum_check(o.L, rounds_of(o), o.p, o.r_max, o.degree_branch);
    json r;
    r["partial_sum"] = real(m.partial_sum);
    r["closed_form"] = real(m.closed_form);
    r["gap"] = real(m.gap);
    r["relative_gap"] = real(m.closed_form > 0 ? m.gap / m.closed_form : 0.0);
    r["tail"] = real(m.tail);
    r["identity_residual"] = real(m.closed_form > 0 ? (m.partial_sum + m.tail - m.closed_form) / m.closed_form : 0.0);
    return r;
}

inline Table cmd_enumerate(const Options &o) {
    SyndromeGraph g(o.L, rounds_of(o), template_of(o));
    WalkCountTable w = count_walks(g, o.r_max, o.degree_branch);
    std::vector<uint64_t> saw = count_spanning_saw(g, o.r_max);
    Table t;
    t.header = {"r", "walks_free", "walks_exclude_face", "walks_both_lattices", "overcount_2nl", "overcount_4nl",
                "reaching_opposite", "spanning_saw", "overcount_ratio"};
    for (int r = 0; r <= o.r_max; ++r) {
        const size_t i = static_cast<size_t>(r);
        t.rows.push_back({std::to_string(r), std::to_string(w.free_first_step[i]), std::to_string(w.exclude_face_first_step[i]),
                          std::to_string(w.both_lattices(r)), real(w.overcount_2nl(r)), real(w.overcount_4nl(r)),
                          std::to_string(w.reaching_opposite[i]), std::to_string(saw[i]),
                          saw[i] ? real(static_cast<double>(w.free_first_step[i]) / static_cast<double>(saw[i])) : ""});
    }
    return t;
}

inline json cmd_witness(const Options &o) {
    SyndromeGraph g(o.L, rounds_of(o), template_of(o));
    auto w = find_breaking_witness(g, o.budget, o.seed);
    json r = graph_header(g);
    r["found"] = w.has_value();
    if (!w) return r;
    r["base_faults"] = chain_json(w->base_faults);
    r["extra_faults"] = chain_json(w->extra_faults);
    r["spanning_path"] = chain_json(w->spanning_path);
    r["base_recovery"] = chain_json(w->base_recovery);
    r["combined_recovery"] = chain_json(w->combined_recovery);
    r["base_logical_error"] = w->base_logical_error;
    r["combined_logical_error"] = w->combined_logical_error;
    r["single_extra_logical_error"] = w->single_extra_logical_error;
    r["trials_used"] = w->trials_used;
    r["verified"] = verify_witness(g, *w);
    return r;
}

inline json cmd_exclusion(const Options &o) {
    json doc = read_json_file(o.witness_path, false);
    const json &res = doc.contains("result") ? doc["result"] : doc;
    if (!res.is_object() || !res.value("found", true)) throw DomainError("witness document holds no witness");
    const int L = res.at("L").get<int>(), N = res.at("N").get<int>();
    SyndromeGraph g(L, N, parse_template(res.at("template").get<std::string>()));
    Chain base(ids_from_json(res.at("base_faults")));
    auto rows = exclusion_zone_stats(g, base, o.radii, o.samples, o.seed, o.extra_size);
    json r = graph_header(g);
    r["base_faults"] = chain_json(base);
    json arr = json::array();
    for (const auto &row : rows) {
        json j;
        j["radius"] = row.radius;
        j["legal_edges"] = row.legal_edges;
        j["samples"] = row.samples;
        j["flips"] = row.flips;
        j["no_sample"] = row.no_sample;
        j["fraction"] = row.no_sample ? json(nullptr) : json(real(row.fraction));
        j["wilson95"] = row.no_sample ? json(nullptr) : interval_json(row.wilson95);
        arr.push_back(j);
    }
    r["radii"] = arr;
    return r;
}

inline json cmd_match(const Options &o) {
    json doc = read_json_file(o.problem_path, false);
    MatchingProblem p;
    try {
        p = MatchingProblem::from_weights(doc.at("pair_weights").get<std::vector<std::vector<int64_t>>>(),
                                          doc.at("boundary_weights").get<std::vector<int64_t>>());
    } catch (const json::exception &e) {
        throw DomainError(std::string("malformed matching problem: ") + e.what());
    }
    Matching m = min_weight_matching(p);
    json r = matching_json(m);
    r["partner"] = m.partner;
    if (o.oracle) {
        Matching ref = oracle_matching(p);
        r["oracle_total_weight"] = ref.total_weight;
        r["oracle_agrees"] = ref == m;
    }
    return r;
}

inline void write_output(const Options &o, const std::string &text, std::ostream &out) {
    if (o.out.empty()) {
        out << text;
        return;
    }
    std::ofstream f(o.out);
    if (!f) throw DomainError("cannot write output file: " + o.out);
    f << text;
}

inline std::string error_line(const std::string &kind, const std::string &message) {
    json j;
    j["error"] = kind;
    j["message"] = message;
    return j.dump() + "\n";
}

/// Entry point shared by the binary and the tests. args excludes the program name.
inline int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    Options o;
    CLI::App app{"Surface-code fault-path decoding, threshold bounds and enumeration."};
    app.name("faultline");
    app.require_subcommand(1);
    app.set_version_flag("--version", "faultline 1.0.0");

    std::map<std::string, Command> commands;
    auto sub = [&](const std::string &name, const std::string &desc) -> Command & {
        Command &c = commands[name];
        c.app = app.add_subcommand(name, desc);
        return c;
    };
    auto graph_opts = [&](Command &c) {
        c.option("L", o.L, "odd linear size (>= 3)");
        c.option("N", o.N, "rounds; 0 means N = L");
        c.option("template", o.edge_template, "edge template")->check(CLI::IsMember({"circuit12", "phenomenological6"}));
    };
    auto seed_opt = [&](Command &c) { c.option("seed", o.seed, "master seed (falls back to FAULTLINE_SEED)"); };
    auto format_opt = [&](Command &c, std::vector<std::string> allowed) {
        c.option("format", o.format, "output format")->check(CLI::IsMember(allowed));
    };
    auto out_opt = [&](Command &c) {
        c.keys.insert("out");
        c.app->add_option("--out", o.out, "write the document to this file");
    };
    auto bound_opts = [&](Command &c) {
        c.option("degree-branch", o.degree_branch, "walk branching factor d (b = 2d)");
        c.option("prefactor", o.prefactor, "starting-vertex prefactor")->check(CLI::IsMember({"2nl", "4nl"}));
    };

    Command &lattice = sub("lattice-info", "planar code counts, stabilizers and logical supports");
    lattice.option("L", o.L, "odd linear size (>= 3)");
    format_opt(lattice, {"json"});
    out_opt(lattice);

    Command &graph = sub("graph-info", "syndrome-lattice counts and degree histogram");
    graph_opts(graph);
    graph.flag("list-edges", o.list_edges, "include every edge with its endpoints");
    format_opt(graph, {"json"});
    out_opt(graph);

    Command &adj = sub("adjudicate", "decode one fault set");
    graph_opts(adj);
    adj.option("faults", o.faults_path, "JSON file: array of edge ids or {\"faults\": [...]}");
    adj.option("fault-ids", o.fault_ids, "comma-separated edge ids");
    format_opt(adj, {"json"});
    out_opt(adj);

    Command &sim = sub("simulate", "Monte Carlo logical-error rate");
    graph_opts(sim);
    sim.option("p", o.p, "per-edge fault probability");
    sim.option("trials", o.trials, "number of trials");
    seed_opt(sim);
    sim.option("workers", o.workers, "worker threads");
    format_opt(sim, {"json", "csv"});
    out_opt(sim);

    Command &sw = sub("sweep", "Monte Carlo grid over L and p");
    sw.option("L", o.L_list, "comma-separated odd sizes");
    sw.option("p", o.p_list, "comma-separated probabilities");
    sw.option("N", o.N, "rounds; 0 means N = L");
    sw.option("template", o.edge_template, "edge template")->check(CLI::IsMember({"circuit12", "phenomenological6"}));
    sw.option("trials", o.trials, "trials per cell");
    seed_opt(sw);
    sw.option("workers", o.workers, "worker threads");
    format_opt(sw, {"csv", "json"});
    out_opt(sw);

    Command &bnd = sub("bounds", "evaluate one closed-form bound");
    bnd.option("kind", o.kind, "bound")->required()->check(
        CLI::IsMember({"p_ub", "w_ub_prime", "w_ub", "generic", "p_path", "disconnected"}));
    bnd.option("L", o.L, "odd linear size");
    bnd.option("N", o.N, "rounds; 0 means N = L");
    bnd.option("template", o.edge_template, "template used for A when --A is absent")
        ->check(CLI::IsMember({"circuit12", "phenomenological6"}));
    bnd.option("p", o.p, "edge-fault probability");
    bnd.option("eta", o.eta, "noise strength");
    bnd.option("alpha", o.alpha, "cost/benefit interpolation in [0, 1]");
    bnd.option("A", o.A, "syndrome-graph edge count; negative means from the graph");
    bnd.option("r", o.r, "path length (p_path, disconnected)");
    bnd.option("mode", o.mode, "p_path mode")->check(CLI::IsMember({"exact", "bound"}));
    bound_opts(bnd);
    format_opt(bnd, {"json"});
    out_opt(bnd);

    Command &thr = sub("threshold", "solve for the threshold of a bound family");
    thr.option("kind", o.kind, "bound family")->required()->check(CLI::IsMember({"pub", "wubprime", "wub"}));
    thr.option("grid", o.grid, "lo:hi strengths probed (log grid)");
    thr.app->add_option("--eta-grid", o.grid, "alias of --grid");
    thr.keys.insert("eta-grid");
    thr.option("per-decade", o.per_decade, "grid points per decade");
    thr.option("L-max", o.L_max, "largest L of the reported scan window");
    thr.option("template", o.edge_template, "template for A(L)")->check(CLI::IsMember({"circuit12", "phenomenological6"}));
    bound_opts(thr);
    format_opt(thr, {"json"});
    out_opt(thr);

    Command &cb = sub("cost-benefit", "C(L), B(L) and their product over a range of L");
    cb.option("alpha", o.alpha, "interpolation parameter");
    cb.option("eta", o.eta, "noise strength");
    cb.option("L-range", o.L_range, "lo:hi (odd L only)");
    cb.option("N", o.N, "rounds; 0 means N = L");
    cb.option("template", o.edge_template, "template for A(L)")->check(CLI::IsMember({"circuit12", "phenomenological6"}));
    bound_opts(cb);
    format_opt(cb, {"csv", "json"});
    out_opt(cb);

    Command &mc = sub("methods-check", "direct summation of the walk series against its closed form");
    mc.option("L", o.L, "odd linear size");
    mc.option("N", o.N, "rounds; 0 means N = L");
    mc.option("p", o.p, "edge-fault probability");
    mc.option("r-max", o.r_max, "last summed length");
    mc.option("degree-branch", o.degree_branch, "walk branching factor");
    format_opt(mc, {"json"});
    out_opt(mc);

    Command &en = sub("enumerate", "exact walk and spanning-path counts");
    graph_opts(en);
    en.option("r-max", o.r_max, "longest length counted");
    en.option("degree-branch", o.degree_branch, "branching factor of the analytic overcount");
    format_opt(en, {"csv", "json"});
    out_opt(en);

    Command &wit = sub("witness", "search for a spanning path broken by a disconnected pair");
    graph_opts(wit);
    wit.option("budget", o.budget, "search budget (candidate tests)");
    seed_opt(wit);
    format_opt(wit, {"json"});
    out_opt(wit);

    Command &exc = sub("exclusion", "flip fraction of extra faults outside a radius");
    exc.option("witness", o.witness_path, "witness document")->required();
    exc.option("radii", o.radii, "comma-separated radii");
    exc.option("samples", o.samples, "samples per radius");
    exc.option("extra-size", o.extra_size, "extra faults per sample");
    seed_opt(exc);
    format_opt(exc, {"json"});
    out_opt(exc);

    Command &mat = sub("match", "minimum-weight matching of a weighted defect problem");
    mat.option("problem", o.problem_path, "JSON file with pair_weights and boundary_weights")->required();
    mat.flag("oracle", o.oracle, "also solve with the exhaustive oracle");
    format_opt(mat, {"json"});
    out_opt(mat);

    std::string name;
    try {
        std::vector<std::string> argv = expand_config(args, commands);
        if (!argv.empty() && commands.count(argv[0])) {
            const std::string &first = argv[0];
            if (first == "sweep" || first == "cost-benefit" || first == "enumerate") o.format = "csv";
        }
        std::reverse(argv.begin(), argv.end());
        app.parse(argv);
        for (const auto &[n, c] : commands) {
            if (c.app->parsed()) name = n;
        }
        Command &cmd = commands.at(name);
        if (cmd.keys.count("seed") && cmd.app->count("--seed") == 0) {
            if (const char *env = std::getenv("FAULTLINE_SEED")) {
                try {
                    size_t used = 0;
                    o.seed = std::stoull(env, &used);
                    if (used != std::string(env).size()) throw std::invalid_argument(env);
                } catch (const std::logic_error &) {
                    throw UsageError(std::string("FAULTLINE_SEED is not an unsigned integer: ") + env);
                }
            }
        }

        json doc;
        doc["command"] = name;
        std::string csv;
        json result;
        if (name == "lattice-info") {
            result = cmd_lattice_info(o);
        } else if (name == "graph-info") {
            result = cmd_graph_info(o);
        } else if (name == "adjudicate") {
            result = cmd_adjudicate(o);
        } else if (name == "simulate") {
            SimResult s = run_trials(sim_config(o));
            result = sim_json(s);
            csv = sweep_csv({s});
        } else if (name == "sweep") {
            SweepGrid grid{o.L_list, o.p_list, o.N, template_of(o), o.trials, o.seed, o.workers};
            auto rows = sweep(grid);
            json arr = json::array();
            for (const auto &s : rows) arr.push_back(sim_json(s));
            result["cells"] = arr;
            csv = sweep_csv(rows);
        } else if (name == "bounds") {
            result = cmd_bounds(o);
        } else if (name == "threshold") {
            result = cmd_threshold(o);
        } else if (name == "cost-benefit") {
            Table t = cmd_cost_benefit(o);
            result["rows"] = t.as_json();
            csv = t.csv();
        } else if (name == "methods-check") {
            result = cmd_methods_check(o);
        } else if (name == "enumerate") {
            Table t = cmd_enumerate(o);
            result["rows"] = t.as_json();
            csv = t.csv();
        } else if (name == "witness") {
            result = cmd_witness(o);
        } else if (name == "exclusion") {
            result = cmd_exclusion(o);
        } else if (name == "match") {
            result = cmd_match(o);
        }
        doc["config"] = cmd.config();
        doc["result"] = result;
        write_output(o, o.format == "csv" ? csv : doc.dump(2) + "\n", out);
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        if (e.get_exit_code() == 0) {
            std::ostringstream help_out, help_err;
            app.exit(e, help_out, help_err);
            out << help_out.str();
            return kExitOk;
        }
        err << error_line("usage", e.what());
        return kExitUsage;
    } catch (const UsageError &e) {
        err << error_line("usage", e.what());
        return kExitUsage;
    } catch (const DomainError &e) {
        err << error_line("domain", e.what());
        return kExitDomain;
    } catch (const json::exception &e) {
        err << error_line("domain", e.what());
        return kExitDomain;
    } catch (const std::exception &e) {
        err << error_line("domain", e.what());
        return kExitDomain;
    }
}

}  // namespace faultline::cli
