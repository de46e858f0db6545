#pragma once

// Command-line frontend. run() is pure apart from reading --input files:
// it returns what would be written to stdout/stderr and the exit code
// (0 ok, 1 domain error, 2 usage error), so identical arguments always give
// byte-identical results.

#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "parahiggs/bis_local.hpp"
#include "parahiggs/flow.hpp"
#include "parahiggs/parabolic.hpp"
#include "parahiggs/serialize.hpp"

namespace parahiggs::cli {

using io::json;

struct CommandResult {
    int exit_code = 0;
    std::string out;
    std::string err;
};

class UsageError : public std::runtime_error {
public:
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

enum class Format { json, csv, table };

/// What a command produced, in each emission form it supports. Empty
/// table/csv fall back to a generic rendering of a flat JSON object.
struct Emission {
    Emission() = default;
    Emission(json d) : doc(std::move(d)) {}

    json doc;
    std::string table;
    std::string csv;
    bool prefers_table = false;
};

inline std::string scalar_text(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

inline bool is_flat(const json& j) {
    if (!j.is_object()) return false;
    for (const auto& [k, v] : j.items())
        if (v.is_structured()) return false;
    return true;
}

inline std::string render(const Emission& e, Format f) {
    switch (f) {
    case Format::json: return e.doc.dump() + "\n";
    case Format::table:
        if (!e.table.empty()) return e.table;
        if (is_flat(e.doc)) {
            std::string out;
            for (const auto& [k, v] : e.doc.items()) out += k + ": " + scalar_text(v) + "\n";
            return out;
        }
        return e.doc.dump(2) + "\n";
    case Format::csv:
        if (!e.csv.empty()) return e.csv;
        if (is_flat(e.doc)) {
            std::string head, row;
            for (const auto& [k, v] : e.doc.items()) {
                head += (head.empty() ? "" : ",") + k;
                row += (row.empty() ? "" : ",") + scalar_text(v);
            }
            return head + "\n" + row + "\n";
        }
        throw UsageError("csv output is not available for this command");
    }
    return {};
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open input file " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw DomainError("invalid JSON in " + path + ": " + e.what());
    }
}

inline Emission weights_emission(const WeightSystem& ws) {
    Emission e;
    e.doc = io::to_json(ws);
    e.table = io::format_weights(ws) + "\n";
    e.csv = "puncture,weight,mult\n";
    for (const auto& [label, entries] : ws.punctures())
        for (const auto& [w, m] : entries) e.csv += label + "," + io::format_weight(ws, w) + "," + std::to_string(m) + "\n";
    e.prefers_table = true;
    return e;
}

inline Emission characters_emission(const CharacterSystem& cs) {
    Emission e;
    e.doc = io::to_json(cs);
    e.table = io::format_characters(cs) + "\n";
    e.csv = "point,char,mult\n";
    for (const auto& [label, entries] : cs.points())
        for (const auto& [c, m] : entries) e.csv += label + "," + std::to_string(c) + "," + std::to_string(m) + "\n";
    e.prefers_table = true;
    return e;
}

inline std::string state_text(const WeightSystem& ws) { return io::format_weights(ws); }
inline std::string state_text(const ParabolicShape& s) {
    return "deg0=" + s.deg0().str() + " " + io::format_weights(s.weights());
}

template <class State>
Emission trajectory_emission(const FlowTrajectory<State>& t) {
    Emission e;
    e.doc = io::to_json(t);
    e.csv = "step,state\n";
    for (std::size_t i = 0; i < t.states.size(); ++i) {
        e.table += "step " + std::to_string(i) + ": " + state_text(t.states[i]) + "\n";
        e.csv += std::to_string(i) + "," + state_text(t.states[i]) + "\n";
    }
    e.table += "terminated: " + to_string(t.terminated) + "\n";
    if (t.period) e.table += "preperiod: " + std::to_string(t.preperiod) + "\nperiod: " + std::to_string(*t.period) + "\n";
    return e;
}

inline Emission scan_emission(const ScanResult& r) {
    Emission e;
    e.doc = io::to_json(r);
    e.csv = io::to_csv(r);
    std::ostringstream t;
    t << "N = " << r.n;
    if (r.global_bound) t << ", phi(N (N-2)!) = " << r.global_bound->str();
    t << "\n";
    char line[160];
    std::snprintf(line, sizeof line, "%8s %8s %12s %10s\n", "p", "period", "bound", "sum_mod_N");
    t << line;
    for (const auto& row : r.rows) {
        std::snprintf(line, sizeof line, "%8lld %8lld %12s %10lld\n", static_cast<long long>(row.p),
                      static_cast<long long>(row.period), row.bound.str().c_str(), static_cast<long long>(row.sum_mod_n));
        t << line;
    }
    e.table = t.str();
    return e;
}

/// Every option any subcommand may take; each leaf registers the ones it uses.
struct Options {
    std::string format;
    std::string input;
    bool trace = false;
    std::optional<std::int64_t> n, p, m, l, rank, genus;
    std::int64_t cap = 10000;
    std::int64_t pmax = 0;
    std::string x, deg0, degree, weights, chars, twists, lambda, levels, defects, claims;
};

} // namespace detail

inline CommandResult run(std::vector<std::string> args) {
    using namespace detail;
    CommandResult result;
    Options o;
    std::ostringstream err;

    CLI::App app{"Exact invariants of periodic parabolic Higgs-de Rham flows", "parahiggs"};
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::help);

    auto common = [&](CLI::App* sub) {
        sub->add_option("--format", o.format, "Output form")->check(CLI::IsMember({"json", "csv", "table"}));
    };
    auto opt_n = [&](CLI::App* sub) { sub->add_option("--N", o.n, "Weight denominator / group order N"); };
    auto opt_p = [&](CLI::App* sub) { sub->add_option("--p", o.p, "Characteristic p (a unit mod N)")->required(); };
    auto opt_input = [&](CLI::App* sub, const char* what) { sub->add_option("--input", o.input, what); };
    auto opt_weights = [&](CLI::App* sub) {
        sub->add_option("--weights", o.weights, "Inline weights, e.g. D1:1/5x2,2/5x1;D2:0x3");
    };
    auto opt_trace = [&](CLI::App* sub) { sub->add_flag("--trace", o.trace, "Print orbit states to stderr"); };

    auto* frac = app.add_subcommand("frac", "Fractional part of a rational");
    frac->add_option("--x", o.x, "Rational number n or n/d")->required();
    common(frac);

    auto shape_options = [&](CLI::App* sub) {
        sub->add_option("--rank", o.rank, "Rank");
        sub->add_option("--deg0", o.deg0, "Degree of the zeroth filtration piece");
        sub->add_option("--genus", o.genus, "Genus of the curve (default 0)");
        opt_n(sub);
        opt_weights(sub);
        opt_input(sub, "ParabolicShape JSON file");
    };

    auto* pardeg_cmd = app.add_subcommand("pardeg", "Parabolic degree of a shape");
    shape_options(pardeg_cmd);
    common(pardeg_cmd);

    auto* linebundle = app.add_subcommand("linebundle", "Shape of a rationally twisted line bundle");
    linebundle->add_option("--degree", o.degree, "Degree of the underlying line bundle")->required();
    linebundle->add_option("--twists", o.twists, "Inline twists, e.g. D1:3/2;D2:-1/4")->required();
    opt_n(linebundle);
    common(linebundle);

    auto* weights_cmd = app.add_subcommand("weights", "Weight maps of the (inverse) Cartier transform");
    weights_cmd->require_subcommand(1);
    auto* icartier = weights_cmd->add_subcommand("icartier", "m/N -> <p m / N>");
    auto* cartier = weights_cmd->add_subcommand("cartier", "m/N -> <D m / N>, p D = 1 mod N");
    for (auto* sub : {icartier, cartier}) {
        opt_n(sub);
        opt_p(sub);
        opt_weights(sub);
        opt_input(sub, "WeightSystem JSON file");
        common(sub);
    }

    auto* flow_cmd = app.add_subcommand("flow", "Orbit of the flow on weights or shapes");
    flow_cmd->require_subcommand(1);
    auto* flow_weights = flow_cmd->add_subcommand("weights", "Iterate the inverse Cartier weight map");
    opt_n(flow_weights);
    opt_weights(flow_weights);
    opt_input(flow_weights, "WeightSystem JSON file");
    auto* flow_shape = flow_cmd->add_subcommand("shape", "Iterate the flow on (weights, deg0)");
    shape_options(flow_shape);
    for (auto* sub : {flow_weights, flow_shape}) {
        opt_p(sub);
        sub->add_option("--cap", o.cap, "Maximum number of steps")->check(CLI::PositiveNumber);
        opt_trace(sub);
        common(sub);
    }

    auto* period = app.add_subcommand("period", "Period computations and bounds");
    period->require_subcommand(1);
    auto* bound = period->add_subcommand("bound", "f = phi(N d^(k+1)) with N | 1 + p + ... + p^(f-1)");
    bound->add_option("--N", o.n, "N")->required();
    opt_p(bound);
    auto* minimal = period->add_subcommand("minimal", "Least f with N | l (1 + p + ... + p^(f-1))");
    minimal->add_option("--N", o.n, "N")->required();
    opt_p(minimal);
    minimal->add_option("--l", o.l, "Equivariance defect l in [0, N)")->required();
    auto* equivariance = period->add_subcommand("equivariance", "Least f clearing every defect at once");
    equivariance->add_option("--N", o.n, "N")->required();
    opt_p(equivariance);
    equivariance->add_option("--defects", o.defects, "Comma separated defects, e.g. 4,6")->required();
    auto* global = period->add_subcommand("global", "phi(N (N-2)!)");
    global->add_option("--N", o.n, "N >= 2")->required();
    auto* rankone = period->add_subcommand("rankone", "Period of a torsion line bundle of order m");
    rankone->add_option("--m", o.m, "Torsion order m")->required();
    opt_p(rankone);
    for (auto* sub : {bound, minimal, equivariance, global, rankone}) common(sub);

    auto* scan = app.add_subcommand("scan", "Minimal weight period for every prime up to --pmax");
    shape_options(scan);
    scan->add_option("--pmax", o.pmax, "Largest prime scanned")->required();
    common(scan);

    auto* bis = app.add_subcommand("bis", "Character / weight dictionary at a branch point");
    bis->require_subcommand(1);
    auto* push = bis->add_subcommand("push", "Characters -> weights <-c/N>");
    auto* pull = bis->add_subcommand("pull", "Weights -> characters -m mod N");
    auto* frob = bis->add_subcommand("frob", "Frobenius pullback c -> p c");
    for (auto* sub : {push, frob}) {
        opt_n(sub);
        sub->add_option("--chars", o.chars, "Inline characters, e.g. P:1x2,3x1");
        opt_input(sub, "CharacterSystem JSON file");
    }
    opt_n(pull);
    opt_weights(pull);
    opt_input(pull, "WeightSystem JSON file");
    opt_p(frob);
    for (auto* sub : {push, pull, frob}) common(sub);

    auto* residue = app.add_subcommand("residue", "Residue eigenvalue laws");
    residue->require_subcommand(1);
    auto* assemble = residue->add_subcommand("assemble", "Pushforward residue of a block assembly");
    assemble->add_option("--input", o.input, "ResidueBlockAssembly JSON file")->required();
    auto* pullback = residue->add_subcommand("pullback", "Pullback residue eigenvalues");
    pullback->add_option("--N", o.n, "N")->required();
    pullback->add_option("--lambda", o.lambda, "lambda")->required();
    pullback->add_option("--levels", o.levels, "Levels m x size, e.g. 2x1,4x3")->required();
    for (auto* sub : {assemble, pullback}) common(sub);

    auto* adjusted = app.add_subcommand("adjusted", "Adjustedness of claimed residues");
    adjusted->require_subcommand(1);
    auto* check = adjusted->add_subcommand("check", "Residue acts on weight w by lambda w");
    check->add_option("--lambda", o.lambda, "lambda")->required();
    check->add_option("--claims", o.claims, "Inline claims, e.g. D:1/3=1/3,1/2=1/2");
    opt_input(check, "JSON {label: [{weight, eigenvalue}]}");
    common(check);

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        std::ostringstream out, errs;
        int code = app.exit(e, out, errs);
        result.exit_code = code == 0 ? 0 : 2;
        result.out = out.str();
        result.err = errs.str();
        return result;
    }

    auto require_n = [&]() -> std::int64_t {
        if (!o.n) throw UsageError("--N is required");
        return *o.n;
    };
    auto warn_composite = [&](std::int64_t p) {
        if (!is_prime(p < 0 ? -p : p))
            err << "warning: p = " << p << " is not prime; it is used only as a unit mod N\n";
    };
    auto load_weights = [&]() -> WeightSystem {
        if (!o.input.empty()) {
            if (!o.weights.empty()) throw UsageError("give either --input or --weights, not both");
            WeightSystem ws = io::weight_system_from_json(read_json_file(o.input));
            if (o.n && *o.n != ws.denominator()) throw DomainError("--N disagrees with the input file's N");
            return ws;
        }
        if (o.weights.empty()) throw UsageError("--weights or --input is required");
        return io::parse_weights(o.weights, require_n());
    };
    auto load_characters = [&]() -> CharacterSystem {
        if (!o.input.empty()) {
            if (!o.chars.empty()) throw UsageError("give either --input or --chars, not both");
            CharacterSystem cs = io::character_system_from_json(read_json_file(o.input));
            if (o.n && *o.n != cs.order()) throw DomainError("--N disagrees with the input file's N");
            return cs;
        }
        if (o.chars.empty()) throw UsageError("--chars or --input is required");
        return io::parse_characters(o.chars, require_n());
    };
    auto load_shape = [&]() -> ParabolicShape {
        if (!o.input.empty()) {
            if (!o.weights.empty() || o.rank) throw UsageError("give either --input or inline shape options, not both");
            return io::shape_from_json(read_json_file(o.input));
        }
        if (!o.rank || o.deg0.empty()) throw UsageError("--rank and --deg0 (or --input) are required");
        WeightSystem ws = o.weights.empty() ? WeightSystem(require_n()) : io::parse_weights(o.weights, require_n());
        std::vector<std::string> labels;
        for (const auto& [label, entries] : ws.punctures()) labels.push_back(label);
        return ParabolicShape(CurveShape(o.genus.value_or(0), labels, ws.denominator()), *o.rank,
                              parse_integer(o.deg0), ws);
    };

    std::function<Emission()> command;
    if (frac->parsed()) {
        command = [&] { return Emission{{{"frac", io::rational_json(frac_part(parse_rational(o.x)))}}}; };
    } else if (pardeg_cmd->parsed()) {
        command = [&] {
            ParabolicShape s = load_shape();
            return Emission{{{"pardeg", io::rational_json(pardeg(s))},
                             {"pullback_degree", io::integer_json(pullback_degree(s, s.curve().denominator()))},
                             {"candidate", is_periodicity_candidate(s)}}};
        };
    } else if (linebundle->parsed()) {
        command = [&] {
            ParabolicLineBundleSpec lb{parse_integer(o.degree), io::parse_twists(o.twists)};
            std::optional<CurveShape> curve;
            if (o.n) {
                std::vector<std::string> labels;
                for (const auto& [label, g] : lb.twists) labels.push_back(label);
                curve = CurveShape(0, labels, *o.n);
            }
            ParabolicShape s = line_bundle_shape(lb, curve);
            Emission e{io::to_json(s)};
            e.table = "rank: 1\ndeg0: " + s.deg0().str() + "\nweights: " + io::format_weights(s.weights()) +
                      "\npardeg: " + to_string(pardeg(s)) + "\n";
            return e;
        };
    } else if (icartier->parsed() || cartier->parsed()) {
        command = [&] {
            warn_composite(*o.p);
            WeightSystem ws = load_weights();
            return weights_emission(icartier->parsed() ? inverse_cartier_weights(ws, *o.p) : cartier_weights(ws, *o.p));
        };
    } else if (flow_weights->parsed()) {
        command = [&] {
            warn_composite(*o.p);
            TraceFn<WeightSystem> trace;
            if (o.trace) trace = [&](std::size_t i, const WeightSystem& s) { err << "step " << i << ": " << state_text(s) << "\n"; };
            auto t = weight_orbit(load_weights(), *o.p, o.cap, trace);
            if (t.terminated == Termination::cap_reached)
                throw ConsistencyError("weight orbit did not close within " + std::to_string(o.cap) + " steps");
            return trajectory_emission(t);
        };
    } else if (flow_shape->parsed()) {
        command = [&] {
            warn_composite(*o.p);
            TraceFn<ParabolicShape> trace;
            if (o.trace) trace = [&](std::size_t i, const ParabolicShape& s) { err << "step " << i << ": " << state_text(s) << "\n"; };
            ParabolicShape s = load_shape();
            auto t = flow_trajectory(s, *o.p, o.cap, trace);
            Emission e = trajectory_emission(t);
            if (t.terminated == Termination::never_periodic) {
                e.doc["reason"] = "pardeg = " + to_string(pardeg(s)) + " is nonzero and is multiplied by p at every step";
                e.table += "reason: " + e.doc["reason"].get<std::string>() + "\n";
            }
            return e;
        };
    } else if (bound->parsed()) {
        command = [&] {
            warn_composite(*o.p);
            Integer f = katz_period_bound(*o.n, *o.p);
            return Emission{{{"f", io::integer_json(f)}, {"sum_mod_N", geometric_sum_mod(*o.p, f, *o.n)}}};
        };
    } else if (minimal->parsed()) {
        command = [&] {
            warn_composite(*o.p);
            return Emission{{{"period", minimal_geometric_period(*o.n, *o.p, *o.l)}}};
        };
    } else if (equivariance->parsed()) {
        command = [&] {
            warn_composite(*o.p);
            EquivarianceDefects d{*o.n, io::parse_integer_list(o.defects)};
            return Emission{{{"period", minimal_equivariance_period(d, *o.p)}}};
        };
    } else if (global->parsed()) {
        command = [&] { return Emission{{{"bound", io::integer_json(global_period_bound(*o.n))}}}; };
    } else if (rankone->parsed()) {
        command = [&] {
            warn_composite(*o.p);
            return Emission{{{"period", rank_one_period(*o.m, *o.p)}}};
        };
    } else if (scan->parsed()) {
        command = [&] {
            bool shape_given = o.rank.has_value();
            if (!o.input.empty()) shape_given = read_json_file(o.input).contains("rank");
            return scan_emission(shape_given ? prime_scan(load_shape(), o.pmax) : prime_scan(load_weights(), o.pmax));
        };
    } else if (push->parsed()) {
        command = [&] { return weights_emission(chars_to_weights(load_characters())); };
    } else if (pull->parsed()) {
        command = [&] { return characters_emission(weights_to_chars(load_weights())); };
    } else if (frob->parsed()) {
        command = [&] {
            warn_composite(*o.p);
            return characters_emission(frobenius_on_chars(load_characters(), *o.p));
        };
    } else if (assemble->parsed()) {
        command = [&] {
            auto r = assemble_pushforward_residue(io::assembly_from_json(read_json_file(o.input)));
            json eig = json::array(), poly = json::array();
            for (const auto& v : r.eigenvalues) eig.push_back(to_string(v));
            for (const auto& c : r.charpoly.coefficients()) poly.push_back(to_string(c));
            Emission e{{{"matrix", io::to_json(r.matrix)}, {"charpoly", poly}, {"eigenvalues", eig}}};
            e.csv = "eigenvalue\n";
            for (const auto& v : r.eigenvalues) e.csv += to_string(v) + "\n";
            return e;
        };
    } else if (pullback->parsed()) {
        command = [&] {
            auto eig = pullback_residue_eigenvalues(io::parse_levels(o.levels), parse_rational(o.lambda), *o.n);
            json arr = json::array();
            bool zero = true;
            for (const auto& v : eig) {
                arr.push_back(to_string(v));
                zero = zero && v == 0;
            }
            return Emission{{{"eigenvalues", arr}, {"all_zero", zero}}};
        };
    } else if (check->parsed()) {
        command = [&] {
            ResidueClaims claims;
            if (!o.input.empty()) {
                if (!o.claims.empty()) throw UsageError("give either --input or --claims, not both");
                for (const auto& [label, arr] : read_json_file(o.input).items())
                    for (const auto& c : arr)
                        claims[label].emplace_back(io::rational_from_json(io::field(c, "weight")),
                                                   io::rational_from_json(io::field(c, "eigenvalue")));
            } else {
                if (o.claims.empty()) throw UsageError("--claims or --input is required");
                claims = io::parse_claims(o.claims);
            }
            auto report = check_adjusted(claims, parse_rational(o.lambda));
            json v = json::array();
            for (const auto& x : report.violations)
                v.push_back({{"puncture", x.puncture},
                             {"weight", to_string(x.weight)},
                             {"eigenvalue", to_string(x.eigenvalue)},
                             {"expected", to_string(x.expected)}});
            Emission e{{{"adjusted", report.adjusted}, {"violations", v}}};
            e.table = std::string("adjusted: ") + (report.adjusted ? "true" : "false") + "\n";
            for (const auto& x : report.violations)
                e.table += "violation at " + x.puncture + ": weight " + to_string(x.weight) + " has eigenvalue " +
                           to_string(x.eigenvalue) + ", expected " + to_string(x.expected) + "\n";
            return e;
        };
    }

    try {
        Emission e = command();
        Format f = e.prefers_table ? Format::table : Format::json;
        if (o.format == "json") f = Format::json;
        if (o.format == "csv") f = Format::csv;
        if (o.format == "table") f = Format::table;
        result.out = render(e, f);
        result.exit_code = 0;
    } catch (const UsageError& e) {
        result.exit_code = 2;
        err << "error: " << e.what() << "\n" << app.help();
    } catch (const DomainError& e) {
        result.exit_code = 1;
        result.out = json{{"error", e.what()}}.dump() + "\n";
    } catch (const ConsistencyError& e) {
        result.exit_code = 1;
        result.out = json{{"error", std::string("internal consistency failure: ") + e.what()}}.dump() + "\n";
    }
    result.err = err.str();
    return result;
}

} // namespace parahiggs::cli
