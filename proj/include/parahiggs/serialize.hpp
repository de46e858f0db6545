#pragma once

// Canonical text forms. JSON objects use sorted keys (nlohmann's default
// std::map), punctures come out sorted by label and multiset entries by
// weight. Rationals are strings; integers are JSON numbers when they fit in
// 64 bits and decimal strings otherwise. No floating point is ever emitted.
//
// Inline grammar (whitespace-insensitive):
//   weights     D1:1/5x2,2/5x1;D2:0x3
//   characters  P:1x2,3x1
//   twists      D1:3/2;D2:-1/4
//   claims      D:1/3=1/3,1/2=1/2
//   levels      2x1,4x3

#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "parahiggs/bis_local.hpp"
#include "parahiggs/flow.hpp"
#include "parahiggs/parabolic.hpp"

namespace parahiggs::io {

using json = nlohmann::json;

inline json integer_json(const Integer& x) {
    if (x <= std::numeric_limits<std::int64_t>::max() && x >= std::numeric_limits<std::int64_t>::min())
        return json(static_cast<std::int64_t>(x));
    return json(x.str());
}

inline Integer integer_from_json(const json& j) {
    if (j.is_number_integer()) return Integer(j.get<std::int64_t>());
    if (j.is_string()) return parse_integer(j.get<std::string>());
    throw DomainError("expected an integer, got " + j.dump());
}

inline std::int64_t int64_from_json(const json& j) { return to_int64(integer_from_json(j)); }

inline json rational_json(const Rational& x) { return json(to_string(x)); }

inline Rational rational_from_json(const json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    throw DomainError("expected an exact rational string, got " + j.dump());
}

/// A weight written over the system denominator, "m/N".
inline std::string format_weight(const WeightSystem& ws, const Rational& w) {
    return std::to_string(ws.numerator_of(w)) + "/" + std::to_string(ws.denominator());
}

inline const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw DomainError(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

// ---------------------------------------------------------------------------
// JSON

inline json to_json(const WeightSystem& ws) {
    json punctures = json::object();
    for (const auto& [label, entries] : ws.punctures()) {
        json arr = json::array();
        for (const auto& [w, m] : entries) arr.push_back({{"weight", format_weight(ws, w)}, {"mult", m}});
        punctures[label] = std::move(arr);
    }
    return {{"N", ws.denominator()}, {"punctures", std::move(punctures)}};
}

inline WeightSystem weight_system_from_json(const json& j) {
    WeightSystem ws(int64_from_json(field(j, "N")));
    for (const auto& [label, arr] : field(j, "punctures").items()) {
        if (!arr.is_array()) throw DomainError("entries at " + label + " must be an array");
        for (const auto& e : arr) ws.add(label, rational_from_json(field(e, "weight")), int64_from_json(field(e, "mult")));
    }
    return ws;
}

inline json to_json(const CurveShape& c) {
    return {{"genus", c.genus()}, {"punctures", c.punctures()}, {"N", c.denominator()}};
}

inline CurveShape curve_from_json(const json& j) {
    std::vector<std::string> labels;
    for (const auto& l : field(j, "punctures")) labels.push_back(l.get<std::string>());
    return CurveShape(int64_from_json(field(j, "genus")), std::move(labels), int64_from_json(field(j, "N")));
}

inline json to_json(const ParabolicShape& s) {
    return {{"curve", to_json(s.curve())}, {"rank", s.rank()}, {"deg0", integer_json(s.deg0())}, {"weights", to_json(s.weights())}};
}

inline ParabolicShape shape_from_json(const json& j) {
    return ParabolicShape(curve_from_json(field(j, "curve")), int64_from_json(field(j, "rank")),
                          integer_from_json(field(j, "deg0")), weight_system_from_json(field(j, "weights")));
}

inline json to_json(const CharacterSystem& cs) {
    json points = json::object();
    for (const auto& [label, entries] : cs.points()) {
        json arr = json::array();
        for (const auto& [c, m] : entries) arr.push_back({{"char", c}, {"mult", m}});
        points[label] = std::move(arr);
    }
    return {{"N", cs.order()}, {"points", std::move(points)}};
}

inline CharacterSystem character_system_from_json(const json& j) {
    CharacterSystem cs(int64_from_json(field(j, "N")));
    for (const auto& [label, arr] : field(j, "points").items()) {
        if (!arr.is_array()) throw DomainError("entries at " + label + " must be an array");
        for (const auto& e : arr) {
            auto c = int64_from_json(field(e, "char"));
            if (c < 0 || c >= cs.order()) throw DomainError("character " + std::to_string(c) + " outside [0, N)");
            cs.add(label, c, int64_from_json(field(e, "mult")));
        }
    }
    return cs;
}

inline json to_json(const RationalMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline RationalMatrix matrix_from_json(const json& j) {
    if (!j.is_array()) throw DomainError("matrix must be an array of rows");
    std::vector<std::vector<Rational>> rows;
    for (const auto& r : j) {
        if (!r.is_array()) throw DomainError("matrix row must be an array");
        std::vector<Rational> row;
        for (const auto& x : r) row.push_back(rational_from_json(x));
        rows.push_back(std::move(row));
    }
    return RationalMatrix::from_rows(rows);
}

inline json to_json(const ResidueBlockAssembly& a) {
    json blocks = json::array();
    for (const auto& b : a.blocks) blocks.push_back({{"level", b.level}, {"residue", to_json(b.residue)}});
    json lower = json::array();
    for (const auto& [key, m] : a.lower_blocks)
        lower.push_back({{"row", key.first}, {"col", key.second}, {"matrix", to_json(m)}});
    return {{"N", a.n}, {"lambda", rational_json(a.lambda)}, {"blocks", std::move(blocks)}, {"lower_blocks", std::move(lower)}};
}

inline ResidueBlockAssembly assembly_from_json(const json& j) {
    ResidueBlockAssembly a;
    a.n = int64_from_json(field(j, "N"));
    a.lambda = rational_from_json(field(j, "lambda"));
    for (const auto& b : field(j, "blocks")) {
        ResidueBlock block{int64_from_json(field(b, "level")), matrix_from_json(field(b, "residue"))};
        if (b.contains("size") && int64_from_json(b.at("size")) != static_cast<std::int64_t>(block.size()))
            throw DomainError("block size disagrees with its residue matrix");
        a.blocks.push_back(std::move(block));
    }
    if (j.contains("lower_blocks"))
        for (const auto& lb : j.at("lower_blocks")) {
            auto row = static_cast<std::size_t>(int64_from_json(field(lb, "row")));
            auto col = static_cast<std::size_t>(int64_from_json(field(lb, "col")));
            a.lower_blocks[{row, col}] = matrix_from_json(field(lb, "matrix"));
        }
    a.validate();
    return a;
}

template <class State>
json to_json(const FlowTrajectory<State>& t) {
    json states = json::array();
    for (const auto& s : t.states) states.push_back(to_json(s));
    return {{"p", t.p},
            {"preperiod", t.preperiod},
            {"period", t.period ? json(*t.period) : json(nullptr)},
            {"terminated", to_string(t.terminated)},
            {"states", std::move(states)}};
}

inline json to_json(const ScanResult& r) {
    json rows = json::array();
    for (const auto& row : r.rows)
        rows.push_back({{"p", row.p}, {"period", row.period}, {"bound", integer_json(row.bound)}, {"sum_mod_N", row.sum_mod_n}});
    return {{"N", r.n}, {"global_bound", r.global_bound ? integer_json(*r.global_bound) : json(nullptr)}, {"rows", std::move(rows)}};
}

/// Header p,period,bound,sum_mod_N; LF line endings.
inline std::string to_csv(const ScanResult& r) {
    std::ostringstream out;
    out << "p,period,bound,sum_mod_N\n";
    for (const auto& row : r.rows) out << row.p << ',' << row.period << ',' << row.bound.str() << ',' << row.sum_mod_n << '\n';
    return out.str();
}

// ---------------------------------------------------------------------------
// Inline grammar

namespace detail {

inline std::string strip_spaces(std::string_view s) {
    std::string out;
    for (char c : s)
        if (c != ' ' && c != '\t' && c != '\n' && c != '\r') out.push_back(c);
    return out;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    parts.push_back(cur);
    return parts;
}

/// "label:body" groups separated by ';'.
inline std::vector<std::pair<std::string, std::string>> labelled_groups(std::string_view text) {
    std::vector<std::pair<std::string, std::string>> out;
    std::string s = strip_spaces(text);
    if (s.empty()) return out;
    for (const auto& group : split(s, ';')) {
        if (group.empty()) continue;
        auto colon = group.find(':');
        if (colon == std::string::npos || colon == 0) throw DomainError("expected 'label:entries' in '" + group + "'");
        out.emplace_back(group.substr(0, colon), group.substr(colon + 1));
    }
    return out;
}

/// "value x mult"; the multiplicity suffix is optional and defaults to 1.
inline std::pair<std::string, std::int64_t> value_times_mult(const std::string& entry) {
    if (entry.empty()) throw DomainError("empty entry");
    auto x = entry.rfind('x');
    if (x == std::string::npos) return {entry, 1};
    if (x == 0 || x + 1 == entry.size()) throw DomainError("malformed entry '" + entry + "'");
    return {entry.substr(0, x), to_int64(parse_integer(entry.substr(x + 1)))};
}

} // namespace detail

inline WeightSystem parse_weights(std::string_view text, std::int64_t n) {
    WeightSystem ws(n);
    for (const auto& [label, body] : detail::labelled_groups(text))
        for (const auto& entry : detail::split(body, ',')) {
            auto [w, mult] = detail::value_times_mult(entry);
            ws.add(label, parse_rational(w), mult);
        }
    return ws;
}

inline std::string format_weights(const WeightSystem& ws) {
    std::string out;
    for (const auto& [label, entries] : ws.punctures()) {
        if (!out.empty()) out += ';';
        out += label + ':';
        bool first = true;
        for (const auto& [w, m] : entries) {
            if (!first) out += ',';
            first = false;
            out += format_weight(ws, w) + 'x' + std::to_string(m);
        }
    }
    return out;
}

inline CharacterSystem parse_characters(std::string_view text, std::int64_t n) {
    CharacterSystem cs(n);
    for (const auto& [label, body] : detail::labelled_groups(text))
        for (const auto& entry : detail::split(body, ',')) {
            auto [c, mult] = detail::value_times_mult(entry);
            cs.add(label, to_int64(parse_integer(c)), mult);
        }
    return cs;
}

inline std::string format_characters(const CharacterSystem& cs) {
    std::string out;
    for (const auto& [label, entries] : cs.points()) {
        if (!out.empty()) out += ';';
        out += label + ':';
        bool first = true;
        for (const auto& [c, m] : entries) {
            if (!first) out += ',';
            first = false;
            out += std::to_string(c) + 'x' + std::to_string(m);
        }
    }
    return out;
}

inline std::map<std::string, Rational> parse_twists(std::string_view text) {
    std::map<std::string, Rational> out;
    for (const auto& [label, body] : detail::labelled_groups(text))
        if (!out.emplace(label, parse_rational(body)).second) throw DomainError("twist at " + label + " given twice");
    return out;
}

inline ResidueClaims parse_claims(std::string_view text) {
    ResidueClaims out;
    for (const auto& [label, body] : detail::labelled_groups(text))
        for (const auto& entry : detail::split(body, ',')) {
            auto eq = entry.find('=');
            if (eq == std::string::npos) throw DomainError("expected 'weight=eigenvalue' in '" + entry + "'");
            out[label].emplace_back(parse_rational(entry.substr(0, eq)), parse_rational(entry.substr(eq + 1)));
        }
    return out;
}

inline std::vector<std::pair<std::int64_t, std::int64_t>> parse_levels(std::string_view text) {
    std::vector<std::pair<std::int64_t, std::int64_t>> out;
    std::string s = detail::strip_spaces(text);
    if (s.empty()) return out;
    for (const auto& entry : detail::split(s, ',')) {
        auto [m, size] = detail::value_times_mult(entry);
        out.emplace_back(to_int64(parse_integer(m)), size);
    }
    return out;
}

inline std::vector<std::int64_t> parse_integer_list(std::string_view text) {
    std::vector<std::int64_t> out;
    std::string s = detail::strip_spaces(text);
    if (s.empty()) return out;
    for (const auto& entry : detail::split(s, ',')) out.push_back(to_int64(parse_integer(entry)));
    return out;
}

} // namespace parahiggs::io
