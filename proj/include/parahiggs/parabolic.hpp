#pragma once

// Invariant-level model of parabolic bundles on a marked curve: weights with
// multiplicities at each puncture, the degree of the zeroth filtration piece,
// and how the parabolic (inverse) Cartier transform moves them.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "parahiggs/arith.hpp"

namespace parahiggs {

/// Genus, marked points and the common weight denominator N.
class CurveShape {
public:
    CurveShape(std::int64_t genus, std::vector<std::string> punctures, std::int64_t denominator)
        : genus_(genus), punctures_(std::move(punctures)), denominator_(denominator) {
        if (genus_ < 0) throw DomainError("genus must be non-negative");
        if (denominator_ < 1) throw DomainError("denominator N must be >= 1");
        std::sort(punctures_.begin(), punctures_.end());
        if (std::adjacent_find(punctures_.begin(), punctures_.end()) != punctures_.end())
            throw DomainError("puncture labels must be pairwise distinct");
    }

    std::int64_t genus() const { return genus_; }
    const std::vector<std::string>& punctures() const { return punctures_; }
    std::int64_t denominator() const { return denominator_; }

    friend bool operator==(const CurveShape&, const CurveShape&) = default;
    friend auto operator<=>(const CurveShape&, const CurveShape&) = default;

private:
    std::int64_t genus_;
    std::vector<std::string> punctures_; // sorted
    std::int64_t denominator_;
};

/// Per-puncture multiset of weights in [0, 1) with denominators dividing N.
/// Weight 0 is an ordinary entry: multiplicities always add up to the rank.
class WeightSystem {
public:
    using Multiset = std::map<Rational, std::int64_t>;

    explicit WeightSystem(std::int64_t denominator) : denominator_(denominator) {
        if (denominator_ < 1) throw DomainError("denominator N must be >= 1");
    }

    std::int64_t denominator() const { return denominator_; }
    const std::map<std::string, Multiset>& punctures() const { return punctures_; }
    bool empty() const { return punctures_.empty(); }

    void add(const std::string& puncture, const Rational& weight, std::int64_t mult) {
        if (mult <= 0) throw DomainError("multiplicity must be positive at " + puncture);
        numerator_of(weight);
        punctures_[puncture][weight] += mult;
    }

    /// N * w, checking 0 <= w < 1 and that the denominator of w divides N.
    std::int64_t numerator_of(const Rational& w) const {
        if (w < 0 || w >= 1) throw DomainError("weight " + to_string(w) + " outside [0, 1)");
        Rational scaled = w * denominator_;
        if (!is_integer(scaled))
            throw DomainError("weight " + to_string(w) + " has denominator not dividing N = " +
                              std::to_string(denominator_));
        return to_int64(numerator(scaled));
    }

    std::int64_t total_multiplicity(const std::string& puncture) const {
        auto it = punctures_.find(puncture);
        if (it == punctures_.end()) return 0;
        std::int64_t total = 0;
        for (const auto& [w, m] : it->second) total += m;
        return total;
    }

    /// Elementwise image under w -> g(w); multiplicities of colliding images add.
    template <class F>
    WeightSystem transform(F&& g) const {
        WeightSystem out(denominator_);
        for (const auto& [label, entries] : punctures_)
            for (const auto& [w, m] : entries) out.add(label, g(w), m);
        return out;
    }

    friend bool operator==(const WeightSystem&, const WeightSystem&) = default;
    friend auto operator<=>(const WeightSystem& a, const WeightSystem& b) {
        if (auto c = a.denominator_ <=> b.denominator_; c != 0) return c;
        if (a.punctures_ < b.punctures_) return std::strong_ordering::less;
        if (b.punctures_ < a.punctures_) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

private:
    std::int64_t denominator_;
    std::map<std::string, Multiset> punctures_;
};

/// (rank, deg V_0, weights) on a curve: the discrete invariant of a parabolic
/// bundle.
class ParabolicShape {
public:
    ParabolicShape(CurveShape curve, std::int64_t rank, Integer deg0, WeightSystem weights)
        : curve_(std::move(curve)), rank_(rank), deg0_(std::move(deg0)), weights_(std::move(weights)) {
        if (rank_ < 1) throw DomainError("rank must be positive");
        if (weights_.denominator() != curve_.denominator())
            throw DomainError("weight system denominator differs from the curve's N");
        std::set<std::string> marked(curve_.punctures().begin(), curve_.punctures().end());
        for (const auto& [label, entries] : weights_.punctures())
            if (!marked.count(label)) throw DomainError("weights given at unmarked point " + label);
        for (const auto& label : curve_.punctures()) {
            auto total = weights_.total_multiplicity(label);
            if (total != rank_)
                throw DomainError("multiplicities at " + label + " sum to " + std::to_string(total) +
                                  ", expected rank " + std::to_string(rank_));
        }
    }

    /// All weights zero at every puncture.
    static ParabolicShape trivial(CurveShape curve, std::int64_t rank, Integer deg0) {
        WeightSystem ws(curve.denominator());
        for (const auto& label : curve.punctures()) ws.add(label, Rational(0), rank);
        return ParabolicShape(std::move(curve), rank, std::move(deg0), std::move(ws));
    }

    const CurveShape& curve() const { return curve_; }
    std::int64_t rank() const { return rank_; }
    const Integer& deg0() const { return deg0_; }
    const WeightSystem& weights() const { return weights_; }

    friend bool operator==(const ParabolicShape&, const ParabolicShape&) = default;
    friend auto operator<=>(const ParabolicShape& a, const ParabolicShape& b) {
        if (auto c = a.curve_ <=> b.curve_; c != 0) return c;
        if (auto c = a.rank_ <=> b.rank_; c != 0) return c;
        if (a.deg0_ != b.deg0_) return a.deg0_ < b.deg0_ ? std::strong_ordering::less : std::strong_ordering::greater;
        return a.weights_ <=> b.weights_;
    }

private:
    CurveShape curve_;
    std::int64_t rank_;
    Integer deg0_;
    WeightSystem weights_;
};

/// L(gamma_1 D_1 + ... ) for a line bundle L of the given degree; twists may
/// be any rationals.
struct ParabolicLineBundleSpec {
    Integer underlying_degree;
    std::map<std::string, Rational> twists;
};

// ---------------------------------------------------------------------------

/// deg V_0 + sum of weight * multiplicity.
inline Rational pardeg(const ParabolicShape& shape) {
    Rational total(shape.deg0());
    for (const auto& [label, entries] : shape.weights().punctures())
        for (const auto& [w, m] : entries) total += w * m;
    return total;
}

/// Degree of the pullback along a totally ramified cyclic cover of order N.
inline Integer pullback_degree(const ParabolicShape& shape, std::int64_t n) {
    if (n != shape.curve().denominator())
        throw DomainError("cover order " + std::to_string(n) + " differs from the curve's N = " +
                          std::to_string(shape.curve().denominator()));
    Rational d = pardeg(shape) * n;
    if (!is_integer(d)) throw DomainError("N * pardeg = " + to_string(d) + " is not an integer");
    return numerator(d);
}

/// Writing the twist as gamma = -alpha, V_0 = L(floor(gamma) D) and the
/// filtration jumps once, at frac(gamma).
inline ParabolicShape line_bundle_shape(const ParabolicLineBundleSpec& lb,
                                        const std::optional<CurveShape>& curve = std::nullopt) {
    CurveShape c = [&] {
        if (curve) return *curve;
        std::int64_t n = 1;
        std::vector<std::string> labels;
        for (const auto& [label, gamma] : lb.twists) {
            n = lcm(n, to_int64(denominator(gamma)));
            labels.push_back(label);
        }
        return CurveShape(0, labels, n);
    }();
    Integer deg0 = lb.underlying_degree;
    WeightSystem ws(c.denominator());
    for (const auto& [label, gamma] : lb.twists) {
        deg0 += floor(gamma);
        ws.add(label, frac_part(gamma), 1);
    }
    for (const auto& label : c.punctures())
        if (!lb.twists.count(label)) ws.add(label, Rational(0), 1);
    return ParabolicShape(std::move(c), 1, std::move(deg0), std::move(ws));
}

namespace detail {

inline void require_unit(std::int64_t p, std::int64_t n) {
    if (gcd(floor_mod(p, n), n) != 1 && n != 1)
        throw NotAUnit("p = " + std::to_string(p) + " is not coprime to N = " + std::to_string(n));
}

inline WeightSystem scale_weights(const WeightSystem& ws, std::int64_t factor) {
    const std::int64_t n = ws.denominator();
    return ws.transform([&](const Rational& w) {
        std::int64_t m = ws.numerator_of(w);
        return Rational(mul_mod(factor, m, n), n);
    });
}

} // namespace detail

/// Weights of the inverse Cartier transform: m/N -> <p m / N>.
inline WeightSystem inverse_cartier_weights(const WeightSystem& ws, std::int64_t p) {
    detail::require_unit(p, ws.denominator());
    return detail::scale_weights(ws, p);
}

/// Weights of the Cartier transform: m/N -> <D m / N> with p D = 1 mod N.
inline WeightSystem cartier_weights(const WeightSystem& ws, std::int64_t p) {
    detail::require_unit(p, ws.denominator());
    return detail::scale_weights(ws, mod_inverse(p, ws.denominator()));
}

/// One step of the flow on invariants. Grading keeps weights, the inverse
/// Cartier transform moves them; V_0 picks up p deg0 plus the carries
/// floor(p m / N), so that pardeg is multiplied by p.
inline ParabolicShape flow_step_shape(const ParabolicShape& shape, std::int64_t p) {
    const std::int64_t n = shape.curve().denominator();
    detail::require_unit(p, n);
    Integer deg0 = Integer(p) * shape.deg0();
    for (const auto& [label, entries] : shape.weights().punctures())
        for (const auto& [w, mult] : entries) {
            Integer carry = floor_div(Integer(p) * shape.weights().numerator_of(w), Integer(n));
            deg0 += carry * mult;
        }
    return ParabolicShape(shape.curve(), shape.rank(), std::move(deg0), inverse_cartier_weights(shape.weights(), p));
}

/// Only parabolic degree zero shapes can recur under the flow.
inline bool is_periodicity_candidate(const ParabolicShape& shape) { return pardeg(shape) == 0; }

} // namespace parahiggs
