#pragma once

// The local dictionary at a branch point of an order-N cyclic cover: a
// G-equivariant bundle upstairs is recorded by the characters c by which the
// generator acts (sigma e = zeta^c e); the invariant pushforward carries the
// parabolic weight <-c/N>. Residue laws for pushforward and pullback of a
// lambda-connection are checked on explicit block matrices.

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "parahiggs/arith.hpp"
#include "parahiggs/matrix.hpp"
#include "parahiggs/parabolic.hpp"

namespace parahiggs {

/// Per branch point, a multiset of characters of Z/N stored as residues in
/// [0, N).
class CharacterSystem {
public:
    using Multiset = std::map<std::int64_t, std::int64_t>;

    explicit CharacterSystem(std::int64_t n) : n_(n) {
        if (n_ < 1) throw DomainError("group order N must be >= 1");
    }

    std::int64_t order() const { return n_; }
    const std::map<std::string, Multiset>& points() const { return points_; }

    void add(const std::string& point, std::int64_t character, std::int64_t mult) {
        if (mult <= 0) throw DomainError("multiplicity must be positive at " + point);
        points_[point][floor_mod(character, n_)] += mult;
    }

    friend bool operator==(const CharacterSystem&, const CharacterSystem&) = default;

private:
    std::int64_t n_;
    std::map<std::string, Multiset> points_;
};

/// Character c corresponds to weight <-c/N>.
inline WeightSystem chars_to_weights(const CharacterSystem& cs) {
    const std::int64_t n = cs.order();
    WeightSystem ws(n);
    for (const auto& [label, entries] : cs.points())
        for (const auto& [c, mult] : entries) ws.add(label, Rational(floor_mod(-c, n), n), mult);
    return ws;
}

/// Weight m/N corresponds to character -m mod N.
inline CharacterSystem weights_to_chars(const WeightSystem& ws) {
    const std::int64_t n = ws.denominator();
    CharacterSystem cs(n);
    for (const auto& [label, entries] : ws.punctures())
        for (const auto& [w, mult] : entries) cs.add(label, floor_mod(-ws.numerator_of(w), n), mult);
    return cs;
}

/// Frobenius pullback raises zeta^c to zeta^(pc).
inline CharacterSystem frobenius_on_chars(const CharacterSystem& cs, std::int64_t p) {
    detail::require_unit(p, cs.order());
    CharacterSystem out(cs.order());
    for (const auto& [label, entries] : cs.points())
        for (const auto& [c, mult] : entries) out.add(label, mul_mod(p, c, cs.order()), mult);
    return out;
}

// ---------------------------------------------------------------------------
// Residues

struct ResidueBlock {
    std::int64_t level = 0; // m_i
    RationalMatrix residue; // nilpotent, size s_i x s_i

    std::size_t size() const { return residue.rows(); }
    friend bool operator==(const ResidueBlock&, const ResidueBlock&) = default;
};

/// Diagonal blocks ordered by strictly increasing level, plus arbitrary
/// blocks strictly below the diagonal keyed by (row block, column block).
/// Absent lower blocks are zero.
struct ResidueBlockAssembly {
    std::int64_t n = 1;
    Rational lambda = 0;
    std::vector<ResidueBlock> blocks;
    std::map<std::pair<std::size_t, std::size_t>, RationalMatrix> lower_blocks;

    std::size_t dimension() const {
        std::size_t d = 0;
        for (const auto& b : blocks) d += b.size();
        return d;
    }

    void validate() const {
        if (n < 1) throw DomainError("N must be >= 1");
        for (std::size_t i = 0; i < blocks.size(); ++i) {
            const auto& b = blocks[i];
            if (b.level < 0 || b.level > n - 1)
                throw DomainError("level " + std::to_string(b.level) + " outside [0, N-1]");
            if (i > 0 && blocks[i - 1].level >= b.level) throw DomainError("levels must be strictly increasing");
            if (b.size() == 0 || !b.residue.square()) throw DomainError("diagonal residue must be a nonempty square matrix");
            if (!b.residue.is_nilpotent())
                throw DomainError("diagonal residue of block " + std::to_string(i) + " is not nilpotent");
        }
        for (const auto& [key, m] : lower_blocks) {
            auto [i, j] = key;
            if (i >= blocks.size() || j >= i) throw DomainError("lower block index must satisfy row > column");
            if (m.rows() != blocks[i].size() || m.cols() != blocks[j].size())
                throw DomainError("lower block has the wrong shape");
        }
    }

    friend bool operator==(const ResidueBlockAssembly&, const ResidueBlockAssembly&) = default;
};

struct PushforwardResidue {
    RationalMatrix matrix;
    Polynomial charpoly;
    std::vector<Rational> eigenvalues; // ascending, with multiplicity
};

/// Residue of the pushforward lambda-connection in the basis y^(m_i) e_i:
/// block lower-triangular with diagonal blocks res_i + (lambda m_i / N) I.
/// Eigenvalues are read off the exact characteristic polynomial; anything
/// other than {lambda m_i / N with multiplicity s_i} raises ConsistencyError.
inline PushforwardResidue assemble_pushforward_residue(const ResidueBlockAssembly& assembly) {
    assembly.validate();
    const std::size_t dim = assembly.dimension();
    PushforwardResidue out;
    out.matrix = RationalMatrix(dim, dim);

    std::vector<std::size_t> offset;
    std::size_t acc = 0;
    for (const auto& b : assembly.blocks) {
        offset.push_back(acc);
        acc += b.size();
    }
    std::map<Rational, std::size_t> expected;
    for (std::size_t k = 0; k < assembly.blocks.size(); ++k) {
        const auto& b = assembly.blocks[k];
        const Rational shift = assembly.lambda * Rational(b.level, assembly.n);
        expected[shift] += b.size();
        for (std::size_t i = 0; i < b.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j)
                out.matrix(offset[k] + i, offset[k] + j) = b.residue(i, j) + (i == j ? shift : Rational(0));
    }
    for (const auto& [key, m] : assembly.lower_blocks)
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j)
                out.matrix(offset[key.first] + i, offset[key.second] + j) = m(i, j);

    out.charpoly = characteristic_polynomial(out.matrix);

    Polynomial rest = out.charpoly;
    for (const auto& [value, count] : expected) {
        std::size_t found = 0;
        for (;;) {
            auto [q, r] = rest.divide_linear(value);
            if (r != 0 || rest.degree() < 1) break;
            rest = std::move(q);
            ++found;
        }
        if (found != count)
            throw ConsistencyError("eigenvalue " + to_string(value) + " has multiplicity " + std::to_string(found) +
                                   " in the characteristic polynomial, expected " + std::to_string(count));
        out.eigenvalues.insert(out.eigenvalues.end(), found, value);
    }
    if (rest != Polynomial({Rational(1)}))
        throw ConsistencyError("characteristic polynomial has roots outside {lambda m_i / N}");
    return out;
}

/// Eigenvalues -lambda m + N lambda (m / N) of the pullback residue, one per
/// basis vector at each level (m, s).
inline std::vector<Rational> pullback_residue_eigenvalues(const std::vector<std::pair<std::int64_t, std::int64_t>>& levels,
                                                          const Rational& lambda, std::int64_t n) {
    if (n < 1) throw DomainError("N must be >= 1");
    std::vector<Rational> out;
    for (const auto& [m, s] : levels) {
        if (m < 0 || m > n - 1) throw DomainError("level " + std::to_string(m) + " outside [0, N-1]");
        if (s < 1) throw DomainError("level size must be positive");
        Rational e = -lambda * m + Rational(n) * lambda * Rational(m, n);
        out.insert(out.end(), static_cast<std::size_t>(s), e);
    }
    return out;
}

struct AdjustedViolation {
    std::string puncture;
    Rational weight;
    Rational eigenvalue;
    Rational expected;
    friend bool operator==(const AdjustedViolation&, const AdjustedViolation&) = default;
};

struct AdjustedReport {
    bool adjusted = true;
    std::vector<AdjustedViolation> violations;
};

using ResidueClaims = std::map<std::string, std::vector<std::pair<Rational, Rational>>>;

/// The residue must act on the weight-w graded piece by lambda w.
inline AdjustedReport check_adjusted(const ResidueClaims& claims, const Rational& lambda) {
    AdjustedReport report;
    for (const auto& [label, pairs] : claims)
        for (const auto& [w, e] : pairs) {
            if (w < 0 || w >= 1) throw DomainError("weight " + to_string(w) + " outside [0, 1)");
            Rational want = lambda * w;
            if (e != want) report.violations.push_back({label, w, e, want});
        }
    report.adjusted = report.violations.empty();
    return report;
}

} // namespace parahiggs
