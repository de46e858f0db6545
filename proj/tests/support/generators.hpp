#pragma once

// Seeded random data for the property tests.

#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "parahiggs/bis_local.hpp"
#include "parahiggs/parabolic.hpp"

namespace gen {

using Rng = std::mt19937_64;

inline std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

/// Some p in [1, hi] coprime to n.
inline std::int64_t coprime_to(Rng& rng, std::int64_t n, std::int64_t hi = 97) {
    for (;;) {
        std::int64_t p = uniform(rng, 1, hi);
        if (std::gcd(p, n) == 1) return p;
    }
}

inline std::string label(std::size_t i) { return "D" + std::to_string(i + 1); }

/// Multiplicities at each puncture sum to rank.
inline parahiggs::WeightSystem weight_system(Rng& rng, std::int64_t n, std::size_t punctures, std::int64_t rank) {
    parahiggs::WeightSystem ws(n);
    for (std::size_t i = 0; i < punctures; ++i) {
        std::int64_t left = rank;
        while (left > 0) {
            std::int64_t mult = uniform(rng, 1, left);
            ws.add(label(i), parahiggs::Rational(uniform(rng, 0, n - 1), n), mult);
            left -= mult;
        }
    }
    return ws;
}

inline parahiggs::WeightSystem weight_system(Rng& rng, std::int64_t n) {
    return weight_system(rng, n, static_cast<std::size_t>(uniform(rng, 1, 3)), uniform(rng, 1, 4));
}

inline parahiggs::CharacterSystem character_system(Rng& rng, std::int64_t n) {
    parahiggs::CharacterSystem cs(n);
    auto points = uniform(rng, 1, 3);
    for (std::int64_t i = 0; i < points; ++i) {
        auto entries = uniform(rng, 1, 4);
        for (std::int64_t e = 0; e < entries; ++e)
            cs.add(label(static_cast<std::size_t>(i)), uniform(rng, 0, n - 1), uniform(rng, 1, 3));
    }
    return cs;
}

inline parahiggs::ParabolicShape shape(Rng& rng, std::int64_t n) {
    auto punctures = static_cast<std::size_t>(uniform(rng, 0, 3));
    auto rank = uniform(rng, 1, 4);
    parahiggs::WeightSystem ws = weight_system(rng, n, punctures, rank);
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < punctures; ++i) labels.push_back(label(i));
    return parahiggs::ParabolicShape(parahiggs::CurveShape(uniform(rng, 0, 3), labels, n), rank,
                                     parahiggs::Integer(uniform(rng, -20, 20)), ws);
}

/// Strictly upper triangular U conjugated by a unit lower triangular S with
/// small integer entries; S^-1 is computed by forward substitution.
inline parahiggs::RationalMatrix nilpotent(Rng& rng, std::size_t s) {
    using parahiggs::RationalMatrix;
    RationalMatrix u(s, s), lower = RationalMatrix::identity(s);
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < s; ++j) {
            if (j > i) u(i, j) = uniform(rng, -3, 3);
            if (j < i) lower(i, j) = uniform(rng, -2, 2);
        }
    RationalMatrix inv = RationalMatrix::identity(s);
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < i; ++j) {
            parahiggs::Rational acc = 0;
            for (std::size_t k = j; k < i; ++k) acc += lower(i, k) * inv(k, j);
            inv(i, j) = -acc;
        }
    return lower * u * inv;
}

inline parahiggs::RationalMatrix integer_matrix(Rng& rng, std::size_t r, std::size_t c) {
    parahiggs::RationalMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = uniform(rng, -4, 4);
    return m;
}

/// Total size at most max_dim; levels strictly increasing in [0, N-1].
inline parahiggs::ResidueBlockAssembly assembly(Rng& rng, std::size_t max_dim) {
    parahiggs::ResidueBlockAssembly a;
    a.n = uniform(rng, 1, 12);
    a.lambda = parahiggs::Rational(uniform(rng, -5, 5), uniform(rng, 1, 4));
    std::size_t dim = 0;
    for (std::int64_t m = 0; m < a.n && dim < max_dim; ++m) {
        if (uniform(rng, 0, 2) == 0 && !(m == a.n - 1 && a.blocks.empty())) continue;
        auto s = static_cast<std::size_t>(uniform(rng, 1, static_cast<std::int64_t>(std::min<std::size_t>(4, max_dim - dim))));
        a.blocks.push_back({m, nilpotent(rng, s)});
        dim += s;
    }
    for (std::size_t i = 0; i < a.blocks.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (uniform(rng, 0, 1) == 1) a.lower_blocks[{i, j}] = integer_matrix(rng, a.blocks[i].size(), a.blocks[j].size());
    return a;
}

} // namespace gen
