#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "parahiggs/arith.hpp"

namespace parahiggs {

/// Dense row-major matrix over Q.
class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static RationalMatrix identity(std::size_t n) {
        RationalMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static RationalMatrix from_rows(const std::vector<std::vector<Rational>>& rows) {
        const std::size_t r = rows.size();
        const std::size_t c = r == 0 ? 0 : rows.front().size();
        RationalMatrix m(r, c);
        for (std::size_t i = 0; i < r; ++i) {
            if (rows[i].size() != c) throw DomainError("ragged matrix rows");
            for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool is_zero() const {
        for (const auto& x : data_)
            if (x != 0) return false;
        return true;
    }

    Rational trace() const {
        Rational t = 0;
        for (std::size_t i = 0; i < rows_ && i < cols_; ++i) t += (*this)(i, i);
        return t;
    }

    friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
        if (a.cols_ != b.rows_) throw DomainError("matrix dimension mismatch in product");
        RationalMatrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Rational& aik = a(i, k);
                if (aik == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
            }
        return c;
    }

    friend RationalMatrix operator+(RationalMatrix a, const RationalMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DomainError("matrix dimension mismatch in sum");
        for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
        return a;
    }

    friend RationalMatrix operator*(const Rational& s, RationalMatrix a) {
        for (auto& x : a.data_) x *= s;
        return a;
    }

    RationalMatrix power(std::size_t e) const {
        if (!square()) throw DomainError("power of a non-square matrix");
        RationalMatrix result = identity(rows_);
        RationalMatrix base = *this;
        while (e > 0) {
            if (e & 1u) result = result * base;
            e >>= 1;
            if (e > 0) base = base * base;
        }
        return result;
    }

    /// A^k = 0 for k = dimension (and hence for every larger k).
    bool is_nilpotent() const { return square() && (rows_ == 0 || power(rows_).is_zero()); }

    friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

/// Coefficients in ascending degree; no trailing zeros except for the zero
/// polynomial, which is empty.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    const std::vector<Rational>& coefficients() const { return coeffs_; }
    long degree() const { return static_cast<long>(coeffs_.size()) - 1; }

    Rational operator()(const Rational& x) const {
        Rational acc = 0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    /// Quotient and remainder of division by (x - root).
    std::pair<Polynomial, Rational> divide_linear(const Rational& root) const {
        if (coeffs_.empty()) return {Polynomial(), Rational(0)};
        std::vector<Rational> q(coeffs_.size() - 1);
        Rational carry = 0;
        for (std::size_t i = coeffs_.size(); i-- > 0;) {
            carry = carry * root + coeffs_[i];
            if (i > 0) q[i - 1] = carry;
        }
        return {Polynomial(std::move(q)), carry};
    }

    /// Multiply by (x - root).
    Polynomial times_linear(const Rational& root) const {
        std::vector<Rational> out(coeffs_.size() + 1);
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            out[i + 1] += coeffs_[i];
            out[i] -= root * coeffs_[i];
        }
        return Polynomial(std::move(out));
    }

    friend bool operator==(const Polynomial&, const Polynomial&) = default;

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }

    std::vector<Rational> coeffs_;
};

/// det(x I - A) by the Faddeev-LeVerrier recursion, exact over Q.
inline Polynomial characteristic_polynomial(const RationalMatrix& a) {
    if (!a.square()) throw DomainError("characteristic polynomial of a non-square matrix");
    const std::size_t n = a.rows();
    std::vector<Rational> c(n + 1);
    c[n] = 1;
    RationalMatrix m(n, n); // M_0 = 0
    const RationalMatrix id = RationalMatrix::identity(n);
    for (std::size_t k = 1; k <= n; ++k) {
        m = a * m + c[n - k + 1] * id;
        RationalMatrix am = a * m;
        c[n - k] = -am.trace() / Rational(static_cast<long long>(k));
    }
    return Polynomial(std::move(c));
}

} // namespace parahiggs
