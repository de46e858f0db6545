#pragma once

// Exact integer / rational arithmetic and the small amount of elementary
// number theory everything else is built on. Integers are arbitrary
// precision; machine integers are accepted wherever the value is known to be
// small (weight numerators, N, p) and promoted where products can grow.

#include <boost/multiprecision/cpp_int.hpp>

#include <concepts>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "parahiggs/error.hpp"

namespace parahiggs {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

template <class T>
concept ExactInteger = std::signed_integral<T> || std::same_as<T, Integer>;

namespace detail {

template <class T>
struct wide;
template <>
struct wide<std::int64_t> {
    using type = __int128;
};
template <>
struct wide<std::int32_t> {
    using type = std::int64_t;
};
template <>
struct wide<Integer> {
    using type = Integer;
};

} // namespace detail

template <ExactInteger T>
T gcd(const T& a, const T& b) {
    if constexpr (std::same_as<T, Integer>) {
        return boost::multiprecision::gcd(a, b);
    } else {
        return std::gcd(a, b);
    }
}

template <ExactInteger T>
T lcm(const T& a, const T& b) {
    if (a == 0 || b == 0) return T(0);
    T g = gcd(a, b);
    T r = (a / g) * b;
    return r < 0 ? T(-r) : r;
}

/// Floor division; the divisor must be nonzero.
template <ExactInteger T>
T floor_div(const T& a, const T& b) {
    T q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

/// Representative of a mod m in [0, m); m > 0.
template <ExactInteger T>
T floor_mod(const T& a, const T& m) {
    T r = a % m;
    if (r < 0) r += m;
    return r;
}

template <ExactInteger T>
T mul_mod(const T& a, const T& b, const T& m) {
    using W = typename detail::wide<T>::type;
    W r = (W(floor_mod(a, m)) * W(floor_mod(b, m))) % W(m);
    return static_cast<T>(r);
}

template <ExactInteger T, ExactInteger E>
T pow_mod(const T& base, E exp, const T& m) {
    if (m == 1) return T(0);
    T result = 1;
    T b = floor_mod(base, m);
    while (exp > 0) {
        if ((exp & 1) != 0) result = mul_mod(result, b, m);
        b = mul_mod(b, b, m);
        exp >>= 1;
    }
    return result;
}

/// Checked narrowing of an arbitrary-precision integer.
inline std::int64_t to_int64(const Integer& x) {
    if (x > std::numeric_limits<std::int64_t>::max() || x < std::numeric_limits<std::int64_t>::min())
        throw DomainError("integer " + x.str() + " does not fit in 64 bits");
    return static_cast<std::int64_t>(x);
}

// ---------------------------------------------------------------------------
// Rationals

inline Integer numerator(const Rational& x) { return boost::multiprecision::numerator(x); }
inline Integer denominator(const Rational& x) { return boost::multiprecision::denominator(x); }

inline Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw DomainError("zero denominator");
    if (den < 0) return Rational(Integer(-num), Integer(-den)); // cpp_rational rejects a negative denominator
    return Rational(num, den);
}

inline Integer floor(const Rational& x) { return floor_div(numerator(x), denominator(x)); }

/// The unique r with 0 <= r < 1 and x - r an integer.
inline Rational frac_part(const Rational& x) { return x - Rational(floor(x)); }

inline bool is_integer(const Rational& x) { return denominator(x) == 1; }

/// "n" for integers, otherwise "n/d" in lowest terms.
inline std::string to_string(const Rational& x) {
    if (is_integer(x)) return numerator(x).str();
    return numerator(x).str() + "/" + denominator(x).str();
}

inline Integer parse_integer(std::string_view text) {
    std::string s;
    for (char c : text)
        if (c != ' ' && c != '\t' && c != '\n' && c != '\r') s.push_back(c);
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    if (i == s.size()) throw DomainError("expected an integer, got '" + std::string(text) + "'");
    for (std::size_t j = i; j < s.size(); ++j)
        if (s[j] < '0' || s[j] > '9') throw DomainError("expected an integer, got '" + std::string(text) + "'");
    if (s[0] == '+') s.erase(0, 1);
    return Integer(s);
}

/// Accepts "n", "n/d" (not necessarily reduced); surrounding whitespace ignored.
inline Rational parse_rational(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_integer(text));
    return make_rational(parse_integer(text.substr(0, slash)), parse_integer(text.substr(slash + 1)));
}

// ---------------------------------------------------------------------------
// Number theory

/// Prime factorization by trial division, ascending, with multiplicity
/// collapsed: returns distinct primes. Fast whenever n has no large prime
/// factors (as for N * (N-2)!).
template <ExactInteger T>
std::vector<T> distinct_prime_factors(T n) {
    std::vector<T> primes;
    if (n < 0) n = -n;
    for (T d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            primes.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) primes.push_back(n);
    return primes;
}

template <ExactInteger T>
T euler_phi(const T& n) {
    if (n <= 0) throw DomainError("euler_phi requires n >= 1");
    T result = n;
    for (const T& q : distinct_prime_factors(n)) result = result / q * (q - 1);
    return result;
}

/// Least k >= 1 with a^k = 1 mod n. Computed by stripping prime factors from
/// phi(n) rather than by stepping through powers.
template <ExactInteger T>
T mult_order(const T& a, const T& n) {
    if (n <= 0) throw DomainError("mult_order requires n >= 1");
    if (gcd(floor_mod(a, n), n) != 1 && n != 1)
        throw NotAUnit("not a unit: gcd(" + Integer(a).str() + ", " + Integer(n).str() + ") != 1");
    if (n == 1) return T(1);
    T order = euler_phi(n);
    for (const T& q : distinct_prime_factors(order)) {
        while (order % q == 0 && pow_mod(a, T(order / q), n) == 1) order /= q;
    }
    return order;
}

/// The representative D in [1, N] of the inverse of p mod N.
template <ExactInteger T>
T mod_inverse(const T& p, const T& n) {
    if (n <= 0) throw DomainError("mod_inverse requires N >= 1");
    // extended Euclid on (p mod N, N)
    T old_r = floor_mod(p, n), r = n;
    T old_s = 1, s = 0;
    while (r != 0) {
        T q = old_r / r;
        T tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
    }
    if (old_r != 1 && n != 1)
        throw NotAUnit("not a unit: " + Integer(p).str() + " is not invertible mod " + Integer(n).str());
    T inv = floor_mod(old_s, n);
    return inv == 0 ? n : inv;
}

/// (1 + q + ... + q^(f-1)) mod M, reducing mod M throughout. Uses
/// S(2k) = S(k)(1 + q^k) and S(k+1) = 1 + q S(k) so f may be huge.
template <ExactInteger T>
T geometric_sum_mod(const T& q, const Integer& f, const T& m) {
    if (m <= 0) throw DomainError("geometric_sum_mod requires M >= 1");
    if (f < 0) throw DomainError("geometric_sum_mod requires f >= 0");
    T qm = floor_mod(q, m);
    T sum = 0;     // S(k) mod m
    T power = 1;   // q^k mod m
    const auto bits = f == 0 ? 0u : static_cast<unsigned>(boost::multiprecision::msb(f)) + 1;
    for (unsigned i = bits; i-- > 0;) {
        sum = mul_mod(sum, T(floor_mod(T(1 + power), m)), m);
        power = mul_mod(power, power, m);
        if (boost::multiprecision::bit_test(f, i)) {
            sum = floor_mod(T(1 + mul_mod(qm, sum, m)), m);
            power = mul_mod(power, qm, m);
        }
    }
    return floor_mod(sum, m);
}

template <ExactInteger T>
T geometric_sum_mod(const T& q, std::int64_t f, const T& m) {
    return geometric_sum_mod(q, Integer(f), m);
}

inline Integer factorial(std::int64_t n) {
    if (n < 0) throw DomainError("factorial of a negative number");
    Integer r = 1;
    for (std::int64_t k = 2; k <= n; ++k) r *= k;
    return r;
}

inline bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// Sieve of Eratosthenes.
inline std::vector<std::int64_t> primes_up_to(std::int64_t limit) {
    std::vector<std::int64_t> out;
    if (limit < 2) return out;
    std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
    for (std::int64_t i = 2; i <= limit; ++i) {
        if (composite[static_cast<std::size_t>(i)]) continue;
        out.push_back(i);
        for (std::int64_t j = i * i; j <= limit; j += i) composite[static_cast<std::size_t>(j)] = true;
    }
    return out;
}

} // namespace parahiggs
