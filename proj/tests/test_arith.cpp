#include <gtest/gtest.h>

#include <numeric>

#include "parahiggs/arith.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace parahiggs;

TEST(FracPart, Examples) {
    EXPECT_EQ(frac_part(Rational(7, 3)), Rational(1, 3));
    EXPECT_EQ(frac_part(Rational(-1, 4)), Rational(3, 4));
    EXPECT_EQ(frac_part(Rational(2)), Rational(0));
    EXPECT_EQ(frac_part(Rational(-3)), Rational(0));
}

TEST(FracPart, DifferenceIsIntegerAndRangeHolds) {
    gen::Rng rng(11);
    for (int i = 0; i < 5000; ++i) {
        Rational x(gen::uniform(rng, -1000, 1000), gen::uniform(rng, 1, 97));
        Rational r = frac_part(x);
        EXPECT_GE(r, 0);
        EXPECT_LT(r, 1);
        EXPECT_TRUE(is_integer(x - r)) << to_string(x);
    }
}

TEST(Rational, StoredReducedWithPositiveDenominator) {
    Rational x = parse_rational("6/-4");
    EXPECT_EQ(numerator(x), -3);
    EXPECT_EQ(denominator(x), 2);
    EXPECT_EQ(to_string(x), "-3/2");
    EXPECT_EQ(to_string(parse_rational(" 8 / 4 ")), "2");
    EXPECT_THROW(parse_rational("1/0"), DomainError);
    EXPECT_THROW(parse_rational("1/x"), DomainError);
    EXPECT_THROW(parse_rational(""), DomainError);
}

TEST(Rational, NoOverflowOnLargeValues) {
    Rational big = parse_rational("123456789012345678901234567890/7");
    EXPECT_EQ(to_string(big * 7), "123456789012345678901234567890");
    EXPECT_EQ(floor(Rational(-7, 2)), -4);
}

TEST(EulerPhi, Examples) {
    EXPECT_EQ(oracle::coprime_count(9), 6);
    EXPECT_EQ(oracle::coprime_count(27), 18);
    EXPECT_EQ(euler_phi<std::int64_t>(1), 1);
    EXPECT_EQ(euler_phi<std::int64_t>(9), 6);
    EXPECT_EQ(euler_phi<std::int64_t>(27), 18);
    EXPECT_THROW(euler_phi<std::int64_t>(0), DomainError);
}

TEST(EulerPhi, MatchesCoprimeCount) {
    for (std::int64_t n = 1; n <= 2000; ++n) ASSERT_EQ(euler_phi(n), oracle::coprime_count(n)) << n;
}

TEST(EulerPhi, BigArgumentWithSmallFactors) {
    // phi(30 * 28!) has only prime factors <= 29
    Integer n = Integer(30) * factorial(28);
    Integer phi = euler_phi(n);
    Integer expected = n;
    for (int q : {2, 3, 5, 7, 11, 13, 17, 19, 23}) expected = expected / q * (q - 1);
    EXPECT_EQ(phi, expected);
}

TEST(MultOrder, Examples) {
    EXPECT_EQ(oracle::power_order(2, 5), 4);
    EXPECT_EQ(oracle::power_order(2, 7), 3);
    EXPECT_EQ(mult_order<std::int64_t>(2, 5), 4);
    EXPECT_EQ(mult_order<std::int64_t>(2, 7), 3);
    for (std::int64_t n = 1; n < 30; ++n) EXPECT_EQ(mult_order<std::int64_t>(1, n), 1);
}

TEST(MultOrder, RejectsNonUnits) {
    EXPECT_THROW(mult_order<std::int64_t>(2, 4), NotAUnit);
    try {
        mult_order<std::int64_t>(6, 9);
        FAIL();
    } catch (const NotAUnit& e) {
        EXPECT_NE(std::string(e.what()).find("not a unit"), std::string::npos);
    }
}

TEST(MultOrder, DividesPhiExhaustively) {
    for (std::int64_t n = 1; n <= 500; ++n)
        for (std::int64_t a = 0; a < n; ++a) {
            if (std::gcd(a, n) != 1) continue;
            auto k = mult_order(a, n);
            ASSERT_EQ(euler_phi(n) % k, 0) << a << " mod " << n;
            ASSERT_EQ(k, oracle::power_order(a, n)) << a << " mod " << n;
        }
}

TEST(MultOrder, WorksOnArbitraryPrecision) {
    EXPECT_EQ(mult_order(Integer(10), Integer(1000003)), Integer(oracle::power_order(10, 1000003)));
}

TEST(ModInverse, Examples) {
    EXPECT_EQ(oracle::inverse_by_search(7, 5), 3);
    EXPECT_EQ(oracle::inverse_by_search(3, 4), 3);
    EXPECT_EQ(mod_inverse<std::int64_t>(7, 5), 3);
    EXPECT_EQ(mod_inverse<std::int64_t>(3, 4), 3);
    for (std::int64_t n = 1; n < 20; ++n) EXPECT_EQ(mod_inverse<std::int64_t>(1, n), 1);
    EXPECT_THROW(mod_inverse<std::int64_t>(4, 6), NotAUnit);
}

TEST(ModInverse, ExhaustiveUpTo200) {
    for (std::int64_t n = 1; n <= 200; ++n)
        for (std::int64_t p = -n; p <= 2 * n; ++p) {
            if (std::gcd(p, n) != 1) continue;
            auto d = mod_inverse(p, n);
            ASSERT_GE(d, 1);
            ASSERT_LE(d, n);
            ASSERT_EQ(floor_mod(p * d, n), 1 % n) << p << " mod " << n;
        }
}

TEST(GeometricSumMod, Examples) {
    EXPECT_EQ(oracle::geometric_sum(5, 2), 6);
    EXPECT_EQ(oracle::geometric_sum(4, 9), 87381);
    EXPECT_EQ(geometric_sum_mod<std::int64_t>(5, 2, 3), 0);
    EXPECT_EQ(geometric_sum_mod<std::int64_t>(4, 9, 9), 0);
    for (std::int64_t q = -3; q < 10; ++q) EXPECT_EQ(geometric_sum_mod<std::int64_t>(q, 0, 7), 0);
}

TEST(GeometricSumMod, AgreesWithExactBigIntegerSum) {
    for (std::int64_t q = -20; q <= 20; ++q)
        for (std::int64_t f = 0; f <= 30; ++f)
            for (std::int64_t m = 1; m <= 40; ++m)
                ASSERT_EQ(geometric_sum_mod(q, f, m), oracle::mod_of(oracle::geometric_sum(q, f), m))
                    << q << " " << f << " " << m;
}

TEST(GeometricSumMod, ClosedFormWhenQMinusOneIsInvertible) {
    // (q^f - 1) / (q - 1) mod M, evaluated exactly
    for (std::int64_t q = 2; q <= 20; ++q)
        for (std::int64_t f = 0; f <= 30; ++f) {
            Integer exact = (boost::multiprecision::pow(Integer(q), static_cast<unsigned>(f)) - 1) / (q - 1);
            for (std::int64_t m : {1, 2, 7, 9, 60, 97})
                ASSERT_EQ(geometric_sum_mod(q, f, m), oracle::mod_of(exact, m));
        }
}

TEST(GeometricSumMod, HugeExponent) {
    // q = 1 mod M: S_f = f mod M
    Integer f = factorial(40) + 5;
    EXPECT_EQ(geometric_sum_mod<std::int64_t>(8, f, 7), oracle::mod_of(f, 7));
    EXPECT_EQ(geometric_sum_mod(Integer(8), f, Integer(7)), Integer(oracle::mod_of(f, 7)));
}

TEST(Primes, SieveAndTrialDivisionAgree) {
    auto ps = primes_up_to(1000);
    std::size_t k = 0;
    for (std::int64_t n = 0; n <= 1000; ++n) {
        bool in_sieve = k < ps.size() && ps[k] == n;
        if (in_sieve) ++k;
        EXPECT_EQ(is_prime(n), in_sieve) << n;
    }
    EXPECT_EQ(ps.size(), 168u);
}

TEST(FloorDivMod, NegativeOperands) {
    EXPECT_EQ(floor_div<std::int64_t>(-7, 2), -4);
    EXPECT_EQ(floor_div<std::int64_t>(7, -2), -4);
    EXPECT_EQ(floor_mod<std::int64_t>(-7, 5), 3);
    EXPECT_EQ(lcm<std::int64_t>(4, 6), 12);
}
