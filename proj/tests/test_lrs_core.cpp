#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace lrsz;

namespace {

std::vector<BigRational> as_vector(std::span<const BigRational> s) { return {s.begin(), s.end()}; }

TEST(Eval, TribonacciValues) {
    const Lrs T = tribonacci();
    EXPECT_EQ(eval(T, 2), 1);
    EXPECT_EQ(eval(T, 10), 149);
    EXPECT_EQ(eval(T, 16), 5768);
    for (long z : {0L, -1L, -4L, -17L}) EXPECT_EQ(eval(T, z), 0) << z;
    EXPECT_EQ(eval(T, -2), 1);
    EXPECT_EQ(eval(T, -3), -1);
}

TEST(Eval, RationalLrsAgreesWithStepping) {
    const std::vector<BigRational> a{make_rational(BigInt(2), BigInt(3)), BigRational(-1), make_rational(BigInt(5), BigInt(7))};
    const std::vector<BigRational> u{BigRational(1), make_rational(BigInt(-1), BigInt(2)), BigRational(3)};
    const Lrs L = minimal_order(a, u);
    ASSERT_EQ(L.order(), 3u);
    for (long n = -40; n <= 40; ++n) EXPECT_EQ(eval(L, n), oracle::step_eval(a, u, n)) << n;
}

TEST(Eval, ShiftConsistency) {
    std::mt19937_64 rng(21);
    std::uniform_int_distribution<long> dist(-500, 500);
    for (const Lrs& u : {tribonacci(), w_sequence(), make_lrs({16, -26, 11}, {3, 11, 69})}) {
        const auto a = as_vector(u.coefficients());
        const auto m = static_cast<long>(u.order());
        for (int i = 0; i < 200; ++i) {
            const long n = dist(rng);
            BigRational s = 0;
            for (long k = 0; k < m; ++k) s += a[static_cast<std::size_t>(k)] * eval(u, n + k);
            ASSERT_EQ(eval(u, n + m), s) << n;
        }
    }
}

TEST(Eval, ForwardThenBackwardReturnsInitialValues) {
    const Lrs u = w_sequence();
    const auto a = as_vector(u.coefficients());
    const std::size_t m = u.order();
    // walk forward to 300, then run the recurrence backwards down to 0
    std::vector<BigRational> window;
    for (std::size_t k = 0; k < m; ++k) window.push_back(eval(u, 300 + static_cast<long>(k)));
    for (long n = 299; n >= 0; --n) {
        BigRational s = window[m - 1];
        for (std::size_t i = 1; i < m; ++i) s -= a[i] * window[i - 1];
        window.insert(window.begin(), s / a[0]);
        window.pop_back();
    }
    EXPECT_EQ(window, as_vector(u.initial()));
}

TEST(Eval, CompanionAgreesWithIterative) {
    std::mt19937_64 rng(22);
    std::uniform_int_distribution<long> dist(-1000, 1000);
    const Lrs u = minimal_order(std::vector<BigRational>{BigRational(3), make_rational(BigInt(1), BigInt(2))},
                                std::vector<BigRational>{BigRational(1), BigRational(-2)});
    for (const Lrs& v : {tribonacci(), u}) {
        for (int i = 0; i < 100; ++i) {
            const long n = dist(rng);
            ASSERT_EQ(eval_companion(v, n), eval_iterative(v, n)) << n;
        }
    }
}

TEST(MinimalOrder, Examples) {
    // 2^n given with a padded order-2 recurrence U(n+2) = U(n+1) + 2U(n)
    const Lrs two = minimal_order(std::vector<BigRational>{BigRational(2), BigRational(1)},
                                  std::vector<BigRational>{BigRational(1), BigRational(2)});
    EXPECT_EQ(two.order(), 1u);
    EXPECT_EQ(two.coefficients()[0], 2);
    EXPECT_EQ(tribonacci().order(), 3u);
    const Lrs zero = minimal_order(std::vector<BigRational>{BigRational(1), BigRational(1)},
                                   std::vector<BigRational>{BigRational(0), BigRational(0)});
    EXPECT_TRUE(zero.is_zero());
    EXPECT_EQ(zero.order(), 0u);
    EXPECT_THROW(make_lrs({0, 1}, {1, 1}), Error);
}

TEST(MinimalOrder, Idempotent) {
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<long> dist(-5, 5);
    for (int i = 0; i < 200; ++i) {
        std::vector<BigRational> a, u;
        for (int k = 0; k < 4; ++k) {
            a.emplace_back(dist(rng));
            u.emplace_back(dist(rng));
        }
        if (a[0] == 0) a[0] = 1;
        const Lrs once = minimal_order(a, u);
        const Lrs twice = minimal_order(as_vector(once.coefficients()), as_vector(once.initial()));
        EXPECT_EQ(once, twice);
        // the reduced recurrence still produces the same sequence
        for (long n = -6; n <= 12; ++n) EXPECT_EQ(eval(once, n), oracle::step_eval(a, u, n));
    }
}

TEST(CharPoly, Examples) {
    const CharPolyReport t = analyze_char_poly(tribonacci());
    EXPECT_TRUE(t.squarefree);
    EXPECT_TRUE(t.nondegenerate);
    const IntPolynomial R{1, 4, 11, 12, 11, 4, 1};
    EXPECT_TRUE(t.ratio_poly == R || t.ratio_poly == -R);

    EXPECT_FALSE(analyze_char_poly(make_lrs({-1, 0}, {1, 0})).nondegenerate);
    EXPECT_TRUE(analyze_char_poly(make_lrs({16, -26, 11}, {3, 11, 69})).nondegenerate);
    EXPECT_FALSE(analyze_char_poly(make_lrs({1, 0, 0}, {1, 2, 3})).nondegenerate);  // cube roots of 1
    EXPECT_TRUE(analyze_char_poly(make_lrs({-1, 2}, {0, 1})).nondegenerate);       // U(n) = n
    EXPECT_FALSE(analyze_char_poly(make_lrs({4, 0}, {1, 1})).nondegenerate);       // roots 2, -2
}

TEST(CharPoly, NondegenerateSequencesNeverVanishOnAClass) {
    for (const Lrs& u : {tribonacci(), w_sequence(), make_lrs({16, -26, 11}, {3, 11, 69}), make_lrs({-1, 2}, {0, 1})}) {
        ASSERT_TRUE(analyze_char_poly(u).nondegenerate);
        const long m = static_cast<long>(u.order());
        for (long N = 1; N <= 8; ++N)
            for (long l = 0; l < N; ++l) {
                bool nonzero = false;
                for (long n = -2 * m; n <= 2 * m && !nonzero; ++n) nonzero = eval(u, l + N * n) != 0;
                EXPECT_TRUE(nonzero) << "N=" << N << " l=" << l;
            }
    }
}

TEST(RegularPrime, Examples) {
    EXPECT_TRUE(is_regular_prime(tribonacci(), 2));
    const Lrs third = minimal_order(std::vector<BigRational>{make_rational(BigInt(1), BigInt(3)), BigRational(1)},
                                    std::vector<BigRational>{BigRational(1), BigRational(1)});
    EXPECT_FALSE(is_regular_prime(third, 3));
    EXPECT_FALSE(is_regular_prime(make_lrs({3, 1}, {1, 1}), 3));
    EXPECT_TRUE(is_regular_prime(make_lrs({3, 1}, {1, 1}), 5));
}

TEST(IdentityHash, StableAndDiscriminating) {
    EXPECT_EQ(identity_hash(tribonacci()), identity_hash(make_lrs({1, 1, 1}, {0, 1, 1})));
    EXPECT_NE(identity_hash(tribonacci()), identity_hash(make_lrs({1, 1, 1}, {0, 1, 2})));
}

}  // namespace
