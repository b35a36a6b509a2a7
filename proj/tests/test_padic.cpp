#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace lrsz;

namespace {

TEST(Valuation, Examples) {
    EXPECT_EQ(valuation(BigInt(44), 11), Valuation(1));
    EXPECT_TRUE(valuation(BigInt(0), 7).is_infinite());
    EXPECT_EQ(valuation(make_rational(BigInt(9), BigInt(14)), 7), Valuation(-1));
    EXPECT_LT(Valuation(5), Valuation::infinity());
    EXPECT_EQ(Valuation::infinity().to_string(), "inf");
}

TEST(Valuation, AgreesWithRepeatedDivision) {
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<long> dist(-100000, 100000);
    for (int i = 0; i < 2000; ++i) {
        long num = dist(rng), den = dist(rng);
        if (num == 0) num = 1;
        if (den == 0) den = 7;
        const BigRational x = make_rational(BigInt(num), BigInt(den));
        for (unsigned long p : {2UL, 3UL, 7UL})
            ASSERT_EQ(valuation(x, p).value(), oracle::slow_valuation(x, p)) << x << " p=" << p;
    }
}

TEST(PadicScalar, Arithmetic) {
    const PadicScalar a = PadicScalar::from_rational(2, 10, make_rational(BigInt(1), BigInt(3)));
    EXPECT_EQ((a * PadicScalar(2, 10, BigInt(3))).residue(), 1);
    EXPECT_EQ(a.inverse().residue(), 3);
    EXPECT_THROW(PadicScalar::from_rational(2, 10, make_rational(BigInt(1), BigInt(2))), Error);
    EXPECT_EQ(PadicScalar(3, 5, BigInt(18)).valuation(), Valuation(2));
    EXPECT_TRUE(PadicScalar(3, 5, BigInt(243)).valuation().is_infinite());
}

TEST(MultiplicativeOrder, Examples) {
    EXPECT_EQ(multiplicative_order(BigInt(2), 7), 3);
    EXPECT_EQ(multiplicative_order(BigInt(1), 13), 1);
    EXPECT_EQ(multiplicative_order(BigInt(2), 11), 10);
    EXPECT_THROW(multiplicative_order(BigInt(14), 7), Error);
}

TEST(MultiplicativeOrder, BruteForceAndDividesPMinusOne) {
    for (unsigned long p : {3UL, 5UL, 7UL, 11UL, 101UL, 211UL, 997UL})
        for (std::uint64_t x = 1; x < std::min<std::uint64_t>(p, 60); ++x) {
            const BigInt ord = multiplicative_order(big_u(x), p);
            EXPECT_EQ(ord, oracle::brute_order(x, p)) << x << " mod " << p;
            EXPECT_EQ((p - 1) % ord.get_ui(), 0u);
        }
}

TEST(MatrixGroupOrder, Examples) {
    EXPECT_EQ(matrix_group_order(PadicMatrix::identity(5, 3, 3), 1), 1);
    EXPECT_EQ(matrix_group_order(PadicMatrix::from_rows(3, 1, {{1, 1}, {0, 1}}), 1), 3);
    EXPECT_EQ(matrix_group_order(PadicMatrix::from_rows(5, 1, {{0, 1}, {1, 1}}), 1), 20);
}

TEST(MatrixGroupOrder, MinimalAndMatchesBruteForce) {
    std::mt19937_64 rng(32);
    std::uniform_int_distribution<long> dist(0, 50);
    int tested = 0;
    for (unsigned long p : {2UL, 3UL, 5UL, 7UL})
        for (long c = 1; c <= (p == 2 ? 3 : 2); ++c)
            for (int i = 0; i < 15; ++i) {
                PadicMatrix M(p, c, 3);
                for (std::size_t r = 0; r < 3; ++r)
                    for (std::size_t s = 0; s < 3; ++s) M.set(r, s, BigInt(dist(rng)));
                if (M.det_mod_p() == 0) continue;
                ++tested;
                const BigInt N = matrix_group_order(M, c);
                EXPECT_TRUE(M.power(N).is_identity());
                for (const auto& q : prime_divisors(N)) EXPECT_FALSE(M.power(N / q).is_identity());
                if (N < 5000) { EXPECT_EQ(N, oracle::brute_matrix_order(M)); }
            }
    EXPECT_GT(tested, 60);
}

TEST(MatrixLog, Examples) {
    const PadicMatrix zero(3, 8, 2);
    EXPECT_EQ(matrix_log(PadicMatrix::identity(3, 8, 2), 1), zero);
    // log(4) at p = 3, K = 4: valuation exactly 1
    const PadicMatrix four = PadicMatrix::from_rows(3, 4, {{4}});
    const PadicMatrix L = matrix_log(four, 1);
    EXPECT_EQ(L.at(0, 0), oracle::scalar_log(BigInt(3), 3, 4));
    EXPECT_EQ(residue_valuation(L.at(0, 0), 3, 4), 1);
    EXPECT_THROW(matrix_log(PadicMatrix::from_rows(3, 4, {{2}}), 1), Error);
    EXPECT_THROW(matrix_log(PadicMatrix::from_rows(2, 8, {{3}}), 1), Error);
}

TEST(MatrixExp, Examples) {
    EXPECT_EQ(matrix_exp(PadicMatrix(5, 6, 2)), PadicMatrix::identity(5, 6, 2));
    const PadicMatrix e5 = matrix_exp(PadicMatrix::from_rows(5, 3, {{5}}));
    const PadicMatrix em5 = matrix_exp(PadicMatrix::from_rows(5, 3, {{-5}}));
    EXPECT_EQ(e5.at(0, 0), oracle::scalar_exp(BigInt(5), 5, 3));
    EXPECT_TRUE((e5 * em5).is_identity());
    EXPECT_THROW(matrix_exp(PadicMatrix::from_rows(2, 8, {{2}})), Error);
}

TEST(MatrixExp, AdditiveOnCommutingMatrices) {
    std::mt19937_64 rng(33);
    std::uniform_int_distribution<long> dist(-40, 40);
    for (unsigned long p : {2UL, 3UL, 5UL})
        for (int i = 0; i < 20; ++i) {
            const long c = p == 2 ? 2 : 1;
            const BigInt s = pow_ui(p, static_cast<unsigned long>(c));
            PadicMatrix A(p, 20, 2);
            for (std::size_t r = 0; r < 2; ++r)
                for (std::size_t t = 0; t < 2; ++t) A.set(r, t, s * dist(rng));
            // B = x A + y A^2 commutes with A
            const PadicMatrix B = BigInt(dist(rng)) * A + BigInt(dist(rng)) * (A * A);
            EXPECT_EQ(matrix_exp(A + B), matrix_exp(A) * matrix_exp(B));
        }
}

TEST(Lte, Examples) {
    EXPECT_EQ(lte_valuation(BigRational(8), 7, 7), 2);
    EXPECT_EQ(lte_valuation(BigRational(8), 7, 3), 1);
    EXPECT_EQ(lte_valuation(BigRational(8), 7, 1), 1);
    EXPECT_THROW(lte_valuation(BigRational(3), 2, 2), Error);  // p = 2 with nu(theta - 1) = 1
    EXPECT_THROW(lte_valuation(BigRational(2), 7, 5), Error);
}

TEST(Lte, FullSweepBelow50) {
    // Every p < 50, theta = 1 + k p^a with k <= 5, a <= 3, 0 < |n| <= 200.
    for (unsigned long p : {2UL, 3UL, 5UL, 7UL, 11UL, 13UL, 17UL, 19UL, 23UL, 29UL, 31UL, 37UL, 41UL, 43UL, 47UL})
        for (long k = 1; k <= 5; ++k)
            for (unsigned long a = 1; a <= 3; ++a) {
                const BigRational theta = 1 + BigRational(k * pow_ui(p, a));
                const long v1 = oracle::slow_valuation(theta - 1, p);
                BigRational x = 1;
                for (long n = 1; n <= 200; n += (n < 20 ? 1 : 7)) {
                    x = pow(theta, static_cast<unsigned long>(n));
                    for (long sn : {n, -n}) {
                        const BigRational val = sn > 0 ? x : 1 / x;
                        const long exact = oracle::slow_valuation(val - 1, p);
                        const long vn = oracle::slow_valuation(BigRational(sn), p);
                        ASSERT_GE(exact, v1 + vn * std::min<long>(1, static_cast<long>(p - 1) * v1));
                        if (static_cast<long>(p - 1) * v1 > 1) { ASSERT_EQ(lte_valuation(theta, p, sn), exact); }
                    }
                }
            }
}

TEST(PadicSequence, MatchesExactEvaluation) {
    const Lrs half = minimal_order(std::vector<BigRational>{BigRational(1), make_rational(BigInt(3), BigInt(5))},
                                   std::vector<BigRational>{make_rational(BigInt(1), BigInt(4)), BigRational(1)});
    for (const auto& [u, p] : std::vector<std::pair<Lrs, unsigned long>>{{tribonacci(), 2}, {w_sequence(), 3}, {half, 2}}) {
        const PadicSequence seq(u, p, 40);
        const BigRational scale(pow_ui(p, static_cast<unsigned long>(seq.shift())));
        const auto range = seq.range(-60, 60);
        for (long n = -60; n <= 60; ++n) {
            const BigInt expect = reduce_rational(eval(u, n) * scale, seq.modulus());
            ASSERT_EQ(seq.value_at(n), expect) << n;
            ASSERT_EQ(range[static_cast<std::size_t>(n + 60)], expect) << n;
        }
        const auto prog = seq.progression(BigInt(-37), BigInt(5), 20);
        for (std::size_t i = 0; i < prog.size(); ++i)
            EXPECT_EQ(prog[i], seq.value_at(-37 + 5 * static_cast<long>(i)));
    }
    EXPECT_EQ(PadicSequence(half, 2, 40).shift(), 2);
}

TEST(CompanionMatrix, RejectsIrregularPrime) {
    EXPECT_THROW(companion_matrix(make_lrs({2, 1}, {0, 1}), 2, 10), Error);
    EXPECT_NO_THROW(companion_matrix(make_lrs({2, 1}, {0, 1}), 3, 10));
}

}  // namespace
