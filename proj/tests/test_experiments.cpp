#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace lrsz;

namespace {

TEST(Density, OrdersAgreeWithBruteForce) {
    const DensityReport rep = density_scan(BigInt(2), 4, 5000);
    std::uint64_t counted = 0, matching = 0;
    for (std::uint64_t p : primes_up_to(5000)) {
        if (p == 2) continue;
        ++counted;
        if (oracle::brute_order(2, p) % 4 == 0) ++matching;
    }
    EXPECT_EQ(rep.counted, counted);
    EXPECT_EQ(rep.matching, matching);
}

TEST(Density, DoublingRShrinksTheMatchingSet) {
    for (long alpha : {2L, 3L, -5L, 10L}) {
        std::vector<std::uint64_t> prev = density_scan(BigInt(alpha), 1, 3000).matching_primes;
        for (std::uint64_t r = 2; r <= 16; r *= 2) {
            const auto cur = density_scan(BigInt(alpha), r, 3000).matching_primes;
            EXPECT_TRUE(std::includes(prev.begin(), prev.end(), cur.begin(), cur.end())) << alpha << " r=" << r;
            prev = cur;
        }
    }
}

TEST(Density, PositiveForTwoAndRejectsBadInput) {
    const DensityReport rep = density_scan(BigInt(2), 2, 100'000);
    EXPECT_GT(rep.density, BigRational(1, 10));
    EXPECT_EQ(density_scan(BigInt(7), 1, 1000).density, 1);
    EXPECT_THROW(density_scan(BigInt(2), 3, 1000), Error);
    EXPECT_THROW(density_scan(BigInt(-1), 2, 1000), Error);
    EXPECT_THROW(density_scan(BigInt(2), 2, 10), Error);
}

// nu_p(2^n + 1) from the exact integer.
long exact_valuation(std::uint64_t n, unsigned long p) {
    return static_cast<long>(valuation_of_integer(pow(BigInt(2), n) + 1, p));
}

TEST(Law, HoldsForAllOddPrimesBelow1000) {
    for (std::uint64_t p : primes_up_to(1000)) {
        if (p == 2) continue;
        const LawReport rep = order2_valuation_law(static_cast<unsigned long>(p));
        EXPECT_TRUE(rep.holds) << p << ": " << rep.behavior;
        EXPECT_GE(rep.checked, 1u);
    }
}

TEST(Law, AgreesWithExactIntegersForSmallPrimes) {
    for (unsigned long p : {3UL, 5UL, 11UL, 13UL, 17UL, 19UL, 29UL, 41UL}) {
        const LawReport rep = order2_valuation_law(p);
        ASSERT_TRUE(rep.holds);
        for (std::uint64_t n = 1; n <= 1500; ++n) {
            const long v = exact_valuation(n, p);
            if (n % rep.modulus == rep.residue)
                ASSERT_EQ(v, static_cast<long>(valuation_of_integer(big_u(n), p)) + rep.tau) << p << " n=" << n;
            else
                ASSERT_EQ(v, 0) << p << " n=" << n;
        }
    }
}

TEST(Law, MinusOneCaseNeverDivides) {
    for (unsigned long p : {7UL, 23UL, 31UL, 47UL}) {
        const LawReport rep = order2_valuation_law(p);
        EXPECT_EQ(rep.kind, LawCase::MinusOne);
        for (std::uint64_t n = 0; n <= 300; ++n) EXPECT_EQ(exact_valuation(n, p), 0);
    }
    EXPECT_THROW(order2_valuation_law(2), Error);
    EXPECT_THROW(order2_valuation_law(9), Error);
}

TEST(Law, ElevenHasTauOneOnFiveModTen) {
    const LawReport rep = order2_valuation_law(11);
    EXPECT_EQ(rep.kind, LawCase::PlusMinusThree);
    EXPECT_EQ(rep.residue, 5u);
    EXPECT_EQ(rep.modulus, 10u);
    EXPECT_EQ(rep.tau, 1);
}

TEST(Signature, GrowsAtAGenuineZero) {
    bool strictly_increasing_somewhere = false;
    for (unsigned long p : {3UL, 5UL, 7UL, 11UL, 13UL}) {
        if (!is_regular_prime(tribonacci(), p)) continue;
        const SignatureScan s = signature_scan(tribonacci(), p, BigRational(-17), 8);
        bool inc = true;
        for (std::size_t i = 1; i < s.rows.size(); ++i) inc = inc && s.rows[i].valuation > s.rows[i - 1].valuation;
        strictly_increasing_somewhere = strictly_increasing_somewhere || inc;
        EXPECT_EQ(s.trend, Trend::UnboundedLooking) << p;
    }
    EXPECT_TRUE(strictly_increasing_somewhere);
}

TEST(Signature, RowsAreCongruentAndExact) {
    const SignatureScan s = signature_scan(tribonacci(), 3, BigRational(-4), 6);
    for (const auto& row : s.rows) {
        const BigInt pj = pow_ui(3, row.depth);
        EXPECT_EQ(mod(row.n + 4, pj), 0);
        EXPECT_NE(row.n, -4);
        if (!row.lower_bound && abs(row.n) < 5000) {
            EXPECT_EQ(row.valuation, oracle::slow_valuation(eval(tribonacci(), to_i64(row.n)), 3));
        }
    }
}

TEST(Signature, BoundedAwayFromZeros) {
    const Lrs u = make_lrs({16, -26, 11}, {3, 11, 69});  // 8^n + 2^n + 1
    const SignatureScan s = signature_scan(u, 5, BigRational(0), 10);
    EXPECT_EQ(s.trend, Trend::Bounded);
    EXPECT_THROW(signature_scan(u, 2, BigRational(0), 4), Error);
    EXPECT_THROW(signature_scan(tribonacci(), 3, make_rational(BigInt(1), BigInt(3)), 4), Error);
}

}  // namespace
