#pragma once

// Empirical checks: densities of primes with r | ord_p(alpha), the valuation
// law for 2^n + 1, and a scanner for the valuation pattern that signals a
// twisted zero.

#include "lrsz/bigint.hpp"
#include "lrsz/factor.hpp"
#include "lrsz/lrs.hpp"
#include "lrsz/padic.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lrsz {

inline std::vector<std::uint64_t> primes_up_to(std::uint64_t bound) {
    std::vector<bool> composite(bound + 1, false);
    std::vector<std::uint64_t> out;
    for (std::uint64_t i = 2; i <= bound; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (std::uint64_t j = i * i; j <= bound; j += i) composite[j] = true;
    }
    return out;
}

struct DensityReport {
    BigInt alpha;
    std::uint64_t r = 1;
    std::uint64_t bound = 0;
    std::uint64_t counted = 0;
    std::uint64_t matching = 0;
    BigRational density;
    std::vector<std::uint64_t> matching_primes;
};

/// Share of primes p <= X, p not dividing alpha, with r | ord_p(alpha). Over Q
/// the hypothesis that the r-th roots of unity of each prime divisor of r lie in
/// the field forces r to be a power of 2.
inline DensityReport density_scan(const BigInt& alpha, std::uint64_t r, std::uint64_t X) {
    if (alpha == 0 || abs(alpha) == 1) throw Error("alpha must not be 0 or a root of unity");
    if (r == 0 || (r & (r - 1)) != 0) throw Error("hypothesis (ezep) fails over the rationals");
    if (X < 100) throw Error("prime bound must be at least 100");
    DensityReport rep{alpha, r, X, 0, 0, BigRational(0), {}};
    for (std::uint64_t p : primes_up_to(X)) {
        if (mpz_divisible_ui_p(alpha.get_mpz_t(), p)) continue;
        ++rep.counted;
        const BigInt ord = multiplicative_order(alpha, static_cast<unsigned long>(p));
        if (mpz_divisible_ui_p(ord.get_mpz_t(), r)) {
            ++rep.matching;
            rep.matching_primes.push_back(p);
        }
    }
    rep.density = rep.counted ? make_rational(big_u(rep.matching), big_u(rep.counted)) : BigRational(0);
    return rep;
}

enum class LawCase { PlusMinusThree, MinusOne, PlusOne };

struct LawCounterexample {
    std::uint64_t n = 0;
    long actual = 0;
    long expected = 0;
};

/// Outcome of checking nu_p(2^n + 1) against the law for one odd prime.
struct LawReport {
    unsigned long p = 0;
    LawCase kind = LawCase::PlusMinusThree;
    bool holds = false;
    long tau = 0;                     // nu_p(2^(r/2) + 1) on the tested class
    std::uint64_t residue = 0;        // class n = residue (mod modulus)
    std::uint64_t modulus = 0;        // 0 when 2^n + 1 is never divisible by p
    std::uint64_t checked = 0;
    std::uint64_t limit = 0;          // largest n tested
    long precision = 0;               // p-adic digits used after doubling
    std::vector<LawCounterexample> counterexamples;
    std::string behavior;
};

namespace detail {

// Checks nu_p(2^n + 1) = nu_p(n) + tau along n = first, first + stride, ... <= limit.
inline void check_law_class(LawReport& rep, std::uint64_t first, std::uint64_t stride, std::uint64_t limit) {
    const unsigned long p = rep.p;
    for (long K = 8;; K *= 2) {
        const BigInt modK = pow_ui(p, static_cast<unsigned long>(K));
        const BigInt jump = powmod(BigInt(2), big_u(stride), modK);
        BigInt x = powmod(BigInt(2), big_u(first), modK);
        rep.checked = 0;
        rep.counterexamples.clear();
        bool overflow = false;
        for (std::uint64_t n = first; n <= limit; n += stride) {
            const BigInt v = mod(x + 1, modK);
            if (v == 0) {
                overflow = true;
                break;
            }
            const long actual = static_cast<long>(valuation_of_integer(v, p));
            const long expected = static_cast<long>(valuation_of_integer(big_u(n), p)) + rep.tau;
            ++rep.checked;
            if (actual != expected && rep.counterexamples.size() < 10) rep.counterexamples.push_back({n, actual, expected});
            x = x * jump % modK;
        }
        if (!overflow) {
            rep.precision = K;
            rep.limit = limit;
            rep.holds = rep.counterexamples.empty();
            return;
        }
    }
}

}  // namespace detail

/// nu_p(2^n + 1) = nu_p(n) + tau on n = (p-1)/2 (mod p-1) for p = +-3 (mod 8),
/// checked for n <= 10^4 p; nu_p(2^n + 1) = 0 for n <= 10^4 when p = -1 (mod 8);
/// for p = 1 (mod 8) the observed behavior is reported.
inline LawReport order2_valuation_law(unsigned long p) {
    if (p == 2) throw Error("prime must be odd");
    if (!is_prime_u64(p)) throw Error("not a prime");
    LawReport rep;
    rep.p = p;
    const unsigned long r8 = p % 8;
    rep.kind = (r8 == 3 || r8 == 5) ? LawCase::PlusMinusThree : r8 == 7 ? LawCase::MinusOne : LawCase::PlusOne;
    const std::uint64_t ord = mpz_get_ui(multiplicative_order(BigInt(2), p).get_mpz_t());

    if (rep.kind == LawCase::MinusOne || ord % 2 == 1) {
        // 2 is a square mod p with odd order, so -1 is never a power of 2.
        rep.limit = 10'000;
        std::uint64_t x = 1;
        for (std::uint64_t n = 0; n <= rep.limit; ++n, x = x * 2 % p) {
            ++rep.checked;
            if (x == p - 1 && rep.counterexamples.size() < 10) {
                const BigInt m = pow_ui(p, 8);
                const BigInt v = mod(powmod(BigInt(2), big_u(n), m) + 1, m);
                rep.counterexamples.push_back({n, v == 0 ? 8L : static_cast<long>(valuation_of_integer(v, p)), 0});
            }
        }
        rep.holds = rep.counterexamples.empty();
        rep.behavior = rep.holds ? "all valuations zero" : "2^n + 1 divisible by p for some n";
        return rep;
    }

    // -1 = 2^(ord/2) mod p; the class is n = ord/2 (mod ord).
    rep.modulus = rep.kind == LawCase::PlusMinusThree ? p - 1 : ord;
    rep.residue = rep.modulus / 2;
    const BigInt base = pow(BigInt(2), static_cast<unsigned long>(rep.residue)) + 1;
    rep.tau = static_cast<long>(valuation_of_integer(base, p));
    const std::uint64_t limit = rep.kind == LawCase::PlusMinusThree ? 10'000ULL * p : 10'000ULL;
    detail::check_law_class(rep, rep.residue, rep.modulus, limit);
    rep.behavior = rep.holds ? "law holds with tau = " + std::to_string(rep.tau) + " on n = " +
                                   std::to_string(rep.residue) + " mod " + std::to_string(rep.modulus)
                             : "law fails";
    return rep;
}

enum class Trend { UnboundedLooking, Bounded };

struct SignatureRow {
    unsigned depth = 0;
    BigInt n;
    long valuation = 0;
    bool lower_bound = false;  // valuation only known to be at least this
};

struct SignatureScan {
    unsigned long p = 0;
    BigRational a;
    std::int64_t window = 0;  // n = (a mod p^j) + p^j s with |s| <= window
    std::vector<SignatureRow> rows;
    Trend trend = Trend::Bounded;
};

/// For each depth j, the n = a (mod p^j) in the window maximizing nu_p(U(n))
/// (ties: smallest |n|, then smallest n), skipping n = a and exact zeros of U.
/// Unbounded-looking when the valuations never decrease and grow by at least
/// max_depth/2 overall.
inline SignatureScan signature_scan(const Lrs& u, unsigned long p, const BigRational& a, unsigned max_depth,
                                    std::int64_t window = 0) {
    if (!is_regular_prime(u, p)) throw Error("prime not regular");
    if (mpz_divisible_ui_p(a.get_den().get_mpz_t(), p)) throw Error("denominator of a divisible by p");
    if (max_depth < 1) throw Error("max_depth must be positive");
    SignatureScan out;
    out.p = p;
    out.a = a;
    out.window = window > 0 ? window : static_cast<std::int64_t>(16 * p);
    const std::size_t count = static_cast<std::size_t>(2 * out.window + 1);
    const bool a_integral = a.get_den() == 1;
    for (unsigned j = 1; j <= max_depth; ++j) {
        const BigInt pj = pow_ui(p, j);
        const BigInt rj = reduce_rational(a, pj);
        const BigInt start = rj - pj * out.window;
        SignatureRow best;
        bool have = false;
        for (long K = 64;; K *= 2) {
            const PadicSequence seq(u, p, K);
            const std::vector<BigInt> res = seq.progression(start, pj, count);
            bool saturated = false;
            have = false;
            for (std::size_t i = 0; i < count; ++i) {
                const BigInt n = start + pj * static_cast<long>(i);
                if (a_integral && n == a.get_num()) continue;
                SignatureRow row{j, n, 0, false};
                if (res[i] == 0) {
                    if (abs(n) <= 10'000 && eval(u, to_i64(n)) == 0) continue;
                    saturated = true;
                    row.valuation = K - seq.shift();
                    row.lower_bound = true;
                } else {
                    row.valuation = *seq.certified(res[i]);
                }
                const bool better = !have || row.valuation > best.valuation ||
                                    (row.valuation == best.valuation &&
                                     (abs(row.n) < abs(best.n) || (abs(row.n) == abs(best.n) && row.n < best.n)));
                if (better) {
                    best = row;
                    have = true;
                }
            }
            if (!saturated || K >= 1024) break;
        }
        out.rows.push_back(best);
    }
    bool nondecreasing = true;
    for (std::size_t i = 1; i < out.rows.size(); ++i)
        if (out.rows[i].valuation < out.rows[i - 1].valuation) nondecreasing = false;
    const long growth = out.rows.back().valuation - out.rows.front().valuation;
    out.trend = nondecreasing && growth * 2 >= static_cast<long>(max_depth) ? Trend::UnboundedLooking : Trend::Bounded;
    return out;
}

}  // namespace lrsz
