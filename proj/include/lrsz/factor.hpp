#pragma once

// Integer factorization (trial division + Pollard-Brent rho), strong
// probable-prime testing and the Kummer exponent of a rational number.

#include "lrsz/bigint.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <variant>
#include <vector>

namespace lrsz {

struct PrimePower {
    BigInt prime;
    unsigned long exponent = 0;
    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// sign * prod prime^exponent, primes strictly increasing.
struct Factorization {
    int sign = 1;
    std::vector<PrimePower> factors;

    BigInt product() const {
        BigInt r = sign;
        for (const auto& f : factors) r *= pow(f.prime, f.exponent);
        return r;
    }
};

namespace detail {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 mulmod64(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

inline u64 powmod64(u64 b, u64 e, u64 m) {
    u64 r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1U) r = mulmod64(r, b, m);
        b = mulmod64(b, b, m);
        e >>= 1U;
    }
    return r;
}

// Deterministic below 3.3e24 (Sorenson-Webster bound for the first 12 primes).
inline constexpr std::array<unsigned, 12> kWitnesses{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

inline bool is_sprp64(u64 n, u64 a) {
    u64 d = n - 1;
    int s = 0;
    while ((d & 1U) == 0) {
        d >>= 1U;
        ++s;
    }
    u64 x = powmod64(a % n, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < s; ++i) {
        x = mulmod64(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

inline bool is_sprp(const BigInt& n, unsigned a) {
    BigInt d = n - 1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
    BigInt x = powmod(BigInt(a), d, n);
    const BigInt nm1 = n - 1;
    if (x == 1 || x == nm1) return true;
    for (unsigned long i = 1; i < s; ++i) {
        x = x * x % n;
        if (x == nm1) return true;
    }
    return false;
}

inline u64 gcd64(u64 a, u64 b) { return std::gcd(a, b); }

}  // namespace detail

/// Strong probable-prime test on the fixed witness set {2,...,37}; exact for
/// n < 3.3e24.
inline bool is_prime(const BigInt& n) {
    if (n < 2) return false;
    for (unsigned a : detail::kWitnesses) {
        if (n == a) return true;
        if (mpz_divisible_ui_p(n.get_mpz_t(), a)) return false;
    }
    if (mpz_fits_ulong_p(n.get_mpz_t())) {
        const detail::u64 v = mpz_get_ui(n.get_mpz_t());
        return std::all_of(detail::kWitnesses.begin(), detail::kWitnesses.end(),
                           [v](unsigned a) { return detail::is_sprp64(v, a); });
    }
    return std::all_of(detail::kWitnesses.begin(), detail::kWitnesses.end(),
                       [&n](unsigned a) { return detail::is_sprp(n, a); });
}

inline bool is_prime_u64(std::uint64_t n) { return is_prime(big_u(n)); }

namespace detail {

// Brent's variant of Pollard rho. Returns a nontrivial factor or 0 when the
// iteration budget runs out. Budget is decremented by the work performed.
inline u64 rho64(u64 n, u64 seed, std::uint64_t& budget) {
    if (n % 2 == 0) return 2;
    u64 y = seed % n, c = (seed * 2654435761ULL + 1) % n, m = 128, g = 1, r = 1, q = 1, x = 0, ys = 0;
    if (c == 0) c = 1;
    auto f = [&](u64 v) { return (mulmod64(v, v, n) + c) % n; };
    do {
        x = y;
        for (u64 i = 0; i < r; ++i) y = f(y);
        u64 k = 0;
        do {
            ys = y;
            const u64 lim = std::min(m, r - k);
            for (u64 i = 0; i < lim; ++i) {
                y = f(y);
                q = mulmod64(q, x > y ? x - y : y - x, n);
            }
            if (budget <= lim) return 0;
            budget -= lim;
            g = gcd64(q, n);
            k += m;
        } while (k < r && g == 1);
        r *= 2;
    } while (g == 1);
    if (g == n) {
        do {
            ys = f(ys);
            g = gcd64(x > ys ? x - ys : ys - x, n);
        } while (g == 1);
    }
    return g == n ? 0 : g;
}

inline BigInt rho_big(const BigInt& n, unsigned long seed, std::uint64_t& budget) {
    BigInt y = seed, c = seed * 7 + 1, x, ys, q = 1, g = 1;
    unsigned long r = 1;
    const unsigned long m = 128;
    auto f = [&](const BigInt& v) { return BigInt((v * v + c) % n); };
    do {
        x = y;
        for (unsigned long i = 0; i < r; ++i) y = f(y);
        unsigned long k = 0;
        do {
            ys = y;
            const unsigned long lim = std::min(m, r - k);
            for (unsigned long i = 0; i < lim; ++i) {
                y = f(y);
                q = q * BigInt(abs(x - y)) % n;
            }
            if (budget <= lim) return 0;
            budget -= lim;
            g = gcd(q, n);
            k += m;
        } while (k < r && g == 1);
        r *= 2;
    } while (g == 1);
    if (g == n) {
        do {
            ys = f(ys);
            g = gcd(BigInt(abs(x - ys)), n);
        } while (g == 1);
    }
    return g == n ? BigInt(0) : g;
}

inline void split_composite(const BigInt& n, std::map<BigInt, unsigned long>& out, std::uint64_t& budget) {
    if (n == 1) return;
    if (is_prime(n)) {
        out[n] += 1;
        return;
    }
    BigInt d = 0;
    for (unsigned long seed = 2; d == 0; ++seed) {
        if (budget == 0) throw Error("factorization exceeded effort");
        if (mpz_fits_ulong_p(n.get_mpz_t())) {
            d = big_u(rho64(mpz_get_ui(n.get_mpz_t()), seed, budget));
        } else {
            d = rho_big(n, seed, budget);
        }
    }
    split_composite(d, out, budget);
    split_composite(divexact(n, d), out, budget);
}

}  // namespace detail

/// Full factorization of n != 0. effort_bound caps the total number of rho
/// iterations; exceeding it throws "factorization exceeded effort".
inline Factorization factor_integer(const BigInt& n, std::uint64_t effort_bound = 50'000'000) {
    if (n == 0) throw Error("cannot factor zero");
    Factorization result;
    result.sign = n < 0 ? -1 : 1;
    BigInt rest = abs(n);
    std::map<BigInt, unsigned long> found;
    for (unsigned long p = 2; p < 1000; p += (p == 2 ? 1 : 2)) {
        if (BigInt(p) * p > rest) break;
        while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
            mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
            found[BigInt(p)] += 1;
        }
    }
    std::uint64_t budget = effort_bound;
    detail::split_composite(rest, found, budget);
    for (auto& [p, e] : found) result.factors.push_back({p, e});
    return result;
}

/// Distinct prime divisors of |n|.
inline std::vector<BigInt> prime_divisors(const BigInt& n) {
    std::vector<BigInt> out;
    for (const auto& f : factor_integer(n).factors) out.push_back(f.prime);
    return out;
}

/// Euler's phi of a machine-sized positive integer.
inline std::uint64_t euler_phi(std::uint64_t n) {
    std::uint64_t r = n;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        while (n % p == 0) n /= p;
        r -= r / p;
    }
    if (n > 1) r -= r / n;
    return r;
}

struct Unbounded {
    friend bool operator==(Unbounded, Unbounded) { return true; }
};
using KummerExponent = std::variant<std::uint64_t, Unbounded>;

/// Largest n with +alpha or -alpha an n-th power in Q (the roots of unity of Q
/// are +-1); Unbounded for alpha = +-1.
inline KummerExponent kummer_exponent_rational(const BigRational& alpha) {
    if (alpha == 0) throw Error("Kummer exponent of zero");
    if (abs(alpha) == 1) return Unbounded{};
    std::uint64_t g = 0;
    for (const BigInt* part : {&alpha.get_num(), &alpha.get_den()}) {
        if (abs(*part) == 1) continue;
        for (const auto& f : factor_integer(*part).factors) g = std::gcd(g, static_cast<std::uint64_t>(f.exponent));
    }
    return g;
}

}  // namespace lrsz
