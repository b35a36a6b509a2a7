#pragma once

// Slow, independent reference computations used to check the library.

#include "lrsz/lrsz.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace oracle {

using namespace lrsz;

/// Determinant of the Sylvester matrix by fraction-free Bareiss elimination.
inline BigInt sylvester_resultant(const IntPolynomial& f, const IntPolynomial& g) {
    const int m = f.degree(), n = g.degree();
    if (m < 0 || n < 0) return 0;
    if (m == 0 && n == 0) return 1;
    const int size = m + n;
    std::vector<std::vector<BigInt>> a(size, std::vector<BigInt>(size, 0));
    for (int r = 0; r < n; ++r)
        for (int i = 0; i <= m; ++i) a[r][r + i] = f.coeff(static_cast<std::size_t>(m - i));
    for (int r = 0; r < m; ++r)
        for (int i = 0; i <= n; ++i) a[n + r][r + i] = g.coeff(static_cast<std::size_t>(n - i));
    BigInt prev = 1;
    int sign = 1;
    for (int k = 0; k < size - 1; ++k) {
        if (a[k][k] == 0) {
            int swap = -1;
            for (int r = k + 1; r < size; ++r)
                if (a[r][k] != 0) {
                    swap = r;
                    break;
                }
            if (swap < 0) return 0;
            std::swap(a[k], a[swap]);
            sign = -sign;
        }
        for (int i = k + 1; i < size; ++i)
            for (int j = k + 1; j < size; ++j) a[i][j] = divexact(a[i][j] * a[k][k] - a[i][k] * a[k][j], prev);
        prev = a[k][k];
    }
    return sign * a[size - 1][size - 1];
}

/// U(n) by stepping the recurrence one term at a time from the initial values.
inline BigRational step_eval(const std::vector<BigRational>& a, const std::vector<BigRational>& init, std::int64_t n) {
    const auto m = static_cast<std::int64_t>(a.size());
    std::map<std::int64_t, BigRational> known;
    for (std::int64_t i = 0; i < m; ++i) known[i] = init[static_cast<std::size_t>(i)];
    for (std::int64_t k = m; k <= n; ++k) {
        BigRational s = 0;
        for (std::int64_t i = 0; i < m; ++i) s += a[static_cast<std::size_t>(i)] * known[k - m + i];
        known[k] = s;
    }
    for (std::int64_t k = -1; k >= n; --k) {
        // U(k) = (U(k+m) - sum_{i>=1} a_i U(k+i)) / a_0
        BigRational s = known[k + m];
        for (std::int64_t i = 1; i < m; ++i) s -= a[static_cast<std::size_t>(i)] * known[k + i];
        known[k] = s / a[0];
    }
    return known[n];
}

inline unsigned long brute_order(std::uint64_t x, std::uint64_t p) {
    x %= p;
    std::uint64_t y = x;
    unsigned long k = 1;
    while (y != 1) {
        y = y * x % p;
        ++k;
    }
    return k;
}

/// Smallest N >= 1 with M^N = I, by repeated multiplication.
inline unsigned long brute_matrix_order(const PadicMatrix& M, unsigned long limit = 1'000'000) {
    PadicMatrix P = M;
    for (unsigned long k = 1; k <= limit; ++k) {
        if (P.is_identity()) return k;
        P = P * M;
    }
    return 0;
}

/// Trial division.
inline std::map<BigInt, unsigned long> trial_factor(BigInt n) {
    std::map<BigInt, unsigned long> out;
    n = abs(n);
    for (BigInt d = 2; d * d <= n; ++d)
        while (n % d == 0) {
            ++out[d];
            n /= d;
        }
    if (n > 1) ++out[n];
    return out;
}

/// nu_p of a nonzero rational, by repeated division.
inline long slow_valuation(BigRational x, unsigned long p) {
    long v = 0;
    BigInt num = abs(x.get_num()), den = x.get_den();
    while (num % p == 0) {
        num /= p;
        ++v;
    }
    while (den % p == 0) {
        den /= p;
        --v;
    }
    return v;
}

/// log(1 + x) for a scalar x with nu_p(x) >= c, summed as a rational series
/// until the remaining terms are certainly divisible by p^K; then reduced.
inline BigInt scalar_log(const BigInt& x, unsigned long p, long K) {
    const BigInt modK = pow_ui(p, static_cast<unsigned long>(K));
    BigRational s = 0;
    BigRational xp = 1;
    const long c = slow_valuation(BigRational(x), p);
    // j*c - nu_p(j) >= j*c - log2(j) >= K well before this many terms
    const long terms = 4 * (K / c + 1) + 64;
    for (long j = 1; j <= terms; ++j) {
        xp *= BigRational(x);
        s += (j % 2 ? BigRational(1) : BigRational(-1)) * xp / BigRational(j);
    }
    return reduce_rational(s, modK);
}

/// exp(x) for a scalar x with nu_p(x) > 1/(p-1), as a rational series.
inline BigInt scalar_exp(const BigInt& x, unsigned long p, long K) {
    const BigInt modK = pow_ui(p, static_cast<unsigned long>(K));
    BigRational s = 1, term = 1;
    for (long j = 1; j < 20 * K + 20; ++j) {
        term = term * BigRational(x) / BigRational(j);
        s += term;
    }
    return reduce_rational(s, modK);
}

/// All complex roots of an integer polynomial by Durand-Kerner iteration.
inline std::vector<Complex> roots(const IntPolynomial& f, long digits) {
    const mpfr_prec_t bits = bits_for_digits(digits);
    const int n = f.degree();
    const Complex lead = Complex::from_real(Real(BigRational(f.leading()), bits));
    std::vector<Complex> z;
    Complex seed{Real(BigRational(4, 10), bits), Real(BigRational(9, 10), bits)};
    Complex w = Complex::from_integer(1, bits);
    for (int i = 0; i < n; ++i) {
        z.push_back(w);
        w = w * seed;
    }
    for (int iter = 0; iter < 2000; ++iter) {
        for (int i = 0; i < n; ++i) {
            Complex den = lead;
            for (int j = 0; j < n; ++j)
                if (j != i) den = den * (z[i] - z[j]);
            z[i] = z[i] - evaluate(f.coefficients(), z[i]) / den;
        }
    }
    return z;
}

/// disc(f) = lead^(2n-2) prod_{i<j} (z_i - z_j)^2, numerically.
inline Complex numeric_discriminant(const IntPolynomial& f, long digits) {
    const auto z = roots(f, digits);
    const mpfr_prec_t bits = bits_for_digits(digits);
    Complex d = Complex::from_integer(1, bits);
    for (std::size_t i = 0; i < z.size(); ++i)
        for (std::size_t j = i + 1; j < z.size(); ++j) d = d * (z[i] - z[j]) * (z[i] - z[j]);
    const Complex lead = Complex::from_real(Real(BigRational(f.leading()), bits));
    return d * lead.pow(2 * static_cast<long>(z.size()) - 2);
}

}  // namespace oracle
