#pragma once

// Rational linear recurrence sequences U(n+m) = a_{m-1} U(n+m-1) + ... + a_0 U(n),
// evaluated exactly in both directions.

#include "lrsz/bigint.hpp"
#include "lrsz/factor.hpp"
#include "lrsz/polynomial.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace lrsz {

/// A two-sided rational LRS stored at its minimal order. The zero sequence has
/// order 0. Instances are only produced by minimal_order (or Lrs::zero), so the
/// stored order is always minimal and a_0 != 0.
class Lrs {
public:
    static Lrs zero() { return Lrs({}, {}); }

    std::size_t order() const { return coeffs_.size(); }
    bool is_zero() const { return coeffs_.empty(); }

    /// a_0, ..., a_{m-1}
    std::span<const BigRational> coefficients() const { return coeffs_; }
    /// U(0), ..., U(m-1)
    std::span<const BigRational> initial() const { return initial_; }

    friend bool operator==(const Lrs&, const Lrs&) = default;

    friend Lrs minimal_order(std::span<const BigRational>, std::span<const BigRational>);

private:
    Lrs(std::vector<BigRational> coeffs, std::vector<BigRational> initial)
        : coeffs_(std::move(coeffs)), initial_(std::move(initial)) {}

    std::vector<BigRational> coeffs_;
    std::vector<BigRational> initial_;
};

namespace detail {

inline void check_raw(std::span<const BigRational> coeffs, std::span<const BigRational> initial) {
    if (coeffs.size() != initial.size()) throw Error("coefficient and initial-value lists differ in length");
    if (!coeffs.empty() && coeffs[0] == 0) throw Error("degenerate recurrence");
}

/// U(0), ..., U(count-1) from raw (possibly non-minimal) data.
inline std::vector<BigRational> forward_terms(std::span<const BigRational> coeffs, std::span<const BigRational> initial,
                                              std::size_t count) {
    std::vector<BigRational> terms(initial.begin(), initial.end());
    const std::size_t m = coeffs.size();
    while (terms.size() < count) {
        BigRational next = 0;
        const std::size_t base = terms.size() - m;
        for (std::size_t i = 0; i < m; ++i) next += coeffs[i] * terms[base + i];
        terms.push_back(next);
    }
    terms.resize(count);
    return terms;
}

}  // namespace detail

/// Reduce raw recurrence data to minimal order by Berlekamp-Massey over Q on
/// the first 2m exact terms. All-zero initial data gives the zero LRS.
inline Lrs minimal_order(std::span<const BigRational> coeffs, std::span<const BigRational> initial) {
    detail::check_raw(coeffs, initial);
    const std::size_t m = coeffs.size();
    const auto s = detail::forward_terms(coeffs, initial, 2 * m);

    std::vector<BigRational> C{1}, B{1};
    std::size_t L = 0, shift = 1;
    BigRational b = 1;
    for (std::size_t n = 0; n < s.size(); ++n) {
        BigRational d = s[n];
        for (std::size_t i = 1; i < C.size() && i <= n; ++i) d += C[i] * s[n - i];
        if (d == 0) {
            ++shift;
            continue;
        }
        const BigRational factor = d / b;
        std::vector<BigRational> T = C;
        if (C.size() < B.size() + shift) C.resize(B.size() + shift);
        for (std::size_t i = 0; i < B.size(); ++i) C[i + shift] -= factor * B[i];
        if (2 * L <= n) {
            L = n + 1 - L;
            B = std::move(T);
            b = d;
            shift = 1;
        } else {
            ++shift;
        }
    }
    C.resize(L + 1);
    if (L == 0) return Lrs::zero();
    if (C[L] == 0) throw Error("minimal recurrence has zero constant coefficient");
    std::vector<BigRational> a(L);
    for (std::size_t k = 1; k <= L; ++k) a[L - k] = -C[k];
    return Lrs(std::move(a), std::vector<BigRational>(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(L)));
}

inline Lrs minimal_order(const std::vector<BigRational>& coeffs, const std::vector<BigRational>& initial) {
    return minimal_order(std::span<const BigRational>(coeffs), std::span<const BigRational>(initial));
}

/// Convenience for integer data, e.g. make_lrs({1, 1, 1}, {0, 1, 1}).
inline Lrs make_lrs(std::initializer_list<long> coeffs, std::initializer_list<long> initial) {
    std::vector<BigRational> a, u;
    for (long v : coeffs) a.emplace_back(v);
    for (long v : initial) u.emplace_back(v);
    return minimal_order(a, u);
}

namespace detail {

using RationalMatrix = std::vector<std::vector<BigRational>>;

inline RationalMatrix identity_q(std::size_t m) {
    RationalMatrix r(m, std::vector<BigRational>(m));
    for (std::size_t i = 0; i < m; ++i) r[i][i] = 1;
    return r;
}

inline RationalMatrix mul_q(const RationalMatrix& x, const RationalMatrix& y) {
    const std::size_t m = x.size();
    RationalMatrix r(m, std::vector<BigRational>(m));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k < m; ++k) {
            if (x[i][k] == 0) continue;
            for (std::size_t j = 0; j < m; ++j) r[i][j] += x[i][k] * y[k][j];
        }
    return r;
}

/// State map s(n) -> s(n+1) for s(n) = (U(n), ..., U(n+m-1)).
inline RationalMatrix companion_q(const Lrs& u) {
    const std::size_t m = u.order();
    RationalMatrix c(m, std::vector<BigRational>(m));
    for (std::size_t i = 0; i + 1 < m; ++i) c[i][i + 1] = 1;
    for (std::size_t j = 0; j < m; ++j) c[m - 1][j] = u.coefficients()[j];
    return c;
}

/// s(n+1) -> s(n); requires a_0 != 0.
inline RationalMatrix inverse_companion_q(const Lrs& u) {
    const std::size_t m = u.order();
    const auto a = u.coefficients();
    RationalMatrix c(m, std::vector<BigRational>(m));
    const BigRational inv_a0 = 1 / a[0];
    c[0][m - 1] = inv_a0;
    for (std::size_t j = 0; j + 1 < m; ++j) c[0][j] = -a[j + 1] * inv_a0;
    for (std::size_t i = 1; i < m; ++i) c[i][i - 1] = 1;
    return c;
}

inline RationalMatrix power_q(RationalMatrix base, std::uint64_t e) {
    RationalMatrix r = identity_q(base.size());
    while (e) {
        if (e & 1U) r = mul_q(r, base);
        e >>= 1U;
        if (e) base = mul_q(base, base);
    }
    return r;
}

}  // namespace detail

/// U(n) by stepping the recurrence forward or backward from the initial values.
inline BigRational eval_iterative(const Lrs& u, std::int64_t n) {
    const std::size_t m = u.order();
    if (m == 0) return 0;
    const auto a = u.coefficients();
    std::vector<BigRational> w(u.initial().begin(), u.initial().end());
    std::int64_t lo = 0;  // w holds U(lo), ..., U(lo+m-1)
    while (n >= lo + static_cast<std::int64_t>(m)) {
        BigRational next = 0;
        for (std::size_t i = 0; i < m; ++i) next += a[i] * w[i];
        w.erase(w.begin());
        w.push_back(std::move(next));
        ++lo;
    }
    while (n < lo) {
        BigRational acc = w[m - 1];
        for (std::size_t i = 1; i < m; ++i) acc -= a[i] * w[i - 1];
        w.pop_back();
        w.insert(w.begin(), acc / a[0]);
        --lo;
    }
    return w[static_cast<std::size_t>(n - lo)];
}

/// U(n) = e_0 C^n s(0) with binary powering of the (inverse) companion matrix.
inline BigRational eval_companion(const Lrs& u, std::int64_t n) {
    const std::size_t m = u.order();
    if (m == 0) return 0;
    const auto M = n >= 0 ? detail::power_q(detail::companion_q(u), static_cast<std::uint64_t>(n))
                          : detail::power_q(detail::inverse_companion_q(u), static_cast<std::uint64_t>(-n));
    BigRational acc = 0;
    for (std::size_t j = 0; j < m; ++j) acc += M[0][j] * u.initial()[j];
    return acc;
}

/// Exact U(n) for any integer n.
inline BigRational eval(const Lrs& u, std::int64_t n) {
    constexpr std::int64_t kIterativeLimit = 1000;
    if (n > kIterativeLimit || n < -kIterativeLimit) return eval_companion(u, n);
    return eval_iterative(u, n);
}

/// U(n), ..., U(n+m-1).
inline std::vector<BigRational> state_at(const Lrs& u, std::int64_t n) {
    std::vector<BigRational> out;
    for (std::size_t i = 0; i < u.order(); ++i) out.push_back(eval(u, n + static_cast<std::int64_t>(i)));
    return out;
}

struct CharPolyReport {
    /// denominator * (X^m - a_{m-1} X^{m-1} - ... - a_0), integral
    IntPolynomial char_poly;
    /// lcm of the denominators of the a_i
    BigInt denominator;
    bool squarefree = false;
    /// ratios of distinct characteristic roots: Res_X(S(X), S(XY)) / (Y-1)^s
    /// with S the monic integral rescaling of the squarefree part
    IntPolynomial ratio_poly;
    bool nondegenerate = false;
};

/// Characteristic polynomial with denominators cleared.
inline IntPolynomial char_poly_integral(const Lrs& u, BigInt* denominator_out = nullptr) {
    const std::size_t m = u.order();
    BigInt D = 1;
    for (const auto& a : u.coefficients()) D = lcm(D, a.get_den());
    std::vector<BigInt> c(m + 1);
    c[m] = D;
    for (std::size_t i = 0; i < m; ++i) {
        BigRational v = -u.coefficients()[i] * BigRational(D);
        c[i] = v.get_num();
    }
    if (denominator_out) *denominator_out = D;
    return IntPolynomial(std::move(c));
}

/// For f of degree s with leading coefficient c: c^(s-1) f(Z/c), monic and
/// integral with roots c*lambda.
inline IntPolynomial monic_rescaling(const IntPolynomial& f) {
    const int s = f.degree();
    const BigInt& c = f.leading();
    std::vector<BigInt> out(static_cast<std::size_t>(s) + 1);
    out[static_cast<std::size_t>(s)] = 1;
    for (int i = 0; i < s; ++i)
        out[static_cast<std::size_t>(i)] = f.coeff(static_cast<std::size_t>(i)) * pow(c, static_cast<unsigned long>(s - 1 - i));
    return IntPolynomial(std::move(out));
}

/// Squarefreeness and non-degeneracy (no ratio of distinct roots is a root of
/// unity). A ratio has degree at most deg(ratio_poly) over Q, so only the
/// cyclotomic Phi_d with phi(d) <= deg(ratio_poly) need to be tested.
inline CharPolyReport analyze_char_poly(const Lrs& u) {
    if (u.is_zero()) throw Error("zero LRS has no characteristic polynomial");
    CharPolyReport rep;
    rep.char_poly = char_poly_integral(u, &rep.denominator);
    const IntPolynomial& f = rep.char_poly;
    const IntPolynomial g = gcd(f, f.derivative());
    rep.squarefree = g.degree() == 0;
    auto sqf = exact_divide(f.primitive_part(), g.primitive_part());
    if (!sqf) throw Error("squarefree part division failed");
    const IntPolynomial S = monic_rescaling(sqf->primitive_part());
    const IntPolynomial full = bivariate_ratio_resultant(S);
    auto ratios = exact_divide(full, IntPolynomial::linear(1).pow(static_cast<unsigned>(S.degree())));
    if (!ratios) throw Error("ratio resultant lacks the expected (Y-1) factor");
    rep.ratio_poly = std::move(*ratios);
    rep.nondegenerate = true;
    const std::uint64_t bound = static_cast<std::uint64_t>(std::max(rep.ratio_poly.degree(), 0));
    // phi(d) >= sqrt(d/2), so phi(d) <= bound forces d <= 2 bound^2.
    for (std::uint64_t d = 1; bound > 0 && d <= 2 * bound * bound + 2; ++d) {
        if (euler_phi(d) > bound) continue;
        if (gcd(rep.ratio_poly, cyclotomic(d)).degree() > 0) {
            rep.nondegenerate = false;
            break;
        }
    }
    return rep;
}

/// Exponent of p in a nonzero integer (p >= 2).
inline unsigned long valuation_of_integer(const BigInt& n, unsigned long p) {
    if (n == 0) throw Error("valuation of zero");
    BigInt t = n;
    return mpz_remove(t.get_mpz_t(), n.get_mpz_t(), BigInt(p).get_mpz_t());
}

/// All a_i are p-integral and a_0 is a p-adic unit.
inline bool is_regular_prime(const Lrs& u, unsigned long p) {
    for (const auto& a : u.coefficients())
        if (mpz_divisible_ui_p(a.get_den().get_mpz_t(), p)) return false;
    if (u.is_zero()) return true;
    return !mpz_divisible_ui_p(u.coefficients()[0].get_num().get_mpz_t(), p);
}

/// Stable 64-bit identity hash (FNV-1a) over the canonical text of the data.
inline std::uint64_t identity_hash(const Lrs& u) {
    std::string text = "order=" + std::to_string(u.order()) + ";a=";
    for (const auto& a : u.coefficients()) text += to_fraction_string(a) + ",";
    text += ";u=";
    for (const auto& v : u.initial()) text += to_fraction_string(v) + ",";
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace lrsz
