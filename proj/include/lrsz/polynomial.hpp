#pragma once

// Dense univariate polynomials over Z with exact division, gcd, resultants,
// discriminants and cyclotomic polynomials.

#include "lrsz/bigint.hpp"

#include <algorithm>
#include <initializer_list>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace lrsz {

/// Coefficients stored ascending (index = degree). The zero polynomial is the
/// empty list; otherwise the leading coefficient is nonzero.
class IntPolynomial {
public:
    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { trim(); }
    IntPolynomial(std::initializer_list<long> coeffs) {
        c_.reserve(coeffs.size());
        for (long v : coeffs) c_.emplace_back(v);
        trim();
    }

    static IntPolynomial constant(const BigInt& v) { return IntPolynomial(std::vector<BigInt>{v}); }

    static IntPolynomial monomial(const BigInt& coeff, std::size_t degree) {
        std::vector<BigInt> c(degree + 1);
        c[degree] = coeff;
        return IntPolynomial(std::move(c));
    }

    /// X - root
    static IntPolynomial linear(const BigInt& root) { return IntPolynomial(std::vector<BigInt>{-root, 1}); }

    bool is_zero() const { return c_.empty(); }
    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    std::span<const BigInt> coefficients() const { return c_; }

    BigInt coeff(std::size_t i) const { return i < c_.size() ? c_[i] : BigInt(0); }
    const BigInt& leading() const {
        if (c_.empty()) throw Error("zero polynomial");
        return c_.back();
    }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }

    BigInt content() const {
        BigInt g = 0;
        for (const auto& v : c_) g = gcd(g, v);
        return g;
    }

    /// Divided by its content, with positive leading coefficient.
    IntPolynomial primitive_part() const {
        if (is_zero()) return {};
        BigInt g = content();
        if (c_.back() < 0) g = -g;
        std::vector<BigInt> out(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) out[i] = divexact(c_[i], g);
        return IntPolynomial(std::move(out));
    }

    IntPolynomial derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<BigInt> out(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) out[i - 1] = c_[i] * static_cast<unsigned long>(i);
        return IntPolynomial(std::move(out));
    }

    BigInt evaluate(const BigInt& x) const {
        BigInt acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    BigRational evaluate(const BigRational& x) const {
        BigRational acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + BigRational(*it);
        return acc;
    }

    /// f(c X)
    IntPolynomial scale_variable(const BigInt& c) const {
        std::vector<BigInt> out(c_);
        BigInt pw = 1;
        for (auto& v : out) {
            v *= pw;
            pw *= c;
        }
        return IntPolynomial(std::move(out));
    }

    /// f(X^k)
    IntPolynomial substitute_power(std::size_t k) const {
        if (is_zero()) return {};
        std::vector<BigInt> out((c_.size() - 1) * k + 1);
        for (std::size_t i = 0; i < c_.size(); ++i) out[i * k] = c_[i];
        return IntPolynomial(std::move(out));
    }

    IntPolynomial operator-() const {
        std::vector<BigInt> out(c_);
        for (auto& v : out) v = -v;
        return IntPolynomial(std::move(out));
    }

    friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
        std::vector<BigInt> out(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.coeff(i) + b.coeff(i);
        return IntPolynomial(std::move(out));
    }
    friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) { return a + (-b); }

    friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<BigInt> out(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
        }
        return IntPolynomial(std::move(out));
    }
    friend IntPolynomial operator*(const BigInt& s, const IntPolynomial& a) {
        std::vector<BigInt> out(a.c_);
        for (auto& v : out) v *= s;
        return IntPolynomial(std::move(out));
    }

    IntPolynomial pow(unsigned e) const {
        IntPolynomial result = constant(1), base = *this;
        while (e) {
            if (e & 1U) result = result * base;
            e >>= 1U;
            if (e) base = base * base;
        }
        return result;
    }

    friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) { return a.c_ == b.c_; }

    std::string to_string(char var = 'X') const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (int i = degree(); i >= 0; --i) {
            const BigInt& v = c_[static_cast<std::size_t>(i)];
            if (v == 0) continue;
            BigInt mag = abs(v);
            if (first) {
                if (v < 0) os << "-";
            } else {
                os << (v < 0 ? " - " : " + ");
            }
            first = false;
            if (i == 0 || mag != 1) os << mag;
            if (i >= 1) os << var;
            if (i >= 2) os << "^" << i;
        }
        return os.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const IntPolynomial& f) { return os << f.to_string(); }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<BigInt> c_;
};

/// Quotient q with f = q*g in Z[X], or nullopt when g does not divide f there.
inline std::optional<IntPolynomial> exact_divide(const IntPolynomial& f, const IntPolynomial& g) {
    if (g.is_zero()) throw Error("zero polynomial");
    if (f.is_zero()) return IntPolynomial{};
    if (f.degree() < g.degree()) return std::nullopt;
    std::vector<BigInt> rem(f.coefficients().begin(), f.coefficients().end());
    const int dg = g.degree();
    std::vector<BigInt> quot(static_cast<std::size_t>(f.degree() - dg + 1));
    const BigInt& lc = g.leading();
    for (int i = f.degree(); i >= dg; --i) {
        BigInt& top = rem[static_cast<std::size_t>(i)];
        if (top == 0) continue;
        if (!mpz_divisible_p(top.get_mpz_t(), lc.get_mpz_t())) return std::nullopt;
        BigInt q = divexact(top, lc);
        quot[static_cast<std::size_t>(i - dg)] = q;
        for (int j = 0; j <= dg; ++j) rem[static_cast<std::size_t>(i - dg + j)] -= q * g.coeff(static_cast<std::size_t>(j));
    }
    for (const auto& v : rem)
        if (v != 0) return std::nullopt;
    return IntPolynomial(std::move(quot));
}

/// Coefficientwise exact division by a nonzero integer.
inline IntPolynomial divexact_poly(const IntPolynomial& f, const BigInt& d) {
    std::vector<BigInt> out(f.coefficients().begin(), f.coefficients().end());
    for (auto& v : out) v = divexact(v, d);
    return IntPolynomial(std::move(out));
}

/// lc(g)^(deg f - deg g + 1) * f mod g, computed without fractions.
inline IntPolynomial pseudo_remainder(const IntPolynomial& f, const IntPolynomial& g) {
    if (g.is_zero()) throw Error("zero polynomial");
    if (f.degree() < g.degree()) return f;
    std::vector<BigInt> rem(f.coefficients().begin(), f.coefficients().end());
    const int dg = g.degree();
    const BigInt& lc = g.leading();
    for (int i = f.degree(); i >= dg; --i) {
        BigInt top = rem[static_cast<std::size_t>(i)];
        for (auto& v : rem) v *= lc;
        for (int j = 0; j <= dg; ++j) rem[static_cast<std::size_t>(i - dg + j)] -= top * g.coeff(static_cast<std::size_t>(j));
    }
    return IntPolynomial(std::move(rem));
}

/// Greatest common divisor in Z[X], normalized to positive leading coefficient.
inline IntPolynomial gcd(const IntPolynomial& f, const IntPolynomial& g) {
    if (f.is_zero()) return (!g.is_zero() && g.leading() < 0) ? -g : g;
    if (g.is_zero()) return gcd(g, f);
    BigInt cont = gcd(f.content(), g.content());
    IntPolynomial a = f.primitive_part(), b = g.primitive_part();
    if (a.degree() < b.degree()) std::swap(a, b);
    while (!b.is_zero()) {
        IntPolynomial r = pseudo_remainder(a, b);
        a = std::move(b);
        b = r.primitive_part();
    }
    return cont * a.primitive_part();
}

/// Res_X(f, g) by the subresultant PRS; exact and fraction-free.
inline BigInt resultant(const IntPolynomial& f, const IntPolynomial& g) {
    if (f.is_zero() || g.is_zero()) throw Error("zero polynomial");
    IntPolynomial a = f, b = g;
    int sign = 1;
    if (a.degree() < b.degree()) {
        std::swap(a, b);
        if ((a.degree() % 2 == 1) && (b.degree() % 2 == 1)) sign = -sign;
    }
    if (b.degree() == 0) {
        BigInt r = pow(b.leading(), static_cast<unsigned long>(a.degree()));
        return sign < 0 ? BigInt(-r) : r;
    }
    BigInt ca = a.content(), cb = b.content();
    a = divexact_poly(a, ca);
    b = divexact_poly(b, cb);
    BigInt t = pow(ca, static_cast<unsigned long>(b.degree())) * pow(cb, static_cast<unsigned long>(a.degree()));
    BigInt gg = 1, h = 1;
    while (true) {
        int delta = a.degree() - b.degree();
        if ((a.degree() % 2 == 1) && (b.degree() % 2 == 1)) sign = -sign;
        IntPolynomial r = pseudo_remainder(a, b);
        a = b;
        if (r.is_zero()) return 0;
        BigInt denom = gg * pow(h, static_cast<unsigned long>(delta));
        b = divexact_poly(r, denom);
        gg = a.leading();
        // h <- h^(1 - delta) * g^delta; unchanged when delta == 0
        if (delta > 0) h = divexact(pow(gg, static_cast<unsigned long>(delta)), pow(h, static_cast<unsigned long>(delta - 1)));
        if (b.degree() <= 0) break;
    }
    const int da = a.degree();
    BigInt hfin = divexact(pow(b.leading(), static_cast<unsigned long>(da)), pow(h, static_cast<unsigned long>(da - 1)));
    BigInt res = t * hfin;
    return sign < 0 ? BigInt(-res) : res;
}

/// (-1)^(n(n-1)/2) Res(f, f') / lc(f), n = deg f.
inline BigRational discriminant(const IntPolynomial& f) {
    if (f.degree() < 1) throw Error("discriminant of a constant polynomial");
    const long n = f.degree();
    BigInt r = resultant(f, f.derivative());
    if ((n * (n - 1) / 2) % 2 == 1) r = -r;
    return make_rational(r, f.leading());
}

/// Phi_d, by exact division of X^d - 1 by Phi_e over the proper divisors e of d.
inline IntPolynomial cyclotomic(unsigned long d) {
    if (d == 0) throw Error("cyclotomic index must be positive");
    std::vector<unsigned long> divisors;
    for (unsigned long e = 1; e <= d; ++e)
        if (d % e == 0) divisors.push_back(e);
    std::map<unsigned long, IntPolynomial> phi;
    for (unsigned long e : divisors) {
        IntPolynomial acc = IntPolynomial::monomial(1, e) - IntPolynomial::constant(1);
        for (const auto& [k, pk] : phi) {
            if (e % k != 0) continue;
            auto q = exact_divide(acc, pk);
            if (!q) throw Error("cyclotomic division failed");
            acc = std::move(*q);
        }
        phi.emplace(e, std::move(acc));
    }
    return phi.at(d);
}

namespace detail {

/// Newton interpolation over Q of values at consecutive integer nodes; the
/// result must be integral (throws otherwise).
inline IntPolynomial interpolate_integral(std::span<const BigInt> nodes, std::span<const BigInt> values) {
    const std::size_t n = nodes.size();
    std::vector<BigRational> dd(values.begin(), values.end());
    for (std::size_t level = 1; level < n; ++level)
        for (std::size_t i = n - 1; i >= level; --i)
            dd[i] = (dd[i] - dd[i - 1]) / BigRational(nodes[i] - nodes[i - level]);
    // Expand the Newton form into monomial coefficients.
    std::vector<BigRational> coeffs(1, dd[n - 1]);
    for (std::size_t k = n - 1; k-- > 0;) {
        std::vector<BigRational> next(coeffs.size() + 1);
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            next[i + 1] += coeffs[i];
            next[i] -= coeffs[i] * BigRational(nodes[k]);
        }
        next[0] += dd[k];
        coeffs = std::move(next);
    }
    std::vector<BigInt> out;
    out.reserve(coeffs.size());
    for (auto& c : coeffs) {
        c.canonicalize();
        if (c.get_den() != 1) throw Error("interpolated polynomial is not integral");
        out.push_back(c.get_num());
    }
    return IntPolynomial(std::move(out));
}

}  // namespace detail

/// Res_X(P(X), P(XY)) as a polynomial in Y of degree m^2. For monic P this is
/// the product over roots of prod_j (lambda_i Y - lambda_j); its roots are the
/// ratios lambda_j / lambda_i. Computed by exact evaluation at m^2 + 1 integer
/// points followed by interpolation.
inline IntPolynomial bivariate_ratio_resultant(const IntPolynomial& P) {
    if (P.degree() < 1 || !P.is_monic() || P.coeff(0) == 0) throw Error("invalid characteristic polynomial");
    const std::size_t m = static_cast<std::size_t>(P.degree());
    const std::size_t npts = m * m + 1;
    std::vector<BigInt> nodes, values;
    for (std::size_t i = 0; i < npts; ++i) {
        BigInt y = big(static_cast<std::int64_t>(i) - static_cast<std::int64_t>(npts / 2));
        nodes.push_back(y);
        if (y == 0) {
            values.push_back(pow(P.coeff(0), static_cast<unsigned long>(m)));
        } else {
            values.push_back(resultant(P, P.scale_variable(y)));
        }
    }
    return detail::interpolate_integral(nodes, values);
}

}  // namespace lrsz
