#pragma once

// Truncated p-adic arithmetic over Z_p: valuations, scalars and matrices
// modulo p^K, matrix exponential and logarithm, multiplicative orders, and the
// lifting-the-exponent law.

#include "lrsz/bigint.hpp"
#include "lrsz/factor.hpp"
#include "lrsz/lrs.hpp"

#include <compare>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace lrsz {

/// An integer valuation or +infinity.
class Valuation {
public:
    constexpr Valuation() = default;
    constexpr explicit Valuation(long v) : value_(v) {}
    static constexpr Valuation infinity() {
        Valuation v;
        v.infinite_ = true;
        return v;
    }

    constexpr bool is_infinite() const { return infinite_; }
    long value() const {
        if (infinite_) throw Error("infinite valuation has no finite value");
        return value_;
    }

    friend constexpr bool operator==(const Valuation& a, const Valuation& b) {
        return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
    }
    friend constexpr std::strong_ordering operator<=>(const Valuation& a, const Valuation& b) {
        if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
        return a.value_ <=> b.value_;
    }

    std::string to_string() const { return infinite_ ? "inf" : std::to_string(value_); }
    friend std::ostream& operator<<(std::ostream& os, const Valuation& v) { return os << v.to_string(); }

private:
    long value_ = 0;
    bool infinite_ = false;
};

inline Valuation valuation(const BigInt& x, unsigned long p) {
    if (x == 0) return Valuation::infinity();
    return Valuation(static_cast<long>(valuation_of_integer(x, p)));
}

/// nu_p(x) for rational x; +infinity at 0.
inline Valuation valuation(const BigRational& x, unsigned long p) {
    if (x == 0) return Valuation::infinity();
    const long num = static_cast<long>(valuation_of_integer(x.get_num(), p));
    const long den = static_cast<long>(valuation_of_integer(x.get_den(), p));
    return Valuation(num - den);
}

/// nu_p of a residue modulo p^K: values at or beyond K read as "unknown", so a
/// zero residue reports K (the caller treats that as a lower bound).
inline long residue_valuation(const BigInt& r, unsigned long p, long K) {
    if (r == 0) return K;
    return std::min<long>(K, static_cast<long>(valuation_of_integer(r, p)));
}

/// Reduction of a p-integral rational into Z/p^K.
inline BigInt reduce_rational(const BigRational& x, const BigInt& modulus) {
    return mod(x.get_num() * invmod(x.get_den(), modulus), modulus);
}

/// Element of Z/p^K viewed as a truncated p-adic integer.
class PadicScalar {
public:
    PadicScalar(unsigned long p, long K, const BigInt& value) : p_(p), K_(K), mod_(pow_ui(p, static_cast<unsigned long>(K))) {
        if (K < 1) throw Error("precision must be positive");
        residue_ = mod(value, mod_);
    }

    static PadicScalar from_rational(unsigned long p, long K, const BigRational& x) {
        if (lrsz::valuation(x, p) < Valuation(0)) throw Error("rational is not p-integral");
        const BigInt m = pow_ui(p, static_cast<unsigned long>(K));
        return PadicScalar(p, K, reduce_rational(x, m));
    }

    unsigned long prime() const { return p_; }
    long precision() const { return K_; }
    const BigInt& residue() const { return residue_; }
    const BigInt& modulus() const { return mod_; }

    /// Infinite when the residue is 0, i.e. valuation >= K.
    Valuation valuation() const {
        if (residue_ == 0) return Valuation::infinity();
        return Valuation(static_cast<long>(valuation_of_integer(residue_, p_)));
    }

    PadicScalar inverse() const {
        if (mpz_divisible_ui_p(residue_.get_mpz_t(), p_)) throw Error("not a p-adic unit");
        return PadicScalar(p_, K_, invmod(residue_, mod_));
    }

    friend PadicScalar operator+(const PadicScalar& a, const PadicScalar& b) { return a.with(a.residue_ + b.residue_); }
    friend PadicScalar operator-(const PadicScalar& a, const PadicScalar& b) { return a.with(a.residue_ - b.residue_); }
    friend PadicScalar operator*(const PadicScalar& a, const PadicScalar& b) { return a.with(a.residue_ * b.residue_); }
    friend bool operator==(const PadicScalar& a, const PadicScalar& b) {
        return a.p_ == b.p_ && a.K_ == b.K_ && a.residue_ == b.residue_;
    }

private:
    PadicScalar with(const BigInt& v) const { return PadicScalar(p_, K_, v); }

    unsigned long p_;
    long K_;
    BigInt mod_;
    BigInt residue_;
};

/// Square matrix over Z/p^K.
class PadicMatrix {
public:
    PadicMatrix(unsigned long p, long K, std::size_t dim)
        : p_(p), K_(K), mod_(pow_ui(p, static_cast<unsigned long>(K))), dim_(dim), e_(dim * dim) {
        if (K < 1) throw Error("precision must be positive");
    }

    static PadicMatrix identity(unsigned long p, long K, std::size_t dim) {
        PadicMatrix r(p, K, dim);
        for (std::size_t i = 0; i < dim; ++i) r.e_[i * dim + i] = 1;
        return r;
    }

    static PadicMatrix from_rows(unsigned long p, long K, const std::vector<std::vector<long>>& rows) {
        PadicMatrix r(p, K, rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != rows.size()) throw Error("matrix must be square");
            for (std::size_t j = 0; j < rows.size(); ++j) r.set(i, j, BigInt(rows[i][j]));
        }
        return r;
    }

    unsigned long prime() const { return p_; }
    long precision() const { return K_; }
    std::size_t dim() const { return dim_; }
    const BigInt& modulus() const { return mod_; }

    const BigInt& at(std::size_t i, std::size_t j) const { return e_[i * dim_ + j]; }
    void set(std::size_t i, std::size_t j, const BigInt& v) { e_[i * dim_ + j] = mod(v, mod_); }

    /// Same entries reduced (or lifted, by their integer representatives) to precision K2.
    PadicMatrix with_precision(long K2) const {
        PadicMatrix r(p_, K2, dim_);
        for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = mod(e_[i], r.mod_);
        return r;
    }

    /// Minimum entry valuation; K when every entry is zero.
    long min_valuation() const {
        long v = K_;
        for (const auto& x : e_) v = std::min(v, residue_valuation(x, p_, K_));
        return v;
    }

    bool is_identity() const { return *this == identity(p_, K_, dim_); }

    friend PadicMatrix operator*(const PadicMatrix& a, const PadicMatrix& b) {
        a.check_compatible(b);
        PadicMatrix r(a.p_, a.K_, a.dim_);
        const std::size_t n = a.dim_;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) {
                const BigInt& x = a.e_[i * n + k];
                if (x == 0) continue;
                for (std::size_t j = 0; j < n; ++j) r.e_[i * n + j] += x * b.e_[k * n + j];
            }
        for (auto& x : r.e_) mpz_mod(x.get_mpz_t(), x.get_mpz_t(), r.mod_.get_mpz_t());
        return r;
    }
    friend PadicMatrix operator+(const PadicMatrix& a, const PadicMatrix& b) {
        a.check_compatible(b);
        PadicMatrix r(a);
        for (std::size_t i = 0; i < r.e_.size(); ++i) r.e_[i] = mod(a.e_[i] + b.e_[i], r.mod_);
        return r;
    }
    friend PadicMatrix operator-(const PadicMatrix& a, const PadicMatrix& b) {
        a.check_compatible(b);
        PadicMatrix r(a);
        for (std::size_t i = 0; i < r.e_.size(); ++i) r.e_[i] = mod(a.e_[i] - b.e_[i], r.mod_);
        return r;
    }
    friend PadicMatrix operator*(const BigInt& s, const PadicMatrix& a) {
        PadicMatrix r(a);
        for (auto& x : r.e_) x = mod(x * s, r.mod_);
        return r;
    }
    friend bool operator==(const PadicMatrix& a, const PadicMatrix& b) {
        return a.p_ == b.p_ && a.K_ == b.K_ && a.dim_ == b.dim_ && a.e_ == b.e_;
    }

    std::vector<BigInt> apply(const std::vector<BigInt>& v) const {
        std::vector<BigInt> out(dim_);
        for (std::size_t i = 0; i < dim_; ++i) {
            BigInt acc = 0;
            for (std::size_t j = 0; j < dim_; ++j) acc += e_[i * dim_ + j] * v[j];
            out[i] = mod(acc, mod_);
        }
        return out;
    }

    PadicMatrix power(BigInt e) const {
        if (e < 0) throw Error("negative matrix power");
        PadicMatrix r = identity(p_, K_, dim_), base = *this;
        while (e > 0) {
            if (mpz_odd_p(e.get_mpz_t())) r = r * base;
            e >>= 1;
            if (e > 0) base = base * base;
        }
        return r;
    }

    /// Determinant modulo p (Gaussian elimination over F_p).
    BigInt det_mod_p() const {
        const BigInt P(p_);
        std::vector<BigInt> a(e_.size());
        for (std::size_t i = 0; i < e_.size(); ++i) a[i] = mod(e_[i], P);
        const std::size_t n = dim_;
        BigInt det = 1;
        for (std::size_t col = 0; col < n; ++col) {
            std::size_t piv = col;
            while (piv < n && a[piv * n + col] == 0) ++piv;
            if (piv == n) return 0;
            if (piv != col) {
                for (std::size_t j = 0; j < n; ++j) std::swap(a[piv * n + j], a[col * n + j]);
                det = -det;
            }
            det = mod(det * a[col * n + col], P);
            const BigInt inv = invmod(a[col * n + col], P);
            for (std::size_t r = col + 1; r < n; ++r) {
                const BigInt f = mod(a[r * n + col] * inv, P);
                if (f == 0) continue;
                for (std::size_t j = col; j < n; ++j) a[r * n + j] = mod(a[r * n + j] - f * a[col * n + j], P);
            }
        }
        return mod(det, P);
    }

    /// Inverse over Z/p^K; requires det not divisible by p.
    PadicMatrix inverse() const {
        const std::size_t n = dim_;
        std::vector<BigInt> a(e_), inv = identity(p_, K_, n).e_;
        for (std::size_t col = 0; col < n; ++col) {
            std::size_t piv = col;
            while (piv < n && mpz_divisible_ui_p(a[piv * n + col].get_mpz_t(), p_)) ++piv;
            if (piv == n) throw Error("matrix not invertible modulo p");
            if (piv != col)
                for (std::size_t j = 0; j < n; ++j) {
                    std::swap(a[piv * n + j], a[col * n + j]);
                    std::swap(inv[piv * n + j], inv[col * n + j]);
                }
            const BigInt pinv = invmod(a[col * n + col], mod_);
            for (std::size_t j = 0; j < n; ++j) {
                a[col * n + j] = mod(a[col * n + j] * pinv, mod_);
                inv[col * n + j] = mod(inv[col * n + j] * pinv, mod_);
            }
            for (std::size_t r = 0; r < n; ++r) {
                if (r == col || a[r * n + col] == 0) continue;
                const BigInt f = a[r * n + col];
                for (std::size_t j = 0; j < n; ++j) {
                    a[r * n + j] = mod(a[r * n + j] - f * a[col * n + j], mod_);
                    inv[r * n + j] = mod(inv[r * n + j] - f * inv[col * n + j], mod_);
                }
            }
        }
        PadicMatrix r(p_, K_, n);
        r.e_ = std::move(inv);
        return r;
    }

private:
    void check_compatible(const PadicMatrix& b) const {
        if (p_ != b.p_ || K_ != b.K_ || dim_ != b.dim_) throw Error("incompatible p-adic matrices");
    }

    unsigned long p_;
    long K_;
    BigInt mod_;
    std::size_t dim_;
    std::vector<BigInt> e_;
};

/// Companion matrix of u over Z/p^K; throws unless p is regular for u.
inline PadicMatrix companion_matrix(const Lrs& u, unsigned long p, long K) {
    if (u.is_zero()) throw Error("zero LRS has no companion matrix");
    if (!is_regular_prime(u, p)) throw Error("prime not regular");
    const std::size_t m = u.order();
    PadicMatrix c(p, K, m);
    for (std::size_t i = 0; i + 1 < m; ++i) c.set(i, i + 1, 1);
    for (std::size_t j = 0; j < m; ++j) c.set(m - 1, j, reduce_rational(u.coefficients()[j], c.modulus()));
    return c;
}

/// Least r >= 1 with x^r = 1 mod p, by descending through the divisors of p - 1.
inline BigInt multiplicative_order(const BigInt& x, unsigned long p) {
    const BigInt P(p);
    const BigInt xr = mod(x, P);
    if (xr == 0) throw Error("valuation nonzero");
    BigInt order = P - 1;
    if (order == 1) return 1;
    for (const auto& f : factor_integer(order).factors) {
        for (unsigned long k = 0; k < f.exponent; ++k) {
            BigInt cand = divexact(order, f.prime);
            if (powmod(xr, cand, P) != 1) break;
            order = std::move(cand);
        }
    }
    return order;
}

/// Least N with M^N = I modulo p^c, found by descent from the order of
/// GL_m(Z/p^c) = p^(m^2 (c-1) + m(m-1)/2) * prod_{k=1..m} (p^k - 1).
inline BigInt matrix_group_order(const PadicMatrix& M, long c) {
    const unsigned long p = M.prime();
    if (c < 1 || c > M.precision()) throw Error("group level must lie in [1, precision]");
    if (M.det_mod_p() == 0) throw Error("prime not regular");
    const std::size_t m = M.dim();
    const PadicMatrix Mc = M.with_precision(c);
    std::map<BigInt, unsigned long> exps;
    exps[BigInt(p)] += static_cast<unsigned long>(m * m * static_cast<std::size_t>(c - 1) + m * (m - 1) / 2);
    for (std::size_t k = 1; k <= m; ++k) {
        const BigInt v = pow_ui(p, static_cast<unsigned long>(k)) - 1;
        if (v == 1) continue;
        for (const auto& f : factor_integer(v).factors) exps[f.prime] += f.exponent;
    }
    BigInt order = 1;
    for (const auto& [q, e] : exps) order *= pow(q, e);
    for (const auto& [q, e] : exps) {
        for (unsigned long k = 0; k < e; ++k) {
            BigInt cand = divexact(order, q);
            if (!Mc.power(cand).is_identity()) break;
            order = std::move(cand);
        }
    }
    return order;
}

namespace detail {

/// nu_p(n!) by Legendre's formula.
inline long factorial_valuation(unsigned long n, unsigned long p) {
    long v = 0;
    for (unsigned long q = n / p; q > 0; q /= p) v += static_cast<long>(q);
    return v;
}

inline long floor_log(unsigned long j, unsigned long p) {
    long k = 0;
    for (unsigned long q = p; q <= j; q *= p) ++k;
    return k;
}

/// Divide each entry (an integer divisible by p^v) by p^v * unit modulo mod.
inline PadicMatrix scaled_term(const PadicMatrix& power, unsigned long p, long v, const BigInt& unit, long K_out) {
    PadicMatrix out(p, K_out, power.dim());
    const BigInt pv = pow_ui(p, static_cast<unsigned long>(v));
    const BigInt uinv = invmod(unit, out.modulus());
    for (std::size_t i = 0; i < power.dim(); ++i)
        for (std::size_t j = 0; j < power.dim(); ++j) out.set(i, j, divexact(power.at(i, j), pv) * uinv);
    return out;
}

}  // namespace detail

/// log(M) = sum_{j>=1} (-1)^(j-1) (M - I)^j / j for M = I mod p^c with
/// c > 1/(p-1). Terms stop once j*c - nu_p(j) >= K; the lower bound
/// j*c - log_p(j) is increasing, so every later term vanishes mod p^K.
inline PadicMatrix matrix_log(const PadicMatrix& M, long c) {
    const unsigned long p = M.prime();
    const long K = M.precision();
    if (c < 1 || static_cast<long>(p - 1) * c <= 1) throw Error("outside logarithm disk");
    const PadicMatrix X = M - PadicMatrix::identity(p, K, M.dim());
    if (X.min_valuation() < c) throw Error("outside logarithm disk");
    unsigned long J = 1;
    long extra = 0;
    while (static_cast<long>(J) * c - detail::floor_log(J, p) < K) {
        extra = std::max(extra, static_cast<long>(valuation_of_integer(BigInt(J), p)));
        ++J;
    }
    const long Kw = K + extra;
    const PadicMatrix Xw = X.with_precision(Kw);
    PadicMatrix result(p, K, M.dim()), P = PadicMatrix::identity(p, Kw, M.dim());
    for (unsigned long j = 1; j < J; ++j) {
        P = P * Xw;
        const long v = static_cast<long>(valuation_of_integer(BigInt(j), p));
        BigInt unit = divexact(BigInt(j), pow_ui(p, static_cast<unsigned long>(v)));
        if (j % 2 == 0) unit = -unit;
        result = result + detail::scaled_term(P, p, v, unit, K);
    }
    return result;
}

/// exp(L) = sum L^j / j! for entries of valuation c > 1/(p-1). The bound
/// nu_p(j!) <= (j-1)/(p-1) certifies that terms with
/// j*c - (j-1)/(p-1) >= K vanish modulo p^K.
inline PadicMatrix matrix_exp(const PadicMatrix& L) {
    const unsigned long p = L.prime();
    const long K = L.precision();
    const long c = L.min_valuation();
    if (c >= K) return PadicMatrix::identity(p, K, L.dim());
    if (static_cast<long>(p - 1) * c <= 1) throw Error("outside exponential disk");
    unsigned long J = 1;  // first index whose term (and all later ones) vanish
    while (static_cast<long>(J) * c * static_cast<long>(p - 1) - static_cast<long>(J - 1) < K * static_cast<long>(p - 1)) ++J;
    const long Kw = K + detail::factorial_valuation(J, p);
    const PadicMatrix Lw = L.with_precision(Kw);
    PadicMatrix result = PadicMatrix::identity(p, K, L.dim()), P = PadicMatrix::identity(p, Kw, L.dim());
    BigInt fact = 1;
    for (unsigned long j = 1; j < J; ++j) {
        P = P * Lw;
        fact *= j;
        const long v = detail::factorial_valuation(j, p);
        const BigInt unit = divexact(fact, pow_ui(p, static_cast<unsigned long>(v)));
        result = result + detail::scaled_term(P, p, v, unit, K);
    }
    return result;
}

/// nu_p(theta^n - 1) = nu_p(theta - 1) + nu_p(n), valid when
/// nu_p(theta - 1) > 1/(p-1) (ramification index 1).
inline long lte_valuation(const BigRational& theta, unsigned long p, std::int64_t n) {
    if (n == 0) throw Error("LTE inapplicable");
    const Valuation v = valuation(theta - 1, p);
    if (v.is_infinite() || v <= Valuation(0)) throw Error("LTE inapplicable");
    if (static_cast<long>(p - 1) * v.value() <= 1) throw Error("LTE inapplicable");
    return v.value() + static_cast<long>(valuation_of_integer(big(n), p));
}

/// The p-adic image of a rational LRS: p^shift * U(n) modulo p^K, where shift
/// makes every term p-integral (for a regular prime, the terms' valuations are
/// bounded below by those of the initial values).
class PadicSequence {
public:
    PadicSequence(const Lrs& u, unsigned long p, long K)
        : p_(p), K_(K), forward_(companion_matrix(u, p, K)), backward_(forward_.inverse()) {
        long shift = 0;
        for (const auto& v : u.initial()) {
            const Valuation nu = valuation(v, p);
            if (!nu.is_infinite()) shift = std::max(shift, -nu.value());
        }
        shift_ = shift;
        const BigRational scale(pow_ui(p, static_cast<unsigned long>(shift)));
        for (const auto& v : u.initial()) state0_.push_back(reduce_rational(v * scale, forward_.modulus()));
        coeffs_.reserve(u.order());
        for (const auto& a : u.coefficients()) coeffs_.push_back(reduce_rational(a, forward_.modulus()));
    }

    unsigned long prime() const { return p_; }
    long precision() const { return K_; }
    long shift() const { return shift_; }
    const BigInt& modulus() const { return forward_.modulus(); }
    const PadicMatrix& companion() const { return forward_; }
    const std::vector<BigInt>& initial_state() const { return state0_; }

    /// p^shift * U(n) mod p^K
    BigInt value_at(std::int64_t n) const { return state_at(n)[0]; }

    std::vector<BigInt> state_at(std::int64_t n) const { return state_at(big(n)); }

    std::vector<BigInt> state_at(const BigInt& n) const {
        const PadicMatrix step = n >= 0 ? forward_.power(n) : backward_.power(-n);
        return step.apply(state0_);
    }

    /// Residues at start, start + step, ..., count terms.
    std::vector<BigInt> progression(const BigInt& start, const BigInt& step, std::size_t count) const {
        const PadicMatrix jump = step >= 0 ? forward_.power(step) : backward_.power(-step);
        std::vector<BigInt> w = state_at(start), out;
        out.reserve(count);
        for (std::size_t i = 0; i < count; ++i) {
            out.push_back(w[0]);
            if (i + 1 < count) w = jump.apply(w);
        }
        return out;
    }

    /// nu_p(U(n)) when certified (< K - shift), otherwise nullopt.
    std::optional<long> valuation_at(std::int64_t n) const { return certified(value_at(n)); }

    std::optional<long> certified(const BigInt& residue) const {
        if (residue == 0) return std::nullopt;
        return static_cast<long>(valuation_of_integer(residue, p_)) - shift_;
    }

    /// Residues for n = lo, ..., hi by stepping the recurrence.
    std::vector<BigInt> range(std::int64_t lo, std::int64_t hi) const {
        if (hi < lo) return {};
        const std::size_t m = coeffs_.size();
        std::vector<BigInt> out(static_cast<std::size_t>(hi - lo + 1));
        std::vector<BigInt> w = state_at(lo);
        for (std::int64_t n = lo; n <= hi; ++n) {
            out[static_cast<std::size_t>(n - lo)] = w[0];
            BigInt next = 0;
            for (std::size_t i = 0; i < m; ++i) next += coeffs_[i] * w[i];
            w.erase(w.begin());
            w.push_back(mod(next, modulus()));
        }
        return out;
    }

private:
    unsigned long p_;
    long K_;
    long shift_ = 0;
    PadicMatrix forward_;
    PadicMatrix backward_;
    std::vector<BigInt> state0_;
    std::vector<BigInt> coeffs_;
};

}  // namespace lrsz
