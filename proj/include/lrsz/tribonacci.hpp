#pragma once

// Twisted rational zeros of the Tribonacci sequence T(n+3) = T(n+2) + T(n+1) + T(n),
// T(0) = 0, T(1) = T(2) = 1. A TRZ a satisfies 3a in Z and 3a is a zero of the
// auxiliary order-4 sequence W; the zeros of W are certified p-adically and
// each candidate is confirmed numerically.

#include "lrsz/bigint.hpp"
#include "lrsz/lrs.hpp"
#include "lrsz/polynomial.hpp"
#include "lrsz/real.hpp"
#include "lrsz/skolem.hpp"

#include <array>
#include <map>
#include <string>
#include <vector>

namespace lrsz {

inline Lrs tribonacci() { return make_lrs({1, 1, 1}, {0, 1, 1}); }

class TribonacciContext {
public:
    explicit TribonacciContext(long digits = 200)
        : digits_(digits), bits_(bits_for_digits(digits)), P_{-1, -1, -1, 1},
          R_{1, 4, 11, 12, 11, 4, 1}, Q_{1, 1, 2, 3, 2, 1, 1}, lambda_(bits_), lambda2_(bits_) {
        if (digits < 30) throw Error("working precision must be at least 30 digits");
        // Real root by Newton from 1.839.
        Real x(BigRational(1839, 1000), bits_);
        const Real one(1, bits_), two(2, bits_), three(3, bits_);
        for (int i = 0; i < 64; ++i) {
            const Real f = ((x - one) * x - one) * x - one;
            const Real df = (three * x - two) * x - one;
            x = x - f / df;
        }
        lambda_ = x;
        // X^3 - X^2 - X - 1 = (X - l1)(X^2 + bX + c) with b = l1 - 1, c = 1/l1.
        const Real b = x - one, c = one / x;
        const Real disc = Real(4, bits_) * c - b * b;
        Complex z{-b / two, sqrt(disc) / two};
        for (int i = 0; i < 8; ++i) {
            const Complex f = evaluate(P_.coefficients(), z);
            const Complex df = evaluate(P_.derivative().coefficients(), z);
            z = z - f / df;
        }
        lambda2_ = z;
        const Real tol = Real::power_of_ten(-(digits_ - 10), bits_);
        for (const auto& r : roots())
            if (!(evaluate(P_.coefficients(), r).abs() < tol)) throw Error("root refinement failed");
        const Complex prod = roots()[0] * roots()[1] * roots()[2];
        if (!((prod - Complex::from_integer(1, bits_)).abs() < tol)) throw Error("root product differs from 1");
        const IntPolynomial dP = P_.derivative();
        for (const auto& r : roots()) alpha_.push_back(r / evaluate(dP.coefficients(), r));
    }

    long digits() const { return digits_; }
    mpfr_prec_t bits() const { return bits_; }
    const IntPolynomial& P() const { return P_; }
    const IntPolynomial& R() const { return R_; }
    const IntPolynomial& Q() const { return Q_; }
    const Real& lambda() const { return lambda_; }
    const Complex& lambda2() const { return lambda2_; }
    /// lambda_1 (real), lambda_2 (Im > 0), lambda_3 = conj(lambda_2).
    std::array<Complex, 3> roots() const { return {Complex::from_real(lambda_), lambda2_, lambda2_.conj()}; }
    /// alpha_i = lambda_i / P'(lambda_i), so that T(n) = sum alpha_i lambda_i^n.
    const std::vector<Complex>& alpha() const { return alpha_; }

    /// 10^-e at working precision.
    Real tolerance(long e) const { return Real::power_of_ten(-e, bits_); }

    /// Cube roots with lambda_1^(1/3) real and lambda_i^(1/3) = lambda_1^(1/3) theta_i1
    /// for the root theta_i1 of Q with theta_i1^3 = lambda_i / lambda_1.
    std::array<Complex, 3> cube_roots() const {
        const Complex r1 = Complex::from_real(cbrt(lambda_));
        const Complex ratio = lambda2_ / Complex::from_real(lambda_);
        const Complex base = ratio.principal_cbrt();
        const Real half(BigRational(1, 2), bits_);
        const Real s3 = sqrt(Real(3, bits_)) * half;
        const std::array<Complex, 3> unity{Complex::from_integer(1, bits_), Complex{-half, s3}, Complex{-half, -s3}};
        Complex best = base;
        Real best_res(bits_);
        bool first = true;
        for (const auto& w : unity) {
            const Complex cand = base * w;
            const Real res = evaluate(Q_.coefficients(), cand).abs();
            if (first || res < best_res) {
                best = cand;
                best_res = res;
                first = false;
            }
        }
        if (!(best_res < tolerance(digits_ / 2))) throw Error("no root of Q is a cube root of lambda_2/lambda_1");
        const Complex r2 = r1 * best;
        return {r1, r2, r2.conj()};
    }

private:
    long digits_;
    mpfr_prec_t bits_;
    IntPolynomial P_, R_, Q_;
    Real lambda_;
    Complex lambda2_;
    std::vector<Complex> alpha_;
};

struct IdentityCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct StructureReport {
    std::vector<IdentityCheck> checks;
    IntPolynomial ratio_resultant;
    IntPolynomial cofactor;  // R(Y^3) / Q
    bool passed() const {
        return std::all_of(checks.begin(), checks.end(), [](const IdentityCheck& c) { return c.passed; });
    }
};

/// Exact identities behind the Tribonacci analysis; throws naming the first
/// identity that fails.
inline StructureReport verify_structure(const TribonacciContext& ctx) {
    StructureReport rep;
    const IntPolynomial& P = ctx.P();
    rep.ratio_resultant = bivariate_ratio_resultant(P);
    const IntPolynomial y1cubed = IntPolynomial::linear(1).pow(3);
    const auto q = exact_divide(rep.ratio_resultant, y1cubed);
    const bool a_ok = q && (*q == ctx.R() || *q == -ctx.R());
    rep.checks.push_back({"Res_X(P(X), P(XY)) = +-(Y-1)^3 R(Y)", a_ok, rep.ratio_resultant.to_string('Y')});
    const auto co = exact_divide(ctx.R().substitute_power(3), ctx.Q());
    if (co) rep.cofactor = *co;
    rep.checks.push_back({"Q(Y) divides R(Y^3)", co.has_value(),
                          co ? "cofactor degree " + std::to_string(co->degree()) : "nonzero remainder"});
    const BigInt res = resultant(P, P.derivative());
    rep.checks.push_back({"Res(P, P') = 44", res == 44, res.get_str()});
    const BigRational disc = discriminant(P);
    rep.checks.push_back({"disc(P) = -44", disc == -44, to_display_string(disc)});
    for (const auto& c : rep.checks)
        if (!c.passed) throw Error("identity failed: " + c.name + " (got " + c.detail + ")");
    return rep;
}

/// W(n) = 44 (alpha_1^3 l_1^n + alpha_2^3 l_2^n + alpha_3^3 l_3^n) - 3, i.e.
/// W(n+4) = 2 W(n+3) - W(n) with W(0..3) = 0, 0, 2, 8.
inline Lrs w_sequence() { return make_lrs({-1, 0, 0, 2}, {0, 0, 2, 8}); }

/// W = 44 (alpha_1^3 l_1^n + alpha_2^3 l_2^n + alpha_3^3 l_3^n) - 3, checked
/// against w_sequence() numerically for |n| <= 50.
inline Lrs build_W(const TribonacciContext& ctx) {
    const Lrs W = w_sequence();
    const auto r = ctx.roots();
    const Real tol = ctx.tolerance(ctx.digits() - 20);
    const Real one(1, ctx.bits());
    for (long n = -50; n <= 50; ++n) {
        Complex s(ctx.bits());
        for (int i = 0; i < 3; ++i) s = s + ctx.alpha()[i].pow(3) * r[i].pow(n);
        s = Real(44, ctx.bits()) * s - Complex::from_integer(3, ctx.bits());
        const Real exact(eval(W, n), ctx.bits());
        const Real scale = abs(exact) > one ? abs(exact) : one;
        if (!((s - Complex::from_real(exact)).abs() / scale < tol)) throw Error("W construction inconsistent");
    }
    return W;
}

/// Thrown when no prime closes every class of W; carries the last partial certificate.
class CertificationError : public Error {
public:
    CertificationError(const std::string& what, ZeroCertificate partial) : Error(what), partial_(std::move(partial)) {}
    const ZeroCertificate& partial() const { return partial_; }

private:
    ZeroCertificate partial_;
};

struct TrzCandidates {
    std::vector<BigRational> values;  // z/3 for the certified zeros z of W, increasing
    ZeroCertificate certificate;
};

/// Candidates a = z/3 from the certified zero set of W. prime = 0 picks the
/// first regular prime up to max_prime that closes all classes.
inline TrzCandidates trz_candidates(const TribonacciContext& ctx, const SkolemOptions& opts = {},
                                    unsigned long prime = 0, unsigned long max_prime = 100) {
    const Lrs W = build_W(ctx);
    if (!analyze_char_poly(W).nondegenerate) throw Error("degenerate LRS");
    const std::vector<std::int64_t> zeros = integer_zeros_in_range(W, opts.scan_bound);
    const unsigned long lo = prime ? prime : 2, hi = prime ? prime : max_prime;
    ZeroCertificate cert;
    bool found = false;
    for (unsigned long p = lo; p <= hi && !found; ++p) {
        if (!is_prime_u64(p) || !is_regular_prime(W, p)) continue;
        try {
            cert = find_zeros(W, p, opts, &zeros, false, prime == 0);
        } catch (const Error&) {
            continue;
        }
        found = cert.complete();
    }
    if (!found) throw CertificationError("zero certification of W inconclusive", std::move(cert));
    TrzCandidates out;
    for (const auto& z : cert.zeros()) out.values.push_back(make_rational(z, 3));
    out.certificate = std::move(cert);
    return out;
}

struct TrzResidual {
    BigRational a;
    Real sum_residual;      // |alpha_1 l_1^a + alpha_2 l_2^a + alpha_3 l_3^a|
    Real product_residual;  // |l_1^a l_2^a l_3^a - 1|
    bool verified = false;
};

/// Numeric check of sum alpha_i lambda_i^a = 0 and prod lambda_i^a = 1 for 3a in Z.
inline TrzResidual verify_trz_numeric(const TribonacciContext& ctx, const BigRational& a) {
    const BigRational three_a = a * 3;
    if (three_a.get_den() != 1) throw Error("3a is not an integer");
    const long n = static_cast<long>(to_i64(three_a.get_num()));
    const auto cr = ctx.cube_roots();
    Complex sum(ctx.bits()), prod = Complex::from_integer(1, ctx.bits());
    for (int i = 0; i < 3; ++i) {
        const Complex pw = cr[i].pow(n);
        sum = sum + ctx.alpha()[i] * pw;
        prod = prod * pw;
    }
    TrzResidual r{a, sum.abs(), (prod - Complex::from_integer(1, ctx.bits())).abs(), false};
    r.verified = r.sum_residual < ctx.tolerance(ctx.digits() / 2);
    return r;
}

struct TrzEvidence {
    BigRational a;
    BigInt w_zero;  // 3a, a certified zero of W
    TrzResidual residual;
    bool exact_zero_of_T = false;
};

struct TrzReport {
    std::vector<BigInt> integral_zeros;
    std::vector<BigRational> rational_trzs;  // non-integral TRZs
    std::vector<TrzEvidence> evidence;
    std::vector<BigRational> rejected;       // candidates failing the numeric check
    StructureReport structure;
    ZeroCertificate w_certificate;

    /// Integral zeros first (decreasing), then the non-integral TRZs (decreasing).
    std::vector<BigRational> all() const {
        std::vector<BigRational> out;
        for (auto it = integral_zeros.rbegin(); it != integral_zeros.rend(); ++it) out.emplace_back(*it);
        for (auto it = rational_trzs.rbegin(); it != rational_trzs.rend(); ++it) out.push_back(*it);
        return out;
    }
};

/// F(X1,X2,X3) = X1^3 + X2^3 + X3^3 - 3 X1 X2 X3 against
/// (X1+X2+X3)(X1+w X2+w^2 X3)(X1+w^2 X2+w X3) expanded over Z[w]/(w^2+w+1).
struct FactorizationCheck {
    bool passed = false;
    std::size_t product_terms = 0;
};

namespace detail {

// a + b w with w^2 = -1 - w.
struct Eisenstein {
    BigInt a = 0, b = 0;
    friend Eisenstein operator+(const Eisenstein& x, const Eisenstein& y) { return {x.a + y.a, x.b + y.b}; }
    friend Eisenstein operator*(const Eisenstein& x, const Eisenstein& y) {
        // (a + b w)(c + d w) = ac + (ad + bc) w + bd w^2 = (ac - bd) + (ad + bc - bd) w
        return {x.a * y.a - x.b * y.b, x.a * y.b + x.b * y.a - x.b * y.b};
    }
    bool is_zero() const { return a == 0 && b == 0; }
    friend bool operator==(const Eisenstein&, const Eisenstein&) = default;
};

using Monomial = std::array<unsigned, 3>;
using EisensteinPoly = std::map<Monomial, Eisenstein>;

inline EisensteinPoly multiply(const EisensteinPoly& f, const EisensteinPoly& g) {
    EisensteinPoly out;
    for (const auto& [mf, cf] : f)
        for (const auto& [mg, cg] : g) {
            const Monomial m{mf[0] + mg[0], mf[1] + mg[1], mf[2] + mg[2]};
            out[m] = out[m] + cf * cg;
        }
    std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
    return out;
}

inline EisensteinPoly linear_form(const Eisenstein& c1, const Eisenstein& c2, const Eisenstein& c3) {
    return {{{1, 0, 0}, c1}, {{0, 1, 0}, c2}, {{0, 0, 1}, c3}};
}

}  // namespace detail

inline FactorizationCheck verify_f_factorization() {
    using detail::Eisenstein;
    const Eisenstein one{1, 0}, w{0, 1}, w2{-1, -1};
    const auto prod = detail::multiply(
        detail::multiply(detail::linear_form(one, one, one), detail::linear_form(one, w, w2)),
        detail::linear_form(one, w2, w));
    const detail::EisensteinPoly F{{{3, 0, 0}, one}, {{0, 3, 0}, one}, {{0, 0, 3}, one}, {{1, 1, 1}, {-3, 0}}};
    FactorizationCheck out{prod == F, prod.size()};
    if (!out.passed) throw Error("F factorization mismatch");
    return out;
}

namespace detail {

// Prefixes any failure with the pipeline stage that raised it.
template <class F>
auto run_stage(const std::string& name, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const CertificationError& e) {
        throw CertificationError(name + " stage failed: " + e.what(), e.partial());
    } catch (const Error& e) {
        throw Error(name + " stage failed: " + e.what());
    }
}

}  // namespace detail

/// Full pipeline: identities, W, certified zeros of W, numeric confirmation.
inline TrzReport tribonacci_trz(const TribonacciContext& ctx, const SkolemOptions& opts = {},
                                unsigned long prime = 0, unsigned long max_prime = 100) {
    TrzReport rep;
    rep.structure = detail::run_stage("structure", [&] { return verify_structure(ctx); });
    const FactorizationCheck fc = detail::run_stage("structure", [] { return verify_f_factorization(); });
    rep.structure.checks.push_back({"F(X1,X2,X3) = product of the three linear forms over Z[w]", fc.passed,
                                    std::to_string(fc.product_terms) + " monomials"});
    detail::run_stage("W construction", [&] { return build_W(ctx); });
    TrzCandidates cand = detail::run_stage("certification", [&] { return trz_candidates(ctx, opts, prime, max_prime); });
    const Lrs T = tribonacci();
    for (const auto& a : cand.values) {
        TrzResidual res = detail::run_stage("numeric verification", [&] { return verify_trz_numeric(ctx, a); });
        TrzEvidence ev{a, a.get_num() * (3 / a.get_den()), std::move(res), false};
        if (a.get_den() == 1) ev.exact_zero_of_T = eval(T, to_i64(a.get_num())) == 0;
        const bool ok = a.get_den() == 1 ? ev.exact_zero_of_T : ev.residual.verified;
        if (!ok) {
            rep.rejected.push_back(a);
        } else if (a.get_den() == 1) {
            rep.integral_zeros.push_back(a.get_num());
        } else {
            rep.rational_trzs.push_back(a);
        }
        rep.evidence.push_back(std::move(ev));
    }
    rep.w_certificate = std::move(cand.certificate);
    return rep;
}

}  // namespace lrsz
