#pragma once

// Randomized property suites shared by the unit tests and the acceptance
// runner. Each suite uses a fixed seed so failures reproduce.

#include "oracles.hpp"

#include <functional>
#include <random>
#include <sstream>
#include <string>

namespace props {

using namespace lrsz;

struct Result {
    std::string name;
    std::size_t cases = 0;
    std::size_t failures = 0;
    std::string first_failure;
    bool passed() const { return failures == 0 && cases > 0; }
};

class Recorder {
public:
    explicit Recorder(std::string name) { r_.name = std::move(name); }
    void check(bool ok, const std::function<std::string()>& describe) {
        ++r_.cases;
        if (!ok && r_.failures++ == 0) r_.first_failure = describe();
    }
    Result result() const { return r_; }

private:
    Result r_;
};

inline long uniform(std::mt19937_64& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

inline const std::vector<unsigned long>& small_primes() {
    static const std::vector<unsigned long> ps{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};
    return ps;
}

/// theta = 1 + k p^a: LTE equality where it applies; otherwise the weaker
/// inequality nu(theta^n - 1) >= nu(theta - 1) + nu(n) min(1, (p-1) nu(theta - 1)).
inline Result lte(std::uint64_t seed = 1, std::size_t count = 2000) {
    std::mt19937_64 rng(seed);
    Recorder rec("LTE law vs exact valuation");
    for (std::size_t i = 0; i < count; ++i) {
        const unsigned long p = small_primes()[static_cast<std::size_t>(uniform(rng, 0, 14))];
        const long k = uniform(rng, 1, 5), a = uniform(rng, 1, 3);
        long n = uniform(rng, -200, 200);
        if (n == 0) n = 1;
        const BigRational theta = BigRational(1) + BigRational(k * static_cast<long>(pow_ui(p, a).get_si()));
        const BigRational x = n > 0 ? pow(theta, static_cast<unsigned long>(n)) : pow(1 / theta, static_cast<unsigned long>(-n));
        const long exact = oracle::slow_valuation(x - 1, p);
        const long v1 = oracle::slow_valuation(theta - 1, p);
        const long vn = oracle::slow_valuation(BigRational(n), p);
        auto where = [&] {
            std::ostringstream o;
            o << "p=" << p << " theta=" << theta << " n=" << n << " exact=" << exact;
            return o.str();
        };
        const bool applies = static_cast<long>(p - 1) * v1 > 1;
        if (applies) {
            long got = -1;
            try {
                got = lte_valuation(theta, p, n);
            } catch (const Error&) {
            }
            rec.check(got == exact, where);
        } else {
            bool threw = false;
            try {
                (void)lte_valuation(theta, p, n);
            } catch (const Error&) {
                threw = true;
            }
            rec.check(threw && exact >= v1 + vn * std::min<long>(1, static_cast<long>(p - 1) * v1), where);
        }
    }
    return rec.result();
}

inline PadicMatrix random_matrix(std::mt19937_64& rng, unsigned long p, long K, std::size_t m, long scale_exp) {
    PadicMatrix X(p, K, m);
    const BigInt scale = pow_ui(p, static_cast<unsigned long>(scale_exp));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) X.set(i, j, scale * uniform(rng, -1000, 1000));
    return X;
}

/// exp(log M) = M and log(exp L) = L modulo p^K; scalar cases also against
/// the rational series.
inline Result log_exp(std::uint64_t seed = 2, std::size_t per_pair = 112) {
    std::mt19937_64 rng(seed);
    Recorder rec("matrix log/exp round trip");
    const long K = 24;
    for (unsigned long p : {2UL, 3UL, 5UL})
        for (std::size_t m = 1; m <= 3; ++m)
            for (std::size_t i = 0; i < per_pair; ++i) {
                const long c = p == 2 ? 2 : 1;
                const long extra = uniform(rng, 0, 2);
                const PadicMatrix M = PadicMatrix::identity(p, K, m) + random_matrix(rng, p, K, m, c + extra);
                const PadicMatrix L = matrix_log(M, c);
                bool ok = matrix_exp(L) == M;
                const PadicMatrix L2 = random_matrix(rng, p, K, m, c + extra);
                ok = ok && matrix_log(matrix_exp(L2), c) == L2;
                if (m == 1) {
                    const BigInt x = M.at(0, 0) - 1;
                    if (x != 0) ok = ok && L.at(0, 0) == oracle::scalar_log(x, p, K);
                }
                rec.check(ok, [&] { return "p=" + std::to_string(p) + " m=" + std::to_string(m); });
            }
    return rec.result();
}

/// Each interpolating series against exact evaluation at 500 random points.
inline Result interpolation(std::uint64_t seed = 3, std::size_t points = 500) {
    std::mt19937_64 rng(seed);
    Recorder rec("interpolation vs exact evaluation");
    struct Case {
        Lrs u;
        unsigned long p;
        unsigned depth;
    };
    const std::vector<Case> cases{{tribonacci(), 2, 0}, {tribonacci(), 3, 1}, {w_sequence(), 2, 2},
                                  {make_lrs({16, -26, 11}, {3, 11, 69}), 5, 0}};
    SkolemOptions opts;
    opts.precision = 48;
    for (const auto& c : cases) {
        const Interpolator interp(c.u, c.p, opts);
        const BigInt modK = pow_ui(c.p, static_cast<unsigned long>(opts.precision));
        const BigRational scale(pow_ui(c.p, static_cast<unsigned long>(interp.shift())));
        ResidueClass cls = interp.root_class(static_cast<unsigned long>(uniform(rng, 0, interp.period().get_si() - 1)));
        for (unsigned d = 0; d < c.depth; ++d) cls = cls.children(c.p)[static_cast<std::size_t>(uniform(rng, 0, c.p - 1))];
        const AnalyticSeries s = interp.series(cls);
        const long tmax = std::max<long>(1, 3000 / cls.modulus.get_si());
        for (std::size_t i = 0; i < points; ++i) {
            const long t = uniform(rng, -tmax, tmax);
            const BigInt n = cls.residue + cls.modulus * t;
            const BigInt expected = reduce_rational(eval(c.u, to_i64(n)) * scale, modK);
            rec.check(s.evaluate(BigInt(t)) == expected, [&] {
                return "p=" + std::to_string(c.p) + " class " + cls.to_string() + " t=" + std::to_string(t);
            });
        }
    }
    return rec.result();
}

/// For f = u p^e prod (den_i x - num_i), Weierstrass preparation puts exactly
/// #{i : nu_p(num_i / den_i) >= 0} zeros (with multiplicity) in the closed
/// unit disk, and that count is the Strassmann degree.
inline Result strassmann(std::uint64_t seed = 4, std::size_t count = 1000) {
    std::mt19937_64 rng(seed);
    Recorder rec("Strassmann degree vs polynomial roots");
    const long K = 96;
    for (std::size_t i = 0; i < count; ++i) {
        const unsigned long p = small_primes()[static_cast<std::size_t>(uniform(rng, 0, 4))];
        const long deg = uniform(rng, 1, 5);
        IntPolynomial f = IntPolynomial::constant(pow_ui(p, static_cast<unsigned long>(uniform(rng, 0, 3))));
        std::size_t inside = 0;
        std::string roots;
        for (long k = 0; k < deg; ++k) {
            long num = uniform(rng, -30, 30), den = uniform(rng, 1, 30);
            if (uniform(rng, 0, 2) == 0) den *= static_cast<long>(p);
            const BigRational r = make_rational(BigInt(num), BigInt(den));
            if (r == 0 || oracle::slow_valuation(r, p) >= 0) ++inside;
            f = f * IntPolynomial(std::vector<BigInt>{-r.get_num(), r.get_den()});
            roots += to_display_string(r) + " ";
        }
        std::vector<BigInt> coeffs(f.coefficients().begin(), f.coefficients().end());
        const AnalyticSeries s(p, K, coeffs, BigRational(K), BigRational(1));
        bool ok = false;
        try {
            const StrassmannResult r = strassmann_degree(s);
            ok = r.determinate && r.degree == inside;
        } catch (const Error&) {
        }
        rec.check(ok, [&] { return "p=" + std::to_string(p) + " roots " + roots; });
    }
    return rec.result();
}

inline IntPolynomial random_monic(std::mt19937_64& rng, long deg) {
    std::vector<BigInt> c(static_cast<std::size_t>(deg) + 1);
    for (long i = 0; i < deg; ++i) c[static_cast<std::size_t>(i)] = uniform(rng, -10, 10);
    c[static_cast<std::size_t>(deg)] = 1;
    return IntPolynomial(std::move(c));
}

/// Res(f, g) equals the Sylvester determinant and vanishes exactly when
/// gcd(f, g) is nonconstant. Half the pairs share a planted factor.
inline Result resultant_gcd(std::uint64_t seed = 5, std::size_t count = 1000) {
    std::mt19937_64 rng(seed);
    Recorder rec("resultant/gcd duality");
    for (std::size_t i = 0; i < count; ++i) {
        IntPolynomial f = random_monic(rng, uniform(rng, 1, 5)), g = random_monic(rng, uniform(rng, 1, 5));
        if (i % 2) {
            const IntPolynomial h = random_monic(rng, uniform(rng, 1, 2));
            f = f * h;
            g = g * h;
        }
        const BigInt res = resultant(f, g);
        const bool ok = res == oracle::sylvester_resultant(f, g) && (res == 0) == (gcd(f, g).degree() > 0);
        rec.check(ok, [&] { return "f=" + f.to_string() + " g=" + g.to_string(); });
    }
    return rec.result();
}

/// prod_{d | n} Phi_d = X^n - 1 for n <= 100, as polynomials and at X = 2..11.
inline Result cyclotomic_product() {
    Recorder rec("cyclotomic product identity");
    for (unsigned long n = 1; n <= 100; ++n) {
        IntPolynomial prod = IntPolynomial::constant(1);
        for (unsigned long d = 1; d <= n; ++d)
            if (n % d == 0) prod = prod * cyclotomic(d);
        const IntPolynomial target = IntPolynomial::monomial(1, n) - IntPolynomial::constant(1);
        const bool poly_ok = prod == target && cyclotomic(n).degree() == static_cast<int>(euler_phi(n));
        for (long x = 2; x <= 11; ++x) {
            BigInt value = 1;
            for (unsigned long d = 1; d <= n; ++d)
                if (n % d == 0) value *= cyclotomic(d).evaluate(BigInt(x));
            rec.check(poly_ok && value == pow(BigInt(x), n) - 1,
                      [&] { return "n=" + std::to_string(n) + " x=" + std::to_string(x); });
        }
    }
    return rec.result();
}

inline std::vector<std::function<Result()>> all_suites() {
    return {[] { return lte(); },         [] { return log_exp(); },       [] { return interpolation(); },
            [] { return strassmann(); },  [] { return resultant_gcd(); }, [] { return cyclotomic_product(); }};
}

}  // namespace props
