#pragma once

// Skolem's p-adic interpolation of an LRS on residue classes, Strassmann
// degrees, zero certification and valuation profiles.
//
// For a regular prime p the companion matrix M lies in GL_m(Z_p). With
// c = 1 (p odd) or c = 2 (p = 2) and N the order of M modulo p^c, the matrix
// L = log(M^N) has entries of valuation >= c, and on the class
// n = r + N p^k t we get U(n) = e0 M^r exp(t p^k L) col. The coefficients of
// that power series in t are e0 M^r (p^k L)^j col / j!.

#include "lrsz/bigint.hpp"
#include "lrsz/factor.hpp"
#include "lrsz/lrs.hpp"
#include "lrsz/padic.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace lrsz {

struct SkolemOptions {
    long precision = 64;
    unsigned max_depth = 24;
    std::int64_t scan_bound = 1'000'000;
    // Interpolation moduli N above this are refused ("interpolation modulus too large").
    std::uint64_t max_period = 50'000;
};

/// {n : n = residue (mod modulus)} with modulus = N p^depth.
struct ResidueClass {
    BigInt residue = 0;
    BigInt modulus = 1;
    unsigned depth = 0;

    bool contains(const BigInt& n) const { return mod(n - residue, modulus) == 0; }
    std::vector<ResidueClass> children(unsigned long p) const {
        std::vector<ResidueClass> out;
        for (unsigned long j = 0; j < p; ++j) out.push_back({residue + modulus * j, modulus * p, depth + 1});
        return out;
    }
    std::string to_string() const { return residue.get_str() + " mod " + modulus.get_str(); }
    friend bool operator==(const ResidueClass&, const ResidueClass&) = default;
};

/// Truncated power series sum beta_j t^j over Z_p with residues mod p^K and the
/// guarantee nu_p(beta_j) >= tail_offset + tail_slope * j for every j >= size().
class AnalyticSeries {
public:
    AnalyticSeries(unsigned long p, long K, std::vector<BigInt> coefficients, BigRational tail_offset,
                   BigRational tail_slope, ResidueClass cls = {})
        : p_(p), K_(K), mod_(pow_ui(p, static_cast<unsigned long>(K))), beta_(std::move(coefficients)),
          tail_offset_(std::move(tail_offset)), tail_slope_(std::move(tail_slope)), class_(std::move(cls)) {
        if (tail_slope_ <= 0) throw Error("tail slope must be positive");
        for (auto& b : beta_) b = mod(b, mod_);
    }

    unsigned long prime() const { return p_; }
    long precision() const { return K_; }
    std::size_t size() const { return beta_.size(); }
    const std::vector<BigInt>& residues() const { return beta_; }
    PadicScalar coefficient(std::size_t j) const { return PadicScalar(p_, K_, j < beta_.size() ? beta_[j] : BigInt(0)); }
    const BigRational& tail_offset() const { return tail_offset_; }
    const BigRational& tail_slope() const { return tail_slope_; }
    const ResidueClass& residue_class() const { return class_; }

    /// nu_p(beta_j), or K when the residue is zero.
    long coefficient_valuation(std::size_t j) const {
        return j < beta_.size() ? residue_valuation(beta_[j], p_, K_) : K_;
    }

    /// Sum beta_j t^j mod p^K for t in Z_p (given by an integer representative).
    BigInt evaluate(const BigInt& t) const {
        BigInt acc = 0;
        for (auto it = beta_.rbegin(); it != beta_.rend(); ++it) acc = mod(acc * t + *it, mod_);
        return acc;
    }

    BigInt derivative(const BigInt& t) const {
        BigInt acc = 0;
        for (std::size_t j = beta_.size(); j-- > 1;) acc = mod(acc * t + beta_[j] * j, mod_);
        return acc;
    }

private:
    unsigned long p_;
    long K_;
    BigInt mod_;
    std::vector<BigInt> beta_;
    BigRational tail_offset_;
    BigRational tail_slope_;
    ResidueClass class_;
};

struct StrassmannResult {
    bool determinate = false;
    std::size_t degree = 0;   // largest index attaining the minimal valuation
    long min_valuation = 0;
    long margin = 0;          // runner-up valuation minus min_valuation
};

/// Strassmann degree: the number of zeros in Z_p is at most `degree`. Not
/// determinate when the tail bound cannot exclude a later coefficient of
/// minimal valuation.
inline StrassmannResult strassmann_degree(const AnalyticSeries& s) {
    const long K = s.precision();
    StrassmannResult r;
    r.min_valuation = K;
    for (std::size_t j = 0; j < s.size(); ++j) {
        const long v = s.coefficient_valuation(j);
        if (v <= r.min_valuation && v < K) {
            r.min_valuation = v;
            r.degree = j;
        }
    }
    if (r.min_valuation >= K) throw Error("precision exhausted");
    const BigRational tail_floor = s.tail_offset() + s.tail_slope() * static_cast<long>(s.size());
    r.determinate = tail_floor > r.min_valuation;
    long runner = K;
    for (std::size_t j = 0; j < s.size(); ++j)
        if (j != r.degree) runner = std::min(runner, s.coefficient_valuation(j));
    r.margin = runner - r.min_valuation;
    return r;
}

/// Companion-matrix interpolation data for one (LRS, prime, precision).
class Interpolator {
public:
    Interpolator(const Lrs& u, unsigned long p, const SkolemOptions& opts = {}) : Interpolator(u, p, opts, true) {}

    // Skips the non-degeneracy test when the caller has already run it.
    Interpolator(const Lrs& u, unsigned long p, const SkolemOptions& opts, bool check_degeneracy)
        : p_(p), K_(opts.precision), c_(p == 2 ? 2 : 1) {
        if (u.is_zero()) throw Error("degenerate LRS");
        if (!is_regular_prime(u, p)) throw Error("prime not regular");
        if (check_degeneracy && !analyze_char_poly(u).nondegenerate) throw Error("degenerate LRS");
        J0_ = truncation(0);
        Kw_ = K_ + detail::factorial_valuation(J0_, p) + 1;
        const PadicSequence seq(u, p, Kw_);
        shift_ = seq.shift();
        M_ = seq.companion();
        Minv_ = M_->inverse();
        col_ = seq.initial_state();
        N_ = matrix_group_order(*M_, c_);
        if (N_ > big_u(opts.max_period)) throw Error("interpolation modulus too large");
        L_ = matrix_log(M_->power(N_), c_);
        std::vector<BigInt> w = col_;
        for (std::size_t j = 0; j < J0_; ++j) {
            w_.push_back(w);
            w = L_->apply(w);
        }
    }

    unsigned long prime() const { return p_; }
    long precision() const { return K_; }
    long working_precision() const { return Kw_; }
    long level() const { return c_; }
    const BigInt& period() const { return N_; }
    long shift() const { return shift_; }
    const PadicMatrix& log_matrix() const { return *L_; }

    ResidueClass root_class(unsigned long ell) const { return {BigInt(ell), N_, 0}; }

    /// Number of stored coefficients at a given depth: the least J with
    /// (c + depth - 1/(p-1)) J >= K.
    std::size_t truncation(unsigned depth) const {
        const long num = K_ * static_cast<long>(p_ - 1);
        const long den = static_cast<long>(p_ - 1) * (c_ + static_cast<long>(depth)) - 1;
        return static_cast<std::size_t>((num + den - 1) / den);
    }

    BigRational tail_slope(unsigned depth) const {
        return BigRational(c_ + static_cast<long>(depth)) - BigRational(1, p_ - 1);
    }

    AnalyticSeries series(const ResidueClass& cls) const {
        const std::vector<BigInt> row = first_row_of_power(cls.residue);
        const std::size_t J = truncation(cls.depth);
        const BigInt modK = pow_ui(p_, static_cast<unsigned long>(K_));
        std::vector<BigInt> beta(J);
        BigInt fact = 1;
        for (std::size_t j = 0; j < J; ++j) {
            if (j > 0) fact *= static_cast<unsigned long>(j);
            BigInt x = 0;
            for (std::size_t i = 0; i < row.size(); ++i) x += row[i] * w_[j][i];
            x = mod(x, M_->modulus());
            const long v = detail::factorial_valuation(j, p_);
            const BigInt pv = pow_ui(p_, static_cast<unsigned long>(v));
            const BigInt unit = divexact(fact, pv);
            BigInt b = divexact(x, pv) * invmod(unit, modK);
            b *= pow_ui(p_, static_cast<unsigned long>(cls.depth) * j);
            beta[j] = mod(b, modK);
        }
        return AnalyticSeries(p_, K_, std::move(beta), BigRational(0), tail_slope(cls.depth), cls);
    }

    /// nu_p of the series derivative at the parameter of the integer n inside
    /// a class of the given depth, capped at K. It is
    /// nu_p(e0 L M^n col) + depth.
    long derivative_valuation(const BigInt& n, unsigned depth) const {
        const std::vector<BigInt> s = state(n);
        BigInt y = 0;
        for (std::size_t i = 0; i < s.size(); ++i) y += L_->at(0, i) * s[i];
        y = mod(y, M_->modulus());
        return std::min<long>(K_, residue_valuation(y, p_, Kw_) + static_cast<long>(depth));
    }

private:
    std::vector<BigInt> state(const BigInt& n) const {
        const PadicMatrix P = n >= 0 ? M_->power(n) : Minv_->power(-n);
        return P.apply(col_);
    }

    std::vector<BigInt> first_row_of_power(const BigInt& e) const {
        const PadicMatrix P = M_->power(e);
        std::vector<BigInt> row(P.dim());
        for (std::size_t i = 0; i < P.dim(); ++i) row[i] = P.at(0, i);
        return row;
    }

    unsigned long p_;
    long K_;
    long c_;
    long Kw_ = 0;
    long shift_ = 0;
    std::size_t J0_ = 0;
    BigInt N_;
    std::optional<PadicMatrix> M_, Minv_, L_;
    std::vector<BigInt> col_;
    std::vector<std::vector<BigInt>> w_;
};

/// One series per class l = 0, ..., N-1.
inline std::vector<AnalyticSeries> interpolate(const Lrs& u, unsigned long p, long K) {
    SkolemOptions opts;
    opts.precision = K;
    const Interpolator interp(u, p, opts);
    std::vector<AnalyticSeries> out;
    const unsigned long N = mpz_get_ui(interp.period().get_mpz_t());
    for (unsigned long l = 0; l < N; ++l) out.push_back(interp.series(interp.root_class(l)));
    return out;
}

namespace detail {

struct ModSequence {
    std::uint64_t q;
    std::vector<std::uint64_t> a;
    std::vector<std::uint64_t> init;
    std::uint64_t inv_a0;
};

inline std::uint64_t reduce_mod_u64(const BigRational& x, std::uint64_t q) {
    const BigInt Q = big_u(q);
    return mpz_get_ui(reduce_rational(x, Q).get_mpz_t());
}

inline std::optional<ModSequence> reduce_sequence(const Lrs& u, std::uint64_t q) {
    const BigInt Q = big_u(q);
    auto ok = [&](const BigRational& x) { return !mpz_divisible_p(x.get_den().get_mpz_t(), Q.get_mpz_t()); };
    for (const auto& x : u.coefficients())
        if (!ok(x)) return std::nullopt;
    for (const auto& x : u.initial())
        if (!ok(x)) return std::nullopt;
    if (mpz_divisible_p(u.coefficients()[0].get_num().get_mpz_t(), Q.get_mpz_t())) return std::nullopt;
    ModSequence s{q, {}, {}, 0};
    for (const auto& x : u.coefficients()) s.a.push_back(reduce_mod_u64(x, q));
    for (const auto& x : u.initial()) s.init.push_back(reduce_mod_u64(x, q));
    s.inv_a0 = mpz_get_ui(invmod(big_u(s.a[0]), Q).get_mpz_t());
    return s;
}

/// Indices n in [-bound, bound] with U(n) = 0 mod q, as a set.
inline std::set<std::int64_t> modular_zeros(const ModSequence& s, std::int64_t bound) {
    const std::size_t m = s.a.size();
    const std::uint64_t q = s.q;
    std::set<std::int64_t> out;
    std::vector<std::uint64_t> w = s.init;
    for (std::int64_t n = 0; n <= bound; ++n) {
        if (w[0] == 0) out.insert(n);
        std::uint64_t next = 0;
        for (std::size_t i = 0; i < m; ++i) next = (next + mulmod64(s.a[i], w[i], q)) % q;
        std::rotate(w.begin(), w.begin() + 1, w.end());
        w[m - 1] = next;
    }
    w = s.init;
    for (std::int64_t n = -1; n >= -bound; --n) {
        // U(n) = (U(n+m) - sum_{i>=1} a_i U(n+i)) / a_0
        std::uint64_t acc = w[m - 1];
        for (std::size_t i = 1; i < m; ++i) acc = (acc + q - mulmod64(s.a[i], w[i - 1], q)) % q;
        const std::uint64_t prev = mulmod64(acc, s.inv_a0, q);
        std::rotate(w.rbegin(), w.rbegin() + 1, w.rend());
        w[0] = prev;
        if (prev == 0) out.insert(n);
    }
    return out;
}

}  // namespace detail

/// Every integer zero of U with |n| <= bound, in increasing order. Candidates
/// come from two 61-bit prime moduli and are confirmed by exact evaluation.
inline std::vector<std::int64_t> integer_zeros_in_range(const Lrs& u, std::int64_t bound) {
    if (u.is_zero()) throw Error("zero LRS vanishes everywhere");
    std::vector<detail::ModSequence> filters;
    for (std::uint64_t q = (std::uint64_t{1} << 61) - 1; filters.size() < 2; q -= 2) {
        if (!is_prime_u64(q)) continue;
        if (auto s = detail::reduce_sequence(u, q)) filters.push_back(std::move(*s));
    }
    std::set<std::int64_t> cand = detail::modular_zeros(filters[0], bound);
    const std::set<std::int64_t> second = detail::modular_zeros(filters[1], bound);
    std::vector<std::int64_t> out;
    for (std::int64_t n : cand)
        if (second.count(n) && eval(u, n) == 0) out.push_back(n);
    return out;
}

enum class ClassStatus { Closed, Inconclusive };

struct CertifiedZero {
    BigInt n;
    long derivative_valuation = 0;  // Newton witness: U(n) = 0 exactly and g'(t_n) has this valuation
};

struct ClassRecord {
    ResidueClass cls;
    ClassStatus status = ClassStatus::Inconclusive;
    std::optional<std::size_t> strassmann_degree;
    long min_valuation = 0;
    long margin = 0;
    std::vector<CertifiedZero> zeros;
    std::string note;
};

struct ZeroCertificate {
    std::uint64_t lrs_hash = 0;
    unsigned long prime = 0;
    long precision = 0;
    BigInt period;
    std::int64_t scan_bound = 0;
    std::vector<ClassRecord> classes;
    bool truncated = false;  // walk stopped at the first Inconclusive class

    bool complete() const {
        return !truncated && std::all_of(classes.begin(), classes.end(),
                           [](const ClassRecord& r) { return r.status == ClassStatus::Closed; });
    }

    std::vector<BigInt> zeros() const {
        std::vector<BigInt> out;
        for (const auto& r : classes)
            for (const auto& z : r.zeros) out.push_back(z.n);
        std::sort(out.begin(), out.end());
        return out;
    }
};

namespace detail {

inline std::vector<BigInt> zeros_in_class(const std::vector<std::int64_t>& zeros, const ResidueClass& cls) {
    std::vector<BigInt> out;
    for (std::int64_t z : zeros)
        if (cls.contains(big(z))) out.push_back(big(z));
    return out;
}

// Returns false once a class ends Inconclusive and stop_early is set.
inline bool certify_class(const Interpolator& interp, const std::vector<std::int64_t>& zeros, const ResidueClass& cls,
                          unsigned max_depth, bool stop_early, std::vector<ClassRecord>& out) {
    ClassRecord rec;
    rec.cls = cls;
    const auto subdivide_or_stop = [&](const std::string& why) {
        if (cls.depth >= max_depth) {
            rec.status = ClassStatus::Inconclusive;
            rec.note = why + "; depth " + std::to_string(cls.depth) + " reached";
            out.push_back(std::move(rec));
            return !stop_early;
        }
        for (const auto& child : cls.children(interp.prime()))
            if (!certify_class(interp, zeros, child, max_depth, stop_early, out)) return false;
        return true;
    };

    StrassmannResult sd;
    try {
        sd = strassmann_degree(interp.series(cls));
    } catch (const Error& e) {
        rec.status = ClassStatus::Inconclusive;
        rec.note = e.what();
        out.push_back(std::move(rec));
        return !stop_early;
    }
    rec.min_valuation = sd.min_valuation;
    rec.margin = sd.margin;
    if (!sd.determinate) return subdivide_or_stop("indeterminate Strassmann degree");
    rec.strassmann_degree = sd.degree;

    std::vector<CertifiedZero> simple;
    for (const auto& z : zeros_in_class(zeros, cls)) {
        const long dv = interp.derivative_valuation(z, cls.depth);
        if (dv < interp.precision()) simple.push_back({z, dv});
    }
    if (simple.size() > sd.degree) throw Error("Strassmann bound violated in class " + cls.to_string());
    if (simple.size() == sd.degree) {
        rec.status = ClassStatus::Closed;
        rec.zeros = std::move(simple);
        out.push_back(std::move(rec));
        return true;
    }
    return subdivide_or_stop("Strassmann degree " + std::to_string(sd.degree) + " exceeds " +
                      std::to_string(simple.size()) + " found zeros");
}

}  // namespace detail

/// Zero certificate for a non-degenerate LRS at a regular prime. With
/// stop_early the walk ends at the first Inconclusive class (the partial
/// certificate is then incomplete).
inline ZeroCertificate find_zeros(const Lrs& u, unsigned long p, const SkolemOptions& opts = {},
                                  const std::vector<std::int64_t>* known_zeros = nullptr,
                                  bool check_degeneracy = true, bool stop_early = false) {
    const Interpolator interp(u, p, opts, check_degeneracy);
    const std::vector<std::int64_t> zeros = known_zeros ? *known_zeros : integer_zeros_in_range(u, opts.scan_bound);
    ZeroCertificate cert;
    cert.lrs_hash = identity_hash(u);
    cert.prime = p;
    cert.precision = opts.precision;
    cert.period = interp.period();
    cert.scan_bound = opts.scan_bound;
    const unsigned long N = mpz_get_ui(interp.period().get_mpz_t());
    for (unsigned long l = 0; l < N; ++l)
        if (!detail::certify_class(interp, zeros, interp.root_class(l), opts.max_depth, stop_early, cert.classes)) {
            cert.truncated = true;
            break;
        }
    return cert;
}

struct PrimeAttempt {
    unsigned long prime = 0;
    std::string outcome;
};

struct PrimeSearch {
    std::vector<ZeroCertificate> certificates;  // closing primes, increasing
    std::vector<PrimeAttempt> attempts;
};

/// Tries regular primes p <= max_prime in increasing order and keeps the first
/// `wanted` certificates that close every class.
inline PrimeSearch search_certifying_primes(const Lrs& u, const SkolemOptions& opts, unsigned long max_prime,
                                            std::size_t wanted = 1) {
    if (u.is_zero() || !analyze_char_poly(u).nondegenerate) throw Error("degenerate LRS");
    const std::vector<std::int64_t> zeros = integer_zeros_in_range(u, opts.scan_bound);
    PrimeSearch out;
    for (unsigned long p = 2; p <= max_prime && out.certificates.size() < wanted; ++p) {
        if (!is_prime_u64(p)) continue;
        if (!is_regular_prime(u, p)) {
            out.attempts.push_back({p, "not regular"});
            continue;
        }
        try {
            ZeroCertificate cert = find_zeros(u, p, opts, &zeros, false, true);
            if (cert.complete()) {
                out.attempts.push_back({p, "closed"});
                out.certificates.push_back(std::move(cert));
            } else {
                out.attempts.push_back({p, "inconclusive classes"});
            }
        } catch (const Error& e) {
            out.attempts.push_back({p, e.what()});
        }
    }
    return out;
}

/// Where the zero of a Linear profile entry sits: an exact integer zero of U,
/// or a p-adic number known modulo p^precision (symmetric representative).
struct ZeroLocation {
    BigInt value = 0;
    bool exact = true;
    long precision = 0;

    /// nu_p(n - a); nullopt when infinite or beyond the known digits.
    std::optional<long> distance_valuation(const BigInt& n, unsigned long p) const {
        if (exact) {
            if (n == value) return std::nullopt;
            return static_cast<long>(valuation_of_integer(n - value, p));
        }
        const BigInt r = mod(n - value, pow_ui(p, static_cast<unsigned long>(precision)));
        if (r == 0) return std::nullopt;
        return static_cast<long>(valuation_of_integer(r, p));
    }

    /// For an approximate zero, the rational x/y with |x|, |y| < sqrt(p^prec / 2)
    /// congruent to it, if one exists. Not a proof that the zero is rational.
    std::optional<BigRational> reconstruct(unsigned long p) const {
        if (exact) return BigRational(value);
        const BigInt m = pow_ui(p, static_cast<unsigned long>(precision));
        BigInt bound;
        mpz_sqrt(bound.get_mpz_t(), BigInt(m / 2).get_mpz_t());
        BigInt r0 = m, r1 = mod(value, m), s0 = 0, s1 = 1;
        while (r1 > bound) {
            const BigInt q = r0 / r1;
            r0 = r0 - q * r1;
            std::swap(r0, r1);
            s0 = s0 - q * s1;
            std::swap(s0, s1);
        }
        if (s1 == 0 || abs(s1) > bound || gcd(s1, m) != 1) return std::nullopt;
        // A random residue reconstructs to parts near sqrt(m); demand far smaller ones.
        BigInt small;
        mpz_root(small.get_mpz_t(), m.get_mpz_t(), 4);
        if (abs(r1) > small || abs(s1) > small) return std::nullopt;
        return make_rational(r1, s1);
    }
};

enum class EntryKind { Constant, Linear, Inconclusive };

struct ProfileEntry {
    ResidueClass cls;
    EntryKind kind = EntryKind::Inconclusive;
    long tau = 0;
    unsigned long kappa = 0;
    ZeroLocation zero;
    std::string note;
};

/// nu_p(U(n)) on integers n for which the profile makes a claim; nullopt means +infinity.
struct Prediction {
    bool determined = false;
    std::optional<long> valuation;
};

struct ProfileCheck {
    std::int64_t bound = 0;
    std::uint64_t checked = 0;
    std::uint64_t unresolved = 0;
    std::vector<std::pair<std::int64_t, std::string>> mismatches;  // first few
    std::uint64_t mismatch_count = 0;
    bool passed() const { return mismatch_count == 0 && unresolved == 0; }
};

class ValuationProfile {
public:
    ValuationProfile(unsigned long p, long K, BigInt period, std::vector<ProfileEntry> entries)
        : p_(p), K_(K), period_(std::move(period)), entries_(std::move(entries)) {
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            index_[{entries_[i].cls.modulus, entries_[i].cls.residue}] = i;
            moduli_.insert(entries_[i].cls.modulus);
        }
    }

    unsigned long prime() const { return p_; }
    long precision() const { return K_; }
    const BigInt& period() const { return period_; }
    const std::vector<ProfileEntry>& entries() const { return entries_; }

    bool complete() const {
        return std::none_of(entries_.begin(), entries_.end(),
                            [](const ProfileEntry& e) { return e.kind == EntryKind::Inconclusive; });
    }

    const ProfileEntry* lookup(const BigInt& n) const {
        for (const auto& q : moduli_) {
            auto it = index_.find({q, mod(n, q)});
            if (it != index_.end()) return &entries_[it->second];
        }
        return nullptr;
    }

    Prediction predict(const BigInt& n) const {
        const ProfileEntry* e = lookup(n);
        if (!e || e->kind == EntryKind::Inconclusive) return {};
        if (e->kind == EntryKind::Constant) return {true, e->tau};
        const auto d = e->zero.distance_valuation(n, p_);
        if (!d) return {e->zero.exact, std::nullopt};
        return {true, static_cast<long>(e->kappa) * *d + e->tau};
    }

    /// Compares every |n| <= bound against nu_p(U(n)) computed modulo p^K
    /// (exact evaluation when the residue vanishes).
    ProfileCheck check(const Lrs& u, std::int64_t bound, std::size_t keep = 10) const {
        ProfileCheck out;
        out.bound = bound;
        const PadicSequence seq(u, p_, K_);
        const std::vector<BigInt> res = seq.range(-bound, bound);
        for (std::int64_t n = -bound; n <= bound; ++n) {
            const BigInt& r = res[static_cast<std::size_t>(n + bound)];
            std::optional<long> actual;
            if (r != 0) {
                actual = seq.certified(r);
            } else {
                const BigRational v = eval(u, n);
                if (v != 0) actual = valuation(v, p_).value();
            }
            const Prediction pr = predict(big(n));
            ++out.checked;
            if (!pr.determined) {
                ++out.unresolved;
                continue;
            }
            if (pr.valuation != actual) {
                ++out.mismatch_count;
                if (out.mismatches.size() < keep) {
                    auto show = [](const std::optional<long>& v) { return v ? std::to_string(*v) : std::string("inf"); };
                    out.mismatches.push_back({n, "predicted " + show(pr.valuation) + ", actual " + show(actual)});
                }
            }
        }
        return out;
    }

private:
    unsigned long p_;
    long K_;
    BigInt period_;
    std::vector<ProfileEntry> entries_;
    std::map<std::pair<BigInt, BigInt>, std::size_t> index_;
    std::set<BigInt> moduli_;
};

namespace detail {

/// Newton iteration for the unique zero in Z_p of a series with Strassmann
/// degree 1; returns t* modulo p^(K - nu(beta_1)).
inline std::pair<BigInt, long> newton_zero(const AnalyticSeries& s) {
    const unsigned long p = s.prime();
    const long mu = s.coefficient_valuation(1);
    const long prec = s.precision() - mu;
    const BigInt modp = pow_ui(p, static_cast<unsigned long>(prec));
    const BigInt pmu = pow_ui(p, static_cast<unsigned long>(mu));
    BigInt t = 0;
    for (long iter = 0; iter < 2 * s.precision() + 4; ++iter) {
        const BigInt h = s.evaluate(t), dh = s.derivative(t);
        if (residue_valuation(dh, p, s.precision()) != mu) throw Error("Newton iteration lost the derivative");
        const BigInt delta = mod(divexact(h, pmu) * invmod(divexact(dh, pmu), modp), modp);
        if (delta == 0) return {t, prec};
        t = mod(t - delta, modp);
    }
    throw Error("Newton iteration did not converge");
}

inline BigInt symmetric(const BigInt& r, const BigInt& m) {
    BigInt x = mod(r, m);
    if (2 * x > m) x -= m;
    return x;
}

// Two profile entries describe nu_p(U(n)) by the same formula.
inline bool same_formula(const ProfileEntry& a, const ProfileEntry& b) {
    if (a.kind != b.kind || a.tau != b.tau) return false;
    if (a.kind != EntryKind::Linear) return a.kind == EntryKind::Constant;
    return a.kappa == b.kappa && a.zero.exact == b.zero.exact && a.zero.value == b.zero.value &&
           a.zero.precision == b.zero.precision;
}

// True when `fine` agrees everywhere on its class with the formula of `coarse`.
inline bool agrees(const ProfileEntry& coarse, const ProfileEntry& fine, unsigned long p) {
    if (fine.kind == EntryKind::Inconclusive) return false;
    if (same_formula(coarse, fine)) return true;
    if (coarse.kind != EntryKind::Linear || fine.kind != EntryKind::Constant) return false;
    // nu(n - a) must be constant on the class: nu(s - a) < nu(q).
    const long vq = static_cast<long>(valuation_of_integer(fine.cls.modulus, p));
    if (!coarse.zero.exact && vq > coarse.zero.precision) return false;
    const BigInt diff = fine.cls.residue - coarse.zero.value;
    if (diff == 0) return false;
    const long d = static_cast<long>(valuation_of_integer(diff, p));
    return d < vq && static_cast<long>(coarse.kappa) * d + coarse.tau == fine.tau;
}

// Replaces groups of entries filling a coarser class by a single entry when one
// formula covers all of them. Repeats until nothing merges.
inline std::vector<ProfileEntry> merge_entries(std::vector<ProfileEntry> entries, unsigned long p, const BigInt& period) {
    const unsigned long vN = valuation_of_integer(period, p);
    for (bool changed = true; changed;) {
        changed = false;
        // candidate coarse moduli: divisors of the lcm of all entry moduli
        BigInt top = 1;
        for (const auto& e : entries) top = lcm(top, e.cls.modulus);
        std::vector<BigInt> divisors{1};
        for (const auto& f : factor_integer(top).factors) {
            const std::size_t count = divisors.size();
            BigInt pk = 1;
            for (unsigned long k = 1; k <= f.exponent; ++k) {
                pk *= f.prime;
                for (std::size_t i = 0; i < count; ++i) divisors.push_back(divisors[i] * pk);
            }
        }
        std::sort(divisors.begin(), divisors.end());
        for (const auto& m : divisors) {
            std::set<BigInt> residues;
            for (const auto& e : entries)
                if (e.cls.modulus % m == 0 && e.cls.modulus != m) residues.insert(mod(e.cls.residue, m));
            for (const auto& r : residues) {
                std::vector<std::size_t> inside;
                bool blocked = false;
                BigRational covered = 0;
                for (std::size_t i = 0; i < entries.size() && !blocked; ++i) {
                    const auto& c = entries[i].cls;
                    if (c.modulus % m == 0) {
                        if (mod(c.residue - r, m) == 0) {
                            inside.push_back(i);
                            covered += make_rational(m, c.modulus);
                        }
                    } else if (mod(c.residue - r, gcd(c.modulus, m)) == 0) {
                        blocked = true;
                    }
                }
                if (blocked || inside.size() < 2 || covered != 1) continue;
                const ProfileEntry* lead = nullptr;
                for (auto i : inside)
                    if (entries[i].kind == EntryKind::Linear) lead = &entries[i];
                if (!lead) lead = &entries[inside.front()];
                if (!std::all_of(inside.begin(), inside.end(),
                                 [&](std::size_t i) { return agrees(*lead, entries[i], p); }))
                    continue;
                ProfileEntry merged = *lead;
                const unsigned long vm = valuation_of_integer(m, p);
                merged.cls = {r, m, static_cast<unsigned>(vm > vN ? vm - vN : 0)};
                std::vector<ProfileEntry> next;
                std::size_t k = 0;
                for (std::size_t i = 0; i < entries.size(); ++i) {
                    if (k < inside.size() && inside[k] == i) {
                        ++k;
                        continue;
                    }
                    next.push_back(std::move(entries[i]));
                }
                next.push_back(std::move(merged));
                entries = std::move(next);
                changed = true;
                break;
            }
            if (changed) break;
        }
    }
    std::sort(entries.begin(), entries.end(), [](const ProfileEntry& a, const ProfileEntry& b) {
        if (a.cls.modulus != b.cls.modulus) return a.cls.modulus < b.cls.modulus;
        return a.cls.residue < b.cls.residue;
    });
    return entries;
}

inline void profile_class(const Interpolator& interp, const std::vector<std::int64_t>& zeros, const ResidueClass& cls,
                          unsigned max_depth, std::vector<ProfileEntry>& out) {
    const unsigned long p = interp.prime();
    ProfileEntry e;
    e.cls = cls;
    auto subdivide_or_stop = [&](const std::string& why) {
        if (cls.depth >= max_depth) {
            e.kind = EntryKind::Inconclusive;
            e.note = why;
            out.push_back(std::move(e));
            return;
        }
        for (const auto& child : cls.children(p)) profile_class(interp, zeros, child, max_depth, out);
    };
    const AnalyticSeries s = interp.series(cls);
    StrassmannResult sd;
    try {
        sd = strassmann_degree(s);
    } catch (const Error& err) {
        e.kind = EntryKind::Inconclusive;
        e.note = err.what();
        out.push_back(std::move(e));
        return;
    }
    if (!sd.determinate || sd.degree > 1) return subdivide_or_stop("Strassmann degree above 1");

    const long step_val = static_cast<long>(valuation_of_integer(cls.modulus, p));
    if (sd.degree == 0) {
        e.kind = EntryKind::Constant;
        e.tau = sd.min_valuation - interp.shift();
        out.push_back(std::move(e));
        return;
    }
    // Degree 1: exactly one zero t* in Z_p and nu(g(t)) = nu(beta_1) + nu(t - t*).
    e.kind = EntryKind::Linear;
    e.kappa = 1;
    e.tau = sd.min_valuation - interp.shift() - step_val;
    const std::vector<BigInt> inside = zeros_in_class(zeros, cls);
    if (inside.size() > 1) throw Error("Strassmann bound violated in class " + cls.to_string());
    if (inside.size() == 1) {
        e.zero = {inside[0], true, 0};
    } else {
        const auto [t, prec] = newton_zero(s);
        const long zprec = prec + step_val;
        const BigInt m = pow_ui(p, static_cast<unsigned long>(zprec));
        e.zero = {symmetric(cls.residue + cls.modulus * t, m), false, zprec};
        e.note = "zero is not an integer of this class";
    }
    out.push_back(std::move(e));
}

}  // namespace detail

/// Case table for nu_p(U(n)): every class ends as Constant(tau),
/// Linear(a, 1, tau) meaning nu_p(U(n)) = nu_p(n - a) + tau, or Inconclusive.
inline ValuationProfile valuation_profile(const Lrs& u, unsigned long p, const SkolemOptions& opts = {}) {
    const Interpolator interp(u, p, opts);
    const std::vector<std::int64_t> zeros = integer_zeros_in_range(u, opts.scan_bound);
    std::vector<ProfileEntry> entries;
    const unsigned long N = mpz_get_ui(interp.period().get_mpz_t());
    for (unsigned long l = 0; l < N; ++l)
        detail::profile_class(interp, zeros, interp.root_class(l), opts.max_depth, entries);
    entries = detail::merge_entries(std::move(entries), p, interp.period());
    return ValuationProfile(p, opts.precision, interp.period(), std::move(entries));
}

}  // namespace lrsz
