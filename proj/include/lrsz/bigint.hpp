#pragma once

// Arbitrary-precision integers and rationals (GMP) plus the library's error type.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace lrsz {

using BigInt = mpz_class;
using BigRational = mpq_class;

/// Every failure reported by the library. The message names the violated
/// precondition ("zero polynomial", "prime not regular", ...).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline BigInt big(std::int64_t v) {
    BigInt r;
    mpz_set_si(r.get_mpz_t(), static_cast<long>(v));
    return r;
}

inline BigInt big_u(std::uint64_t v) {
    BigInt r;
    mpz_set_ui(r.get_mpz_t(), static_cast<unsigned long>(v));
    return r;
}

inline bool fits_i64(const BigInt& v) { return mpz_fits_slong_p(v.get_mpz_t()) != 0; }

inline std::int64_t to_i64(const BigInt& v) {
    if (!fits_i64(v)) throw Error("integer does not fit in 64 bits");
    return mpz_get_si(v.get_mpz_t());
}

inline BigRational make_rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw Error("zero denominator");
    BigRational q(num, den);
    q.canonicalize();
    return q;
}

inline BigInt pow(const BigInt& base, unsigned long exp) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

inline BigInt pow_ui(unsigned long base, unsigned long exp) {
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
    return r;
}

inline BigRational pow(const BigRational& base, unsigned long exp) {
    return make_rational(pow(base.get_num(), exp), pow(base.get_den(), exp));
}

/// Non-negative residue of a modulo m (m > 0).
inline BigInt mod(const BigInt& a, const BigInt& m) {
    BigInt r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline BigInt powmod(const BigInt& base, const BigInt& exp, const BigInt& m) {
    BigInt r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), m.get_mpz_t());
    return r;
}

/// Inverse of a modulo m; throws when gcd(a, m) != 1.
inline BigInt invmod(const BigInt& a, const BigInt& m) {
    BigInt r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw Error("element not invertible modulo " + m.get_str());
    return r;
}

/// Floor division by an exact divisor; throws if d does not divide n.
inline BigInt divexact(const BigInt& n, const BigInt& d) {
    if (!mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t())) throw Error("inexact division");
    BigInt q;
    mpz_divexact(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    return q;
}

inline BigInt gcd(const BigInt& a, const BigInt& b) {
    BigInt r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline BigInt lcm(const BigInt& a, const BigInt& b) {
    BigInt r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

/// Exact rational "num/den" or plain integer "num". Whitespace is not accepted.
inline BigRational parse_rational(std::string_view text) {
    auto parse_int = [](std::string_view s) {
        if (s.empty()) throw Error("malformed rational: empty component");
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) throw Error("malformed rational: sign without digits");
        for (std::size_t k = i; k < s.size(); ++k)
            if (s[k] < '0' || s[k] > '9')
                throw Error("malformed rational: '" + std::string(s) + "'");
        std::string digits(s[0] == '+' ? s.substr(1) : s);
        return BigInt(digits, 10);
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return BigRational(parse_int(text));
    BigInt den = parse_int(text.substr(slash + 1));
    if (den == 0) throw Error("malformed rational: zero denominator");
    return make_rational(parse_int(text.substr(0, slash)), den);
}

/// Always "num/den", including integers ("3/1"); the structured wire format.
inline std::string to_fraction_string(const BigRational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// "num" for integers, "num/den" otherwise; used for human-readable output.
inline std::string to_display_string(const BigRational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return to_fraction_string(q);
}

}  // namespace lrsz
