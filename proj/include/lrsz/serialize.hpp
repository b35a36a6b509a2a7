#pragma once

// Structured (JSON) and human-readable renderings of every report type, plus
// the LRS file reader.
//
// Structured conventions: exact rationals are strings "num/den", exact
// integers are decimal strings, p-adic residues are objects {p, K, residue}.
// Small machine integers (primes, precisions, counts) are JSON numbers.

#include "lrsz/bigint.hpp"
#include "lrsz/experiments.hpp"
#include "lrsz/lrs.hpp"
#include "lrsz/skolem.hpp"
#include "lrsz/tribonacci.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace lrsz {

using Json = nlohmann::ordered_json;

inline std::string hex_hash(std::uint64_t h) {
    char buf[19];
    std::snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(h));
    return buf;
}

inline Json padic_json(unsigned long p, long K, const BigInt& residue) {
    return Json{{"p", p}, {"K", K}, {"residue", residue.get_str()}};
}

inline Json rational_list(const std::vector<BigRational>& xs) {
    Json out = Json::array();
    for (const auto& x : xs) out.push_back(to_fraction_string(x));
    return out;
}

inline Json integer_list(const std::vector<BigInt>& xs) {
    Json out = Json::array();
    for (const auto& x : xs) out.push_back(x.get_str());
    return out;
}

// ---------------------------------------------------------------- LRS files

inline Json to_json(const Lrs& u) {
    Json a = Json::array(), init = Json::array();
    for (const auto& c : u.coefficients()) a.push_back(to_fraction_string(c));
    for (const auto& v : u.initial()) init.push_back(to_fraction_string(v));
    return Json{{"order", u.order()}, {"coefficients", a}, {"initial", init}};
}

inline BigRational rational_from_json(const Json& v) {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return BigRational(BigInt(v.dump()));
    throw Error("expected an exact rational string, got " + v.dump());
}

/// Reads {"order", "coefficients", "initial"}; coefficients are a_0..a_{m-1}.
inline Lrs lrs_from_json(const Json& j) {
    if (!j.is_object()) throw Error("LRS description must be an object");
    for (const char* key : {"order", "coefficients", "initial"})
        if (!j.contains(key)) throw Error(std::string("LRS description lacks '") + key + "'");
    if (!j["order"].is_number_integer() || j["order"].get<long>() < 1) throw Error("'order' must be a positive integer");
    const auto m = j["order"].get<std::size_t>();
    if (!j["coefficients"].is_array() || !j["initial"].is_array()) throw Error("'coefficients' and 'initial' must be lists");
    if (j["coefficients"].size() != m || j["initial"].size() != m)
        throw Error("'coefficients' and 'initial' must both have 'order' entries");
    std::vector<BigRational> a, init;
    for (const auto& v : j["coefficients"]) a.push_back(rational_from_json(v));
    for (const auto& v : j["initial"]) init.push_back(rational_from_json(v));
    return minimal_order(a, init);
}

inline Lrs load_lrs_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open LRS file '" + path + "'");
    Json j;
    try {
        j = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error("LRS file '" + path + "' is not valid JSON: " + e.what());
    }
    return lrs_from_json(j);
}

// ---------------------------------------------------------------- certificates

inline const char* to_string(ClassStatus s) { return s == ClassStatus::Closed ? "closed" : "inconclusive"; }

inline Json to_json(const ResidueClass& c) {
    return Json{{"residue", c.residue.get_str()}, {"modulus", c.modulus.get_str()}, {"depth", c.depth}};
}

inline Json to_json(const ZeroCertificate& cert) {
    Json classes = Json::array();
    for (const auto& r : cert.classes) {
        Json zeros = Json::array();
        for (const auto& z : r.zeros)
            zeros.push_back(Json{{"n", z.n.get_str()}, {"derivative_valuation", z.derivative_valuation}});
        Json rec{{"class", to_json(r.cls)}, {"status", to_string(r.status)}};
        rec["strassmann_degree"] = r.strassmann_degree ? Json(*r.strassmann_degree) : Json(nullptr);
        rec["min_valuation"] = r.min_valuation;
        rec["margin"] = r.margin;
        rec["zeros"] = zeros;
        rec["note"] = r.note;
        classes.push_back(rec);
    }
    return Json{{"type", "ZeroCertificate"},
                {"lrs_hash", hex_hash(cert.lrs_hash)},
                {"prime", cert.prime},
                {"precision", cert.precision},
                {"period", cert.period.get_str()},
                {"scan_bound", cert.scan_bound},
                {"complete", cert.complete()},
                {"truncated", cert.truncated},
                {"zeros", integer_list(cert.zeros())},
                {"classes", classes}};
}

inline std::string set_string(const std::vector<BigInt>& xs) {
    std::string s = "{";
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + xs[i].get_str();
    return s + "}";
}

inline std::string render(const ZeroCertificate& cert) {
    std::ostringstream o;
    o << "zero certificate: p = " << cert.prime << ", K = " << cert.precision << ", " << cert.period
      << " root classes, integer scan |n| <= " << cert.scan_bound << ", lrs " << hex_hash(cert.lrs_hash) << "\n";
    o << "zeros: " << set_string(cert.zeros()) << "\n";
    for (const auto& r : cert.classes) {
        o << "  " << r.cls.to_string() << ": " << to_string(r.status);
        if (r.strassmann_degree) o << ", Strassmann degree " << *r.strassmann_degree;
        if (!r.zeros.empty()) {
            o << ", zeros";
            for (const auto& z : r.zeros) o << " " << z.n << " (nu g' = " << z.derivative_valuation << ")";
        }
        if (!r.note.empty()) o << " [" << r.note << "]";
        o << "\n";
    }
    if (cert.truncated) o << "walk stopped at the first inconclusive class\n";
    o << (cert.complete() ? "all classes closed: the zero set is complete\n"
                          : "some classes inconclusive: the zero set is not certified\n");
    return o.str();
}

inline Json to_json(const PrimeSearch& s) {
    Json attempts = Json::array();
    for (const auto& a : s.attempts) attempts.push_back(Json{{"prime", a.prime}, {"outcome", a.outcome}});
    Json certs = Json::array();
    for (const auto& c : s.certificates) certs.push_back(to_json(c));
    return Json{{"attempts", attempts}, {"certificates", certs}};
}

// ---------------------------------------------------------------- profiles

inline const char* to_string(EntryKind k) {
    switch (k) {
        case EntryKind::Constant: return "constant";
        case EntryKind::Linear: return "linear";
        default: return "inconclusive";
    }
}

inline Json to_json(const ValuationProfile& prof) {
    const unsigned long p = prof.prime();
    Json entries = Json::array();
    for (const auto& e : prof.entries()) {
        Json j{{"class", to_json(e.cls)}, {"kind", to_string(e.kind)}};
        if (e.kind != EntryKind::Inconclusive) j["tau"] = e.tau;
        if (e.kind == EntryKind::Linear) {
            j["kappa"] = e.kappa;
            Json z{{"exact", e.zero.exact}};
            if (e.zero.exact) {
                z["value"] = e.zero.value.get_str();
            } else {
                z["value"] = padic_json(p, e.zero.precision, mod(e.zero.value, pow_ui(p, e.zero.precision)));
                const auto q = e.zero.reconstruct(p);
                z["reconstructed"] = q ? Json(to_fraction_string(*q)) : Json(nullptr);
            }
            j["zero"] = z;
        }
        j["note"] = e.note;
        entries.push_back(j);
    }
    return Json{{"type", "ValuationProfile"},
                {"prime", p},
                {"precision", prof.precision()},
                {"period", prof.period().get_str()},
                {"complete", prof.complete()},
                {"entries", entries}};
}

inline Json to_json(const ProfileCheck& c) {
    Json mism = Json::array();
    for (const auto& [n, what] : c.mismatches) mism.push_back(Json{{"n", std::to_string(n)}, {"detail", what}});
    return Json{{"bound", c.bound},
                {"checked", c.checked},
                {"unresolved", c.unresolved},
                {"mismatch_count", c.mismatch_count},
                {"mismatches", mism},
                {"result", c.passed() ? "PASS" : "FAIL"}};
}

/// Right-hand side of a profile line, e.g. "nu_2(n + 17) + 1".
inline std::string formula(const ProfileEntry& e, unsigned long p) {
    if (e.kind == EntryKind::Inconclusive) return "?";
    if (e.kind == EntryKind::Constant) return std::to_string(e.tau);
    const std::string nu = "nu_" + std::to_string(p);
    std::string a;
    const auto q = e.zero.reconstruct(p);
    const BigRational av = q ? *q : BigRational(e.zero.value);
    if (!q) a = "n - a";  // p-adic zero, residue given in the note
    else if (av == 0) a = "n";
    else if (av < 0) a = "n + " + to_display_string(-av);
    else a = "n - " + to_display_string(av);
    std::string s = (e.kappa == 1 ? "" : std::to_string(e.kappa) + "*") + nu + "(" + a + ")";
    if (e.tau > 0) s += " + " + std::to_string(e.tau);
    if (e.tau < 0) s += " - " + std::to_string(-e.tau);
    return s;
}

/// Case table in the layout "value, if n = r1, r2 (mod m)", one line per
/// group of classes sharing a modulus and a formula.
inline std::string render(const ValuationProfile& prof) {
    const unsigned long p = prof.prime();
    struct Group {
        std::string rhs;
        BigInt modulus;
        std::vector<BigInt> residues;
        std::string note;
    };
    std::vector<Group> groups;
    std::map<std::pair<std::string, BigInt>, std::size_t> where;
    for (const auto& e : prof.entries()) {
        std::string rhs = formula(e, p), note;
        if (e.kind == EntryKind::Linear && !e.zero.exact) {
            note = "zero known modulo " + std::to_string(p) + "^" + std::to_string(e.zero.precision);
            if (!e.zero.reconstruct(p)) note += ", a = " + e.zero.value.get_str();
        }
        if (e.kind == EntryKind::Inconclusive) note = e.note;
        const auto key = std::make_pair(rhs + "|" + note, e.cls.modulus);
        auto it = where.find(key);
        if (it == where.end()) {
            where.emplace(key, groups.size());
            groups.push_back({rhs, e.cls.modulus, {e.cls.residue}, note});
        } else {
            groups[it->second].residues.push_back(e.cls.residue);
        }
    }
    std::size_t width = 0;
    for (const auto& g : groups) width = std::max(width, g.rhs.size());
    std::ostringstream o;
    o << "nu_" << p << "(U(n)) =\n";
    for (const auto& g : groups) {
        o << "  " << g.rhs << "," << std::string(width - g.rhs.size() + 2, ' ') << "if n = ";
        for (std::size_t i = 0; i < g.residues.size(); ++i) o << (i ? ", " : "") << g.residues[i];
        o << " (mod " << g.modulus << ")";
        if (!g.note.empty()) o << "   [" << g.note << "]";
        o << "\n";
    }
    o << (prof.complete() ? "every class resolved\n" : "some classes inconclusive\n");
    return o.str();
}

inline std::string render(const ProfileCheck& c) {
    std::ostringstream o;
    o << "check |n| <= " << c.bound << ": " << (c.passed() ? "PASS" : "FAIL") << " (" << c.checked << " values, "
      << c.mismatch_count << " mismatches, " << c.unresolved << " unresolved)\n";
    for (const auto& [n, what] : c.mismatches) o << "  n = " << n << ": " << what << "\n";
    return o.str();
}

// ---------------------------------------------------------------- Tribonacci

inline Json to_json(const TrzReport& rep) {
    Json checks = Json::array();
    for (const auto& c : rep.structure.checks)
        checks.push_back(Json{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    Json evidence = Json::array();
    for (const auto& ev : rep.evidence) {
        evidence.push_back(Json{{"a", to_fraction_string(ev.a)},
                                {"w_zero", ev.w_zero.get_str()},
                                {"exact_zero_of_T", ev.exact_zero_of_T},
                                {"sum_residual", ev.residual.sum_residual.to_string(6)},
                                {"product_residual", ev.residual.product_residual.to_string(6)},
                                {"numerically_verified", ev.residual.verified}});
    }
    return Json{{"type", "TrzReport"},
                {"trzs", rational_list(rep.all())},
                {"integral_zeros", integer_list(rep.integral_zeros)},
                {"rational_trzs", rational_list(rep.rational_trzs)},
                {"rejected", rational_list(rep.rejected)},
                {"identities", checks},
                {"evidence", evidence},
                {"w_certificate", to_json(rep.w_certificate)}};
}

inline std::string render(const TrzReport& rep) {
    std::ostringstream o;
    o << "structure checks:\n";
    for (const auto& c : rep.structure.checks)
        o << "  " << (c.passed ? "PASS " : "FAIL ") << c.name << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
    o << "W certified at p = " << rep.w_certificate.prime << ", zeros " << set_string(rep.w_certificate.zeros()) << "\n";
    o << "evidence:\n";
    for (const auto& ev : rep.evidence) {
        o << "  a = " << to_display_string(ev.a) << " (W(" << ev.w_zero << ") = 0)";
        if (ev.a.get_den() == 1) o << (ev.exact_zero_of_T ? ", T(a) = 0 exactly" : ", T(a) != 0");
        o << ", |sum| = " << ev.residual.sum_residual.to_string(3)
          << ", |product - 1| = " << ev.residual.product_residual.to_string(3) << "\n";
    }
    if (!rep.rejected.empty()) {
        o << "rejected:";
        for (const auto& a : rep.rejected) o << " " << to_display_string(a);
        o << "\n";
    }
    o << "The only TRZs of the Tribonacci sequence are\n  ";
    const auto all = rep.all();
    for (std::size_t i = 0; i < all.size(); ++i) o << (i ? ", " : "") << to_display_string(all[i]);
    o << "\n";
    return o.str();
}

// ---------------------------------------------------------------- experiments

inline Json to_json(const DensityReport& r) {
    return Json{{"type", "DensityReport"},
                {"alpha", r.alpha.get_str()},
                {"r", r.r},
                {"bound", r.bound},
                {"primes_counted", r.counted},
                {"primes_matching", r.matching},
                {"density", to_fraction_string(r.density)},
                {"density_decimal", r.density.get_d()}};
}

inline std::string render(const DensityReport& r) {
    std::ostringstream o;
    o << "primes p <= " << r.bound << " with " << r.r << " | ord_p(" << r.alpha << "): " << r.matching << " of "
      << r.counted << "\n";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", r.density.get_d());
    o << "density = " << to_display_string(r.density) << " ~ " << buf << "\n";
    return o.str();
}

inline const char* to_string(LawCase k) {
    switch (k) {
        case LawCase::PlusMinusThree: return "p = +-3 mod 8";
        case LawCase::MinusOne: return "p = -1 mod 8";
        default: return "p = 1 mod 8";
    }
}

inline Json to_json(const LawReport& r) {
    Json ce = Json::array();
    for (const auto& c : r.counterexamples)
        ce.push_back(Json{{"n", std::to_string(c.n)}, {"actual", c.actual}, {"expected", c.expected}});
    return Json{{"type", "LawReport"},
                {"p", r.p},
                {"case", to_string(r.kind)},
                {"holds", r.holds},
                {"tau", r.tau},
                {"residue", r.residue},
                {"modulus", r.modulus},
                {"checked", r.checked},
                {"limit", r.limit},
                {"precision", r.precision},
                {"behavior", r.behavior},
                {"counterexamples", ce}};
}

inline std::string render(const LawReport& r) {
    std::ostringstream o;
    o << "p = " << r.p << " (" << to_string(r.kind) << "): " << r.behavior << "\n";
    o << "  checked " << r.checked << " values of n <= " << r.limit;
    if (r.precision) o << " modulo " << r.p << "^" << r.precision;
    o << "\n";
    for (const auto& c : r.counterexamples)
        o << "  n = " << c.n << ": nu = " << c.actual << ", expected " << c.expected << "\n";
    return o.str();
}

inline const char* to_string(Trend t) { return t == Trend::UnboundedLooking ? "unbounded-looking" : "bounded"; }

inline Json to_json(const SignatureScan& s) {
    Json rows = Json::array();
    for (const auto& r : s.rows)
        rows.push_back(Json{{"depth", r.depth}, {"n", r.n.get_str()}, {"valuation", r.valuation}, {"lower_bound", r.lower_bound}});
    return Json{{"type", "SignatureScan"},
                {"p", s.p},
                {"a", to_fraction_string(s.a)},
                {"window", s.window},
                {"trend", to_string(s.trend)},
                {"rows", rows}};
}

inline std::string render(const SignatureScan& s) {
    std::ostringstream o;
    o << "signature of a = " << to_display_string(s.a) << " at p = " << s.p << " (window |s| <= " << s.window << ")\n";
    for (const auto& r : s.rows)
        o << "  depth " << r.depth << ": n = " << r.n << ", nu = " << (r.lower_bound ? ">= " : "") << r.valuation << "\n";
    o << "trend: " << to_string(s.trend) << "\n";
    return o.str();
}

}  // namespace lrsz
