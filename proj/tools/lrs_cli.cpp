// lrs: command-line front end for the lrsz library.
//
// Exit codes: 0 success; 1 malformed input or a failed computation; 2 some
// residue class stayed inconclusive (zeros, profile); 3 a profile --check
// found a mismatch.

#include "lrsz/lrsz.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace lrsz;

enum class Format { Human, Structured };

struct LrsSource {
    std::string rec;
    std::string init;
    std::string lrs;
};

struct Common {
    unsigned long p = 0;
    long precision = 64;
    unsigned depth = 24;
    std::int64_t scan_bound = 1'000'000;
    unsigned long max_prime = 100;
    Format format = Format::Human;

    SkolemOptions options() const {
        SkolemOptions o;
        o.precision = precision;
        o.max_depth = depth;
        o.scan_bound = scan_bound;
        return o;
    }
};

std::vector<BigRational> parse_list(const std::string& text, const char* flag) {
    std::vector<BigRational> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = text.find(',', start);
        const std::string item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        try {
            out.push_back(parse_rational(item));
        } catch (const Error& e) {
            throw Error(std::string(flag) + ": " + e.what());
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

std::optional<Lrs> preset(std::string name) {
    const std::string suffix = "-preset";
    if (name.size() > suffix.size() && name.ends_with(suffix)) name.resize(name.size() - suffix.size());
    if (name == "tribonacci") return tribonacci();
    if (name == "W" || name == "w") return w_sequence();
    if (name == "2^n+1") return make_lrs({-2, 3}, {2, 3});
    if (name == "8^n+2^n+1") return make_lrs({16, -26, 11}, {3, 11, 69});
    return std::nullopt;
}

Lrs resolve(const LrsSource& src) {
    const bool inline_given = !src.rec.empty() || !src.init.empty();
    if (inline_given == !src.lrs.empty()) throw Error("give exactly one LRS source: --rec with --init, or --lrs");
    if (!src.lrs.empty()) {
        if (auto u = preset(src.lrs)) return *u;
        return load_lrs_file(src.lrs);
    }
    if (src.rec.empty() || src.init.empty()) throw Error("--rec and --init must be given together");
    const auto a = parse_list(src.rec, "--rec");
    const auto u = parse_list(src.init, "--init");
    if (a.size() != u.size()) throw Error("--rec and --init must have the same length");
    return minimal_order(a, u);
}

void add_source(CLI::App* app, LrsSource& src) {
    app->add_option("--rec", src.rec, "recurrence coefficients a0,...,a_{m-1} of U(n+m) = sum a_i U(n+i)");
    app->add_option("--init", src.init, "initial values U(0),...,U(m-1)");
    app->add_option("--lrs", src.lrs, "LRS file, or a preset: tribonacci, W, 2^n+1, 8^n+2^n+1");
}

void add_format(CLI::App* app, Common& c) {
    app->add_option("--format", c.format, "output format")
        ->transform(CLI::CheckedTransformer(std::map<std::string, Format>{{"human", Format::Human},
                                                                          {"structured", Format::Structured}}));
}

void add_certify(CLI::App* app, Common& c) {
    app->add_option("--p", c.p, "prime (default: smallest regular prime that closes every class)");
    app->add_option("--precision", c.precision, "p-adic precision K")->check(CLI::Range(8L, 4096L));
    app->add_option("--depth", c.depth, "maximal subdivision depth")->check(CLI::Range(0U, 64U));
    app->add_option("--scan-bound", c.scan_bound, "integer zeros are located in |n| <= this")
        ->check(CLI::Range(std::int64_t{0}, std::int64_t{100'000'000}));
    app->add_option("--max-prime", c.max_prime, "largest prime tried by auto-selection")
        ->check(CLI::Range(2UL, 100'000UL));
    add_format(app, c);
}

void emit(const Common& c, const Json& j, const std::string& text) {
    if (c.format == Format::Structured) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << text;
    }
}

int cmd_eval(const LrsSource& src, const Common& c, std::int64_t n) {
    const Lrs u = resolve(src);
    const BigRational v = eval(u, n);
    emit(c, Json{{"type", "Value"}, {"n", std::to_string(n)}, {"value", to_fraction_string(v)}},
         to_display_string(v) + "\n");
    return 0;
}

int cmd_zeros(const LrsSource& src, const Common& c) {
    const Lrs u = resolve(src);
    const SkolemOptions opts = c.options();
    ZeroCertificate cert;
    Json search = nullptr;
    if (c.p) {
        cert = find_zeros(u, c.p, opts);
    } else {
        const PrimeSearch s = search_certifying_primes(u, opts, c.max_prime, 1);
        search = to_json(s)["attempts"];
        if (!s.certificates.empty()) {
            cert = s.certificates.front();
        } else {
            // Nothing closes: report the full walk at the first usable prime.
            std::optional<unsigned long> first;
            for (const auto& a : s.attempts)
                if (a.outcome == "inconclusive classes") {
                    first = a.prime;
                    break;
                }
            if (!first) throw Error("no usable regular prime up to --max-prime");
            cert = find_zeros(u, *first, opts);
        }
    }
    Json j = to_json(cert);
    if (!search.is_null()) j["prime_search"] = search;
    emit(c, j, render(cert));
    return cert.complete() ? 0 : 2;
}

int cmd_profile(const LrsSource& src, const Common& c, std::int64_t check) {
    const Lrs u = resolve(src);
    const SkolemOptions opts = c.options();
    std::optional<ValuationProfile> prof;
    if (c.p) {
        prof = valuation_profile(u, c.p, opts);
    } else {
        if (u.is_zero() || !analyze_char_poly(u).nondegenerate) throw Error("degenerate LRS");
        for (unsigned long p = 2; p <= c.max_prime; ++p) {
            if (!is_prime_u64(p) || !is_regular_prime(u, p)) continue;
            try {
                ValuationProfile candidate = valuation_profile(u, p, opts);
                const bool done = candidate.complete();
                if (!prof || done) prof = std::move(candidate);
                if (done) break;
            } catch (const Error&) {
            }
        }
        if (!prof) throw Error("no usable regular prime up to --max-prime");
    }
    Json j = to_json(*prof);
    std::string text = render(*prof);
    int code = prof->complete() ? 0 : 2;
    if (check > 0) {
        const ProfileCheck pc = prof->check(u, check);
        j["check"] = to_json(pc);
        text += render(pc);
        if (!pc.passed()) code = 3;
    }
    emit(c, j, text);
    return code;
}

int cmd_trz(const Common& c, long digits) {
    const TribonacciContext ctx = detail::run_stage("roots", [&] { return TribonacciContext(digits); });
    const TrzReport rep = tribonacci_trz(ctx, c.options(), c.p, c.max_prime);
    Json j = to_json(rep);
    j["digits"] = digits;
    emit(c, j, render(rep));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact and p-adic analysis of linear recurrence sequences"};
    app.require_subcommand(1);

    LrsSource src;
    Common common;
    std::int64_t n = 0;
    std::int64_t check = 0;
    long digits = 200;
    std::string alpha = "2", a_text;
    std::uint64_t r = 2, bound = 100'000, window = 0;
    unsigned long law_p = 0, law_below = 0;
    unsigned sig_depth = 12;

    auto* eval_cmd = app.add_subcommand("eval", "exact value U(n)");
    add_source(eval_cmd, src);
    eval_cmd->add_option("--n", n, "index (negative allowed)")->required();
    add_format(eval_cmd, common);

    auto* zeros_cmd = app.add_subcommand("zeros", "certified zero set");
    add_source(zeros_cmd, src);
    add_certify(zeros_cmd, common);

    auto* profile_cmd = app.add_subcommand("profile", "p-adic valuation case table");
    add_source(profile_cmd, src);
    add_certify(profile_cmd, common);
    profile_cmd->add_option("--check", check, "compare with brute force for |n| <= B")
        ->check(CLI::Range(std::int64_t{0}, std::int64_t{10'000'000}));

    auto* trz_cmd = app.add_subcommand("tribonacci-trz", "twisted rational zeros of the Tribonacci sequence");
    add_certify(trz_cmd, common);
    trz_cmd->add_option("--digits", digits, "decimal digits for the numeric checks")->check(CLI::Range(60L, 5000L));

    auto* exp_cmd = app.add_subcommand("experiments", "empirical checks");
    exp_cmd->require_subcommand(1);
    auto* density_cmd = exp_cmd->add_subcommand("density", "share of primes with r | ord_p(alpha)");
    density_cmd->add_option("--alpha", alpha, "integer base");
    density_cmd->add_option("--r", r, "divisor of the order")->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1} << 20));
    density_cmd->add_option("--bound", bound, "prime bound")->check(CLI::Range(std::uint64_t{1}, std::uint64_t{100'000'000}));
    add_format(density_cmd, common);
    auto* law_cmd = exp_cmd->add_subcommand("law", "nu_p(2^n + 1) against the order-2 law");
    auto* law_one = law_cmd->add_option("--p", law_p, "odd prime");
    auto* law_all = law_cmd->add_option("--below", law_below, "every odd prime below this bound")
                        ->check(CLI::Range(3UL, 100'000UL));
    law_one->excludes(law_all);
    add_format(law_cmd, common);
    auto* sig_cmd = exp_cmd->add_subcommand("signature", "valuation pattern near a candidate a");
    add_source(sig_cmd, src);
    sig_cmd->add_option("--p", common.p, "prime")->required();
    sig_cmd->add_option("--a", a_text, "rational candidate")->required();
    sig_cmd->add_option("--depth", sig_depth, "deepest p^j")->check(CLI::Range(1U, 40U));
    sig_cmd->add_option("--window", window, "offsets |s| <= window (default 16 p)");
    add_format(sig_cmd, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*eval_cmd) return cmd_eval(src, common, n);
        if (*zeros_cmd) return cmd_zeros(src, common);
        if (*profile_cmd) return cmd_profile(src, common, check);
        if (*trz_cmd) return cmd_trz(common, digits);
        if (*density_cmd) {
            const BigRational base = parse_rational(alpha);
            if (base.get_den() != 1) throw Error("--alpha must be an integer");
            const DensityReport rep = density_scan(base.get_num(), r, bound);
            emit(common, to_json(rep), render(rep));
            return 0;
        }
        if (*law_cmd) {
            if (!law_p && !law_below) throw Error("give --p or --below");
            std::vector<LawReport> reps;
            if (law_p) {
                reps.push_back(order2_valuation_law(law_p));
            } else {
                for (auto q : primes_up_to(law_below - 1))
                    if (q != 2) reps.push_back(order2_valuation_law(static_cast<unsigned long>(q)));
            }
            bool holds = true;
            Json arr = Json::array();
            std::string text;
            for (const auto& rep : reps) {
                holds = holds && (rep.kind == LawCase::PlusOne || rep.holds);
                arr.push_back(to_json(rep));
                text += render(rep);
            }
            if (reps.size() == 1) {
                emit(common, arr[0], text);
            } else {
                text += holds ? "law holds at every tested prime\n" : "law fails at some prime\n";
                emit(common, Json{{"type", "LawSweep"}, {"below", law_below}, {"holds", holds}, {"reports", arr}}, text);
            }
            return holds ? 0 : 1;
        }
        if (*sig_cmd) {
            const Lrs u = resolve(src);
            const SignatureScan s =
                signature_scan(u, common.p, parse_rational(a_text), sig_depth, static_cast<std::int64_t>(window));
            emit(common, to_json(s), render(s));
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
