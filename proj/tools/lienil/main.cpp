// Command-line front end. Exit codes: 0 success, 1 a checked claim failed
// (or a search cap was exhausted), 2 usage error.

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "lienil/acceptance.hpp"
#include "lienil/codim.hpp"
#include "lienil/errors.hpp"
#include "lienil/freealg.hpp"
#include "lienil/idcheck.hpp"
#include "lienil/reptheory.hpp"

using namespace lienil;
using json = nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kUsage = 2;

struct Options {
    std::string algebra;
    std::string poly;
    int degree = 0;
    int p = 0;
    int n = 0;
    int k = 0;
    int m = 0;
    int l = 0;
    std::optional<int> cap;
    bool json = false;
    bool csv = false;
    unsigned threads = 1;
    std::uint64_t seed = SuiteOptions{}.seed;
    std::size_t max_dim = kDefaultMaxDim;
    std::vector<int> only;
};

MultilinearPoly read_poly(const std::string& text) { return multilinearize(parse_poly(text)); }

std::string s(const Rational& r) { return r.str(); }

int cmd_min_index(const Options& o) {
    const AlgebraSpec spec = AlgebraSpec::parse(o.algebra);
    try {
        const int q = min_index(spec, o.cap, o.threads, o.max_dim);
        if (o.json)
            std::cout << json{{"algebra", spec.str()}, {"min_index", q}}.dump() << "\n";
        else
            std::cout << q << "\n";
        return kOk;
    } catch (const CapExceeded& e) {
        if (o.json)
            std::cout << json{{"algebra", spec.str()}, {"error", e.what()}}.dump() << "\n";
        else
            std::cout << e.what() << "\n";
        return kViolation;
    }
}

int cmd_check_identity(const Options& o, bool witness_only) {
    const AlgebraSpec spec = AlgebraSpec::parse(o.algebra);
    const MultilinearPoly f = read_poly(o.poly);
    const IdentityVerdict v = check_identity(f, spec, o.threads, o.max_dim);
    if (o.json) {
        std::cout << verdict_to_json(v, f, spec) << "\n";
        return kOk;
    }
    if (!witness_only) std::cout << (v.is_identity ? "identity" : "not an identity") << "\n";
    if (v.witness) {
        const Witness& w = *v.witness;
        for (std::size_t a = 0; a < w.arg_strings.size(); ++a)
            std::cout << "x" << a + 1 << " = " << w.arg_strings[a] << "\n";
        std::cout << "value = " << w.value_string << "\n";
    } else if (witness_only) {
        std::cout << "no witness: the polynomial is an identity of " << spec.str() << "\n";
    }
    return kOk;
}

int cmd_gamma_dim(const Options& o) {
    if (!o.algebra.empty()) {
        const std::size_t g = gamma_by_evaluation(o.n, AlgebraSpec::parse(o.algebra), o.max_dim);
        if (o.json)
            std::cout << json{{"algebra", o.algebra}, {"n", o.n}, {"gamma", g}}.dump() << "\n";
        else
            std::cout << g << "\n";
        return kOk;
    }
    const QuotientDims d = quotient_dims(o.n, o.p, o.degree > 0 ? o.degree : kDefaultMaxDegree);
    if (o.json)
        std::cout << json{{"n", o.n}, {"p", o.p}, {"c", d.c}, {"gamma", d.gamma}}.dump() << "\n";
    else
        std::cout << "c_" << o.n << "(N_" << o.p << ") = " << d.c << "\ngamma_" << o.n << "(N_" << o.p
                  << ") = " << d.gamma << "\n";
    return kOk;
}

int cmd_codim(const Options& o) {
    std::vector<QuotientDims> rows;
    for (int n = 0; n <= o.n; ++n) rows.push_back(quotient_dims(n, o.p));
    bool consistent = true;
    for (int n = 0; n <= o.n; ++n) {
        const Rational c = binom_transform(
            [&](int l) { return Rational(static_cast<std::int64_t>(rows[static_cast<std::size_t>(l)].gamma)); }, n);
        consistent = consistent && c == Rational(static_cast<std::int64_t>(rows[static_cast<std::size_t>(n)].c));
    }
    if (o.json) {
        json arr = json::array();
        for (int n = 0; n <= o.n; ++n) arr.push_back({{"n", n}, {"c", rows[n].c}, {"gamma", rows[n].gamma}});
        std::cout << json{{"p", o.p}, {"rows", arr}, {"binomial_relation", consistent}}.dump() << "\n";
    } else {
        std::cout << (o.csv ? "n,c,gamma\n" : "");
        for (int n = 0; n <= o.n; ++n)
            std::cout << n << (o.csv ? "," : "  c=") << rows[n].c << (o.csv ? "," : "  gamma=") << rows[n].gamma
                      << "\n";
        if (!o.csv)
            std::cout << "c_n = sum binom(n,l) gamma_l: " << (consistent ? "VERIFIED" : "FAILED") << "\n";
    }
    return consistent ? kOk : kViolation;
}

int cmd_decompose(const Options& o) {
    const Decomposition d = decompose_quotient(o.n, o.p);
    const auto listed = intro_partitions(std::max(o.n, 1), std::max(o.p, 2));
    bool ok = true;
    for (const auto& lam : listed) ok = ok && (o.n < 1 || o.p < 2 || d.contains(lam));
    for (const auto& [lam, m] : d.terms) ok = ok && lam.part(0) <= o.p - 1;
    if (o.json) {
        std::cout << json{{"n", o.n}, {"p", o.p}, {"decomposition", json::parse(d.to_json())},
                          {"dim", s(d.total_dim())}, {"constraints", ok}}
                         .dump()
                  << "\n";
    } else if (o.csv) {
        std::cout << "partition,multiplicity,dim\n";
        for (const auto& [lam, m] : d.terms) std::cout << "\"" << lam.str() << "\"," << m << "," << hook_dim(lam) << "\n";
    } else {
        std::cout << "Gamma_" << o.n << "(N_" << o.p << ") = " << d.str() << "\ndim = " << d.total_dim() << "\n";
        std::cout << "guaranteed partitions present, first rows <= p-1: " << (ok ? "VERIFIED" : "FAILED") << "\n";
    }
    return ok ? kOk : kViolation;
}

int cmd_did(const Options& o) {
    const Decomposition d = o.m > 0 ? did_gamma_finite(o.n, o.m, o.l) : did_gamma(o.n, o.l);
    if (o.json)
        std::cout << json{{"n", o.n}, {"l", o.l}, {"m", o.m}, {"decomposition", json::parse(d.to_json())},
                          {"dim", s(d.total_dim())}}
                         .dump()
                  << "\n";
    else
        std::cout << d.str() << "\ndim = " << d.total_dim() << "\n";
    return kOk;
}

int cmd_bounds(const Options& o) {
    const int k = o.k;
    const QPoly a = bound_poly(k, Parity::Odd), b = bound_poly(k, Parity::Even);
    const BoundSpec spec = codim_bound_spec(k);
    const QuasiPoly q = closed_form(spec);
    const Rational ck = catalan(k), f = factorial(2 * k - 2);
    bool ok = a.lead() == pow2(2 * k - 2) * ck / f && b.lead() == a.lead() && q.r.lead() == ck / f;
    std::optional<CombinedLeads> comb;
    if (k >= 4) {
        comb = combined_bounds(k);
        ok = ok && comb->gamma_lead == pow2(2 * k - 3) / f * (Rational(1) + Rational(2) * ck) &&
             comb->codim_lead == (Rational(1) + Rational(2) * ck) / (Rational(2) * f);
    }
    if (o.csv) {
        std::cout << bounds_csv(spec, o.n > 0 ? o.n : 20);
        return ok ? kOk : kViolation;
    }
    if (o.json) {
        json j{{"k", k},
               {"A", a.str()},
               {"B", b.str()},
               {"gamma_lead", s(a.lead())},
               {"closed_form", json::parse(q.to_json())},
               {"r_lead", s(q.r.lead())},
               {"verified", ok}};
        if (comb) j["combined"] = {{"gamma_lead", s(comb->gamma_lead)}, {"codim_lead", s(comb->codim_lead)}};
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "A_" << k << "(n) = " << a.str() << "\nB_" << k << "(n) = " << b.str() << "\n";
        std::cout << "leading coefficient of A_k, B_k: " << a.lead() << "\n";
        std::cout << "codimension bound: " << q.str() << "\n";
        std::cout << "leading coefficient of r: " << q.r.lead() << "\n";
        if (comb)
            std::cout << "combined leading coefficients: gamma " << comb->gamma_lead << ", codim " << comb->codim_lead
                      << "\n";
        std::cout << (ok ? "VERIFIED" : "FAILED") << "\n";
    }
    return ok ? kOk : kViolation;
}

int cmd_inclusions(const Options& o) {
    const int target = o.m + o.n - 1;
    const auto span = product_span(o.m, o.n, o.degree);
    const auto ideal = ideal_echelon(target, o.degree);
    std::size_t outside = 0;
    for (const auto& f : span) outside += !ideal->contains(f.coords());
    const std::string label = "I_" + std::to_string(o.m) + "·I_" + std::to_string(o.n) + " ⊂ I_" + std::to_string(target);
    if (o.json)
        std::cout << json{{"claim", label},    {"degree", o.degree}, {"elements", span.size()},
                          {"outside", outside}, {"verified", outside == 0}}
                         .dump()
                  << "\n";
    else if (outside == 0)
        std::cout << label << ": VERIFIED\n";
    else
        std::cout << label << ": FAILED (" << outside << " of " << span.size() << " elements outside)\n";
    return outside == 0 ? kOk : kViolation;
}

int cmd_verify_suite(const Options& o) {
    SuiteOptions so;
    so.threads = o.threads;
    so.seed = o.seed;
    std::vector<int> ids = o.only;
    if (ids.empty())
        for (int id = 1; id <= kCriterionCount; ++id) ids.push_back(id);
    bool all = true;
    json arr = json::array();
    for (int id : ids) {
        const CriterionResult r = run_criterion(id, so);
        all = all && r.passed;
        if (o.json)
            arr.push_back({{"id", r.id}, {"title", r.title}, {"passed", r.passed}, {"detail", r.detail}});
        else
            std::cout << format_result(r) << std::endl;
    }
    if (o.json) std::cout << arr.dump() << "\n";
    return all ? kOk : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact checks of Lie nilpotency identities, proper codimensions and bounds"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* c) {
        c->add_flag("--json", o.json, "JSON output");
        c->add_flag("--csv", o.csv, "CSV output where supported");
        c->add_option("--threads", o.threads, "worker threads")->check(CLI::Range(1u, 256u));
        c->add_option("--max-dim", o.max_dim, "largest algebra dimension to materialize");
    };
    auto algebra = [&](CLI::App* c) {
        return c->add_option("--algebra", o.algebra, "algebra spec, e.g. E2*E2, E*E3, N4*N3, @table.json");
    };

    auto* mi = app.add_subcommand("min-index", "least q with [x1,...,xq] an identity");
    algebra(mi)->required();
    mi->add_option("--cap", o.cap, "largest q to try")->check(CLI::Range(2, 64));
    common(mi);

    auto* ci = app.add_subcommand("check-identity", "decide whether a polynomial is an identity");
    algebra(ci)->required();
    ci->add_option("--poly", o.poly, "polynomial, e.g. \"[x1,x2,x3]\"")->required();
    common(ci);

    auto* wi = app.add_subcommand("witness", "print a nonvanishing substitution");
    algebra(wi)->required();
    wi->add_option("--poly", o.poly, "polynomial")->required();
    common(wi);

    auto* gd = app.add_subcommand("gamma-dim", "proper codimension of N_p, or of an algebra with --algebra");
    gd->add_option("--n", o.n, "degree")->required()->check(CLI::Range(0, 12));
    gd->add_option("--p", o.p, "nilpotency index of N_p")->check(CLI::Range(1, 12));
    gd->add_option("--degree", o.degree, "raise the degree guard")->check(CLI::Range(1, 9));
    algebra(gd);
    common(gd);

    auto* cd = app.add_subcommand("codim", "c_n and gamma_n of N_p for n = 0..N");
    cd->add_option("--p", o.p, "nilpotency index")->required()->check(CLI::Range(1, 12));
    cd->add_option("--n", o.n, "largest degree")->required()->check(CLI::Range(0, kDefaultMaxDegree));
    common(cd);

    auto* de = app.add_subcommand("decompose", "S_n decomposition of Gamma_n(N_p)");
    de->add_option("--n", o.n, "degree")->required()->check(CLI::Range(0, kDecomposeMaxDegree));
    de->add_option("--p", o.p, "nilpotency index")->required()->check(CLI::Range(1, 12));
    common(de);

    auto* di = app.add_subcommand("did", "Gamma_n(E⊗E_2l), or Gamma_n(E_2m⊗E_2l) with --m");
    di->add_option("--n", o.n, "degree")->required()->check(CLI::Range(2, 40));
    di->add_option("--l", o.l, "half rank of the second factor")->required()->check(CLI::Range(1, 20));
    di->add_option("--m", o.m, "half rank of the first factor (m >= l)")->check(CLI::Range(1, 20));
    common(di);

    auto* bo = app.add_subcommand("bounds", "A_k, B_k and the codimension lower bound");
    bo->add_option("--k", o.k, "half index, p = 2k")->required()->check(CLI::Range(2, 12));
    bo->add_option("--n", o.n, "rows of the CSV table (default 20)")->check(CLI::Range(0, 200));
    common(bo);

    auto* in = app.add_subcommand("inclusions", "check I_m·I_n ⊂ I_{m+n-1} in one degree");
    in->add_option("--m", o.m, "first commutator length")->required()->check(CLI::Range(2, 8));
    in->add_option("--n", o.n, "second commutator length")->required()->check(CLI::Range(2, 8));
    in->add_option("--degree", o.degree, "multilinear degree")->required()->check(CLI::Range(2, kDefaultMaxDegree));
    common(in);

    auto* vs = app.add_subcommand("verify-suite", "run the acceptance battery");
    vs->add_option("--seed", o.seed, "corpus seed");
    vs->add_option("--only", o.only, "criterion numbers")->check(CLI::Range(1, kCriterionCount));
    common(vs);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }
    if (o.json && o.csv) {
        std::cerr << "error: --json and --csv are exclusive\n";
        return kUsage;
    }
    if ((*gd || *cd || *de) && o.p < 1 && !(*gd && !o.algebra.empty())) {
        std::cerr << "error: --p is required\n";
        return kUsage;
    }

    try {
        if (*mi) return cmd_min_index(o);
        if (*ci) return cmd_check_identity(o, false);
        if (*wi) return cmd_check_identity(o, true);
        if (*gd) return cmd_gamma_dim(o);
        if (*cd) return cmd_codim(o);
        if (*de) return cmd_decompose(o);
        if (*di) return cmd_did(o);
        if (*bo) return cmd_bounds(o);
        if (*in) return cmd_inclusions(o);
        if (*vs) return cmd_verify_suite(o);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const SizeGuard& e) {
        std::cerr << "error: " << e.what() << " (see --max-dim)\n";
        return kUsage;
    } catch (const DimensionMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kViolation;
    }
    return kUsage;
}
