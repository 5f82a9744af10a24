#include "lienil/acceptance.hpp"

#include <chrono>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "lienil/algebras.hpp"
#include "lienil/codim.hpp"
#include "lienil/errors.hpp"
#include "lienil/grassmann.hpp"
#include "lienil/idcheck.hpp"
#include "lienil/linalg.hpp"
#include "lienil/reptheory.hpp"

namespace lienil {

namespace {

// Collects comparisons; a criterion passes iff nothing mismatched.
class Tally {
public:
    template <class A, class B>
    void eq(const std::string& what, const A& got, const B& want) {
        ++checks_;
        if (!(got == want)) fail(what + ": got " + show(got) + ", expected " + show(want));
    }
    void ok(const std::string& what, bool cond) {
        ++checks_;
        if (!cond) fail(what);
    }
    void fail(const std::string& msg) { failures_.push_back(msg); }
    void note(const std::string& msg) { notes_.push_back(msg); }
    bool passed() const { return failures_.empty(); }

    std::string summary() const {
        std::ostringstream os;
        os << checks_ - failures_.size() << "/" << checks_ << " checks";
        for (const auto& n : notes_) os << "; " << n;
        for (const auto& f : failures_) os << "; FAILED " << f;
        return os.str();
    }

private:
    template <class T>
    static std::string show(const T& v) {
        std::ostringstream os;
        if constexpr (std::is_same_v<T, bool>)
            os << (v ? "true" : "false");
        else
            os << v;
        return os.str();
    }
    std::size_t checks_ = 0;
    std::vector<std::string> failures_;
    std::vector<std::string> notes_;
};

MultilinearPoly lc(int q) { return MultilinearPoly::from_poly(long_commutator_vars(q), q); }
MultilinearPoly ml(const char* s, int n) { return MultilinearPoly::from_poly(parse_poly(s), n); }
Rational R(std::size_t v) { return Rational(static_cast<std::int64_t>(v)); }

void minimal_indices(Tally& t, const SuiteOptions& o) {
    const std::vector<std::pair<const char*, int>> table{
        {"E2*E2", 4}, {"E2^3", 5}, {"E2^4", 6}, {"E*E2", 5}, {"E*E3", 5},
        {"E*E2*E2", 7}, {"E4*E4", 6}, {"E3*E4", 4},
    };
    for (const auto& [spec, want] : table) {
        const auto t0 = std::chrono::steady_clock::now();
        const int got = min_index(AlgebraSpec::parse(spec), std::nullopt, o.threads);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        t.eq(std::string("min_index(") + spec + ")", got, want);
        t.ok(std::string(spec) + " within 60 s", secs <= 60);
    }
}

void oddness(Tally& t, const SuiteOptions& o) {
    for (const char* spec : {"E*E2", "E*E3", "E*E2*E2"}) {
        const int q = min_index(AlgebraSpec::parse(spec), std::nullopt, o.threads);
        t.ok(std::string("min_index(") + spec + ") = " + std::to_string(q) + " is odd", q % 2 == 1);
    }
}

void checker_equivalence(Tally& t, const SuiteOptions& o) {
    const auto corpus = checker_corpus(o.seed, o.corpus_size);
    std::map<std::string, AlgebraPtr> algebras;
    std::size_t identities = 0;
    for (const auto& e : corpus) {
        const AlgebraSpec spec = AlgebraSpec::parse(e.algebra);
        auto& alg = algebras[e.algebra];
        if (!alg) alg = spec.materialize();
        const bool a = parity_check(e.poly, spec, o.threads).is_identity;
        const bool b = brute_check(e.poly, *alg, o.threads).is_identity;
        t.ok("disagreement on " + e.algebra + " for " + e.origin, a == b);
        identities += a;
    }
    t.ok("corpus has at least 300 pairs", corpus.size() >= 300);
    t.note(std::to_string(corpus.size()) + " pairs, " + std::to_string(identities) + " identities");
}

void witness_values(Tally& t, const SuiteOptions&) {
    auto pure = [](std::vector<int> dims, TensorElem::Key key, Rational c = Rational(1)) {
        return TensorElem::pure(std::move(dims), key, c);
    };
    const std::vector<TensorElem> args{pure({2, 2}, {0b01, 0b00}), pure({2, 2}, {0b10, 0b01}),
                                       pure({2, 2}, {0b00, 0b10})};
    t.eq("[e1⊗1, e2⊗f1, 1⊗f2]", evaluate(long_commutator_vars(3), args).str(),
         pure({2, 2}, {0b11, 0b11}, Rational(4)).str());
    t.eq("[x1..x5] on the E4⊗E4 substitution", evaluate(long_commutator_vars(5), recipes::equal_pair(2)).str(),
         pure({4, 4}, {0b1111, 0b1111}, Rational(16)).str());
    for (int k = 1; k <= 2; ++k) {
        std::vector<int> dims{kUnbounded};
        TensorElem::Key key{(GMonomial{1} << (2 * k + 2)) - 1};
        for (int s = 0; s < k; ++s) dims.push_back(2), key.push_back(0b11);
        t.eq("E⊗E2^" + std::to_string(k) + " witness",
             evaluate(long_commutator_vars(2 * k + 2), recipes::e_times_e2(k)).str(),
             pure(dims, key, pow2(2 * k + 1)).str());
    }
}

void tideal_theorems(Tally& t, const SuiteOptions&) {
    auto check_inside = [&](const std::string& what, const std::vector<MultilinearPoly>& polys, int p, int n) {
        auto e = ideal_echelon(p, n);
        std::size_t bad = 0;
        for (const auto& f : polys) bad += !e->contains(f.coords());
        t.eq(what + " (" + std::to_string(polys.size()) + " elements) outside", bad, std::size_t{0});
    };
    check_inside("I_3·I_2 ⊂ I_4 in degree 5", product_span(3, 2, 5), 4, 5);
    check_inside("I_3·I_3 ⊂ I_4 in degree 6", product_span(3, 3, 6), 4, 6);
    for (int m = 2; m <= 3; ++m) {
        const int n = m + 3;
        std::vector<MultilinearPoly> moved;
        for (const auto& u : ideal_multilinear_span(m, m + 1)) {
            NcPoly w = long_commutator({u.to_poly(), NcPoly::var(m + 2), NcPoly::var(m + 3)});
            moved.push_back(MultilinearPoly::from_poly(w, n));
        }
        check_inside("[u,x,y] ∈ I_" + std::to_string(m + 2) + " for u ∈ I_" + std::to_string(m), moved, m + 2, n);
    }
}

void proper_dimensions(Tally& t, const SuiteOptions&) {
    for (int n = 0; n <= 6; ++n) {
        Rational d(0);  // inverse binomial transform of n!
        for (int l = 0; l <= n; ++l) d += ((n - l) % 2 ? Rational(-1) : Rational(1)) * binomial(n, l) * factorial(l);
        t.eq("rank proper_span(" + std::to_string(n) + ")", R(rank(coordinates(proper_span(n)))), d);
    }
    for (int p = 3; p <= 5; ++p)
        for (int n = 1; n <= p; ++n)
            t.eq("c_" + std::to_string(n) + "(N_" + std::to_string(p) + ")", R(quotient_dims(n, p).c), factorial(n));
    t.eq("c_3(N_2)", quotient_dims(3, 2).c, std::size_t{4});
}

void did_cross_validation(Tally& t, const SuiteOptions&) {
    auto e2e2 = AlgebraSpec::parse("E2*E2").materialize();
    for (int n = 4; n <= 6; ++n) {
        const Rational formula = did_gamma_finite(n, 1, 1).total_dim();
        const Rational direct = R(gamma_by_evaluation(n, *e2e2));
        t.eq("γ_" + std::to_string(n) + "(E2⊗E2) formula vs rank", formula, direct);
    }
    t.eq("γ_4(E2⊗E2)", did_gamma_finite(4, 1, 1).total_dim(), Rational(3));
    t.eq("γ_5(E2⊗E2)", did_gamma_finite(5, 1, 1).total_dim(), Rational(0));
    t.eq("γ_6(E2⊗E2)", did_gamma_finite(6, 1, 1).total_dim(), Rational(0));
    const auto ee2 = AlgebraSpec::parse("E*E2");
    for (int n = 3; n <= 5; ++n)
        t.eq("γ_" + std::to_string(n) + "(E⊗E2) formula vs parity rank", did_gamma(n, 1).total_dim(),
             R(gamma_by_evaluation(n, ee2)));
}

void module_spans(Tally& t, const SuiteOptions&) {
    auto lin = [](const char* s) { return multilinearize(parse_poly(s)); };
    t.eq("lin [x2,x1,x1], p=3", module_span_dim(lin("[x2,x1,x1]"), 3), std::size_t{2});
    t.eq("lin [x1,x2]^2, p=3", module_span_dim(lin("[x1,x2]^2"), 3), std::size_t{2});
    t.eq("lin [x1,x2]^3, p=4", module_span_dim(lin("[x1,x2]^3"), 4), std::size_t{5});
    t.eq("hook dim (2,1)", hook_dim(Partition({2, 1})), Rational(2));
    t.eq("hook dim (2,2)", hook_dim(Partition({2, 2})), Rational(2));
    t.eq("hook dim (3,3)", hook_dim(Partition({3, 3})), Rational(5));
    const std::vector<std::pair<std::vector<int>, std::size_t>> f5{{{3, 1, 1}, 6}, {{2, 2, 1}, 5}, {{2, 1, 1, 1}, 4}};
    for (int i = 1; i <= 3; ++i) {
        const auto& [parts, want] = f5[i - 1];
        t.eq("f_" + std::to_string(i) + "^(5), p=4", module_span_dim(multilinearize(make_g(i, 5)), 4), want);
        t.eq("hook dim " + Partition(parts).str(), hook_dim(Partition(parts)), R(want));
    }
}

void decomposition_constraints(Tally& t, const SuiteOptions&) {
    for (int p = 3; p <= 5; ++p)
        for (int n = 1; n <= 5; ++n) {
            const auto d = decompose_quotient(n, p);
            const std::string at = " (n=" + std::to_string(n) + ", p=" + std::to_string(p) + ")";
            for (const auto& lam : intro_partitions(n, p))
                t.ok("m" + lam.str() + " >= 1" + at, d.multiplicity(lam) >= 1);
            for (const auto& [lam, m] : d.terms) t.ok("first row of " + lam.str() + " <= p-1" + at, lam.part(0) <= p - 1);
            t.eq("Σ m dim" + at, d.total_dim(), R(quotient_dims(n, p).gamma));
        }
}

void formula_identities(Tally& t, const SuiteOptions& o) {
    for (int i = 1; i <= 3; ++i)
        for (int l = 0; l <= 3; ++l)
            for (Parity par : {Parity::Odd, Parity::Even})
                for (int n = 1; n <= 8; ++n) {
                    Rational f;
                    try {
                        f = m_il_dim(i, l, n, par);
                    } catch (const DomainError&) {
                        continue;
                    }
                    const Partition lam(m_il_partition(i, l, n, par));
                    t.eq("M_{" + std::to_string(i) + "," + std::to_string(l) + "} at " + lam.str(), f, hook_dim(lam));
                }
    for (int l = 1; l <= 4; ++l) {
        Rational s(0);
        for (int p = 0; p <= 2 * l - 1; ++p) s += hook_dim(Partition::hook_like(2 * l - p, 0, p));
        t.eq("hook sum l=" + std::to_string(l), s, pow2(2 * l - 1));
    }
    for (int j = 2; j <= 3; ++j) {
        const int m = 2 * j - 2;
        NcPoly sum;
        for (const auto& p : permutations(m)) {
            NcPoly term = NcPoly::constant(Rational(1));
            for (int b = 0; b < j - 1; ++b) term = term * commutator(NcPoly::var(p[2 * b]), NcPoly::var(p[2 * b + 1]));
            sum += permutation_sign(p) < 0 ? -term : term;
        }
        t.ok("s_" + std::to_string(m) + " as signed products of commutators", standard_poly(m) == sum * pow2(-(j - 1)));
    }
    auto n3 = make_nk(3);
    t.ok("N_3 satisfies [x1,x2,x3]", brute_check(lc(3), *n3, o.threads).is_identity);
    t.ok("N_3 satisfies [x1,x2][x3,x4]", brute_check(ml("[x1,x2][x3,x4]", 4), *n3, o.threads).is_identity);
    t.ok("N_3⊗N_3 satisfies [x1..x5]", brute_check(lc(5), *tensor({n3, n3}), o.threads).is_identity);
    t.ok("N_4⊗N_3 satisfies [x1..x5]", brute_check(lc(5), *tensor({make_nk(4), n3}), o.threads).is_identity);
}

void codimension_bounds(Tally& t, const SuiteOptions&) {
    for (int k = 2; k <= 5; ++k)
        for (Parity par : {Parity::Odd, Parity::Even}) {
            const QPoly b = bound_poly(k, par);
            const std::string name = std::string(par == Parity::Odd ? "A_" : "B_") + std::to_string(k);
            t.eq(name + " degree", b.degree(), 2 * k - 2);
            t.eq(name + " leading coefficient", b.lead(), pow2(2 * k - 2) * catalan(k) / factorial(2 * k - 2));
        }
    t.eq("A_3 leading coefficient", bound_poly(3, Parity::Odd).lead(), Rational(10, 3));
    for (int k = 2; k <= 4; ++k) {
        const BoundSpec spec = codim_bound_spec(k);
        const QuasiPoly q = closed_form(spec);
        t.eq("lead r, k=" + std::to_string(k), q.r.lead(), catalan(k) / factorial(2 * k - 2));
        std::size_t bad = 0;
        for (int n = 0; n <= 30; ++n) bad += q(n) != binom_transform(spec.sequence(), n);
        t.eq("closed form mismatches n<=30, k=" + std::to_string(k), bad, std::size_t{0});
    }
    const CombinedLeads c = combined_bounds(4);
    t.eq("combined γ lead k=4", c.gamma_lead, Rational(58, 45));
    t.eq("combined codim lead k=4", c.codim_lead, Rational(29, 1440));
}

struct Criterion {
    const char* title;
    std::function<void(Tally&, const SuiteOptions&)> run;
};

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> all{
        {"minimal-index table", minimal_indices},
        {"oddness of indices with an E factor", oddness},
        {"parity checker agrees with brute force", checker_equivalence},
        {"witness values", witness_values},
        {"T-ideal inclusions", tideal_theorems},
        {"proper-space dimensions", proper_dimensions},
        {"DiD cross-validation", did_cross_validation},
        {"module span dimensions", module_spans},
        {"decomposition constraints", decomposition_constraints},
        {"formula identities", formula_identities},
        {"codimension bounds", codimension_bounds},
    };
    return all;
}

}  // namespace

std::vector<CorpusEntry> checker_corpus(std::uint64_t seed, int count) {
    const std::vector<const char*> algebras{"E2",    "E3",    "E4",    "E2*E2", "E2*E3",
                                            "E3*E3", "E2^3",  "E2*E4", "E3*E4", "E4*E4"};
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coef(-3, 3);
    auto combo = [&](const std::vector<MultilinearPoly>& pool, int n, int terms) {
        SparseVec v;
        std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
        for (int i = 0; i < terms; ++i) v.axpy(Rational(coef(rng) | 1), pool[pick(rng)].coords());
        return MultilinearPoly(n, std::move(v));
    };
    std::vector<CorpusEntry> out;
    for (int i = 0; i < count; ++i) {
        const char* alg = algebras[static_cast<std::size_t>(i) % algebras.size()];
        const int n = 2 + static_cast<int>(rng() % 4);
        const int kind = static_cast<int>(rng() % 6);
        CorpusEntry e{alg, {}, {}};
        const std::string deg = " of degree " + std::to_string(n);
        switch (kind) {
            case 0:
                e.poly = lc(n);
                e.origin = "[x1..x" + std::to_string(n) + "]";
                break;
            case 1: {
                const int q = 2 + static_cast<int>(rng() % static_cast<unsigned>(n - 1));
                e.poly = combo(ideal_multilinear_span(q, n), n, 3);
                e.origin = "element of I_" + std::to_string(q) + deg;
                break;
            }
            case 2: {
                std::vector<MultilinearPoly> words;
                for (const auto& p : permutations(n)) {
                    NcPoly w = NcPoly::constant(Rational(1));
                    for (int v : p) w = w * NcPoly::var(v);
                    words.push_back(MultilinearPoly::from_poly(w, n));
                }
                e.poly = combo(words, n, 4);
                e.origin = "random polynomial" + deg;
                break;
            }
            case 3:
                if (n >= 4) {
                    e.poly = combo(product_span(2, 2, n), n, 2);
                    e.origin = "element of I_2·I_2" + deg;
                    break;
                }
                [[fallthrough]];
            case 4:
                e.poly = MultilinearPoly::from_poly(standard_poly(n), n);
                e.origin = "s_" + std::to_string(n);
                break;
            default:
                e.poly = combo(proper_basis(n), n, 3);
                e.origin = "proper polynomial" + deg;
                break;
        }
        e.origin += " #" + std::to_string(i);
        out.push_back(std::move(e));
    }
    return out;
}

CriterionResult run_criterion(int id, const SuiteOptions& opts) {
    if (id < 1 || id > kCriterionCount) throw DomainError("no acceptance criterion " + std::to_string(id));
    const Criterion& c = criteria()[static_cast<std::size_t>(id - 1)];
    CriterionResult r;
    r.id = id;
    r.title = c.title;
    const auto t0 = std::chrono::steady_clock::now();
    Tally t;
    try {
        c.run(t, opts);
        r.passed = t.passed();
        r.detail = t.summary();
    } catch (const std::exception& e) {
        r.passed = false;
        r.detail = t.summary() + "; error: " + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

std::vector<CriterionResult> run_acceptance(const SuiteOptions& opts) {
    std::vector<CriterionResult> out;
    for (int id = 1; id <= kCriterionCount; ++id) out.push_back(run_criterion(id, opts));
    return out;
}

std::string format_result(const CriterionResult& r) {
    std::ostringstream os;
    os << (r.passed ? "[PASS] " : "[FAIL] ") << (r.id < 10 ? " " : "") << r.id << " " << r.title << ": " << r.detail;
    return os.str();
}

}  // namespace lienil
