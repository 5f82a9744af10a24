// Exact values cross the boundary as "p/q" strings; the package wrapper turns
// them into fractions.Fraction.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lienil/acceptance.hpp"
#include "lienil/codim.hpp"
#include "lienil/errors.hpp"
#include "lienil/freealg.hpp"
#include "lienil/idcheck.hpp"
#include "lienil/reptheory.hpp"

namespace py = pybind11;
using namespace lienil;

namespace {

std::vector<std::string> coeff_strings(const QPoly& p) {
    std::vector<std::string> out;
    for (int i = 0; i <= p.degree(); ++i) out.push_back(p.coeff(i).str());
    return out;
}

py::list terms(const Decomposition& d) {
    py::list out;
    for (const auto& [lam, m] : d.terms) out.append(py::make_tuple(py::tuple(py::cast(lam.parts())), m));
    return out;
}

py::dict criterion_dict(const CriterionResult& r) {
    py::dict d;
    d["id"] = r.id;
    d["title"] = r.title;
    d["passed"] = r.passed;
    d["detail"] = r.detail;
    return d;
}

}  // namespace

PYBIND11_MODULE(_lienil, m) {
    m.doc() = "Exact Lie nilpotency identity checks, proper codimensions and bounds";

    auto base = py::register_exception<Error>(m, "Error");
    py::register_exception<ParseError>(m, "ParseError", base.ptr());
    py::register_exception<DimensionMismatch>(m, "DimensionMismatch", base.ptr());
    py::register_exception<SizeGuard>(m, "SizeGuard", base.ptr());
    py::register_exception<CapExceeded>(m, "CapExceeded", base.ptr());
    py::register_exception<DomainError>(m, "DomainError", base.ptr());
    py::register_exception<InternalError>(m, "InternalError", base.ptr());

    m.def(
        "min_index",
        [](const std::string& algebra, std::optional<int> cap, unsigned threads) {
            py::gil_scoped_release unlock;
            return min_index(AlgebraSpec::parse(algebra), cap, threads);
        },
        py::arg("algebra"), py::arg("cap") = py::none(), py::arg("threads") = 1u);

    m.def(
        "check_identity_json",
        [](const std::string& algebra, const std::string& poly, unsigned threads) {
            const AlgebraSpec spec = AlgebraSpec::parse(algebra);
            const MultilinearPoly f = multilinearize(parse_poly(poly));
            py::gil_scoped_release unlock;
            return verdict_to_json(check_identity(f, spec, threads), f, spec);
        },
        py::arg("algebra"), py::arg("poly"), py::arg("threads") = 1u);

    m.def(
        "quotient_dims",
        [](int n, int p) {
            py::gil_scoped_release unlock;
            const QuotientDims d = quotient_dims(n, p);
            return std::make_pair(d.c, d.gamma);
        },
        py::arg("n"), py::arg("p"));

    m.def(
        "gamma_by_evaluation",
        [](int n, const std::string& algebra) {
            py::gil_scoped_release unlock;
            return gamma_by_evaluation(n, AlgebraSpec::parse(algebra));
        },
        py::arg("n"), py::arg("algebra"));

    m.def(
        "decompose", [](int n, int p) { return terms(decompose_quotient(n, p)); }, py::arg("n"), py::arg("p"));
    m.def(
        "did_gamma",
        [](int n, int l, std::optional<int> mm) { return terms(mm ? did_gamma_finite(n, *mm, l) : did_gamma(n, l)); },
        py::arg("n"), py::arg("l"), py::arg("m") = py::none());
    m.def(
        "hook_dim", [](const std::vector<int>& lam) { return hook_dim(Partition(lam)).str(); }, py::arg("partition"));
    m.def(
        "character",
        [](const std::vector<int>& lam, const std::vector<int>& mu) {
            return mn_character(Partition(lam), Partition(mu));
        },
        py::arg("partition"), py::arg("cycle_type"));

    m.def(
        "bound_poly",
        [](int k, bool odd) { return coeff_strings(bound_poly(k, odd ? Parity::Odd : Parity::Even)); },
        py::arg("k"), py::arg("odd") = true);
    m.def(
        "closed_form",
        [](int k, bool degree_variable) {
            const QuasiPoly q =
                closed_form(codim_bound_spec(k, degree_variable ? BoundVariable::Degree : BoundVariable::Verbatim));
            return std::make_pair(coeff_strings(q.r), coeff_strings(q.s));
        },
        py::arg("k"), py::arg("degree_variable") = false);
    m.def(
        "combined_bounds",
        [](int k) {
            const CombinedLeads c = combined_bounds(k);
            return std::make_pair(c.gamma_lead.str(), c.codim_lead.str());
        },
        py::arg("k"));

    m.def(
        "run_criterion",
        [](int id, unsigned threads) {
            SuiteOptions o;
            o.threads = threads;
            CriterionResult r;
            {
                py::gil_scoped_release unlock;
                r = run_criterion(id, o);
            }
            return criterion_dict(r);
        },
        py::arg("id"), py::arg("threads") = 1u);
}
