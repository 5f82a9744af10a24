#include "doctest.h"

#include "lienil/codim.hpp"
#include "lienil/errors.hpp"
#include "lienil/freealg.hpp"
#include "lienil/reptheory.hpp"

using namespace lienil;

namespace {

Rational derangement_by_inclusion_exclusion(int n) {
    Rational s(0);
    for (int i = 0; i <= n; ++i) s += (i % 2 ? Rational(-1) : Rational(1)) * factorial(n) / factorial(i);
    return s;
}

}  // namespace

TEST_CASE("QPoly arithmetic") {
    QPoly p({Rational(1), Rational(-3), Rational(2)});  // 2n^2 - 3n + 1 = (2n-1)(n-1)
    CHECK(p.degree() == 2);
    CHECK(p.str() == "2*n^2 - 3*n + 1");
    CHECK(p.divide_linear(2, -1) == QPoly::linear(1, -1));
    CHECK_THROWS_AS(p.divide_linear(1, 1), InternalError);
    CHECK(p.compose_linear(Rational(1, 2), Rational(1, 2))(Rational(5)) == p(Rational(3)));
    CHECK((p * QPoly::linear(1, 1))(Rational(4)) == p(Rational(4)) * Rational(5));
    CHECK(QPoly({Rational(0)}).is_zero());
    CHECK(QPoly().str() == "0");
}

TEST_CASE("binomial transform") {
    for (int n = 0; n <= 12; ++n) CHECK(binom_transform([](int) { return Rational(1); }, n) == pow2(n));
    for (int n = 0; n <= 10; ++n)
        CHECK(binom_transform(derangement_by_inclusion_exclusion, n) == factorial(n));
    for (int n = 0; n <= 6; ++n) CHECK(proper_dim(n) == derangement_by_inclusion_exclusion(n));
}

TEST_CASE("M_{i,l} dimensions match hook dimensions") {
    CHECK(m_il_dim(3, 0, 3, Parity::Odd) == Rational(4));
    CHECK(m_il_dim(2, 0, 2, Parity::Even) == Rational(2));
    for (int i = 1; i <= 3; ++i)
        for (int l = 0; l <= 3; ++l)
            for (Parity par : {Parity::Odd, Parity::Even})
                for (int n = 1; n <= 8; ++n) {
                    Rational formula;
                    try {
                        formula = m_il_dim(i, l, n, par);
                    } catch (const DomainError&) {
                        continue;
                    }
                    CHECK(formula == hook_dim(Partition(m_il_partition(i, l, n, par))));
                    CHECK(m_il_poly(i, l, par)(Rational(n)) == formula);
                }
    CHECK_THROWS_AS(m_il_dim(1, 0, 2, Parity::Odd), DomainError);
    CHECK_THROWS_AS(m_il_dim(4, 0, 5, Parity::Odd), DomainError);
}

TEST_CASE("bound polynomials") {
    for (int k = 2; k <= 5; ++k) {
        for (Parity par : {Parity::Odd, Parity::Even}) {
            QPoly b = bound_poly(k, par);
            CHECK(b.degree() == 2 * k - 2);
            CHECK(b.lead() == pow2(2 * k - 2) * catalan(k) / factorial(2 * k - 2));
            CHECK(b.lead() == pow2(2 * k - 1) * Rational(2 * k - 1) / (factorial(k + 1) * factorial(k - 1)));
            for (int n = bound_poly_start(k, par); n <= 12; ++n) {
                Rational s(par == Parity::Even ? 1 : 0);
                for (int l = 0; l <= k - 2; ++l)
                    for (int i = 1; i <= 3; ++i) s += m_il_dim(i, l, n, par);
                CHECK(b(Rational(n)) == s);
            }
        }
    }
    CHECK(bound_poly(3, Parity::Odd).lead() == Rational(10, 3));
    // A_2 is the sum of the three l = 0 formulas
    CHECK(bound_poly(2, Parity::Odd) ==
          m_il_poly(1, 0, Parity::Odd) + m_il_poly(2, 0, Parity::Odd) + m_il_poly(3, 0, Parity::Odd));
    CHECK_THROWS_AS(bound_poly(1, Parity::Odd), DomainError);
}

TEST_CASE("the bounds hold against computed quotients") {
    // γ_{2n-1}(N_4) >= A_2(n), γ_{2n}(N_4) >= B_2(n) where both are computable
    CHECK(Rational(static_cast<std::int64_t>(quotient_dims(5, 4).gamma)) >= bound_poly(2, Parity::Odd)(Rational(3)));
    CHECK(Rational(static_cast<std::int64_t>(quotient_dims(7, 4).gamma)) >= bound_poly(2, Parity::Odd)(Rational(4)));
    CHECK(Rational(static_cast<std::int64_t>(quotient_dims(4, 4).gamma)) >= bound_poly(2, Parity::Even)(Rational(2)));
    CHECK(Rational(static_cast<std::int64_t>(quotient_dims(6, 4).gamma)) >= bound_poly(2, Parity::Even)(Rational(3)));
    // in the degree variable the odd and even bounds differ by the standard polynomial
    for (int k = 2; k <= 5; ++k)
        CHECK(bound_poly(k, Parity::Even).compose_linear(Rational(1, 2), Rational(0)) ==
              bound_poly(k, Parity::Odd).compose_linear(Rational(1, 2), Rational(1, 2)) + QPoly::constant(1));
    // read verbatim in the degree, A_2 exceeds γ_N(N_4)
    for (int n = 4; n <= 6; ++n)
        CHECK(codim_bound_spec(2)(n) > Rational(static_cast<std::int64_t>(quotient_dims(n, 4).gamma)));
    for (int n = 4; n <= 6; ++n)
        CHECK(codim_bound_spec(2, BoundVariable::Degree)(n) <=
              Rational(static_cast<std::int64_t>(quotient_dims(n, 4).gamma)));
}

TEST_CASE("monotone quotients") {
    for (int n = 2; n <= 5; ++n)
        for (int k = 1; k <= 2; ++k) CHECK(quotient_dims(n, 2 * k + 1).gamma >= quotient_dims(n, 2 * k).gamma);
}

TEST_CASE("closed forms") {
    BoundSpec ones;
    ones.tail_poly = QPoly::constant(1);
    QuasiPoly q = closed_form(ones);
    CHECK(q.r == QPoly::constant(1));
    CHECK(q.s.is_zero());
    CHECK(q.to_json() == R"({"r":["1"],"s":[]})");

    for (int k = 2; k <= 4; ++k) {
        for (BoundVariable v : {BoundVariable::Verbatim, BoundVariable::Degree}) {
            BoundSpec spec = codim_bound_spec(k, v);
            QuasiPoly c = closed_form(spec);
            CHECK(c.r.degree() == 2 * k - 2);
            CHECK(c.s.degree() <= 2 * k - 1);
            for (int n = 0; n <= 30; ++n) CHECK(c(n) == binom_transform(spec.sequence(), n));
            const Rational expect = catalan(k) / factorial(2 * k - 2);
            CHECK(c.r.lead() == (v == BoundVariable::Verbatim ? expect : expect / pow2(2 * k - 2)));
        }
    }
    CHECK(closed_form(codim_bound_spec(3)).r.lead() == Rational(5, 24));
}

TEST_CASE("codimensions of E⊗E_2 have the quasi-polynomial shape") {
    auto gamma = [](int n) -> Rational {
        if (n == 0) return 1;
        if (n == 1) return 0;
        return did_gamma(n, 1).total_dim();
    };
    // the sign module alternates, so the polynomial regime starts after n = 0
    QuasiPoly c = fit_quasi_poly([&](int n) { return binom_transform(gamma, n); }, 2, 3, 1);
    CHECK(c.r.lead() == Rational(1, 4));  // 2^{n-1} ξ(n) with ξ leading 1/2!
    CHECK(c.s.degree() <= 3);
    // γ_n(E⊗E_{2l}) has leading term 2^{2l-1}/(2l)!, sampled at even n >= 4l
    for (int l = 1; l <= 3; ++l) {
        QuasiPoly g = fit_quasi_poly([&](int m) { return did_gamma(4 * l + 2 * m, l).total_dim(); }, -1, 2 * l, 0);
        CHECK(g.s.lead() == pow2(2 * l - 1) / factorial(2 * l) * pow2(2 * l));
    }
    // at l = 2 the polynomial regime starts at n = 7, not at 2l + 2 = 6
    auto even_from = [](int start) {
        return [start](int m) { return did_gamma(start + 2 * m, 2).total_dim(); };
    };
    CHECK_NOTHROW(fit_quasi_poly(even_from(8), -1, 4, 0));
    CHECK_THROWS_AS(fit_quasi_poly(even_from(6), -1, 4, 0), InternalError);
    QuasiPoly odd = fit_quasi_poly([](int m) { return did_gamma(7 + 2 * m, 2).total_dim(); }, -1, 4, 0);
    CHECK(odd.s(Rational(-1, 2)) != did_gamma(6, 2).total_dim());
}

TEST_CASE("combined leading coefficients") {
    auto c = combined_bounds(4);
    CHECK(c.gamma_lead == Rational(58, 45));
    CHECK(c.codim_lead == Rational(29, 1440));
    for (int k = 4; k <= 6; ++k) {
        auto b = combined_bounds(k);
        const Rational f = factorial(2 * k - 2), ck = catalan(k);
        CHECK(b.gamma_lead == pow2(2 * k - 3) / f * (Rational(1) + Rational(2) * ck));
        CHECK(b.codim_lead == (Rational(1) + Rational(2) * ck) / (Rational(2) * f));
        CHECK(b.codim_lead * pow2(2 * k - 2) == b.gamma_lead);
    }
    CHECK_THROWS_AS(combined_bounds(3), DomainError);
}

TEST_CASE("csv") {
    BoundSpec ones;
    ones.tail_poly = QPoly::constant(1);
    CHECK(bounds_csv(ones, 2) == "n,lower_bound,closed_form\n0,1,1\n1,2,2\n2,4,4\n");
    CHECK_THROWS_AS(fit_quasi_poly([](int n) { return Rational(n * n * n); }, 0, 1), InternalError);
}
