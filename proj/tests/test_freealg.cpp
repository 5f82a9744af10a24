#include "doctest.h"

#include <algorithm>
#include <random>

#include "lienil/errors.hpp"
#include "lienil/freealg.hpp"
#include "lienil/linalg.hpp"

using namespace lienil;

namespace {

NcPoly x(int i) { return NcPoly::var(i); }

NcPoly P(const char* s) { return parse_poly(s); }

// Oracle: derangement numbers by inclusion-exclusion on n!.
long long derangements(int n) {
    long long d = 0, f = 1;
    for (int i = 1; i <= n; ++i) f *= i;
    long long term = f;
    for (int k = 0; k <= n; ++k) {
        d += (k % 2 ? -term : term);
        if (k < n) term /= (k + 1);
    }
    return d;
}

std::size_t rank_of(const std::vector<MultilinearPoly>& v) { return lienil::rank(coordinates(v)); }

}  // namespace

TEST_CASE("long commutator expansions") {
    CHECK(long_commutator({x(1), x(2)}) == x(1) * x(2) - x(2) * x(1));
    CHECK(long_commutator({x(1), x(2), x(3)}) ==
          x(1) * x(2) * x(3) - x(2) * x(1) * x(3) - x(3) * x(1) * x(2) + x(3) * x(2) * x(1));
    CHECK(long_commutator({x(1), x(1)}).is_zero());
    CHECK_THROWS_AS(long_commutator({x(1)}), DomainError);
    CHECK(long_commutator_vars(5).terms().size() == 16);
}

TEST_CASE("parser") {
    CHECK(P("[x1,x2]") == long_commutator({x(1), x(2)}));
    CHECK(P("x1x2 - x2*x1") == P("[x1, x2]"));
    CHECK(P("[x1,x2]^2") == power(P("[x1,x2]"), 2));
    CHECK(P("1/2 x1 + 3/2 x1") == P("2*x1"));
    CHECK(P("-(x1+x2)x3") == -(x(1) * x(3)) - x(2) * x(3));
    CHECK(P("[[x1,x2],x3]") == P("[x1,x2,x3]"));
    CHECK(P("[x1,x2,[x3,x4]]") == commutator(P("[x1,x2]"), P("[x3,x4]")));
    CHECK_THROWS_AS(P("x0"), ParseError);
    CHECK_THROWS_AS(P("x100"), ParseError);
    CHECK_THROWS_AS(P("[x1]"), ParseError);
    CHECK_THROWS_AS(P("x1 +"), ParseError);
    CHECK_THROWS_AS(P("y1"), ParseError);
}

TEST_CASE("standard polynomials") {
    CHECK(standard_poly(1) == x(1));
    CHECK(standard_poly(2) == x(1) * x(2) - x(2) * x(1));
    // s_{2j-2} = 2^{-(j-1)} sum sgn [x,x]...[x,x] for j = 2, 3
    for (int j = 2; j <= 3; ++j) {
        const int m = 2 * j - 2;
        NcPoly sum;
        for (const auto& p : permutations(m)) {
            NcPoly t = NcPoly::constant(Rational(1));
            for (int b = 0; b < j - 1; ++b) t = t * commutator(x(p[2 * b]), x(p[2 * b + 1]));
            sum += permutation_sign(p) < 0 ? -t : t;
        }
        CHECK(standard_poly(m) == sum * pow2(-(j - 1)));
    }
}

TEST_CASE("g families") {
    CHECK(make_g(2, 4) == power(P("[x1,x2]"), 2));
    CHECK(make_g(2, 6) == P("[x1,x2]") * standard_poly(4));
    NcPoly g15;
    for (const auto& p : permutations(3)) {
        NcPoly t = commutator(x(p[0]), x(p[1])) * long_commutator({x(p[2]), x(1), x(1)});
        g15 += permutation_sign(p) < 0 ? -t : t;
    }
    CHECK(make_g(1, 5) == g15);
    // degenerate even i=3 at j=2 is the bracket alone
    NcPoly g34;
    for (const auto& p : permutations(3)) {
        NcPoly t = long_commutator({x(p[0]), x(p[1]), commutator(x(p[2]), x(1))});
        g34 += permutation_sign(p) < 0 ? -t : t;
    }
    CHECK(make_g(3, 4) == g34);
    for (int i = 1; i <= 3; ++i) {
        CHECK(make_g(i, 5).degree() == 5);
        CHECK(make_g(i, 6).degree() == 6);
    }
    CHECK_THROWS_AS(make_g(1, 3), DomainError);
    CHECK_THROWS_AS(make_g(4, 6), DomainError);
    CHECK_THROWS_AS(make_g(1, 2), DomainError);
}

TEST_CASE("multilinearize") {
    CHECK(multilinearize(P("[x2,x1,x1]")).to_poly() == P("[x2,x1,x3] + [x2,x3,x1]"));
    CHECK(multilinearize(P("[x1,x2]^2")).to_poly() ==
          P("[x1,x2][x3,x4] + [x3,x2][x1,x4] + [x1,x4][x3,x2] + [x3,x4][x1,x2]"));
    NcPoly f = P("[x1,x2,x3] + 2 x3 x2 x1");
    CHECK(multilinearize(f).to_poly() == f);
    // unused indices are compressed away
    CHECK(multilinearize(P("[x1,x3]")).to_poly() == P("[x1,x2]"));
    CHECK_THROWS_AS(multilinearize(P("x1 + x1x2")), DomainError);
    // non-multihomogeneous but equal total degree: components summed
    CHECK(multilinearize(P("x1x1 + x1x2")).degree() == 2);
}

TEST_CASE("permutation ranks round-trip") {
    for (int n = 1; n <= 6; ++n) {
        Col r = 0;
        for (const auto& p : permutations(n)) {
            Word w(p.begin(), p.end());
            CHECK(perm_rank(w) == r);
            CHECK(perm_unrank(n, r) == w);
            ++r;
        }
    }
}

TEST_CASE("sn_act is a group action") {
    MultilinearPoly f = MultilinearPoly::from_poly(P("[x1,x2,x3]x4 + 3 x4x2x1x3"), 4);
    std::vector<int> id{1, 2, 3, 4};
    CHECK(sn_act(id, f) == f);
    MultilinearPoly c = MultilinearPoly::from_poly(P("[x1,x2]"), 2);
    CHECK(sn_act({2, 1}, c).to_poly() == -c.to_poly());
    std::mt19937_64 rng(5);
    for (int t = 0; t < 30; ++t) {
        std::vector<int> s = id, u = id;
        std::shuffle(s.begin(), s.end(), rng);
        std::shuffle(u.begin(), u.end(), rng);
        std::vector<int> su(4);
        for (int i = 0; i < 4; ++i) su[static_cast<std::size_t>(i)] = s[static_cast<std::size_t>(u[static_cast<std::size_t>(i)] - 1)];
        CHECK(sn_act(su, f) == sn_act(s, sn_act(u, f)));
    }
    MultilinearPoly s4 = MultilinearPoly::from_poly(standard_poly(4), 4);
    for (const auto& p : permutations(4)) {
        NcPoly expect = s4.to_poly() * Rational(permutation_sign(p));
        CHECK(sn_act(p, s4).to_poly() == expect);
    }
}

TEST_CASE("ideal spans") {
    CHECK(rank_of(ideal_multilinear_span(3, 3)) == 2);
    CHECK(ideal_multilinear_span(4, 3).empty());
    CHECK(ideal_multilinear_span(4, 6).size() == 15120);
    auto span = ideal_multilinear_span(4, 4);
    for (const auto& p : permutations(4)) {
        std::vector<NcPoly> xs;
        for (int v : p) xs.push_back(x(v));
        auto target = MultilinearPoly::from_poly(long_commutator(xs), 4);
        CHECK(std::find(span.begin(), span.end(), target) != span.end());
    }
    CHECK_THROWS_AS(ideal_multilinear_span(3, 8), SizeGuard);
    CHECK_NOTHROW(ideal_multilinear_span(8, 8, 8));
    auto v = MultilinearPoly::from_poly(P("[[x1,x2],x3,x4,x5]"), 5);
    CHECK(in_span(v.coords(), coordinates(ideal_multilinear_span(4, 5))));
}

TEST_CASE("product spans lie in the expected ideals") {
    auto e2 = ideal_echelon(2, 4);
    for (const auto& f : product_span(2, 2, 4)) CHECK(e2->contains(f.coords()));
    auto e4 = ideal_echelon(4, 5);
    for (const auto& f : product_span(3, 2, 5)) CHECK(e4->contains(f.coords()));
    // I_2 I_2 is not inside I_3 (products of two commutators survive in E)
    auto e3 = ideal_echelon(3, 4);
    bool all = true;
    for (const auto& f : product_span(2, 2, 4)) all = all && e3->contains(f.coords());
    CHECK_FALSE(all);
}

TEST_CASE("commutators with two fresh variables move up two levels") {
    for (int m = 2; m <= 3; ++m) {
        const int n = m + 3;
        auto target = ideal_echelon(m + 2, n);
        for (const auto& u : ideal_multilinear_span(m, n - 2)) {
            NcPoly w = long_commutator({u.to_poly(), x(n - 1), x(n)});
            CHECK(target->contains(MultilinearPoly::from_poly(w, n).coords()));
        }
    }
}

TEST_CASE("proper spaces have derangement dimension") {
    for (int n = 0; n <= 6; ++n) {
        auto span = proper_span(n);
        auto basis = proper_basis(n);
        CHECK(rank_of(span) == static_cast<std::size_t>(derangements(n)));
        CHECK(basis.size() == static_cast<std::size_t>(derangements(n)));
        auto both = coordinates(span);
        for (const auto& b : basis) both.push_back(b.coords());
        CHECK(lienil::rank(both) == static_cast<std::size_t>(derangements(n)));
    }
    CHECK(rank_of(proper_basis(7)) == 1854);
    // sum_l binom(n,l) D_l = n!
    for (int n = 0; n <= 7; ++n) {
        Rational s;
        for (int l = 0; l <= n; ++l) s += binomial(n, l) * Rational(static_cast<std::int64_t>(derangements(l)));
        CHECK(s == factorial(n));
    }
}

TEST_CASE("quotient dimensions") {
    CHECK(quotient_dims(3, 2).c == 4);
    for (int n = 1; n <= 6; ++n) CHECK(quotient_dims(n, 2).c == (std::size_t{1} << (n - 1)));
    for (int p = 3; p <= 5; ++p)
        for (int n = 0; n <= p; ++n) {
            auto d = quotient_dims(n, p);
            CHECK(d.c == static_cast<std::size_t>(factorial(n).to_int64()));
            CHECK(d.gamma == static_cast<std::size_t>(derangements(n)));
        }
    CHECK(quotient_dims(4, 3).gamma <= 9);
    for (int n = 1; n <= 5; ++n)
        for (int k = 1; k <= 2; ++k) CHECK(quotient_dims(n, 2 * k + 1).gamma >= quotient_dims(n, 2 * k).gamma);
}

TEST_CASE("module spans") {
    CHECK(module_span_dim(multilinearize(P("[x2,x1,x1]")), 3) == 2);
    CHECK(module_span_dim(multilinearize(P("[x1,x2]^2")), 3) == 2);
    CHECK(module_span_dim(MultilinearPoly::from_poly(standard_poly(4), 4), 4) == 1);
    CHECK(module_span_dim(MultilinearPoly::from_poly(standard_poly(3), 3), 5) == 1);
}
