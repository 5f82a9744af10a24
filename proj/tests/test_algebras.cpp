#include "doctest.h"

#include <random>

#include "lienil/algebras.hpp"
#include "lienil/errors.hpp"

using namespace lienil;

namespace {

NcPoly P(const char* s) { return parse_poly(s); }

AlgElem random_elem(const FiniteAlgebra& a, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> coef(-2, 2);
    std::vector<SparseVec::Entry> e;
    for (std::size_t i = 0; i < a.dim(); ++i) e.emplace_back(static_cast<Col>(i), Rational(coef(rng)));
    return a.element(SparseVec::from_pairs(std::move(e)));
}

}  // namespace

TEST_CASE("E_2 structure constants") {
    auto e2 = make_grassmann(2);
    REQUIRE(e2->dim() == 4);
    CHECK(e2->labels() == std::vector<std::string>{"1", "e1", "e2", "e1e2"});
    CHECK(e2->is_monomial());
    auto e1 = e2->basis("e1");
    auto f = e2->basis("e2");
    CHECK(e2->mul(e1, f) == e2->basis("e1e2"));
    CHECK(e2->mul(f, e1) == e2->scale(e2->basis("e1e2"), Rational(-1)));
    CHECK(e2->mul(e1, e1).is_zero());
    CHECK(e2->str(e2->commutator(e1, f)) == "2*e1e2");
}

TEST_CASE("make_grassmann agrees with gmul") {
    auto e3 = make_grassmann(3);
    for (std::size_t i = 0; i < e3->dim(); ++i)
        for (std::size_t j = 0; j < e3->dim(); ++j) {
            GMonomial a = e3->slot_support(i)[0], b = e3->slot_support(j)[0];
            auto expect = gmul(GrassmannElem::monomial(3, a), GrassmannElem::monomial(3, b));
            TensorElem t = e3->to_tensor(e3->mul(e3->basis(i), e3->basis(j)));
            CHECK(t == TensorElem::from_slots({expect}));
        }
}

TEST_CASE("Grassmann algebras satisfy the triple commutator identity") {
    std::mt19937_64 rng(11);
    for (int r : {3, 4}) {
        auto e = make_grassmann(r);
        for (int t = 0; t < 20; ++t) {
            std::vector<AlgElem> args{random_elem(*e, rng), random_elem(*e, rng), random_elem(*e, rng)};
            CHECK(evaluate(P("[x1,x2,x3]"), args, *e).is_zero());
        }
    }
    auto e4 = make_grassmann(4);
    std::vector<AlgElem> gens{e4->basis("e1"), e4->basis("e2"), e4->basis("e3"), e4->basis("e4")};
    CHECK_FALSE(evaluate(P("[x1,x2][x3,x4]"), gens, *e4).is_zero());
}

TEST_CASE("N_k") {
    auto n3 = make_nk(3);
    CHECK(n3->dim() == 4);
    CHECK(n3->labels() == std::vector<std::string>{"I", "J", "e12", "e13"});
    auto j = n3->basis("J");
    CHECK(n3->mul(j, j) == n3->basis("e13"));
    CHECK(n3->mul(n3->basis("e12"), j) == n3->basis("e13"));
    CHECK(n3->mul(j, n3->basis("e12")).is_zero());
    auto n4 = make_nk(4);
    CHECK(n4->dim() == 6);
    std::mt19937_64 rng(3);
    for (int t = 0; t < 20; ++t) {
        std::vector<AlgElem> args;
        for (int i = 0; i < 4; ++i) args.push_back(random_elem(*n4, rng));
        CHECK(evaluate(P("[x1,x2][x3,x4]"), args, *n4).is_zero());
    }
    CHECK_THROWS_AS(make_nk(2), DomainError);
}

TEST_CASE("tensor products") {
    auto e2 = make_grassmann(2);
    auto t = tensor({e2, e2});
    REQUIRE(t->dim() == 16);
    CHECK(t->has_grassmann_slots());
    // x1 = e1⊗1 + 1⊗f1, x2 = e2⊗1 + 1⊗f2 gives [x1,x2]^2 = 8 e1e2⊗f1f2
    auto x1 = t->add(t->basis("e1 ⊗ 1"), t->basis("1 ⊗ f1"));
    auto x2 = t->add(t->basis("e2 ⊗ 1"), t->basis("1 ⊗ f2"));
    AlgElem v = evaluate(P("[x1,x2]^2"), {x1, x2}, *t);
    CHECK(t->str(v) == "8*e1e2 ⊗ f1f2");
    TensorElem y1 = TensorElem::pure({2, 2}, {1, 0}) + TensorElem::pure({2, 2}, {0, 1});
    TensorElem y2 = TensorElem::pure({2, 2}, {2, 0}) + TensorElem::pure({2, 2}, {0, 2});
    CHECK(evaluate(P("[x1,x2]^2"), {y1, y2}) == t->to_tensor(v));
    CHECK(t->from_tensor(t->to_tensor(v)) == v);
    CHECK_THROWS_AS(tensor({make_grassmann(4), make_grassmann(4)}, 100), SizeGuard);
    auto mixed = tensor({e2, make_nk(3)});
    CHECK(mixed->dim() == 16);
    CHECK_FALSE(mixed->has_grassmann_slots());
}

TEST_CASE("algebra validation and errors") {
    std::vector<SparseVec> table(4);
    table[0] = SparseVec::unit(0);
    table[1] = SparseVec::unit(1);
    table[2] = SparseVec::unit(0);  // b*1 = 1 breaks the unit
    table[3] = SparseVec::unit(0);
    CHECK_THROWS_AS(FiniteAlgebra({"1", "b"}, 0, table), DomainError);
    auto e2 = make_grassmann(2);
    auto e3 = make_grassmann(3);
    CHECK_THROWS_AS(e2->mul(e2->one(), e3->one()), DimensionMismatch);
    CHECK_THROWS_AS(evaluate(P("x1x2"), {e2->one()}, *e2), DomainError);
    CHECK_THROWS_AS(make_grassmann(13), SizeGuard);
    CHECK_THROWS_AS(e2->basis("nope"), DomainError);
}

TEST_CASE("JSON round trip") {
    auto t = tensor({make_grassmann(2), make_nk(3)});
    std::string js = algebra_to_json(*t);
    auto back = parse_algebra_json(js);
    REQUIRE(back->dim() == t->dim());
    for (std::size_t i = 0; i < t->dim(); ++i)
        for (std::size_t j = 0; j < t->dim(); ++j) CHECK(back->mul_basis(i, j) == t->mul_basis(i, j));
    CHECK_THROWS_AS(parse_algebra_json("{"), ParseError);
    // idempotent a*a = a is associative
    CHECK_NOTHROW(parse_algebra_json(R"({"basis":["1","a"],"unit":0,"table":[[0,0,[[0,1]]],[0,1,[[1,1]]],)"
                                     R"([1,0,[[1,1]]],[1,1,[[1,"1"]]]]})"));
    // a*a = b, a*b = 1, b*a = 0: (aa)a = 0 but a(aa) = 1
    CHECK_THROWS_AS(parse_algebra_json(R"({"basis":["1","a","b"],"unit":0,"table":[[0,0,[[0,1]]],[0,1,[[1,1]]],)"
                                       R"([0,2,[[2,1]]],[1,0,[[1,1]]],[2,0,[[2,1]]],[1,1,[[2,1]]],[1,2,[[0,1]]]]})"),
                    DomainError);
    CHECK_THROWS_AS(parse_algebra_json(R"({"basis":["1"],"unit":0,"table":[[0,0,[[0,"x/y"]]]]})"), ParseError);
}

TEST_CASE("structure constants agree with the bit-set product on random elements") {
    auto e4 = make_grassmann(4);
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> coef(-2, 2);
    for (int t = 0; t < 1000; ++t) {
        GrassmannElem a(4), b(4);
        for (GMonomial m = 0; m < 16; ++m) {
            if (rng() % 3 == 0) a.add_term(m, Rational(coef(rng)));
            if (rng() % 3 == 0) b.add_term(m, Rational(coef(rng)));
        }
        AlgElem x = e4->from_tensor(TensorElem::from_slots({a}));
        AlgElem y = e4->from_tensor(TensorElem::from_slots({b}));
        CHECK(e4->to_tensor(e4->mul(x, y)) == TensorElem::from_slots({gmul(a, b)}));
    }
}

TEST_CASE("tensor slots commute and bracket as expected") {
    auto t = tensor({make_grassmann(2), make_grassmann(2)});
    auto e1 = t->basis("e1 ⊗ 1");
    auto f1 = t->basis("1 ⊗ f1");
    CHECK(t->mul(e1, f1) == t->mul(f1, e1));
    CHECK(t->mul(e1, f1) == t->basis("e1 ⊗ f1"));
    AlgElem c = evaluate(long_commutator_vars(3), {e1, t->basis("e2 ⊗ f1"), t->basis("1 ⊗ f2")}, *t);
    CHECK(t->str(c) == "4*e1e2 ⊗ f1f2");
    auto e2 = make_grassmann(2);
    CHECK(e2->str(evaluate(parse_poly("x1x2 - x2x1"), {e2->basis("e1"), e2->basis("e2")}, *e2)) == "2*e1e2");
}
