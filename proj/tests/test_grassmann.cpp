#include "doctest.h"

#include <random>

#include "lienil/errors.hpp"
#include "lienil/grassmann.hpp"

using namespace lienil;

namespace {

GrassmannElem e(int i, int dim = 6) { return GrassmannElem::generator(dim, i); }

GrassmannElem random_elem(std::mt19937_64& rng, int dim, bool even_only = false) {
    GrassmannElem x(dim);
    int terms = 1 + static_cast<int>(rng() % 4);
    for (int t = 0; t < terms; ++t) {
        GMonomial m = rng() & ((GMonomial{1} << dim) - 1);
        if (even_only && std::popcount(m) % 2) m &= m - 1;
        x.add_term(m, Rational(static_cast<int>(rng() % 7) - 3, 1 + static_cast<int>(rng() % 3)));
    }
    return x;
}

// Oracle for the sign: sort the concatenated generator list by bubble sort,
// counting swaps.
int bubble_sign(GMonomial s, GMonomial t) {
    if (s & t) return 0;
    std::vector<int> seq;
    for (int i = 0; i < 64; ++i)
        if ((s >> i) & 1) seq.push_back(i);
    for (int i = 0; i < 64; ++i)
        if ((t >> i) & 1) seq.push_back(i);
    int swaps = 0;
    for (std::size_t a = 0; a < seq.size(); ++a)
        for (std::size_t b = 0; b + 1 < seq.size() - a; ++b)
            if (seq[b] > seq[b + 1]) {
                std::swap(seq[b], seq[b + 1]);
                ++swaps;
            }
    return swaps % 2 ? -1 : 1;
}

}  // namespace

TEST_CASE("gmul on generators") {
    CHECK(gmul(e(1), e(2)) == GrassmannElem::monomial(6, 0b11));
    CHECK(gmul(e(2), e(1)) == GrassmannElem::monomial(6, 0b11, Rational(-1)));
    CHECK(gmul(e(1), e(1)).is_zero());
    CHECK_THROWS_AS(gmul(e(1, 4), e(1, 5)), DimensionMismatch);
    CHECK_THROWS_AS(GrassmannElem::generator(3, 4), DomainError);
}

TEST_CASE("gcommutator examples") {
    CHECK(gcommutator(e(1), e(2)) == GrassmannElem::monomial(6, 0b11, Rational(2)));
    CHECK(gcommutator(GrassmannElem::monomial(6, 0b11), e(3)).is_zero());
    GrassmannElem a = e(1) + GrassmannElem::monomial(6, 0b110);
    CHECK(gcommutator(a, e(4)) == GrassmannElem::monomial(6, 0b1001, Rational(2)));
}

TEST_CASE("sign rule matches bubble-sort oracle") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 3000; ++t) {
        GMonomial s = rng() & 0xFFF, u = rng() & 0xFFF;
        if (t % 2) u &= ~s;
        REQUIRE(gmonomial_sign(s, u) == bubble_sign(s, u));
    }
}

TEST_CASE("Grassmann algebra properties on random elements") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 300; ++t) {
        auto a = random_elem(rng, 6), b = random_elem(rng, 6), c = random_elem(rng, 6);
        REQUIRE(gmul(gmul(a, b), c) == gmul(a, gmul(b, c)));
        REQUIRE(gcommutator(gcommutator(a, b), c).is_zero());
        REQUIRE(gcommutator(a, gcommutator(b, c)).is_zero());
        auto ev = random_elem(rng, 6, true);
        REQUIRE(gcommutator(ev, a).is_zero());
    }
    for (int i = 1; i <= 6; ++i)
        for (int j = 1; j <= 6; ++j) CHECK((gmul(e(i), e(j)) + gmul(e(j), e(i))).is_zero());
    GrassmannElem odd = GrassmannElem::monomial(6, 0b10101);
    CHECK(gmul(odd, odd).is_zero());
}

TEST_CASE("tensor product has no cross-slot sign") {
    std::vector<int> dims{2, 2};
    auto x = TensorElem::pure(dims, {1, 0});
    auto y = TensorElem::pure(dims, {0, 1});
    CHECK(tmul(x, y) == tmul(y, x));
    CHECK(tmul(x, y) == TensorElem::pure(dims, {1, 1}));
    // [e1 (x) 1, e2 (x) f1, 1 (x) f2] = 4 e1e2 (x) f1f2
    auto z = TensorElem::pure(dims, {2, 1});
    auto w = TensorElem::pure(dims, {0, 2});
    auto v = tcommutator(tcommutator(x, z), w);
    CHECK(v == TensorElem::pure(dims, {3, 3}, Rational(4)));
    CHECK(v.str() == "4*e1e2 ⊗ f1f2");
}

TEST_CASE("rendering") {
    CHECK(GrassmannElem(4).str() == "0");
    CHECK((GrassmannElem::one(4) - GrassmannElem::monomial(4, 0b101, Rational(2))).str() == "1 - 2*e1e3");
}
