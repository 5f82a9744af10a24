#include "doctest.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

#include "lienil/linalg.hpp"

using lienil::Col;
using lienil::Echelon;
using lienil::Rational;
using lienil::SparseVec;

namespace {

SparseVec vec(std::vector<std::pair<Col, Rational>> e) { return SparseVec::from_pairs(std::move(e)); }

// Independent oracle: dense fraction-free elimination with mpq.
std::size_t dense_rank(const std::vector<SparseVec>& rows, Col ncols) {
    std::vector<std::vector<mpq_class>> m;
    for (const auto& r : rows) {
        std::vector<mpq_class> d(ncols);
        for (const auto& [c, v] : r.entries()) d[c] = v.to_mpq();
        m.push_back(d);
    }
    std::size_t rk = 0;
    for (Col c = 0; c < ncols && rk < m.size(); ++c) {
        std::size_t p = rk;
        while (p < m.size() && m[p][c] == 0) ++p;
        if (p == m.size()) continue;
        std::swap(m[p], m[rk]);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == rk || m[i][c] == 0) continue;
            mpq_class f = m[i][c] / m[rk][c];
            for (Col j = 0; j < ncols; ++j) m[i][j] -= f * m[rk][j];
        }
        ++rk;
    }
    return rk;
}

std::vector<SparseVec> random_rows(std::mt19937_64& rng, int nrows, Col ncols, int rank_hint) {
    std::uniform_int_distribution<int> coef(-3, 3);
    std::vector<SparseVec> gens;
    for (int i = 0; i < rank_hint; ++i) {
        std::vector<std::pair<Col, Rational>> e;
        for (Col c = 0; c < ncols; ++c)
            if (rng() % 3 == 0) e.emplace_back(c, Rational(coef(rng), 1 + static_cast<int>(rng() % 4)));
        gens.push_back(vec(e));
    }
    std::vector<SparseVec> rows;
    for (int i = 0; i < nrows; ++i) {
        SparseVec r;
        for (const auto& g : gens) r.axpy(Rational(coef(rng)), g);
        rows.push_back(r);
    }
    return rows;
}

}  // namespace

TEST_CASE("rank basics") {
    CHECK(lienil::rank({}) == 0);
    CHECK(lienil::rank({vec({{0, 1}}), vec({{0, 2}})}) == 1);
    CHECK(lienil::rank({vec({{0, 1}, {1, 1}}), vec({{0, 1}, {1, -1}}), vec({{1, 5}})}) == 2);
}

TEST_CASE("in_span basics") {
    CHECK(lienil::in_span(SparseVec(), {}));
    CHECK_FALSE(lienil::in_span(vec({{0, 1}}), {vec({{1, 1}})}));
    CHECK(lienil::in_span(vec({{0, 3}, {1, 3}}), {vec({{0, 1}, {1, 1}})}));
}

TEST_CASE("left-normed commutators of degree 3 span a 2-dimensional space") {
    // Hand-built oracle: index words of length 3 by base-3 digits.
    auto word = [](int a, int b, int c) { return static_cast<Col>(9 * a + 3 * b + c); };
    std::vector<SparseVec> rows;
    std::array<int, 3> p{0, 1, 2};
    do {
        int a = p[0], b = p[1], c = p[2];
        // [a,b,c] = abc - bac - cab + cba
        rows.push_back(vec({{word(a, b, c), 1}, {word(b, a, c), -1}, {word(c, a, b), -1}, {word(c, b, a), 1}}));
    } while (std::next_permutation(p.begin(), p.end()));
    CHECK(lienil::rank(rows) == 2);
    CHECK(dense_rank(rows, 27) == 2);
}

TEST_CASE("echelon tracks transforms past the pivot limit") {
    Echelon e(2);
    CHECK(e.add(vec({{0, 1}, {1, 1}, {2, 1}})));
    CHECK(e.add(vec({{0, 1}, {1, -1}, {3, 1}})));
    CHECK_FALSE(e.add(vec({{0, 2}, {4, 1}})));
    SparseVec r = e.reduce(vec({{0, 2}, {4, 1}}));
    // 2 e0 = (row0 + row1) so the remainder is -(e2 + e3) + e4
    CHECK(r == vec({{2, -1}, {3, -1}, {4, 1}}));
}

TEST_CASE("rank agrees with dense oracle and is invariant under permutation and scaling") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 60; ++trial) {
        Col ncols = 3 + static_cast<Col>(rng() % 12);
        int nrows = 1 + static_cast<int>(rng() % 14);
        int hint = 1 + static_cast<int>(rng() % 8);
        auto rows = random_rows(rng, nrows, ncols, hint);
        std::size_t r = lienil::rank(rows);
        REQUIRE(r == dense_rank(rows, ncols));
        auto perm = rows;
        std::shuffle(perm.begin(), perm.end(), rng);
        for (auto& row : perm) row *= Rational(static_cast<int>(rng() % 5) + 1, static_cast<int>(rng() % 7) + 1);
        REQUIRE(lienil::rank(perm) == r);
        Echelon e;
        for (const auto& row : rows) e.add(row);
        REQUIRE(e.rank() == r);
        auto extra = random_rows(rng, 1, ncols, 3).front();
        auto with = rows;
        with.push_back(extra);
        REQUIRE((lienil::rank(with) == r) == lienil::in_span(extra, rows));
        REQUIRE(lienil::modular_rank(rows) <= r);
    }
}
