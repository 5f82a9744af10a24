#include "doctest.h"

#include <map>

#include "lienil/errors.hpp"
#include "lienil/freealg.hpp"
#include "lienil/idcheck.hpp"
#include "lienil/reptheory.hpp"

using namespace lienil;

namespace {

Partition L(std::vector<int> p) { return Partition(std::move(p)); }

// Standard Young tableaux counted by removing corners; independent of the
// hook formula.
std::int64_t syt_count(std::vector<int> p, std::map<std::vector<int>, std::int64_t>& memo) {
    while (!p.empty() && p.back() == 0) p.pop_back();
    if (p.empty()) return 1;
    if (auto it = memo.find(p); it != memo.end()) return it->second;
    std::int64_t total = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i + 1 < p.size() && p[i + 1] == p[i]) continue;
        auto q = p;
        --q[i];
        total += syt_count(q, memo);
    }
    memo[p] = total;
    return total;
}

std::int64_t sign_of_type(const Partition& mu) {
    int even = 0;
    for (int q : mu.parts()) even += (q % 2 == 0);
    return even % 2 ? -1 : 1;
}

}  // namespace

TEST_CASE("partitions and rendering") {
    CHECK(partitions(4).size() == 5);
    CHECK(partitions(7).size() == 15);
    CHECK(partitions(4).front() == L({4}));
    CHECK(partitions(4).back() == Partition::column(4));
    CHECK(L({3, 1, 1}).str() == "(3,1,1)");
    CHECK(L({3, 1, 1}).conjugate() == L({3, 1, 1}));
    CHECK(L({4, 2}).conjugate() == L({2, 2, 1, 1}));
    CHECK(Partition::hook_like(3, 2, 1) == L({3, 2, 2, 1}));
    CHECK_THROWS_AS(L({1, 2}), DomainError);
    CHECK_THROWS_AS(L({2, 0}), DomainError);
}

TEST_CASE("hook dimensions") {
    CHECK(hook_dim(L({2, 2})) == Rational(2));
    CHECK(hook_dim(L({3, 3})) == Rational(5));
    CHECK(hook_dim(Partition::column(6)) == Rational(1));
    std::map<std::vector<int>, std::int64_t> memo;
    for (int n = 1; n <= 7; ++n) {
        Rational sq(0);
        for (const auto& lam : partitions(n)) {
            CHECK(hook_dim(lam) == Rational(syt_count(lam.parts(), memo)));
            sq += hook_dim(lam) * hook_dim(lam);
        }
        CHECK(sq == factorial_value(n));
    }
    // (1/(p-1)) binom(2p-2, p) for the two-row rectangle
    for (int p = 2; p <= 7; ++p) {
        Rational b = factorial_value(2 * p - 2) / (factorial_value(p) * factorial_value(p - 2));
        CHECK(hook_dim(L({p - 1, p - 1})) == b / Rational(p - 1));
    }
}

TEST_CASE("hook sum over (2l-p, 1^p)") {
    for (int l = 1; l <= 4; ++l) {
        Rational s(0);
        for (int p = 0; p <= 2 * l - 1; ++p) s += hook_dim(Partition::hook_like(2 * l - p, 0, p));
        CHECK(s == Rational(std::int64_t{1} << (2 * l - 1)));
    }
}

TEST_CASE("characters") {
    // S_4 table, classes (4), (3,1), (2,2), (2,1,1), (1^4)
    const std::map<std::vector<int>, std::vector<std::int64_t>> s4{
        {{4}, {1, 1, 1, 1, 1}},          {{3, 1}, {-1, 0, -1, 1, 3}},  {{2, 2}, {0, -1, 2, 0, 2}},
        {{2, 1, 1}, {1, 0, -1, -1, 3}}, {{1, 1, 1, 1}, {-1, 1, 1, -1, 1}},
    };
    const auto cls = partitions(4);
    for (const auto& [lam, row] : s4)
        for (std::size_t c = 0; c < cls.size(); ++c) CHECK(mn_character(L(lam), cls[c]) == row[c]);

    for (int n = 1; n <= 6; ++n) {
        const auto ps = partitions(n);
        for (const auto& lam : ps) {
            CHECK(Rational(mn_character(lam, Partition::column(n))) == hook_dim(lam));
            CHECK(mn_character(L({n}), lam) == 1);
            CHECK(mn_character(Partition::column(n), lam) == sign_of_type(lam));
            for (const auto& nu : ps) {
                Rational s(0);
                for (const auto& mu : ps)
                    s += class_size(mu) * Rational(mn_character(lam, mu) * mn_character(nu, mu));
                CHECK(s / factorial_value(n) == Rational(lam == nu ? 1 : 0));
            }
        }
    }
    CHECK_THROWS_AS(mn_character(L({2}), L({3})), DimensionMismatch);
}

TEST_CASE("class representatives have the right cycle type and count") {
    for (int n = 1; n <= 6; ++n) {
        Rational total(0);
        for (const auto& mu : partitions(n)) {
            auto sigma = class_representative(mu);
            std::vector<bool> seen(n, false);
            std::vector<int> type;
            for (int i = 0; i < n; ++i) {
                if (seen[i]) continue;
                int len = 0;
                for (int j = i; !seen[j]; j = sigma[j] - 1) seen[j] = true, ++len;
                type.push_back(len);
            }
            std::sort(type.rbegin(), type.rend());
            CHECK(L(type) == mu);
            total += class_size(mu);
        }
        CHECK(total == factorial_value(n));
    }
}

TEST_CASE("decomposition of the full proper module") {
    // for p >= n the ideal is zero in degree n
    CHECK(decompose_quotient(2, 2).str() == "M(1,1)");
    CHECK(decompose_quotient(3, 3).str() == "M(2,1)");
    CHECK(decompose_quotient(4, 4).str() == "M(3,1) + M(2,2) + M(2,1,1) + M(1,1,1,1)");
    auto d5 = decompose_quotient(5, 5);
    CHECK(d5.total_dim() == Rational(44));
    CHECK(decompose_quotient(0, 2).total_dim() == Rational(1));
    CHECK(decompose_quotient(1, 2).terms.empty());
    CHECK_THROWS_AS(decompose_quotient(7, 3), SizeGuard);
}

TEST_CASE("decompose_quotient agrees with the quotient dimension") {
    for (int n = 2; n <= 5; ++n)
        for (int p = 2; p <= 5; ++p) {
            auto d = decompose_quotient(n, p);
            CHECK(d.total_dim() == Rational(static_cast<std::int64_t>(quotient_dims(n, p).gamma)));
            for (const auto& [lam, m] : d.terms) CHECK(lam.part(0) <= p - 1);
        }
}

TEST_CASE("first rows are bounded in degree six") {
    for (int p = 3; p <= 4; ++p) {
        auto d = decompose_quotient(6, p);
        CHECK(d.total_dim() == Rational(static_cast<std::int64_t>(quotient_dims(6, p).gamma)));
        for (const auto& [lam, m] : d.terms) CHECK(lam.part(0) <= p - 1);
    }
}

TEST_CASE("guaranteed partitions occur") {
    CHECK(decompose_quotient(4, 3).contains(L({2, 2})));
    for (int p = 3; p <= 5; ++p)
        for (int n = 2; n <= 5; ++n) {
            auto d = decompose_quotient(n, p);
            for (const auto& lam : intro_partitions(n, p)) {
                INFO("n=" << n << " p=" << p << " " << lam.str());
                CHECK(d.multiplicity(lam) >= 1);
            }
        }
}

TEST_CASE("intro partition lists") {
    CHECK(intro_partitions(4, 4, true) == std::vector<Partition>{L({3, 1}), L({2, 2}), L({2, 1, 1})});
    CHECK(intro_partitions(4, 4) ==
          std::vector<Partition>{L({3, 1}), L({2, 2}), L({2, 1, 1}), Partition::column(4)});
    // the odd-n reading puts the sign module in degree 5, which the quotient lacks
    auto lit = intro_partitions(5, 4, true);
    CHECK(std::find(lit.begin(), lit.end(), Partition::column(5)) != lit.end());
    CHECK(decompose_quotient(5, 4).multiplicity(Partition::column(5)) == 0);
    auto def = intro_partitions(5, 4);
    CHECK(std::find(def.begin(), def.end(), Partition::column(5)) == def.end());
    for (int p = 3; p <= 8; ++p) {
        auto v = intro_partitions(2 * p - 2, p);
        CHECK(std::find(v.begin(), v.end(), L({p - 1, p - 1})) != v.end());
    }
    for (int p = 2; p <= 7; ++p)
        for (int n = 1; n <= 12; ++n)
            for (const auto& lam : intro_partitions(n, p)) CHECK(lam.n() == n);
}

TEST_CASE("DiD decompositions") {
    auto d = did_gamma(4, 1);
    CHECK(d.str() == "M(3,1) + M(2,2) + M(2,1,1) + M(1,1,1,1)");
    CHECK(d.total_dim() == Rational(9));
    CHECK(did_gamma(3, 1).str() == "M(2,1)");
    CHECK(did_gamma(2, 1).str() == "M(1,1)");
    auto f = did_gamma_finite(4, 1, 1);
    CHECK(f.str() == "M(2,2) + M(1,1,1,1)");
    CHECK(f.total_dim() == Rational(3));
    CHECK(did_gamma_finite(5, 1, 1).total_dim() == Rational(0));
    CHECK(did_gamma_finite(2, 1, 1).str() == "M(1,1)");
    CHECK_THROWS_AS(did_gamma_finite(4, 1, 2), DomainError);
    CHECK(d.to_json() ==
          R"J([{"dim":3,"multiplicity":1,"partition":"(3,1)"},{"dim":2,"multiplicity":1,"partition":"(2,2)"},)J"
          R"J({"dim":3,"multiplicity":1,"partition":"(2,1,1)"},{"dim":1,"multiplicity":1,"partition":"(1,1,1,1)"}])J");
    // the sign module never coincides with a listed shape
    for (int n = 2; n <= 12; ++n)
        for (int l = 1; l <= 3; ++l)
            for (const auto& [lam, m] : did_gamma(n, l).terms) CHECK(m == 1);
}

TEST_CASE("DiD totals match evaluation on the algebras") {
    const auto ee2 = AlgebraSpec::parse("E*E2");
    const auto e2e2 = AlgebraSpec::parse("E2*E2");
    for (int n = 2; n <= 6; ++n) {
        CHECK(did_gamma(n, 1).total_dim() == Rational(static_cast<std::int64_t>(gamma_by_evaluation(n, ee2))));
        CHECK(did_gamma_finite(n, 1, 1).total_dim() ==
              Rational(static_cast<std::int64_t>(gamma_by_evaluation(n, e2e2))));
    }
    const auto e4e2 = AlgebraSpec::parse("E4*E2");
    for (int n = 2; n <= 5; ++n)
        CHECK(did_gamma_finite(n, 2, 1).total_dim() ==
              Rational(static_cast<std::int64_t>(gamma_by_evaluation(n, e4e2))));
    const auto ee4 = AlgebraSpec::parse("E*E4");
    for (int n = 2; n <= 6; ++n)
        CHECK(did_gamma(n, 2).total_dim() == Rational(static_cast<std::int64_t>(gamma_by_evaluation(n, ee4))));
}
