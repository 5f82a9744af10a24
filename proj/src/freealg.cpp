#include "lienil/freealg.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>

#include "lienil/errors.hpp"

namespace lienil {

NcPoly NcPoly::var(int i) {
    if (i < 1 || i > kMaxVariables) throw DomainError("variable index out of range: " + std::to_string(i));
    return monomial(Word{static_cast<std::uint8_t>(i)});
}

NcPoly NcPoly::constant(const Rational& c) { return monomial(Word{}, c); }

NcPoly NcPoly::monomial(const Word& w, const Rational& c) {
    NcPoly p;
    p.add_term(w, c);
    return p;
}

Rational NcPoly::coeff(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Rational(0) : it->second;
}

void NcPoly::add_term(const Word& w, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

int NcPoly::max_var() const {
    int m = 0;
    for (const auto& [w, c] : terms_)
        for (auto x : w) m = std::max<int>(m, x);
    return m;
}

bool NcPoly::is_multilinear() const {
    if (terms_.empty()) return true;
    const std::size_t n = terms_.begin()->first.size();
    for (const auto& [w, c] : terms_) {
        if (w.size() != n) return false;
        Word s = w;
        std::sort(s.begin(), s.end());
        for (std::size_t i = 0; i < n; ++i)
            if (s[i] != i + 1) return false;
    }
    return true;
}

int NcPoly::degree() const {
    return terms_.empty() ? -1 : static_cast<int>(terms_.begin()->first.size());
}

NcPoly& NcPoly::operator+=(const NcPoly& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
}

NcPoly& NcPoly::operator-=(const NcPoly& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, -c);
    return *this;
}

NcPoly& NcPoly::operator*=(const Rational& s) {
    if (s.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [w, c] : terms_) c *= s;
    return *this;
}

NcPoly NcPoly::operator-() const {
    NcPoly out(*this);
    for (auto& [w, c] : out.terms_) c = -c;
    return out;
}

NcPoly operator*(const NcPoly& a, const NcPoly& b) {
    NcPoly out;
    for (const auto& [u, x] : a.terms_) {
        for (const auto& [v, y] : b.terms_) {
            Word w = u;
            w.insert(w.end(), v.begin(), v.end());
            out.add_term(w, x * y);
        }
    }
    return out;
}

std::string NcPoly::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [w, c] : terms_) {
        Rational mag = c;
        if (c.sign() < 0) {
            out += first ? "-" : " - ";
            mag = -c;
        } else if (!first) {
            out += " + ";
        }
        first = false;
        if (w.empty()) {
            out += mag.str();
            continue;
        }
        if (mag != Rational(1)) out += mag.str() + "*";
        for (auto x : w) out += "x" + std::to_string(x);
    }
    return out;
}

NcPoly commutator(const NcPoly& a, const NcPoly& b) { return a * b - b * a; }

NcPoly long_commutator(const std::vector<NcPoly>& args) {
    if (args.size() < 2) throw DomainError("long_commutator needs at least two arguments");
    NcPoly acc = args[0];
    for (std::size_t i = 1; i < args.size(); ++i) acc = commutator(acc, args[i]);
    return acc;
}

NcPoly long_commutator_vars(int q) {
    std::vector<NcPoly> xs;
    for (int i = 1; i <= q; ++i) xs.push_back(NcPoly::var(i));
    return long_commutator(xs);
}

NcPoly power(const NcPoly& f, int k) {
    if (k < 0) throw DomainError("negative power");
    NcPoly acc = NcPoly::constant(Rational(1));
    for (int i = 0; i < k; ++i) acc = acc * f;
    return acc;
}

std::vector<std::vector<int>> permutations(int n) {
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 1);
    std::vector<std::vector<int>> out;
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

int permutation_sign(const std::vector<int>& p) {
    int inv = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j]) ++inv;
    return inv % 2 ? -1 : 1;
}

NcPoly standard_poly(int m) {
    if (m < 1) throw DomainError("standard_poly needs m >= 1");
    NcPoly out;
    for (const auto& p : permutations(m)) {
        Word w(p.begin(), p.end());
        out.add_term(w, Rational(permutation_sign(p)));
    }
    return out;
}

namespace {

// sum over sigma in S_k of sgn(sigma) * build(x_sigma(1), ..., x_sigma(k))
NcPoly alternating_sum(int k, const std::function<NcPoly(const std::vector<NcPoly>&)>& build) {
    NcPoly out;
    for (const auto& p : permutations(k)) {
        std::vector<NcPoly> xs;
        xs.push_back(NcPoly());  // 1-based
        for (int v : p) xs.push_back(NcPoly::var(v));
        NcPoly term = build(xs);
        if (permutation_sign(p) < 0) term = -term;
        out += term;
    }
    return out;
}

// [x_s1, x_s2] ... [x_s(2m-1), x_s(2m)] for the first 2m substituted variables.
NcPoly double_commutators(const std::vector<NcPoly>& xs, int m) {
    NcPoly acc = NcPoly::constant(Rational(1));
    for (int t = 0; t < m; ++t) acc = acc * commutator(xs[2 * t + 1], xs[2 * t + 2]);
    return acc;
}

}  // namespace

NcPoly make_g(int i, int degree) {
    if (i < 1 || i > 3) throw DomainError("make_g: i must be 1, 2 or 3");
    const NcPoly x1 = NcPoly::var(1);
    const NcPoly x2 = NcPoly::var(2);
    if (degree % 2 == 1) {
        const int j = (degree + 1) / 2;
        if (j < 3) throw DomainError("make_g: odd degree requires j >= 3");
        const int m = j - 2;
        const int k = 2 * j - 3;
        switch (i) {
        case 1:
            return alternating_sum(k, [&](const std::vector<NcPoly>& xs) {
                return double_commutators(xs, m) * long_commutator({xs[k], x1, x1});
            });
        case 2:
            return alternating_sum(k, [&](const std::vector<NcPoly>& xs) {
                return double_commutators(xs, m) * long_commutator({x2, x1, xs[k]});
            });
        default:
            return alternating_sum(k + 1, [&](const std::vector<NcPoly>& xs) {
                return double_commutators(xs, m) * long_commutator({xs[k], xs[k + 1], x1});
            });
        }
    }
    const int j = degree / 2;
    if (j < 2) throw DomainError("make_g: even degree requires j >= 2");
    const int m = j - 2;
    const int k = 2 * j - 2;
    switch (i) {
    case 1:
        return alternating_sum(k, [&](const std::vector<NcPoly>& xs) {
            return double_commutators(xs, m) * long_commutator({xs[k - 1], xs[k], x1, x1});
        });
    case 2:
        return commutator(x1, x2) * standard_poly(k);
    default:
        return alternating_sum(k + 1, [&](const std::vector<NcPoly>& xs) {
            return double_commutators(xs, m) *
                   long_commutator({xs[k - 1], xs[k], commutator(xs[k + 1], x1)});
        });
    }
}

Rational factorial_value(int n) { return factorial(n); }

Col perm_rank(const Word& w) {
    const std::size_t n = w.size();
    if (n > 12) throw SizeGuard("perm_rank: degree above 12");
    std::uint64_t r = 0;
    std::uint32_t used = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const unsigned v = w[i];
        const unsigned below = static_cast<unsigned>(std::popcount(~used & ((1u << v) - 2u)));
        r = r * (n - i) + below;
        used |= 1u << v;
    }
    return static_cast<Col>(r);
}

Word perm_unrank(int n, Col r) {
    std::vector<std::uint64_t> fact(static_cast<std::size_t>(n) + 1, 1);
    for (int i = 1; i <= n; ++i) fact[static_cast<std::size_t>(i)] = fact[static_cast<std::size_t>(i) - 1] * static_cast<std::uint64_t>(i);
    std::vector<std::uint8_t> pool;
    for (int i = 1; i <= n; ++i) pool.push_back(static_cast<std::uint8_t>(i));
    Word w;
    std::uint64_t rest = r;
    for (int i = n; i >= 1; --i) {
        std::uint64_t f = fact[static_cast<std::size_t>(i) - 1];
        auto idx = static_cast<std::size_t>(rest / f);
        rest %= f;
        w.push_back(pool[idx]);
        pool.erase(pool.begin() + static_cast<long>(idx));
    }
    return w;
}

MultilinearPoly MultilinearPoly::from_poly(const NcPoly& f, int n) {
    std::vector<SparseVec::Entry> e;
    for (const auto& [w, c] : f.terms()) {
        if (static_cast<int>(w.size()) != n) throw DomainError("polynomial is not multilinear of degree " + std::to_string(n));
        std::uint64_t seen = 0;
        for (auto x : w) {
            if (x < 1 || x > n || ((seen >> x) & 1)) throw DomainError("polynomial is not multilinear of degree " + std::to_string(n));
            seen |= std::uint64_t{1} << x;
        }
        e.emplace_back(perm_rank(w), c);
    }
    return MultilinearPoly(n, SparseVec::from_pairs(std::move(e)));
}

NcPoly MultilinearPoly::to_poly() const {
    NcPoly out;
    for (const auto& [c, v] : coords_.entries()) out.add_term(perm_unrank(n_, c), v);
    return out;
}

namespace {

NcPoly linearize_component(const NcPoly& comp, const std::vector<int>& deg, int max_var) {
    // copies[v] = indices standing for the occurrences of x_v
    std::vector<std::vector<int>> copies(deg.size());
    int next = max_var + 1;
    for (std::size_t v = 1; v < deg.size(); ++v) {
        if (deg[v] == 0) continue;
        copies[v].push_back(static_cast<int>(v));
        for (int c = 2; c <= deg[v]; ++c) copies[v].push_back(next++);
    }
    NcPoly out;
    for (const auto& [w, coef] : comp.terms()) {
        std::vector<std::vector<std::size_t>> positions(deg.size());
        for (std::size_t i = 0; i < w.size(); ++i) positions[w[i]].push_back(i);
        std::vector<std::size_t> vars;
        for (std::size_t v = 1; v < deg.size(); ++v)
            if (deg[v] > 0) vars.push_back(v);
        Word cur = w;
        std::function<void(std::size_t)> rec = [&](std::size_t idx) {
            if (idx == vars.size()) {
                out.add_term(cur, coef);
                return;
            }
            std::size_t v = vars[idx];
            std::vector<int> perm = copies[v];
            do {
                for (std::size_t t = 0; t < perm.size(); ++t)
                    cur[positions[v][t]] = static_cast<std::uint8_t>(perm[t]);
                rec(idx + 1);
            } while (std::next_permutation(perm.begin(), perm.end()));
        };
        rec(0);
    }
    // compress indices to 1..n
    std::vector<int> used;
    for (std::size_t v = 1; v < copies.size(); ++v) used.insert(used.end(), copies[v].begin(), copies[v].end());
    std::sort(used.begin(), used.end());
    std::vector<std::uint8_t> remap(static_cast<std::size_t>(next) + 1, 0);
    for (std::size_t i = 0; i < used.size(); ++i) remap[static_cast<std::size_t>(used[i])] = static_cast<std::uint8_t>(i + 1);
    NcPoly compressed;
    for (const auto& [w, c] : out.terms()) {
        Word r = w;
        for (auto& x : r) x = remap[x];
        compressed.add_term(r, c);
    }
    return compressed;
}

}  // namespace

MultilinearPoly multilinearize(const NcPoly& f) {
    if (f.is_zero()) return MultilinearPoly();
    const int mv = f.max_var();
    std::map<std::vector<int>, NcPoly> components;
    for (const auto& [w, c] : f.terms()) {
        std::vector<int> deg(static_cast<std::size_t>(mv) + 1, 0);
        for (auto x : w) ++deg[x];
        components[deg].add_term(w, c);
    }
    int total = -1;
    NcPoly sum;
    for (const auto& [deg, comp] : components) {
        int t = std::accumulate(deg.begin(), deg.end(), 0);
        if (total >= 0 && t != total)
            throw DomainError("multilinearize: components of different total degree");
        total = t;
        if (total + mv > 255) throw SizeGuard("multilinearize: too many variables");
        sum += linearize_component(comp, deg, mv);
    }
    if (total > kMaxVariables) throw SizeGuard("multilinearize: degree too large");
    return MultilinearPoly::from_poly(sum, total);
}

MultilinearPoly sn_act(const std::vector<int>& sigma, const MultilinearPoly& f) {
    const int n = f.degree();
    if (static_cast<int>(sigma.size()) != n) throw DimensionMismatch("sn_act: permutation degree differs from polynomial degree");
    std::vector<SparseVec::Entry> e;
    for (const auto& [c, v] : f.coords().entries()) {
        Word w = perm_unrank(n, c);
        for (auto& x : w) x = static_cast<std::uint8_t>(sigma[x - 1u]);
        e.emplace_back(perm_rank(w), v);
    }
    return MultilinearPoly(n, SparseVec::from_pairs(std::move(e)));
}

}  // namespace lienil
