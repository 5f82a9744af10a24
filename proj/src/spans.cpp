#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <mutex>

#include "lienil/errors.hpp"
#include "lienil/freealg.hpp"
#include "lienil/linalg.hpp"

namespace lienil {

namespace {

void guard(int n, int max_degree) {
    if (n > max_degree)
        throw SizeGuard("degree " + std::to_string(n) + " exceeds the guard " + std::to_string(max_degree));
    if (n > 12) throw SizeGuard("degree above 12 is not supported");
}

// A concrete layout: consecutive segment lengths of a permutation word plus
// the signed segment orders produced by expanding every commutator.
struct Layout {
    std::vector<int> lengths;
    std::vector<std::pair<std::vector<int>, int>> terms;
};

using Terms = std::vector<std::pair<std::vector<int>, int>>;

Terms commutator_terms(const std::vector<int>& ids) {
    Terms acc{{{ids[0]}, 1}};
    for (std::size_t i = 1; i < ids.size(); ++i) {
        Terms next;
        next.reserve(acc.size() * 2);
        for (const auto& [seq, sg] : acc) {
            std::vector<int> a = seq;
            a.push_back(ids[i]);
            next.emplace_back(std::move(a), sg);
            std::vector<int> b{ids[i]};
            b.insert(b.end(), seq.begin(), seq.end());
            next.emplace_back(std::move(b), -sg);
        }
        acc = std::move(next);
    }
    return acc;
}

Terms concat_terms(const Terms& a, const Terms& b) {
    Terms out;
    for (const auto& [sa, ga] : a) {
        for (const auto& [sb, gb] : b) {
            std::vector<int> s = sa;
            s.insert(s.end(), sb.begin(), sb.end());
            out.emplace_back(std::move(s), ga * gb);
        }
    }
    return out;
}

// Item of a shape: a free word (commutator_blocks == 0) or a left-normed
// commutator with the given number of nonempty blocks.
struct Item {
    int blocks = 0;
    bool unit_blocks = false;  // every block is a single letter
};

void enumerate_layouts(const std::vector<Item>& items, int n, std::vector<Layout>& out) {
    Layout cur;
    std::vector<Terms> item_terms;
    std::function<void(std::size_t, int)> rec = [&](std::size_t idx, int left) {
        if (idx == items.size()) {
            if (left != 0) return;
            Layout l;
            l.lengths = cur.lengths;
            Terms t{{{}, 1}};
            for (const auto& it : item_terms) t = concat_terms(t, it);
            l.terms = std::move(t);
            out.push_back(std::move(l));
            return;
        }
        const Item& item = items[idx];
        const int base = static_cast<int>(cur.lengths.size());
        if (item.blocks == 0) {
            for (int len = 0; len <= left; ++len) {
                cur.lengths.push_back(len);
                item_terms.push_back({{{base}, 1}});
                rec(idx + 1, left - len);
                item_terms.pop_back();
                cur.lengths.pop_back();
            }
            return;
        }
        std::vector<int> ids(static_cast<std::size_t>(item.blocks));
        for (int b = 0; b < item.blocks; ++b) ids[static_cast<std::size_t>(b)] = base + b;
        Terms ct = commutator_terms(ids);
        if (item.unit_blocks) {
            if (item.blocks > left) return;
            for (int b = 0; b < item.blocks; ++b) cur.lengths.push_back(1);
            item_terms.push_back(ct);
            rec(idx + 1, left - item.blocks);
            item_terms.pop_back();
            cur.lengths.resize(static_cast<std::size_t>(base));
            return;
        }
        std::function<void(int, int)> blocks = [&](int b, int rem) {
            if (b == item.blocks) {
                item_terms.push_back(ct);
                rec(idx + 1, rem);
                item_terms.pop_back();
                return;
            }
            for (int len = 1; len <= rem; ++len) {
                cur.lengths.push_back(len);
                blocks(b + 1, rem - len);
                cur.lengths.pop_back();
            }
        };
        blocks(0, left);
    };
    rec(0, n);
}

std::vector<MultilinearPoly> expand_layouts(const std::vector<Layout>& layouts, int n) {
    std::vector<MultilinearPoly> out;
    if (layouts.empty()) return out;
    std::vector<std::uint8_t> p(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(i + 1);
    std::vector<SparseVec::Entry> entries;
    Word w(static_cast<std::size_t>(n));
    do {
        for (const auto& l : layouts) {
            std::vector<int> start(l.lengths.size() + 1, 0);
            for (std::size_t s = 0; s < l.lengths.size(); ++s) start[s + 1] = start[s] + l.lengths[s];
            entries.clear();
            for (const auto& [seq, sg] : l.terms) {
                std::size_t pos = 0;
                for (int seg : seq) {
                    auto s = static_cast<std::size_t>(seg);
                    for (int i = start[s]; i < start[s + 1]; ++i) w[pos++] = p[static_cast<std::size_t>(i)];
                }
                entries.emplace_back(perm_rank(w), Rational(sg));
            }
            out.emplace_back(n, SparseVec::from_pairs(entries));
        }
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

// Multilinear expansion of [a, b1, ..., bk] over single letters.
NcPoly letter_commutator(const std::vector<int>& letters) {
    std::vector<NcPoly> xs;
    for (int v : letters) xs.push_back(NcPoly::var(v));
    return long_commutator(xs);
}

}  // namespace

std::vector<MultilinearPoly> ideal_multilinear_span(int p, int n, int max_degree) {
    if (p < 2) throw DomainError("ideal_multilinear_span needs p >= 2");
    guard(n, max_degree);
    if (p > n) return {};
    std::vector<Layout> layouts;
    enumerate_layouts({Item{0}, Item{p}, Item{0}}, n, layouts);
    return expand_layouts(layouts, n);
}

std::vector<MultilinearPoly> product_span(int p, int q, int n, int max_degree) {
    if (p < 2 || q < 2) throw DomainError("product_span needs p, q >= 2");
    guard(n, max_degree);
    if (p + q > n) return {};
    std::vector<Layout> layouts;
    enumerate_layouts({Item{0}, Item{p}, Item{0}, Item{q}, Item{0}}, n, layouts);
    return expand_layouts(layouts, n);
}

std::vector<MultilinearPoly> proper_span(int n, int max_degree) {
    if (n < 0) throw DomainError("proper_span needs n >= 0");
    guard(n, max_degree);
    if (n == 0) return {MultilinearPoly(0, SparseVec::unit(0))};
    std::vector<Layout> layouts;
    std::vector<int> parts;
    std::function<void(int)> comps = [&](int left) {
        if (left == 0) {
            std::vector<Item> items;
            for (int k : parts) items.push_back(Item{k, true});
            enumerate_layouts(items, n, layouts);
            return;
        }
        for (int k = 2; k <= left; ++k) {
            parts.push_back(k);
            comps(left - k);
            parts.pop_back();
        }
    };
    comps(n);
    return expand_layouts(layouts, n);
}

std::vector<MultilinearPoly> proper_basis(int n, int max_degree) {
    if (n < 0) throw DomainError("proper_basis needs n >= 0");
    guard(n, max_degree);
    std::vector<MultilinearPoly> out;
    if (n == 0) {
        out.emplace_back(0, SparseVec::unit(0));
        return out;
    }
    // restricted growth strings give set partitions with blocks ordered by min
    std::vector<int> rgs(static_cast<std::size_t>(n), 0);
    std::function<void(int, int)> rec = [&](int i, int nblocks) {
        if (i == n) {
            std::vector<std::vector<int>> blocks(static_cast<std::size_t>(nblocks));
            for (int v = 0; v < n; ++v) blocks[static_cast<std::size_t>(rgs[static_cast<std::size_t>(v)])].push_back(v + 1);
            for (const auto& b : blocks)
                if (b.size() < 2) return;
            std::vector<NcPoly> acc{NcPoly::constant(Rational(1))};
            for (const auto& b : blocks) {
                std::vector<int> rest(b.begin(), b.end() - 1);
                std::vector<NcPoly> choices;
                do {
                    std::vector<int> letters{b.back()};
                    letters.insert(letters.end(), rest.begin(), rest.end());
                    choices.push_back(letter_commutator(letters));
                } while (std::next_permutation(rest.begin(), rest.end()));
                std::vector<NcPoly> next;
                for (const auto& a : acc)
                    for (const auto& c : choices) next.push_back(a * c);
                acc = std::move(next);
            }
            for (const auto& f : acc) out.push_back(MultilinearPoly::from_poly(f, n));
            return;
        }
        for (int b = 0; b <= nblocks; ++b) {
            rgs[static_cast<std::size_t>(i)] = b;
            rec(i + 1, std::max(nblocks, b + 1));
        }
    };
    rec(0, 0);
    return out;
}

std::vector<SparseVec> coordinates(const std::vector<MultilinearPoly>& polys) {
    std::vector<SparseVec> rows;
    rows.reserve(polys.size());
    for (const auto& f : polys) rows.push_back(f.coords());
    return rows;
}

std::shared_ptr<const Echelon> ideal_echelon(int p, int n, int max_degree) {
    guard(n, max_degree);
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::shared_ptr<const Echelon>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find({p, n});
        if (it != cache.end()) return it->second;
    }
    auto e = std::make_shared<Echelon>();
    if (p <= n) {
        for (const auto& f : ideal_multilinear_span(p, n, max_degree)) e->add(f.coords());
    }
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(std::make_pair(p, n), e);
    return e;
}

QuotientDims quotient_dims(int n, int p, int max_degree) {
    if (p < 1) throw DomainError("quotient_dims needs p >= 1");
    if (n < 0) throw DomainError("quotient_dims needs n >= 0");
    guard(n, max_degree);
    auto ideal = ideal_echelon(p + 1, n, max_degree);
    QuotientDims d;
    d.c = static_cast<std::size_t>(factorial(n).to_int64()) - ideal->rank();
    // proper_basis spans the same space as proper_span and is much smaller
    Echelon e = *ideal;
    for (const auto& f : proper_basis(n, max_degree)) e.add(f.coords());
    d.gamma = e.rank() - ideal->rank();
    return d;
}

std::size_t module_span_dim(const MultilinearPoly& f, int p, int max_degree) {
    const int n = f.degree();
    guard(n, max_degree);
    auto ideal = ideal_echelon(p + 1, n, max_degree);
    Echelon e = *ideal;
    for (const auto& sigma : permutations(n)) e.add(sn_act(sigma, f).coords());
    return e.rank() - ideal->rank();
}

}  // namespace lienil
