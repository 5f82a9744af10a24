#include "lienil/reptheory.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <set>
#include <thread>

#include "json.hpp"

#include "lienil/errors.hpp"
#include "lienil/freealg.hpp"
#include "lienil/linalg.hpp"

namespace lienil {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (parts_[i] <= 0) throw DomainError("partition parts must be positive");
        if (i > 0 && parts_[i] > parts_[i - 1]) throw DomainError("partition parts must be weakly decreasing");
        n_ += parts_[i];
    }
}

Partition Partition::hook_like(int head, int twos, int ones) {
    std::vector<int> p{head};
    p.insert(p.end(), twos, 2);
    p.insert(p.end(), ones, 1);
    return Partition(std::move(p));
}

Partition Partition::column(int n) { return Partition(std::vector<int>(n, 1)); }

Partition Partition::conjugate() const {
    std::vector<int> c(parts_.empty() ? 0 : parts_[0], 0);
    for (int r : parts_)
        for (int j = 0; j < r; ++j) ++c[j];
    return Partition(std::move(c));
}

int Partition::hook(int i, int j) const {
    if (i >= length() || j >= parts_[i]) throw DomainError("cell outside the diagram");
    int leg = 0;
    for (int r = i + 1; r < length() && parts_[r] > j; ++r) ++leg;
    return parts_[i] - j - 1 + leg + 1;
}

std::string Partition::str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(parts_[i]);
    }
    return s + ")";
}

namespace {

void partitions_rec(int rest, int max_part, std::vector<int>& cur, std::vector<Partition>& out) {
    if (rest == 0) {
        out.emplace_back(cur);
        return;
    }
    for (int q = std::min(rest, max_part); q >= 1; --q) {
        cur.push_back(q);
        partitions_rec(rest - q, q, cur, out);
        cur.pop_back();
    }
}

using BetaSet = std::vector<int>;  // increasing

// χ over a beta set, removing parts of mu from index k on.
std::int64_t mn_rec(const BetaSet& beta, const std::vector<int>& mu, std::size_t k,
                    std::map<std::pair<BetaSet, std::size_t>, std::int64_t>& memo) {
    if (k == mu.size()) return 1;
    auto key = std::make_pair(beta, k);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    const int r = mu[k];
    std::int64_t total = 0;
    for (std::size_t i = 0; i < beta.size(); ++i) {
        const int to = beta[i] - r;
        if (to < 0 || std::binary_search(beta.begin(), beta.end(), to)) continue;
        // beads jumped over = leg length of the removed rim hook
        const auto lo = std::upper_bound(beta.begin(), beta.end(), to);
        const long jumped = (beta.begin() + static_cast<long>(i)) - lo;
        BetaSet next = beta;
        next.erase(next.begin() + static_cast<long>(i));
        next.insert(std::lower_bound(next.begin(), next.end(), to), to);
        const std::int64_t sub = mn_rec(next, mu, k + 1, memo);
        total += (jumped % 2 ? -sub : sub);
    }
    memo.emplace(std::move(key), total);
    return total;
}

}  // namespace

std::vector<Partition> partitions(int n) {
    if (n < 0) throw DomainError("partitions of a negative number");
    std::vector<Partition> out;
    std::vector<int> cur;
    partitions_rec(n, n, cur, out);
    return out;
}

Rational hook_dim(const Partition& lambda) {
    Rational prod(1);
    for (int i = 0; i < lambda.length(); ++i)
        for (int j = 0; j < lambda.part(i); ++j) prod *= Rational(lambda.hook(i, j));
    return factorial_value(lambda.n()) / prod;
}

std::int64_t mn_character(const Partition& lambda, const Partition& mu) {
    if (lambda.n() != mu.n()) throw DimensionMismatch("character arguments have different sizes");
    const int len = lambda.length();
    BetaSet beta(len);
    for (int i = 0; i < len; ++i) beta[len - 1 - i] = lambda.part(i) + (len - 1 - i);
    std::map<std::pair<BetaSet, std::size_t>, std::int64_t> memo;
    return mn_rec(beta, mu.parts(), 0, memo);
}

Rational class_size(const Partition& mu) {
    std::map<int, int> mult;
    for (int q : mu.parts()) ++mult[q];
    Rational z(1);
    for (auto [q, m] : mult) {
        for (int t = 0; t < m; ++t) z *= Rational(q);
        z *= factorial_value(m);
    }
    return factorial_value(mu.n()) / z;
}

std::vector<int> class_representative(const Partition& mu) {
    std::vector<int> sigma(mu.n());
    int start = 1;
    for (int q : mu.parts()) {
        for (int t = 0; t < q; ++t) sigma[start + t - 1] = start + (t + 1) % q;
        start += q;
    }
    return sigma;
}

Rational Decomposition::total_dim() const {
    Rational t(0);
    for (const auto& [lam, m] : terms) t += hook_dim(lam) * Rational(static_cast<std::int64_t>(m));
    return t;
}

std::size_t Decomposition::multiplicity(const Partition& lambda) const {
    for (const auto& [lam, m] : terms)
        if (lam == lambda) return m;
    return 0;
}

std::string Decomposition::str() const {
    if (terms.empty()) return "0";
    std::string s;
    for (const auto& [lam, m] : terms) {
        if (!s.empty()) s += " + ";
        if (m != 1) s += std::to_string(m);
        s += "M" + lam.str();
    }
    return s;
}

std::string Decomposition::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [lam, m] : terms)
        arr.push_back({{"partition", lam.str()}, {"multiplicity", m}, {"dim", hook_dim(lam).to_int64()}});
    return arr.dump();
}

namespace {

Decomposition from_multiplicities(std::map<Partition, std::size_t, std::greater<>> m) {
    Decomposition d;
    for (auto& [lam, k] : m)
        if (k > 0) d.terms.emplace_back(lam, k);
    return d;
}

}  // namespace

Decomposition decompose_quotient(int n, int p, int max_degree) {
    if (n < 0 || p < 1) throw DomainError("decompose_quotient needs n >= 0 and p >= 1");
    if (n > max_degree) throw SizeGuard("decompose_quotient: degree " + std::to_string(n) + " exceeds " +
                                        std::to_string(max_degree));
    if (n == 0) return Decomposition{{{Partition(), 1}}};
    if (n == 1) return {};

    auto ideal = ideal_echelon(p + 1, n, max_degree);
    const Col big_n = static_cast<Col>(factorial_value(n).to_int64());

    // Quotient basis: proper basis elements independent modulo the ideal,
    // each tagged by an augmented column so coordinates can be read back.
    Echelon quot(big_n);
    std::vector<MultilinearPoly> chosen;
    for (const auto& b : proper_basis(n, max_degree)) {
        SparseVec r = ideal->reduce(b.coords());
        if (r.empty() || quot.contains(r)) continue;
        quot.add(r + SparseVec::unit(big_n + static_cast<Col>(chosen.size())));
        chosen.push_back(b);
    }

    const auto classes = partitions(n);
    std::vector<Rational> traces(classes.size());
    auto trace_of = [&](std::size_t ci) {
        const auto sigma = class_representative(classes[ci]);
        Rational tr(0);
        for (std::size_t i = 0; i < chosen.size(); ++i) {
            SparseVec r = quot.reduce(ideal->reduce(sn_act(sigma, chosen[i]).coords()));
            if (!r.empty() && r.entries().front().first < big_n)
                throw InternalError("quotient basis does not span the image of Γ_n");
            tr -= r.at(big_n + static_cast<Col>(i));
        }
        traces[ci] = tr;
    };
    const unsigned threads = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(),
                                                            static_cast<unsigned>(classes.size())));
    if (threads <= 1) {
        for (std::size_t ci = 0; ci < classes.size(); ++ci) trace_of(ci);
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(threads);
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back([&, t] {
                try {
                    for (std::size_t ci = t; ci < classes.size(); ci += threads) trace_of(ci);
                } catch (...) {
                    errors[t] = std::current_exception();
                }
            });
        for (auto& th : pool) th.join();
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
    }
    if (traces.back() != Rational(static_cast<std::int64_t>(chosen.size())))
        throw InternalError("identity trace differs from the quotient dimension");

    const Rational nfact = factorial_value(n);
    std::map<Partition, std::size_t, std::greater<>> mult;
    for (const auto& lam : classes) {
        Rational s(0);
        for (std::size_t ci = 0; ci < classes.size(); ++ci)
            s += class_size(classes[ci]) * traces[ci] * Rational(mn_character(lam, classes[ci]));
        s /= nfact;
        if (!s.is_integer() || s.sign() < 0)
            throw InternalError("non-integral multiplicity for " + lam.str() + ": " + s.str());
        mult[lam] = static_cast<std::size_t>(s.to_int64());
    }
    Decomposition d = from_multiplicities(std::move(mult));
    if (d.total_dim() != Rational(static_cast<std::int64_t>(chosen.size())))
        throw InternalError("decomposition does not add up to the quotient dimension");
    return d;
}

namespace {

// Shapes (a+2, 2^b, 1^c) of n with b + c > 0, passing the filter.
template <class Keep>
Decomposition hook_shapes(int n, bool with_sign, Keep keep) {
    std::map<Partition, std::size_t, std::greater<>> mult;
    for (int b = 0; 2 * b + 2 <= n; ++b)
        for (int c = 0; 2 * b + c + 2 <= n; ++c) {
            const int a = n - 2 - 2 * b - c;
            if (b + c == 0 || !keep(a, b, c)) continue;
            mult[Partition::hook_like(a + 2, b, c)] += 1;
        }
    if (with_sign) mult[Partition::column(n)] += 1;
    for (const auto& [lam, m] : mult)
        if (m > 1) throw InternalError("shape " + lam.str() + " listed twice");
    return from_multiplicities(std::move(mult));
}

}  // namespace

Decomposition did_gamma(int n, int l) {
    if (n < 2 || l < 1) throw DomainError("did_gamma needs n >= 2 and l >= 1");
    return hook_shapes(n, n % 2 == 0, [&](int a, int b, int) { return a + b + 1 <= 2 * l; });
}

Decomposition did_gamma_finite(int n, int m, int l) {
    if (!(m >= l && l >= 1) || n < 2) throw DomainError("did_gamma_finite needs n >= 2 and m >= l >= 1");
    const int bound = 2 * (m + l);
    return hook_shapes(n, n % 2 == 0 && n <= bound, [&](int a, int b, int c) {
        const int h12 = a + b + 1;
        const int s = 2 * a + 2 * b + c + 2;
        return h12 <= 2 * l && (s < bound || (s == bound && h12 % 2 == 0));
    });
}

std::vector<Partition> intro_partitions(int n, int p, bool literal_sign_parity) {
    if (p < 2 || n < 1) throw DomainError("intro_partitions needs p >= 2 and n >= 1");
    const int k = p / 2;
    std::set<Partition, std::greater<>> out;
    auto put = [&](std::vector<int> parts) {
        int s = 0;
        for (int q : parts) {
            if (q < 0) return;
            s += q;
        }
        std::erase(parts, 0);
        if (s == n) out.insert(Partition(std::move(parts)));
    };
    auto with_ones = [](std::vector<int> head, int ones) {
        if (ones < 0) return std::vector<int>{-1};
        head.insert(head.end(), ones, 1);
        return head;
    };

    put({p - 1, 1});
    put({p - 1, p - 1});
    for (auto& [lam, m] : hook_shapes(n, false, [&](int a, int b, int) { return a + b + 1 <= 2 * k - 2; }).terms)
        out.insert(lam);
    for (int l = 0; l <= k - 2; ++l) {
        put(with_ones({l + 3, l + 1}, n - 2 * l - 4));
        put(with_ones({l + 2, l + 2}, n - 2 * l - 4));
        put(with_ones({l + 2, l + 1}, n - 2 * l - 3));
    }
    if ((n % 2 == 0) != literal_sign_parity) out.insert(Partition::column(n));
    if (p % 2 == 1 && n <= 4 * k) {
        for (int b = 1; b <= 2 * k - 1; ++b) {
            const int a = 2 * k - 1 - b;
            std::vector<int> parts{a + 2};
            parts.insert(parts.end(), b, 2);
            put(parts);
        }
        for (int b = 0; b <= 2 * k - 2; ++b) {
            const int a = 2 * k - 2 - b;
            std::vector<int> parts{a + 2};
            parts.insert(parts.end(), b, 2);
            parts.push_back(1);
            put(parts);
        }
    }
    return {out.begin(), out.end()};
}

}  // namespace lienil
