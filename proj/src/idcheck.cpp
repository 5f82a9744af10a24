// Identity checking for tensor products of Grassmann algebras and for
// algebras given by structure constants.
//
// Why parity patterns are complete: f is multilinear, so it is an identity
// iff it vanishes on all tuples of basis elements, i.e. pure tensors of
// Grassmann monomials. In a slot where two arguments share a generator every
// word of f vanishes. Otherwise every word yields the same monomial, with a
// sign that depends only on which arguments are odd in each slot and on the
// order in which the word visits them. Even monomials commute with all
// others, so they may be replaced by the unit, and odd monomials by single
// generators; this uses the fewest generators and keeps the sign. Hence f is
// an identity iff the sign sum vanishes for every pattern whose odd count per
// slot fits the slot's capacity.

#include "lienil/idcheck.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cctype>
#include <cmath>
#include <mutex>
#include <set>
#include <thread>
#include <unordered_map>

#include <gmpxx.h>

#include "json.hpp"
#include "lienil/errors.hpp"
#include "lienil/linalg.hpp"

namespace lienil {

namespace {

constexpr int kMaxParityDegree = 11;  // n(n-1)/2 pair bits must fit in 64

// ---------- spec strings ----------

std::string strip_spaces(const std::string& s) {
    std::string out;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) out += c;
    return out;
}

int parse_int(const std::string& s, const std::string& whole) {
    if (s.empty() || s.size() > 4 || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw ParseError("bad algebra spec: " + whole);
    return std::stoi(s);
}

// ---------- integer views of polynomials ----------

// Scales coefficients to coprime integers; nullopt when they do not fit.
std::optional<std::vector<std::int64_t>> integer_coeffs(const SparseVec& v) {
    mpz_class l = 1;
    for (const auto& [c, x] : v.entries()) {
        mpq_class q = x.to_mpq();
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    }
    std::vector<std::int64_t> out;
    out.reserve(v.size());
    const mpz_class limit = mpz_class(1) << 62;
    for (const auto& [c, x] : v.entries()) {
        mpq_class q = x.to_mpq() * l;
        mpz_class z = q.get_num();
        if (abs(z) >= limit) return std::nullopt;
        out.push_back(z.get_si());
    }
    return out;
}

Rational from_i128(__int128 v) {
    if (v >= INT64_MIN && v <= INT64_MAX) return Rational(static_cast<std::int64_t>(v));
    bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
    mpz_class hi(static_cast<unsigned long>(u >> 64)), lo(static_cast<unsigned long>(static_cast<std::uint64_t>(u)));
    mpz_class z = (hi << 64) + lo;
    if (neg) z = -z;
    return Rational(mpq_class(z));
}

int pair_index(int a, int b) {  // 0 <= a < b
    return b * (b - 1) / 2 + a;
}

std::uint64_t inversion_mask(const Word& w) {
    std::uint64_t m = 0;
    for (std::size_t i = 0; i < w.size(); ++i)
        for (std::size_t j = i + 1; j < w.size(); ++j)
            if (w[i] > w[j]) m |= std::uint64_t{1} << pair_index(w[j] - 1, w[i] - 1);
    return m;
}

std::uint64_t pair_mask(std::uint32_t odd) {
    std::uint64_t m = 0;
    for (int b = 0; b < 32; ++b) {
        if (!(odd >> b & 1u)) continue;
        for (int a = 0; a < b; ++a)
            if (odd >> a & 1u) m |= std::uint64_t{1} << pair_index(a, b);
    }
    return m;
}

// f as (inversion mask, integer coefficient) pairs; S(X) is the signed sum.
struct SignTable {
    int n = 0;
    std::vector<std::uint64_t> inv;
    std::vector<std::int64_t> coef;
    std::vector<Rational> exact;  // used when integers overflow
    bool small = true;

    explicit SignTable(const MultilinearPoly& f) : n(f.degree()) {
        if (n > kMaxParityDegree)
            throw SizeGuard("parity check supports degree <= " + std::to_string(kMaxParityDegree));
        for (const auto& [r, c] : f.coords().entries()) inv.push_back(inversion_mask(perm_unrank(n, r)));
        if (auto ic = integer_coeffs(f.coords())) {
            coef = std::move(*ic);
        } else {
            small = false;
            for (const auto& [r, c] : f.coords().entries()) exact.push_back(c);
        }
    }

    bool nonzero(std::uint64_t x) const {
        if (!small) return !exact_value(x).is_zero();
        __int128 s = 0;
        for (std::size_t i = 0; i < inv.size(); ++i) s += (std::popcount(inv[i] & x) & 1) ? -coef[i] : coef[i];
        return s != 0;
    }

    Rational value(std::uint64_t x) const {
        if (!small) return exact_value(x);
        __int128 s = 0;
        for (std::size_t i = 0; i < inv.size(); ++i) s += (std::popcount(inv[i] & x) & 1) ? -coef[i] : coef[i];
        return from_i128(s);
    }

    Rational exact_value(std::uint64_t x) const {
        Rational s;
        for (std::size_t i = 0; i < inv.size(); ++i) {
            if (std::popcount(inv[i] & x) & 1)
                s -= exact[i];
            else
                s += exact[i];
        }
        return s;
    }
};

std::vector<std::uint32_t> masks_up_to(int n, int cap) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t m = 0; m < (1u << n); ++m)
        if (cap == kUnbounded || std::popcount(m) <= cap) out.push_back(m);
    return out;
}

Witness materialize_with_caps(const MultilinearPoly& f, const ParityPattern& pattern, const std::vector<int>& caps) {
    const int n = f.degree();
    Witness w;
    w.pattern = pattern;
    std::vector<int> dims = caps;
    for (int a = 0; a < n; ++a) {
        TensorElem::Key key(caps.size(), 0);
        for (std::size_t j = 0; j < caps.size(); ++j) {
            if (!(pattern[j] >> a & 1u)) continue;
            int gen = std::popcount(pattern[j] & ((1u << a) - 1u));
            key[j] = GMonomial{1} << gen;
        }
        w.tensor_args.push_back(TensorElem::pure(dims, key));
    }
    w.tensor_value = evaluate(f.to_poly(), w.tensor_args);
    // The value must be S(P) times the product of the used generators.
    TensorElem::Key top(caps.size());
    for (std::size_t j = 0; j < caps.size(); ++j) top[j] = (GMonomial{1} << std::popcount(pattern[j])) - 1;
    TensorElem expect = TensorElem::pure(dims, top, pattern_value(f, pattern));
    if (!(w.tensor_value == expect)) throw InternalError("parity witness does not re-evaluate to its sign sum");
    for (const auto& t : w.tensor_args) w.arg_strings.push_back(t.str());
    w.value_string = w.tensor_value.str();
    return w;
}

// ---------- structure-constant evaluation ----------

// Enumerates basis tuples depth-first in lexicographic order, skipping
// tuples whose Grassmann supports overlap in some slot.
class TupleWalker {
public:
    TupleWalker(const FiniteAlgebra& a, int n) : a_(a), n_(n) {
        if (a.has_grassmann_slots()) {
            int total = 0;
            for (int r : a.slot_dims()) total += r;
            if (total <= 64) {
                prune_ = true;
                masks_.resize(a.dim());
                for (std::size_t b = 0; b < a.dim(); ++b) {
                    int off = 0;
                    std::uint64_t m = 0;
                    const auto& sup = a.slot_support(b);
                    for (std::size_t j = 0; j < sup.size(); ++j) {
                        m |= sup[j] << off;
                        off += a.slot_dims()[j];
                    }
                    masks_[b] = m;
                }
            }
        }
    }

    /// Number of tuples that will be visited.
    double count() const {
        if (!prune_) return std::pow(static_cast<double>(a_.dim()), n_);
        double c = 1;
        for (int r : a_.slot_dims()) c *= std::pow(static_cast<double>(n_ + 1), r);
        return c;
    }

    /// Visits tuples whose first entry is `first`; stops when visit returns true.
    template <class Visit>
    bool walk_from(std::size_t first, Visit&& visit) const {
        std::vector<std::size_t> t(static_cast<std::size_t>(n_));
        t[0] = first;
        if (n_ == 1) return visit(t);
        return rec(1, prune_ ? masks_[first] : 0, t, visit);
    }

    template <class Visit>
    bool walk(Visit&& visit) const {
        for (std::size_t b = 0; b < a_.dim(); ++b)
            if (walk_from(b, visit)) return true;
        return false;
    }

private:
    template <class Visit>
    bool rec(int d, std::uint64_t used, std::vector<std::size_t>& t, Visit& visit) const {
        for (std::size_t b = 0; b < a_.dim(); ++b) {
            if (prune_ && (masks_[b] & used)) continue;
            t[static_cast<std::size_t>(d)] = b;
            if (d + 1 == n_) {
                if (visit(t)) return true;
            } else if (rec(d + 1, prune_ ? used | masks_[b] : 0, t, visit)) {
                return true;
            }
        }
        return false;
    }

    const FiniteAlgebra& a_;
    int n_;
    bool prune_ = false;
    std::vector<std::uint64_t> masks_;
};

// Evaluates a multilinear polynomial on basis tuples of a monomial algebra
// whose structure constants are 0 or +-1. Consecutive words share prefixes.
class MonomialEvaluator {
public:
    static bool applicable(const FiniteAlgebra& a, const MultilinearPoly& f) {
        if (!a.is_monomial() || !integer_coeffs(f.coords())) return false;
        for (std::size_t i = 0; i < a.dim(); ++i)
            for (std::size_t j = 0; j < a.dim(); ++j)
                if (std::abs(a.mono_coeff(i, j)) > 1) return false;
        return true;
    }

    MonomialEvaluator(const FiniteAlgebra& a, const MultilinearPoly& f)
        : a_(a), n_(f.degree()), coef_(*integer_coeffs(f.coords())), acc_(a.dim(), 0), seen_(a.dim(), 0) {
        const Word* prev = nullptr;
        std::vector<Word> words;
        for (const auto& [r, c] : f.coords().entries()) words.push_back(perm_unrank(n_, r));
        for (const auto& w : words) {
            std::size_t l = 0;
            if (prev)
                while (l < w.size() && (*prev)[l] == w[l]) ++l;
            lcp_.push_back(static_cast<int>(l));
            for (auto x : w) letters_.push_back(static_cast<std::uint8_t>(x - 1));
            prev = &w;
        }
    }

    /// Evaluates at the tuple; the result is left in acc()/touched().
    void run(const std::vector<std::size_t>& t) {
        for (auto k : touched_) {
            acc_[k] = 0;
            seen_[k] = 0;
        }
        touched_.clear();
        const auto n = static_cast<std::size_t>(n_);
        std::vector<std::int32_t>& tgt = tgt_;
        std::vector<std::int8_t>& sg = sg_;
        tgt.assign(n + 1, -1);
        sg.assign(n + 1, 1);
        tgt[0] = static_cast<std::int32_t>(a_.unit_index());
        for (std::size_t i = 0; i < coef_.size(); ++i) {
            const std::uint8_t* w = &letters_[i * n];
            for (auto d = static_cast<std::size_t>(lcp_[i]); d < n; ++d) {
                if (tgt[d] < 0) {
                    tgt[d + 1] = -1;
                    continue;
                }
                auto b = t[w[d]];
                std::int32_t nt = a_.mono_target(static_cast<std::size_t>(tgt[d]), b);
                tgt[d + 1] = nt;
                if (nt >= 0) sg[d + 1] = static_cast<std::int8_t>(sg[d] * a_.mono_coeff(static_cast<std::size_t>(tgt[d]), b));
            }
            if (tgt[n] < 0) continue;
            auto k = static_cast<std::size_t>(tgt[n]);
            if (!seen_[k]) {
                seen_[k] = 1;
                touched_.push_back(k);
            }
            acc_[k] += sg[n] > 0 ? coef_[i] : -coef_[i];
        }
    }

    bool nonzero() const {
        for (auto k : touched_)
            if (acc_[k] != 0) return true;
        return false;
    }
    const std::vector<std::size_t>& touched() const { return touched_; }
    __int128 acc(std::size_t k) const { return acc_[k]; }

private:
    const FiniteAlgebra& a_;
    int n_;
    std::vector<std::int64_t> coef_;
    std::vector<int> lcp_;
    std::vector<std::uint8_t> letters_;
    std::vector<__int128> acc_;
    std::vector<char> seen_;
    std::vector<std::size_t> touched_;
    std::vector<std::int32_t> tgt_;
    std::vector<std::int8_t> sg_;
};

Witness materialize_tuple(const MultilinearPoly& f, const FiniteAlgebra& a, const std::vector<std::size_t>& t) {
    Witness w;
    w.basis_tuple = t;
    for (auto b : t) w.alg_args.push_back(a.basis(b));
    w.alg_value = evaluate(f.to_poly(), w.alg_args, a);
    if (w.alg_value.is_zero()) throw InternalError("brute-force witness re-evaluates to zero");
    for (const auto& x : w.alg_args) w.arg_strings.push_back(a.str(x));
    w.value_string = a.str(w.alg_value);
    if (a.has_grassmann_slots()) {
        for (const auto& x : w.alg_args) w.tensor_args.push_back(a.to_tensor(x));
        w.tensor_value = a.to_tensor(w.alg_value);
    }
    return w;
}

// Runs `search(first)` over first-variable choices on up to `threads` workers
// and returns the least `first` for which it reported a hit.
template <class Search>
std::optional<std::size_t> parallel_first_hit(std::size_t choices, unsigned threads, Search search) {
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> best{choices};
    std::exception_ptr error;
    std::mutex error_mu;
    auto worker = [&] {
        try {
            for (;;) {
                std::size_t i = next++;
                if (i >= choices || i >= best.load()) return;
                if (search(i)) {
                    std::size_t cur = best.load();
                    while (i < cur && !best.compare_exchange_weak(cur, i)) {
                    }
                }
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mu);
            if (!error) error = std::current_exception();
            best = 0;
        }
    };
    threads = std::max(1u, threads);
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (error) std::rethrow_exception(error);
    if (best.load() < choices) return best.load();
    return std::nullopt;
}

}  // namespace

// ---------- AlgebraSpec ----------

std::string SlotSpec::str() const {
    switch (kind) {
        case Kind::Grassmann:
            return param == kUnbounded ? "E" : "E" + std::to_string(param);
        case Kind::Nil:
            return "N" + std::to_string(param);
        case Kind::File:
            return "@" + path;
    }
    return "?";
}

AlgebraSpec AlgebraSpec::parse(const std::string& text) {
    std::string s = strip_spaces(text);
    const std::string tensor_sign = "⊗";
    for (std::size_t pos; (pos = s.find(tensor_sign)) != std::string::npos;) s.replace(pos, tensor_sign.size(), "*");
    if (s.empty()) throw ParseError("empty algebra spec");
    AlgebraSpec spec;
    std::size_t start = 0;
    while (start <= s.size()) {
        std::size_t end = s.find('*', start);
        if (end == std::string::npos) end = s.size();
        std::string piece = s.substr(start, end - start);
        if (piece.empty()) throw ParseError("bad algebra spec: " + text);
        int count = 1;
        if (piece[0] != '@') {
            if (auto caret = piece.find('^'); caret != std::string::npos) {
                count = parse_int(piece.substr(caret + 1), text);
                if (count < 1) throw ParseError("bad tensor power in: " + text);
                piece = piece.substr(0, caret);
            }
        }
        SlotSpec slot;
        if (piece[0] == '@') {
            if (piece.size() < 2) throw ParseError("missing path in: " + text);
            slot.kind = SlotSpec::Kind::File;
            slot.path = piece.substr(1);
        } else if (piece[0] == 'E' || piece[0] == 'N') {
            std::string num = piece.substr(1);
            if (!num.empty() && (num[0] == '_' || num[0] == '<')) {
                if (num[0] == '<') {
                    if (num.back() != '>') throw ParseError("bad algebra spec: " + text);
                    num = num.substr(1, num.size() - 2);
                } else {
                    num = num.substr(1);
                }
            }
            if (piece[0] == 'E') {
                slot.kind = SlotSpec::Kind::Grassmann;
                if (!num.empty()) {
                    slot.param = parse_int(num, text);
                    if (slot.param < 2 || slot.param > kMaxGenerators)
                        throw ParseError("Grassmann rank out of range in: " + text);
                }
            } else {
                slot.kind = SlotSpec::Kind::Nil;
                slot.param = parse_int(num, text);
                if (slot.param < 3) throw ParseError("N_k needs k >= 3 in: " + text);
            }
        } else {
            throw ParseError("unknown algebra spec: " + text);
        }
        for (int c = 0; c < count; ++c) spec.slots.push_back(slot);
        if (end == s.size()) break;
        start = end + 1;
        if (start == s.size()) throw ParseError("bad algebra spec: " + text);
    }
    return spec;
}

std::string AlgebraSpec::str() const {
    std::string out;
    for (std::size_t i = 0; i < slots.size(); ++i) {
        if (i) out += "*";
        out += slots[i].str();
    }
    return out;
}

bool AlgebraSpec::all_grassmann() const {
    return std::all_of(slots.begin(), slots.end(), [](const SlotSpec& s) { return s.is_grassmann(); });
}

bool AlgebraSpec::all_bounded() const {
    return std::none_of(slots.begin(), slots.end(), [](const SlotSpec& s) { return s.is_unbounded(); });
}

std::vector<int> AlgebraSpec::capacities() const {
    if (!all_grassmann()) throw DomainError("spec has a non-Grassmann slot: " + str());
    std::vector<int> caps;
    for (const auto& s : slots) caps.push_back(s.param);
    return caps;
}

AlgebraPtr AlgebraSpec::materialize(std::size_t max_dim) const {
    std::vector<AlgebraPtr> factors;
    for (const auto& s : slots) {
        switch (s.kind) {
            case SlotSpec::Kind::Grassmann:
                if (s.param == kUnbounded) throw DomainError("E cannot be materialized; use the parity checker");
                factors.push_back(make_grassmann(s.param, max_dim));
                break;
            case SlotSpec::Kind::Nil:
                factors.push_back(make_nk(s.param));
                break;
            case SlotSpec::Kind::File:
                factors.push_back(load_algebra_json(s.path, max_dim));
                break;
        }
    }
    return tensor(factors, max_dim);
}

// ---------- parity checker ----------

Rational pattern_value(const MultilinearPoly& f, const ParityPattern& pattern) {
    std::uint64_t x = 0;
    for (auto m : pattern) {
        if (f.degree() < 32 && (m >> f.degree()) != 0) throw DomainError("pattern refers to a missing variable");
        x ^= pair_mask(m);
    }
    return SignTable(f).value(x);
}

Witness materialize_pattern(const MultilinearPoly& f, const ParityPattern& pattern, const AlgebraSpec& spec) {
    const std::vector<int> caps = spec.capacities();
    if (pattern.size() != caps.size()) throw DimensionMismatch("pattern has the wrong number of slots");
    for (std::size_t j = 0; j < caps.size(); ++j) {
        if (f.degree() < 32 && (pattern[j] >> f.degree()) != 0) throw DomainError("pattern refers to a missing variable");
        if (caps[j] != kUnbounded && std::popcount(pattern[j]) > caps[j])
            throw DomainError("pattern needs more generators than slot " + std::to_string(j + 1) + " has");
    }
    return materialize_with_caps(f, pattern, caps);
}

IdentityVerdict parity_check(const MultilinearPoly& f, const AlgebraSpec& spec, unsigned threads) {
    const std::vector<int> caps = spec.capacities();
    if (caps.empty()) throw DomainError("empty algebra spec");
    const int n = f.degree();
    if (f.is_zero()) return {};
    SignTable table(f);
    std::vector<std::vector<std::uint32_t>> choices;
    for (int c : caps) choices.push_back(masks_up_to(n, c));
    std::vector<std::uint64_t> pm(std::size_t{1} << n);
    for (std::uint32_t m = 0; m < pm.size(); ++m) pm[m] = pair_mask(m);

    const std::size_t s = caps.size();
    std::vector<ParityPattern> found(choices[0].size());
    auto search = [&](std::size_t first) {
        std::unordered_map<std::uint64_t, bool> memo;
        ParityPattern pat(s);
        pat[0] = choices[0][first];
        // depth-first over slots 1..s-1 in canonical order
        auto rec = [&](auto&& self, std::size_t j, std::uint64_t x) -> bool {
            if (j == s) {
                auto it = memo.find(x);
                bool nz = it != memo.end() ? it->second : (memo[x] = table.nonzero(x));
                return nz;
            }
            for (auto m : choices[j]) {
                pat[j] = m;
                if (self(self, j + 1, x ^ pm[m])) return true;
            }
            return false;
        };
        if (rec(rec, 1, pm[pat[0]])) {
            found[first] = pat;
            return true;
        }
        return false;
    };
    auto hit = parallel_first_hit(choices[0].size(), threads, search);
    IdentityVerdict v;
    if (!hit) return v;
    v.is_identity = false;
    v.witness = materialize_with_caps(f, found[*hit], caps);
    return v;
}

// ---------- brute force ----------

IdentityVerdict brute_check(const MultilinearPoly& f, const FiniteAlgebra& a, unsigned threads) {
    const int n = f.degree();
    IdentityVerdict v;
    if (f.is_zero()) return v;
    if (n == 0) {
        v.is_identity = false;
        v.witness = materialize_tuple(f, a, {});
        return v;
    }
    TupleWalker walker(a, n);
    if (walker.count() > kBruteGuard)
        throw SizeGuard("brute force would visit about " + std::to_string(static_cast<long double>(walker.count())) +
                        " tuples (guard 1e9)");
    std::vector<std::vector<std::size_t>> found(a.dim());
    const bool fast = MonomialEvaluator::applicable(a, f);
    const NcPoly poly = fast ? NcPoly() : f.to_poly();
    auto search = [&](std::size_t first) {
        if (fast) {
            MonomialEvaluator ev(a, f);
            return walker.walk_from(first, [&](const std::vector<std::size_t>& t) {
                ev.run(t);
                if (!ev.nonzero()) return false;
                found[first] = t;
                return true;
            });
        }
        return walker.walk_from(first, [&](const std::vector<std::size_t>& t) {
            std::vector<AlgElem> args;
            for (auto b : t) args.push_back(a.basis(b));
            if (evaluate(poly, args, a).is_zero()) return false;
            found[first] = t;
            return true;
        });
    };
    auto hit = parallel_first_hit(a.dim(), threads, search);
    if (!hit) return v;
    v.is_identity = false;
    v.witness = materialize_tuple(f, a, found[*hit]);
    return v;
}

IdentityVerdict check_identity(const MultilinearPoly& f, const AlgebraSpec& spec, unsigned threads,
                               std::size_t max_dim) {
    if (spec.all_grassmann()) return parity_check(f, spec, threads);
    return brute_check(f, *spec.materialize(max_dim), threads);
}

// ---------- Lie nilpotency index ----------

std::optional<int> default_cap(const AlgebraSpec& spec) {
    const auto& sl = spec.slots;
    if (sl.empty()) return std::nullopt;
    for (const auto& s : sl)
        if (s.kind == SlotSpec::Kind::File) return std::nullopt;
    // E_2^{⊗l} satisfies [x1, ..., x_{l+2}]
    if (std::all_of(sl.begin(), sl.end(), [](const SlotSpec& s) { return s.is_grassmann() && s.param == 2; }))
        return static_cast<int>(sl.size()) + 2;
    // Factors satisfying [x1,x2,x3] and [x1,x2][x3,x4] raise an index p to
    // p+1 (p even) or p+2 (p odd).
    auto small = [](const SlotSpec& s) {
        return (s.is_grassmann() && (s.param == 2 || s.param == 3)) || (s.kind == SlotSpec::Kind::Nil && s.param == 3);
    };
    auto extend = [&](int p, std::size_t extra) {
        for (std::size_t i = 0; i < extra; ++i) p += (p % 2 == 0) ? 1 : 2;
        return p;
    };
    std::optional<int> best;
    auto consider = [&](std::vector<std::size_t> base, int p) {
        std::size_t extra = 0;
        for (std::size_t i = 0; i < sl.size(); ++i) {
            if (std::find(base.begin(), base.end(), i) != base.end()) continue;
            if (!small(sl[i])) return;
            ++extra;
        }
        int q = extend(p, extra);
        if (!best || q < *best) best = q;
    };
    std::size_t unbounded = 0;
    for (const auto& s : sl) unbounded += s.is_unbounded() ? 1 : 0;
    if (unbounded > 1) return std::nullopt;
    for (std::size_t i = 0; i < sl.size(); ++i) {
        const auto& s = sl[i];
        if (s.is_unbounded()) {
            consider({i}, 3);
            for (std::size_t j = 0; j < sl.size(); ++j)
                if (j != i && sl[j].is_grassmann()) consider({i, j}, 2 * (sl[j].param / 2) + 3);
            continue;
        }
        if (unbounded) continue;  // the E slot must be part of the base
        if (s.is_grassmann()) {
            consider({i}, 3);
            for (std::size_t j = i + 1; j < sl.size(); ++j)
                if (sl[j].is_grassmann() && !sl[j].is_unbounded() && sl[j].param / 2 == s.param / 2)
                    consider({i, j}, 2 * (s.param / 2) + 2);
        } else if (s.kind == SlotSpec::Kind::Nil) {
            consider({i}, s.param);
        }
    }
    return best;
}

int min_index(const AlgebraSpec& spec, std::optional<int> cap, unsigned threads, std::size_t max_dim) {
    if (!cap) cap = default_cap(spec);
    if (!cap) throw DomainError("no known bound for " + spec.str() + "; an explicit cap is required");
    if (*cap < 3) throw DomainError("cap must be at least 3");
    AlgebraPtr alg;
    if (!spec.all_grassmann()) alg = spec.materialize(max_dim);
    for (int q = 2; q <= *cap; ++q) {
        auto f = MultilinearPoly::from_poly(long_commutator_vars(q), q);
        IdentityVerdict v = alg ? brute_check(f, *alg, threads) : parity_check(f, spec, threads);
        if (v.is_identity) return q;
    }
    throw CapExceeded("cap exceeded: [x1, ..., x" + std::to_string(*cap) + "] is not an identity of " + spec.str());
}

// ---------- evaluation ranks ----------

std::size_t evaluation_rank(const std::vector<MultilinearPoly>& polys, const AlgebraSpec& spec, std::size_t max_dim) {
    if (polys.empty()) return 0;
    const int n = polys.front().degree();
    for (const auto& p : polys)
        if (p.degree() != n) throw DimensionMismatch("evaluation_rank needs polynomials of one degree");
    if (!spec.all_grassmann()) return evaluation_rank(polys, *spec.materialize(max_dim));
    if (n > kMaxParityDegree) throw SizeGuard("degree too large for the parity evaluation");
    // All feasible patterns reduce to the XOR of their pair masks.
    std::set<std::uint64_t> xs{0};
    for (int c : spec.capacities()) {
        std::set<std::uint64_t> next;
        for (auto m : masks_up_to(n, c)) {
            std::uint64_t pm = pair_mask(m);
            for (auto x : xs) next.insert(x ^ pm);
        }
        xs = std::move(next);
    }
    std::vector<SignTable> tables;
    for (const auto& p : polys) tables.emplace_back(p);
    Echelon ech;
    for (auto x : xs) {
        std::vector<SparseVec::Entry> row;
        for (std::size_t b = 0; b < tables.size(); ++b) {
            Rational v = tables[b].value(x);
            if (!v.is_zero()) row.emplace_back(static_cast<Col>(b), v);
        }
        ech.add(SparseVec::from_pairs(std::move(row)));
        if (ech.rank() == polys.size()) break;
    }
    return ech.rank();
}

std::size_t evaluation_rank(const std::vector<MultilinearPoly>& polys, const FiniteAlgebra& a) {
    if (polys.empty()) return 0;
    const int n = polys.front().degree();
    for (const auto& p : polys)
        if (p.degree() != n) throw DimensionMismatch("evaluation_rank needs polynomials of one degree");
    if (n == 0) {
        for (const auto& p : polys)
            if (!p.is_zero()) return 1;
        return 0;
    }
    TupleWalker walker(a, n);
    if (walker.count() > kBruteGuard) throw SizeGuard("evaluation would visit too many tuples");
    bool fast = true;
    for (const auto& p : polys) fast = fast && MonomialEvaluator::applicable(a, p);
    Echelon ech;
    std::vector<MonomialEvaluator> evs;
    std::vector<NcPoly> nps;
    if (fast)
        for (const auto& p : polys) evs.emplace_back(a, p);
    else
        for (const auto& p : polys) nps.push_back(p.to_poly());
    walker.walk([&](const std::vector<std::size_t>& t) {
        std::map<std::size_t, std::vector<SparseVec::Entry>> rows;  // coordinate -> entries over polys
        for (std::size_t b = 0; b < polys.size(); ++b) {
            if (fast) {
                evs[b].run(t);
                for (auto k : evs[b].touched())
                    if (evs[b].acc(k) != 0) rows[k].emplace_back(static_cast<Col>(b), from_i128(evs[b].acc(k)));
            } else {
                std::vector<AlgElem> args;
                for (auto x : t) args.push_back(a.basis(x));
                for (const auto& [k, c] : evaluate(nps[b], args, a).coords.entries())
                    rows[k].emplace_back(static_cast<Col>(b), c);
            }
        }
        for (auto& [k, e] : rows) ech.add(SparseVec::from_pairs(std::move(e)));
        return ech.rank() == polys.size();
    });
    return ech.rank();
}

std::size_t gamma_by_evaluation(int n, const AlgebraSpec& spec, std::size_t max_dim) {
    return evaluation_rank(proper_basis(n, std::max(n, kDefaultMaxDegree)), spec, max_dim);
}

std::size_t gamma_by_evaluation(int n, const FiniteAlgebra& a) {
    return evaluation_rank(proper_basis(n, std::max(n, kDefaultMaxDegree)), a);
}

// ---------- named substitutions ----------

namespace recipes {

namespace {

TensorElem gen_in(const std::vector<int>& dims, std::size_t slot, int g) {
    TensorElem::Key key(dims.size(), 0);
    key[slot] = GMonomial{1} << (g - 1);
    return TensorElem::pure(dims, key);
}

TensorElem gens_in(const std::vector<int>& dims, const std::vector<std::pair<std::size_t, int>>& parts) {
    TensorElem::Key key(dims.size(), 0);
    for (auto [slot, g] : parts) key[slot] = GMonomial{1} << (g - 1);
    return TensorElem::pure(dims, key);
}

}  // namespace

std::vector<TensorElem> equal_pair(int k) {
    if (k < 1) throw DomainError("equal_pair needs k >= 1");
    std::vector<int> dims{2 * k, 2 * k};
    std::vector<TensorElem> out{gen_in(dims, 0, 1)};
    for (int i = 2; i <= 2 * k; ++i) out.push_back(gens_in(dims, {{0, i}, {1, i - 1}}));
    out.push_back(gen_in(dims, 1, 2 * k));
    return out;
}

std::vector<TensorElem> e_times_e2(int k) {
    if (k < 1) throw DomainError("e_times_e2 needs k >= 1");
    std::vector<int> dims{kUnbounded};
    for (int i = 0; i < k; ++i) dims.push_back(2);
    std::vector<TensorElem> out(static_cast<std::size_t>(2 * k + 2));
    out[0] = gen_in(dims, 0, 1);
    out.back() = gen_in(dims, 0, 2 * k + 2);
    for (int i = 1; i <= k; ++i) {
        out[static_cast<std::size_t>(2 * i - 1)] = gens_in(dims, {{0, 2 * i}, {static_cast<std::size_t>(i), 1}});
        out[static_cast<std::size_t>(2 * i)] = gens_in(dims, {{0, 2 * i + 1}, {static_cast<std::size_t>(i), 2}});
    }
    return out;
}

std::vector<TensorElem> slot_sums(int slots, int vars, int r) {
    if (slots < 1 || vars < 1 || vars > r) throw DomainError("slot_sums needs 1 <= vars <= r and slots >= 1");
    std::vector<int> dims(static_cast<std::size_t>(slots), r);
    std::vector<TensorElem> out;
    for (int s = 1; s <= vars; ++s) {
        TensorElem x(dims);
        for (int i = 0; i < slots; ++i) x += gen_in(dims, static_cast<std::size_t>(i), s);
        out.push_back(x);
    }
    return out;
}

std::vector<TensorElem> g_family(int variant, int k, int nvars) {
    if (k < 2) throw DomainError("g_family needs k >= 2");
    if (variant < 1 || variant > 4) throw DomainError("g_family variant must be 1..4");
    if (nvars < 2) throw DomainError("g_family needs at least two variables");
    std::vector<int> dims{kUnbounded};
    for (int i = 0; i < k - 1; ++i) dims.push_back(2);
    // sum of g_s over the E_2 slots starting at `from`
    auto spread = [&](int s, std::size_t from) {
        TensorElem x(dims);
        for (std::size_t i = from; i < dims.size(); ++i) x += gen_in(dims, i, s);
        return x;
    };
    std::vector<TensorElem> out;
    switch (variant) {
        case 1:
            out.push_back(gens_in(dims, {{0, 1}, {1, 1}}) + gens_in(dims, {{0, 2}, {1, 2}}) + gen_in(dims, 0, 3) +
                          spread(1, 2));
            out.push_back(gen_in(dims, 0, 4) + spread(2, 2));
            for (int i = 3; i <= nvars; ++i) out.push_back(gen_in(dims, 0, i + 2));
            break;
        case 2:
            out.push_back(gen_in(dims, 0, 1) + spread(1, 1));
            out.push_back(gen_in(dims, 0, 2) + spread(2, 1));
            for (int i = 3; i <= nvars; ++i) out.push_back(gen_in(dims, 0, i));
            break;
        case 3:
            out.push_back(gens_in(dims, {{0, 1}, {1, 1}}) + gen_in(dims, 0, 3) + spread(1, 2));
            out.push_back(gen_in(dims, 0, 2) + gen_in(dims, 1, 2) + spread(2, 2));
            for (int i = 3; i <= nvars; ++i) out.push_back(gen_in(dims, 0, i + 1));
            break;
        case 4:
            out.push_back(gens_in(dims, {{0, 1}, {1, 1}}) + gen_in(dims, 0, 3) + spread(1, 2));
            out.push_back(gen_in(dims, 0, 2) + spread(2, 2));
            for (int i = 3; i <= nvars; ++i) out.push_back(gen_in(dims, 0, i + 1));
            break;
    }
    return out;
}

}  // namespace recipes

TensorElem product_nonidentity_witness(const NcPoly& f, const std::vector<TensorElem>& args) {
    if (static_cast<std::size_t>(f.max_var()) != args.size())
        throw DomainError("substitution arity mismatch: polynomial uses " + std::to_string(f.max_var()) +
                          " variables, " + std::to_string(args.size()) + " arguments given");
    return evaluate(f, args);
}

std::string verdict_to_json(const IdentityVerdict& v, const MultilinearPoly& f, const AlgebraSpec& spec) {
    nlohmann::json j;
    j["algebra"] = spec.str();
    j["degree"] = f.degree();
    j["is_identity"] = v.is_identity;
    if (v.witness) {
        const Witness& w = *v.witness;
        nlohmann::json wj;
        if (!w.pattern.empty()) {
            nlohmann::json rows = nlohmann::json::array();
            for (int a = 0; a < f.degree(); ++a) {
                nlohmann::json row = nlohmann::json::array();
                for (auto m : w.pattern) row.push_back((m >> a & 1u) ? 1 : 0);
                rows.push_back(row);
            }
            wj["pattern"] = rows;
        }
        if (!w.basis_tuple.empty()) wj["basis_tuple"] = w.basis_tuple;
        wj["arguments"] = w.arg_strings;
        wj["value"] = w.value_string;
        j["witness"] = wj;
    }
    return j.dump();
}

}  // namespace lienil
