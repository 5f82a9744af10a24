#include "lienil/linalg.hpp"

#include <algorithm>

#include "lienil/errors.hpp"

namespace lienil {

namespace {

struct Accumulator {
    std::vector<Rational> val;
    std::vector<char> mark;
    std::vector<Col> touched;

    void ensure(Col extent) {
        if (val.size() < extent) {
            val.resize(extent);
            mark.resize(extent, 0);
        }
    }
    void touch(Col c) {
        if (!mark[c]) {
            mark[c] = 1;
            touched.push_back(c);
        }
    }
    SparseVec drain() {
        std::sort(touched.begin(), touched.end());
        SparseVec out;
        for (Col c : touched) {
            if (!val[c].is_zero()) out.push_back(c, std::move(val[c]));
            val[c] = Rational(0);
            mark[c] = 0;
        }
        touched.clear();
        return out;
    }
};

Accumulator& scratch() {
    thread_local Accumulator acc;
    return acc;
}

constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
    unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
    std::uint64_t lo = static_cast<std::uint64_t>(p & kPrime);
    std::uint64_t hi = static_cast<std::uint64_t>(p >> 61);
    std::uint64_t s = lo + hi;
    return s >= kPrime ? s - kPrime : s;
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e) {
        if (e & 1) r = mulmod(r, a);
        a = mulmod(a, a);
        e >>= 1;
    }
    return r;
}

std::uint64_t to_mod(const Rational& q) {
    mpq_class v = q.to_mpq();
    const mpz_class p(static_cast<unsigned long>(kPrime));
    mpz_class n = v.get_num() % p;
    if (n < 0) n += p;
    mpz_class d = v.get_den() % p;
    std::uint64_t nn = n.get_ui();
    std::uint64_t dd = d.get_ui();
    if (dd == 0) throw InternalError("modular rank: denominator divisible by the modulus");
    return mulmod(nn, powmod(dd, kPrime - 2));
}

std::size_t distinct_columns(const std::vector<SparseVec>& rows) {
    std::vector<Col> cols;
    for (const auto& r : rows)
        for (const auto& e : r.entries()) cols.push_back(e.first);
    std::sort(cols.begin(), cols.end());
    return static_cast<std::size_t>(std::unique(cols.begin(), cols.end()) - cols.begin());
}

}  // namespace

SparseVec Echelon::reduce(const SparseVec& v) const {
    Accumulator& acc = scratch();
    acc.ensure(std::max(extent_, v.extent()));
    for (const auto& [c, x] : v.entries()) {
        acc.touch(c);
        acc.val[c] = x;
    }
    for (const auto& [c, x] : v.entries()) {
        long r = row_of_pivot(c);
        if (r < 0) continue;
        for (const auto& [c2, y] : rows_[static_cast<std::size_t>(r)].entries()) {
            acc.touch(c2);
            acc.val[c2].sub_mul(x, y);
        }
    }
    return acc.drain();
}

bool Echelon::contains(const SparseVec& v) const {
    SparseVec r = reduce(v);
    return r.empty() || r.entries().front().first >= pivot_limit_;
}

bool Echelon::add(const SparseVec& v) {
    SparseVec r = reduce(v);
    const Rational* best = nullptr;
    Col piv = 0;
    std::uint64_t best_mag = 0;
    for (const auto& [c, x] : r.entries()) {
        if (c >= pivot_limit_) break;
        std::uint64_t mag = x.numerator_magnitude();
        if (!best || mag < best_mag) {
            best = &x;
            best_mag = mag;
            piv = c;
        }
    }
    if (!best) return false;
    r *= Rational(1) / *best;
    for (auto& row : rows_) {
        Rational x = row.at(piv);
        if (!x.is_zero()) row.axpy(-x, r);
    }
    if (pivot_row_.size() <= piv) pivot_row_.resize(piv + 1, -1);
    pivot_row_[piv] = static_cast<long>(rows_.size());
    pivots_.push_back(piv);
    extent_ = std::max(extent_, r.extent());
    rows_.push_back(std::move(r));
    return true;
}

std::size_t modular_rank(const std::vector<SparseVec>& rows) {
    if (rows.empty()) return 0;
    Col extent = 0;
    for (const auto& r : rows) extent = std::max(extent, r.extent());
    const std::size_t bound = std::min(rows.size(), distinct_columns(rows));
    std::vector<std::vector<std::uint64_t>> basis;
    std::vector<long> pivot_row(extent, -1);
    std::vector<std::uint64_t> x(extent);
    for (const auto& v : rows) {
        if (basis.size() == bound) break;
        std::fill(x.begin(), x.end(), 0);
        std::vector<std::pair<Col, std::uint64_t>> src;
        for (const auto& [c, q] : v.entries()) {
            std::uint64_t m = to_mod(q);
            x[c] = m;
            src.emplace_back(c, m);
        }
        for (const auto& [c, m] : src) {
            long r = pivot_row[c];
            if (r < 0 || m == 0) continue;
            const auto& row = basis[static_cast<std::size_t>(r)];
            std::uint64_t f = kPrime - m;
            for (Col j = 0; j < extent; ++j) {
                if (row[j]) {
                    std::uint64_t s = x[j] + mulmod(f, row[j]);
                    x[j] = s >= kPrime ? s - kPrime : s;
                }
            }
        }
        Col piv = extent;
        for (Col j = 0; j < extent; ++j) {
            if (x[j]) {
                piv = j;
                break;
            }
        }
        if (piv == extent) continue;
        std::uint64_t inv = powmod(x[piv], kPrime - 2);
        for (auto& e : x) e = mulmod(e, inv);
        for (auto& row : basis) {
            std::uint64_t m = row[piv];
            if (!m) continue;
            std::uint64_t f = kPrime - m;
            for (Col j = 0; j < extent; ++j) {
                if (x[j]) {
                    std::uint64_t s = row[j] + mulmod(f, x[j]);
                    row[j] = s >= kPrime ? s - kPrime : s;
                }
            }
        }
        pivot_row[piv] = static_cast<long>(basis.size());
        basis.push_back(x);
    }
    return basis.size();
}

std::size_t rank(const std::vector<SparseVec>& rows) {
    if (rows.empty()) return 0;
    const std::size_t bound = std::min(rows.size(), distinct_columns(rows));
    if (modular_rank(rows) == bound) return bound;
    Echelon e;
    for (const auto& r : rows) {
        e.add(r);
        if (e.rank() == bound) break;
    }
    return e.rank();
}

bool in_span(const SparseVec& v, const std::vector<SparseVec>& rows) {
    if (v.empty()) return true;
    Echelon e;
    for (const auto& r : rows) e.add(r);
    return e.contains(v);
}

std::size_t quotient_rank(const std::vector<SparseVec>& a, const std::vector<SparseVec>& b) {
    Echelon e;
    for (const auto& r : b) e.add(r);
    const std::size_t base = e.rank();
    for (const auto& r : a) e.add(r);
    return e.rank() - base;
}

}  // namespace lienil
