#include "lienil/sparse.hpp"

#include <algorithm>
#include <sstream>

#include "lienil/errors.hpp"

namespace lienil {

SparseVec SparseVec::from_pairs(std::vector<Entry> pairs) {
    std::stable_sort(pairs.begin(), pairs.end(),
                     [](const Entry& a, const Entry& b) { return a.first < b.first; });
    SparseVec out;
    for (auto& [c, v] : pairs) {
        if (!out.entries_.empty() && out.entries_.back().first == c) {
            out.entries_.back().second += v;
            if (out.entries_.back().second.is_zero()) out.entries_.pop_back();
        } else if (!v.is_zero()) {
            out.entries_.emplace_back(c, std::move(v));
        }
    }
    return out;
}

SparseVec SparseVec::unit(Col c, Rational v) {
    SparseVec out;
    if (!v.is_zero()) out.entries_.emplace_back(c, std::move(v));
    return out;
}

Rational SparseVec::at(Col c) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), c,
                               [](const Entry& e, Col k) { return e.first < k; });
    if (it != entries_.end() && it->first == c) return it->second;
    return Rational(0);
}

void SparseVec::push_back(Col c, Rational v) {
    if (!entries_.empty() && entries_.back().first >= c)
        throw InternalError("SparseVec::push_back: columns out of order");
    if (!v.is_zero()) entries_.emplace_back(c, std::move(v));
}

SparseVec& SparseVec::operator*=(const Rational& s) {
    if (s.is_zero()) {
        entries_.clear();
        return *this;
    }
    for (auto& e : entries_) e.second *= s;
    return *this;
}

SparseVec SparseVec::operator-() const {
    SparseVec out(*this);
    for (auto& e : out.entries_) e.second = -e.second;
    return out;
}

void SparseVec::axpy(const Rational& s, const SparseVec& o) {
    if (s.is_zero() || o.empty()) return;
    std::vector<Entry> merged;
    merged.reserve(entries_.size() + o.entries_.size());
    auto a = entries_.begin();
    auto b = o.entries_.begin();
    while (a != entries_.end() || b != o.entries_.end()) {
        if (b == o.entries_.end() || (a != entries_.end() && a->first < b->first)) {
            merged.push_back(std::move(*a++));
        } else if (a == entries_.end() || b->first < a->first) {
            merged.emplace_back(b->first, s * b->second);
            ++b;
        } else {
            Rational v = std::move(a->second);
            v += s * b->second;
            if (!v.is_zero()) merged.emplace_back(a->first, std::move(v));
            ++a;
            ++b;
        }
    }
    entries_ = std::move(merged);
}

std::string SparseVec::str() const {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (const auto& [c, v] : entries_) {
        if (!first) os << ", ";
        first = false;
        os << c << ": " << v;
    }
    os << '}';
    return os.str();
}

}  // namespace lienil
