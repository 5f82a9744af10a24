#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lienil/rational.hpp"

namespace lienil {

using Col = std::uint32_t;

/// Sparse row vector over the rationals: entries sorted by column, no zeros.
class SparseVec {
public:
    using Entry = std::pair<Col, Rational>;

    SparseVec() = default;
    /// Builds from arbitrary (column, value) pairs; duplicates are summed.
    static SparseVec from_pairs(std::vector<Entry> pairs);
    static SparseVec unit(Col c, Rational v = Rational(1));

    const std::vector<Entry>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }
    Rational at(Col c) const;
    /// One past the largest column in use, or 0.
    Col extent() const { return entries_.empty() ? 0 : entries_.back().first + 1; }

    /// Appends an entry whose column exceeds every stored column.
    void push_back(Col c, Rational v);

    SparseVec& operator*=(const Rational& s);
    SparseVec operator-() const;
    /// this += s * o.
    void axpy(const Rational& s, const SparseVec& o);

    friend SparseVec operator+(SparseVec a, const SparseVec& b) {
        a.axpy(Rational(1), b);
        return a;
    }
    friend SparseVec operator-(SparseVec a, const SparseVec& b) {
        a.axpy(Rational(-1), b);
        return a;
    }
    friend bool operator==(const SparseVec& a, const SparseVec& b) = default;

    std::string str() const;

private:
    std::vector<Entry> entries_;
};

}  // namespace lienil
