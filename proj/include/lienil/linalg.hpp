#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "lienil/sparse.hpp"

namespace lienil {

/// Incremental reduced row echelon form over the rationals.
///
/// Rows are kept fully reduced with pivot entry 1, so reducing a vector costs
/// one pass over its support. Pivots are chosen among columns below
/// `pivot_limit`; columns at or above it ride along, which lets a caller
/// track how each stored row was assembled from its inputs.
class Echelon {
public:
    static constexpr Col kNoLimit = std::numeric_limits<Col>::max();

    explicit Echelon(Col pivot_limit = kNoLimit) : pivot_limit_(pivot_limit) {}

    /// Adds v to the span; returns true iff the rank grew.
    bool add(const SparseVec& v);
    /// Remainder of v after elimination against the stored rows.
    SparseVec reduce(const SparseVec& v) const;
    /// True iff v reduces to zero on the pivot-eligible columns.
    bool contains(const SparseVec& v) const;

    std::size_t rank() const { return rows_.size(); }
    const std::vector<SparseVec>& rows() const { return rows_; }
    /// Pivot column of each stored row, in insertion order.
    const std::vector<Col>& pivots() const { return pivots_; }
    /// Index of the row pivoting on column c, or -1.
    long row_of_pivot(Col c) const {
        return c < pivot_row_.size() ? pivot_row_[c] : -1;
    }

private:
    Col pivot_limit_;
    Col extent_ = 0;
    std::vector<SparseVec> rows_;
    std::vector<Col> pivots_;
    std::vector<long> pivot_row_;
};

/// Rank of the span of rows. Exact; a modular rank is used only as a
/// certificate when it already equals the trivial upper bound.
std::size_t rank(const std::vector<SparseVec>& rows);

/// True iff v lies in the rational span of rows.
bool in_span(const SparseVec& v, const std::vector<SparseVec>& rows);

/// Rank over Z/pZ for p = 2^61 - 1. A lower bound for the rational rank.
std::size_t modular_rank(const std::vector<SparseVec>& rows);

/// rank(A ∪ B) - rank(B): dimension of span(A) modulo span(B).
std::size_t quotient_rank(const std::vector<SparseVec>& a, const std::vector<SparseVec>& b);

}  // namespace lienil
