#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lienil/freealg.hpp"
#include "lienil/grassmann.hpp"
#include "lienil/sparse.hpp"

namespace lienil {

constexpr std::size_t kDefaultMaxDim = 4096;

class FiniteAlgebra;

/// Element of a FiniteAlgebra: coordinates over its basis, tagged with the
/// owning algebra so that mixing algebras is detected.
struct AlgElem {
    std::uint64_t algebra_id = 0;
    SparseVec coords;

    bool is_zero() const { return coords.empty(); }
    friend bool operator==(const AlgElem& a, const AlgElem& b) = default;
};

/// Finite-dimensional unital associative algebra given by structure constants.
class FiniteAlgebra {
public:
    /// table[i * dim + j] = basis_i * basis_j. Validates unit and
    /// associativity (exhaustively up to dimension 64, else on random triples).
    FiniteAlgebra(std::vector<std::string> labels, std::size_t unit, std::vector<SparseVec> table,
                  std::size_t max_dim = kDefaultMaxDim);

    std::uint64_t id() const { return id_; }
    std::size_t dim() const { return labels_.size(); }
    std::size_t unit_index() const { return unit_; }
    const std::vector<std::string>& labels() const { return labels_; }
    const SparseVec& mul_basis(std::size_t i, std::size_t j) const { return table_[i * dim() + j]; }

    /// True when every basis product is zero or an integer multiple of one
    /// basis element; then mono_target/mono_coeff describe the table.
    bool is_monomial() const { return monomial_; }
    std::int32_t mono_target(std::size_t i, std::size_t j) const { return mono_target_[i * dim() + j]; }
    std::int64_t mono_coeff(std::size_t i, std::size_t j) const { return mono_coeff_[i * dim() + j]; }

    AlgElem zero() const { return AlgElem{id_, {}}; }
    AlgElem one() const { return basis(unit_); }
    AlgElem basis(std::size_t i) const;
    /// Basis element by label, e.g. "e1e2 ⊗ f1".
    AlgElem basis(const std::string& label) const;
    AlgElem element(SparseVec coords) const;

    AlgElem mul(const AlgElem& a, const AlgElem& b) const;
    AlgElem add(const AlgElem& a, const AlgElem& b) const;
    AlgElem scale(const AlgElem& a, const Rational& s) const;
    AlgElem commutator(const AlgElem& a, const AlgElem& b) const;

    std::string str(const AlgElem& a) const;

    /// Present for algebras built from Grassmann pieces: per slot capacity
    /// and per basis element the generator set used in each slot.
    bool has_grassmann_slots() const { return !slot_dims_.empty(); }
    const std::vector<int>& slot_dims() const { return slot_dims_; }
    const std::vector<GMonomial>& slot_support(std::size_t i) const { return supports_[i]; }
    /// Basis index of a pure tensor of monomials; requires Grassmann slots.
    std::size_t index_of(const std::vector<GMonomial>& key) const;
    /// Conversions between AlgElem and TensorElem for Grassmann-built algebras.
    TensorElem to_tensor(const AlgElem& a) const;
    AlgElem from_tensor(const TensorElem& t) const;

    /// Checks associativity on all triples or on `samples` random ones.
    bool check_associative(std::size_t exhaustive_limit = 64, std::size_t samples = 10000) const;

    void set_grassmann_slots(std::vector<int> dims, std::vector<std::vector<GMonomial>> supports);

private:
    void check_same(const AlgElem& a) const;

    std::uint64_t id_;
    std::vector<std::string> labels_;
    std::size_t unit_;
    std::vector<SparseVec> table_;
    std::map<std::string, std::size_t> label_index_;
    bool monomial_ = false;
    std::vector<std::int32_t> mono_target_;
    std::vector<std::int64_t> mono_coeff_;
    std::vector<int> slot_dims_;
    std::vector<std::vector<GMonomial>> supports_;
    std::map<std::vector<GMonomial>, std::size_t> key_index_;
};

using AlgebraPtr = std::shared_ptr<const FiniteAlgebra>;

/// E_r with basis in canonical monomial order; 2 <= r <= 24.
AlgebraPtr make_grassmann(int r, std::size_t max_dim = kDefaultMaxDim);
/// N_k = span{I, J, ..., J^{k-2}, e12, ..., e1k} inside k x k matrices.
AlgebraPtr make_nk(int k);
/// Ungraded tensor product; basis tuples with the first factor most significant.
AlgebraPtr tensor(const std::vector<AlgebraPtr>& factors, std::size_t max_dim = kDefaultMaxDim);

/// JSON structure-constant files:
/// {"basis": [names], "unit": idx, "table": [[i, j, [[k, "num/den"], ...]], ...]}
AlgebraPtr load_algebra_json(const std::string& path, std::size_t max_dim = kDefaultMaxDim);
AlgebraPtr parse_algebra_json(const std::string& text, std::size_t max_dim = kDefaultMaxDim);
std::string algebra_to_json(const FiniteAlgebra& a);

/// Substitutes args[i-1] for x_i and expands exactly. Words sharing a prefix
/// share the partial product.
AlgElem evaluate(const NcPoly& f, const std::vector<AlgElem>& args, const FiniteAlgebra& a);
/// Same over a Grassmann tensor product represented by bit sets.
TensorElem evaluate(const NcPoly& f, const std::vector<TensorElem>& args);

}  // namespace lienil
