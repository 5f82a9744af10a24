#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lienil/algebras.hpp"
#include "lienil/freealg.hpp"
#include "lienil/grassmann.hpp"

namespace lienil {

/// One tensor factor of an algebra specification.
struct SlotSpec {
    enum class Kind { Grassmann, Nil, File };
    Kind kind = Kind::Grassmann;
    /// Grassmann rank (kUnbounded for E) or the k of N_k.
    int param = kUnbounded;
    std::string path;

    bool is_grassmann() const { return kind == Kind::Grassmann; }
    bool is_unbounded() const { return kind == Kind::Grassmann && param == kUnbounded; }
    std::string str() const;
    friend bool operator==(const SlotSpec&, const SlotSpec&) = default;
};

/// Tensor product of slots, e.g. "E*E2*E2", "N4*N3", "E2^3", "@table.json".
struct AlgebraSpec {
    std::vector<SlotSpec> slots;

    /// Grammar: slot ('*' | '⊗') slot ...; slot is E, E<r>, N<k>, or @path,
    /// optionally followed by ^count. Whitespace is ignored.
    static AlgebraSpec parse(const std::string& text);
    std::string str() const;

    bool all_grassmann() const;
    bool all_bounded() const;
    /// Per-slot Grassmann capacities (kUnbounded for E); requires all_grassmann.
    std::vector<int> capacities() const;
    /// Structure-constant form; throws DomainError for an E slot.
    AlgebraPtr materialize(std::size_t max_dim = kDefaultMaxDim) const;
};

/// Parity pattern: for each slot a bit mask of the variables that receive an
/// odd generator there (bit a-1 for x_a); all other entries are the unit.
using ParityPattern = std::vector<std::uint32_t>;

struct Witness {
    /// Set for parity-checker witnesses.
    ParityPattern pattern;
    /// Set for brute-force witnesses: basis index per variable.
    std::vector<std::size_t> basis_tuple;
    /// Grassmann-slot witnesses carry tensor arguments and value.
    std::vector<TensorElem> tensor_args;
    TensorElem tensor_value;
    /// Structure-constant witnesses carry algebra elements.
    std::vector<AlgElem> alg_args;
    AlgElem alg_value;
    std::vector<std::string> arg_strings;
    std::string value_string;
};

struct IdentityVerdict {
    bool is_identity = true;
    std::optional<Witness> witness;
};

/// Sign sum S(P) of f under the pattern; f vanishes on every substitution of
/// the pattern's shape iff this is zero.
Rational pattern_value(const MultilinearPoly& f, const ParityPattern& pattern);

/// Canonical substitution for a pattern: x_a gets, in each slot where it is
/// odd, the next unused generator (in variable order), else the unit.
Witness materialize_pattern(const MultilinearPoly& f, const ParityPattern& pattern, const AlgebraSpec& spec);

/// Identity test for tensor products of Grassmann algebras (E slots allowed).
/// Patterns are visited in canonical order: slot masks compared
/// lexicographically slot by slot, each mask by numeric value; the first
/// pattern with nonzero sign sum is materialized as the witness.
IdentityVerdict parity_check(const MultilinearPoly& f, const AlgebraSpec& spec, unsigned threads = 1);

constexpr double kBruteGuard = 1e9;

/// Exhaustive evaluation on basis tuples, skipping tuples whose Grassmann
/// supports overlap. The witness is the lexicographically least nonvanishing
/// tuple.
IdentityVerdict brute_check(const MultilinearPoly& f, const FiniteAlgebra& a, unsigned threads = 1);

/// Chooses parity_check for Grassmann-only specs, else brute_check.
IdentityVerdict check_identity(const MultilinearPoly& f, const AlgebraSpec& spec, unsigned threads = 1,
                               std::size_t max_dim = kDefaultMaxDim);

/// Upper bound for the Lie nilpotency index guaranteed by known results, when
/// the spec has a recognizable shape.
std::optional<int> default_cap(const AlgebraSpec& spec);

/// Least q with [x1, ..., xq] an identity, searching q = 2..cap. Throws
/// CapExceeded when no such q <= cap exists (no claim about nilpotency).
int min_index(const AlgebraSpec& spec, std::optional<int> cap = std::nullopt, unsigned threads = 1,
              std::size_t max_dim = kDefaultMaxDim);

/// Rank of the evaluation map on span(polys) over the algebra, i.e. the
/// dimension of span(polys) modulo the identities of the algebra.
std::size_t evaluation_rank(const std::vector<MultilinearPoly>& polys, const AlgebraSpec& spec,
                            std::size_t max_dim = kDefaultMaxDim);
std::size_t evaluation_rank(const std::vector<MultilinearPoly>& polys, const FiniteAlgebra& a);
/// γ_n of the algebra computed from evaluations of a basis of Γ_n.
std::size_t gamma_by_evaluation(int n, const AlgebraSpec& spec, std::size_t max_dim = kDefaultMaxDim);
std::size_t gamma_by_evaluation(int n, const FiniteAlgebra& a);

/// Named substitutions for Grassmann tensor products.
namespace recipes {
/// e1⊗1, e2⊗f1, ..., e_{2k}⊗f_{2k-1}, 1⊗f_{2k} in E_{2k}⊗E_{2k}.
std::vector<TensorElem> equal_pair(int k);
/// a_1, ..., a_{2k+2} in E⊗E_2^{⊗k}: e_1 and e_{2k+2} alone, e_{2i}⊗f1 and
/// e_{2i+1}⊗f2 with f in slot i+1.
std::vector<TensorElem> e_times_e2(int k);
/// x_s = sum over slots of e_s placed in that slot, s = 1..vars, in E_r^{⊗slots}.
std::vector<TensorElem> slot_sums(int slots, int vars, int r = 2);
/// Substitutions into E⊗E_2^{⊗(k-1)} for the g-family modules; variant 1 is
/// the main one, 2 serves g_2 in even degree, 3 serves g_2 in odd degree, 4
/// serves g_3 in even degree. nvars arguments are produced.
std::vector<TensorElem> g_family(int variant, int k, int nvars);
}  // namespace recipes

/// Evaluates f exactly on the given tensor arguments; errors on arity mismatch.
TensorElem product_nonidentity_witness(const NcPoly& f, const std::vector<TensorElem>& args);

/// JSON rendering of a verdict (pattern masks as 0/1 matrix, witness strings).
std::string verdict_to_json(const IdentityVerdict& v, const MultilinearPoly& f, const AlgebraSpec& spec);

}  // namespace lienil
