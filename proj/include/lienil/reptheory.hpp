#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lienil/rational.hpp"

namespace lienil {

/// A partition of n: weakly decreasing positive parts.
class Partition {
public:
    Partition() = default;
    /// Throws DomainError unless the parts are positive and weakly decreasing.
    explicit Partition(std::vector<int> parts);
    /// (a, 2^b, 1^c) style builder: head followed by `twos` twos and `ones` ones.
    static Partition hook_like(int head, int twos, int ones);
    static Partition column(int n);

    const std::vector<int>& parts() const { return parts_; }
    int n() const { return n_; }
    int length() const { return static_cast<int>(parts_.size()); }
    /// Part i (0-based), 0 beyond the length.
    int part(int i) const { return i < length() ? parts_[i] : 0; }
    Partition conjugate() const;
    /// Hook length of cell (i, j), 0-based.
    int hook(int i, int j) const;
    /// "(3,1,1)"; the empty partition renders "()".
    std::string str() const;

    friend auto operator<=>(const Partition&, const Partition&) = default;
    friend bool operator==(const Partition&, const Partition&) = default;

private:
    std::vector<int> parts_;
    int n_ = 0;
};

/// Partitions of n, in reverse lexicographic order starting with (n).
std::vector<Partition> partitions(int n);

/// dim M(λ) by the hook formula.
Rational hook_dim(const Partition& lambda);

/// χ_λ on the class of cycle type μ (Murnaghan–Nakayama).
std::int64_t mn_character(const Partition& lambda, const Partition& mu);

/// Number of permutations of cycle type μ.
Rational class_size(const Partition& mu);

/// Permutation of cycle type μ with cycles (1..μ1)(μ1+1..μ1+μ2)...; entry
/// i-1 is the image of i.
std::vector<int> class_representative(const Partition& mu);

struct Decomposition {
    std::vector<std::pair<Partition, std::size_t>> terms;

    /// Σ m_λ dim M(λ).
    Rational total_dim() const;
    std::size_t multiplicity(const Partition& lambda) const;
    bool contains(const Partition& lambda) const { return multiplicity(lambda) > 0; }
    /// "M(2,2) + 2M(3,1)" style; "0" when empty.
    std::string str() const;
    /// [{"partition":"(2,2)","multiplicity":1,"dim":2}, ...]
    std::string to_json() const;
};

constexpr int kDecomposeMaxDegree = 6;

/// S_n-decomposition of Γ_n(N_p) = Γ_n / (Γ_n ∩ I_{p+1}), from traces of
/// class representatives on a basis of the quotient.
Decomposition decompose_quotient(int n, int p, int max_degree = kDecomposeMaxDegree);

/// Γ_n(E⊗E_{2l}).
Decomposition did_gamma(int n, int l);
/// Γ_n(E_{2m}⊗E_{2l}), m >= l >= 1.
Decomposition did_gamma_finite(int n, int m, int l);

/// Partitions guaranteed in Γ_n(N_p). The sign module enters for even n by
/// default; literal_sign_parity = true follows the odd-n wording instead.
std::vector<Partition> intro_partitions(int n, int p, bool literal_sign_parity = false);

}  // namespace lienil
