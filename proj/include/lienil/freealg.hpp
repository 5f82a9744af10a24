#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "lienil/linalg.hpp"
#include "lienil/rational.hpp"
#include "lienil/sparse.hpp"

namespace lienil {

/// Monomial of the free algebra; letters are variable indices >= 1.
using Word = std::vector<std::uint8_t>;

constexpr int kMaxVariables = 99;
/// Default degree guard for exact multilinear computations.
constexpr int kDefaultMaxDegree = 7;

/// Element of the free associative algebra over the rationals.
class NcPoly {
public:
    using Terms = std::map<Word, Rational>;

    NcPoly() = default;
    static NcPoly var(int i);
    static NcPoly constant(const Rational& c);
    static NcPoly monomial(const Word& w, const Rational& c = Rational(1));

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Rational coeff(const Word& w) const;
    void add_term(const Word& w, const Rational& c);

    /// Largest variable index that occurs, or 0.
    int max_var() const;
    /// True iff every word is a permutation of 1..n for one n.
    bool is_multilinear() const;
    /// Total degree of the first term; -1 for zero.
    int degree() const;

    NcPoly& operator+=(const NcPoly& o);
    NcPoly& operator-=(const NcPoly& o);
    NcPoly& operator*=(const Rational& s);
    NcPoly operator-() const;
    friend NcPoly operator+(NcPoly a, const NcPoly& b) { return a += b; }
    friend NcPoly operator-(NcPoly a, const NcPoly& b) { return a -= b; }
    friend NcPoly operator*(const NcPoly& a, const NcPoly& b);
    friend NcPoly operator*(NcPoly a, const Rational& s) { return a *= s; }
    friend bool operator==(const NcPoly& a, const NcPoly& b) = default;

    /// Renders as a sum of words, e.g. "x1x2 - x2x1".
    std::string str() const;

private:
    Terms terms_;
};

NcPoly commutator(const NcPoly& a, const NcPoly& b);
/// Left-normed [u1, ..., uk]; requires k >= 2.
NcPoly long_commutator(const std::vector<NcPoly>& args);
/// [x1, ..., xq].
NcPoly long_commutator_vars(int q);
/// s_m = sum over S_m of sgn(sigma) x_sigma(1) ... x_sigma(m).
NcPoly standard_poly(int m);
/// The g-families: i in {1,2,3}; odd degrees need j >= 3, even degrees j >= 2.
NcPoly make_g(int i, int degree);
/// NcPoly power.
NcPoly power(const NcPoly& f, int k);

/// Parses the literal grammar: x1..x99, left-normed [a,b,...], products by
/// '*' or juxtaposition, '^k', rational coefficients, '+', '-', parentheses.
NcPoly parse_poly(std::string_view text);

/// Lexicographic rank of a permutation word of 1..n among all n! words.
Col perm_rank(const Word& w);
Word perm_unrank(int n, Col r);
Rational factorial_value(int n);

/// Multilinear polynomial of degree n, stored as coordinates over the
/// permutation words of 1..n in lexicographic order.
class MultilinearPoly {
public:
    MultilinearPoly() = default;
    MultilinearPoly(int n, SparseVec coords) : n_(n), coords_(std::move(coords)) {}
    /// Throws DomainError unless f is multilinear in exactly x1..xn.
    static MultilinearPoly from_poly(const NcPoly& f, int n);

    int degree() const { return n_; }
    const SparseVec& coords() const { return coords_; }
    bool is_zero() const { return coords_.empty(); }
    NcPoly to_poly() const;
    std::string str() const { return to_poly().str(); }

    friend bool operator==(const MultilinearPoly& a, const MultilinearPoly& b) = default;

private:
    int n_ = 0;
    SparseVec coords_;
};

/// Complete multilinearization. Copy 1 of each repeated variable keeps its
/// name; copies 2..d get fresh indices after the largest variable, in order
/// of (variable, copy). Indices are then compressed to 1..n.
MultilinearPoly multilinearize(const NcPoly& f);

/// sigma[i-1] is the image of i; renames x_i to x_sigma(i).
MultilinearPoly sn_act(const std::vector<int>& sigma, const MultilinearPoly& f);

/// Spanning set of I_p ∩ P_n: all u [w1, ..., wp] v over the multilinear
/// words. Enumerated as every permutation word (lex order) cut into
/// u | w1 | ... | wp | v with nonempty w's.
std::vector<MultilinearPoly> ideal_multilinear_span(int p, int n, int max_degree = kDefaultMaxDegree);
/// Spanning set of (I_p I_q) ∩ P_n: a [w1..wp] b [v1..vq] c.
std::vector<MultilinearPoly> product_span(int p, int q, int n, int max_degree = kDefaultMaxDegree);
/// Spanning set of Γ_n: products of left-normed commutators of length >= 2.
std::vector<MultilinearPoly> proper_span(int n, int max_degree = kDefaultMaxDegree);
/// A basis of Γ_n: set partitions into blocks of size >= 2 ordered by their
/// least element, each block a commutator [x_max, x_perm(rest)...].
std::vector<MultilinearPoly> proper_basis(int n, int max_degree = kDefaultMaxDegree);

std::vector<SparseVec> coordinates(const std::vector<MultilinearPoly>& polys);

/// Cached echelon form of I_p ∩ P_n (p is the commutator length).
std::shared_ptr<const Echelon> ideal_echelon(int p, int n, int max_degree = kDefaultMaxDegree);

struct QuotientDims {
    std::size_t c = 0;
    std::size_t gamma = 0;
};

/// c_n and γ_n of the variety N_p, i.e. modulo I_{p+1}.
QuotientDims quotient_dims(int n, int p, int max_degree = kDefaultMaxDegree);

/// Dimension of the S_n-module generated by f modulo I_{p+1} ∩ P_n.
std::size_t module_span_dim(const MultilinearPoly& f, int p, int max_degree = kDefaultMaxDegree);

/// All permutations of 1..n in lexicographic order.
std::vector<std::vector<int>> permutations(int n);
int permutation_sign(const std::vector<int>& p);

}  // namespace lienil
