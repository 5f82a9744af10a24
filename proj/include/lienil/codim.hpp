#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "lienil/rational.hpp"

namespace lienil {

/// Dense polynomial in one variable over Q, coefficients by degree.
class QPoly {
public:
    QPoly() = default;
    explicit QPoly(std::vector<Rational> coeffs);
    static QPoly constant(const Rational& c);
    /// a*x + b
    static QPoly linear(const Rational& a, const Rational& b);

    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational coeff(int d) const;
    Rational lead() const { return c_.empty() ? Rational(0) : c_.back(); }
    Rational operator()(const Rational& x) const;

    QPoly& operator+=(const QPoly& o);
    QPoly& operator*=(const QPoly& o);
    friend QPoly operator+(QPoly a, const QPoly& b) { return a += b; }
    friend QPoly operator*(QPoly a, const QPoly& b) { return a *= b; }
    QPoly scaled(const Rational& s) const;
    /// p(a*x + b).
    QPoly compose_linear(const Rational& a, const Rational& b) const;
    /// Exact division by (a*x + b); throws InternalError on a nonzero remainder.
    QPoly divide_linear(const Rational& a, const Rational& b) const;

    /// "5/24*n^4 + ... - 1"; "0" for the zero polynomial.
    std::string str(const std::string& var = "n") const;
    friend bool operator==(const QPoly&, const QPoly&) = default;

private:
    void trim();
    std::vector<Rational> c_;
};

/// r(n)·2^n + s(n).
struct QuasiPoly {
    QPoly r;
    QPoly s;
    Rational operator()(int n) const;
    /// {"r": ["...", ...], "s": [...]}, coefficients by degree as strings.
    std::string to_json() const;
    std::string str() const;
};

using Sequence = std::function<Rational(int)>;

/// Σ_{l=0}^n binom(n,l) γ_l.
Rational binom_transform(const Sequence& gamma, int n);

Rational catalan(int k);

/// dim Γ_n, from the rank of a spanning set of the proper space (n <= 7).
Rational proper_dim(int n);

enum class Parity { Odd, Even };

/// dim M_{i,l}^{(j)} for j = 2n-2l-1 (odd) or 2n-2l (even), by the closed
/// product formula. Throws DomainError outside its range.
Rational m_il_dim(int i, int l, int n, Parity parity);
/// The same as a polynomial in n.
QPoly m_il_poly(int i, int l, Parity parity);
/// Partition whose hook dimension m_il_dim gives (degree j + 2l).
std::vector<int> m_il_partition(int i, int l, int n, Parity parity);
/// Smallest n where every term of the bound is defined: k+1 (odd), k (even).
int bound_poly_start(int k, Parity parity);

/// A_k (odd) or B_k (even, including the +1 for the standard polynomial),
/// polynomials in n bounding γ at degree 2n-1 resp. 2n.
QPoly bound_poly(int k, Parity parity);

/// γ-type sequence: explicit values below the threshold, a polynomial after.
struct BoundSpec {
    int k = 0;
    std::vector<Rational> head_values;
    QPoly tail_poly;

    int threshold() const { return static_cast<int>(head_values.size()); }
    Rational operator()(int n) const;
    Sequence sequence() const;
};

/// How the polynomial of the γ bound is read as a function of the degree.
enum class BoundVariable {
    /// p_k(N) = A_k(N): the half-degree polynomial used verbatim in the
    /// degree variable, as in the codimension corollary's proof.
    Verbatim,
    /// p_k(N) = A_k((N+1)/2): the odd-degree bound rewritten in the degree.
    Degree,
};

/// Head dim Γ_N for N < 2k, tail from A_k.
BoundSpec codim_bound_spec(int k, BoundVariable variable = BoundVariable::Verbatim);

/// Fits r (degree deg_r) and s (degree deg_s) to values at n = start, ...
/// using deg_r + deg_s + 3 points and checks as many further points.
/// Throws InternalError if the held-out points disagree.
QuasiPoly fit_quasi_poly(const Sequence& values, int deg_r, int deg_s, int start = 0);

/// Closed form of binom_transform(spec) as r(n)2^n + s(n), with deg r equal to
/// the tail degree and deg s below max(tail degree + 2, threshold).
QuasiPoly closed_form(const BoundSpec& spec);

struct CombinedLeads {
    Rational gamma_lead;
    Rational codim_lead;
};

/// Leading coefficients of the combined γ and codimension bounds for k >= 4:
/// the E⊗E_{2k-2} contribution added to bound_poly's and closed_form's leads.
CombinedLeads combined_bounds(int k);

/// CSV lines "n,lower_bound,closed_form" for n = 0..n_max.
std::string bounds_csv(const BoundSpec& spec, int n_max);

}  // namespace lienil
