#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lienil/rational.hpp"

namespace lienil {

/// Generator set of a Grassmann monomial; bit i-1 stands for e_i.
using GMonomial = std::uint64_t;

constexpr int kMaxGenerators = 64;
/// Marks a slot or element as having an unbounded generator budget (E).
constexpr int kUnbounded = -1;

/// Sign and product of e_S * e_T: 0 if the supports meet, else
/// (-1)^#{(s,t) in S x T : s > t}.
int gmonomial_sign(GMonomial s, GMonomial t);

/// Canonical monomial order: by cardinality, then by numeric value.
struct MonomialLess {
    bool operator()(GMonomial a, GMonomial b) const;
};

std::string monomial_str(GMonomial m, char letter = 'e');

/// Element of E_r (dim = r) or of E (dim = kUnbounded).
class GrassmannElem {
public:
    using Terms = std::map<GMonomial, Rational, MonomialLess>;

    explicit GrassmannElem(int dim = kUnbounded) : dim_(dim) {}
    static GrassmannElem monomial(int dim, GMonomial m, Rational c = Rational(1));
    /// e_i with 1 <= i <= dim.
    static GrassmannElem generator(int dim, int i);
    static GrassmannElem one(int dim) { return monomial(dim, 0); }

    int dim() const { return dim_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Rational coeff(GMonomial m) const;

    void add_term(GMonomial m, const Rational& c);

    GrassmannElem& operator+=(const GrassmannElem& o);
    GrassmannElem& operator-=(const GrassmannElem& o);
    GrassmannElem& operator*=(const Rational& s);
    friend GrassmannElem operator+(GrassmannElem a, const GrassmannElem& b) { return a += b; }
    friend GrassmannElem operator-(GrassmannElem a, const GrassmannElem& b) { return a -= b; }
    friend bool operator==(const GrassmannElem& a, const GrassmannElem& b) {
        return a.dim_ == b.dim_ && a.terms_ == b.terms_;
    }

    std::string str(char letter = 'e') const;

private:
    void check_fits(GMonomial m) const;

    int dim_;
    Terms terms_;
};

GrassmannElem gmul(const GrassmannElem& a, const GrassmannElem& b);
GrassmannElem gcommutator(const GrassmannElem& a, const GrassmannElem& b);

/// Element of an ungraded tensor product E_{r1} x ... x E_{rs}; one generator
/// set per slot, no signs across slots.
class TensorElem {
public:
    using Key = std::vector<GMonomial>;
    using Terms = std::map<Key, Rational>;

    TensorElem() = default;
    explicit TensorElem(std::vector<int> dims) : dims_(std::move(dims)) {}
    static TensorElem pure(std::vector<int> dims, const Key& key, Rational c = Rational(1));
    static TensorElem one(std::vector<int> dims);
    /// Pure tensor of single Grassmann elements, one per slot.
    static TensorElem from_slots(const std::vector<GrassmannElem>& slots);

    const std::vector<int>& dims() const { return dims_; }
    std::size_t slots() const { return dims_.size(); }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Rational coeff(const Key& k) const;

    void add_term(const Key& k, const Rational& c);

    TensorElem& operator+=(const TensorElem& o);
    TensorElem& operator-=(const TensorElem& o);
    TensorElem& operator*=(const Rational& s);
    friend TensorElem operator+(TensorElem a, const TensorElem& b) { return a += b; }
    friend TensorElem operator-(TensorElem a, const TensorElem& b) { return a -= b; }
    friend bool operator==(const TensorElem& a, const TensorElem& b) {
        return a.dims_ == b.dims_ && a.terms_ == b.terms_;
    }

    /// Terms rendered in canonical order, slots lettered e, f, g, ...
    std::string str() const;

private:
    std::vector<int> dims_;
    Terms terms_;
};

TensorElem tmul(const TensorElem& a, const TensorElem& b);
TensorElem tcommutator(const TensorElem& a, const TensorElem& b);

}  // namespace lienil
