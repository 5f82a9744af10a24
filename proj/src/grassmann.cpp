#include "lienil/grassmann.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "lienil/errors.hpp"

namespace lienil {

int gmonomial_sign(GMonomial s, GMonomial t) {
    if (s & t) return 0;
    int inv = 0;
    for (GMonomial rest = t; rest; rest &= rest - 1) {
        int bit = std::countr_zero(rest);
        GMonomial above = bit == 63 ? 0 : (~GMonomial{0} << (bit + 1));
        inv += std::popcount(s & above);
    }
    return (inv & 1) ? -1 : 1;
}

bool MonomialLess::operator()(GMonomial a, GMonomial b) const {
    int pa = std::popcount(a), pb = std::popcount(b);
    if (pa != pb) return pa < pb;
    return a < b;
}

std::string monomial_str(GMonomial m, char letter) {
    if (m == 0) return "1";
    std::string out;
    for (GMonomial rest = m; rest; rest &= rest - 1) {
        out += letter;
        out += std::to_string(std::countr_zero(rest) + 1);
    }
    return out;
}

namespace {

std::string coeff_prefix(const Rational& c, bool first, bool unit_monomial) {
    std::string out;
    Rational mag = c;
    if (c.sign() < 0) {
        out = first ? "-" : " - ";
        mag = -c;
    } else if (!first) {
        out = " + ";
    }
    if (unit_monomial) return out + mag.str();
    if (mag != Rational(1)) out += mag.str() + "*";
    return out;
}

}  // namespace

GrassmannElem GrassmannElem::monomial(int dim, GMonomial m, Rational c) {
    GrassmannElem e(dim);
    e.add_term(m, c);
    return e;
}

GrassmannElem GrassmannElem::generator(int dim, int i) {
    if (i < 1 || i > kMaxGenerators || (dim != kUnbounded && i > dim))
        throw DomainError("Grassmann generator e" + std::to_string(i) + " out of range");
    return monomial(dim, GMonomial{1} << (i - 1));
}

void GrassmannElem::check_fits(GMonomial m) const {
    if (dim_ != kUnbounded && dim_ < 64 && (m >> dim_) != 0)
        throw DimensionMismatch("Grassmann monomial exceeds E_" + std::to_string(dim_));
}

Rational GrassmannElem::coeff(GMonomial m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

void GrassmannElem::add_term(GMonomial m, const Rational& c) {
    if (c.is_zero()) return;
    check_fits(m);
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

GrassmannElem& GrassmannElem::operator+=(const GrassmannElem& o) {
    if (dim_ != o.dim_) throw DimensionMismatch("Grassmann elements of different dimension");
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

GrassmannElem& GrassmannElem::operator-=(const GrassmannElem& o) {
    if (dim_ != o.dim_) throw DimensionMismatch("Grassmann elements of different dimension");
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

GrassmannElem& GrassmannElem::operator*=(const Rational& s) {
    if (s.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
}

std::string GrassmannElem::str(char letter) const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        out += coeff_prefix(c, first, m == 0);
        if (m != 0) out += monomial_str(m, letter);
        first = false;
    }
    return out;
}

GrassmannElem gmul(const GrassmannElem& a, const GrassmannElem& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("gmul: dimension mismatch");
    GrassmannElem out(a.dim());
    for (const auto& [s, x] : a.terms()) {
        for (const auto& [t, y] : b.terms()) {
            int sg = gmonomial_sign(s, t);
            if (sg == 0) continue;
            Rational c = x * y;
            if (sg < 0) c = -c;
            out.add_term(s | t, c);
        }
    }
    return out;
}

GrassmannElem gcommutator(const GrassmannElem& a, const GrassmannElem& b) {
    return gmul(a, b) - gmul(b, a);
}

TensorElem TensorElem::pure(std::vector<int> dims, const Key& key, Rational c) {
    if (key.size() != dims.size()) throw DimensionMismatch("tensor key has wrong slot count");
    TensorElem t(std::move(dims));
    t.add_term(key, c);
    return t;
}

TensorElem TensorElem::one(std::vector<int> dims) {
    Key k(dims.size(), 0);
    return pure(std::move(dims), k);
}

TensorElem TensorElem::from_slots(const std::vector<GrassmannElem>& slots) {
    std::vector<int> dims;
    for (const auto& g : slots) dims.push_back(g.dim());
    TensorElem acc = one(dims);
    for (std::size_t j = 0; j < slots.size(); ++j) {
        TensorElem next(dims);
        for (const auto& [k, c] : acc.terms()) {
            for (const auto& [m, x] : slots[j].terms()) {
                Key key = k;
                key[j] = m;
                next.add_term(key, c * x);
            }
        }
        acc = std::move(next);
    }
    return acc;
}

Rational TensorElem::coeff(const Key& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? Rational(0) : it->second;
}

void TensorElem::add_term(const Key& k, const Rational& c) {
    if (c.is_zero()) return;
    if (k.size() != dims_.size()) throw DimensionMismatch("tensor key has wrong slot count");
    for (std::size_t j = 0; j < k.size(); ++j) {
        if (dims_[j] != kUnbounded && dims_[j] < 64 && (k[j] >> dims_[j]) != 0)
            throw DimensionMismatch("tensor monomial exceeds slot capacity");
    }
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

TensorElem& TensorElem::operator+=(const TensorElem& o) {
    if (dims_ != o.dims_) throw DimensionMismatch("tensor elements of different shape");
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
}

TensorElem& TensorElem::operator-=(const TensorElem& o) {
    if (dims_ != o.dims_) throw DimensionMismatch("tensor elements of different shape");
    for (const auto& [k, c] : o.terms_) add_term(k, -c);
    return *this;
}

TensorElem& TensorElem::operator*=(const Rational& s) {
    if (s.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [k, c] : terms_) c *= s;
    return *this;
}

std::string TensorElem::str() const {
    if (terms_.empty()) return "0";
    // Render in canonical monomial order slot by slot.
    std::vector<std::pair<Key, Rational>> sorted(terms_.begin(), terms_.end());
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
        MonomialLess less;
        for (std::size_t j = 0; j < a.first.size(); ++j) {
            if (a.first[j] != b.first[j]) return less(a.first[j], b.first[j]);
        }
        return false;
    });
    static const std::string letters = "efghijklmnopqrstuvwxyzabcd";
    std::string out;
    bool first = true;
    for (const auto& [k, c] : sorted) {
        bool unit = std::all_of(k.begin(), k.end(), [](GMonomial m) { return m == 0; });
        out += coeff_prefix(c, first, unit);
        first = false;
        if (unit) continue;
        for (std::size_t j = 0; j < k.size(); ++j) {
            if (j) out += " ⊗ ";
            out += monomial_str(k[j], letters[j % letters.size()]);
        }
    }
    return out;
}

TensorElem tmul(const TensorElem& a, const TensorElem& b) {
    if (a.dims() != b.dims()) throw DimensionMismatch("tmul: shape mismatch");
    TensorElem out(a.dims());
    const std::size_t s = a.slots();
    TensorElem::Key key(s);
    for (const auto& [ka, x] : a.terms()) {
        for (const auto& [kb, y] : b.terms()) {
            int sg = 1;
            for (std::size_t j = 0; j < s && sg; ++j) {
                sg *= gmonomial_sign(ka[j], kb[j]);
                key[j] = ka[j] | kb[j];
            }
            if (sg == 0) continue;
            Rational c = x * y;
            if (sg < 0) c = -c;
            out.add_term(key, c);
        }
    }
    return out;
}

TensorElem tcommutator(const TensorElem& a, const TensorElem& b) { return tmul(a, b) - tmul(b, a); }

}  // namespace lienil
