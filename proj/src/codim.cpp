#include "lienil/codim.hpp"

#include <array>
#include <mutex>
#include <optional>
#include <sstream>

#include "json.hpp"

#include "lienil/errors.hpp"
#include "lienil/freealg.hpp"
#include "lienil/linalg.hpp"

namespace lienil {

QPoly::QPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

QPoly QPoly::constant(const Rational& c) { return QPoly({c}); }

QPoly QPoly::linear(const Rational& a, const Rational& b) { return QPoly({b, a}); }

void QPoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Rational QPoly::coeff(int d) const {
    return d >= 0 && d < static_cast<int>(c_.size()) ? c_[d] : Rational(0);
}

Rational QPoly::operator()(const Rational& x) const {
    Rational v(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * x + *it;
    return v;
}

QPoly& QPoly::operator+=(const QPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

QPoly& QPoly::operator*=(const QPoly& o) {
    if (is_zero() || o.is_zero()) {
        c_.clear();
        return *this;
    }
    std::vector<Rational> out(c_.size() + o.c_.size() - 1);
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < o.c_.size(); ++j) out[i + j] += c_[i] * o.c_[j];
    c_ = std::move(out);
    trim();
    return *this;
}

QPoly QPoly::scaled(const Rational& s) const {
    std::vector<Rational> out = c_;
    for (auto& x : out) x *= s;
    return QPoly(std::move(out));
}

QPoly QPoly::compose_linear(const Rational& a, const Rational& b) const {
    QPoly out, pw = QPoly::constant(1);
    const QPoly lin = QPoly::linear(a, b);
    for (const auto& c : c_) {
        out += pw.scaled(c);
        pw *= lin;
    }
    return out;
}

QPoly QPoly::divide_linear(const Rational& a, const Rational& b) const {
    if (a.is_zero()) throw DomainError("division by a constant linear factor");
    if (is_zero()) return {};
    // synthetic division by x - root, then rescale by 1/a
    const Rational root = -b / a;
    std::vector<Rational> q(c_.size() - 1);
    Rational carry(0);
    for (int d = degree(); d >= 1; --d) {
        carry = carry * root + c_[d];
        q[d - 1] = carry;
    }
    if (!(carry * root + c_[0]).is_zero()) throw InternalError("polynomial not divisible by the linear factor");
    return QPoly(std::move(q)).scaled(Rational(1) / a);
}

std::string QPoly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::string s;
    for (int d = degree(); d >= 0; --d) {
        const Rational& c = c_[d];
        if (c.is_zero()) continue;
        const bool neg = c.sign() < 0;
        if (s.empty()) {
            if (neg) s += "-";
        } else {
            s += neg ? " - " : " + ";
        }
        const Rational a = c.abs();
        if (d == 0) {
            s += a.str();
            continue;
        }
        if (a != Rational(1)) s += a.str() + "*";
        s += var;
        if (d > 1) s += "^" + std::to_string(d);
    }
    return s;
}

Rational QuasiPoly::operator()(int n) const { return r(Rational(n)) * pow2(n) + s(Rational(n)); }

std::string QuasiPoly::to_json() const {
    auto arr = [](const QPoly& p) {
        nlohmann::json a = nlohmann::json::array();
        for (const auto& c : p.coeffs()) a.push_back(c.str());
        return a;
    };
    return nlohmann::json{{"r", arr(r)}, {"s", arr(s)}}.dump();
}

std::string QuasiPoly::str() const { return "2^n*(" + r.str() + ") + (" + s.str() + ")"; }

Rational binom_transform(const Sequence& gamma, int n) {
    if (n < 0) throw DomainError("binom_transform needs n >= 0");
    Rational c(0);
    for (int l = 0; l <= n; ++l) c += binomial(n, l) * gamma(l);
    return c;
}

Rational catalan(int k) {
    if (k < 0) throw DomainError("catalan needs k >= 0");
    return binomial(2 * k, k) / Rational(k + 1);
}

Rational proper_dim(int n) {
    if (n < 0) throw DomainError("proper_dim needs n >= 0");
    if (n > kDefaultMaxDegree) throw SizeGuard("proper_dim: degree " + std::to_string(n) + " is too large");
    static std::mutex mu;
    static std::array<std::optional<Rational>, kDefaultMaxDegree + 1> cache;
    std::lock_guard lock(mu);
    if (!cache[n]) {
        // the full spanning set is used where it is cheap, the basis beyond
        auto polys = n <= 6 ? proper_span(n) : proper_basis(n);
        cache[n] = Rational(static_cast<std::int64_t>(rank(coordinates(polys))));
    }
    return *cache[n];
}

namespace {

struct MilFormula {
    int top;     // (2n - top)! in the numerator
    int bottom;  // (2n - bottom)! in the denominator
    int d1, d2;  // (2n - d1)(2n - d2) in the denominator
    Rational c;
};

MilFormula mil_formula(int i, int l, Parity parity) {
    if (i < 1 || i > 3 || l < 0) throw DomainError("m_il needs i in 1..3 and l >= 0");
    const Rational f2 = factorial(l + 2), f3 = factorial(l + 3), fl = factorial(l), fl1 = factorial(l + 1);
    if (parity == Parity::Odd) {
        switch (i) {
            case 1: return {1, 2 * l + 5, l + 1, l + 4, Rational(3) / (f3 * fl)};
            case 2: return {1, 2 * l + 5, l + 2, l + 3, Rational(1) / (f2 * fl1)};
            default: return {1, 2 * l + 4, l + 1, l + 3, Rational(2) / (f2 * fl)};
        }
    }
    switch (i) {
        case 1: return {0, 2 * l + 4, l, l + 3, Rational(3) / (f3 * fl)};
        case 2: return {0, 2 * l + 4, l + 1, l + 2, Rational(1) / (f2 * fl1)};
        default: return {0, 2 * l + 3, l, l + 2, Rational(2) / (f2 * fl)};
    }
}

Rational derangements(int n) {
    Rational a(1), b(0);  // D_0, D_1
    if (n == 0) return a;
    for (int m = 2; m <= n; ++m) {
        Rational next = Rational(m - 1) * (a + b);
        a = b;
        b = next;
    }
    return b;
}

}  // namespace

Rational m_il_dim(int i, int l, int n, Parity parity) {
    const MilFormula f = mil_formula(i, l, parity);
    const int top = 2 * n - f.top, bottom = 2 * n - f.bottom;
    if (bottom < 0 || 2 * n - f.d1 == 0 || 2 * n - f.d2 == 0)
        throw DomainError("m_il_dim: n = " + std::to_string(n) + " is outside the formula's range");
    return f.c * factorial(top) / (factorial(bottom) * Rational(2 * n - f.d1) * Rational(2 * n - f.d2));
}

QPoly m_il_poly(int i, int l, Parity parity) {
    const MilFormula f = mil_formula(i, l, parity);
    QPoly p = QPoly::constant(f.c);
    for (int t = f.top; t < f.bottom; ++t) p *= QPoly::linear(2, -t);
    return p.divide_linear(2, -f.d1).divide_linear(2, -f.d2);
}

std::vector<int> m_il_partition(int i, int l, int n, Parity parity) {
    const int j = parity == Parity::Odd ? 2 * n - 2 * l - 1 : 2 * n - 2 * l;
    std::vector<int> p;
    int ones = 0;
    switch (i) {
        case 1: p = {l + 3, l + 1}, ones = j - 4; break;
        case 2: p = {l + 2, l + 2}, ones = j - 4; break;
        case 3: p = {l + 2, l + 1}, ones = j - 3; break;
        default: throw DomainError("m_il needs i in 1..3");
    }
    if (ones < 0) throw DomainError("m_il_partition: degree too small");
    p.insert(p.end(), ones, 1);
    return p;
}

int bound_poly_start(int k, Parity parity) { return parity == Parity::Odd ? k + 1 : k; }

QPoly bound_poly(int k, Parity parity) {
    if (k < 2) throw DomainError("bound_poly needs k >= 2");
    QPoly sum;
    for (int l = 0; l <= k - 2; ++l)
        for (int i = 1; i <= 3; ++i) sum += m_il_poly(i, l, parity);
    if (parity == Parity::Even) sum += QPoly::constant(1);
    return sum;
}

Rational BoundSpec::operator()(int n) const {
    if (n < 0) throw DomainError("sequence index must be >= 0");
    return n < threshold() ? head_values[n] : tail_poly(Rational(n));
}

Sequence BoundSpec::sequence() const {
    return [spec = *this](int n) { return spec(n); };
}

BoundSpec codim_bound_spec(int k, BoundVariable variable) {
    if (k < 2) throw DomainError("codim_bound_spec needs k >= 2");
    BoundSpec spec;
    spec.k = k;
    for (int n = 0; n < 2 * k; ++n) spec.head_values.push_back(n <= kDefaultMaxDegree ? proper_dim(n) : derangements(n));
    const QPoly a = bound_poly(k, Parity::Odd);
    spec.tail_poly = variable == BoundVariable::Verbatim ? a : a.compose_linear(Rational(1, 2), Rational(1, 2));
    return spec;
}

QuasiPoly fit_quasi_poly(const Sequence& values, int deg_r, int deg_s, int start) {
    if (deg_r < -1 || deg_s < -1) throw DomainError("fit_quasi_poly: degrees must be >= -1");
    const int u = (deg_r + 1) + (deg_s + 1);
    const Col rhs = static_cast<Col>(u);
    auto row = [&](int n) {
        std::vector<SparseVec::Entry> e;
        Rational x(n), pw(1);
        const Rational two = pow2(n);
        for (int d = 0; d <= std::max(deg_r, deg_s); ++d) {
            if (d <= deg_r) e.emplace_back(static_cast<Col>(d), pw * two);
            if (d <= deg_s) e.emplace_back(static_cast<Col>(deg_r + 1 + d), pw);
            pw *= x;
        }
        e.emplace_back(rhs, values(n));
        return SparseVec::from_pairs(std::move(e));
    };
    Echelon ech(rhs);
    for (int n = start; n <= start + u; ++n) ech.add(row(n));
    if (ech.rank() != static_cast<std::size_t>(u)) throw InternalError("fit_quasi_poly: sample points do not determine the fit");
    std::vector<Rational> x(u);
    for (std::size_t i = 0; i < ech.rows().size(); ++i) x[ech.pivots()[i]] = ech.rows()[i].at(rhs);
    QuasiPoly q{QPoly(std::vector<Rational>(x.begin(), x.begin() + deg_r + 1)),
                QPoly(std::vector<Rational>(x.begin() + deg_r + 1, x.end()))};
    for (int n = start; n <= start + 2 * u + 1; ++n)
        if (q(n) != values(n))
            throw InternalError("fit_quasi_poly: fitted form disagrees at n = " + std::to_string(n));
    return q;
}

QuasiPoly closed_form(const BoundSpec& spec) {
    const int d = spec.tail_poly.degree();
    const int deg_s = std::max(d + 1, spec.threshold() - 1);
    const Sequence gamma = spec.sequence();
    return fit_quasi_poly([&](int n) { return binom_transform(gamma, n); }, d, deg_s);
}

CombinedLeads combined_bounds(int k) {
    if (k < 4) throw DomainError("combined_bounds needs k >= 4");
    const Rational f = factorial(2 * k - 2);
    CombinedLeads out;
    out.gamma_lead = pow2(2 * k - 3) / f + bound_poly(k, Parity::Odd).lead();
    out.codim_lead = Rational(1) / (Rational(2) * f) + closed_form(codim_bound_spec(k)).r.lead();
    return out;
}

std::string bounds_csv(const BoundSpec& spec, int n_max) {
    const QuasiPoly q = closed_form(spec);
    const Sequence gamma = spec.sequence();
    std::ostringstream os;
    os << "n,lower_bound,closed_form\n";
    for (int n = 0; n <= n_max; ++n) os << n << ',' << binom_transform(gamma, n) << ',' << q(n) << '\n';
    return os.str();
}

}  // namespace lienil
