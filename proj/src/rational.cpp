#include "lienil/rational.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace lienil {

namespace {

using i128 = __int128;

constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();

bool fits(i128 v) { return v <= kMax && v >= -static_cast<i128>(kMax); }

i128 gcd128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

mpz_class to_mpz(i128 v) {
    bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
    mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64)));
    mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(u)));
    mpz_class r = (hi << 64) + lo;
    return neg ? mpz_class(-r) : r;
}

mpz_class to_mpz64(std::int64_t v) { return to_mpz(static_cast<i128>(v)); }

bool mpz_fits64(const mpz_class& z) {
    return mpz_sizeinbase(z.get_mpz_t(), 2) <= 63;
}

std::int64_t mpz_to64(const mpz_class& z) {
    // sizeinbase <= 63 guaranteed by caller
    mpz_class a = abs(z);
    std::uint64_t lo = 0;
    mpz_export(&lo, nullptr, -1, sizeof(lo), 0, 0, a.get_mpz_t());
    auto v = static_cast<std::int64_t>(lo);
    return sgn(z) < 0 ? -v : v;
}

}  // namespace

Rational::Rational(std::int64_t n) {
    if (n == std::numeric_limits<std::int64_t>::min()) {
        set_big(mpq_class(to_mpz64(n)));
    } else {
        num_ = n;
    }
}

Rational::Rational(std::int64_t n, std::int64_t d) {
    if (d == 0) throw std::domain_error("Rational: zero denominator");
    i128 nn = n, dd = d;
    if (dd < 0) {
        nn = -nn;
        dd = -dd;
    }
    i128 g = gcd128(nn, dd);
    if (g > 1) {
        nn /= g;
        dd /= g;
    }
    if (fits(nn) && fits(dd)) {
        num_ = static_cast<std::int64_t>(nn);
        den_ = static_cast<std::int64_t>(dd);
    } else {
        mpq_class q(to_mpz(nn), to_mpz(dd));
        q.canonicalize();
        set_big(std::move(q));
    }
}

Rational::Rational(const mpq_class& q) {
    mpq_class c(q);
    c.canonicalize();
    set_big(std::move(c));
}

Rational::Rational(const Rational& o) : num_(o.num_), den_(o.den_) {
    if (o.big_) big_ = std::make_unique<mpq_class>(*o.big_);
}

Rational& Rational::operator=(const Rational& o) {
    if (this != &o) {
        num_ = o.num_;
        den_ = o.den_;
        if (o.big_) {
            if (big_) *big_ = *o.big_;
            else big_ = std::make_unique<mpq_class>(*o.big_);
        } else {
            big_.reset();
        }
    }
    return *this;
}

Rational Rational::parse(std::string_view text) {
    std::string s(text);
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            mpz_class z(s, 10);
            return Rational(mpq_class(z));
        }
        mpz_class n(s.substr(0, slash), 10);
        mpz_class d(s.substr(slash + 1), 10);
        if (d == 0) throw std::domain_error("Rational: zero denominator");
        return Rational(mpq_class(n, d));
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("Rational: cannot parse '" + s + "'");
    }
}

void Rational::set_big(mpq_class q) {
    big_ = std::make_unique<mpq_class>(std::move(q));
    demote();
}

void Rational::demote() {
    if (!big_) return;
    const mpz_class& n = big_->get_num();
    const mpz_class& d = big_->get_den();
    if (mpz_fits64(n) && mpz_fits64(d)) {
        num_ = mpz_to64(n);
        den_ = mpz_to64(d);
        big_.reset();
    }
}

bool Rational::is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }

int Rational::sign() const {
    if (big_) return sgn(*big_);
    return (num_ > 0) - (num_ < 0);
}

mpq_class Rational::to_mpq() const {
    if (big_) return *big_;
    return mpq_class(to_mpz64(num_), to_mpz64(den_));
}

std::string Rational::str() const {
    if (big_) return big_->get_str();
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

double Rational::to_double() const {
    if (big_) return big_->get_d();
    return static_cast<double>(num_) / static_cast<double>(den_);
}

std::uint64_t Rational::numerator_magnitude() const {
    if (big_) return std::numeric_limits<std::uint64_t>::max();
    return static_cast<std::uint64_t>(num_ < 0 ? -num_ : num_);
}

std::int64_t Rational::to_int64() const {
    if (big_ || den_ != 1) throw std::domain_error("Rational: not a 64-bit integer: " + str());
    return num_;
}

Rational Rational::operator-() const {
    Rational r;
    if (big_) {
        r.set_big(-*big_);
    } else {
        r.num_ = -num_;
        r.den_ = den_;
    }
    return r;
}

Rational& Rational::operator+=(const Rational& o) {
    if (!big_ && !o.big_) {
        if (den_ == 1 && o.den_ == 1) {
            i128 s = static_cast<i128>(num_) + o.num_;
            if (fits(s)) {
                num_ = static_cast<std::int64_t>(s);
                return *this;
            }
        }
        i128 n = static_cast<i128>(num_) * o.den_ + static_cast<i128>(o.num_) * den_;
        i128 d = static_cast<i128>(den_) * o.den_;
        i128 g = gcd128(n, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
        if (n == 0) d = 1;
        if (fits(n) && fits(d)) {
            num_ = static_cast<std::int64_t>(n);
            den_ = static_cast<std::int64_t>(d);
            return *this;
        }
    }
    set_big(to_mpq() + o.to_mpq());
    return *this;
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
    if (!big_ && !o.big_) {
        i128 n = static_cast<i128>(num_) * o.num_;
        i128 d = static_cast<i128>(den_) * o.den_;
        if (d != 1) {
            i128 g = gcd128(n, d);
            if (g > 1) {
                n /= g;
                d /= g;
            }
        }
        if (n == 0) d = 1;
        if (fits(n) && fits(d)) {
            num_ = static_cast<std::int64_t>(n);
            den_ = static_cast<std::int64_t>(d);
            return *this;
        }
    }
    set_big(to_mpq() * o.to_mpq());
    return *this;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    if (!big_ && !o.big_) {
        i128 n = static_cast<i128>(num_) * o.den_;
        i128 d = static_cast<i128>(den_) * o.num_;
        if (d < 0) {
            n = -n;
            d = -d;
        }
        i128 g = gcd128(n, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
        if (n == 0) d = 1;
        if (fits(n) && fits(d)) {
            num_ = static_cast<std::int64_t>(n);
            den_ = static_cast<std::int64_t>(d);
            return *this;
        }
    }
    set_big(to_mpq() / o.to_mpq());
    return *this;
}

void Rational::sub_mul(const Rational& a, const Rational& b) {
    if (!big_ && !a.big_ && !b.big_ && den_ == 1 && a.den_ == 1 && b.den_ == 1) {
        i128 v = static_cast<i128>(num_) - static_cast<i128>(a.num_) * b.num_;
        if (fits(v)) {
            num_ = static_cast<std::int64_t>(v);
            return;
        }
    }
    *this -= a * b;
}

bool operator==(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
    // canonical forms: a big value never fits in 64 bits, so mixed is unequal
    if (a.big_ && b.big_) return *a.big_ == *b.big_;
    return false;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
        i128 l = static_cast<i128>(a.num_) * b.den_;
        i128 r = static_cast<i128>(b.num_) * a.den_;
        return l <=> r;
    }
    int c = cmp(a.to_mpq(), b.to_mpq());
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational factorial(int n) {
    if (n < 0) throw std::domain_error("factorial of negative number");
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
    return Rational(mpq_class(f));
}

Rational binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return Rational(0);
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rational(mpq_class(b));
}

Rational pow2(int e) {
    mpz_class z(1);
    if (e >= 0) {
        z <<= e;
        return Rational(mpq_class(z));
    }
    z <<= -e;
    return Rational(mpq_class(mpz_class(1), z));
}

}  // namespace lienil
