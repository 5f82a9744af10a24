#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace lienil {

/// Exact rational number. Values whose numerator and denominator fit in
/// 64 bits are kept inline; anything larger spills to a GMP rational.
/// Always in lowest terms with a positive denominator; zero is 0/1.
class Rational {
public:
    Rational() = default;
    Rational(std::int64_t n);  // NOLINT(google-explicit-constructor)
    Rational(int n) : Rational(static_cast<std::int64_t>(n)) {}  // NOLINT
    Rational(std::int64_t n, std::int64_t d);
    explicit Rational(const mpq_class& q);

    Rational(const Rational& o);
    Rational(Rational&& o) noexcept = default;
    Rational& operator=(const Rational& o);
    Rational& operator=(Rational&& o) noexcept = default;
    ~Rational() = default;

    /// Parses "p", "-p" or "p/q".
    static Rational parse(std::string_view text);

    bool is_zero() const { return !big_ && num_ == 0; }
    bool is_integer() const;
    bool is_small() const { return !big_; }
    int sign() const;

    mpq_class to_mpq() const;
    std::string str() const;
    double to_double() const;
    /// Numerator magnitude, saturated; used for pivot selection.
    std::uint64_t numerator_magnitude() const;
    /// Throws if the value is not an integer fitting in int64.
    std::int64_t to_int64() const;

    Rational operator-() const;
    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b);
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

    Rational abs() const { return sign() < 0 ? -*this : *this; }

    /// this -= a * b, the elimination kernel.
    void sub_mul(const Rational& a, const Rational& b);

private:
    void set_big(mpq_class q);
    void demote();

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
    std::unique_ptr<mpq_class> big_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

Rational factorial(int n);
Rational binomial(int n, int k);
Rational pow2(int e);

}  // namespace lienil
