#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace qorbit {

using BigInt = boost::multiprecision::cpp_int;

/// Arbitrary-precision rational, always kept in lowest terms with a
/// positive denominator.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(BigInt n) : num_(std::move(n)), den_(1) {}
    Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }
    Rational(long long n, long long d) : num_(n), den_(d) { normalize(); }

    static Rational parse(const std::string& s);

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    bool is_positive() const { return num_ > 0; }
    bool is_negative() const { return num_ < 0; }
    int sign() const { return num_ == 0 ? 0 : (num_ > 0 ? 1 : -1); }

    Rational operator-() const { return Rational(-num_, den_, unchecked{}); }

    Rational& operator+=(const Rational& o) {
        num_ = num_ * o.den_ + o.num_ * den_;
        den_ *= o.den_;
        normalize();
        return *this;
    }
    Rational& operator-=(const Rational& o) { return *this += -o; }
    Rational& operator*=(const Rational& o) {
        num_ *= o.num_;
        den_ *= o.den_;
        normalize();
        return *this;
    }
    Rational& operator/=(const Rational& o) {
        if (o.num_ == 0) throw std::domain_error("Rational: division by zero");
        num_ *= o.den_;
        den_ *= o.num_;
        normalize();
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return a.num_ * b.den_ < b.num_ * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    Rational abs() const { return num_ < 0 ? -*this : *this; }
    Rational inv() const {
        if (num_ == 0) throw std::domain_error("Rational: inverse of zero");
        return num_ > 0 ? Rational(den_, num_, unchecked{}) : Rational(-den_, -num_, unchecked{});
    }

    /// Integer power; negative exponents invert.
    Rational pow(long long e) const;

    double to_double() const;
    std::string str() const;

    /// Reduced form "p/q", or just "p" for integers.
    friend std::ostream& operator<<(std::ostream& os, const Rational& r);

private:
    struct unchecked {};
    Rational(BigInt n, BigInt d, unchecked) : num_(std::move(n)), den_(std::move(d)) {}

    void normalize();

    BigInt num_;
    BigInt den_;
};

Rational rat_gcd(const Rational& a, const Rational& b);

/// Floor of a rational as a BigInt.
BigInt rat_floor(const Rational& r);

/// If `x == base^k` for an integer k (base > 0, base != 1, x > 0), return
/// true and set k. Used to fold q-power content out of rational scales.
bool integer_log(const Rational& x, const Rational& base, long long& k);

/// Exact n-th root of a rational if it exists (n >= 1, r >= 0).
bool exact_root(const Rational& r, unsigned n, Rational& out);

} // namespace qorbit
