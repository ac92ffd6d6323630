#include "qorbit/rational.hpp"

#include <boost/multiprecision/integer.hpp>
#include <ostream>
#include <sstream>

namespace qorbit {

void Rational::normalize() {
    if (den_ == 0) throw std::domain_error("Rational: zero denominator");
    if (den_ < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    if (num_ == 0) {
        den_ = 1;
        return;
    }
    BigInt g = boost::multiprecision::gcd(num_, den_);
    if (g > 1) {
        num_ /= g;
        den_ /= g;
    }
}

Rational Rational::parse(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(s), BigInt(1));
        return Rational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
    } catch (const std::exception&) {
        throw std::invalid_argument("Rational: cannot parse '" + s + "'");
    }
}

Rational Rational::pow(long long e) const {
    if (e == 0) return Rational(1);
    if (num_ == 0) {
        if (e < 0) throw std::domain_error("Rational: 0 to a negative power");
        return Rational(0);
    }
    Rational base = e > 0 ? *this : inv();
    unsigned long long k = e > 0 ? (unsigned long long)e : (unsigned long long)(-e);
    Rational acc(1);
    while (k) {
        if (k & 1) acc *= base;
        base *= base;
        k >>= 1;
    }
    return acc;
}

double Rational::to_double() const {
    return boost::multiprecision::cpp_rational(num_, den_).convert_to<double>();
}

std::string Rational::str() const {
    std::ostringstream os;
    os << *this;
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    os << r.num();
    if (!r.is_integer()) os << '/' << r.den();
    return os;
}

Rational rat_gcd(const Rational& a, const Rational& b) {
    if (a.is_zero()) return b.abs();
    if (b.is_zero()) return a.abs();
    BigInt n = boost::multiprecision::gcd(a.num(), b.num());
    BigInt d = boost::multiprecision::lcm(a.den(), b.den());
    return Rational(n, d);
}

BigInt rat_floor(const Rational& r) {
    BigInt q = r.num() / r.den();
    if (r.num() < 0 && q * r.den() != r.num()) --q;
    return q;
}

bool integer_log(const Rational& x, const Rational& base, long long& k) {
    if (!x.is_positive() || !base.is_positive() || base == Rational(1)) return false;
    if (x == Rational(1)) {
        k = 0;
        return true;
    }
    // Walk toward 1 dividing out the base; bounded by the bit size of x.
    Rational b = base < Rational(1) ? base.inv() : base;
    // After this flip, a solution needs x = b^m with m > 0 matching signs.
    bool invert = (base < Rational(1));
    Rational y = x;
    bool neg = y < Rational(1);
    if (neg) y = y.inv();
    long long m = 0;
    while (y > Rational(1)) {
        y /= b;
        ++m;
        if (y < Rational(1)) return false;
    }
    if (y != Rational(1)) return false;
    k = neg ? -m : m;
    if (invert) k = -k;
    return true;
}

bool exact_root(const Rational& r, unsigned n, Rational& out) {
    if (n == 0) throw std::invalid_argument("exact_root: n must be >= 1");
    if (r.is_negative()) return false;
    if (n == 1 || r.is_zero() || r == Rational(1)) {
        out = r;
        return true;
    }
    auto root_of = [n](const BigInt& v, BigInt& res) {
        // Newton iteration on integers, then verify.
        if (v == 1) {
            res = 1;
            return true;
        }
        BigInt lo = 1, hi = v;
        while (lo < hi) {
            BigInt mid = (lo + hi) / 2;
            BigInt p = boost::multiprecision::pow(mid, n);
            if (p == v) {
                res = mid;
                return true;
            }
            if (p < v)
                lo = mid + 1;
            else
                hi = mid;
        }
        return boost::multiprecision::pow(lo, n) == v ? (res = lo, true) : false;
    };
    BigInt rn, rd;
    if (!root_of(r.num(), rn) || !root_of(r.den(), rd)) return false;
    out = Rational(rn, rd);
    return true;
}

} // namespace qorbit
