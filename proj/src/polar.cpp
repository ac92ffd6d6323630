#include "qorbit/polar.hpp"

#include <cmath>
#include <sstream>

namespace qorbit {

Rational reduce_turns(const Rational& t) {
    Rational r = t - Rational(rat_floor(t));
    // floor can leave exactly 1 when t was a tiny negative epsilon in exact
    // arithmetic this cannot happen, but keep the contract airtight.
    if (r >= Rational(1)) r -= Rational(1);
    return r;
}

PolarRational::PolarRational(Rational modulus, Rational phase_turns)
    : mod_(std::move(modulus)), phase_(reduce_turns(phase_turns)) {
    if (mod_.is_negative()) throw std::domain_error("PolarRational: negative modulus");
    if (mod_.is_zero()) phase_ = Rational(0);
}

Rational PolarRational::real_value() const {
    if (is_zero()) return Rational(0);
    if (phase_.is_zero()) return mod_;
    if (phase_ == Rational(1, 2)) return -mod_;
    throw std::domain_error("PolarRational: not a real value");
}

PolarRational& PolarRational::operator*=(const PolarRational& o) {
    mod_ *= o.mod_;
    phase_ = mod_.is_zero() ? Rational(0) : reduce_turns(phase_ + o.phase_);
    return *this;
}

PolarRational PolarRational::inv() const {
    if (is_zero()) throw std::domain_error("PolarRational: inverse of zero");
    return PolarRational(mod_.inv(), -phase_);
}

PolarRational PolarRational::pow(long long e) const {
    if (is_zero()) {
        if (e < 0) throw std::domain_error("PolarRational: 0 to a negative power");
        return e == 0 ? one() : PolarRational();
    }
    return PolarRational(mod_.pow(e), phase_ * Rational(e));
}

std::complex<double> PolarRational::to_complex() const {
    double m = mod_.to_double();
    double th = 2.0 * M_PI * phase_.to_double();
    return {m * std::cos(th), m * std::sin(th)};
}

std::string PolarRational::str() const {
    std::ostringstream os;
    if (is_real()) {
        os << real_value();
    } else {
        os << mod_ << "*e^(2pi*i*" << phase_ << ")";
    }
    return os.str();
}

} // namespace qorbit
