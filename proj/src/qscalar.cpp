#include "qorbit/qscalar.hpp"

#include <cmath>
#include <sstream>

namespace qorbit {

QScalar::QScalar(Rational scale, Rational qexp, Rational phase_turns)
    : scale_(std::move(scale)), qexp_(std::move(qexp)), phase_(reduce_turns(phase_turns)) {
    if (scale_.is_negative()) {
        scale_ = -scale_;
        phase_ = reduce_turns(phase_ + Rational(1, 2));
    }
    if (scale_.is_zero()) {
        qexp_ = Rational(0);
        phase_ = Rational(0);
    }
}

QScalar QScalar::from_real(const Rational& v) { return QScalar(v, Rational(0), Rational(0)); }

int QScalar::real_sign() const {
    if (is_zero()) return 0;
    if (phase_.is_zero()) return 1;
    if (phase_ == Rational(1, 2)) return -1;
    throw std::domain_error("QScalar: sign of a non-real value");
}

QScalar QScalar::inv() const {
    if (is_zero()) throw std::domain_error("QScalar: inverse of zero");
    return QScalar(scale_.inv(), -qexp_, -phase_);
}

QScalar QScalar::pow(long long e) const {
    if (is_zero()) {
        if (e < 0) throw std::domain_error("QScalar: 0 to a negative power");
        return e == 0 ? one() : zero();
    }
    return QScalar(scale_.pow(e), qexp_ * Rational(e), phase_ * Rational(e));
}

QScalar& QScalar::operator*=(const QScalar& o) {
    if (is_zero() || o.is_zero()) return *this = zero();
    scale_ *= o.scale_;
    qexp_ += o.qexp_;
    phase_ = reduce_turns(phase_ + o.phase_);
    return *this;
}

QScalar QScalar::operator-() const {
    if (is_zero()) return zero();
    return QScalar(scale_, qexp_, phase_ + Rational(1, 2));
}

// s * q^e == 1  <=>  q^{e num/den} = 1/s  <=>  q^{num} = s^{-den}.
static bool qpower_equals(const Rational& s, const Rational& e, const Rational& q) {
    if (!s.is_positive()) return false;
    long long num = e.num().convert_to<long long>();
    long long den = e.den().convert_to<long long>();
    return q.pow(num) == s.inv().pow(den);
}

bool QScalar::is_unimodular_at(const Rational& q) const {
    if (is_zero()) return false;
    if (qexp_.is_zero()) return scale_ == Rational(1);
    return qpower_equals(scale_, qexp_, q);
}

bool QScalar::equal_at(const QScalar& o, const Rational& q) const {
    if (is_zero() || o.is_zero()) return is_zero() == o.is_zero();
    if (phase_ != o.phase_) return false;
    QScalar ratio = *this / o;
    return ratio.is_unimodular_at(q);
}

LaurentPoly QScalar::modulus_poly() const {
    LaurentPoly p;
    if (!is_zero()) p.add_term(qexp_, scale_);
    return p;
}

std::complex<double> QScalar::to_complex(const Rational& q) const {
    if (is_zero()) return {0.0, 0.0};
    double m = scale_.to_double() * q_power(q, qexp_).value();
    double th = 2.0 * M_PI * phase_.to_double();
    return {m * std::cos(th), m * std::sin(th)};
}

PolarRational QScalar::to_polar(const Rational& q) const {
    if (is_zero()) return PolarRational();
    LaurentValue pw = q_power(q, qexp_);
    if (!pw.exact) throw std::domain_error("QScalar: modulus is irrational at this q");
    return PolarRational(scale_ * *pw.exact, phase_);
}

std::string QScalar::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    if (phase_ == Rational(1, 2))
        os << "-";
    else if (!phase_.is_zero())
        os << "e^(2pi*i*" << phase_ << ")*";
    os << scale_;
    if (!qexp_.is_zero()) os << "*q^{" << qexp_ << "}";
    return os.str();
}

} // namespace qorbit
