#pragma once

#include "qorbit/laurent.hpp"
#include "qorbit/polar.hpp"

#include <complex>

namespace qorbit {

/// Exact scalar of the form scale * q^{qexp} * e^{2 pi i phase}, with q kept
/// symbolic. This is the value type for weight functions: products, inverses
/// and conjugates stay in the class, and equality at a fixed rational q is
/// decidable.
class QScalar {
public:
    QScalar() : scale_(0), qexp_(0), phase_(0) {}
    QScalar(Rational scale, Rational qexp, Rational phase_turns);

    static QScalar zero() { return QScalar(); }
    static QScalar one() { return QScalar(Rational(1), Rational(0), Rational(0)); }
    static QScalar from_real(const Rational& v);
    static QScalar from_polar(const PolarRational& v) {
        return QScalar(v.modulus(), Rational(0), v.phase());
    }
    /// q^e
    static QScalar q_pow(const Rational& e) { return QScalar(Rational(1), e, Rational(0)); }

    const Rational& scale() const { return scale_; }
    const Rational& qexp() const { return qexp_; }
    const Rational& phase() const { return phase_; }

    bool is_zero() const { return scale_.is_zero(); }
    bool is_real() const { return is_zero() || phase_.is_zero() || phase_ == Rational(1, 2); }
    bool is_positive() const { return scale_.is_positive() && phase_.is_zero(); }
    int real_sign() const;

    QScalar conj() const { return QScalar(scale_, qexp_, -phase_); }
    QScalar abs() const { return QScalar(scale_, qexp_, Rational(0)); }
    QScalar inv() const;
    QScalar pow(long long e) const;

    QScalar& operator*=(const QScalar& o);
    friend QScalar operator*(QScalar a, const QScalar& b) { return a *= b; }
    friend QScalar operator/(const QScalar& a, const QScalar& b) { return a * b.inv(); }
    QScalar operator-() const;

    /// Structural equality (same scale, exponent, phase).
    friend bool operator==(const QScalar& a, const QScalar& b) {
        return a.scale_ == b.scale_ && a.qexp_ == b.qexp_ && a.phase_ == b.phase_;
    }
    friend bool operator!=(const QScalar& a, const QScalar& b) { return !(a == b); }

    /// Value equality at a fixed rational 0 < q < 1; exact.
    bool equal_at(const QScalar& o, const Rational& q) const;
    /// Whether the modulus equals 1 at the given q; exact.
    bool is_unimodular_at(const Rational& q) const;

    /// modulus as a one-term Laurent polynomial (scale * q^{qexp}).
    LaurentPoly modulus_poly() const;

    std::complex<double> to_complex(const Rational& q) const;
    PolarRational to_polar(const Rational& q) const; // throws if the root is inexact
    std::string str() const;

private:
    Rational scale_; // >= 0
    Rational qexp_;
    Rational phase_; // turns in [0,1)
};

} // namespace qorbit
