#pragma once

#include "qorbit/rational.hpp"

#include <complex>

namespace qorbit {

/// Reduce a phase measured in turns into [0, 1).
Rational reduce_turns(const Rational& t);

/// Complex scalar of the form modulus * e^{2 pi i phase}, with rational
/// modulus >= 0 and rational phase in turns. Zero forces phase 0.
class PolarRational {
public:
    PolarRational() : mod_(0), phase_(0) {}
    PolarRational(long long v) { *this = from_real(Rational(v)); }
    PolarRational(const Rational& v) { *this = from_real(v); }
    PolarRational(Rational modulus, Rational phase_turns);

    static PolarRational from_real(const Rational& v) {
        return v.is_negative() ? PolarRational(-v, Rational(1, 2)) : PolarRational(v, Rational(0));
    }
    static PolarRational one() { return PolarRational(Rational(1), Rational(0)); }

    const Rational& modulus() const { return mod_; }
    const Rational& phase() const { return phase_; }

    bool is_zero() const { return mod_.is_zero(); }
    bool is_real() const { return mod_.is_zero() || phase_.is_zero() || phase_ == Rational(1, 2); }
    bool is_positive_real() const { return mod_.is_positive() && phase_.is_zero(); }

    /// Signed value for real scalars; throws otherwise.
    Rational real_value() const;

    PolarRational conj() const { return PolarRational(mod_, -phase_); }

    PolarRational& operator*=(const PolarRational& o);
    friend PolarRational operator*(PolarRational a, const PolarRational& b) { return a *= b; }
    PolarRational inv() const;
    friend PolarRational operator/(const PolarRational& a, const PolarRational& b) {
        return a * b.inv();
    }
    PolarRational pow(long long e) const;

    friend bool operator==(const PolarRational& a, const PolarRational& b) {
        return a.mod_ == b.mod_ && a.phase_ == b.phase_;
    }
    friend bool operator!=(const PolarRational& a, const PolarRational& b) { return !(a == b); }

    std::complex<double> to_complex() const;
    std::string str() const;

private:
    Rational mod_;
    Rational phase_;
};

} // namespace qorbit
