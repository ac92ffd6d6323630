#pragma once

#include "qorbit/laurent.hpp"
#include "qorbit/qscalar.hpp"

#include <complex>
#include <map>
#include <vector>

namespace qorbit {

/// Cyclotomic polynomial Phi_m as integer coefficients (lowest degree first).
std::vector<BigInt> cyclotomic_poly(long long m);

/// Element of Q(zeta_m) with Laurent-polynomial components: sum_j c_j zeta^j,
/// kept reduced modulo Phi_m so the representation is canonical. This is the
/// exact value ring for sums of q-power scalars with rational phases.
class CycloLaurent {
public:
    CycloLaurent() : order_(1), comps_(1) {}
    explicit CycloLaurent(const LaurentPoly& real) : order_(1), comps_{real} {}

    static CycloLaurent zero() { return CycloLaurent(); }
    static CycloLaurent one() { return CycloLaurent(LaurentPoly::one()); }
    /// coeff * q^{qexp} * e^{2 pi i phase}
    static CycloLaurent from_term(const Rational& coeff, const Rational& qexp,
                                  const Rational& phase_turns);
    static CycloLaurent from_qscalar(const QScalar& s) {
        return from_term(s.scale(), s.qexp(), s.phase());
    }

    long long order() const { return order_; }
    const std::vector<LaurentPoly>& comps() const { return comps_; }

    bool is_zero() const;
    /// True when the value lies in the Laurent ring itself (no root of unity).
    bool is_real_poly() const;
    const LaurentPoly& real_poly() const; // requires is_real_poly()

    CycloLaurent& operator+=(const CycloLaurent& o);
    CycloLaurent& operator-=(const CycloLaurent& o);
    friend CycloLaurent operator+(CycloLaurent a, const CycloLaurent& b) { return a += b; }
    friend CycloLaurent operator-(CycloLaurent a, const CycloLaurent& b) { return a -= b; }
    friend CycloLaurent operator*(const CycloLaurent& a, const CycloLaurent& b);
    CycloLaurent conj() const;

    friend bool operator==(const CycloLaurent& a, const CycloLaurent& b);
    friend bool operator!=(const CycloLaurent& a, const CycloLaurent& b) { return !(a == b); }

    std::complex<double> to_complex(const Rational& q) const;
    std::string str() const;

private:
    void rebase(long long m);
    void reduce(std::vector<LaurentPoly>& raw); // raw has size order_, reduce mod Phi

    long long order_;                 // m, with zeta = e^{2 pi i / m}
    std::vector<LaurentPoly> comps_;  // size deg Phi_m, canonical
};

/// Canonical fingerprint of the *value* of a Laurent polynomial at rational q:
/// rational contributions are folded together and non-extractable fractional
/// q-powers are bucketed by exponent class. Two polynomials with equal keys
/// have equal values; distinct keys differ whenever the fractional powers of
/// q in play are linearly independent over the rationals (true for q that is
/// not a perfect power, e.g. q = 1/2).
std::map<Rational, Rational> laurent_value_key(const LaurentPoly& p, const Rational& q);

/// Three-way value comparison of CycloLaurent elements at fixed q:
/// +1 equal, 0 inconclusive, -1 different.
int cyclo_value_compare(const CycloLaurent& a, const CycloLaurent& b, const Rational& q);

} // namespace qorbit
