#pragma once

#include "qorbit/polar.hpp"
#include "qorbit/qscalar.hpp"
#include "qorbit/rootsys.hpp"

#include <memory>
#include <vector>

namespace qorbit {

/// The eight classification flags of a twisting datum.
struct DatumFlags {
    bool regular = false;
    bool positive = false;
    bool strongly_positive = false;
    bool symmetric_pair = false;
    bool gauge = false;
    bool ungauged = false;
    bool reduced = false;
    bool strongly_reduced = false;
};

/// Multiplicative weight function on the weight lattice: an element of
/// H_tau^x given by its values on the fundamental weights, subject to the
/// tau-conjugation symmetry. Values are exact q-power scalars.
class WeightFunction {
public:
    WeightFunction(std::shared_ptr<const RootSystem> rs, Involution tau, std::vector<QScalar> vals);

    /// lambda = q^{2 gamma} for a rational vector gamma (weight coordinates).
    static WeightFunction from_gamma(std::shared_ptr<const RootSystem> rs, Involution tau,
                                     const Weight& gamma);

    const RootSystem& root_system() const { return *rs_; }
    std::shared_ptr<const RootSystem> root_system_ptr() const { return rs_; }
    const Involution& tau() const { return tau_; }
    const QScalar& value(std::size_t r) const { return vals_[r]; }
    const std::vector<QScalar>& values() const { return vals_; }

    /// Multiplicative extension to an integral weight.
    QScalar eval(const Weight& omega) const;

    bool strictly_positive() const; // member of H^{>>}
    /// gamma with lambda = q^{2 gamma}, when every value is a pure q-power.
    std::optional<Weight> gamma() const;

    WeightFunction multiply(const WeightFunction& o) const;
    WeightFunction multiply_value(std::size_t r, const QScalar& s) const;

    bool equal_at(const WeightFunction& o, const Rational& q) const;

    std::string str() const;

private:
    std::shared_ptr<const RootSystem> rs_;
    Involution tau_;
    std::vector<QScalar> vals_;
};

/// Sign pattern of the coset w .eps H^{>>}: the signs eps_Q(varpi - w^{-1} varpi)
/// on one fundamental weight per tau-class. Multiplicative on the weight
/// lattice; the identity is all-positive.
struct SignCharacter {
    std::vector<int> per_class;

    bool all_positive() const;
    std::string str() const;
    friend bool operator==(const SignCharacter& a, const SignCharacter& b) {
        return a.per_class == b.per_class;
    }
    friend bool operator!=(const SignCharacter& a, const SignCharacter& b) { return !(a == b); }
    friend bool operator<(const SignCharacter& a, const SignCharacter& b) {
        return a.per_class < b.per_class;
    }
};

/// The nu-compact part of the folded root system.
struct CompactRoots {
    std::vector<FoldedSystem::FoldedRoot> positive; // compact positive folded roots
    std::vector<Weight> simple;                     // indecomposable elements
    std::vector<WeylElement> wplus_generators;      // reflections of the simple system
};

/// Twisting datum: a diagram involution together with a tau-conjugation
/// symmetric complex node labeling.
class TwistingDatum {
public:
    TwistingDatum(std::shared_ptr<const RootSystem> rs, Involution tau,
                  std::vector<PolarRational> eps);

    const RootSystem& root_system() const { return *rs_; }
    std::shared_ptr<const RootSystem> root_system_ptr() const { return rs_; }
    const Involution& tau() const { return tau_; }
    const FoldedSystem& folded() const { return *folded_; }
    const PolarRational& eps(std::size_t r) const { return eps_[r]; }
    const std::vector<PolarRational>& eps() const { return eps_; }

    /// Locus of non-degeneracy J = supp(eps).
    std::vector<int> support() const;
    bool in_support(int r) const { return !eps_[(std::size_t)r].is_zero(); }

    DatumFlags classify() const;

    /// Monoid extension of eps to Q^{J+} (lattice='Q') or P^{J+} ('P').
    /// The weight is given in fundamental-weight coordinates.
    PolarRational eps_eval(const Weight& omega, char lattice) const;
    /// eps_Q of an element of the root lattice, as a QScalar (reduced data
    /// give signs; general data give polar values).
    QScalar eps_q_scalar(const Weight& omega) const;

    /// W_nu: the tau-fixed parabolic on the support, generated by the lifted
    /// folded generators of classes inside J.
    const std::vector<WeylElement>& wnu() const;
    bool wnu_contains(const WeylElement& w) const;

    /// nu-compact folded roots, their simple system and the W_nu^+ generators.
    /// Requires an ungauged datum.
    const CompactRoots& compact_roots() const;
    const std::vector<WeylElement>& wplus() const;

    /// Sign character of the coset w .eps H^{>>}; requires w in W_nu with all
    /// relevant eps values real.
    SignCharacter sign_character(const WeylElement& w) const;

    /// W_nu^-: elements reachable from e by sign-changing words in the
    /// tau-fixed support nodes. Requires ungauged and reduced.
    const std::vector<std::pair<WeylElement, SignCharacter>>& w_minus() const;

    /// Twisted dot-action, multiplicative or q-deformed. The deformation
    /// factor q^{(2 rho, omega - w^{-1} omega)} stays symbolic in the value
    /// scalars. Requires ungauged, w in W_nu.
    WeightFunction dot(const WeylElement& w, const WeightFunction& lambda, bool deformed) const;

    friend bool operator==(const TwistingDatum& a, const TwistingDatum& b) {
        return a.tau_.perm() == b.tau_.perm() && a.eps_ == b.eps_;
    }

private:
    std::shared_ptr<const RootSystem> rs_;
    Involution tau_;
    std::vector<PolarRational> eps_;
    std::shared_ptr<const FoldedSystem> folded_;
    mutable std::vector<WeylElement> wnu_cache_;
    mutable std::optional<CompactRoots> compact_cache_;
    mutable std::vector<WeylElement> wplus_cache_;
    mutable std::vector<std::pair<WeylElement, SignCharacter>> wminus_cache_;
};

/// sign * radicand^{1/index} with rational radicand > 0; the exact value
/// type for the gauge-transport construction.
struct RadicalScalar {
    int sign = 1;
    Rational radicand = Rational(1);
    long long index = 1;

    void simplify();
    RadicalScalar& operator*=(const RadicalScalar& o);
    RadicalScalar pow(long long e) const;
    double to_double() const;
    std::string str() const;
};

struct StrongReduction {
    TwistingDatum datum;       // the strongly reduced representative
    WeylElement witness;       // w in W_nu^-
    std::vector<Rational> scaling; // entrywise positive f with eps' = f * (w eps)
};

/// Reduce an ungauged datum to an equivalent strongly reduced one via a
/// W_nu^- element and a positive scaling.
StrongReduction strongly_reduce(const TwistingDatum& nu);

/// Construct the character f on P with eps'_r = f_P(alpha_r) eps_r and
/// f_P(omega) eps_Q(omega - w^{-1} omega) > 0 on tau-fixed weights, via the
/// (1/N)Q root construction. Requires eps' = lambda (w eps) multiplicatively.
std::vector<RadicalScalar> gauge_transport(const TwistingDatum& nu, const TwistingDatum& nu_prime,
                                           const WeylElement& w);

} // namespace qorbit
