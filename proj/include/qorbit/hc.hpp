#pragma once

#include "qorbit/charring.hpp"
#include "qorbit/cyclo.hpp"
#include "qorbit/twistdata.hpp"

#include <functional>
#include <optional>

namespace qorbit {

/// Finite sum  sum_omega c_omega(q) T_omega  of Cartan-part symbols with
/// Laurent coefficients; the commutative image of a central element.
struct HCartanElement {
    std::size_t rank = 0;
    std::map<Weight, LaurentPoly> terms;

    bool is_unit() const;
    std::string str() const;

    friend bool operator==(const HCartanElement& a, const HCartanElement& b) {
        return a.rank == b.rank && a.terms == b.terms;
    }
};

/// Harish-Chandra image of the central basis element attached to a tau-fixed
/// dominant weight, in the raw one-sum form
///   sum_{omega tau-fixed, hw-omega in Q^+} j(omega) eps_Q(hw-omega)
///     q^{-2(rho,omega)} T_omega.
/// Requires an ungauged reduced datum.
HCartanElement hc_image(const TwistingDatum& nu, const Weight& hw, const TwiningTable& j);

/// The W_nu-grouped form (dominant orbit representatives with stabilizer
/// weights); agrees with hc_image as an element.
HCartanElement hc_image_grouped(const TwistingDatum& nu, const Weight& hw, const TwiningTable& j);

/// Evaluate at a weight function: sum c_omega(q) lambda_P(omega), exactly,
/// with q symbolic and rational phases in the cyclotomic value ring.
CycloLaurent eval_point(const HCartanElement& el, const WeightFunction& lambda);

struct CentralCharacterMatch {
    bool equal = false;
    bool conclusive = true;
    std::optional<WeylElement> witness;
    std::optional<std::vector<QScalar>> gauge; // lambda' = gauge * (w .q lambda)
};

/// Test whether two weight functions share all central-character values on
/// the tau-fixed dominant weights of height <= height_bound, and
/// independently search W_nu x gauges for an orbit witness. The two routes
/// must agree; a disagreement that can be blamed on the finite height bound
/// is reported as inconclusive rather than guessed.
CentralCharacterMatch same_central_character(const TwistingDatum& nu, const WeightFunction& l1,
                                             const WeightFunction& l2, const Rational& q,
                                             long long height_bound);

/// Exact value of the invariant integral of a_hw at lambda = q^{2 gamma}:
///   (1/dim_q) [sum_{w in W_nu} hsgn(w) eps_Q(hw+rho-w(hw+rho))
///              q^{2(gamma-rho, w(hw+rho))}] / [same with hw = 0],
/// with the quotient cancelled exactly in the Laurent ring.
struct IntegralValue {
    LaurentPoly ratio;          // numerator/denominator, exact
    LaurentPoly qdim;           // quantum dimension of V_hw
    std::optional<Rational> exact; // value at q when the grid allows
    double approx = 0.0;
};
IntegralValue invariant_integral(const TwistingDatum& nu, const Weight& gamma, const Weight& hw,
                                 const Rational& q);

/// e_gamma: the ratio of the full alternating rho-sum to the W_nu-twisted
/// one, evaluated exactly at q.
struct EGammaValue {
    std::optional<Rational> exact;
    double approx = 0.0;
    std::optional<Rational> abs_exact;
    double abs_approx = 0.0;
};
EGammaValue e_gamma(const TwistingDatum& nu, const Weight& gamma, const Rational& q);

/// (rho - gamma, beta) > 0 for every positive nu-compact folded root.
bool compact_positivity(const TwistingDatum& nu, const Weight& gamma);

/// Weight data of the module attached to one cell: alpha_+ drops with
/// multiplicities up to the requested depth, plus an upper-bound model
/// mult(level m) <= cap_a + cap_b m used for the tail estimate.
struct ModuleWeights {
    std::vector<std::pair<Weight, BigInt>> levels;
    // mult(level m) <= cap_a + cap_b m + cap_c m^2 beyond the listed range
    BigInt cap_a = 0;
    BigInt cap_b = 0;
    BigInt cap_c = 0;
};

/// Supplies module weight data for the cell with the given highest weight.
using MultProvider =
    std::function<ModuleWeights(const WeylElement& cell, const WeightFunction& mu, long long depth)>;

struct CellData {
    WeylElement cell;
    SignCharacter sign;
    WeightFunction highest_weight;
    double trace = 0.0;      // Tr(A_w), truncated
    double tail_bound = 0.0; // bound on the truncation remainder
    double state_weight = 0.0;
};

struct CellState {
    std::vector<CellData> cells;
    double e_gamma_abs = 0.0;
    double trace_sum = 0.0;
    double normalization_residual = 0.0; // |e_gamma| * trace_sum - 1
};

/// Assemble the invariant-state data over the cells W_nu^-: per-cell highest
/// weights, truncated traces of A_w with tail bounds, the common cell weight
/// |e_gamma| and the normalized state weights.
CellState cell_state(const TwistingDatum& nu, const WeightFunction& lambda,
                     const MultProvider& provider, long long depth, const Rational& q);

/// Truncated value of int a_hw computed from the cell data; used to
/// cross-check against the exact invariant_integral.
double cell_state_integral(const TwistingDatum& nu, const WeightFunction& lambda,
                           const MultProvider& provider, long long depth, const Rational& q,
                           const Weight& hw);

/// tau-fixed dominant integral weights with sum of folded-generator
/// coefficients between 1 and height_bound.
std::vector<Weight> tau_fixed_dominant_weights(const FoldedSystem& fs, long long height_bound);

} // namespace qorbit
