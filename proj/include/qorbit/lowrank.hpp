#pragma once

#include "qorbit/hc.hpp"
#include "qorbit/qscalar.hpp"
#include "qorbit/twistdata.hpp"

#include <Eigen/Dense>
#include <optional>
#include <variant>
#include <vector>

namespace qorbit {

/// Stratum of the rank-1 central-character plane (d, t) = (det, trace).
/// Exact fields are set when the inputs allow; the approx mirrors are always
/// populated.
struct Stratum {
    enum class Kind { SPlus, SZero, SMinus };
    Kind kind = Kind::SZero;

    // SPlus: t = c s_n with s_n = q^{-n-1} + q^{n+1}; c is signed.
    std::optional<Rational> c;
    double c_approx = 0.0;
    long long n = 0;
    // SZero: the trace value.
    std::optional<Rational> t;
    double t_approx = 0.0;
    // SMinus: modulus cm > 0 with d = -cm^2 and t = (a - a^{-1}) cm, a > 0.
    std::optional<Rational> cm;
    double cm_approx = 0.0;
    std::optional<Rational> a;
    double a_approx = 1.0;

    std::string str() const;
};

/// Exact stratification of (d, t); returns nullopt when d > 0 and t is off
/// the discrete s_n grid (the stratum is not admissible).
std::optional<Stratum> h2_stratify(const Rational& d, const Rational& t, const Rational& q);
/// Floating variant with relative tolerance for the grid match.
std::optional<Stratum> h2_stratify(double d, double t, double q, double rel_tol = 1e-10);

/// Truncated operator quadruple of the rank-1 model: z diagonal with the
/// stratum spectrum, v lowering, w = v^*, u from the quantum trace.
struct H2Model {
    Eigen::MatrixXd z, v, w, u;
    double d = 0.0;
    double t = 0.0;
    int block = 0; // +1 / -1 for the SMinus blocks, 0 otherwise
    int active = 0; // rows untouched by truncation
};

/// block: 0 for SPlus/SZero, +1/-1 for the SMinus blocks.
H2Model h2_model(const Stratum& s, int block, int cutoff, double q);

/// Max residual of the defining relations on the first active rows.
double h2_relation_residual(const H2Model& m, double q);

/// Invariance of the stratum state under the inner quantum-group action:
/// max over monomials of degree <= 3 in {z, v, w, u} of |state(E > X)| and
/// |state(K > X) - state(X)|.
struct ResidualReport {
    double max_e = 0.0;
    double max_k = 0.0;
};
ResidualReport invariance_residual(const Stratum& s, int cutoff, double q);

/// Spectral check of the fusion rules: eigenvalues of the rotated operator
/// U* Z U on the truncated tensor product against the predicted fused
/// spectrum; returns the largest mismatch among the top_count eigenvalues of
/// largest modulus.
double fusion_spectrum_residual(const Stratum& s, int model_cut, int su2_cut, double q,
                                int top_count);
/// Same for the fusion of a character (z = 0, v = q c) with the big cell.
double character_fusion_residual(double cm, double a, int su2_cut, double q, int top_count);

// ----------------------------------------------------------- Verma records

enum class VermaCase { A1_H2, A1xA1, A2_twisted };

struct VermaRecord {
    VermaCase kind = VermaCase::A1_H2;
    QScalar lambda;
    Rational eps;
    std::vector<double> norms;
    std::vector<std::optional<Rational>> norms_exact;
    bool unitarizable = false;
    std::optional<long long> truncation; // first t with c_t = 0
};

/// Closed-form Shapovalov recursion for the distinguished vectors; exact
/// whenever lambda is a rational multiple of a q-power on the grid.
VermaRecord verma_gram(VermaCase kind, const QScalar& lambda, const Rational& eps, long long t_max,
                       const Rational& q);

/// Structure of the admissible highest-weight set for a reduced eps.
struct Classification {
    enum class Shape { DiscreteFamily, AllPositive, AllNonzeroReal };
    Shape shape = Shape::AllPositive;
    std::vector<QScalar> family; // moduli for n = 0..n_max when discrete
    std::string description;
};

Classification classify_hw(VermaCase kind, const Rational& eps, const Rational& q,
                           long long n_max);

/// The family member lambda_n as a q-power scalar.
QScalar family_member(VermaCase kind, long long n);

/// Weight multiplicities of the irreducible quotient at a classified highest
/// weight, per level of the folded drop, up to the given depth.
ModuleWeights module_weight_mults(VermaCase kind, const QScalar& lambda, const Rational& eps,
                                  long long depth, const Rational& q, const FoldedSystem& fs);

/// Multiplicity provider for cell_state, dispatching on the datum shape
/// (rank-1, swapped A1xA1, or swapped A2). Throws for unclassified weights.
MultProvider lowrank_provider(const TwistingDatum& nu, const Rational& q);

/// Identify the Verma case handled by a twisting datum, if any.
std::optional<VermaCase> verma_case_of(const TwistingDatum& nu);

} // namespace qorbit
