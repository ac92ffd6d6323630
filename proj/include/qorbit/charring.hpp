#pragma once

#include "qorbit/laurent.hpp"
#include "qorbit/rootsys.hpp"

#include <functional>
#include <map>
#include <memory>

namespace qorbit {

/// Element of the group algebra of the weight lattice with Laurent
/// coefficients: finite sums  sum_omega c_omega(q) e^{omega}.
class CharElement {
public:
    explicit CharElement(std::size_t rank) : rank_(rank) {}

    static CharElement unit(std::size_t rank) {
        CharElement c(rank);
        c.add_term(Weight(rank), LaurentPoly::one());
        return c;
    }

    std::size_t rank() const { return rank_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Weight, LaurentPoly>& terms() const { return terms_; }

    void add_term(const Weight& w, const LaurentPoly& c);
    void add_term(const Weight& w, const Rational& c) { add_term(w, LaurentPoly::constant(c)); }

    CharElement& operator+=(const CharElement& o);
    CharElement& operator-=(const CharElement& o);
    friend CharElement operator+(CharElement a, const CharElement& b) { return a += b; }
    friend CharElement operator-(CharElement a, const CharElement& b) { return a -= b; }

    friend bool operator==(const CharElement& a, const CharElement& b) {
        return a.rank_ == b.rank_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const CharElement& a, const CharElement& b) { return !(a == b); }

    std::string str() const;

private:
    std::size_t rank_;
    std::map<Weight, LaurentPoly> terms_;
};

/// Convolution product e^{omega} e^{chi} = e^{omega + chi}.
CharElement char_mul(const CharElement& a, const CharElement& b);

/// Exact quotient by leading-term elimination. The term order is graded by a
/// strictly dominance-positive linear functional (pairing against 2 rho of
/// the given root system) with lexicographic tie-break, so alternating
/// numerators and denominators have their unique extreme terms at the
/// dominant points.
CharElement char_div(const RootSystem& rs, const CharElement& num, const CharElement& den);

/// Weight multiplicities of the irreducible with a dominant integral highest
/// weight, by the Freudenthal recursion. Stores dominant weights only and
/// resolves the rest through the Weyl group.
class MultTable {
public:
    static constexpr unsigned long long kDimGuard = 1000000;

    MultTable(std::shared_ptr<const RootSystem> rs, Weight hw);

    const Weight& highest_weight() const { return hw_; }
    const std::map<Weight, BigInt>& dominant_mults() const { return dominant_; }
    BigInt mult(const Weight& omega) const;
    const BigInt& dimension() const { return dim_; }

    /// Visit every weight with its multiplicity (orbit expansion).
    void for_each_weight(const std::function<void(const Weight&, const BigInt&)>& fn) const;

private:
    std::shared_ptr<const RootSystem> rs_;
    Weight hw_;
    std::map<Weight, BigInt> dominant_;
    BigInt dim_;
};

inline MultTable weight_mults(std::shared_ptr<const RootSystem> rs, const Weight& hw) {
    return MultTable(std::move(rs), hw);
}

/// Quantum dimension: sum_omega mult(omega) q^{(2 rho, omega)}.
LaurentPoly q_dim(const RootSystem& rs, const MultTable& table);

/// The same value through the q-deformed Weyl product formula; used as an
/// independent route in tests.
LaurentPoly q_dim_product(const RootSystem& rs, const Weight& hw);

/// Twining multiplicities: traces of the diagram intertwiner on the weight
/// spaces of V_hw, as a function on tau-fixed weights.
struct TwiningTable {
    Weight hw;
    std::map<Weight, long long> jvals;

    long long j(const Weight& omega) const {
        auto it = jvals.find(omega);
        return it == jvals.end() ? 0 : it->second;
    }
};

/// Division route: the tau-twisted alternating-sum quotient over W^tau with
/// the folded sign character, computed exactly in the character ring of the
/// fixed lattice.
TwiningTable twining_mults(const FoldedSystem& fs, const Weight& hw);

} // namespace qorbit
