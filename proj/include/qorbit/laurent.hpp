#pragma once

#include "qorbit/rational.hpp"

#include <map>
#include <optional>
#include <string>

namespace qorbit {

/// Univariate Laurent polynomial in q with rational coefficients and
/// rational exponents whose denominators divide a fixed grid.
///
/// The grid defaults to 4, which covers the half- and quarter-integer
/// q-powers that show up in low-rank pairings. Mixed-grid arithmetic
/// promotes to the lcm.
class LaurentPoly {
public:
    static constexpr long long kDefaultGrid = 4;

    explicit LaurentPoly(long long grid = kDefaultGrid) : grid_(grid) {
        if (grid_ <= 0) throw std::invalid_argument("LaurentPoly: grid must be positive");
    }

    static LaurentPoly zero(long long grid = kDefaultGrid) { return LaurentPoly(grid); }
    static LaurentPoly constant(const Rational& c, long long grid = kDefaultGrid);
    static LaurentPoly one(long long grid = kDefaultGrid) { return constant(Rational(1), grid); }
    /// c * q^e
    static LaurentPoly term(const Rational& c, const Rational& e, long long grid = kDefaultGrid);

    long long grid() const { return grid_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    std::size_t size() const { return terms_.size(); }
    const std::map<Rational, Rational>& terms() const { return terms_; }

    void add_term(const Rational& exponent, const Rational& coeff);

    LaurentPoly operator-() const;
    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
    LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }
    void scale(const Rational& c);

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

    /// Highest-exponent term; poly must be nonzero.
    std::pair<Rational, Rational> leading() const;

    /// p(q^{-1}); exact.
    LaurentPoly bar() const;

    std::string str() const;

    long long grid_;
    std::map<Rational, Rational> terms_;
};

/// Exact quotient in the Laurent ring, processed from the highest exponent
/// downward. Throws laurent_division_error carrying the first nonzero
/// remainder term when the division is not exact.
LaurentPoly laurent_div(const LaurentPoly& num, const LaurentPoly& den);

struct laurent_division_error : std::domain_error {
    laurent_division_error(std::string msg, Rational exp, Rational coeff)
        : std::domain_error(std::move(msg)), remainder_exponent(std::move(exp)),
          remainder_coeff(std::move(coeff)) {}
    Rational remainder_exponent;
    Rational remainder_coeff;
};

/// Result of evaluating a Laurent polynomial at a rational point.
struct LaurentValue {
    std::optional<Rational> exact; // set when every power was exactly evaluable
    double approx = 0.0;

    double value() const { return exact ? exact->to_double() : approx; }
};

/// Evaluate at rational q with 0 < q < 1 (the spectral convention).
/// Fractional exponents use the positive real root; the path stays exact
/// whenever the required root of q is itself rational.
LaurentValue laurent_eval(const LaurentPoly& p, const Rational& q);

/// q^e at rational q > 0, exact when possible.
LaurentValue q_power(const Rational& q, const Rational& e);

} // namespace qorbit
