#include "qorbit/laurent.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace qorbit {

LaurentPoly LaurentPoly::constant(const Rational& c, long long grid) {
    LaurentPoly p(grid);
    p.add_term(Rational(0), c);
    return p;
}

LaurentPoly LaurentPoly::term(const Rational& c, const Rational& e, long long grid) {
    LaurentPoly p(grid);
    p.add_term(e, c);
    return p;
}

bool LaurentPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_zero());
}

void LaurentPoly::add_term(const Rational& exponent, const Rational& coeff) {
    if (coeff.is_zero()) return;
    if ((Rational(grid_) * exponent).den() != 1) {
        // Promote the grid rather than reject: callers fix the context grid
        // up front, but folded half-weights can refine it legitimately.
        grid_ = std::lcm(grid_, (long long)exponent.den().convert_to<long long>());
    }
    auto it = terms_.find(exponent);
    if (it == terms_.end()) {
        terms_.emplace(exponent, coeff);
    } else {
        it->second += coeff;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly r(grid_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
    grid_ = std::lcm(grid_, o.grid_);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
    grid_ = std::lcm(grid_, o.grid_);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r(std::lcm(a.grid_, b.grid_));
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
    return r;
}

void LaurentPoly::scale(const Rational& c) {
    if (c.is_zero()) {
        terms_.clear();
        return;
    }
    for (auto& [e, v] : terms_) v *= c;
}

std::pair<Rational, Rational> LaurentPoly::leading() const {
    if (terms_.empty()) throw std::domain_error("LaurentPoly: leading term of zero");
    auto it = std::prev(terms_.end());
    return {it->first, it->second};
}

LaurentPoly LaurentPoly::bar() const {
    LaurentPoly r(grid_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(-e, c);
    return r;
}

std::string LaurentPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        if (!first) os << (c.is_negative() ? " - " : " + ");
        else if (c.is_negative())
            os << "-";
        first = false;
        Rational ac = c.abs();
        if (e.is_zero()) {
            os << ac;
        } else {
            if (ac != Rational(1)) os << ac << "*";
            os << "q";
            if (e != Rational(1)) os << "^{" << e << "}";
        }
    }
    return os.str();
}

LaurentPoly laurent_div(const LaurentPoly& num, const LaurentPoly& den) {
    if (den.is_zero()) throw std::domain_error("laurent_div: zero divisor");
    LaurentPoly q(std::lcm(num.grid_, den.grid_));
    LaurentPoly r = num;
    auto [de, dc] = den.leading();
    // The quotient of an exact division cannot reach below this exponent.
    std::optional<Rational> low_bound;
    if (!num.is_zero()) low_bound = num.terms().begin()->first - den.terms().begin()->first;
    while (!r.is_zero()) {
        auto [re, rc] = r.leading();
        Rational qe = re - de;
        if (low_bound && qe < *low_bound)
            throw laurent_division_error("laurent_div: non-exact division, remainder " +
                                             rc.str() + "*q^{" + re.str() + "}",
                                         re, rc);
        Rational qc = rc / dc;
        q.add_term(qe, qc);
        LaurentPoly t = LaurentPoly::term(qc, qe, q.grid_) * den;
        r -= t;
        if (!r.is_zero() && r.leading().first >= re)
            throw std::logic_error("laurent_div: leading exponent failed to decrease");
    }
    return q;
}

LaurentValue q_power(const Rational& q, const Rational& e) {
    if (!q.is_positive()) throw std::domain_error("q_power: q must be positive");
    LaurentValue v;
    if (e.is_integer()) {
        v.exact = q.pow(e.num().convert_to<long long>());
        v.approx = v.exact->to_double();
        return v;
    }
    unsigned n = (unsigned)e.den().convert_to<unsigned long long>();
    Rational root;
    if (exact_root(q, n, root)) {
        v.exact = root.pow(e.num().convert_to<long long>());
        v.approx = v.exact->to_double();
        return v;
    }
    v.approx = std::pow(q.to_double(), e.to_double());
    return v;
}

LaurentValue laurent_eval(const LaurentPoly& p, const Rational& q) {
    if (!q.is_positive() || q >= Rational(1))
        throw std::domain_error("laurent_eval: q must satisfy 0 < q < 1");
    LaurentValue acc;
    acc.exact = Rational(0);
    double approx = 0.0;
    for (const auto& [e, c] : p.terms()) {
        LaurentValue pw = q_power(q, e);
        if (acc.exact && pw.exact)
            *acc.exact += c * *pw.exact;
        else
            acc.exact.reset();
        approx += c.to_double() * pw.approx;
    }
    acc.approx = acc.exact ? acc.exact->to_double() : approx;
    return acc;
}

} // namespace qorbit
