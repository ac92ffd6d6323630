#include "qorbit/cyclo.hpp"

#include <numeric>
#include <sstream>

namespace qorbit {

namespace {

// Exact division of integer polynomials (lowest degree first); the division
// is known to be exact for x^m - 1 by products of cyclotomics.
std::vector<BigInt> poly_div_exact(std::vector<BigInt> num, const std::vector<BigInt>& den) {
    std::vector<BigInt> q(num.size() - den.size() + 1, BigInt(0));
    for (std::size_t k = q.size(); k-- > 0;) {
        BigInt c = num[k + den.size() - 1] / den.back();
        q[k] = c;
        if (c != 0)
            for (std::size_t j = 0; j < den.size(); ++j) num[k + j] -= c * den[j];
    }
    for (const auto& v : num)
        if (v != 0) throw std::logic_error("cyclotomic_poly: inexact division");
    return q;
}

} // namespace

std::vector<BigInt> cyclotomic_poly(long long m) {
    if (m <= 0) throw std::invalid_argument("cyclotomic_poly: m must be positive");
    static std::map<long long, std::vector<BigInt>> cache;
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    std::vector<BigInt> result;
    if (m == 1) {
        result = {BigInt(-1), BigInt(1)}; // x - 1
    } else {
        std::vector<BigInt> num(m + 1, BigInt(0));
        num[0] = -1;
        num[m] = 1;
        for (long long d = 1; d < m; ++d) {
            if (m % d != 0) continue;
            auto phi_d = cyclotomic_poly(d);
            num = poly_div_exact(std::move(num), phi_d);
        }
        result = num;
    }
    cache[m] = result;
    return result;
}

CycloLaurent CycloLaurent::from_term(const Rational& coeff, const Rational& qexp,
                                     const Rational& phase_turns) {
    CycloLaurent v;
    if (coeff.is_zero()) return v;
    Rational ph = reduce_turns(phase_turns);
    long long m = ph.den().convert_to<long long>();
    long long k = (ph * Rational(m)).num().convert_to<long long>();
    if (m > 240) throw std::domain_error("CycloLaurent: phase grid too fine (denominator > 240)");
    v.order_ = m;
    std::vector<LaurentPoly> raw((std::size_t)m);
    raw[(std::size_t)k].add_term(qexp, coeff);
    v.reduce(raw);
    return v;
}

bool CycloLaurent::is_zero() const {
    for (const auto& c : comps_)
        if (!c.is_zero()) return false;
    return true;
}

bool CycloLaurent::is_real_poly() const {
    for (std::size_t j = 1; j < comps_.size(); ++j)
        if (!comps_[j].is_zero()) return false;
    return true;
}

const LaurentPoly& CycloLaurent::real_poly() const {
    if (!is_real_poly()) throw std::domain_error("CycloLaurent: value is not a plain Laurent polynomial");
    return comps_[0];
}

void CycloLaurent::reduce(std::vector<LaurentPoly>& raw) {
    auto phi = cyclotomic_poly(order_);
    std::size_t deg = phi.size() - 1;
    for (std::size_t k = raw.size(); k-- > deg;) {
        if (raw[k].is_zero()) continue;
        LaurentPoly lead = raw[k];
        raw[k] = LaurentPoly::zero();
        // zeta^k = -(phi_0 zeta^{k-deg} + ... + phi_{deg-1} zeta^{k-1}) since phi is monic
        for (std::size_t j = 0; j < deg; ++j) {
            if (phi[j] == 0) continue;
            LaurentPoly t = lead;
            t.scale(Rational(-phi[j]));
            raw[k - deg + j] += t;
        }
    }
    raw.resize(std::max<std::size_t>(deg, 1));
    comps_ = std::move(raw);
}

void CycloLaurent::rebase(long long m) {
    if (m == order_) return;
    if (m % order_ != 0) throw std::logic_error("CycloLaurent: rebase target must be a multiple");
    long long stride = m / order_;
    std::vector<LaurentPoly> raw((std::size_t)m);
    for (std::size_t j = 0; j < comps_.size(); ++j)
        if (!comps_[j].is_zero()) raw[j * (std::size_t)stride] = comps_[j];
    order_ = m;
    reduce(raw);
}

CycloLaurent& CycloLaurent::operator+=(const CycloLaurent& o) {
    CycloLaurent rhs = o;
    long long m = std::lcm(order_, o.order_);
    rebase(m);
    rhs.rebase(m);
    for (std::size_t j = 0; j < comps_.size(); ++j) comps_[j] += rhs.comps_[j];
    return *this;
}

CycloLaurent& CycloLaurent::operator-=(const CycloLaurent& o) {
    CycloLaurent neg = o;
    for (auto& c : neg.comps_) c = -c;
    return *this += neg;
}

CycloLaurent operator*(const CycloLaurent& a, const CycloLaurent& b) {
    CycloLaurent x = a, y = b;
    long long m = std::lcm(a.order_, b.order_);
    x.rebase(m);
    y.rebase(m);
    std::vector<LaurentPoly> raw((std::size_t)(2 * m));
    for (std::size_t i = 0; i < x.comps_.size(); ++i) {
        if (x.comps_[i].is_zero()) continue;
        for (std::size_t j = 0; j < y.comps_.size(); ++j) {
            if (y.comps_[j].is_zero()) continue;
            raw[i + j] += x.comps_[i] * y.comps_[j];
        }
    }
    // fold zeta^{k} for k >= m via zeta^m = 1 before the cyclotomic reduction
    for (std::size_t k = raw.size(); k-- > (std::size_t)m;) {
        if (!raw[k].is_zero()) {
            raw[k - (std::size_t)m] += raw[k];
            raw[k] = LaurentPoly::zero();
        }
    }
    raw.resize((std::size_t)m);
    CycloLaurent r;
    r.order_ = m;
    r.reduce(raw);
    return r;
}

CycloLaurent CycloLaurent::conj() const {
    std::vector<LaurentPoly> raw((std::size_t)order_);
    for (std::size_t j = 0; j < comps_.size(); ++j) {
        if (comps_[j].is_zero()) continue;
        std::size_t k = j == 0 ? 0 : (std::size_t)order_ - j;
        raw[k] += comps_[j];
    }
    CycloLaurent r;
    r.order_ = order_;
    r.reduce(raw);
    return r;
}

bool operator==(const CycloLaurent& a, const CycloLaurent& b) {
    CycloLaurent d = a;
    d -= b;
    return d.is_zero();
}

std::complex<double> CycloLaurent::to_complex(const Rational& q) const {
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t j = 0; j < comps_.size(); ++j) {
        if (comps_[j].is_zero()) continue;
        double th = 2.0 * M_PI * (double)j / (double)order_;
        acc += laurent_eval(comps_[j], q).value() * std::complex<double>(std::cos(th), std::sin(th));
    }
    return acc;
}

std::string CycloLaurent::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t j = 0; j < comps_.size(); ++j) {
        if (comps_[j].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << comps_[j].str() << ")";
        if (j > 0) os << "*zeta" << order_ << "^" << j;
    }
    return os.str();
}

std::map<Rational, Rational> laurent_value_key(const LaurentPoly& p, const Rational& q) {
    std::map<Rational, Rational> key;
    for (const auto& [e, c] : p.terms()) {
        BigInt fl = rat_floor(e);
        Rational intpart(fl);
        Rational frac = e - intpart;
        Rational base = c * q.pow(fl.convert_to<long long>());
        if (!frac.is_zero()) {
            unsigned n = (unsigned)frac.den().convert_to<unsigned long long>();
            Rational root;
            if (exact_root(q, n, root)) {
                base *= root.pow(frac.num().convert_to<long long>());
                frac = Rational(0);
            }
        }
        auto it = key.find(frac);
        if (it == key.end())
            key.emplace(frac, base);
        else {
            it->second += base;
            if (it->second.is_zero()) key.erase(it);
        }
    }
    return key;
}

int cyclo_value_compare(const CycloLaurent& a, const CycloLaurent& b, const Rational& q) {
    CycloLaurent d = a;
    d -= b;
    if (d.is_zero()) return 1;
    // Componentwise value keys: all empty means the values cancel at q even
    // though the polynomials differ formally.
    bool all_empty = true;
    for (const auto& c : d.comps())
        if (!laurent_value_key(c, q).empty()) all_empty = false;
    if (all_empty) return 1;
    // Nonzero keys could in principle still cancel across cyclotomic
    // components over the field generated by fractional q-powers, so confirm
    // numerically before declaring inequality.
    std::complex<double> dv = d.to_complex(q);
    if (std::abs(dv) > 1e-9) return -1;
    return 0;
}

} // namespace qorbit
