#include "qorbit/twistdata.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>

namespace qorbit {

// ---------------------------------------------------------- WeightFunction

WeightFunction::WeightFunction(std::shared_ptr<const RootSystem> rs, Involution tau,
                               std::vector<QScalar> vals)
    : rs_(std::move(rs)), tau_(std::move(tau)), vals_(std::move(vals)) {
    if (vals_.size() != rs_->rank()) throw std::invalid_argument("WeightFunction: wrong length");
    for (std::size_t r = 0; r < vals_.size(); ++r) {
        if (vals_[r].is_zero()) throw std::invalid_argument("WeightFunction: values must be nonzero");
        if (vals_[(std::size_t)tau_((int)r)] != vals_[r].conj())
            throw std::invalid_argument("WeightFunction: tau-conjugation symmetry violated");
    }
}

WeightFunction WeightFunction::from_gamma(std::shared_ptr<const RootSystem> rs, Involution tau,
                                          const Weight& gamma) {
    std::vector<QScalar> vals;
    for (std::size_t r = 0; r < rs->rank(); ++r) {
        Rational e = Rational(2) * rs->pairing(gamma, rs->fundamental_weight(r));
        vals.push_back(QScalar::q_pow(e));
    }
    return WeightFunction(rs, std::move(tau), std::move(vals));
}

QScalar WeightFunction::eval(const Weight& omega) const {
    if (!omega.is_integral()) throw std::invalid_argument("WeightFunction: weight not integral");
    QScalar acc = QScalar::one();
    for (std::size_t r = 0; r < vals_.size(); ++r) {
        long long n = omega.c[r].num().convert_to<long long>();
        if (n != 0) acc *= vals_[r].pow(n);
    }
    return acc;
}

bool WeightFunction::strictly_positive() const {
    for (const auto& v : vals_)
        if (!v.is_positive()) return false;
    return true;
}

std::optional<Weight> WeightFunction::gamma() const {
    std::size_t n = rs_->rank();
    for (const auto& v : vals_)
        if (!v.phase().is_zero() || v.scale() != Rational(1)) return std::nullopt;
    // lambda_P(varpi_r) = q^{2 (gamma, varpi_r)}: solve the Gram system.
    std::vector<Rational> rhs(n);
    for (std::size_t r = 0; r < n; ++r) rhs[r] = vals_[r].qexp() / Rational(2);
    // gamma = sum g_s varpi_s with sum_s g_s (varpi_s,varpi_r) = rhs_r
    // Solve by Gaussian elimination on the Gram matrix.
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n + 1));
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t s = 0; s < n; ++s)
            a[r][s] = rs_->pairing(rs_->fundamental_weight(s), rs_->fundamental_weight(r));
        a[r][n] = rhs[r];
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a[piv][col].is_zero()) ++piv;
        if (piv == n) return std::nullopt;
        std::swap(a[piv], a[col]);
        Rational p = a[col][col];
        for (auto& x : a[col]) x /= p;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || a[i][col].is_zero()) continue;
            Rational f = a[i][col];
            for (std::size_t j = 0; j <= n; ++j) a[i][j] -= f * a[col][j];
        }
    }
    Weight g(n);
    for (std::size_t s = 0; s < n; ++s) g.c[s] = a[s][n];
    return g;
}

WeightFunction WeightFunction::multiply(const WeightFunction& o) const {
    std::vector<QScalar> vals(vals_.size());
    for (std::size_t r = 0; r < vals_.size(); ++r) vals[r] = vals_[r] * o.vals_[r];
    return WeightFunction(rs_, tau_, std::move(vals));
}

WeightFunction WeightFunction::multiply_value(std::size_t r, const QScalar& s) const {
    std::vector<QScalar> vals = vals_;
    vals[r] = vals[r] * s;
    std::size_t tr = (std::size_t)tau_((int)r);
    if (tr != r) vals[tr] = vals[tr] * s.conj();
    return WeightFunction(rs_, tau_, std::move(vals));
}

bool WeightFunction::equal_at(const WeightFunction& o, const Rational& q) const {
    for (std::size_t r = 0; r < vals_.size(); ++r)
        if (!vals_[r].equal_at(o.vals_[r], q)) return false;
    return true;
}

std::string WeightFunction::str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t r = 0; r < vals_.size(); ++r) {
        if (r) os << ", ";
        os << vals_[r].str();
    }
    os << "]";
    return os.str();
}

// ----------------------------------------------------------- SignCharacter

bool SignCharacter::all_positive() const {
    for (int s : per_class)
        if (s < 0) return false;
    return true;
}

std::string SignCharacter::str() const {
    std::string s;
    for (int v : per_class) s += v > 0 ? '+' : '-';
    return s;
}

// ----------------------------------------------------------- TwistingDatum

TwistingDatum::TwistingDatum(std::shared_ptr<const RootSystem> rs, Involution tau,
                             std::vector<PolarRational> eps)
    : rs_(std::move(rs)), tau_(std::move(tau)), eps_(std::move(eps)) {
    if (eps_.size() != rs_->rank()) throw std::invalid_argument("TwistingDatum: wrong eps length");
    for (std::size_t r = 0; r < eps_.size(); ++r)
        if (eps_[(std::size_t)tau_((int)r)] != eps_[r].conj())
            throw std::invalid_argument("TwistingDatum: eps_tau(r) must equal conj(eps_r)");
    folded_ = std::make_shared<FoldedSystem>(rs_, tau_);
}

std::vector<int> TwistingDatum::support() const {
    std::vector<int> J;
    for (std::size_t r = 0; r < eps_.size(); ++r)
        if (!eps_[r].is_zero()) J.push_back((int)r);
    return J;
}

DatumFlags TwistingDatum::classify() const {
    DatumFlags f;
    std::size_t n = rs_->rank();
    auto Ifix = tau_.fixed_nodes();
    auto Istar = tau_.fundamental_domain();
    f.regular = support().size() == n;

    bool pos_fixed = true;
    for (int r : Ifix)
        if (!eps_[(std::size_t)r].is_positive_real()) pos_fixed = false;
    f.positive = f.regular && pos_fixed;

    f.strongly_positive = true;
    for (std::size_t r = 0; r < n; ++r)
        if (!eps_[r].is_positive_real()) f.strongly_positive = false;

    f.symmetric_pair = true;
    for (std::size_t r = 0; r < n; ++r)
        if (eps_[r].modulus() != Rational(1)) f.symmetric_pair = false;

    f.gauge = true;
    for (int r : Ifix)
        if (eps_[(std::size_t)r] != PolarRational::one()) f.gauge = false;
    for (int r : Istar)
        if (eps_[(std::size_t)r].modulus() != Rational(1)) f.gauge = false;

    f.ungauged = true;
    for (int r : Istar) {
        const auto& e = eps_[(std::size_t)r];
        if (!e.is_zero() && !e.is_positive_real()) f.ungauged = false;
    }

    f.reduced = true;
    for (int r : Ifix) {
        const auto& e = eps_[(std::size_t)r];
        if (!(e.is_zero() || e == PolarRational::one() || e == PolarRational::from_real(Rational(-1))))
            f.reduced = false;
    }
    for (int r : Istar) {
        const auto& e = eps_[(std::size_t)r];
        if (!(e.is_zero() || e == PolarRational::one())) f.reduced = false;
    }

    f.strongly_reduced = f.reduced;
    if (f.reduced) {
        // tau-connected components of the support: diagram edges within J plus
        // the tau-pairing.
        std::vector<int> J = support();
        std::vector<int> comp(n, -1);
        int ncomp = 0;
        for (int start : J) {
            if (comp[(std::size_t)start] >= 0) continue;
            std::deque<int> queue{start};
            comp[(std::size_t)start] = ncomp;
            while (!queue.empty()) {
                int r = queue.front();
                queue.pop_front();
                for (int s : J) {
                    if (comp[(std::size_t)s] >= 0) continue;
                    if (rs_->cartan((std::size_t)r, (std::size_t)s) != 0 || tau_(r) == s) {
                        comp[(std::size_t)s] = ncomp;
                        queue.push_back(s);
                    }
                }
            }
            ++ncomp;
        }
        std::vector<int> minus_count(ncomp, 0);
        for (int r : J)
            if (tau_(r) == r && eps_[(std::size_t)r] == PolarRational::from_real(Rational(-1)))
                ++minus_count[(std::size_t)comp[(std::size_t)r]];
        for (int c = 0; c < ncomp; ++c)
            if (minus_count[(std::size_t)c] > 1) f.strongly_reduced = false;
    }
    return f;
}

PolarRational TwistingDatum::eps_eval(const Weight& omega, char lattice) const {
    std::vector<Rational> coords;
    if (lattice == 'Q') {
        coords = rs_->alpha_coords(omega);
    } else if (lattice == 'P') {
        coords = omega.c;
    } else {
        throw std::invalid_argument("eps_eval: lattice must be 'Q' or 'P'");
    }
    PolarRational acc = PolarRational::one();
    for (std::size_t r = 0; r < coords.size(); ++r) {
        if (!coords[r].is_integer())
            throw std::invalid_argument("eps_eval: weight not in the requested lattice");
        long long k = coords[r].num().convert_to<long long>();
        if (k == 0) continue;
        if (eps_[r].is_zero()) {
            if (k < 0) throw std::invalid_argument("eps_eval: negative coordinate off the support");
            return PolarRational(); // zero
        }
        acc *= eps_[r].pow(k);
    }
    return acc;
}

QScalar TwistingDatum::eps_q_scalar(const Weight& omega) const {
    return QScalar::from_polar(eps_eval(omega, 'Q'));
}

const std::vector<WeylElement>& TwistingDatum::wnu() const {
    if (!wnu_cache_.empty()) return wnu_cache_;
    std::vector<WeylElement> gens;
    for (std::size_t k = 0; k < folded_->num_classes(); ++k) {
        bool in_support = true;
        for (int s : folded_->classes()[k])
            if (eps_[(std::size_t)s].is_zero()) in_support = false;
        if (in_support) gens.push_back(folded_->lifted_generator(k));
    }
    wnu_cache_ = gens.empty() ? std::vector<WeylElement>{WeylElement::identity(rs_->rank())}
                              : generate_subgroup(gens, rs_->rank());
    return wnu_cache_;
}

bool TwistingDatum::wnu_contains(const WeylElement& w) const {
    for (const auto& x : wnu())
        if (x == w) return true;
    return false;
}

const CompactRoots& TwistingDatum::compact_roots() const {
    if (compact_cache_) return *compact_cache_;
    if (!classify().ungauged) throw std::invalid_argument("compact_roots: datum must be ungauged");
    CompactRoots out;
    auto Istar = tau_.fundamental_domain();
    std::vector<int> star_support_classes;
    for (int r : Istar)
        if (in_support(r)) star_support_classes.push_back(folded_->class_of(r));

    for (const auto& fr : folded_->folded_positive_roots()) {
        // beta must be supported on folded classes inside J
        bool in_J = true;
        for (std::size_t k = 0; k < fr.coords.size(); ++k) {
            if (fr.coords[k] == 0) continue;
            for (int s : folded_->classes()[k])
                if (eps_[(std::size_t)s].is_zero()) in_J = false;
        }
        if (!in_J) continue;
        // first clause: folded eps value positive
        PolarRational val = PolarRational::one();
        for (std::size_t k = 0; k < fr.coords.size(); ++k) {
            if (fr.coords[k] == 0) continue;
            int rep = folded_->classes()[k][0];
            val *= eps_[(std::size_t)rep].pow(fr.coords[k]);
        }
        bool compact = val.is_positive_real();
        // second clause: odd pairing with a folded coweight at a moved
        // support node
        if (!compact)
            for (int k : star_support_classes)
                if (fr.coords[(std::size_t)k] % 2 != 0) compact = true;
        if (compact) out.positive.push_back(fr);
    }

    // simple system: positive compact roots that are not sums of two
    // positive compact roots (allowing equal summands, for BC doubles)
    std::set<Weight> compact_set;
    for (const auto& fr : out.positive) compact_set.insert(fr.w);
    for (const auto& fr : out.positive) {
        bool decomposable = false;
        for (const auto& g1 : out.positive) {
            Weight rest = fr.w - g1.w;
            if (rest.is_zero()) continue;
            if (compact_set.count(rest)) {
                decomposable = true;
                break;
            }
        }
        if (!decomposable) out.simple.push_back(fr.w);
    }
    for (const auto& b : out.simple) out.wplus_generators.push_back(folded_->reflection_of(b));
    compact_cache_ = std::move(out);
    return *compact_cache_;
}

const std::vector<WeylElement>& TwistingDatum::wplus() const {
    if (!wplus_cache_.empty()) return wplus_cache_;
    const auto& gens = compact_roots().wplus_generators;
    wplus_cache_ = gens.empty() ? std::vector<WeylElement>{WeylElement::identity(rs_->rank())}
                                : generate_subgroup(gens, rs_->rank());
    return wplus_cache_;
}

SignCharacter TwistingDatum::sign_character(const WeylElement& w) const {
    WeylElement winv = w.inverse();
    SignCharacter chi;
    chi.per_class.assign(folded_->num_classes(), 1);
    for (std::size_t k = 0; k < folded_->num_classes(); ++k) {
        int rep = folded_->classes()[k][0];
        Weight vp = rs_->fundamental_weight((std::size_t)rep);
        Weight delta = vp - winv.act(vp);
        PolarRational v = eps_eval(delta, 'Q');
        if (v.is_zero()) throw std::invalid_argument("sign_character: support escaped J");
        if (!v.is_real()) throw std::invalid_argument("sign_character: non-real eps value");
        chi.per_class[k] = v.real_value().is_positive() ? 1 : -1;
    }
    return chi;
}

const std::vector<std::pair<WeylElement, SignCharacter>>& TwistingDatum::w_minus() const {
    if (!wminus_cache_.empty()) return wminus_cache_;
    DatumFlags flags = classify();
    if (!flags.ungauged || !flags.reduced)
        throw std::invalid_argument("w_minus: datum must be ungauged and reduced");
    (void)wnu(); // trips the subgroup guard early

    // generators: tau-fixed support nodes
    std::vector<int> gens;
    for (int r : tau_.fixed_nodes())
        if (in_support(r)) gens.push_back(r);

    std::map<std::vector<long long>, SignCharacter> seen;
    std::deque<WeylElement> queue;
    WeylElement id = WeylElement::identity(rs_->rank());
    seen.emplace(id.mat(), sign_character(id));
    queue.push_back(id);
    std::vector<std::pair<WeylElement, SignCharacter>> out;
    while (!queue.empty()) {
        WeylElement w = queue.front();
        queue.pop_front();
        SignCharacter cur = seen.at(w.mat());
        out.emplace_back(w, cur);
        for (int r : gens) {
            WeylElement nxt = rs_->simple_reflection((std::size_t)r).compose(w);
            if (seen.count(nxt.mat())) continue;
            SignCharacter chi = sign_character(nxt);
            if (chi == cur) continue; // the step must introduce a sign change
            seen.emplace(nxt.mat(), chi);
            queue.push_back(nxt);
        }
    }
    wminus_cache_ = std::move(out);
    return wminus_cache_;
}

WeightFunction TwistingDatum::dot(const WeylElement& w, const WeightFunction& lambda,
                                  bool deformed) const {
    if (!classify().ungauged) throw std::invalid_argument("dot: datum must be ungauged");
    if (!wnu_contains(w)) throw std::invalid_argument("dot: element not in W_nu");
    WeylElement winv = w.inverse();
    std::vector<QScalar> vals;
    for (std::size_t r = 0; r < rs_->rank(); ++r) {
        Weight vp = rs_->fundamental_weight(r);
        Weight moved = winv.act(vp);
        Weight delta = vp - moved;
        QScalar factor = eps_q_scalar(delta);
        if (factor.is_zero()) throw std::invalid_argument("dot: eps vanishes on a required root");
        if (deformed) {
            Rational e = Rational(2) * rs_->pairing(rs_->rho(), delta);
            factor *= QScalar::q_pow(e);
        }
        vals.push_back(factor * lambda.eval(moved));
    }
    return WeightFunction(rs_, tau_, std::move(vals));
}

// ---------------------------------------------------------- RadicalScalar

void RadicalScalar::simplify() {
    if (radicand.is_zero()) throw std::domain_error("RadicalScalar: zero radicand");
    Rational root;
    if (exact_root(radicand, (unsigned)index, root)) {
        radicand = root;
        index = 1;
    }
}

RadicalScalar& RadicalScalar::operator*=(const RadicalScalar& o) {
    long long common = std::lcm(index, o.index);
    radicand = radicand.pow(common / index) * o.radicand.pow(common / o.index);
    index = common;
    sign *= o.sign;
    simplify();
    return *this;
}

RadicalScalar RadicalScalar::pow(long long e) const {
    RadicalScalar r;
    r.sign = (e % 2 == 0) ? 1 : sign;
    if (e >= 0) {
        r.radicand = radicand.pow(e);
        r.index = index;
    } else {
        r.radicand = radicand.inv().pow(-e);
        r.index = index;
    }
    r.simplify();
    return r;
}

double RadicalScalar::to_double() const {
    return sign * std::pow(radicand.to_double(), 1.0 / (double)index);
}

std::string RadicalScalar::str() const {
    std::ostringstream os;
    if (sign < 0) os << "-";
    if (index == 1)
        os << radicand;
    else
        os << "(" << radicand << ")^(1/" << index << ")";
    return os.str();
}

// -------------------------------------------------------- strong reduction

StrongReduction strongly_reduce(const TwistingDatum& nu) {
    if (!nu.classify().ungauged) throw std::invalid_argument("strongly_reduce: datum must be ungauged");
    const auto& rs = nu.root_system_ptr();
    std::size_t n = nu.root_system().rank();

    // multiplicative reduction to a reduced datum
    std::vector<PolarRational> eps1(n);
    for (std::size_t r = 0; r < n; ++r) {
        const auto& e = nu.eps(r);
        eps1[r] = e.is_zero() ? PolarRational()
                              : PolarRational(Rational(1), e.phase());
    }
    TwistingDatum reduced(rs, nu.tau(), eps1);

    for (const auto& [w, chi] : reduced.w_minus()) {
        WeylElement winv = w.inverse();
        std::vector<PolarRational> eps2(n);
        for (std::size_t r = 0; r < n; ++r)
            eps2[r] = reduced.eps_eval(winv.act(rs->simple_root(r)), 'Q');
        TwistingDatum cand(rs, nu.tau(), eps2);
        DatumFlags f = cand.classify();
        if (!f.ungauged || !f.strongly_reduced) continue;
        // overall positive scaling: eps' = f * (w eps) on the support
        std::vector<Rational> scaling(n, Rational(1));
        for (std::size_t r = 0; r < n; ++r) {
            if (!nu.in_support((int)r)) continue;
            PolarRational weps = nu.eps_eval(winv.act(rs->simple_root(r)), 'Q');
            PolarRational ratio = eps2[r] / weps;
            if (!ratio.is_positive_real())
                throw internal_check_error("strongly_reduce: scaling is not positive");
            scaling[r] = ratio.real_value();
        }
        return StrongReduction{std::move(cand), w, std::move(scaling)};
    }
    throw internal_check_error("strongly_reduce: no strongly reduced representative found");
}

// --------------------------------------------------------- gauge transport

std::vector<RadicalScalar> gauge_transport(const TwistingDatum& nu, const TwistingDatum& nu_prime,
                                           const WeylElement& w) {
    const auto& rs = nu.root_system();
    std::size_t n = rs.rank();
    if (nu.tau().perm() != nu_prime.tau().perm())
        throw std::invalid_argument("gauge_transport: involutions differ");
    if (!nu.wnu_contains(w)) throw std::invalid_argument("gauge_transport: w not in W_nu");
    WeylElement winv = w.inverse();

    // lambda_r = eps'_r / (w eps)_r must be a positive scaling
    std::vector<Rational> lambda(n, Rational(1));
    for (std::size_t r = 0; r < n; ++r) {
        PolarRational weps = nu.eps_eval(winv.act(rs.simple_root(r)), 'Q');
        if (weps.is_zero() != nu_prime.eps(r).is_zero())
            throw std::invalid_argument("gauge_transport: supports are not Weyl related");
        if (weps.is_zero()) continue;
        PolarRational ratio = nu_prime.eps(r) / weps;
        if (!ratio.is_positive_real())
            throw std::invalid_argument("gauge_transport: data are not positively related");
        lambda[r] = ratio.real_value();
    }

    // N = exponent of P/Q
    long long N = 1;
    for (std::size_t r = 0; r < n; ++r)
        for (const auto& c : rs.alpha_coords(rs.fundamental_weight(r)))
            N = std::lcm(N, c.den().convert_to<long long>());

    // g_P(varpi_r) = prod_t (lambda_t^{1/N})^{k_t} with varpi_r = sum k_t alpha_t / N
    std::vector<RadicalScalar> f(n);
    for (std::size_t r = 0; r < n; ++r) {
        auto ac = rs.alpha_coords(rs.fundamental_weight(r));
        RadicalScalar g;
        g.index = N;
        for (std::size_t t = 0; t < n; ++t) {
            Rational k = ac[t] * Rational(N);
            if (!k.is_integer()) throw internal_check_error("gauge_transport: N is not the exponent");
            long long kk = k.num().convert_to<long long>();
            RadicalScalar part;
            part.sign = 1;
            part.radicand = lambda[t].pow(kk);
            part.index = N;
            g *= part;
        }
        // f_P = g_P * eps_Q(omega - w^{-1} omega)^{-1}
        Weight vp = rs.fundamental_weight(r);
        PolarRational e = nu.eps_eval(vp - winv.act(vp), 'Q');
        if (e.is_zero()) throw std::invalid_argument("gauge_transport: eps vanishes on an orbit difference");
        if (!e.is_real()) throw std::invalid_argument("gauge_transport: non-real eps correction");
        Rational ev = e.real_value();
        RadicalScalar corr;
        corr.sign = ev.is_negative() ? -1 : 1;
        corr.radicand = ev.abs().inv();
        corr.index = 1;
        g *= corr;
        g.simplify();
        f[r] = g;
    }

    // spectral positivity condition on tau-fixed weights, checked on the
    // generators of P^tau
    for (std::size_t r = 0; r < n; ++r) {
        std::size_t tr = (std::size_t)nu.tau()((int)r);
        if (tr < r) continue;
        RadicalScalar fr = f[r];
        if (tr != r) fr *= f[tr];
        Weight gen = rs.fundamental_weight(r);
        if (tr != r) gen += rs.fundamental_weight(tr);
        PolarRational e = nu.eps_eval(gen - winv.act(gen), 'Q');
        int esign = e.real_value().is_positive() ? 1 : -1;
        if (fr.sign * esign <= 0)
            throw internal_check_error("gauge_transport: positivity condition failed");
    }
    return f;
}

} // namespace qorbit
