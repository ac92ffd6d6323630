#include "qorbit/hc.hpp"

#include <algorithm>
#include <sstream>

namespace qorbit {

bool HCartanElement::is_unit() const {
    if (terms.size() != 1) return false;
    const auto& [w, c] = *terms.begin();
    return w.is_zero() && c == LaurentPoly::one();
}

std::string HCartanElement::str() const {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : terms) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")T_" << w.str();
    }
    return os.str();
}

namespace {

void require_ungauged_reduced(const TwistingDatum& nu, const char* who) {
    DatumFlags f = nu.classify();
    if (!f.ungauged || !f.reduced)
        throw std::invalid_argument(std::string(who) + ": datum must be ungauged and reduced");
}

Rational eps_sign(const TwistingDatum& nu, const Weight& delta) {
    PolarRational v = nu.eps_eval(delta, 'Q');
    if (v.is_zero()) return Rational(0);
    return v.real_value(); // reduced data give +-1
}

} // namespace

HCartanElement hc_image(const TwistingDatum& nu, const Weight& hw, const TwiningTable& j) {
    require_ungauged_reduced(nu, "hc_image");
    const RootSystem& rs = nu.root_system();
    if (nu.tau().act(hw) != hw) throw std::invalid_argument("hc_image: weight not tau-fixed");
    HCartanElement el;
    el.rank = rs.rank();
    Weight two_rho = Rational(2) * rs.rho();
    for (const auto& [omega, jv] : j.jvals) {
        Weight diff = hw - omega;
        if (!rs.in_root_lattice(diff)) continue;
        Rational e = eps_sign(nu, diff);
        if (e.is_zero()) continue;
        Rational coeff = Rational(jv) * e;
        LaurentPoly c = LaurentPoly::term(coeff, -rs.pairing(rs.rho(), omega) * Rational(2));
        auto it = el.terms.find(omega);
        if (it == el.terms.end())
            el.terms.emplace(omega, c);
        else {
            it->second += c;
            if (it->second.is_zero()) el.terms.erase(it);
        }
    }
    return el;
}

HCartanElement hc_image_grouped(const TwistingDatum& nu, const Weight& hw, const TwiningTable& j) {
    require_ungauged_reduced(nu, "hc_image_grouped");
    const RootSystem& rs = nu.root_system();
    HCartanElement el;
    el.rank = rs.rank();
    const auto& wn = nu.wnu();
    for (const auto& [omega, jv] : j.jvals) {
        if (!omega.is_dominant()) continue;
        Weight diff = hw - omega;
        if (!rs.in_root_lattice(diff)) continue;
        Rational e = eps_sign(nu, diff);
        if (e.is_zero()) continue;
        // stabilizer order of omega inside W_nu
        long long stab = 0;
        for (const auto& w : wn)
            if (w.act(omega) == omega) ++stab;
        Rational outer = Rational(jv) * e / Rational(stab);
        for (const auto& w : wn) {
            Weight womega = w.act(omega);
            Rational inner = eps_sign(nu, omega - womega);
            if (inner.is_zero())
                throw internal_check_error("hc_image_grouped: eps vanished inside the orbit");
            LaurentPoly c =
                LaurentPoly::term(outer * inner, -Rational(2) * rs.pairing(rs.rho(), womega));
            auto it = el.terms.find(womega);
            if (it == el.terms.end())
                el.terms.emplace(womega, c);
            else {
                it->second += c;
                if (it->second.is_zero()) el.terms.erase(it);
            }
        }
    }
    return el;
}

CycloLaurent eval_point(const HCartanElement& el, const WeightFunction& lambda) {
    // bucket by phase first so the cyclotomic reduction runs once per phase
    std::map<Rational, LaurentPoly> buckets;
    for (const auto& [omega, c] : el.terms) {
        QScalar v = lambda.eval(omega);
        if (v.is_zero()) continue;
        LaurentPoly scaled = c;
        scaled.scale(v.scale());
        LaurentPoly shifted;
        for (const auto& [e, coeff] : scaled.terms()) shifted.add_term(e + v.qexp(), coeff);
        auto it = buckets.find(v.phase());
        if (it == buckets.end())
            buckets.emplace(v.phase(), std::move(shifted));
        else
            it->second += shifted;
    }
    CycloLaurent acc;
    for (const auto& [phase, poly] : buckets) {
        if (poly.is_zero()) continue;
        if (phase.is_zero()) {
            acc += CycloLaurent(poly);
        } else {
            CycloLaurent root = CycloLaurent::from_term(Rational(1), Rational(0), phase);
            acc += root * CycloLaurent(poly);
        }
    }
    return acc;
}

std::vector<Weight> tau_fixed_dominant_weights(const FoldedSystem& fs, long long height_bound) {
    const RootSystem& rs = fs.base();
    std::size_t k = fs.num_classes();
    std::vector<Weight> gens;
    for (std::size_t i = 0; i < k; ++i) {
        Weight g(rs.rank());
        for (int s : fs.classes()[i]) g += rs.fundamental_weight((std::size_t)s);
        gens.push_back(g);
    }
    std::vector<Weight> out;
    std::vector<long long> n(k, 0);
    while (true) {
        long long total = 0;
        for (auto v : n) total += v;
        if (total >= 1 && total <= height_bound) {
            Weight w(rs.rank());
            for (std::size_t i = 0; i < k; ++i) w += Rational(n[i]) * gens[i];
            out.push_back(w);
        }
        std::size_t i = 0;
        while (i < k) {
            if (++n[i] <= height_bound) break;
            n[i] = 0;
            ++i;
        }
        if (i == k) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

CentralCharacterMatch same_central_character(const TwistingDatum& nu, const WeightFunction& l1,
                                             const WeightFunction& l2, const Rational& q,
                                             long long height_bound) {
    require_ungauged_reduced(nu, "same_central_character");
    const auto& rs = nu.root_system_ptr();
    const FoldedSystem& fs = nu.folded();

    // Route A: evaluation of the central basis images
    int eval_verdict = 1; // 1 equal, 0 inconclusive, -1 different
    for (const Weight& hw : tau_fixed_dominant_weights(fs, height_bound)) {
        TwiningTable j = twining_mults(fs, hw);
        HCartanElement z = hc_image(nu, hw, j);
        int cmp = cyclo_value_compare(eval_point(z, l1), eval_point(z, l2), q);
        if (cmp == -1) {
            eval_verdict = -1;
            break;
        }
        if (cmp == 0) eval_verdict = std::min(eval_verdict, 0);
    }

    // Route B: orbit witness search over W_nu and exact gauges
    CentralCharacterMatch out;
    auto Istar = nu.tau().fundamental_domain();
    for (const auto& w : nu.wnu()) {
        WeightFunction moved = nu.dot(w, l1, true);
        std::vector<QScalar> gauge(rs->rank(), QScalar::one());
        bool ok = true;
        for (std::size_t r = 0; r < rs->rank() && ok; ++r) {
            QScalar g = l2.value(r) / moved.value(r);
            if ((std::size_t)nu.tau()((int)r) == r) {
                if (!g.equal_at(QScalar::one(), q)) ok = false;
            } else {
                if (!g.is_unimodular_at(q)) ok = false;
            }
            gauge[r] = g;
        }
        if (ok) {
            out.equal = true;
            out.witness = w;
            out.gauge = std::move(gauge);
            break;
        }
    }

    // The two routes must agree; a bounded evaluation that looks equal
    // without a witness is reported as inconclusive rather than guessed.
    if (out.equal) {
        if (eval_verdict == -1)
            throw internal_check_error(
                "same_central_character: orbit witness found but evaluations differ");
        out.conclusive = true;
        return out;
    }
    if (eval_verdict == -1) {
        out.equal = false;
        out.conclusive = true;
        return out;
    }
    out.equal = false;
    out.conclusive = false;
    return out;
}

IntegralValue invariant_integral(const TwistingDatum& nu, const Weight& gamma, const Weight& hw,
                                 const Rational& q) {
    require_ungauged_reduced(nu, "invariant_integral");
    const RootSystem& rs = nu.root_system();
    if (nu.tau().act(hw) != hw)
        throw std::invalid_argument("invariant_integral: weight not tau-fixed");
    if (!hw.is_dominant() || !hw.is_integral())
        throw std::invalid_argument("invariant_integral: weight must be dominant integral");

    const FoldedSystem& fs = nu.folded();
    Weight gr = gamma - rs.rho();
    auto twisted_sum = [&](const Weight& top) {
        LaurentPoly acc;
        for (const auto& w : nu.wnu()) {
            Weight wt = w.act(top);
            Rational e = eps_sign(nu, top - wt);
            if (e.is_zero())
                throw internal_check_error("invariant_integral: eps vanished on an orbit difference");
            Rational sgn(fs.hsgn(w));
            acc.add_term(Rational(2) * rs.pairing(gr, wt), sgn * e);
        }
        return acc;
    };

    LaurentPoly num = twisted_sum(hw + rs.rho());
    LaurentPoly den = twisted_sum(rs.rho());
    IntegralValue out;
    out.ratio = laurent_div(num, den);
    out.qdim = q_dim_product(rs, hw);

    LaurentValue rv = laurent_eval(out.ratio, q);
    LaurentValue dv = laurent_eval(out.qdim, q);
    if (dv.value() == 0.0) throw std::domain_error("invariant_integral: vanishing quantum dimension");
    if (rv.exact && dv.exact) {
        if (dv.exact->is_zero())
            throw std::domain_error("invariant_integral: vanishing quantum dimension");
        out.exact = *rv.exact / *dv.exact;
        out.approx = out.exact->to_double();
    } else {
        out.approx = rv.value() / dv.value();
    }
    return out;
}

EGammaValue e_gamma(const TwistingDatum& nu, const Weight& gamma, const Rational& q) {
    require_ungauged_reduced(nu, "e_gamma");
    const RootSystem& rs = nu.root_system();
    const FoldedSystem& fs = nu.folded();
    LaurentPoly num;
    for (const auto& w : rs.weyl()) {
        Rational sgn(w.word().size() % 2 == 0 ? 1 : -1);
        num.add_term(-Rational(2) * rs.pairing(rs.rho(), w.act(rs.rho())), sgn);
    }
    LaurentPoly den;
    Weight gr = gamma - rs.rho();
    for (const auto& w : nu.wnu()) {
        Weight wrho = w.act(rs.rho());
        Rational e = eps_sign(nu, rs.rho() - wrho);
        Rational sgn(fs.hsgn(w));
        den.add_term(Rational(2) * rs.pairing(gr, wrho), sgn * e);
    }
    LaurentValue nv = laurent_eval(num, q);
    LaurentValue dv = laurent_eval(den, q);
    EGammaValue out;
    if (dv.value() == 0.0) throw std::domain_error("e_gamma: vanishing denominator");
    if (nv.exact && dv.exact && !dv.exact->is_zero()) {
        out.exact = *nv.exact / *dv.exact;
        out.approx = out.exact->to_double();
        out.abs_exact = out.exact->abs();
        out.abs_approx = out.abs_exact->to_double();
    } else {
        out.approx = nv.value() / dv.value();
        out.abs_approx = std::abs(out.approx);
    }
    return out;
}

bool compact_positivity(const TwistingDatum& nu, const Weight& gamma) {
    const RootSystem& rs = nu.root_system();
    Weight delta = rs.rho() - gamma;
    for (const auto& fr : nu.compact_roots().positive)
        if (!rs.pairing(delta, fr.w).is_positive()) return false;
    return true;
}

namespace {

double trace_of_cell(const TwistingDatum& nu, const WeylElement& w, const Weight& gamma,
                     const ModuleWeights& mw, const Rational& q, const Weight& shift,
                     double* tail_bound) {
    const RootSystem& rs = nu.root_system();
    // prefactor q^{2(shift + rho, rho + w(gamma - rho))}
    Weight inner = rs.rho() + w.act(gamma - rs.rho());
    Rational pre_exp = Rational(2) * rs.pairing(shift + rs.rho(), inner);
    double pre = q_power(q, pre_exp).value();
    double acc = 0.0;
    Rational min_step; // smallest positive exponent increment, for the tail
    bool have_step = false;
    Rational max_exp(0);
    for (const auto& [alpha_plus, mult] : mw.levels) {
        Rational e = Rational(2) * rs.pairing(shift + rs.rho(), alpha_plus);
        acc += Rational(mult).to_double() * q_power(q, e).value();
        if (e.is_positive()) {
            if (!have_step || e < min_step) {
                min_step = e;
                have_step = true;
            }
            if (max_exp < e) max_exp = e;
        }
    }
    if (tail_bound) {
        // mult(level m) <= cap_a + cap_b m + cap_c m^2 with exponents growing
        // at least linearly beyond the computed range: sum numerically with a
        // geometric cap on the remainder
        double x = q_power(q, have_step ? min_step : Rational(1)).value();
        double a = Rational(mw.cap_a).to_double();
        double b = Rational(mw.cap_b).to_double();
        double cq = Rational(mw.cap_c).to_double();
        double m0 = (double)mw.levels.size();
        double bound = 0.0;
        double xpow = q_power(q, max_exp).value() * x;
        double m = m0;
        for (int i = 0; i < 400; ++i, m += 1.0, xpow *= x) bound += (a + b * m + cq * m * m) * xpow;
        bound += (a + b * m + cq * m * m) * xpow / (1.0 - x) * 2.0;
        *tail_bound = pre * bound;
    }
    return pre * acc;
}

} // namespace

CellState cell_state(const TwistingDatum& nu, const WeightFunction& lambda,
                     const MultProvider& provider, long long depth, const Rational& q) {
    require_ungauged_reduced(nu, "cell_state");
    if (!provider) throw std::invalid_argument("cell_state: module multiplicities unavailable");
    if (!lambda.strictly_positive())
        throw std::invalid_argument("cell_state: the base highest weight must be strictly positive");
    auto gamma = lambda.gamma();
    if (!gamma) throw std::invalid_argument("cell_state: lambda must be a rational q-power point");

    CellState out;
    EGammaValue eg = e_gamma(nu, *gamma, q);
    out.e_gamma_abs = eg.abs_approx;

    for (const auto& [w, chi] : nu.w_minus()) {
        CellData cd{w, chi, nu.dot(w, lambda, true), 0.0, 0.0, 0.0};
        ModuleWeights mw = provider(w, cd.highest_weight, depth);
        cd.trace = trace_of_cell(nu, w, *gamma, mw, q, Weight(nu.root_system().rank()),
                                 &cd.tail_bound);
        out.trace_sum += cd.trace;
        out.cells.push_back(std::move(cd));
    }
    for (auto& cd : out.cells) cd.state_weight = cd.trace / out.trace_sum;
    out.normalization_residual = out.e_gamma_abs * out.trace_sum - 1.0;
    return out;
}

double cell_state_integral(const TwistingDatum& nu, const WeightFunction& lambda,
                           const MultProvider& provider, long long depth, const Rational& q,
                           const Weight& hw) {
    require_ungauged_reduced(nu, "cell_state_integral");
    auto gamma = lambda.gamma();
    if (!gamma) throw std::invalid_argument("cell_state_integral: lambda must be a q-power point");
    const RootSystem& rs = nu.root_system();
    double acc = 0.0;
    double trace_sum = 0.0;
    std::vector<double> weighted;
    for (const auto& [w, chi] : nu.w_minus()) {
        WeightFunction mu = nu.dot(w, lambda, true);
        ModuleWeights mw = provider(w, mu, depth);
        Rational esign = nu.eps_eval(hw - w.inverse().act(hw), 'Q').real_value();
        double t = trace_of_cell(nu, w, *gamma, mw, q, hw, nullptr);
        acc += esign.to_double() * t;
        trace_sum += trace_of_cell(nu, w, *gamma, mw, q, Weight(rs.rank()), nullptr);
    }
    return acc / trace_sum;
}

} // namespace qorbit
