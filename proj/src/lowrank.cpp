#include "qorbit/lowrank.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace qorbit {

// ----------------------------------------------------------------- Stratum

std::string Stratum::str() const {
    std::ostringstream os;
    switch (kind) {
    case Kind::SPlus:
        os << "S+(c=" << c_approx << ", n=" << n << ")";
        break;
    case Kind::SZero:
        os << "S0(t=" << t_approx << ")";
        break;
    case Kind::SMinus:
        os << "S-(c=" << cm_approx << ", a=" << a_approx << ")";
        break;
    }
    return os.str();
}

std::optional<Stratum> h2_stratify(const Rational& d, const Rational& t, const Rational& q) {
    if (!q.is_positive() || q >= Rational(1)) throw std::domain_error("h2_stratify: need 0 < q < 1");
    Stratum s;
    if (d.is_zero()) {
        s.kind = Stratum::Kind::SZero;
        s.t = t;
        s.t_approx = t.to_double();
        return s;
    }
    if (d.is_negative()) {
        s.kind = Stratum::Kind::SMinus;
        Rational cm2 = -d;
        Rational cm;
        if (exact_root(cm2, 2, cm)) {
            s.cm = cm;
            s.cm_approx = cm.to_double();
            Rational u = t / cm;
            Rational disc = u * u + Rational(4);
            Rational root;
            if (exact_root(disc, 2, root)) {
                s.a = (u + root) / Rational(2);
                s.a_approx = s.a->to_double();
            } else {
                double ud = u.to_double();
                s.a_approx = (ud + std::sqrt(ud * ud + 4.0)) / 2.0;
            }
        } else {
            s.cm_approx = std::sqrt(cm2.to_double());
            double ud = t.to_double() / s.cm_approx;
            s.a_approx = (ud + std::sqrt(ud * ud + 4.0)) / 2.0;
        }
        s.t = t;
        s.t_approx = t.to_double();
        return s;
    }
    // d > 0: admissible iff t^2 = d s_n^2 for some n (so t = +-sqrt(d) s_n)
    if (t.is_zero()) return std::nullopt;
    Rational t2 = t * t;
    for (long long n = 0;; ++n) {
        Rational sn = q.pow(-(n + 1)) + q.pow(n + 1);
        Rational rhs = d * sn * sn;
        if (t2 == rhs) {
            Stratum sp;
            sp.kind = Stratum::Kind::SPlus;
            sp.n = n;
            sp.c = t / sn;
            sp.c_approx = sp.c->to_double();
            return sp;
        }
        if (rhs > t2) return std::nullopt; // s_n is strictly increasing
    }
}

std::optional<Stratum> h2_stratify(double d, double t, double q, double rel_tol) {
    if (!(q > 0.0 && q < 1.0)) throw std::domain_error("h2_stratify: need 0 < q < 1");
    Stratum s;
    if (d == 0.0) {
        s.kind = Stratum::Kind::SZero;
        s.t_approx = t;
        return s;
    }
    if (d < 0.0) {
        s.kind = Stratum::Kind::SMinus;
        s.cm_approx = std::sqrt(-d);
        double u = t / s.cm_approx;
        s.a_approx = (u + std::sqrt(u * u + 4.0)) / 2.0;
        s.t_approx = t;
        return s;
    }
    double c = std::sqrt(d);
    double at = std::abs(t);
    for (long long n = 0;; ++n) {
        double sn = std::pow(q, -(double)(n + 1)) + std::pow(q, (double)(n + 1));
        double target = c * sn;
        if (std::abs(at - target) <= rel_tol * target) {
            Stratum sp;
            sp.kind = Stratum::Kind::SPlus;
            sp.n = n;
            sp.c_approx = t < 0 ? -c : c;
            return sp;
        }
        if (target > at * (1.0 + rel_tol)) return std::nullopt;
    }
}

// ------------------------------------------------------------------ models

H2Model h2_model(const Stratum& s, int block, int cutoff, double q) {
    if (cutoff < 2) throw std::invalid_argument("h2_model: cutoff must be >= 2");
    std::vector<double> spec;
    double d = 0.0, t = 0.0;
    bool finite = false;
    switch (s.kind) {
    case Stratum::Kind::SPlus: {
        if (block != 0) throw std::invalid_argument("h2_model: SPlus has a single block");
        double c = s.c ? s.c->to_double() : s.c_approx;
        long long dim = std::min<long long>(s.n + 1, cutoff);
        finite = dim == s.n + 1;
        for (long long k = 0; k < dim; ++k) spec.push_back(c * std::pow(q, (double)(-s.n + 2 * k)));
        d = c * c;
        t = c * (std::pow(q, -(double)(s.n + 1)) + std::pow(q, (double)(s.n + 1)));
        break;
    }
    case Stratum::Kind::SZero: {
        if (block != 0) throw std::invalid_argument("h2_model: SZero has a single block");
        double tv = s.t ? s.t->to_double() : s.t_approx;
        if (tv == 0.0)
            throw std::invalid_argument("h2_model: S0 with t = 0 has only the zero character");
        for (int k = 0; k < cutoff; ++k) spec.push_back(tv * std::pow(q, (double)(2 * k + 1)));
        d = 0.0;
        t = tv;
        break;
    }
    case Stratum::Kind::SMinus: {
        if (block != 1 && block != -1)
            throw std::invalid_argument("h2_model: SMinus requires block +1 or -1");
        double cm = s.cm ? s.cm->to_double() : s.cm_approx;
        double av = s.a ? s.a->to_double() : s.a_approx;
        double factor = block == 1 ? cm * av : -cm / av;
        for (int k = 0; k < cutoff; ++k) spec.push_back(factor * std::pow(q, (double)(2 * k + 1)));
        d = -cm * cm;
        t = (av - 1.0 / av) * cm;
        break;
    }
    }
    int n = (int)spec.size();
    H2Model m;
    m.z = Eigen::MatrixXd::Zero(n, n);
    m.v = Eigen::MatrixXd::Zero(n, n);
    m.w = Eigen::MatrixXd::Zero(n, n);
    m.u = Eigen::MatrixXd::Zero(n, n);
    m.d = d;
    m.t = t;
    m.block = block;
    for (int k = 0; k < n; ++k) {
        m.z(k, k) = spec[(std::size_t)k];
        m.u(k, k) = q * (t - q * spec[(std::size_t)k]);
    }
    for (int k = 0; k + 1 < n; ++k) {
        double zk = spec[(std::size_t)k];
        double w2 = q * q * (-d + q * t * zk - q * q * zk * zk);
        if (w2 < 0 && w2 > -1e-9 * std::abs(d)) w2 = 0.0;
        if (w2 < 0) throw internal_check_error("h2_model: negative band coefficient");
        double wk = std::sqrt(w2);
        m.w(k + 1, k) = wk; // w e_k = w_k e_{k+1}
        m.v(k, k + 1) = wk; // v = w^*
    }
    m.active = finite ? n : n - 1;
    return m;
}

double h2_relation_residual(const H2Model& m, double q) {
    int n = (int)m.z.rows();
    int a = std::max(m.active - 1, 1);
    auto sub = [&](const Eigen::MatrixXd& x) { return x.topLeftCorner(a, a); };
    Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
    double r = 0.0;
    auto upd = [&](const Eigen::MatrixXd& x) { r = std::max(r, sub(x).cwiseAbs().maxCoeff()); };
    upd(m.z * m.w - q * q * m.w * m.z);
    upd(m.v * m.z - q * q * m.z * m.v);
    upd(m.v * m.w / (q * q) - (-m.d * I + q * m.t * m.z - q * q * m.z * m.z));
    upd(m.w * m.v / (q * q) - (-m.d * I + m.t * m.z / q - m.z * m.z / (q * q)));
    upd(m.u - q * (m.t * I - q * m.z));
    return r;
}

// ------------------------------------------------- banded state invariance

namespace {

// Banded operator on the truncated half-line basis: band[o][k] is the
// coefficient of e_{k+o} in A e_k.
struct Banded {
    int n = 0;
    std::map<int, std::vector<double>> bands;

    static Banded diagonal(const std::vector<double>& d) {
        Banded b;
        b.n = (int)d.size();
        b.bands[0] = d;
        return b;
    }

    Banded mul(const Banded& rhs) const { // this * rhs
        Banded out;
        out.n = n;
        for (const auto& [ob, vb] : rhs.bands) {
            for (const auto& [oa, va] : bands) {
                int o = oa + ob;
                auto& tgt = out.bands[o];
                if (tgt.empty()) tgt.assign((std::size_t)n, 0.0);
                for (int k = 0; k < n; ++k) {
                    int mid = k + ob;
                    int end = mid + oa;
                    if (mid < 0 || mid >= n || end < 0 || end >= n) continue;
                    tgt[(std::size_t)k] += va[(std::size_t)mid] * vb[(std::size_t)k];
                }
            }
        }
        return out;
    }

    Banded minus(const Banded& rhs) const {
        Banded out = *this;
        for (const auto& [o, vals] : rhs.bands) {
            auto& tgt = out.bands[o];
            if (tgt.empty()) tgt.assign(vals.size(), 0.0);
            for (std::size_t k = 0; k < vals.size(); ++k) tgt[k] -= vals[k];
        }
        return out;
    }

    void scale(double s) {
        for (auto& [o, vals] : bands)
            for (auto& v : vals) v *= s;
    }

    double weighted_trace(const std::vector<double>& weight) const {
        auto it = bands.find(0);
        if (it == bands.end()) return 0.0;
        double acc = 0.0;
        for (int k = 0; k < n; ++k) acc += weight[(std::size_t)k] * it->second[(std::size_t)k];
        return acc;
    }
};

struct BlockOps {
    std::vector<double> zdiag;
    Banded z, v, w, u, zinv, x;
    double sign = 1.0;
};

BlockOps make_block(const Stratum& s, int block, int cutoff, double q) {
    H2Model m = h2_model(s, block, cutoff, q);
    int n = (int)m.z.rows();
    BlockOps b;
    b.zdiag.resize((std::size_t)n);
    std::vector<double> ud((std::size_t)n), zi((std::size_t)n);
    for (int k = 0; k < n; ++k) {
        b.zdiag[(std::size_t)k] = m.z(k, k);
        ud[(std::size_t)k] = m.u(k, k);
        zi[(std::size_t)k] = 1.0 / m.z(k, k);
    }
    b.z = Banded::diagonal(b.zdiag);
    b.u = Banded::diagonal(ud);
    b.zinv = Banded::diagonal(zi);
    b.v.n = b.w.n = n;
    b.w.bands[1].assign((std::size_t)n, 0.0);
    b.v.bands[-1].assign((std::size_t)n, 0.0);
    for (int k = 0; k + 1 < n; ++k) {
        b.w.bands[1][(std::size_t)k] = m.w(k + 1, k);        // w e_k = w_k e_{k+1}
        b.v.bands[-1][(std::size_t)(k + 1)] = m.v(k, k + 1); // v e_{k+1} = w_k e_k
    }
    // x = q^{1/2} (q^{-1} - q)^{-1} v z^{-1}
    b.x = b.v.mul(b.zinv);
    b.x.scale(std::sqrt(q) / (1.0 / q - q));
    b.sign = (s.kind == Stratum::Kind::SMinus && block == -1) ? -1.0 : 1.0;
    return b;
}

} // namespace

ResidualReport invariance_residual(const Stratum& s, int cutoff, double q) {
    std::vector<BlockOps> blocks;
    if (s.kind == Stratum::Kind::SMinus) {
        blocks.push_back(make_block(s, 1, cutoff, q));
        blocks.push_back(make_block(s, -1, cutoff, q));
    } else {
        blocks.push_back(make_block(s, 0, cutoff, q));
    }

    double denom = 0.0;
    for (const auto& b : blocks) {
        double tz = 0.0;
        for (double zv : b.zdiag) tz += zv;
        denom += b.sign * tz;
    }

    auto state = [&](const std::vector<Banded>& per_block) {
        double acc = 0.0;
        for (std::size_t i = 0; i < blocks.size(); ++i)
            acc += blocks[i].sign * per_block[i].weighted_trace(blocks[i].zdiag);
        return acc / denom;
    };

    // monomials over {z, v, w, u} of degree 0..3
    std::vector<std::vector<int>> words{{}};
    std::vector<std::vector<int>> frontier{{}};
    for (int len = 1; len <= 3; ++len) {
        std::vector<std::vector<int>> next;
        for (const auto& w : frontier)
            for (int g = 0; g < 4; ++g) {
                auto nw = w;
                nw.push_back(g);
                next.push_back(nw);
            }
        words.insert(words.end(), next.begin(), next.end());
        frontier = std::move(next);
    }

    ResidualReport rep;
    for (const auto& word : words) {
        std::vector<Banded> X, EX, KX;
        for (const auto& b : blocks) {
            Banded acc = Banded::diagonal(std::vector<double>((std::size_t)b.z.n, 1.0));
            for (int g : word) {
                const Banded* gen = g == 0 ? &b.z : g == 1 ? &b.v : g == 2 ? &b.w : &b.u;
                acc = gen->mul(acc);
            }
            // E > X = x X - z^{-1} X z x ; K > X = z^{-1} X z
            Banded zx = b.z.mul(b.x);
            Banded ex = b.x.mul(acc).minus(b.zinv.mul(acc.mul(zx)));
            Banded kx = b.zinv.mul(acc.mul(b.z));
            X.push_back(std::move(acc));
            EX.push_back(std::move(ex));
            KX.push_back(std::move(kx));
        }
        double scale = std::max(1.0, std::abs(state(X)));
        rep.max_e = std::max(rep.max_e, std::abs(state(EX)) / scale);
        rep.max_k = std::max(rep.max_k, std::abs(state(KX) - state(X)) / scale);
    }
    return rep;
}

// ------------------------------------------------------------------ fusion

namespace {

struct BigCell {
    Eigen::MatrixXd a, c;
};

// The big-cell corepresentation matrix entries acting on l^2(N); the
// diagonal coefficients are pinned by unitarity and D = ad - qbc = 1.
BigCell big_cell(int n, double q) {
    BigCell s;
    s.a = Eigen::MatrixXd::Zero(n, n);
    s.c = Eigen::MatrixXd::Zero(n, n);
    for (int k = 0; k < n; ++k) {
        if (k > 0) s.a(k - 1, k) = std::sqrt(1.0 - std::pow(q, 2.0 * k));
        s.c(k, k) = -std::pow(q, (double)k);
    }
    return s;
}

Eigen::MatrixXd kron(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
    Eigen::MatrixXd out(A.rows() * B.rows(), A.cols() * B.cols());
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < A.cols(); ++j)
            out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    return out;
}

double spectrum_match(const Eigen::VectorXd& eigs, const std::vector<double>& predicted,
                      int top_count) {
    std::vector<double> ev(eigs.data(), eigs.data() + eigs.size());
    std::sort(ev.begin(), ev.end(), [](double x, double y) { return std::abs(x) > std::abs(y); });
    double worst = 0.0;
    for (int i = 0; i < top_count && i < (int)ev.size(); ++i) {
        double best = 1e300;
        for (double p : predicted) best = std::min(best, std::abs(ev[(std::size_t)i] - p));
        worst = std::max(worst, best);
    }
    std::vector<double> pr = predicted;
    std::sort(pr.begin(), pr.end(), [](double x, double y) { return std::abs(x) > std::abs(y); });
    for (int i = 0; i < 3 && i < (int)pr.size(); ++i) {
        double best = 1e300;
        for (double e : ev) best = std::min(best, std::abs(e - pr[(std::size_t)i]));
        worst = std::max(worst, best);
    }
    return worst;
}

} // namespace

double fusion_spectrum_residual(const Stratum& s, int model_cut, int su2_cut, double q,
                                int top_count) {
    std::vector<H2Model> models;
    std::vector<double> predicted;
    if (s.kind == Stratum::Kind::SMinus) {
        models.push_back(h2_model(s, 1, model_cut, q));
        models.push_back(h2_model(s, -1, model_cut, q));
        double cm = s.cm ? s.cm->to_double() : s.cm_approx;
        double av = s.a ? s.a->to_double() : s.a_approx;
        for (int k = 0; k < 2 * model_cut; ++k) {
            predicted.push_back(cm * av * std::pow(q, (double)(2 * k + 1)));
            predicted.push_back(-cm / av * std::pow(q, (double)(2 * k + 1)));
        }
    } else {
        models.push_back(h2_model(s, 0, model_cut, q));
        for (int i = 0; i < models[0].z.rows(); ++i) predicted.push_back(models[0].z(i, i));
        if (s.kind == Stratum::Kind::SZero) {
            double tv = s.t ? s.t->to_double() : s.t_approx;
            for (int k = (int)models[0].z.rows(); k < 2 * model_cut; ++k)
                predicted.push_back(tv * std::pow(q, (double)(2 * k + 1)));
        }
    }

    BigCell sc = big_cell(su2_cut, q);
    Eigen::MatrixXd aa = sc.a.transpose() * sc.a;
    Eigen::MatrixXd ac = sc.a.transpose() * sc.c;
    Eigen::MatrixXd ca = sc.c.transpose() * sc.a;
    Eigen::MatrixXd cc = sc.c.transpose() * sc.c;
    double worst = 0.0;
    for (const auto& m : models) {
        Eigen::MatrixXd zp = kron(m.z, aa) + kron(m.w, ac) + kron(m.v, ca) + kron(m.u, cc);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (zp + zp.transpose()));
        worst = std::max(worst, spectrum_match(es.eigenvalues(), predicted, top_count));
    }
    return worst;
}

double character_fusion_residual(double cm, double a, int su2_cut, double q, int top_count) {
    double t = (a - 1.0 / a) * cm;
    BigCell sc = big_cell(su2_cut, q);
    Eigen::MatrixXd zp = q * cm * (sc.a.transpose() * sc.c + sc.c.transpose() * sc.a) +
                         q * t * (sc.c.transpose() * sc.c);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (zp + zp.transpose()));
    std::vector<double> predicted;
    for (int k = 0; k < 2 * su2_cut; ++k) {
        predicted.push_back(cm * a * std::pow(q, (double)(2 * k + 1)));
        predicted.push_back(-cm / a * std::pow(q, (double)(2 * k + 1)));
    }
    return spectrum_match(es.eigenvalues(), predicted, top_count);
}

// ----------------------------------------------------------- Verma records

namespace {

struct ExactOrDouble {
    std::optional<Rational> exact;
    double approx = 0.0;

    static ExactOrDouble from_rational(const Rational& r) { return {r, r.to_double()}; }
    bool is_zero(double tol) const { return exact ? exact->is_zero() : std::abs(approx) < tol; }
    bool is_negative(double tol) const { return exact ? exact->is_negative() : approx < -tol; }

    ExactOrDouble mul(const ExactOrDouble& o) const {
        ExactOrDouble r;
        if (exact && o.exact) r.exact = *exact * *o.exact;
        r.approx = exact && o.exact ? r.exact->to_double() : approx * o.approx;
        return r;
    }
};

ExactOrDouble qvalue(const Rational& s, const Rational& e, const Rational& q) {
    LaurentValue v = q_power(q, e);
    ExactOrDouble out;
    if (v.exact) out.exact = s * *v.exact;
    out.approx = out.exact ? out.exact->to_double() : s.to_double() * v.approx;
    return out;
}

ExactOrDouble affine(const Rational& shift, int sign, const ExactOrDouble& x) {
    ExactOrDouble r;
    if (x.exact) r.exact = shift + Rational(sign) * *x.exact;
    r.approx = r.exact ? r.exact->to_double() : shift.to_double() + sign * x.approx;
    return r;
}

ExactOrDouble div(const ExactOrDouble& a, const ExactOrDouble& b) {
    ExactOrDouble r;
    if (a.exact && b.exact && !b.exact->is_zero()) r.exact = *a.exact / *b.exact;
    r.approx = r.exact ? r.exact->to_double() : a.approx / b.approx;
    return r;
}

} // namespace

VermaRecord verma_gram(VermaCase kind, const QScalar& lambda, const Rational& eps, long long t_max,
                       const Rational& q) {
    if (!lambda.is_positive()) throw std::invalid_argument("verma_gram: lambda must be positive");
    if (t_max > 10000) throw guard_error("verma_gram: t_max guard exceeded");
    const double tol = 1e-12;
    VermaRecord rec;
    rec.kind = kind;
    rec.lambda = lambda;
    rec.eps = eps;

    auto lam_pow = [&](long long k, const Rational& extra_exp) {
        // lambda^{-k} q^{extra} with lambda = scale * q^{qexp}
        Rational s = lambda.scale().pow(-k);
        Rational e = extra_exp - Rational(k) * lambda.qexp();
        return qvalue(s, e, q);
    };
    Rational eps2 = eps * eps;

    ExactOrDouble c = ExactOrDouble::from_rational(Rational(1));
    rec.norms.push_back(c.approx);
    rec.norms_exact.push_back(c.exact);
    bool dead = false;
    rec.unitarizable = true;
    for (long long t = 1; t <= t_max; ++t) {
        if (dead) {
            rec.norms.push_back(0.0);
            rec.norms_exact.push_back(Rational(0));
            continue;
        }
        // positive prefactor q^{-t+1} (q^{-t} - q^t) / (q^{-1} - q)^2
        ExactOrDouble bracket = qvalue(Rational(1), Rational(-t), q);
        ExactOrDouble qt = qvalue(Rational(1), Rational(t), q);
        if (bracket.exact && qt.exact) {
            bracket.exact = *bracket.exact - *qt.exact;
            bracket.approx = bracket.exact->to_double();
        } else {
            bracket.exact.reset();
            bracket.approx -= qt.approx;
        }
        ExactOrDouble denom = ExactOrDouble::from_rational((q.inv() - q) * (q.inv() - q));
        ExactOrDouble pre = div(qvalue(Rational(1), Rational(-t + 1), q).mul(bracket), denom);

        ExactOrDouble factor;
        switch (kind) {
        case VermaCase::A1_H2:
            factor = affine(Rational(1), -1,
                            lam_pow(2, Rational(-2 * t + 2)).mul(ExactOrDouble::from_rational(eps)));
            break;
        case VermaCase::A1xA1:
            factor = affine(Rational(1), -1,
                            lam_pow(4, Rational(-2 * t + 4)).mul(ExactOrDouble::from_rational(eps2)));
            break;
        case VermaCase::A2_twisted: {
            ExactOrDouble e2l2 = lam_pow(2, Rational(0)).mul(ExactOrDouble::from_rational(eps2));
            ExactOrDouble up = affine(Rational(1), 1, e2l2.mul(qvalue(Rational(1), Rational(-t + 4), q)));
            ExactOrDouble down =
                affine(Rational(1), 1, e2l2.mul(qvalue(Rational(1), Rational(-2 * t + 5), q)));
            ExactOrDouble van =
                affine(Rational(1), -1, e2l2.mul(qvalue(Rational(1), Rational(-t + 4), q)));
            factor = div(up, down).mul(van);
            break;
        }
        }
        c = c.mul(pre.mul(factor));
        if (c.is_zero(tol)) {
            dead = true;
            rec.truncation = t;
            rec.norms.push_back(0.0);
            rec.norms_exact.push_back(Rational(0));
            continue;
        }
        if (c.is_negative(tol)) rec.unitarizable = false;
        rec.norms.push_back(c.approx);
        rec.norms_exact.push_back(c.exact);
    }
    return rec;
}

QScalar family_member(VermaCase kind, long long n) {
    switch (kind) {
    case VermaCase::A1_H2:
        return QScalar::q_pow(Rational(-n));
    case VermaCase::A1xA1:
        return QScalar::q_pow(Rational(1 - n, 2));
    case VermaCase::A2_twisted:
        return QScalar::q_pow(Rational(3 - n, 2));
    }
    throw std::logic_error("family_member: bad case");
}

Classification classify_hw(VermaCase kind, const Rational& eps, const Rational& q,
                           long long n_max) {
    Rational ae = eps.abs();
    if (!(ae.is_zero() || ae == Rational(1)))
        throw std::invalid_argument("classify_hw: eps must be reduced (|eps| in {0,1})");
    Classification out;
    if (eps.is_zero()) {
        out.shape = Classification::Shape::AllPositive;
        out.description = "all moduli > 0";
        return out;
    }
    if (eps.is_negative()) {
        if (kind != VermaCase::A1_H2)
            throw std::invalid_argument("classify_hw: negative eps only arises in the rank-1 case");
        out.shape = Classification::Shape::AllNonzeroReal;
        out.description = "all of R^x, two dot-related half-lines";
        return out;
    }
    out.shape = Classification::Shape::DiscreteFamily;
    out.description = "discrete q-power family";
    for (long long n = 0; n <= n_max; ++n) {
        QScalar lam = family_member(kind, n);
        VermaRecord rec = verma_gram(kind, lam, eps, std::min<long long>(2 * n + 8, 200), q);
        if (!rec.unitarizable)
            throw internal_check_error("classify_hw: family member failed the sign scan");
        out.family.push_back(lam);
    }
    return out;
}

ModuleWeights module_weight_mults(VermaCase kind, const QScalar& lambda, const Rational& eps,
                                  long long depth, const Rational& q, const FoldedSystem& fs) {
    ModuleWeights out;
    const RootSystem& rs = fs.base();

    auto match_family = [&](long long max_n) -> std::optional<long long> {
        QScalar mod = lambda.abs();
        for (long long n = 0; n <= max_n; ++n)
            if (mod.equal_at(family_member(kind, n), q)) return n;
        return std::nullopt;
    };

    switch (kind) {
    case VermaCase::A1_H2: {
        Weight alpha = rs.simple_root(0);
        if (eps.is_positive()) {
            auto n = match_family(depth + 64);
            if (!n)
                throw std::invalid_argument("module_weight_mults: weight not in the classified family");
            for (long long tstep = 0; tstep <= std::min(depth, *n); ++tstep)
                out.levels.emplace_back(Rational(tstep) * alpha, BigInt(1));
        } else {
            for (long long tstep = 0; tstep <= depth; ++tstep)
                out.levels.emplace_back(Rational(tstep) * alpha, BigInt(1));
            out.cap_a = 1;
        }
        return out;
    }
    case VermaCase::A1xA1: {
        Weight beta = fs.folded_simple(0); // (alpha_1 + alpha_2)/2
        if (eps.is_positive()) {
            auto n = match_family(depth + 64);
            if (!n)
                throw std::invalid_argument("module_weight_mults: weight not in the classified family");
            for (long long m = 0; m <= depth; ++m)
                out.levels.emplace_back(Rational(m) * beta,
                                        BigInt((unsigned long long)(std::min(m, *n) + 1)));
            out.cap_a = BigInt(*n + 1);
        } else {
            for (long long m = 0; m <= depth; ++m)
                out.levels.emplace_back(Rational(m) * beta, BigInt((unsigned long long)(m + 1)));
            out.cap_a = 1;
            out.cap_b = 1;
        }
        return out;
    }
    case VermaCase::A2_twisted: {
        Weight beta = fs.folded_simple(0);
        auto count = [&](long long level, std::optional<long long> trunc) {
            BigInt total = 0;
            long long tcap = trunc ? std::min(*trunc, level) : level;
            for (long long t = 0; t <= tcap; ++t) total += BigInt((level - t) / 2 + 1);
            return total;
        };
        std::optional<long long> n;
        if (eps.is_positive()) {
            n = match_family(depth + 64);
            if (!n)
                throw std::invalid_argument("module_weight_mults: weight not in the classified family");
        }
        for (long long level = 0; level <= depth; ++level)
            out.levels.emplace_back(Rational(level) * beta, count(level, n));
        if (n) {
            out.cap_a = BigInt(*n + 1);
            out.cap_b = BigInt((*n + 1 + 1) / 2);
        } else {
            out.cap_a = 1;
            out.cap_b = 1;
            out.cap_c = 1; // quadratic growth of the free two-row count
        }
        return out;
    }
    }
    throw std::logic_error("module_weight_mults: bad case");
}

std::optional<VermaCase> verma_case_of(const TwistingDatum& nu) {
    const RootSystem& rs = nu.root_system();
    if (rs.rank() == 1 && nu.tau().is_identity()) return VermaCase::A1_H2;
    if (rs.rank() == 2 && !nu.tau().is_identity()) {
        if (rs.cartan(0, 1) == 0) return VermaCase::A1xA1;
        if (rs.cartan(0, 1) == -1) return VermaCase::A2_twisted;
    }
    return std::nullopt;
}

MultProvider lowrank_provider(const TwistingDatum& nu, const Rational& q) {
    auto kind = verma_case_of(nu);
    if (!kind) return nullptr;
    Rational eps = nu.eps(0).is_zero() ? Rational(0) : nu.eps(0).real_value();
    auto fs = std::make_shared<FoldedSystem>(nu.root_system_ptr(), nu.tau());
    VermaCase k = *kind;
    return [k, eps, q, fs](const WeylElement&, const WeightFunction& mu, long long depth) {
        return module_weight_mults(k, mu.value(0), eps, depth, q, *fs);
    };
}

} // namespace qorbit
