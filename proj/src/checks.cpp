#include "qorbit/checks.hpp"

#include "qorbit/charring.hpp"
#include "qorbit/classical_module.hpp"
#include "qorbit/hc.hpp"
#include "qorbit/lowrank.hpp"
#include "qorbit/twistdata.hpp"

#include <chrono>
#include <cstdlib>
#include <future>
#include <random>
#include <sstream>

namespace qorbit {

namespace {

struct Failure {
    std::ostringstream msg;
    long long checked = 0;
    bool ok = true;

    void count() { ++checked; }
    std::ostream& fail() {
        ok = false;
        if (msg.tellp() > 0) msg << "; ";
        return msg;
    }
};

PolarRational pr(long long v) { return PolarRational::from_real(Rational(v)); }

TwistingDatum make_datum(const std::string& type, std::vector<int> tau,
                         std::vector<long long> eps) {
    auto rs = RootSystem::from_label(type);
    std::vector<PolarRational> e;
    for (auto v : eps) e.push_back(pr(v));
    return TwistingDatum(rs, Involution(*rs, std::move(tau)), std::move(e));
}

int thread_budget() {
    if (const char* env = std::getenv("QORBIT_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1 && v <= 64) return v;
    }
    return 1;
}

// ----------------------------------------------------------- criterion 1

CheckResult check_folding() {
    Failure f;
    struct Row {
        std::string base;
        std::vector<int> tau;
        std::string folded;
        bool non_reduced;
    };
    std::vector<Row> rows;
    auto reversal = [](int n) {
        std::vector<int> t((std::size_t)n);
        for (int i = 0; i < n; ++i) t[(std::size_t)i] = n - 1 - i;
        return t;
    };
    // A_{2n+1} -> C_{n+1}
    for (int n = 1; n + 1 <= 6; ++n)
        rows.push_back({"A" + std::to_string(2 * n + 1), reversal(2 * n + 1),
                        "C" + std::to_string(n + 1), false});
    // A_{2n} -> BC_n
    for (int n = 1; n <= 6; ++n)
        rows.push_back({"A" + std::to_string(2 * n), reversal(2 * n), "BC" + std::to_string(n), true});
    // D_n -> B_{n-1}
    for (int n = 4; n <= 7; ++n) {
        std::vector<int> t((std::size_t)n);
        for (int i = 0; i < n; ++i) t[(std::size_t)i] = i;
        std::swap(t[(std::size_t)(n - 2)], t[(std::size_t)(n - 1)]);
        rows.push_back({"D" + std::to_string(n), t, "B" + std::to_string(n - 1), false});
    }
    // E6 -> F4 (chain 1-2-3-4-5 with 6 under 3)
    rows.push_back({"E6", {4, 3, 2, 1, 0, 5}, "F4", false});

    for (const auto& row : rows) {
        f.count();
        auto rs = RootSystem::from_label(row.base);
        FoldedSystem fs(rs, Involution(*rs, row.tau));
        if (fs.folded_type() != row.folded)
            f.fail() << row.base << " folded to " << fs.folded_type() << ", expected " << row.folded;
        if (fs.non_reduced() != row.non_reduced) f.fail() << row.base << " non-reduced flag wrong";
    }
    return {"folding", f.ok, (f.ok ? "folding table reproduced, " : f.msg.str() + "; ") +
                                 std::to_string(f.checked) + " rows",
            0.0};
}

// ----------------------------------------------------------- criterion 2

struct DatumSpec {
    std::string type;
    std::vector<int> tau;
    std::vector<long long> eps;
};

std::vector<DatumSpec> all_reduced_regular_data(int max_rank) {
    std::vector<DatumSpec> out;
    std::vector<std::string> types;
    for (int r = 1; r <= max_rank; ++r) types.push_back("A" + std::to_string(r));
    if (max_rank >= 2) types.push_back("B2");
    if (max_rank >= 3) {
        types.push_back("B3");
        types.push_back("C3");
    }
    if (max_rank >= 4) {
        types.push_back("B4");
        types.push_back("C4");
        types.push_back("D4");
        types.push_back("F4");
    }
    if (max_rank >= 2) types.push_back("G2");

    for (const auto& t : types) {
        auto rs = RootSystem::from_label(t);
        int n = (int)rs->rank();
        // tau = id, all sign patterns
        for (long long mask = 0; mask < (1LL << n); ++mask) {
            DatumSpec d;
            d.type = t;
            d.tau.resize((std::size_t)n);
            for (int i = 0; i < n; ++i) d.tau[(std::size_t)i] = i;
            for (int i = 0; i < n; ++i) d.eps.push_back((mask >> i) & 1 ? -1 : 1);
            out.push_back(std::move(d));
        }
        // nontrivial involutions where the diagram admits them
        std::vector<std::vector<int>> taus;
        if (t == "A2") taus.push_back({1, 0});
        if (t == "A3") taus.push_back({2, 1, 0});
        if (t == "A4") taus.push_back({3, 2, 1, 0});
        if (t == "D4") {
            taus.push_back({0, 1, 3, 2});
            taus.push_back({2, 1, 0, 3});
            taus.push_back({3, 1, 2, 0});
        }
        for (const auto& tau : taus) {
            std::vector<int> fixed;
            for (int i = 0; i < n; ++i)
                if (tau[(std::size_t)i] == i) fixed.push_back(i);
            for (long long mask = 0; mask < (1LL << fixed.size()); ++mask) {
                DatumSpec d;
                d.type = t;
                d.tau = tau;
                d.eps.assign((std::size_t)n, 1);
                for (std::size_t i = 0; i < fixed.size(); ++i)
                    if ((mask >> i) & 1) d.eps[(std::size_t)fixed[i]] = -1;
                out.push_back(std::move(d));
            }
        }
    }
    return out;
}

CheckResult check_theosec(int max_rank) {
    auto data = all_reduced_regular_data(max_rank);
    int threads = thread_budget();

    auto worker = [](std::vector<DatumSpec> chunk) {
        Failure f;
        for (const auto& spec : chunk) {
            f.count();
            TwistingDatum d = make_datum(spec.type, spec.tau, spec.eps);
            const auto& wm = d.w_minus();
            const auto& wp = d.wplus();
            const auto& wn = d.wnu();
            std::ostringstream tag;
            tag << spec.type << " eps=(";
            for (std::size_t i = 0; i < spec.eps.size(); ++i)
                tag << (i ? "," : "") << spec.eps[i];
            tag << ")";
            if (wm.size() * wp.size() != wn.size())
                f.fail() << tag.str() << ": |W-||W+| = " << wm.size() * wp.size() << " != |Wnu| = "
                         << wn.size();
            std::set<WeylElement> products;
            for (const auto& [w, chi] : wm)
                for (const auto& v : wp) products.insert(w.compose(v));
            if (products.size() != wm.size() * wp.size())
                f.fail() << tag.str() << ": product map not injective";
            std::set<SignCharacter> chars;
            for (const auto& [w, chi] : wm) chars.insert(chi);
            if (chars.size() != wm.size()) f.fail() << tag.str() << ": sign characters collide";
        }
        return std::pair<bool, std::string>(f.ok, f.msg.str());
    };

    bool ok = true;
    std::string msg;
    if (threads <= 1) {
        auto [o, m] = worker(data);
        ok = o;
        msg = m;
    } else {
        std::vector<std::vector<DatumSpec>> chunks((std::size_t)threads);
        for (std::size_t i = 0; i < data.size(); ++i) chunks[i % (std::size_t)threads].push_back(data[i]);
        std::vector<std::future<std::pair<bool, std::string>>> futs;
        for (auto& c : chunks)
            futs.push_back(std::async(std::launch::async, worker, std::move(c)));
        for (auto& fu : futs) {
            auto [o, m] = fu.get();
            ok = ok && o;
            if (!m.empty()) msg += m + "; ";
        }
    }
    return {"theosec", ok,
            (ok ? "coset bijection and sign separation hold, " : msg + "; ") +
                std::to_string(data.size()) + " data",
            0.0};
}

// ----------------------------------------------------------- criterion 3

CheckResult check_twining() {
    Failure f;
    struct Case {
        std::string type;
        std::vector<int> tau;
    };
    std::vector<Case> cases{{"A2", {1, 0}}, {"A3", {2, 1, 0}}, {"A1xA1", {1, 0}}, {"D4", {0, 1, 3, 2}}};
    for (const auto& c : cases) {
        auto rs = RootSystem::from_label(c.type);
        Involution tau(*rs, c.tau);
        FoldedSystem fs(rs, tau);
        // highest roots per connected component, for the (hw, theta^vee) bound
        std::vector<Weight> thetas;
        {
            std::vector<int> comp((std::size_t)rs->rank(), -1);
            int nc = 0;
            for (std::size_t s = 0; s < rs->rank(); ++s) {
                if (comp[s] >= 0) continue;
                std::vector<std::size_t> stack{s};
                comp[s] = nc;
                while (!stack.empty()) {
                    std::size_t x = stack.back();
                    stack.pop_back();
                    for (std::size_t y = 0; y < rs->rank(); ++y)
                        if (y != x && rs->cartan(x, y) != 0 && comp[y] < 0) {
                            comp[y] = nc;
                            stack.push_back(y);
                        }
                }
                ++nc;
            }
            for (int cidx = 0; cidx < nc; ++cidx) {
                const PosRoot* best = nullptr;
                for (const auto& root : rs->positive_roots()) {
                    bool mine = false;
                    for (std::size_t s = 0; s < rs->rank(); ++s)
                        if (root.alpha[s] != 0 && comp[s] == cidx) mine = true;
                    if (mine && (!best || root.height > best->height)) best = &root;
                }
                thetas.push_back(best->w);
            }
        }
        for (const Weight& hw : tau_fixed_dominant_weights(fs, 12)) {
            bool within = true;
            for (const auto& th : thetas)
                if (rs->pair_coroot(hw, th) > Rational(3)) within = false;
            if (!within) continue;
            f.count();
            TwiningTable div = twining_mults(fs, hw);
            ClassicalModule cm(rs, hw);
            TwiningTable orc = cm.twining(tau);
            if (div.jvals != orc.jvals)
                f.fail() << c.type << " hw=" << hw.str() << ": division and trace oracles differ";
        }
    }
    // tau = id: division equals the ordinary multiplicities
    {
        auto rs = RootSystem::from_label("A2");
        FoldedSystem triv(rs, Involution::identity(*rs));
        for (const Weight& hw : tau_fixed_dominant_weights(triv, 3)) {
            f.count();
            TwiningTable t = twining_mults(triv, hw);
            MultTable m(rs, hw);
            bool good = true;
            m.for_each_weight([&](const Weight& w, const BigInt& mult) {
                if (BigInt(t.j(w)) != mult) good = false;
            });
            if (!good) f.fail() << "A2 id hw=" << hw.str() << ": j != mult";
        }
    }
    return {"twining", f.ok,
            (f.ok ? "division and classical oracles agree, " : f.msg.str() + "; ") +
                std::to_string(f.checked) + " highest weights",
            0.0};
}

// ----------------------------------------------------------- criterion 4

CheckResult check_hc_symmetry(unsigned seed) {
    Failure f;
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> sc(1, 9), ex(-3, 3);

    struct Case {
        std::string type;
        std::vector<int> tau;
        std::vector<long long> eps;
        int lambdas;
    };
    std::vector<Case> cases{
        {"A1", {0}, {-1}, 19},
        {"A2", {0, 1}, {-1, 1}, 19},
        {"A2", {1, 0}, {1, 1}, 19},
        {"B2", {0, 1}, {1, -1}, 19},
        {"G2", {0, 1}, {-1, 1}, 8},
        {"A1xA1", {1, 0}, {1, 1}, 8},
        {"A3", {2, 1, 0}, {1, -1, 1}, 4},
        {"B3", {0, 1, 2}, {-1, 1, 1}, 4},
    };
    long long lambda_total = 0;
    for (const auto& c : cases) {
        TwistingDatum d = make_datum(c.type, c.tau, c.eps);
        auto rs = d.root_system_ptr();
        const FoldedSystem& fs = d.folded();
        auto weights = tau_fixed_dominant_weights(fs, 6);
        // precompute images once per weight
        std::vector<HCartanElement> images;
        for (const Weight& hw : weights)
            images.push_back(hc_image(d, hw, twining_mults(fs, hw)));
        for (int trial = 0; trial < c.lambdas; ++trial) {
            ++lambda_total;
            std::vector<QScalar> vals(rs->rank());
            for (std::size_t r = 0; r < rs->rank(); ++r) {
                std::size_t tr = (std::size_t)d.tau()((int)r);
                if (tr < r) continue;
                QScalar v(Rational(sc(rng), sc(rng)), Rational(ex(rng)), Rational(0));
                vals[r] = v;
                vals[tr] = v.conj();
            }
            WeightFunction lam(rs, d.tau(), vals);
            // grid gauge at the moved nodes
            WeightFunction gauged = lam;
            for (int r : d.tau().fundamental_domain())
                gauged =
                    gauged.multiply_value((std::size_t)r, QScalar(Rational(1), Rational(0), Rational(1, 4)));
            for (std::size_t i = 0; i < weights.size(); ++i) {
                f.count();
                CycloLaurent base = eval_point(images[i], lam);
                bool good = true;
                for (const auto& w : d.wnu())
                    if (!(base == eval_point(images[i], d.dot(w, lam, true)))) good = false;
                if (!(base == eval_point(images[i], gauged))) good = false;
                if (!good) {
                    f.fail() << c.type << " hw=" << weights[i].str() << ": symmetry broken";
                    break;
                }
            }
        }
    }
    return {"hc", f.ok,
            (f.ok ? "central characters are dot-orbit and gauge invariant, " : f.msg.str() + "; ") +
                std::to_string(lambda_total) + " weight functions, " + std::to_string(f.checked) +
                " evaluations",
            0.0};
}

// ----------------------------------------------------------- criterion 5

CheckResult check_rank1_states() {
    Failure f;
    Rational q(1, 2);
    double qd = 0.5;
    auto rs = RootSystem::from_label("A1");
    Weight vp = rs->fundamental_weight(0);

    // S_plus: exact trace moments
    {
        TwistingDatum d(rs, Involution::identity(*rs), {pr(1)});
        for (long long n = 0; n <= 5; ++n) {
            Weight gamma = Rational(-n) * vp;
            for (long long k = 1; k <= 3; ++k) {
                f.count();
                IntegralValue iv = invariant_integral(d, gamma, Rational(k) * vp, q);
                Rational num(0), den(0);
                for (long long j = 0; j <= n; ++j) {
                    Rational zj = q.pow(-n + 2 * j);
                    num += zj.pow(k + 1);
                    den += zj;
                }
                if (!iv.exact || *iv.exact != num / den)
                    f.fail() << "S+ n=" << n << " k=" << k << ": exact moment mismatch";
            }
        }
    }
    // S_zero (eps = 0) and S_minus (eps = -1): truncated model traces vs the
    // exact integral at N = 400
    auto moment = [&](const Eigen::MatrixXd& z, long long k) {
        double acc = 0.0;
        for (int i = 0; i < z.rows(); ++i) acc += std::pow(z(i, i), (double)(k + 1));
        return acc;
    };
    {
        TwistingDatum d(rs, Involution::identity(*rs), {PolarRational()});
        for (long long g : {-1, -2}) {
            Weight gamma = Rational(g) * vp;
            Rational lam = q.pow(-g); // lambda = q^{2(gamma,vp)} = q^{g}... value below
            lam = q.pow(g);
            Rational tval = lam / q; // t with spectrum lam q^{2n} = t q^{2n+1}
            auto st = h2_stratify(Rational(0), tval, q);
            H2Model m = h2_model(*st, 0, 400, qd);
            for (long long k = 1; k <= 3; ++k) {
                f.count();
                IntegralValue iv = invariant_integral(d, gamma, Rational(k) * vp, q);
                double tr = moment(m.z, k) / moment(m.z, 0);
                if (std::abs(tr - iv.approx) > 1e-10 * std::max(1.0, std::abs(iv.approx)))
                    f.fail() << "S0 gamma=" << g << " k=" << k << ": trace vs integral";
            }
        }
    }
    {
        TwistingDatum d(rs, Involution::identity(*rs), {pr(-1)});
        for (long long g : {-1, 0, 1}) {
            Weight gamma = Rational(g) * vp;
            Rational lam = q.pow(g); // lambda = lambda_P(vp) = q^{2(gamma,vp)} = q^{g}
            Rational tval = lam / q - q / lam;
            auto st = h2_stratify(Rational(-1), tval, q);
            if (!st || !st->a) {
                f.fail() << "S- gamma=" << g << ": stratification failed";
                continue;
            }
            H2Model mp = h2_model(*st, 1, 400, qd);
            H2Model mm = h2_model(*st, -1, 400, qd);
            for (long long k = 1; k <= 3; ++k) {
                f.count();
                IntegralValue iv = invariant_integral(d, gamma, Rational(k) * vp, q);
                double tr = (moment(mp.z, k) - moment(mm.z, k)) / (moment(mp.z, 0) - moment(mm.z, 0));
                if (std::abs(tr - iv.approx) > 1e-10 * std::max(1.0, std::abs(iv.approx)))
                    f.fail() << "S- gamma=" << g << " k=" << k << ": signed trace vs integral";
            }
        }
    }
    return {"rank1", f.ok,
            (f.ok ? "stratum traces match the exact integral, " : f.msg.str() + "; ") +
                std::to_string(f.checked) + " moments",
            0.0};
}

// ----------------------------------------------------------- criterion 6

CheckResult check_classification(unsigned seed) {
    Failure f;
    Rational q(1, 2);
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> num(1, 40), ex(-12, 12);

    for (VermaCase kind : {VermaCase::A1_H2, VermaCase::A1xA1, VermaCase::A2_twisted}) {
        Classification cl = classify_hw(kind, Rational(1), q, 20);
        if (cl.shape != Classification::Shape::DiscreteFamily || cl.family.size() != 21) {
            f.fail() << "family shape wrong";
            continue;
        }
        for (long long n = 0; n <= 20; ++n) {
            f.count();
            VermaRecord rec =
                verma_gram(kind, cl.family[(std::size_t)n], Rational(1), std::min<long long>(2 * n + 6, 60), q);
            if (!rec.unitarizable || !rec.truncation || *rec.truncation != n + 1)
                f.fail() << "family member n=" << n << " failed the sign scan";
        }
        // random off-family rejections: ~67 per case for 200 total
        int total = 0;
        while (total < 67) {
            QScalar lam(Rational(num(rng), num(rng)), Rational(ex(rng)), Rational(0));
            bool on_family = false;
            for (long long n = 0; n <= 60; ++n)
                if (lam.equal_at(family_member(kind, n), q)) on_family = true;
            if (on_family) continue;
            ++total;
            f.count();
            VermaRecord rec = verma_gram(kind, lam, Rational(1), 80, q);
            if (rec.unitarizable) f.fail() << "off-family weight accepted: " << lam.str();
        }
    }
    // stratum grid reproduction: (c^2, c s_n) accepted, off-grid rejected
    for (long long n = 0; n <= 20; ++n) {
        f.count();
        Rational sn = q.pow(-(n + 1)) + q.pow(n + 1);
        auto st = h2_stratify(Rational(4), Rational(2) * sn, q);
        if (!st || st->kind != Stratum::Kind::SPlus || st->n != n)
            f.fail() << "grid point n=" << n << " not recognized";
        auto bad = h2_stratify(Rational(4), Rational(2) * sn + Rational(1, 1000), q);
        if (bad) f.fail() << "off-grid point accepted at n=" << n;
    }
    return {"classify", f.ok,
            (f.ok ? "families reproduced, off-family weights rejected, " : f.msg.str() + "; ") +
                std::to_string(f.checked) + " scans",
            0.0};
}

// ----------------------------------------------------------- criterion 7

CheckResult check_cw_limit() {
    Failure f;
    Rational q(1, 2);
    TwistingDatum d = make_datum("A1", {0}, {-1});
    auto rs = d.root_system_ptr();
    const FoldedSystem& fs = d.folded();
    Weight vp = rs->fundamental_weight(0);
    Weight gamma = -vp; // lambda = q^{-1} in Lambda^{>>}
    long long nlim = 60;
    auto provider = lowrank_provider(d, q);

    for (const auto& [w, chi] : d.w_minus()) {
        f.count();
        WeightFunction mu = d.dot(w, WeightFunction::from_gamma(rs, d.tau(), gamma), true);
        ModuleWeights mw = provider(w, mu, 200);
        // LHS / c_w = sum q^{2 n (rho, alpha_+)} mult
        double lhs = 0.0;
        for (const auto& [ap, mult] : mw.levels) {
            Rational e = Rational(2 * nlim) * rs->pairing(rs->rho(), ap);
            lhs += Rational(mult).to_double() * q_power(q, e).value();
        }
        if (std::abs(lhs - 1.0) > 1e-8) f.fail() << "LHS ratio off for cell " << w.word_str();

        // RHS / |e_gamma|
        double hnum = 0.0;
        WeylElement winv = w.inverse();
        for (const auto& v : d.wplus()) {
            Weight delta = winv.act(rs->rho()) - v.inverse().compose(winv).act(rs->rho());
            Rational e = Rational(2 * nlim) * rs->pairing(rs->rho() - gamma, delta);
            hnum += fs.hsgn(v) * q_power(q, e).value();
        }
        double hden = 0.0;
        for (const auto& u : rs->weyl()) {
            Weight delta = rs->rho() - u.inverse().act(rs->rho());
            Rational e = Rational(2 * nlim) * rs->pairing(rs->rho(), delta);
            hden += (u.word().size() % 2 == 0 ? 1.0 : -1.0) * q_power(q, e).value();
        }
        double rhs = std::abs(hnum) / std::abs(hden);
        if (std::abs(rhs - 1.0) > 1e-8) f.fail() << "RHS ratio off for cell " << w.word_str();
    }
    return {"cwlimit", f.ok,
            (f.ok ? "both limit ratios within 1e-8 at n = 60, " : f.msg.str() + "; ") +
                std::to_string(f.checked) + " cells",
            0.0};
}

// ----------------------------------------------------------- criterion 8

CheckResult check_positivity() {
    Failure f;
    Rational q(1, 2);
    // rank 1, eps = +1: gamma = -n varpi
    {
        TwistingDatum d = make_datum("A1", {0}, {1});
        auto rs = d.root_system_ptr();
        for (long long n = 0; n <= 20; ++n) {
            f.count();
            if (!compact_positivity(d, Rational(-n) * rs->fundamental_weight(0)))
                f.fail() << "A1 eps=+1 n=" << n;
        }
    }
    // rank 1, eps = -1: no compact roots; positivity is vacuous on all of
    // Lambda^{>>}
    {
        TwistingDatum d = make_datum("A1", {0}, {-1});
        auto rs = d.root_system_ptr();
        if (!d.compact_roots().positive.empty()) f.fail() << "A1 eps=-1 has compact roots";
        for (long long g = -20; g <= 20; ++g) {
            f.count();
            if (!compact_positivity(d, Rational(g) * rs->fundamental_weight(0)))
                f.fail() << "A1 eps=-1 gamma=" << g;
        }
    }
    // A1xA1 and A2 twisted families
    for (auto kind : {VermaCase::A1xA1, VermaCase::A2_twisted}) {
        std::string type = kind == VermaCase::A1xA1 ? "A1xA1" : "A2";
        TwistingDatum d = make_datum(type, {1, 0}, {1, 1});
        auto rs = d.root_system_ptr();
        for (long long n = 0; n <= 20; ++n) {
            f.count();
            WeightFunction lam(rs, d.tau(),
                               {family_member(kind, n), family_member(kind, n)});
            auto gamma = lam.gamma();
            if (!gamma || !compact_positivity(d, *gamma)) f.fail() << type << " n=" << n;
        }
    }
    return {"positivity", f.ok,
            (f.ok ? "(rho - gamma, beta) > 0 on all classified weights, " : f.msg.str() + "; ") +
                std::to_string(f.checked) + " weights",
            0.0};
}

// ----------------------------------------------------------- criterion 9

CheckResult check_residuals() {
    Failure f;
    double q = 0.5;
    int N = 400;
    auto run = [&](const Stratum& s, const std::string& tag) {
        f.count();
        ResidualReport r = invariance_residual(s, N, q);
        if (r.max_e > 1e-10 || r.max_k > 1e-10)
            f.fail() << tag << ": residuals " << r.max_e << ", " << r.max_k;
    };
    Stratum sp;
    sp.kind = Stratum::Kind::SPlus;
    sp.c = Rational(1);
    sp.c_approx = 1.0;
    sp.n = 3;
    run(sp, "S+");
    Stratum s0;
    s0.kind = Stratum::Kind::SZero;
    s0.t = Rational(1);
    s0.t_approx = 1.0;
    run(s0, "S0");
    Stratum sm;
    sm.kind = Stratum::Kind::SMinus;
    sm.cm = Rational(1);
    sm.cm_approx = 1.0;
    sm.a = Rational(2);
    sm.a_approx = 2.0;
    run(sm, "S-");
    return {"residuals", f.ok,
            (f.ok ? "inner-action residuals below 1e-10, " : f.msg.str() + "; ") +
                std::to_string(f.checked) + " strata",
            0.0};
}

// ----------------------------------------------------------- criterion 10

long long binomial(int n, int k) {
    long long r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

WeylElement perm_to_weyl(const RootSystem& rs, std::vector<int> sigma) {
    // decompose into adjacent transpositions, s_i acting first composes on
    // the right
    WeylElement w = WeylElement::identity(rs.rank());
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i + 1 < sigma.size(); ++i) {
            if (sigma[i] > sigma[i + 1]) {
                std::swap(sigma[i], sigma[i + 1]);
                // sigma_old = sigma_new o (i, i+1): peel transpositions off
                // the right
                w = w.compose(rs.simple_reflection(i));
                changed = true;
            }
        }
    }
    return w.inverse(); // we accumulated sigma^{-1}
}

CheckResult check_grassmannian() {
    Failure f;
    for (int N = 2; N <= 6; ++N) {
        auto rs = RootSystem::from_label("A" + std::to_string(N - 1));
        for (int m = 1; m < N; ++m) {
            f.count();
            std::vector<long long> eps((std::size_t)(N - 1), 1);
            eps[(std::size_t)(m - 1)] = -1;
            std::vector<int> tau((std::size_t)(N - 1));
            for (int i = 0; i + 1 < N; ++i) tau[(std::size_t)i] = i;
            TwistingDatum d = make_datum("A" + std::to_string(N - 1), tau, eps);

            // shuffles: permutations increasing on both blocks
            std::set<WeylElement> shuffles;
            std::vector<int> sigma((std::size_t)N);
            std::iota(sigma.begin(), sigma.end(), 0);
            do {
                bool inc = true;
                for (int i = 0; i + 1 < m; ++i)
                    if (sigma[(std::size_t)i] > sigma[(std::size_t)(i + 1)]) inc = false;
                for (int i = m; i + 1 < N; ++i)
                    if (sigma[(std::size_t)i] > sigma[(std::size_t)(i + 1)]) inc = false;
                if (inc) shuffles.insert(perm_to_weyl(*rs, sigma));
            } while (std::next_permutation(sigma.begin(), sigma.end()));

            std::set<WeylElement> wminus;
            for (const auto& [w, chi] : d.w_minus()) wminus.insert(w);

            if ((long long)wminus.size() != binomial(N, m))
                f.fail() << "A" << N - 1 << " m=" << m << ": count " << wminus.size() << " != C("
                         << N << "," << m << ")";
            if (wminus != shuffles) f.fail() << "A" << N - 1 << " m=" << m << ": sets differ";
        }
    }
    return {"shuffles", f.ok,
            (f.ok ? "W- equals the block shuffles, " : f.msg.str() + "; ") +
                std::to_string(f.checked) + " (N, m) pairs",
            0.0};
}

// ----------------------------------------------------------- criterion 11

CheckResult check_disjointness() {
    Failure f;
    Rational q(1, 2);
    struct Case {
        VermaCase kind;
        std::string type;
    };
    for (const auto& c : std::vector<Case>{{VermaCase::A1xA1, "A1xA1"}, {VermaCase::A2_twisted, "A2"}}) {
        TwistingDatum d = make_datum(c.type, {1, 0}, {1, 1});
        auto rs = d.root_system_ptr();
        WeylElement shat = d.folded().lifted_generator(0);
        for (long long n = 0; n <= 20; ++n) {
            f.count();
            WeightFunction lam(rs, d.tau(), {family_member(c.kind, n), family_member(c.kind, n)});
            WeightFunction moved = d.dot(shat, lam, true);
            for (long long m = 0; m <= 80; ++m)
                if (moved.value(0).abs().equal_at(family_member(c.kind, m), q))
                    f.fail() << c.type << ": image of n=" << n << " hits m=" << m;
        }
    }
    // rank 1, eps = +1
    {
        TwistingDatum d = make_datum("A1", {0}, {1});
        auto rs = d.root_system_ptr();
        const auto& s = rs->simple_reflection(0);
        for (long long n = 0; n <= 20; ++n) {
            f.count();
            WeightFunction lam(rs, d.tau(), {family_member(VermaCase::A1_H2, n)});
            WeightFunction moved = d.dot(s, lam, true);
            for (long long m = 0; m <= 80; ++m)
                if (moved.value(0).abs().equal_at(family_member(VermaCase::A1_H2, m), q))
                    f.fail() << "A1: image of n=" << n << " hits m=" << m;
        }
    }
    return {"disjoint", f.ok,
            (f.ok ? "dot images avoid the families exactly, " : f.msg.str() + "; ") +
                std::to_string(f.checked) + " members",
            0.0};
}

} // namespace

std::vector<std::string> check_names() {
    return {"folding", "theosec", "twining", "hc",       "rank1",  "classify",
            "cwlimit", "positivity", "residuals", "shuffles", "disjoint"};
}

CheckResult run_check(const std::string& name, const std::map<std::string, std::string>& opts) {
    auto t0 = std::chrono::steady_clock::now();
    int max_rank = 4;
    unsigned seed = 2024;
    if (auto it = opts.find("max-rank"); it != opts.end()) max_rank = std::stoi(it->second);
    if (auto it = opts.find("seed"); it != opts.end()) seed = (unsigned)std::stoul(it->second);

    CheckResult r;
    if (name == "folding") r = check_folding();
    else if (name == "theosec") r = check_theosec(max_rank);
    else if (name == "twining") r = check_twining();
    else if (name == "hc") r = check_hc_symmetry(seed);
    else if (name == "rank1") r = check_rank1_states();
    else if (name == "classify") r = check_classification(seed);
    else if (name == "cwlimit") r = check_cw_limit();
    else if (name == "positivity") r = check_positivity();
    else if (name == "residuals") r = check_residuals();
    else if (name == "shuffles") r = check_grassmannian();
    else if (name == "disjoint") r = check_disjointness();
    else throw std::invalid_argument("unknown check suite: " + name);

    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

std::vector<CheckResult> run_all_checks(const std::map<std::string, std::string>& opts) {
    std::vector<CheckResult> out;
    for (const auto& name : check_names()) out.push_back(run_check(name, opts));
    return out;
}

} // namespace qorbit
