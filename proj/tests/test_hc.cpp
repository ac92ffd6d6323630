#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qorbit/hc.hpp"
#include "qorbit/lowrank.hpp"

#include <random>

using namespace qorbit;

namespace {

PolarRational pr(long long v) { return PolarRational::from_real(Rational(v)); }

TwistingDatum make(const std::string& type, std::vector<int> tau, std::vector<long long> eps) {
    auto rs = RootSystem::from_label(type);
    std::vector<PolarRational> e;
    for (auto v : eps) e.push_back(pr(v));
    return TwistingDatum(rs, Involution(*rs, std::move(tau)), std::move(e));
}

} // namespace

TEST_CASE("hc image rank one") {
    // z_varpi -> q^{-1} T_varpi + eps q T_{-varpi}
    for (long long eps : {1LL, -1LL}) {
        auto d = make("A1", {0}, {eps});
        auto rs = d.root_system_ptr();
        Weight vp = rs->fundamental_weight(0);
        TwiningTable j = twining_mults(d.folded(), vp);
        HCartanElement z = hc_image(d, vp, j);
        REQUIRE(z.terms.size() == 2);
        CHECK(z.terms.at(vp) == LaurentPoly::term(Rational(1), Rational(-1)));
        CHECK(z.terms.at(-vp) == LaurentPoly::term(Rational(eps), Rational(1)));
    }
    // trivial weight gives the unit
    auto d = make("A1", {0}, {1});
    TwiningTable j0 = twining_mults(d.folded(), Weight(1));
    CHECK(hc_image(d, Weight(1), j0).is_unit());
}

TEST_CASE("hc image A1xA1 swap") {
    auto d = make("A1xA1", {1, 0}, {1, 1});
    auto rs = d.root_system_ptr();
    Weight hw = rs->rho();
    TwiningTable j = twining_mults(d.folded(), hw);
    HCartanElement z = hc_image(d, hw, j);
    REQUIRE(z.terms.size() == 2);
    CHECK(z.terms.at(hw) == LaurentPoly::term(Rational(1), Rational(-2)));
    // |eps|^2 q^2 at the lowest weight
    CHECK(z.terms.at(-hw) == LaurentPoly::term(Rational(1), Rational(2)));
}

TEST_CASE("raw and grouped images agree") {
    struct Case {
        std::string lbl;
        std::vector<int> tau;
        std::vector<long long> eps;
        std::vector<long long> hw;
    };
    for (const auto& c : std::vector<Case>{
             {"A1", {0}, {-1}, {2}},
             {"A2", {0, 1}, {-1, 1}, {1, 1}},
             {"A2", {1, 0}, {1, 1}, {2, 2}},
             {"A3", {2, 1, 0}, {1, -1, 1}, {1, 0, 1}},
             {"B2", {0, 1}, {1, -1}, {1, 1}},
         }) {
        auto d = make(c.lbl, c.tau, c.eps);
        auto rs = d.root_system_ptr();
        Weight hw(rs->rank());
        for (std::size_t i = 0; i < c.hw.size(); ++i) hw.c[i] = Rational(c.hw[i]);
        TwiningTable j = twining_mults(d.folded(), hw);
        CHECK(hc_image(d, hw, j) == hc_image_grouped(d, hw, j));
    }
}

TEST_CASE("eval point") {
    auto d = make("A1", {0}, {-1});
    auto rs = d.root_system_ptr();
    Weight vp = rs->fundamental_weight(0);
    TwiningTable j = twining_mults(d.folded(), vp);
    HCartanElement z = hc_image(d, vp, j);
    // lambda(varpi) = c: value q^{-1} c - q c^{-1}
    QScalar c(Rational(3), Rational(0), Rational(0));
    WeightFunction lam(rs, d.tau(), {c});
    CycloLaurent v = eval_point(z, lam);
    REQUIRE(v.is_real_poly());
    LaurentPoly expect;
    expect.add_term(Rational(-1), Rational(3));
    expect.add_term(Rational(1), Rational(-1, 3));
    CHECK(v.real_poly() == expect);
    // unit element evaluates to 1
    TwiningTable j0 = twining_mults(d.folded(), Weight(1));
    CHECK(eval_point(hc_image(d, Weight(1), j0), lam) == CycloLaurent::one());
}

TEST_CASE("hc symmetry under the deformed dot action") {
    Rational q(1, 2);
    std::mt19937 rng(31);
    std::uniform_int_distribution<int> sc(1, 5), ex(-2, 2);
    for (auto& [type, tauperm, eps] :
         std::vector<std::tuple<std::string, std::vector<int>, std::vector<long long>>>{
             {"A1", {0}, {-1}},
             {"A2", {0, 1}, {-1, 1}},
             {"A2", {1, 0}, {1, 1}},
             {"B2", {0, 1}, {-1, -1}},
             {"A3", {2, 1, 0}, {1, -1, 1}}}) {
        auto d = make(type, tauperm, eps);
        auto rs = d.root_system_ptr();
        auto weights = tau_fixed_dominant_weights(d.folded(), 3);
        for (int trial = 0; trial < 3; ++trial) {
            std::vector<QScalar> vals(rs->rank());
            for (std::size_t r = 0; r < rs->rank(); ++r) {
                std::size_t tr = (std::size_t)d.tau()((int)r);
                if (tr < r) continue;
                QScalar v(Rational(sc(rng)), Rational(ex(rng)), Rational(0));
                vals[r] = v;
                vals[tr] = v.conj();
            }
            WeightFunction lam(rs, d.tau(), vals);
            for (const Weight& hw : weights) {
                TwiningTable j = twining_mults(d.folded(), hw);
                HCartanElement z = hc_image(d, hw, j);
                CycloLaurent base = eval_point(z, lam);
                for (const auto& w : d.wnu()) {
                    CycloLaurent moved = eval_point(z, d.dot(w, lam, true));
                    CHECK(base == moved);
                }
                // gauge invariance: quarter-turn gauge at the moved nodes
                WeightFunction gauged = lam;
                for (int r : d.tau().fundamental_domain())
                    gauged = gauged.multiply_value((std::size_t)r,
                                                   QScalar(Rational(1), Rational(0), Rational(1, 4)));
                CHECK(base == eval_point(z, gauged));
            }
        }
    }
}

TEST_CASE("same central character") {
    Rational q(1, 2);
    auto d = make("A1", {0}, {-1});
    auto rs = d.root_system_ptr();
    QScalar c(Rational(3), Rational(0), Rational(0));
    WeightFunction lam(rs, d.tau(), {c});

    auto self = same_central_character(d, lam, lam, q, 4);
    CHECK(self.equal);
    CHECK(self.conclusive);
    CHECK(self.witness->is_identity());

    // lambda' = -q^2/c is the dot image under s
    WeightFunction lam2(rs, d.tau(), {-(QScalar::q_pow(Rational(2)) * c.inv())});
    auto match = same_central_character(d, lam, lam2, q, 4);
    CHECK(match.equal);
    CHECK(match.conclusive);
    CHECK_FALSE(match.witness->is_identity());

    // eps = +1: c and -c are distinct characters
    auto dp = make("A1", {0}, {1});
    WeightFunction mu(rs, dp.tau(), {c});
    WeightFunction mneg(rs, dp.tau(), {-c});
    auto differ = same_central_character(dp, mu, mneg, q, 4);
    CHECK_FALSE(differ.equal);
    CHECK(differ.conclusive);
}

TEST_CASE("invariant integral rank one") {
    Rational q(1, 3);
    auto d = make("A1", {0}, {1});
    auto rs = d.root_system_ptr();
    Weight vp = rs->fundamental_weight(0);

    // hw = 0 integrates to 1
    IntegralValue triv = invariant_integral(d, -vp, Weight(1), q);
    REQUIRE(triv.exact.has_value());
    CHECK(*triv.exact == Rational(1));

    // gamma = -varpi (lambda = q^{-1}): int a_varpi = (q^{-2} + q^2)/(q^{-1} + q)
    IntegralValue iv = invariant_integral(d, -vp, vp, q);
    REQUIRE(iv.exact.has_value());
    Rational expect = (q.pow(-2) + q.pow(2)) / (q.inv() + q);
    CHECK(*iv.exact == expect);

    // gamma = 0 (lambda = 1 = member n = 0): int a_varpi = 1
    IntegralValue i0 = invariant_integral(d, Weight(1), vp, q);
    REQUIRE(i0.exact.has_value());
    CHECK(*i0.exact == Rational(1));

    // S_plus trace oracle: spectrum {q^{-n+2k}}, int a_varpi^k = Tr(z^{k+1})/Tr(z)
    for (long long n = 0; n <= 5; ++n) {
        Weight gamma = Rational(-n) * vp;
        for (long long k = 1; k <= 3; ++k) {
            Weight hw = Rational(k) * vp;
            IntegralValue v = invariant_integral(d, gamma, hw, q);
            REQUIRE(v.exact.has_value());
            Rational num(0), den(0);
            for (long long j = 0; j <= n; ++j) {
                Rational zj = q.pow(-n + 2 * j);
                num += zj.pow(k + 1);
                den += zj;
            }
            CHECK(*v.exact == num / den);
        }
    }
}

TEST_CASE("e_gamma and cell weights for the rank-1 minus case") {
    Rational q(1, 2);
    auto d = make("A1", {0}, {-1});
    auto rs = d.root_system_ptr();
    Weight vp = rs->fundamental_weight(0);

    // lambda = q^{2 gamma} with gamma = -varpi: in Lambda^{>>} for eps = -1
    Weight gamma = -vp;
    WeightFunction lam = WeightFunction::from_gamma(rs, d.tau(), gamma);
    CHECK(lam.strictly_positive());
    CHECK(lam.gamma().has_value());
    CHECK(*lam.gamma() == gamma);

    auto provider = lowrank_provider(d, q);
    REQUIRE(provider);
    CellState cs = cell_state(d, lam, provider, 420, q);
    REQUIRE(cs.cells.size() == 2);
    // normalization: |e_gamma| * sum Tr(A_w) = 1
    CHECK(std::abs(cs.normalization_residual) < 1e-10);
    CHECK(cs.cells[0].state_weight + cs.cells[1].state_weight == doctest::Approx(1.0));

    // signed-trace cross-check against the exact integral, over several hw
    for (long long k = 1; k <= 3; ++k) {
        Weight hw = Rational(k) * vp;
        double cellv = cell_state_integral(d, lam, provider, 420, q, hw);
        IntegralValue iv = invariant_integral(d, gamma, hw, q);
        CHECK(std::abs(cellv - iv.approx) < 1e-10 * std::max(1.0, std::abs(iv.approx)));
    }
}

TEST_CASE("cell state for the truncated plus case") {
    Rational q(1, 2);
    auto d = make("A1", {0}, {1});
    auto rs = d.root_system_ptr();
    Weight vp = rs->fundamental_weight(0);
    for (long long n = 0; n <= 4; ++n) {
        Weight gamma = Rational(-n) * vp;
        WeightFunction lam = WeightFunction::from_gamma(rs, d.tau(), gamma);
        auto provider = lowrank_provider(d, q);
        CellState cs = cell_state(d, lam, provider, 100, q);
        REQUIRE(cs.cells.size() == 1);
        CHECK(cs.cells[0].state_weight == doctest::Approx(1.0));
        CHECK(std::abs(cs.normalization_residual) < 1e-12);
    }
}

TEST_CASE("compact positivity for classified weights") {
    Rational q(1, 2);
    // rank 1, both signs
    auto dplus = make("A1", {0}, {1});
    auto rsa = dplus.root_system_ptr();
    for (long long n = 0; n <= 20; ++n) {
        Weight gamma = Rational(-n) * rsa->fundamental_weight(0);
        CHECK(compact_positivity(dplus, gamma));
    }
    auto dminus = make("A1", {0}, {-1});
    CHECK(compact_positivity(dminus, Rational(3) * rsa->fundamental_weight(0))); // vacuous
}

TEST_CASE("c_w equals |e_gamma| in the limit") {
    // both sides of the limit identity at omega = (n-1) rho for A1, eps = -1
    Rational q(1, 2);
    auto d = make("A1", {0}, {-1});
    auto rs = d.root_system_ptr();
    Weight vp = rs->fundamental_weight(0);
    Weight gamma = -vp; // lambda = q^{-1} in Lambda^{>>}
    long long nlim = 60;

    // LHS / c_w = sum_k q^{2 n (rho, k alpha)} dim V(k alpha) = sum_k q^{2nk}
    double lhs_ratio = 0.0;
    for (long long k = 0;; ++k) {
        double term = std::pow(0.5, 2.0 * (double)nlim * (double)k);
        lhs_ratio += term;
        if (term < 1e-30) break;
    }
    CHECK(std::abs(lhs_ratio - 1.0) < 1e-8);

    // RHS / |e_gamma| = |sum_{v in W+} ...| / |sum_{w in W} sgn q^{2n(rho, rho - w rho)}|
    // W+ = {e}: numerator 1; denominator 1 - q^{2n(rho, 2rho)}
    double den = 1.0 - std::pow(0.5, 2.0 * (double)nlim);
    CHECK(std::abs(1.0 / den - 1.0) < 1e-8);
}
