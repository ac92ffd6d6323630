#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qorbit/twistdata.hpp"

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

TEST_CASE("classification flags") {
    auto d1 = make("A2", {0, 1}, {-1, 1});
    auto f1 = d1.classify();
    CHECK(f1.reduced);
    CHECK(f1.strongly_reduced);
    CHECK(f1.regular);
    CHECK(f1.symmetric_pair);
    CHECK(f1.ungauged);
    CHECK_FALSE(f1.strongly_positive);

    auto d2 = make("A2", {0, 1}, {-1, -1});
    auto f2 = d2.classify();
    CHECK(f2.reduced);
    CHECK_FALSE(f2.strongly_reduced);

    // gauge on the swapped A1xA1: eps = (e^{i theta}, e^{-i theta})
    auto rs = RootSystem::from_label("A1xA1");
    Involution tau(*rs, {1, 0});
    std::vector<PolarRational> eps{PolarRational(Rational(1), Rational(1, 8)),
                                   PolarRational(Rational(1), Rational(-1, 8))};
    TwistingDatum d3(rs, tau, eps);
    auto f3 = d3.classify();
    CHECK(f3.gauge);
    CHECK_FALSE(f3.ungauged);
    CHECK(f3.symmetric_pair);

    // flag implications on random data
    std::mt19937 rng(2);
    std::uniform_int_distribution<int> v(-2, 2);
    for (int i = 0; i < 60; ++i) {
        auto rs2 = RootSystem::from_label("A3");
        bool swap = i % 2 == 0;
        Involution t2(*rs2, swap ? std::vector<int>{2, 1, 0} : std::vector<int>{0, 1, 2});
        std::vector<PolarRational> e2(3);
        for (int r = 0; r < 3; ++r) {
            int tr = t2(r);
            if (tr == r) e2[(std::size_t)r] = pr(v(rng));
            else if (tr > r) {
                e2[(std::size_t)r] = pr(std::abs(v(rng)));
                e2[(std::size_t)tr] = e2[(std::size_t)r];
            }
        }
        TwistingDatum d(rs2, t2, e2);
        auto f = d.classify();
        if (f.strongly_positive) CHECK(f.positive);
        if (f.positive) CHECK(f.regular);
        if (f.strongly_reduced) CHECK(f.reduced);
        if (f.gauge) CHECK(f.symmetric_pair);
    }
}

TEST_CASE("conjugation symmetry is enforced") {
    auto rs = RootSystem::from_label("A1xA1");
    Involution tau(*rs, {1, 0});
    std::vector<PolarRational> bad{PolarRational(Rational(1), Rational(1, 8)),
                                   PolarRational(Rational(1), Rational(1, 8))};
    CHECK_THROWS(TwistingDatum(rs, tau, bad));
}

TEST_CASE("eps_eval monoid extension") {
    auto d = make("A2", {0, 1}, {-1, 1});
    auto rs = d.root_system_ptr();
    Weight theta = rs->simple_root(0) + rs->simple_root(1);
    CHECK(d.eps_eval(theta, 'Q').real_value() == Rational(-1));
    CHECK(d.eps_eval(Weight(2), 'Q') == PolarRational::one());

    auto d2 = make("A2", {0, 1}, {0, 1});
    CHECK(d2.eps_eval(rs->simple_root(0), 'Q').is_zero());
    CHECK_THROWS(d2.eps_eval(-rs->simple_root(0), 'Q'));
    // group part on the support is fine
    CHECK(d2.eps_eval(-rs->simple_root(1), 'Q') == PolarRational::one());
}

TEST_CASE("compact roots") {
    // A2, tau = id, eps = (-1, 1): only alpha_2 is compact
    auto d = make("A2", {0, 1}, {-1, 1});
    const auto& c = d.compact_roots();
    REQUIRE(c.positive.size() == 1);
    CHECK(c.positive[0].w == d.root_system().simple_root(1));
    CHECK(c.simple.size() == 1);
    CHECK(d.wplus().size() == 2);

    // A3 with 1<->3, eps = (1,-1,1): folded alpha_1hat + alpha_2 is compact
    // via the odd-pairing clause
    auto d2 = make("A3", {2, 1, 0}, {1, -1, 1});
    const auto& c2 = d2.compact_roots();
    Weight beta = d2.folded().folded_simple(0) + d2.folded().folded_simple(1);
    bool found = false;
    for (const auto& fr : c2.positive)
        if (fr.w == beta) found = true;
    CHECK(found);

    // strongly positive: everything is compact
    auto d3 = make("B2", {0, 1}, {1, 1});
    CHECK(d3.compact_roots().positive.size() == d3.folded().folded_positive_roots().size());
}

TEST_CASE("dot action rank 1") {
    auto d = make("A1", {0}, {-1});
    auto rs = d.root_system_ptr();
    // lambda(varpi) = c > 0, undeformed s -> -c^{-1}
    QScalar c(Rational(3), Rational(0), Rational(0));
    WeightFunction lam(rs, d.tau(), {c});
    const auto& s = rs->simple_reflection(0);
    WeightFunction undeformed = d.dot(s, lam, false);
    CHECK(undeformed.value(0) == -c.inv());
    WeightFunction deformed = d.dot(s, lam, true);
    CHECK(deformed.value(0) == -(QScalar::q_pow(Rational(2)) * c.inv()));
    CHECK(d.dot(WeylElement::identity(1), lam, true).value(0) == c);
}

TEST_CASE("dot is a group action") {
    std::mt19937 rng(17);
    for (auto& [type, tauperm, eps] : std::vector<std::tuple<std::string, std::vector<int>, std::vector<long long>>>{
             {"A2", {0, 1}, {-1, 1}},
             {"B2", {0, 1}, {-1, -1}},
             {"A3", {2, 1, 0}, {1, -1, 1}},
             {"G2", {0, 1}, {-1, 1}}}) {
        auto d = make(type, tauperm, eps);
        auto rs = d.root_system_ptr();
        const auto& wn = d.wnu();
        std::uniform_int_distribution<std::size_t> pick(0, wn.size() - 1);
        std::uniform_int_distribution<int> ex(-2, 2);
        for (int i = 0; i < 10; ++i) {
            std::vector<QScalar> vals(rs->rank());
            for (std::size_t r = 0; r < rs->rank(); ++r) {
                std::size_t tr = (std::size_t)d.tau()((int)r);
                if (tr < r) continue;
                QScalar v(Rational(2), Rational(ex(rng)), Rational(0));
                vals[r] = v;
                vals[tr] = v.conj();
            }
            WeightFunction lam(rs, d.tau(), vals);
            const auto& v = wn[pick(rng)];
            const auto& w = wn[pick(rng)];
            for (bool deformed : {false, true}) {
                WeightFunction lhs = d.dot(v, d.dot(w, lam, deformed), deformed);
                WeightFunction rhs = d.dot(v.compose(w), lam, deformed);
                for (std::size_t r = 0; r < rs->rank(); ++r) CHECK(lhs.value(r) == rhs.value(r));
            }
        }
    }
}

TEST_CASE("w_minus enumeration rank 1 and 2") {
    auto plus = make("A1", {0}, {1});
    CHECK(plus.w_minus().size() == 1);

    auto minus = make("A1", {0}, {-1});
    REQUIRE(minus.w_minus().size() == 2);
    CHECK(minus.w_minus()[1].first == minus.root_system().simple_reflection(0));

    auto swap11 = make("A1xA1", {1, 0}, {1, 1});
    CHECK(swap11.w_minus().size() == 1); // no tau-fixed generators

    auto a2 = make("A2", {0, 1}, {-1, 1});
    const auto& wm = a2.w_minus();
    REQUIRE(wm.size() == 3);
    auto rs = a2.root_system_ptr();
    const auto& s1 = rs->simple_reflection(0);
    const auto& s2 = rs->simple_reflection(1);
    std::set<WeylElement> got;
    for (const auto& [w, chi] : wm) got.insert(w);
    CHECK(got.count(WeylElement::identity(2)));
    CHECK(got.count(s1));
    CHECK(got.count(s2.compose(s1)));
}

TEST_CASE("theorem bijection on small data") {
    for (auto& [type, tauperm, eps] : std::vector<std::tuple<std::string, std::vector<int>, std::vector<long long>>>{
             {"A2", {0, 1}, {-1, 1}},
             {"A2", {0, 1}, {-1, -1}},
             {"B2", {0, 1}, {1, -1}},
             {"A3", {2, 1, 0}, {1, -1, 1}},
             {"G2", {0, 1}, {-1, 1}}}) {
        auto d = make(type, tauperm, eps);
        const auto& wm = d.w_minus();
        const auto& wp = d.wplus();
        const auto& wn = d.wnu();
        CHECK(wm.size() * wp.size() == wn.size());
        std::set<WeylElement> products;
        for (const auto& [w, chi] : wm)
            for (const auto& v : wp) products.insert(w.compose(v));
        CHECK(products.size() == wn.size());
        // distinct sign characters
        std::set<SignCharacter> chars;
        for (const auto& [w, chi] : wm) chars.insert(chi);
        CHECK(chars.size() == wm.size());
        // W_nu^+ is the global stabilizer of the all-positive sign pattern on
        // the tau-fixed weight lattice
        auto rs2 = d.root_system_ptr();
        auto tau_positive = [&](const WeylElement& w) {
            WeylElement winv = w.inverse();
            for (std::size_t r = 0; r < rs2->rank(); ++r) {
                std::size_t tr = (std::size_t)d.tau()((int)r);
                if (tr < r) continue;
                Weight gen = rs2->fundamental_weight(r);
                if (tr != r) gen += rs2->fundamental_weight(tr);
                if (!d.eps_eval(gen - winv.act(gen), 'Q').is_positive_real()) return false;
            }
            return true;
        };
        std::set<WeylElement> stab, wpset(wp.begin(), wp.end());
        for (const auto& w : wn)
            if (tau_positive(w)) stab.insert(w);
        CHECK(stab == wpset);
    }
}

TEST_CASE("positivity of eps on W_nu^+ orbit differences") {
    // over the tau-fixed weight lattice, where the statement is applied
    auto d = make("A3", {2, 1, 0}, {1, -1, 1});
    auto rs = d.root_system_ptr();
    for (const auto& w : d.wplus()) {
        for (std::size_t r = 0; r < rs->rank(); ++r) {
            std::size_t tr = (std::size_t)d.tau()((int)r);
            if (tr < r) continue;
            Weight gen = rs->fundamental_weight(r);
            if (tr != r) gen += rs->fundamental_weight(tr);
            PolarRational v = d.eps_eval(gen - w.act(gen), 'Q');
            CHECK(v.is_positive_real());
        }
    }
    // converse: folded reflections satisfying the sign condition on P^tau are
    // compact
    const auto& c = d.compact_roots();
    std::set<Weight> compact;
    for (const auto& fr : c.positive) compact.insert(fr.w);
    for (const auto& fr : d.folded().folded_positive_roots()) {
        WeylElement s = d.folded().reflection_of(fr.w);
        bool all_pos = true;
        for (std::size_t r = 0; r < rs->rank() && all_pos; ++r) {
            std::size_t tr = (std::size_t)d.tau()((int)r);
            if (tr < r) continue;
            Weight gen = rs->fundamental_weight(r);
            if (tr != r) gen += rs->fundamental_weight(tr);
            PolarRational v = d.eps_eval(gen - s.act(gen), 'Q');
            if (!v.is_positive_real()) all_pos = false;
        }
        CHECK(all_pos == (compact.count(fr.w) > 0));
    }
}

TEST_CASE("decomposition of rho over compact simples") {
    // w^{-1} rho - (w v)^{-1} rho is a nonzero nonnegative integer
    // combination of simple compact roots, for w in W^-, v in W^+ \ {e}
    for (auto& [type, tauperm, eps] : std::vector<std::tuple<std::string, std::vector<int>, std::vector<long long>>>{
             {"A2", {0, 1}, {-1, 1}}, {"B2", {0, 1}, {1, -1}}, {"A3", {2, 1, 0}, {1, -1, 1}}}) {
        auto d = make(type, tauperm, eps);
        auto rs = d.root_system_ptr();
        const auto& simple = d.compact_roots().simple;
        for (const auto& [w, chi] : d.w_minus()) {
            for (const auto& v : d.wplus()) {
                if (v.is_identity()) continue;
                Weight delta = w.inverse().act(rs->rho()) - w.compose(v).inverse().act(rs->rho());
                CHECK_FALSE(delta.is_zero());
                // solve delta as a nonnegative integer combination greedily:
                // subtract simple compact roots via exact solve
                std::vector<std::vector<Rational>> a(rs->rank(),
                                                     std::vector<Rational>(simple.size() + 1));
                for (std::size_t i = 0; i < rs->rank(); ++i) {
                    for (std::size_t j = 0; j < simple.size(); ++j) a[i][j] = simple[j].c[i];
                    a[i][simple.size()] = delta.c[i];
                }
                // Gaussian elimination
                std::size_t row = 0;
                std::vector<int> pivot_col(simple.size(), -1);
                for (std::size_t col = 0; col < simple.size() && row < rs->rank(); ++col) {
                    std::size_t piv = row;
                    while (piv < rs->rank() && a[piv][col].is_zero()) ++piv;
                    if (piv == rs->rank()) continue;
                    std::swap(a[piv], a[row]);
                    Rational p = a[row][col];
                    for (auto& x : a[row]) x /= p;
                    for (std::size_t i = 0; i < rs->rank(); ++i) {
                        if (i == row || a[i][col].is_zero()) continue;
                        Rational fch = a[i][col];
                        for (std::size_t j = 0; j <= simple.size(); ++j) a[i][j] -= fch * a[row][j];
                    }
                    pivot_col[col] = (int)row;
                    ++row;
                }
                bool all_nonneg = true, consistent = true;
                for (std::size_t i = row; i < rs->rank(); ++i)
                    if (!a[i][simple.size()].is_zero()) consistent = false;
                for (std::size_t col = 0; col < simple.size(); ++col) {
                    if (pivot_col[col] < 0) continue;
                    const Rational& coef = a[(std::size_t)pivot_col[col]][simple.size()];
                    if (!coef.is_integer() || coef.is_negative()) all_nonneg = false;
                }
                CHECK(consistent);
                CHECK(all_nonneg);
            }
        }
    }
}

TEST_CASE("strong reduction") {
    // A1, eps = -4: pure scaling
    auto rs1 = RootSystem::from_label("A1");
    TwistingDatum d1(rs1, Involution::identity(*rs1), {pr(-4)});
    auto red1 = strongly_reduce(d1);
    CHECK(red1.datum.eps(0).real_value() == Rational(-1));
    CHECK(red1.witness.is_identity());
    CHECK(red1.scaling[0] == Rational(1, 4));

    // A2, eps = (-1,-1) -> (-1, 1) via s_1
    auto d2 = make("A2", {0, 1}, {-1, -1});
    auto red2 = strongly_reduce(d2);
    CHECK(red2.datum.classify().strongly_reduced);
    std::vector<Rational> vals{red2.datum.eps(0).real_value(), red2.datum.eps(1).real_value()};
    std::sort(vals.begin(), vals.end());
    CHECK(vals == std::vector<Rational>{Rational(-1), Rational(1)});
    CHECK_FALSE(red2.witness.is_identity());

    // already strongly reduced: identity witness
    auto d3 = make("A2", {0, 1}, {-1, 1});
    auto red3 = strongly_reduce(d3);
    CHECK(red3.witness.is_identity());
    CHECK(red3.datum == d3);

    // randomized: the result is always equivalent and strongly reduced
    std::mt19937 rng(23);
    std::uniform_int_distribution<int> v(1, 8);
    for (int i = 0; i < 20; ++i) {
        std::vector<PolarRational> eps{pr(-v(rng)), pr(-v(rng)), pr(v(rng))};
        auto rs = RootSystem::from_label("A3");
        TwistingDatum d(rs, Involution::identity(*rs), eps);
        auto red = strongly_reduce(d);
        CHECK(red.datum.classify().strongly_reduced);
        for (const auto& s : red.scaling) CHECK(s.is_positive());
    }
}

TEST_CASE("gauge transport construction") {
    // nu' = nu, w = e -> f = 1
    auto d = make("A2", {0, 1}, {-1, 1});
    auto f0 = gauge_transport(d, d, WeylElement::identity(2));
    for (const auto& x : f0) {
        CHECK(x.sign == 1);
        CHECK(x.radicand == Rational(1));
    }

    // A1: eps = eps' = -1, w = s -> f_P(varpi) = -1
    auto rs1 = RootSystem::from_label("A1");
    TwistingDatum m(rs1, Involution::identity(*rs1), {pr(-1)});
    auto f1 = gauge_transport(m, m, rs1->simple_reflection(0));
    CHECK(f1[0].sign == -1);
    CHECK(f1[0].radicand == Rational(1));

    // scaling-only: eps' = 4 eps, w = e -> positive square root of the scale
    TwistingDatum m4(rs1, Involution::identity(*rs1), {pr(-4)});
    auto f2 = gauge_transport(m, m4, WeylElement::identity(1));
    CHECK(f2[0].sign == 1);
    CHECK(f2[0].to_double() == doctest::Approx(2.0));

    // unrelated data are rejected
    auto dneg = make("A2", {0, 1}, {-1, -1});
    CHECK_THROWS(gauge_transport(d, dneg, WeylElement::identity(2)));
}
