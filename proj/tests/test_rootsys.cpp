#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qorbit/rootsys.hpp"

#include <random>

using namespace qorbit;

TEST_CASE("A2 root system basics") {
    auto rs = RootSystem::from_label("A2");
    CHECK(rs->rank() == 2);
    CHECK(rs->positive_roots().size() == 3);
    CHECK(rs->rho() == rs->fundamental_weight(0) + rs->fundamental_weight(1));
    // alpha_1 + alpha_2 is a root
    Weight theta = rs->simple_root(0) + rs->simple_root(1);
    CHECK(rs->is_positive_root(theta));
    CHECK(rs->pairing(rs->simple_root(0), rs->simple_root(0)) == Rational(2));
    CHECK(rs->pairing(rs->simple_root(0), rs->simple_root(1)) == Rational(-1));
}

TEST_CASE("A1 gram normalization") {
    auto rs = RootSystem::from_label("A1");
    CHECK(rs->positive_roots().size() == 1);
    CHECK(rs->pairing(rs->fundamental_weight(0), rs->fundamental_weight(0)) == Rational(1, 2));
}

TEST_CASE("G2 structure") {
    auto rs = RootSystem::from_label("G2");
    CHECK(rs->positive_roots().size() == 6);
    bool d13 = rs->d(0) == Rational(1) && rs->d(1) == Rational(3);
    bool d31 = rs->d(0) == Rational(3) && rs->d(1) == Rational(1);
    CHECK((d13 || d31));
}

TEST_CASE("weyl enumeration counts") {
    CHECK(RootSystem::from_label("A2")->weyl().size() == 6);
    CHECK(RootSystem::from_label("A1xA1")->weyl().size() == 4);
    CHECK(RootSystem::from_label("B2")->weyl().size() == 8);
    CHECK(RootSystem::from_label("G2")->weyl().size() == 12);
    CHECK(RootSystem::from_label("D4")->weyl().size() == 192);
    CHECK(RootSystem::from_label("F4")->weyl().size() == 1152);
}

TEST_CASE("weyl action examples") {
    auto rs = RootSystem::from_label("A2");
    Weight w1 = rs->fundamental_weight(0);
    CHECK(rs->simple_reflection(0).act(w1) == w1 - rs->simple_root(0));
    CHECK(WeylElement::identity(2).act(w1) == w1);
    CHECK(rs->longest_element().act(w1) == -rs->fundamental_weight(1));
}

TEST_CASE("roots closed under the weyl action") {
    for (const char* lbl : {"A2", "B2", "G2", "A3"}) {
        auto rs = RootSystem::from_label(lbl);
        for (const auto& w : rs->weyl())
            for (const auto& pr : rs->positive_roots()) CHECK(rs->is_root(w.act(pr.w)));
    }
}

TEST_CASE("weyl element inverse and words") {
    auto rs = RootSystem::from_label("B3");
    std::mt19937 rng(3);
    const auto& W = rs->weyl();
    std::uniform_int_distribution<std::size_t> pick(0, W.size() - 1);
    for (int i = 0; i < 25; ++i) {
        const auto& w = W[pick(rng)];
        CHECK(w.compose(w.inverse()).is_identity());
    }
}

TEST_CASE("dominant representative") {
    auto rs = RootSystem::from_label("B3");
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> coord(-4, 4);
    for (int i = 0; i < 30; ++i) {
        Weight v(3);
        for (auto& x : v.c) x = Rational(coord(rng));
        WeylElement w;
        Weight dom = rs->dominant_representative(v, &w);
        CHECK(dom.is_dominant());
        CHECK(w.act(v) == dom);
    }
}

TEST_CASE("weyl dimension formula") {
    auto a2 = RootSystem::from_label("A2");
    Weight adj = a2->rho();
    CHECK(a2->weyl_dimension(adj) == BigInt(8));
    CHECK(a2->weyl_dimension(a2->fundamental_weight(0)) == BigInt(3));
    auto d4 = RootSystem::from_label("D4");
    CHECK(d4->weyl_dimension(d4->fundamental_weight(1)) == BigInt(28));
}

TEST_CASE("involution validation") {
    auto a3 = RootSystem::from_label("A3");
    CHECK_NOTHROW(Involution(*a3, {2, 1, 0}));
    CHECK_THROWS(Involution(*a3, {1, 0, 2})); // not a diagram automorphism
    CHECK_THROWS(Involution(*a3, {1, 2, 0})); // not an involution
    Involution tau(*a3, {2, 1, 0});
    CHECK(tau.fixed_nodes() == std::vector<int>{1});
    CHECK(tau.fundamental_domain() == std::vector<int>{0});
}

TEST_CASE("folding table entries") {
    struct Case {
        const char* type;
        std::vector<int> tau;
        const char* folded;
        bool non_reduced;
    };
    std::vector<Case> cases = {
        {"A3", {2, 1, 0}, "C2", false},
        {"A5", {4, 3, 2, 1, 0}, "C3", false},
        {"A2", {1, 0}, "BC1", true},
        {"A4", {3, 2, 1, 0}, "BC2", true},
        {"D4", {0, 1, 3, 2}, "B3", false},
        {"D5", {0, 1, 2, 4, 3}, "B4", false},
        {"E6", {4, 3, 2, 1, 0, 5}, "F4", false},
    };
    for (const auto& c : cases) {
        auto rs = RootSystem::from_label(c.type);
        FoldedSystem fs(rs, Involution(*rs, c.tau));
        CHECK(fs.folded_type() == c.folded);
        CHECK(fs.non_reduced() == c.non_reduced);
    }
}

TEST_CASE("trivial folding reproduces the base system") {
    auto rs = RootSystem::from_label("B2");
    FoldedSystem fs(rs, Involution::identity(*rs));
    CHECK(fs.folded_type() == "B2");
    CHECK(fs.num_classes() == 2);
    CHECK_FALSE(fs.non_reduced());
    for (std::size_t k = 0; k < 2; ++k) {
        CHECK(fs.folded_simple(k) == rs->simple_root(k));
        CHECK(fs.folded_fundamental_weight(k) == rs->fundamental_weight(k));
        CHECK(fs.lifted_generator(k) == rs->simple_reflection(k));
    }
}

TEST_CASE("lifted generators restrict to folded reflections") {
    struct Case {
        const char* type;
        std::vector<int> tau;
    };
    for (const auto& c : std::vector<Case>{{"A3", {2, 1, 0}}, {"A4", {3, 2, 1, 0}},
                                           {"D4", {0, 1, 3, 2}}, {"A1xA1", {1, 0}}}) {
        auto rs = RootSystem::from_label(c.type);
        FoldedSystem fs(rs, Involution(*rs, c.tau));
        for (std::size_t k = 0; k < fs.num_classes(); ++k) {
            const auto& g = fs.lifted_generator(k);
            CHECK(g.compose(g).is_identity());
            // restriction to the fixed subspace is the reflection across the
            // folded simple root
            const Weight& beta = fs.folded_simple(k);
            Rational nn = rs->pairing(beta, beta);
            for (std::size_t l = 0; l < fs.num_classes(); ++l) {
                const Weight& v = fs.folded_simple(l);
                Weight expect = v - (Rational(2) * rs->pairing(v, beta) / nn) * beta;
                CHECK(g.act(v) == expect);
            }
        }
    }
}

TEST_CASE("folded fundamental weights match projections") {
    // varpi_hat = varpi_+ except the middle classes of folded A_{2n}
    auto a4 = RootSystem::from_label("A4");
    Involution tau(*a4, {3, 2, 1, 0});
    FoldedSystem fs(a4, tau);
    // class {0,3}: outer nodes, (alpha_0^vee, alpha_3) = 0 -> projection
    Weight proj03 = Rational(1, 2) * (a4->fundamental_weight(0) + a4->fundamental_weight(3));
    CHECK(fs.folded_fundamental_weight(0) == proj03);
    // class {1,2}: adjacent middle pair -> half the projection
    Weight proj12 = Rational(1, 2) * (a4->fundamental_weight(1) + a4->fundamental_weight(2));
    CHECK(fs.folded_fundamental_weight(1) == Rational(1, 2) * proj12);
    // folded fundamental weights pair as delta with folded simple coroots
    for (std::size_t k = 0; k < fs.num_classes(); ++k)
        for (std::size_t l = 0; l < fs.num_classes(); ++l)
            CHECK(a4->pair_coroot(fs.folded_fundamental_weight(k), fs.folded_simple(l)) ==
                  Rational(k == l ? 1 : 0));
}

TEST_CASE("tau-fixed weights reach dominance within W^tau") {
    for (auto& [type, tauperm] : std::vector<std::pair<std::string, std::vector<int>>>{
             {"A3", {2, 1, 0}}, {"A4", {3, 2, 1, 0}}, {"D4", {0, 1, 3, 2}}}) {
        auto rs = RootSystem::from_label(type);
        Involution tau(*rs, tauperm);
        FoldedSystem fs(rs, tau);
        std::mt19937 rng(5);
        std::uniform_int_distribution<int> coord(-3, 3);
        for (int i = 0; i < 20; ++i) {
            Weight v(rs->rank());
            for (auto& x : v.c) x = Rational(coord(rng));
            v = Rational(1, 2) * (v + tau.act(v));
            bool found = false;
            for (const auto& w : fs.weyl_tau())
                if (w.act(v).is_dominant()) {
                    found = true;
                    break;
                }
            CHECK(found);
        }
    }
}

TEST_CASE("hsgn is the folded sign character") {
    auto a3 = RootSystem::from_label("A3");
    Involution tau(*a3, {2, 1, 0});
    FoldedSystem fs(a3, tau);
    CHECK(fs.hsgn(WeylElement::identity(3)) == 1);
    for (std::size_t k = 0; k < fs.num_classes(); ++k) CHECK(fs.hsgn(fs.lifted_generator(k)) == -1);
    // multiplicative on W^tau
    const auto& wt = fs.weyl_tau();
    for (const auto& a : wt)
        for (const auto& b : wt) CHECK(fs.hsgn(a.compose(b)) == fs.hsgn(a) * fs.hsgn(b));
    // identity involution: hsgn = ordinary sign (parity of length)
    auto b2 = RootSystem::from_label("B2");
    FoldedSystem triv(b2, Involution::identity(*b2));
    for (const auto& w : b2->weyl()) CHECK(triv.hsgn(w) == (w.word().size() % 2 == 0 ? 1 : -1));
}

TEST_CASE("recognize cartan labels") {
    CHECK(*recognize_cartan({{2, -1}, {-1, 2}}) == "A2");
    CHECK(*recognize_cartan({{2, 0}, {0, 2}}) == "A1xA1");
    CHECK(*recognize_cartan(builtin_cartan("F4")) == "F4");
    CHECK(*recognize_cartan(builtin_cartan("E6")) == "E6");
    CHECK(*recognize_cartan(builtin_cartan("D5")) == "D5");
    CHECK_FALSE(recognize_cartan({{2, -1}, {-4, 2}}).has_value());
}

TEST_CASE("guards") {
    CHECK_THROWS_AS(RootSystem::from_label("A9")->weyl(), guard_error); // 10! elements
    CHECK_THROWS(RootSystem::from_cartan({{2, -2}, {-2, 2}}));          // affine
}
