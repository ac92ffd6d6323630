#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qorbit/cyclo.hpp"
#include "qorbit/laurent.hpp"
#include "qorbit/polar.hpp"
#include "qorbit/qscalar.hpp"
#include "qorbit/rational.hpp"

#include <random>

using namespace qorbit;

TEST_CASE("rational basics") {
    Rational a(3, 6);
    CHECK(a == Rational(1, 2));
    CHECK(a.str() == "1/2");
    CHECK((Rational(2, 3) + Rational(1, 6)) == Rational(5, 6));
    CHECK((Rational(-4, 8)).str() == "-1/2");
    CHECK(Rational(2, -4) == Rational(-1, 2));
    CHECK(Rational::parse("-7/3") == Rational(-7, 3));
    CHECK(Rational(1, 2).pow(-2) == Rational(4));
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
    CHECK(rat_floor(Rational(-3, 2)) == BigInt(-2));
    CHECK(rat_floor(Rational(7, 2)) == BigInt(3));
}

TEST_CASE("integer_log and exact_root") {
    long long k = 0;
    CHECK(integer_log(Rational(8), Rational(2), k));
    CHECK(k == 3);
    CHECK(integer_log(Rational(1, 8), Rational(1, 2), k));
    CHECK(k == 3);
    CHECK(integer_log(Rational(8), Rational(1, 2), k));
    CHECK(k == -3);
    CHECK_FALSE(integer_log(Rational(6), Rational(2), k));
    Rational r;
    CHECK(exact_root(Rational(1, 4), 2, r));
    CHECK(r == Rational(1, 2));
    CHECK(exact_root(Rational(27, 8), 3, r));
    CHECK(r == Rational(3, 2));
    CHECK_FALSE(exact_root(Rational(1, 2), 2, r));
}

TEST_CASE("polar rational closure") {
    PolarRational e(Rational(-3));
    CHECK(e.modulus() == Rational(3));
    CHECK(e.phase() == Rational(1, 2));
    CHECK(e.real_value() == Rational(-3));
    PolarRational i(Rational(1), Rational(1, 4));
    CHECK((i * i).real_value() == Rational(-1));
    CHECK(i.conj() == PolarRational(Rational(1), Rational(3, 4)));
    CHECK((i * i.conj()).real_value() == Rational(1));
    CHECK(PolarRational().is_zero());
    CHECK((PolarRational() * i).is_zero());
    CHECK(i.pow(4) == PolarRational::one());
}

TEST_CASE("laurent eval spec values") {
    // q^{-1} + q at 1/2 -> 5/2
    LaurentPoly p;
    p.add_term(Rational(-1), Rational(1));
    p.add_term(Rational(1), Rational(1));
    auto v = laurent_eval(p, Rational(1, 2));
    REQUIRE(v.exact.has_value());
    CHECK(*v.exact == Rational(5, 2));

    CHECK(*laurent_eval(LaurentPoly::one(), Rational(1, 3)).exact == Rational(1));

    // q^{1/2} at 1/4 -> 1/2 (exact square root)
    LaurentPoly h = LaurentPoly::term(Rational(1), Rational(1, 2));
    auto hv = laurent_eval(h, Rational(1, 4));
    REQUIRE(hv.exact.has_value());
    CHECK(*hv.exact == Rational(1, 2));

    // q^{1/2} at 1/2 has no exact path
    CHECK_FALSE(laurent_eval(h, Rational(1, 2)).exact.has_value());
    CHECK(laurent_eval(h, Rational(1, 2)).approx == doctest::Approx(std::sqrt(0.5)));

    CHECK_THROWS(laurent_eval(p, Rational(2)));
    CHECK_THROWS(laurent_eval(p, Rational(-1, 2)));
}

static LaurentPoly qpow(long long num, long long den = 1) {
    return LaurentPoly::term(Rational(1), Rational(num, den));
}

TEST_CASE("laurent division spec values") {
    LaurentPoly num = qpow(-2) - qpow(2);
    LaurentPoly den = qpow(-1) - qpow(1);
    CHECK(laurent_div(num, den) == qpow(-1) + qpow(1));

    LaurentPoly num2 = qpow(-4) - qpow(4);
    LaurentPoly den2 = qpow(-2) - qpow(2);
    CHECK(laurent_div(num2, den2) == qpow(-2) + qpow(2));

    LaurentPoly p = qpow(-3) + LaurentPoly::constant(Rational(5, 7)) - qpow(2);
    CHECK(laurent_div(p, p) == LaurentPoly::one());

    CHECK_THROWS_AS(laurent_div(qpow(1) + LaurentPoly::one(), qpow(1) - LaurentPoly::one()),
                    laurent_division_error);
}

TEST_CASE("laurent ring properties randomized") {
    std::mt19937 rng(7);
    auto rand_poly = [&rng]() {
        std::uniform_int_distribution<int> nt(0, 4), e(-5, 5), c(-4, 4);
        LaurentPoly p;
        int terms = nt(rng);
        for (int i = 0; i < terms; ++i) p.add_term(Rational(e(rng)), Rational(c(rng)));
        return p;
    };
    for (int it = 0; it < 200; ++it) {
        LaurentPoly a = rand_poly(), b = rand_poly(), c = rand_poly();
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * LaurentPoly::one() == a);
        if (!b.is_zero()) CHECK(laurent_div(a * b, b) == a);
        // evaluation is a ring homomorphism on the exact path
        Rational q(1, 3);
        auto ea = laurent_eval(a, q), eb = laurent_eval(b, q), eab = laurent_eval(a * b, q);
        REQUIRE(ea.exact.has_value());
        CHECK(*eab.exact == *ea.exact * *eb.exact);
    }
}

TEST_CASE("qscalar arithmetic and equality at q") {
    Rational q(1, 2);
    QScalar c(Rational(3), Rational(-2), Rational(0)); // 3 q^{-2}
    QScalar d(Rational(12), Rational(0), Rational(0)); // 12
    CHECK(c.equal_at(d, q));                           // 3 * 4 = 12
    CHECK_FALSE(c.equal_at(QScalar::from_real(Rational(11)), q));
    QScalar m = -QScalar::q_pow(Rational(2));
    CHECK(m.real_sign() == -1);
    CHECK((m * m).is_positive());
    CHECK(m.inv().equal_at(-QScalar::from_real(Rational(4)), q));
    // modulus 1 detection through mixed scale/exponent forms
    QScalar u(Rational(4), Rational(2), Rational(0)); // 4 q^2 = 1 at q=1/2
    CHECK(u.is_unimodular_at(q));
    CHECK_FALSE(u.is_unimodular_at(Rational(1, 3)));
}

TEST_CASE("cyclotomic exact values") {
    // 1 + zeta_3 + zeta_3^2 = 0
    auto z3 = [](long long k) {
        return CycloLaurent::from_term(Rational(1), Rational(0), Rational(k, 3));
    };
    CHECK((z3(0) + z3(1) + z3(2)).is_zero());
    // zeta_4^2 = -1
    auto i = CycloLaurent::from_term(Rational(1), Rational(0), Rational(1, 4));
    CHECK((i * i + CycloLaurent::one()).is_zero());
    CHECK((i * i.conj()) == CycloLaurent::one());
    // (1+i)(1-i) = 2
    auto one = CycloLaurent::one();
    CHECK(((one + i) * (one - i)) == CycloLaurent(LaurentPoly::constant(Rational(2))));
    // mixed orders: zeta_6 = -zeta_3^2
    auto z6 = CycloLaurent::from_term(Rational(1), Rational(0), Rational(1, 6));
    CHECK((z6 + z3(2)).is_zero());
}

TEST_CASE("value keys separate laurent values at q") {
    Rational q(1, 2);
    LaurentPoly a = qpow(1);                                 // q
    LaurentPoly b = LaurentPoly::constant(Rational(1, 2));    // 1/2
    CHECK(laurent_value_key(a, q) == laurent_value_key(b, q)); // equal values
    LaurentPoly c = qpow(1, 2);                               // q^{1/2}, irrational at 1/2
    CHECK(laurent_value_key(c, q) != laurent_value_key(b, q));
    // exact root folding: q^{1/2} at q = 1/4 is rational
    CHECK(laurent_value_key(c, Rational(1, 4)) == laurent_value_key(b, Rational(1, 4)));
}
