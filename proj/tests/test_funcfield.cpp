#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "ellsurf/factor.hpp"
#include "ellsurf/funcfield.hpp"

using namespace ellsurf;

namespace {

QPoly T = QPoly::var();

QPoly tpow(int k) { return QPoly::monomial(Rat(1), k); }

QRatFunc rnd_ratfunc(std::mt19937& rng) {
    std::uniform_int_distribution<int> coeff(-6, 6), deg(0, 3);
    auto rnd_poly = [&]() {
        QPoly p;
        int d = deg(rng);
        for (int i = 0; i <= d; ++i) p = p + QPoly::monomial(rat(coeff(rng)), i);
        return p;
    };
    QPoly num = rnd_poly(), den = rnd_poly();
    while (num.zero()) num = rnd_poly();
    while (den.zero()) den = rnd_poly();
    return QRatFunc(num, den);
}

} // namespace

TEST_CASE("valuation basics") {
    Place at0 = Place::of_root(rat(0));
    Place inf = Place::infinity();

    CHECK(valuation(QRatFunc(T * T), at0) == 2);
    CHECK(valuation(QRatFunc(QPoly(Rat(1)), T), inf) == 1);

    // Delta = t^2 (t-1728)^9 has valuation 9 at t = 1728
    QPoly shift = T - QPoly(rat(1728));
    QPoly delta = tpow(2) * poly_pow(shift, 9);
    CHECK(valuation(QRatFunc(delta), Place::of_root(rat(1728))) == 9);
    CHECK(valuation(QRatFunc(delta), at0) == 2);
    CHECK(valuation(QRatFunc(), at0) == VAL_INF);
}

TEST_CASE("factorize examples") {
    QPoly shift = T - QPoly(rat(1728));
    QPoly f = tpow(2) * poly_pow(shift, 9);
    auto fac = factorize(f);
    REQUIRE(fac.factors.size() == 2);
    CHECK(fac.unit == rat(1));
    CHECK(fac.factors[0].first == T);
    CHECK(fac.factors[0].second == 2);
    CHECK(fac.factors[1].first == shift);
    CHECK(fac.factors[1].second == 9);

    QPoly t2p1 = T * T + QPoly(Rat(1));
    auto fac2 = factorize(t2p1);
    REQUIRE(fac2.factors.size() == 1);
    CHECK(fac2.factors[0].first == t2p1);
    CHECK(fac2.factors[0].second == 1);
    CHECK(is_irreducible(t2p1));

    QPoly f3 = rat(4) * (T * T) - QPoly(rat(4));
    auto fac3 = factorize(f3);
    CHECK(fac3.unit == rat(4));
    REQUIRE(fac3.factors.size() == 2);
    CHECK(fac3.factors[0].first == T - QPoly(Rat(1)));
    CHECK(fac3.factors[1].first == T + QPoly(Rat(1)));
}

TEST_CASE("factorize round trip, fuzz") {
    std::mt19937 rng(12345);
    std::uniform_int_distribution<int> coeff(-9, 9), deg(1, 9);
    for (int iter = 0; iter < 60; ++iter) {
        QPoly f;
        int d = deg(rng);
        for (int i = 0; i <= d; ++i) f = f + QPoly::monomial(rat(coeff(rng)), i);
        if (f.degree() < 1) continue;
        auto fac = factorize(f);
        QPoly prod = QPoly(fac.unit);
        for (auto& [g, e] : fac.factors) {
            CHECK(g.monic());
            CHECK(is_irreducible(g));
            prod *= poly_pow(g, e);
        }
        CHECK(prod == f);
    }
}

TEST_CASE("degree formula: sum of valuations times degrees is zero") {
    std::mt19937 rng(777);
    for (int iter = 0; iter < 40; ++iter) {
        QRatFunc f = rnd_ratfunc(rng);
        if (f.zero()) continue;
        long total = valuation(f, Place::infinity());
        for (auto& [p, e] : factorize(f.num()).factors) {
            (void)e;
            total += valuation(f, Place::finite(p)) * p.degree();
        }
        for (auto& [p, e] : factorize(f.den()).factors) {
            (void)e;
            total += valuation(f, Place::finite(p)) * p.degree();
        }
        CHECK(total == 0);
    }
}

TEST_CASE("valuation is additive, fuzz") {
    std::mt19937 rng(999);
    Place places[] = {Place::of_root(rat(0)), Place::of_root(rat(1)),
                      Place::finite(T * T + QPoly(Rat(1))), Place::infinity()};
    for (int iter = 0; iter < 40; ++iter) {
        QRatFunc f = rnd_ratfunc(rng), g = rnd_ratfunc(rng);
        if (f.zero() || g.zero()) continue;
        for (const Place& v : places) CHECK(valuation(f * g, v) == valuation(f, v) + valuation(g, v));
    }
}

TEST_CASE("reduce_at") {
    Place at0 = Place::of_root(rat(0));
    CHECK(reduce_at(QRatFunc(T + QPoly(rat(3))), at0).rep() == QPoly(rat(3)));

    Place q = Place::finite(T * T + QPoly(Rat(1)));
    QRatFunc f(T * T + QPoly(Rat(1)), T - QPoly(rat(2)));
    CHECK(reduce_at(f, q).zero());

    QRatFunc g(rat(3) * T + QPoly(Rat(1)), T + QPoly(rat(5)));
    CHECK(reduce_at(g, Place::infinity()).rep() == QPoly(rat(3)));

    CHECK_THROWS_AS(reduce_at(QRatFunc(QPoly(Rat(1)), T), at0), Error);
}

TEST_CASE("residue field axioms at a quadratic place, fuzz") {
    QPoly mod = T * T - QPoly(rat(2)); // Q(sqrt 2)
    std::mt19937 rng(4242);
    std::uniform_int_distribution<int> coeff(-5, 5);
    auto rnd = [&]() {
        return ResidueElt(QPoly(std::vector<Rat>{rat(coeff(rng)), rat(coeff(rng))}), mod);
    };
    for (int iter = 0; iter < 50; ++iter) {
        ResidueElt a = rnd(), b = rnd(), c = rnd();
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        if (!a.zero()) CHECK(a * a.inverse() == ResidueElt(QPoly(Rat(1)), mod));
    }
}

TEST_CASE("square tests in residue fields") {
    Place at0 = Place::of_root(rat(0));
    CHECK(is_square_in_residue(reduce_at(QRatFunc(QPoly(rat(4))), at0)) == SquareAnswer::Yes);
    CHECK(is_square_in_residue(reduce_at(QRatFunc(QPoly(rat(3))), at0)) == SquareAnswer::No);
    CHECK_THROWS_AS(is_square_in_residue(reduce_at(QRatFunc(), at0)), Error);

    // class of t in Q[t]/(t^2-2), i.e. sqrt(2) in Q(sqrt 2): z^2 = sqrt(2) has
    // no solution since the norm -2 is not a rational square.
    QPoly mod = T * T - QPoly(rat(2));
    ResidueElt cls_t(T, mod);
    CHECK(is_square_in_residue(cls_t) == SquareAnswer::No);

    // 3 + 2 sqrt(2) = (1 + sqrt 2)^2 is a square there
    ResidueElt sq(QPoly(std::vector<Rat>{rat(3), rat(2)}), mod);
    CHECK(is_square_in_residue(sq) == SquareAnswer::Yes);
    auto z = residue_sqrt(sq);
    REQUIRE(z.has_value());
    CHECK((*z) * (*z) == sq);

    // class of t in Q[t]/(t^2 - 4t + 2): t = 2 + sqrt(2), norm 2, still no root
    QPoly mod2 = T * T - rat(4) * T + QPoly(rat(2));
    CHECK(is_square_in_residue(ResidueElt(T, mod2)) == SquareAnswer::No);
    // but t^2 - 2t + 1 = (t-1)^2 is one, with root t - 1 = 1 + sqrt 2
    ResidueElt e(T * T - rat(2) * T + QPoly(rat(1)), mod2);
    CHECK(is_square_in_residue(e) == SquareAnswer::Yes);
}

TEST_CASE("quadratic field elements") {
    Quad s2(rat(0), rat(1), Int(2));
    Quad x = Quad(rat(3)) + Quad(rat(2)) * s2;
    CHECK((s2 * s2) == Quad(rat(2)));
    CHECK(x.norm() == rat(1));
    CHECK((x * x.inverse()) == Quad(rat(1)));
}
