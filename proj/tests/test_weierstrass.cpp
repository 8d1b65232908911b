#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "ellsurf/weierstrass.hpp"

using namespace ellsurf;

namespace {

QPoly T = QPoly::var();
QPoly C(long n) { return QPoly(rat(n)); }
QPoly tpow(int k) { return QPoly::monomial(Rat(1), k); }

// eq-(9)-style integral normal form: y^2 + (t-1728) xy = x^3 - 36(t-1728)^3 x - (t-1728)^5
WModel normal_form() {
    QPoly sh = T - C(1728);
    return make_model(sh, QPoly(), QPoly(), rat(-36) * poly_pow(sh, 3), -poly_pow(sh, 5));
}

} // namespace

TEST_CASE("discriminant examples") {
    // constants: y^2 = x^3 + x + 1 -> -16(4+27) = -496
    WModel m = make_model(QPoly(), QPoly(), QPoly(), C(1), C(1));
    CHECK(discriminant(m) == C(-496));

    // y^2 = x^3 + t x -> -64 t^3
    WModel m2 = make_model(QPoly(), QPoly(), QPoly(), T, QPoly());
    CHECK(discriminant(m2) == rat(-64) * tpow(3));

    // the normal form has Delta = t^2 (t-1728)^9
    CHECK(discriminant(normal_form()) == tpow(2) * poly_pow(T - C(1728), 9));
}

TEST_CASE("j-invariant examples") {
    WModel m = make_model(QPoly(), QPoly(), QPoly(), C(1), QPoly()); // y^2 = x^3+x
    CHECK(j_invariant(m) == QRatFunc(C(1728)));

    WModel m2 = make_model(QPoly(), QPoly(), C(1), QPoly(), QPoly()); // y^2+y = x^3
    CHECK(j_invariant(m2).zero());

    CHECK(j_invariant(normal_form()) == QRatFunc(T));

    WModel sing = make_model(QPoly(), QPoly(), QPoly(), QPoly(), QPoly());
    CHECK_THROWS_AS(j_invariant(sing), Error);
}

TEST_CASE("transforms: scaling laws and identity") {
    WModel m = normal_form();
    CHECK(discriminant(apply_transform(m, AdmissibleTransform::identity())) == discriminant(m));

    // u = t on y^2 = x^3 + t^8 x + t^12 gives y^2 = x^3 + t^4 x + t^6
    WModel big = make_model(QPoly(), QPoly(), QPoly(), tpow(8), tpow(12));
    WModel small = apply_transform(big, AdmissibleTransform::scaling(QRatFunc(T)));
    CHECK(small.a4 == QRatFunc(tpow(4)));
    CHECK(small.a6 == QRatFunc(tpow(6)));

    // Delta scales by u^-12
    QRatFunc expect = QRatFunc(discriminant(big)) / rf_pow(QRatFunc(T), 12);
    CHECK(small.disc() == expect);
}

TEST_CASE("j invariant under random admissible transforms (fuzz)") {
    WModel m = normal_form();
    QRatFunc j0 = j_invariant(m);
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> coeff(-4, 4), deg(0, 2);
    auto rnd_poly = [&]() {
        QPoly p;
        int d = deg(rng);
        for (int i = 0; i <= d; ++i) p = p + QPoly::monomial(rat(coeff(rng)), i);
        return p;
    };
    auto rnd_rf = [&]() {
        QPoly n = rnd_poly(), d = rnd_poly();
        while (d.zero()) d = rnd_poly();
        return QRatFunc(n, d);
    };
    int done = 0;
    for (int iter = 0; done < 1000 && iter < 5000; ++iter) {
        AdmissibleTransform t;
        t.u = rnd_rf();
        if (t.u.zero()) continue;
        t.r = rnd_rf();
        t.s = rnd_rf();
        t.w = rnd_rf();
        WModel n = apply_transform(m, t);
        CHECK(j_invariant(n) == j0);
        ++done;
    }
    CHECK(done == 1000);
}

TEST_CASE("transform composition and inverse act correctly") {
    WModel m = normal_form();
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> coeff(-3, 3);
    for (int iter = 0; iter < 25; ++iter) {
        AdmissibleTransform a, b;
        int uc = coeff(rng);
        a.u = QRatFunc(C(uc == 0 ? 1 : uc));
        a.r = QRatFunc(rat(coeff(rng)) * T);
        a.s = QRatFunc(C(coeff(rng)));
        a.w = QRatFunc(rat(coeff(rng)) * T);
        b.u = QRatFunc(T);
        b.r = QRatFunc(C(coeff(rng)));
        b.s = QRatFunc(rat(coeff(rng)) * T);
        b.w = QRatFunc(C(coeff(rng)));
        WModel lhs = apply_transform(apply_transform(m, a), b);
        WModel rhs = apply_transform(m, AdmissibleTransform::compose(a, b));
        CHECK(lhs.a1 == rhs.a1);
        CHECK(lhs.a2 == rhs.a2);
        CHECK(lhs.a3 == rhs.a3);
        CHECK(lhs.a4 == rhs.a4);
        CHECK(lhs.a6 == rhs.a6);
        WModel back = apply_transform(apply_transform(m, a), a.inverse());
        CHECK(back.a4 == m.a4);
        CHECK(back.a6 == m.a6);
    }
}

TEST_CASE("minimalize_at") {
    Place at0 = Place::of_root(rat(0));

    // y^2 = x^3 + t^4 x + t^6 at t = 0: one division
    WModel big = make_model(QPoly(), QPoly(), QPoly(), tpow(4), tpow(6));
    int c = 0;
    WModel small = minimalize_at(big, at0, &c);
    CHECK(c == 1);
    CHECK(small.a4 == QRatFunc(C(1)));
    CHECK(small.a6 == QRatFunc(C(1)));

    // y^2 = x^3 + t^2 x + t^3 is already minimal at 0
    WModel ok = make_model(QPoly(), QPoly(), QPoly(), tpow(2), tpow(3));
    c = -1;
    WModel same = minimalize_at(ok, at0, &c);
    CHECK(c == 0);
    CHECK(same.a4 == ok.a4);

    // pullback example: y^2 + t^2 xy = x^3 - 36 t^6 x - t^10 at 0
    WModel pb = make_model(tpow(2), QPoly(), QPoly(), rat(-36) * tpow(6), -tpow(10));
    c = 0;
    WModel min = minimalize_at(pb, at0, &c);
    CHECK(c == 1);
    CHECK(min.a1 == QRatFunc(T));
    CHECK(min.a4 == QRatFunc(rat(-36) * tpow(2)));
    CHECK(min.a6 == QRatFunc(-tpow(4)));

    // idempotent
    int c2 = 0;
    WModel again = minimalize_at(min, at0, &c2);
    CHECK(c2 == 0);
    CHECK(again.a6 == min.a6);
}

TEST_CASE("globally_minimal") {
    MinimalModel nf = globally_minimal(normal_form());
    CHECK(nf.chi == 1);
    CHECK(nf.model.a1 == normal_form().a1); // already minimal
    CHECK(nf.model.a6 == normal_form().a6);

    // Inose-style K3: y^2 = x^3 - 6 t^4 x + t^5(t^2 - 6t + 1), weight 2
    WModel inose = make_model(QPoly(), QPoly(), QPoly(), rat(-6) * tpow(4),
                              tpow(5) * (T * T - rat(6) * T + C(1)));
    MinimalModel k3 = globally_minimal(inose);
    CHECK(k3.chi == 2);

    WModel consts = make_model(QPoly(), QPoly(), QPoly(), QPoly(), C(1));
    CHECK_THROWS_WITH_AS(globally_minimal(consts), "surface has no singular fibre over P^1",
                         Error);
}

TEST_CASE("chart at infinity") {
    MinimalModel nf = globally_minimal(normal_form());
    WModel inf = chart_at_infinity(nf);
    // Delta' = s (1 - 1728 s)^9
    QPoly expect = T * poly_pow(C(1) - rat(1728) * T, 9);
    CHECK(discriminant(inf) == expect);

    // y^2 = x^3 + tx (n=1) -> y^2 = x^3 + s^3 x
    MinimalModel m = globally_minimal(make_model(QPoly(), QPoly(), QPoly(), T, QPoly()));
    WModel minf = chart_at_infinity(m);
    CHECK(minf.a4 == QRatFunc(tpow(3)));

    // constants stay constants
    WModel cc = make_model(QPoly(), QPoly(), QPoly(), T, C(1));
    MinimalModel mc = globally_minimal(cc);
    WModel infc = chart_at_infinity(mc);
    CHECK(weight_of(infc) <= 1);
}

TEST_CASE("quadratic twist") {
    // d = 1: isomorphic model (same j, same Delta class)
    WModel m = make_model(QPoly(), QPoly(), QPoly(), C(1), C(1));
    TwistResult t1 = quadratic_twist(m, C(1));
    CHECK(j_invariant(t1.model) == j_invariant(m));

    // twisting with a square part produces a warning
    TwistResult t2 = quadratic_twist(m, tpow(2) * (T - C(1)));
    CHECK(!t2.warnings.empty());
    CHECK(j_invariant(t2.model) == j_invariant(m));

    CHECK_THROWS_AS(quadratic_twist(m, QPoly()), Error);
}

TEST_CASE("base change basics") {
    WModel m = normal_form();
    // identity map: same surface
    MinimalModel same = base_change(m, QRatFunc(T));
    CHECK(discriminant(same.model) == discriminant(m));
    CHECK_THROWS_AS(base_change(m, QRatFunc(C(7))), Error);

    // monomial maps multiply valuations at 0 by d before minimalisation
    WModel e = make_model(QPoly(), QPoly(), QPoly(), T, QPoly());
    QPoly d0 = discriminant(e);
    MinimalModel pulled = base_change(e, QRatFunc(tpow(2)));
    long v0 = valuation(QRatFunc(discriminant(pulled.model)), Place::of_root(rat(0)));
    long v0_orig = valuation(QRatFunc(d0), Place::of_root(rat(0)));
    CHECK((2 * v0_orig - v0) % 12 == 0); // equal up to the minimalisation steps
}
