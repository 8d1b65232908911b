#include "ellsurf/weierstrass.hpp"

namespace ellsurf {

AdmissibleTransform AdmissibleTransform::compose(const AdmissibleTransform& a,
                                                 const AdmissibleTransform& b) {
    AdmissibleTransform T;
    T.u = a.u * b.u;
    T.r = a.r + a.u * a.u * b.r;
    T.s = a.s + a.u * b.s;
    T.w = a.w + a.u * a.u * a.s * b.r + a.u * a.u * a.u * b.w;
    return T;
}

AdmissibleTransform AdmissibleTransform::inverse() const {
    check(!u.zero(), "BadTransform", "admissible transform needs u != 0");
    AdmissibleTransform T;
    QRatFunc ui = u.inverse();
    QRatFunc ui2 = ui * ui;
    T.u = ui;
    T.r = -(r * ui2);
    T.s = -(s * ui);
    T.w = (r * s - w) * (ui2 * ui);
    return T;
}

WModel make_model(const QPoly& a1, const QPoly& a2, const QPoly& a3, const QPoly& a4,
                  const QPoly& a6, Chart chart) {
    WModel m;
    m.a1 = QRatFunc(a1);
    m.a2 = QRatFunc(a2);
    m.a3 = QRatFunc(a3);
    m.a4 = QRatFunc(a4);
    m.a6 = QRatFunc(a6);
    m.chart = chart;
    return m;
}

QPoly discriminant(const WModel& m) {
    QRatFunc d = m.disc();
    check(d.is_poly(), "NotIntegral", "discriminant of a non-integral model requested");
    return d.num();
}

QRatFunc j_invariant(const WModel& m) {
    QRatFunc d = m.disc();
    check(!d.zero(), "NotElliptic", "Delta = 0: the generic fibre is singular");
    QRatFunc c = m.c4();
    return c * c * c / d;
}

WModel apply_transform(const WModel& m, const AdmissibleTransform& T) {
    check(!T.u.zero(), "BadTransform", "admissible transform needs u != 0");
    const QRatFunc &u = T.u, &r = T.r, &s = T.s, &w = T.w;
    QRatFunc u2 = u * u, u3 = u2 * u, u4 = u2 * u2, u6 = u3 * u3;
    WModel n;
    n.chart = m.chart;
    n.a1 = (m.a1 + rat(2) * s) / u;
    n.a2 = (m.a2 - s * m.a1 + rat(3) * r - s * s) / u2;
    n.a3 = (m.a3 + r * m.a1 + rat(2) * w) / u3;
    n.a4 = (m.a4 - s * m.a3 + rat(2) * r * m.a2 - (w + r * s) * m.a1 + rat(3) * r * r -
            rat(2) * s * w) /
           u4;
    n.a6 = (m.a6 + r * m.a4 + r * r * m.a2 + r * r * r - w * m.a3 - w * w - r * w * m.a1) / u6;
    return n;
}

int weight_of(const WModel& m) {
    check(m.integral(), "NotIntegral", "weight needs an integral model");
    int n = 0;
    auto bump = [&n](const QRatFunc& a, int i) {
        int d = a.num().degree();
        if (d <= 0) return;
        n = std::max(n, (d + i - 1) / i);
    };
    bump(m.a1, 1);
    bump(m.a2, 2);
    bump(m.a3, 3);
    bump(m.a4, 4);
    bump(m.a6, 6);
    return n;
}

WModel make_integral(const WModel& m, AdmissibleTransform* used) {
    Int den = 1;
    QPoly pden(Rat(1));
    auto scan = [&](const QRatFunc& a) {
        if (a.zero()) return;
        Int c = 1;
        for (const Rat& x : a.num().coeffs())
            mpz_lcm(c.get_mpz_t(), c.get_mpz_t(), rat_den(x).get_mpz_t());
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_mpz_t());
        if (!a.is_poly()) {
            QPoly g = QPoly::gcd(pden, a.den());
            pden = QPoly::div_exact(pden, g) * a.den(); // lcm
        }
    };
    scan(m.a1);
    scan(m.a2);
    scan(m.a3);
    scan(m.a4);
    scan(m.a6);
    AdmissibleTransform T =
        AdmissibleTransform::scaling(QRatFunc(QPoly(Rat(1)), QPoly(Rat(den)) * pden));
    WModel n = apply_transform(m, T);
    // the lcm clears first-power denominators; iterate for higher powers
    while (!n.integral()) {
        AdmissibleTransform T2;
        n = make_integral(n, &T2);
        T = AdmissibleTransform::compose(T, T2);
    }
    if (used) *used = T;
    return n;
}

namespace {

bool minimal_at(const WModel& m, const Place& v) {
    long vd = valuation(m.disc(), v);
    if (vd < 12) return true;
    QRatFunc c4 = m.c4();
    if (c4.zero()) return false;
    return valuation(c4, v) < 4;
}

// short integral model with the same local data: y^2 = x^3 - 27 c4 x - 54 c6
WModel short_model_from(const WModel& m) {
    WModel s;
    s.chart = m.chart;
    s.a4 = rat(-27) * m.c4();
    s.a6 = rat(-54) * m.c6();
    return s;
}

// transform of m whose result is short_model_from(m):
// x = (x'' - 3 b2)/36, y = (y'' - 108(a1 x + a3))/216
AdmissibleTransform to_short_transform(const WModel& m) {
    AdmissibleTransform T;
    T.u = QRatFunc(QPoly(rat(1, 6)));
    T.r = -(m.b2() * rat(1, 12));
    T.s = -(m.a1 * rat(1, 2));
    T.w = (m.a1 * m.b2() * rat(1, 24)) - (m.a3 * rat(1, 2));
    return T;
}

} // namespace

WModel minimalize_at(const WModel& m, const Place& v, int* count, AdmissibleTransform* used) {
    check(m.integral(), "NotIntegral", "minimalize_at expects an integral model");
    check(!m.disc().zero(), "NotElliptic", "Delta = 0");
    check(!v.is_infinity(), "BadPlace",
          "minimalize_at handles finite places (use the chart at infinity)");
    WModel cur = m;
    AdmissibleTransform acc = AdmissibleTransform::identity();
    int c = 0;
    const QPoly& p = v.poly();
    while (!minimal_at(cur, v)) {
        bool plain = valuation(cur.a1, v) >= 1 && valuation(cur.a2, v) >= 2 &&
                     valuation(cur.a3, v) >= 3 && valuation(cur.a4, v) >= 4 &&
                     valuation(cur.a6, v) >= 6;
        AdmissibleTransform T;
        if (plain) {
            T = AdmissibleTransform::scaling(QRatFunc(p));
        } else {
            T = AdmissibleTransform::compose(to_short_transform(cur),
                                             AdmissibleTransform::scaling(QRatFunc(p)));
        }
        WModel next = apply_transform(cur, T);
        check(next.integral(), "InternalError", "minimalisation produced a non-integral model");
        cur = next;
        acc = AdmissibleTransform::compose(acc, T);
        ++c;
    }
    if (count) *count = c;
    if (used) *used = acc;
    return cur;
}

MinimalModel globally_minimal(const WModel& m0) {
    AdmissibleTransform acc = AdmissibleTransform::identity(), t;
    WModel cur = m0.integral() ? m0 : make_integral(m0, &acc);
    check(!cur.disc().zero(), "NotElliptic", "Delta = 0: not an elliptic surface");

    for (;;) {
        bool changed = false;
        QPoly delta = discriminant(cur);
        for (auto& [p, e] : factorize(delta).factors) {
            if (e < 12) continue;
            Place v = Place::finite(p);
            if (minimal_at(cur, v)) continue;
            int c = 0;
            cur = minimalize_at(cur, v, &c, &t);
            acc = AdmissibleTransform::compose(acc, t);
            changed = true;
        }
        int n = weight_of(cur);
        QPoly delta2 = discriminant(cur);
        long vd_inf = 12L * n - delta2.degree();
        bool c4_deep = cur.c4().zero() || 4L * n - cur.c4().num().degree() >= 4;
        if (vd_inf >= 12 && c4_deep) {
            AdmissibleTransform S = to_short_transform(cur);
            WModel shorter = apply_transform(cur, S);
            check(shorter.integral(), "InternalError", "infinity minimalisation failed");
            check(weight_of(shorter) < n, "InternalError", "weight did not drop at infinity");
            cur = shorter;
            acc = AdmissibleTransform::compose(acc, S);
            changed = true;
        }
        if (!changed) break;
    }

    MinimalModel mm;
    mm.model = cur;
    mm.chi = weight_of(cur);
    mm.from_input = acc;
    QPoly delta = discriminant(cur);
    bool any = delta.degree() > 0;
    if (!any) any = 12L * mm.chi - delta.degree() > 0;
    check(any, "NoSingularFibre", "surface has no singular fibre over P^1");
    return mm;
}

WModel chart_at_infinity(const MinimalModel& mm) {
    const WModel& m = mm.model;
    int n = mm.chi;
    auto flip = [&](const QRatFunc& a, int i) {
        check(a.is_poly(), "NotIntegral", "chart change needs polynomial coefficients");
        if (a.zero()) return QRatFunc();
        return QRatFunc(a.num().reversed(n * i));
    };
    WModel s;
    s.chart = Chart::AffineS;
    s.a1 = flip(m.a1, 1);
    s.a2 = flip(m.a2, 2);
    s.a3 = flip(m.a3, 3);
    s.a4 = flip(m.a4, 4);
    s.a6 = flip(m.a6, 6);
    return s;
}

TwistResult quadratic_twist(const WModel& m0, const QPoly& d0) {
    check(!d0.zero(), "NonSquarefreeTwist", "twist by zero is not defined");
    TwistResult res;
    QPoly d = d0.monic_scaled();
    QPoly g = (d.degree() > 0) ? QPoly::gcd(d, d.derivative()) : QPoly(Rat(1));
    if (g.degree() > 0) {
        res.warnings.push_back(
            "twist polynomial was not squarefree; its square part went into a coordinate change");
        QPoly sf(Rat(1));
        for (auto& [p, e] : factorize(d).factors)
            if (e % 2 == 1) sf *= p;
        d = sf;
    }
    Int s, f;
    Rat lc = d0.lc();
    squarefree_split(rat_num(lc) * rat_den(lc), s, f);
    if (s != 1 && res.warnings.empty())
        res.warnings.push_back("square content of the twist went into a coordinate change");
    d = Rat(f) * d;

    QRatFunc A2 = m0.b2() * rat(1, 4);
    QRatFunc A4 = m0.b4() * rat(1, 2);
    QRatFunc A6 = m0.b6() * rat(1, 4);
    QRatFunc dd{QPoly(d)};
    WModel tw;
    tw.chart = m0.chart;
    tw.a2 = dd * A2;
    tw.a4 = dd * dd * A4;
    tw.a6 = dd * dd * dd * A6;
    res.model = tw;
    return res;
}

MinimalModel base_change(const WModel& m, const QRatFunc& phi, AdmissibleTransform* post) {
    check(phi.num().degree() > 0 || phi.den().degree() > 0, "ConstantMap",
          "base change needs a nonconstant map");
    WModel n;
    n.chart = m.chart;
    auto sub = [&](const QRatFunc& a) { return a.compose(phi); };
    n.a1 = sub(m.a1);
    n.a2 = sub(m.a2);
    n.a3 = sub(m.a3);
    n.a4 = sub(m.a4);
    n.a6 = sub(m.a6);
    AdmissibleTransform clear;
    WModel ni = make_integral(n, &clear);
    MinimalModel mm = globally_minimal(ni);
    mm.from_input = AdmissibleTransform::compose(clear, mm.from_input);
    if (post) *post = mm.from_input;
    return mm;
}

} // namespace ellsurf
