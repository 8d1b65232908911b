#include "ellsurf/mordell_weil.hpp"

#include <algorithm>

namespace ellsurf {

namespace {

KFunc lift(const QRatFunc& f) { return lift_quad(f); }

struct QuadModel {
    KFunc a1, a2, a3, a4, a6;
};

QuadModel lift_model(const WModel& m) {
    return {lift(m.a1), lift(m.a2), lift(m.a3), lift(m.a4), lift(m.a6)};
}

KFunc curve_defect(const QuadModel& M, const KFunc& x, const KFunc& y) {
    return y * y + M.a1 * x * y + M.a3 * y - (x * x * x + M.a2 * x * x + M.a4 * x + M.a6);
}

} // namespace

std::string ComponentId::str() const {
    switch (kind) {
        case Zero: return "zero";
        case Cyclic: return "cyclic:" + std::to_string(index);
        case NonZeroSimple: return "simple:" + std::to_string(index);
        case Near: return "near";
        case Far: return "far:" + std::to_string(index);
        case FarAny: return "far:" + std::to_string(index);
    }
    return "?";
}

void validate_on_curve(const WModel& m, const Section& P) {
    if (P.is_zero) return;
    QuadModel M = lift_model(m);
    check(curve_defect(M, P.x, P.y).zero(), "OffCurve",
          "section does not satisfy the Weierstrass equation");
}

Section negate(const WModel& m, const Section& P) {
    if (P.is_zero) return P;
    QuadModel M = lift_model(m);
    return Section::finite(P.x, -P.y - M.a1 * P.x - M.a3);
}

Section add(const WModel& m, const Section& P, const Section& Q) {
    if (P.is_zero) return Q;
    if (Q.is_zero) return P;
    QuadModel M = lift_model(m);
    const KFunc &x1 = P.x, &y1 = P.y, &x2 = Q.x, &y2 = Q.y;
    KFunc lambda;
    if (x1 == x2) {
        KFunc neg_y2 = -y2 - M.a1 * x2 - M.a3;
        if (y1 == neg_y2) return Section::zero();
        KFunc den = KFunc(2) * y1 + M.a1 * x1 + M.a3;
        lambda = (KFunc(3) * x1 * x1 + KFunc(2) * M.a2 * x1 + M.a4 - M.a1 * y1) / den;
    } else {
        lambda = (y2 - y1) / (x2 - x1);
    }
    KFunc nu = y1 - lambda * x1;
    KFunc x3 = lambda * lambda + M.a1 * lambda - M.a2 - x1 - x2;
    KFunc y3 = -(lambda + M.a1) * x3 - nu - M.a3;
    return Section::finite(x3, y3);
}

Section sub(const WModel& m, const Section& P, const Section& Q) {
    return add(m, P, negate(m, Q));
}

Section mul(const WModel& m, long k, const Section& P) {
    if (k < 0) return mul(m, -k, negate(m, P));
    Section acc = Section::zero(), base = P;
    while (k) {
        if (k & 1) acc = add(m, acc, base);
        base = add(m, base, base);
        k >>= 1;
    }
    return acc;
}

Section push_section(const AdmissibleTransform& T, const Section& P) {
    if (P.is_zero) return P;
    KFunc u = lift(T.u), r = lift(T.r), s = lift(T.s), w = lift(T.w);
    KFunc u2 = u * u;
    KFunc xr = P.x - r;
    return Section::finite(xr / u2, (P.y - s * xr - w) / (u2 * u));
}

Section section_at_infinity(const Section& P, int chi) {
    if (P.is_zero) return P;
    KFunc sv = KFunc::var();
    KFunc inv = KFunc(1) / sv;
    return Section::finite(P.x.compose(inv) * rf_pow(sv, 2 * chi),
                           P.y.compose(inv) * rf_pow(sv, 3 * chi));
}

// ---------------------------------------------------------------------------
// Local machinery: arithmetic in Q[t]/(p^N).

namespace {

struct LocalCtx {
    QPoly p;
    int N;
    QPoly pN;

    LocalCtx(const QPoly& p_, int N_) : p(p_), N(N_), pN(poly_pow(p_, (unsigned long)N_)) {}

    QPoly red(const QPoly& a) const { return a % pN; }

    QPoly inv(const QPoly& a) const {
        QPoly u, v;
        QPoly g = QPoly::ext_gcd(a % pN, pN, u, v);
        check(g.is_one(), "InternalError", "non-unit inverted in the local ring");
        return u % pN;
    }

    // image of f in Q[t]/(p^N); requires v_p(f) >= 0
    QPoly reduce_rf(const QRatFunc& f) const {
        if (f.zero()) return QPoly();
        QPoly num = f.num(), den = f.den();
        long a = val_poly(num, p), b = val_poly(den, p);
        check(a - b >= 0, "NegativeValuation", "pole where a regular value was needed");
        for (long i = 0; i < b; ++i) {
            num = QPoly::div_exact(num, p);
            den = QPoly::div_exact(den, p);
        }
        return red((num % pN) * inv(den));
    }

    long val(const QPoly& a) const {
        if (a.zero()) return N; // capped at the precision
        long v = 0;
        QPoly g = a;
        while (v < N) {
            QPoly q, r;
            QPoly::divrem(g, p, q, r);
            if (!r.zero()) break;
            ++v;
            g = q;
        }
        return v;
    }

    QPoly div_p(const QPoly& a, long k) const {
        QPoly g = a;
        for (long i = 0; i < k; ++i) g = QPoly::div_exact(g, p);
        return g;
    }

    ResidueElt res(const QPoly& a) const { return ResidueElt(a % p, p); }

    // Newton lift of a simple root of x^3 + A x + B from its residue r0.
    QPoly simple_root(const QPoly& A, const QPoly& B, const QPoly& r0) const {
        QPoly r = r0 % pN;
        int prec = 1;
        while (prec < N) {
            QPoly fr = red(r * r * r + A * r + B);
            QPoly fpr = red(rat(3) * r * r + A);
            r = red(r - fr * inv(fpr));
            prec *= 2;
        }
        check(val(red(r * r * r + A * r + B)) >= N, "InternalError", "Newton failed to converge");
        return r;
    }
};

// element of kappa(v) tensor Q(sqrt D)
struct QRes {
    ResidueElt u, w;
    Int D;
    bool rational() const { return w.zero(); }
};

struct QLocal {
    QPoly a, b; // a + b sqrt(D), mod p^N
    Int D;
};

QLocal reduce_quad(const LocalCtx& C, const KFunc& f) {
    QRatFunc fa, fb;
    Int D;
    quad_parts(f, fa, fb, D);
    return {C.reduce_rf(fa), C.reduce_rf(fb), D};
}

long qval(const LocalCtx& C, const QLocal& x) { return std::min(C.val(x.a), C.val(x.b)); }

QLocal qdiv_p(const LocalCtx& C, const QLocal& x, long k) {
    return {C.div_p(x.a, k), C.div_p(x.b, k), x.D};
}

QRes qres(const LocalCtx& C, const QLocal& x) { return {C.res(x.a), C.res(x.b), x.D}; }

struct ShortData {
    QRatFunc A, B; // y^2 = x^3 + A x + B with A = -27 c4, B = -54 c6
    KFunc xs, ys;
};

ShortData to_short(const WModel& m, const Section& P) {
    ShortData S;
    S.A = rat(-27) * m.c4();
    S.B = rat(-54) * m.c6();
    KFunc b2 = lift(m.b2()), a1 = lift(m.a1), a3 = lift(m.a3);
    S.xs = KFunc(36) * P.x + KFunc(3) * b2;
    S.ys = KFunc(216) * P.y + KFunc(108) * (a1 * P.x + a3);
    return S;
}

// +1 if rho is the designated square root of rho^2, -1 otherwise. rho lies in
// kappa(v) or on the sqrt(D) line (lexicographic tie-break there).
int branch_sign(const QRes& rho, const char* where) {
    if (rho.rational()) {
        check(!rho.u.zero(), "InternalError", std::string("zero branch value in ") + where);
        auto s = residue_sqrt(rho.u * rho.u);
        check(s.has_value(), "InternalError", std::string("designated root missing in ") + where);
        return rho.u == *s ? +1 : -1;
    }
    check(rho.u.zero(), "InternalError",
          std::string("branch value off the coordinate lines in ") + where);
    return sgn(rho.w.rep().lc()) > 0 ? +1 : -1;
}

QRes qres_div(const QRes& num, const QRes& den, const QPoly& p) {
    Int D = den.D != 0 ? den.D : num.D;
    if (den.rational()) {
        ResidueElt inv = den.u.inverse();
        return {num.u * inv, num.w * inv, D};
    }
    ResidueElt Dres = ResidueElt::from_rat(Rat(D), p);
    ResidueElt nrm = den.u * den.u - den.w * den.w * Dres;
    check(!nrm.zero(), "InternalError", "zero divisor met in a split residue algebra");
    ResidueElt iu = den.u * nrm.inverse(), iw = -(den.w) * nrm.inverse();
    return {num.u * iu + num.w * iw * Dres, num.u * iw + num.w * iu, D};
}

ComponentId identify_local(const WModel& m, const KodairaType& type, const Place& v,
                           const Section& P) {
    if (P.is_zero || type.smooth()) return {ComponentId::Zero, 0};
    check(!v.is_infinity(), "InternalError", "identify_local expects a finite-style place");
    const QPoly& p = v.poly();
    LocalCtx C(p, type.euler() + 8);

    ShortData S = to_short(m, P);
    if (valuation(S.xs, v) < 0) return {ComponentId::Zero, 0};

    using K = KodairaType;
    if (type.family == K::II || type.family == K::IIStar || (type.family == K::In && type.n <= 1))
        return {ComponentId::Zero, 0};

    QLocal x = reduce_quad(C, S.xs);
    QPoly A = C.reduce_rf(S.A), B = C.reduce_rf(S.B);

    if (type.family == K::In) {
        int n = type.n;
        // double root cbar = -3B/(2A) of the reduced cubic; simple root -2 cbar
        ResidueElt Ar = C.res(A), Br = C.res(B);
        ResidueElt c0 = -(ResidueElt::from_rat(rat(3), p)) * Br *
                        (ResidueElt::from_rat(rat(2), p) * Ar).inverse();
        QPoly r = C.simple_root(A, B, rat(-2) * c0.rep());
        // x^3 + Ax + B = (x - r)(x^2 + r x + (A + r^2))
        QPoly centre = C.red(rat(-1, 2) * r);
        QPoly d = C.red(centre * centre - (A + r * r)); // quarter-discriminant
        check(C.val(d) == n, "InternalError", "node depth mismatch");
        QLocal xi = {C.red(x.a - centre), x.b, x.D};
        long k = qval(C, xi);
        if (k == 0) return {ComponentId::Zero, 0};
        if (n % 2 == 0 && k >= n / 2) return {ComponentId::Cyclic, n / 2};
        check(2 * k < n, "InternalError", "impossible node depth");
        QLocal y = reduce_quad(C, S.ys);
        check(qval(C, y) == k, "InternalError", "node y-depth mismatch");
        QRes tau = qres_div(qres(C, qdiv_p(C, y, k)), qres(C, qdiv_p(C, xi, k)), p);
        int sign = branch_sign(tau, "I_n branch test");
        return {ComponentId::Cyclic, sign > 0 ? (int)k : n - (int)k};
    }

    if (type.family == K::III || type.family == K::IIIStar)
        return {ComponentId::NonZeroSimple, 1};

    if (type.family == K::IV || type.family == K::IVStar) {
        long e = type.family == K::IV ? 1 : 2;
        QLocal y = reduce_quad(C, S.ys);
        check(qval(C, y) == e, "InternalError", "IV-type section depth mismatch");
        QRes rho = qres(C, qdiv_p(C, y, e));
        int sign = branch_sign(rho, "IV branch test");
        return {ComponentId::NonZeroSimple, sign > 0 ? 1 : 2};
    }

    // I_n^*: scale to F(T) = T^3 + a T + b with a = A/p^2, b = B/p^3
    int n = type.n;
    QPoly a2 = C.div_p(C.reduce_rf(S.A), 2), b3 = C.div_p(C.reduce_rf(S.B), 3);
    QLocal T1 = qdiv_p(C, x, 1);
    QRes T1r = qres(C, T1);

    if (n == 0) {
        ResidueElt a = C.res(a2), b = C.res(b3);
        if (T1r.rational()) {
            ResidueElt t0 = T1r.u;
            check((t0 * t0 * t0 + a * t0 + b).zero(), "InternalError",
                  "I0* section misses the branch roots");
            auto roots = roots_with_known({b, a}, t0);
            for (size_t i = 0; i < roots.size(); ++i)
                if (roots[i] == t0) return {ComponentId::FarAny, (int)i + 1};
            fail("InternalError", "I0* root bookkeeping failed");
        }
        return {ComponentId::FarAny, sgn(T1r.w.rep().lc()) > 0 ? 2 : 3};
    }

    ResidueElt a = C.res(a2), b = C.res(b3);
    ResidueElt theta0 = -(ResidueElt::from_rat(rat(3), p)) * b *
                        (ResidueElt::from_rat(rat(2), p) * a).inverse();
    ResidueElt theta1 = ResidueElt::from_rat(rat(-2), p) * theta0;
    check(T1r.rational(), "InternalError", "I_n* reduction with a sqrt part");
    if (T1r.u == theta1) return {ComponentId::Near, 0};
    check(T1r.u == theta0, "InternalError", "I_n* section misses both roots");

    QPoly rr = C.simple_root(a2, b3, theta1.rep());
    QPoly centre = C.red(rat(-1, 2) * rr);
    QPoly d2 = C.red(centre * centre - (a2 + rr * rr));
    check(C.val(d2) == n, "InternalError", "I_n* far-chain depth mismatch");
    QLocal xi = {C.red(T1.a - centre), T1.b, T1.D};
    if (n % 2 == 0) {
        check(qval(C, xi) == n / 2, "InternalError", "even far-chain depth");
        QRes rho = qres(C, qdiv_p(C, xi, n / 2));
        int sign = branch_sign(rho, "I_n* far test (even)");
        return {ComponentId::Far, sign > 0 ? 1 : 2};
    }
    check(2 * qval(C, xi) > n, "InternalError", "odd far-chain depth");
    QLocal y = reduce_quad(C, S.ys);
    check(qval(C, y) == (n + 3) / 2, "InternalError", "odd far-chain y-depth");
    QRes sigma = qres(C, qdiv_p(C, y, (n + 3) / 2));
    int sign = branch_sign(sigma, "I_n* far test (odd)");
    return {ComponentId::Far, sign > 0 ? 1 : 2};
}

} // namespace

ComponentId identify_component(const SurfaceAnalysis& a, const Section& P, const Place& v) {
    if (P.is_zero) return {ComponentId::Zero, 0};
    validate_on_curve(a.minimal.model, P);
    const FibreData* f = a.fibre_at(v);
    if (!f) return {ComponentId::Zero, 0};
    if (v.is_infinity()) {
        Section Pinf = section_at_infinity(P, a.chi);
        return identify_local(a.chart_inf, f->type, place_s_zero(), Pinf);
    }
    return identify_local(a.minimal.model, f->type, v, P);
}

long contact_with_zero(const SurfaceAnalysis& a, const Section& P) {
    check(!P.is_zero, "ZeroSection", "contact_with_zero expects a finite section");
    validate_on_curve(a.minimal.model, P);
    long total = 0;
    auto account = [&total](const KFunc& x, const KFunc& y, const Place& v) {
        long vx = valuation(x, v);
        if (vx >= 0) return;
        long vy = valuation(y, v);
        check(vx % 2 == 0 && vy % 3 == 0 && vy / 3 == vx / 2, "MalformedPole",
              "pole orders violate the (-2k, -3k) shape");
        total += (-vx / 2) * v.degree();
    };
    QRatFunc xa, xb;
    Int D;
    quad_parts(P.x, xa, xb, D);
    QPoly den = xa.den();
    {
        QPoly g = QPoly::gcd(den, xb.den());
        den = QPoly::div_exact(den, g) * xb.den(); // lcm of the two denominators
    }
    if (den.degree() > 0)
        for (auto& [p, e] : factorize(den).factors) {
            (void)e;
            account(P.x, P.y, Place::finite(p));
        }
    Section Pinf = section_at_infinity(P, a.chi);
    account(Pinf.x, Pinf.y, Place::of_root(rat(0)));
    return total;
}

Rat table4_contr(const KodairaType& t, const ComponentId& c) { return table4_contr(t, c, c); }

Rat table4_contr(const KodairaType& t, const ComponentId& c1, const ComponentId& c2) {
    if (!c1.nonzero() || !c2.nonzero()) return Rat(0);
    using K = KodairaType;
    switch (t.family) {
        case K::In: {
            long n = t.n;
            long i = c1.index, j = c2.index;
            if (i > j) std::swap(i, j);
            Rat r(i * (n - j), n);
            r.canonicalize();
            return r;
        }
        case K::III: return rat(1, 2); // A1 entry of the A-series column
        case K::IV: return c1.index == c2.index ? rat(2, 3) : rat(1, 3);
        case K::IVStar: return c1.index == c2.index ? rat(4, 3) : rat(2, 3);
        case K::IIIStar: return rat(3, 2);
        case K::InStar: {
            long n = t.n;
            if (n == 0) return c1.index == c2.index ? Rat(1) : rat(1, 2);
            bool n1 = c1.kind == ComponentId::Near, n2 = c2.kind == ComponentId::Near;
            if (n1 && n2) return Rat(1);
            if (n1 || n2) return rat(1, 2);
            Rat quarter(n, 4);
            quarter.canonicalize();
            return (c1.index == c2.index ? Rat(1) : rat(1, 2)) + quarter;
        }
        default: return Rat(0);
    }
}

namespace {

std::vector<std::pair<Place, ComponentId>> all_components(const SurfaceAnalysis& a,
                                                          const Section& P) {
    std::vector<std::pair<Place, ComponentId>> out;
    for (const auto& f : a.fibres) out.push_back({f.place, identify_component(a, P, f.place)});
    return out;
}

} // namespace

HeightReport height(const SurfaceAnalysis& a, const Section& P) {
    check(!P.is_zero, "ZeroSection", "height expects a finite section");
    HeightReport R;
    R.contact_O = contact_with_zero(a, P);
    R.components = all_components(a, P);
    Rat h = rat(2 * a.chi) + rat(2) * Rat(R.contact_O);
    for (const auto& [v, c] : R.components) {
        const FibreData* f = a.fibre_at(v);
        Rat contr = table4_contr(f->type, c) * Rat(v.degree());
        if (!is_zero(contr)) R.contributions.push_back({v, contr});
        h -= contr;
    }
    R.height = h;
    return R;
}

Rat pairing(const SurfaceAnalysis& a, const Section& P, const Section& Q) {
    check(!P.is_zero && !Q.is_zero, "ZeroSection", "pairing expects finite sections");
    if (P.x == Q.x && P.y == Q.y) return height(a, P).height;
    Section diff = sub(a.minimal.model, P, Q);
    check(!diff.is_zero, "DistinctnessViolation",
          "sections coincide; the two-section contact path needs distinct inputs");
    long pq = contact_with_zero(a, diff); // P.Q via translation by -Q
    long pO = contact_with_zero(a, P), qO = contact_with_zero(a, Q);
    Rat val = rat(a.chi) + Rat(pO) + Rat(qO) - Rat(pq);
    for (const auto& f : a.fibres) {
        ComponentId cp = identify_component(a, P, f.place);
        ComponentId cq = identify_component(a, Q, f.place);
        val -= table4_contr(f.type, cp, cq) * Rat(f.place.degree());
    }
    return val;
}

std::vector<std::vector<Rat>> gram_matrix(const SurfaceAnalysis& a,
                                          const std::vector<Section>& sections) {
    size_t n = sections.size();
    std::vector<std::vector<Rat>> g(n, std::vector<Rat>(n, Rat(0)));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i; j < n; ++j) {
            Rat v = (i == j) ? height(a, sections[i]).height : pairing(a, sections[i], sections[j]);
            g[i][j] = v;
            g[j][i] = v;
        }
    return g;
}

bool is_torsion(const SurfaceAnalysis& a, const Section& P) {
    check(!P.is_zero, "ZeroSection", "predicates require a finite section");
    return is_zero(height(a, P).height);
}

bool narrow_member(const SurfaceAnalysis& a, const Section& P) {
    check(!P.is_zero, "ZeroSection", "predicates require a finite section");
    for (const auto& f : a.fibres)
        if (identify_component(a, P, f.place).nonzero()) return false;
    return true;
}

bool is_integral(const SurfaceAnalysis& a, const Section& P) {
    check(!P.is_zero, "ZeroSection", "predicates require a finite section");
    return contact_with_zero(a, P) == 0;
}

Rat ns_discriminant(const SurfaceAnalysis& a, const std::vector<std::vector<Rat>>& gram_free,
                    long torsion_order) {
    Lattice T = trivial_lattice(a);
    Int dT = det(T);
    size_t r = gram_free.size();
    Rat dM(1);
    {
        std::vector<std::vector<Rat>> m = gram_free;
        int sign = 1;
        for (size_t c = 0; c < r; ++c) {
            size_t piv = c;
            while (piv < r && is_zero(m[piv][c])) ++piv;
            check(piv < r, "SingularGram", "gram matrix is singular on the free part");
            if (piv != c) {
                std::swap(m[piv], m[c]);
                sign = -sign;
            }
            for (size_t i = c + 1; i < r; ++i) {
                Rat f = m[i][c] / m[c][c];
                for (size_t j = c; j < r; ++j) m[i][j] -= f * m[c][j];
            }
        }
        for (size_t i = 0; i < r; ++i) dM *= m[i][i];
        if (sign < 0) dM = -dM;
    }
    Rat out = Rat(dT) * dM / (Rat(torsion_order) * Rat(torsion_order));
    if (r % 2 == 1) out = -out;
    return out;
}

Rat height_from_data(int chi, long contact,
                     const std::vector<std::pair<KodairaType, ComponentId>>& comps) {
    Rat h = rat(2 * chi) + rat(2) * Rat(contact);
    for (const auto& [t, c] : comps) h -= table4_contr(t, c);
    return h;
}

Section base_change_section(const Section& P, const QRatFunc& phi,
                            const AdmissibleTransform& minimalising) {
    if (P.is_zero) return P;
    KFunc f = lift(phi);
    Section comp = Section::finite(P.x.compose(f), P.y.compose(f));
    return push_section(minimalising, comp);
}

std::vector<int> component_group_element(const KodairaType& t, const ComponentId& c) {
    auto inv = t.group_invariants();
    std::vector<int> e(inv.size(), 0);
    if (!c.nonzero()) return e;
    using K = KodairaType;
    switch (t.family) {
        case K::In:
            if (!inv.empty()) e[0] = ((c.index % inv[0]) + inv[0]) % inv[0];
            break;
        case K::III:
        case K::IIIStar: e[0] = 1; break;
        case K::IV:
        case K::IVStar: e[0] = c.index; break;
        case K::InStar:
            if (t.n % 2 == 0) {
                // invariants {2,2}: near = (1,1), far1 = (1,0), far2 = (0,1)
                if (c.kind == ComponentId::Near) e = {1, 1};
                else if (c.index == 1) e = {1, 0};
                else if (c.index == 2) e = {0, 1};
                else e = {1, 1}; // FarAny index 3 on I0* closes the group
            } else {
                if (c.kind == ComponentId::Near) e[0] = 2;
                else e[0] = (c.index == 1) ? 1 : 3;
            }
            break;
        default: break;
    }
    return e;
}

} // namespace ellsurf
