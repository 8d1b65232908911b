#include "ellsurf/funcfield.hpp"

namespace ellsurf {

Place Place::finite(const QPoly& p) {
    check(p.degree() >= 1, "BadPlace", "a finite place needs a nonconstant polynomial");
    QPoly m = p.monic_scaled();
    check(is_irreducible(m), "BadPlace", "finite places must be irreducible over Q");
    Place v;
    v.p_ = m;
    return v;
}

bool operator<(const Place& a, const Place& b) {
    if (a.is_infinity() != b.is_infinity()) return b.is_infinity(); // finite first
    if (a.is_infinity()) return false;
    if (a.poly().degree() != b.poly().degree()) return a.poly().degree() < b.poly().degree();
    for (int i = a.poly().degree(); i >= 0; --i)
        if (a.poly()[i] != b.poly()[i]) return a.poly()[i] < b.poly()[i];
    return false;
}

long val_poly(const QPoly& f, const QPoly& p) {
    if (f.zero()) return VAL_INF;
    long v = 0;
    QPoly g = f;
    for (;;) {
        QPoly q, r;
        QPoly::divrem(g, p, q, r);
        if (!r.zero()) return v;
        ++v;
        g = q;
    }
}

long valuation(const QRatFunc& f, const Place& v) {
    if (f.zero()) return VAL_INF;
    if (v.is_infinity()) return f.den().degree() - f.num().degree();
    return val_poly(f.num(), v.poly()) - val_poly(f.den(), v.poly());
}

void quad_parts(const RatFunc<Quad>& f, QRatFunc& a, QRatFunc& b, Int& D) {
    Poly<Quad> num = f.num(), den = f.den();
    D = 0;
    auto scan = [&D](const Poly<Quad>& p) {
        for (const Quad& c : p.coeffs())
            if (c.D != 0) D = c.D;
    };
    scan(num);
    scan(den);
    bool den_rational = true;
    for (const Quad& c : den.coeffs())
        if (!c.is_rational()) den_rational = false;
    if (!den_rational) {
        // multiply through by the conjugate to rationalise the denominator
        std::vector<Quad> cc;
        for (const Quad& c : den.coeffs()) cc.push_back(c.conj());
        Poly<Quad> conj(std::move(cc));
        num *= conj;
        den *= conj;
    }
    std::vector<Rat> na(num.degree() + 1, Rat(0)), nb(num.degree() + 1, Rat(0));
    for (int i = 0; i <= num.degree(); ++i) {
        na[i] = num[i].a;
        nb[i] = num[i].b;
    }
    std::vector<Rat> d(den.degree() + 1, Rat(0));
    for (int i = 0; i <= den.degree(); ++i) {
        check(is_zero(den[i].b), "InternalError", "denominator not rationalised");
        d[i] = den[i].a;
    }
    QPoly dp{QPoly(std::move(d))};
    a = QRatFunc(QPoly(std::move(na)), dp);
    b = QRatFunc(QPoly(std::move(nb)), dp);
}

long valuation(const RatFunc<Quad>& f, const Place& v) {
    QRatFunc a, b;
    Int D;
    quad_parts(f, a, b, D);
    return std::min(valuation(a, v), valuation(b, v));
}

ResidueElt ResidueElt::inverse() const {
    check(!zero(), "DivisionByZero", "inverse of zero residue");
    if (mod_.degree() < 1) return ResidueElt(QPoly(Rat(1) / rep_[0]), mod_);
    QPoly u, v;
    QPoly g = QPoly::ext_gcd(rep_, mod_, u, v);
    check(g.is_one(), "InternalError", "residue modulus not irreducible");
    return ResidueElt(u, mod_);
}

ResidueElt reduce_at(const QRatFunc& f, const Place& v) {
    if (v.is_infinity()) {
        if (f.zero()) return ResidueElt(QPoly(), QPoly());
        long w = valuation(f, v);
        check(w >= 0, "NegativeValuation", "pole at infinity");
        if (w > 0) return ResidueElt(QPoly(), QPoly());
        return ResidueElt(QPoly(f.num().lc() / f.den().lc()), QPoly());
    }
    const QPoly& p = v.poly();
    if (f.zero()) return ResidueElt(QPoly(), p);
    QPoly num = f.num(), den = f.den();
    long a = val_poly(num, p), b = val_poly(den, p);
    check(a - b >= 0, "NegativeValuation", "pole at the given place");
    for (long i = 0; i < b; ++i) {
        num = QPoly::div_exact(num, p);
        den = QPoly::div_exact(den, p);
    }
    // now den is prime to p; if a > b the image is zero anyway
    if (a > b) return ResidueElt(QPoly(), p);
    return ResidueElt(num, p) * ResidueElt(den, p).inverse();
}

bool residue_less(const ResidueElt& x, const ResidueElt& y) {
    const QPoly &a = x.rep(), &b = y.rep();
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (int i = a.degree(); i >= 0; --i)
        if (a[i] != b[i]) return a[i] < b[i];
    return false;
}

namespace {

// canonical sign: leading nonzero coefficient of the representative positive
ResidueElt canonical_sign(const ResidueElt& z) {
    if (z.zero()) return z;
    return sgn(z.rep().lc()) > 0 ? z : -z;
}

// Minimal polynomial over Q of an element given by its multiplication
// matrix action on a Q-basis; here: element xi of A = Q[t,X]/(p, X^2-e),
// basis t^i X^j. Returns the monic minimal polynomial.
QPoly min_poly(const std::vector<std::vector<Rat>>& mult, const std::vector<Rat>& one) {
    size_t n = one.size();
    // power basis vectors of xi: v_0 = 1, v_{k+1} = M v_k
    std::vector<std::vector<Rat>> pows;
    pows.push_back(one);
    for (size_t k = 0; k < n; ++k) {
        const auto& v = pows.back();
        std::vector<Rat> w(n, Rat(0));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) w[i] += mult[i][j] * v[j];
        pows.push_back(w);
        // test linear dependence of pows via gaussian elimination
        std::vector<std::vector<Rat>> m;
        for (const auto& pv : pows) m.push_back(pv);
        // eliminate: rows = power vectors
        size_t rows = m.size();
        std::vector<std::vector<Rat>> coeff(rows, std::vector<Rat>(rows, Rat(0)));
        for (size_t i = 0; i < rows; ++i) coeff[i][i] = 1;
        size_t rank = 0;
        std::vector<int> pivot_col;
        for (size_t r = 0; r < rows; ++r) {
            size_t pc = 0;
            while (pc < n && is_zero(m[r][pc])) ++pc;
            if (pc == n) {
                // row r is a dependence: min poly coefficients in coeff[r]
                std::vector<Rat> cs(coeff[r].begin(), coeff[r].begin() + r + 1);
                QPoly mu((std::vector<Rat>(cs)));
                return mu.monic_scaled();
            }
            // normalise and eliminate below
            Rat inv = Rat(1) / m[r][pc];
            for (size_t j = 0; j < n; ++j) m[r][j] *= inv;
            for (size_t j = 0; j <= r; ++j) coeff[r][j] *= inv;
            for (size_t rr = r + 1; rr < rows; ++rr) {
                Rat c = m[rr][pc];
                if (is_zero(c)) continue;
                for (size_t j = 0; j < n; ++j) m[rr][j] -= c * m[r][j];
                for (size_t j = 0; j <= r; ++j) coeff[rr][j] -= c * coeff[r][j];
            }
            ++rank;
            pivot_col.push_back((int)pc);
        }
    }
    fail("InternalError", "minimal polynomial search failed");
}

} // namespace

std::optional<ResidueElt> residue_sqrt(const ResidueElt& e) {
    const QPoly& mod = e.modulus();
    if (e.zero()) return ResidueElt(QPoly(), mod);
    // rational residue field (deg <= 1 place or infinity)
    if (mod.degree() <= 1) {
        Rat c = e.rep()[0];
        auto r = rat_sqrt(c);
        if (!r) return std::nullopt;
        return canonical_sign(ResidueElt(QPoly(*r), mod));
    }
    int n = mod.degree();
    int N = 2 * n; // dim of A = kappa[X]/(X^2-e) over Q, basis t^i X^j
    auto idx = [&](int i, int j) { return j * n + i; };
    // multiplication in A: by xi = X + c*t for increasing c until primitive
    for (long cc = 0;; ++cc) {
        Rat c = rat(cc);
        std::vector<std::vector<Rat>> M(N, std::vector<Rat>(N, Rat(0)));
        // action on basis element t^i X^j: xi * t^i X^j = t^i X^{j+1} + c t^{i+1} X^j
        // with X^2 -> e(t), t^n -> reduce mod p
        auto add_poly = [&](std::vector<Rat>& col, const QPoly& q, int j, const Rat& scale) {
            QPoly r = q % mod;
            for (int i = 0; i <= r.degree(); ++i) col[idx(i, j)] += scale * r[i];
        };
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < 2; ++j) {
                std::vector<Rat> col(N, Rat(0));
                QPoly ti = QPoly::monomial(Rat(1), i);
                if (j == 0) {
                    add_poly(col, ti, 1, Rat(1)); // X * t^i
                } else {
                    add_poly(col, ti * e.rep(), 0, Rat(1)); // X^2 t^i = e t^i
                }
                add_poly(col, ti * QPoly::var(), j, c); // c t^{i+1} X^j
                for (int r = 0; r < N; ++r) M[r][idx(i, j)] = col[r];
            }
        }
        std::vector<Rat> one(N, Rat(0));
        one[idx(0, 0)] = 1;
        QPoly mu = min_poly(M, one);
        if (mu.degree() < N) {
            if (cc > 4 * N) fail("InternalError", "no primitive element found");
            continue;
        }
        auto fac = factorize(mu);
        if (fac.factors.size() == 1 && fac.factors[0].second == 1) return std::nullopt; // field
        // evaluate each factor at xi inside kappa[X]/(X^2-e): elements (u, w) = u + w X
        struct AElt {
            ResidueElt u, w;
        };
        ResidueElt ebar = e;
        auto amul = [&](const AElt& x, const AElt& y) {
            return AElt{x.u * y.u + x.w * y.w * ebar, x.u * y.w + x.w * y.u};
        };
        for (auto& [g, mult] : fac.factors) {
            (void)mult;
            AElt xi{ResidueElt(QPoly::var() * QPoly(c), mod), ResidueElt(QPoly(Rat(1)), mod)};
            AElt acc{ResidueElt(QPoly(g[g.degree()]), mod), ResidueElt(QPoly(), mod)};
            for (int i = g.degree() - 1; i >= 0; --i) {
                acc = amul(acc, xi);
                acc.u = acc.u + ResidueElt(QPoly(g[i]), mod);
            }
            if (!acc.w.zero()) {
                // zero divisor u + wX with (u+wX)(u-wX) = u^2 - w^2 e = 0
                ResidueElt nrm = acc.u * acc.u - acc.w * acc.w * ebar;
                if (nrm.zero()) {
                    ResidueElt root = acc.u * acc.w.inverse();
                    if ((root * root) == ebar) return canonical_sign(root);
                }
            }
        }
        return std::nullopt;
    }
}

SquareAnswer is_square_in_residue(const ResidueElt& e) {
    check(!e.zero(), "ZeroResidue", "square test expects a nonzero residue");
    // Splitness is a report flag only; above degree 2 the exact test gets
    // expensive (minimal polynomials of dimension 2 deg), so punt there.
    if (e.modulus().degree() > 2) return SquareAnswer::Undetermined;
    return residue_sqrt(e) ? SquareAnswer::Yes : SquareAnswer::No;
}

std::vector<ResidueElt> roots_with_known(const std::vector<ResidueElt>& monic_coeffs,
                                         const ResidueElt& known_root) {
    // monic_coeffs: c0..c_{d-1}, leading coefficient 1 implicit
    int d = (int)monic_coeffs.size();
    check(d >= 1 && d <= 3, "InternalError", "roots_with_known expects degree 1..3");
    const QPoly& mod = known_root.modulus();
    ResidueElt zero(QPoly(), mod), one(QPoly(Rat(1)), mod);
    std::vector<ResidueElt> roots{known_root};
    // synthetic division by (x - known_root); quotient is monic of degree d-1
    std::vector<ResidueElt> q(std::max(0, d - 1), zero);
    for (int i = d - 1; i >= 1; --i)
        q[i - 1] = (i == d - 1) ? monic_coeffs[i] + known_root
                                : monic_coeffs[i] + known_root * q[i];
    (void)one;
    if (d - 1 == 1) {
        roots.push_back(-q[0]);
    } else if (d - 1 == 2) {
        // x^2 + q1 x + q0
        ResidueElt disc = q[1] * q[1] - ResidueElt(QPoly(rat(4)), mod) * q[0];
        if (disc.zero()) {
            roots.push_back(-(q[1]) * ResidueElt(QPoly(rat(2)), mod).inverse());
        } else if (auto s = residue_sqrt(disc)) {
            ResidueElt half = ResidueElt(QPoly(rat(1, 2)), mod);
            roots.push_back((-q[1] + *s) * half);
            roots.push_back((-q[1] - *s) * half);
        }
    }
    // dedupe + deterministic order
    std::sort(roots.begin(), roots.end(), residue_less);
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

} // namespace ellsurf
