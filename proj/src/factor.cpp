#include "ellsurf/factor.hpp"

#include <cstdint>
#include <map>
#include <numeric>

namespace ellsurf {

namespace {

// ---------------------------------------------------------------------------
// Z[x] helpers on plain coefficient vectors (index = degree, trimmed).

using ZPoly = std::vector<Int>;

ZPoly to_primitive_z(const QPoly& f) {
    Int den = 1;
    for (const Rat& c : f.coeffs())
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), rat_den(c).get_mpz_t());
    ZPoly z;
    for (const Rat& c : f.coeffs()) z.push_back(rat_num(c * Rat(den)));
    Int cont = 0;
    for (const Int& c : z) mpz_gcd(cont.get_mpz_t(), cont.get_mpz_t(), c.get_mpz_t());
    if (sgn(z.empty() ? Int(0) : z.back()) < 0) cont = -cont;
    if (cont != 0)
        for (auto& c : z) c /= cont;
    return z;
}

void ztrim(ZPoly& f) {
    while (!f.empty() && sgn(f.back()) == 0) f.pop_back();
}

int zdeg(const ZPoly& f) { return (int)f.size() - 1; }

ZPoly zmul(const ZPoly& f, const ZPoly& g) {
    if (f.empty() || g.empty()) return {};
    ZPoly r(f.size() + g.size() - 1, Int(0));
    for (size_t i = 0; i < f.size(); ++i)
        for (size_t j = 0; j < g.size(); ++j) r[i + j] += f[i] * g[j];
    return r;
}

Int zcontent(const ZPoly& f) {
    Int g = 0;
    for (const Int& c : f) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;
}

// Exact division test: does g divide f in Z[x]? (g nonzero)
bool zdivides(const ZPoly& f, const ZPoly& g, ZPoly* quot = nullptr) {
    if (f.empty()) {
        if (quot) quot->clear();
        return true;
    }
    if (zdeg(f) < zdeg(g)) return false;
    ZPoly r = f;
    ZPoly q(zdeg(f) - zdeg(g) + 1, Int(0));
    while (!r.empty() && zdeg(r) >= zdeg(g)) {
        Int c = r.back();
        if (!mpz_divisible_p(c.get_mpz_t(), g.back().get_mpz_t())) return false;
        c /= g.back();
        int d = zdeg(r) - zdeg(g);
        q[d] = c;
        for (size_t i = 0; i < g.size(); ++i) r[i + d] -= c * g[i];
        ztrim(r);
    }
    if (!r.empty()) return false;
    if (quot) *quot = q;
    return true;
}

// ---------------------------------------------------------------------------
// F_p[x] arithmetic, p an odd word-sized prime.

using u64 = std::uint64_t;

struct Fp {
    u64 p;
    u64 add(u64 a, u64 b) const { u64 r = a + b; return r >= p ? r - p : r; }
    u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p - b; }
    u64 mul(u64 a, u64 b) const { return (u64)((unsigned __int128)a * b % p); }
    u64 pw(u64 a, u64 e) const {
        u64 r = 1;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    u64 inv(u64 a) const { return pw(a % p, p - 2); }
};

using PPoly = std::vector<u64>;

void ptrim(PPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}
int pdeg(const PPoly& f) { return (int)f.size() - 1; }

PPoly pmul(const Fp& F, const PPoly& a, const PPoly& b) {
    if (a.empty() || b.empty()) return {};
    PPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
    }
    ptrim(r);
    return r;
}

void pdivrem(const Fp& F, PPoly a, const PPoly& b, PPoly& q, PPoly& r) {
    q.assign(std::max<int>(0, pdeg(a) - pdeg(b) + 1), 0);
    u64 binv = F.inv(b.back());
    while (pdeg(a) >= pdeg(b) && !a.empty()) {
        u64 c = F.mul(a.back(), binv);
        int d = pdeg(a) - pdeg(b);
        q[d] = c;
        for (size_t i = 0; i < b.size(); ++i) a[i + d] = F.sub(a[i + d], F.mul(c, b[i]));
        ptrim(a);
    }
    r = a;
}

PPoly pmod(const Fp& F, const PPoly& a, const PPoly& b) {
    PPoly q, r;
    pdivrem(F, a, b, q, r);
    return r;
}

PPoly pgcd(const Fp& F, PPoly a, PPoly b) {
    while (!b.empty()) {
        PPoly r = pmod(F, a, b);
        a = b;
        b = r;
    }
    if (!a.empty() && a.back() != 1) {
        u64 inv = F.inv(a.back());
        for (auto& c : a) c = F.mul(c, inv);
    }
    return a;
}

PPoly ppowmod(const Fp& F, PPoly base, Int e, const PPoly& m) {
    PPoly r{1};
    base = pmod(F, base, m);
    while (sgn(e) > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = pmod(F, pmul(F, r, base), m);
        base = pmod(F, pmul(F, base, base), m);
        e >>= 1;
    }
    return r;
}

PPoly pderiv(const Fp& F, const PPoly& f) {
    PPoly r;
    for (size_t i = 1; i < f.size(); ++i) r.push_back(F.mul(f[i], i % F.p));
    ptrim(r);
    return r;
}

// Distinct-degree + equal-degree (Cantor-Zassenhaus) factorisation of a
// squarefree monic f in F_p[x], p odd.
void pfactor_squarefree(const Fp& F, const PPoly& f, std::vector<PPoly>& out, u64& seed) {
    struct Item { PPoly f; int d; };
    std::vector<Item> stack;
    // distinct-degree split
    {
        PPoly h{0, 1}; // x
        PPoly rest = f;
        int d = 0;
        while (pdeg(rest) > 0) {
            ++d;
            if (2 * d > pdeg(rest)) {
                stack.push_back({rest, pdeg(rest)});
                break;
            }
            h = ppowmod(F, h, Int((unsigned long)F.p), rest);
            PPoly hx = h;
            if (hx.size() < 2) hx.resize(2, 0);
            hx[1] = F.sub(hx[1], 1); // h - x
            ptrim(hx);
            PPoly g = pgcd(F, rest, hx);
            if (pdeg(g) > 0) {
                stack.push_back({g, d});
                PPoly q, r;
                pdivrem(F, rest, g, q, r);
                rest = q;
                h = pmod(F, h, rest);
            }
        }
    }
    // equal-degree split
    while (!stack.empty()) {
        Item it = stack.back();
        stack.pop_back();
        if (pdeg(it.f) == it.d) {
            out.push_back(it.f);
            continue;
        }
        Int pd;
        mpz_ui_pow_ui(pd.get_mpz_t(), (unsigned long)F.p, (unsigned long)it.d);
        Int e = (pd - 1) / 2;
        for (;;) {
            // pseudo-random trial polynomial of degree < deg f
            PPoly r(pdeg(it.f), 0);
            for (auto& c : r) {
                seed = seed * 6364136223846793005ULL + 1442695040888963407ULL;
                c = (seed >> 16) % F.p;
            }
            ptrim(r);
            if (r.empty()) continue;
            PPoly g = ppowmod(F, r, e, it.f);
            if (g.empty()) continue;
            g[0] = F.sub(g[0], 1);
            ptrim(g);
            PPoly h = pgcd(F, it.f, g);
            if (pdeg(h) > 0 && pdeg(h) < pdeg(it.f)) {
                PPoly q, rem;
                pdivrem(F, it.f, h, q, rem);
                stack.push_back({h, it.d});
                stack.push_back({q, it.d});
                break;
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Hensel lifting of a modular factorisation (binary tree, quadratic steps).

Int mods(const Int& a, const Int& m) { // symmetric representative
    Int r = a % m;
    if (sgn(r) < 0) r += m;
    if (2 * r > m) r -= m;
    return r;
}

ZPoly zmod(const ZPoly& f, const Int& m) {
    ZPoly r = f;
    for (auto& c : r) c = mods(c, m);
    ztrim(r);
    return r;
}

ZPoly zadd(const ZPoly& a, const ZPoly& b) {
    ZPoly r(std::max(a.size(), b.size()), Int(0));
    for (size_t i = 0; i < r.size(); ++i) {
        if (i < a.size()) r[i] += a[i];
        if (i < b.size()) r[i] += b[i];
    }
    ztrim(r);
    return r;
}

ZPoly zsub(const ZPoly& a, const ZPoly& b) {
    ZPoly r(std::max(a.size(), b.size()), Int(0));
    for (size_t i = 0; i < r.size(); ++i) {
        if (i < a.size()) r[i] += a[i];
        if (i < b.size()) r[i] -= b[i];
    }
    ztrim(r);
    return r;
}

// quotient/remainder of a by monic b, coefficients mod m
void zdivrem_monic_mod(const ZPoly& a, const ZPoly& b, const Int& m, ZPoly& q, ZPoly& r) {
    r = zmod(a, m);
    q.clear();
    if (zdeg(r) >= zdeg(b)) q.assign(zdeg(r) - zdeg(b) + 1, Int(0));
    while (zdeg(r) >= zdeg(b)) {
        Int c = r.back();
        int d = zdeg(r) - zdeg(b);
        q[d] = c;
        for (size_t i = 0; i < b.size(); ++i) r[i + d] = mods(r[i + d] - c * b[i], m);
        ztrim(r);
    }
}

// One quadratic Hensel step: from f = g*h (mod m), s*g + t*h = 1 (mod m)
// with h monic, to the same data mod m^2 (von zur Gathen & Gerhard 15.10).
void hensel_step(const ZPoly& f, ZPoly& g, ZPoly& h, ZPoly& s, ZPoly& t, const Int& m) {
    Int m2 = m * m;
    ZPoly e = zmod(zsub(f, zmul(g, h)), m2);
    ZPoly q, r;
    zdivrem_monic_mod(zmul(s, e), h, m2, q, r);
    ZPoly gg = zmod(zadd(zadd(g, zmul(t, e)), zmul(q, g)), m2);
    ZPoly hh = zmod(zadd(h, r), m2);
    ZPoly b = zmod(zsub(zadd(zmul(s, gg), zmul(t, hh)), ZPoly{Int(1)}), m2);
    ZPoly c, d;
    zdivrem_monic_mod(zmul(s, b), hh, m2, c, d);
    ZPoly ss = zmod(zsub(s, d), m2);
    ZPoly tt = zmod(zsub(zsub(t, zmul(t, b)), zmul(c, gg)), m2);
    g = gg; h = hh; s = ss; t = tt;
}

ZPoly from_ppoly(const PPoly& f) {
    ZPoly r;
    for (u64 c : f) r.push_back(Int((unsigned long)c));
    ztrim(r);
    return r;
}

// Lift the factorisation f = lc * prod(fac_i) (mod p) to mod >= bound.
// f primitive in Z[x], fac_i monic mod p. Recursive binary split.
void hensel_tree(const ZPoly& f, const std::vector<ZPoly>& facs, const Fp& F,
                 const Int& bound, std::vector<ZPoly>& lifted) {
    if (facs.size() == 1) {
        lifted.push_back(facs[0]); // will be recombined against f directly
        return;
    }
    size_t half = facs.size() / 2;
    // g = lc(f) * prod first half, h = prod second half (monic)
    Int p((unsigned long)F.p);
    ZPoly g{mods(f.back(), p)};
    for (size_t i = 0; i < half; ++i) g = zmod(zmul(g, facs[i]), p);
    ZPoly h{Int(1)};
    for (size_t i = half; i < facs.size(); ++i) h = zmod(zmul(h, facs[i]), p);

    // Bezout mod p via F_p arithmetic
    auto to_pp = [&](const ZPoly& a) {
        PPoly r;
        for (const Int& c : a) {
            Int cc = c % p;
            if (sgn(cc) < 0) cc += p;
            r.push_back(cc.get_ui());
        }
        ptrim(r);
        return r;
    };
    PPoly gp = to_pp(g), hp = to_pp(h);
    // extended euclid in F_p[x]
    auto psub_into = [&](PPoly a, const PPoly& b) {
        a.resize(std::max(a.size(), b.size()), 0);
        for (size_t i = 0; i < b.size(); ++i) a[i] = F.sub(a[i], b[i]);
        ptrim(a);
        return a;
    };
    PPoly r0 = gp, r1 = hp, s0{1}, s1{}, t0{}, t1{1};
    while (!r1.empty()) {
        PPoly q, r;
        pdivrem(F, r0, r1, q, r);
        PPoly s2 = psub_into(s0, pmul(F, q, s1));
        PPoly t2 = psub_into(t0, pmul(F, q, t1));
        r0 = r1; r1 = r;
        s0 = s1; s1 = s2;
        t0 = t1; t1 = t2;
    }
    // r0 = gcd (a unit); normalise so s*g + t*h = 1 mod p
    u64 inv = F.inv(r0.empty() ? 1 : r0[0]);
    for (auto& c : s0) c = F.mul(c, inv);
    for (auto& c : t0) c = F.mul(c, inv);
    ZPoly s = from_ppoly(s0), t = from_ppoly(t0);

    ZPoly G = g, H = h;
    Int m = p;
    while (m < bound) {
        hensel_step(f, G, H, s, t, m);
        m = m * m;
    }
    // recurse: G factors into first half (with lc), H into second half
    std::vector<ZPoly> left(facs.begin(), facs.begin() + half);
    std::vector<ZPoly> right(facs.begin() + half, facs.end());
    if (left.size() == 1) lifted.push_back(G); // note: G = lc*g1 mod m, fixed in recombination
    else hensel_tree(G, left, F, bound, lifted);
    if (right.size() == 1) lifted.push_back(H);
    else hensel_tree(H, right, F, bound, lifted);
}

// ---------------------------------------------------------------------------

QPoly to_qpoly(const ZPoly& f) {
    std::vector<Rat> c;
    c.reserve(f.size());
    for (const Int& x : f) c.push_back(Rat(x));
    return QPoly(std::move(c));
}

// factor a primitive squarefree polynomial in Z[x], deg >= 1
std::vector<QPoly> zassenhaus(ZPoly f) {
    std::vector<QPoly> out;
    if (zdeg(f) == 1) {
        out.push_back(to_qpoly(f).monic_scaled());
        return out;
    }
    static const unsigned long primes[] = {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43,
                                           47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101,
                                           103, 107, 109, 113, 127, 131, 137, 139, 149, 151};
    Fp F{0};
    PPoly fp;
    for (unsigned long pr : primes) {
        F.p = pr;
        if (mpz_divisible_ui_p(f.back().get_mpz_t(), pr)) continue;
        fp.clear();
        Int P((unsigned long)pr);
        for (const Int& c : f) {
            Int cc = c % P;
            if (sgn(cc) < 0) cc += P;
            fp.push_back(cc.get_ui());
        }
        ptrim(fp);
        if (pdeg(pgcd(F, fp, pderiv(F, fp))) == 0) break;
        F.p = 0;
    }
    check(F.p != 0, "FactorNoPrime", "no suitable small prime for factorisation");

    // monic copy mod p
    u64 lcinv = F.inv(fp.back());
    PPoly fmonic = fp;
    for (auto& c : fmonic) c = F.mul(c, lcinv);
    std::vector<PPoly> pfacs;
    u64 seed = 0x9e3779b97f4a7c15ULL ^ (u64)F.p;
    pfactor_squarefree(F, fmonic, pfacs, seed);
    if (pfacs.size() == 1) {
        out.push_back(to_qpoly(f).monic_scaled());
        return out;
    }
    std::sort(pfacs.begin(), pfacs.end(), [](const PPoly& a, const PPoly& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });

    // Landau-Mignotte style bound: |factor coeffs| <= 2^n * ||f||_2, times lc
    Int norm2 = 0;
    for (const Int& c : f) norm2 += c * c;
    Int bound = (int_sqrt(norm2) + 1) * abs(f.back());
    bound <<= (unsigned)(zdeg(f) + 2);

    std::vector<ZPoly> lifted;
    std::vector<ZPoly> zfacs;
    for (auto& pf : pfacs) zfacs.push_back(from_ppoly(pf));
    hensel_tree(f, zfacs, F, 2 * bound, lifted);
    // Note: entries of `lifted` for non-leaf splits carry lc factors; make all
    // of them monic mod m by multiplying with inverse of their lc mod m.
    // Simpler: re-reduce each against f by monicising mod m.
    Int mod((unsigned long)F.p);
    while (mod < 2 * bound) mod = mod * mod;
    for (auto& g : lifted) {
        g = zmod(g, mod);
        Int lc = g.back() % mod;
        if (sgn(lc) < 0) lc += mod;
        if (lc != 1) {
            Int inv;
            mpz_invert(inv.get_mpz_t(), lc.get_mpz_t(), mod.get_mpz_t());
            for (auto& c : g) c = mods(c * inv, mod);
        }
    }

    // subset recombination
    std::vector<int> alive(lifted.size());
    std::iota(alive.begin(), alive.end(), 0);
    ZPoly rest = f;
    auto try_subset = [&](const std::vector<int>& subset) -> bool {
        ZPoly g{mods(rest.back(), mod)};
        for (int i : subset) g = zmod(zmul(g, lifted[i]), mod);
        Int cont = zcontent(g);
        if (sgn(cont) != 0)
            for (auto& c : g) c /= cont;
        ZPoly quot;
        if (zdivides(rest, g, &quot)) {
            out.push_back(to_qpoly(g).monic_scaled());
            rest = quot;
            std::vector<int> keep;
            for (int i : alive)
                if (std::find(subset.begin(), subset.end(), i) == subset.end()) keep.push_back(i);
            alive = keep;
            return true;
        }
        return false;
    };

    size_t card = 1;
    while (2 * card <= alive.size()) {
        bool progressed = false;
        std::vector<int> idx(card);
        // iterate subsets of `alive` of size `card`
        std::vector<int> comb(card);
        std::iota(comb.begin(), comb.end(), 0);
        for (;;) {
            std::vector<int> subset;
            for (int c : comb) subset.push_back(alive[c]);
            if (try_subset(subset)) {
                progressed = true;
                break; // restart at same cardinality with updated `alive`
            }
            int i = (int)card - 1;
            while (i >= 0 && comb[i] == (int)alive.size() - (int)card + i) --i;
            if (i < 0) break;
            ++comb[i];
            for (size_t j = i + 1; j < card; ++j) comb[j] = comb[j - 1] + 1;
        }
        if (!progressed) ++card;
    }
    if (zdeg(rest) > 0) out.push_back(to_qpoly(rest).monic_scaled());
    return out;
}

} // namespace

QPoly qpoly_gcd(const QPoly& a, const QPoly& b) {
    if (a.zero()) return b.monic_scaled();
    if (b.zero()) return a.monic_scaled();
    ZPoly r0 = to_primitive_z(a), r1 = to_primitive_z(b);
    if (zdeg(r0) < zdeg(r1)) std::swap(r0, r1);
    while (!r1.empty()) {
        // pseudo-remainder of r0 by r1, content-stripped (primitive PRS)
        if (zdeg(r1) == 0) return QPoly(Rat(1));
        ZPoly r = r0;
        Int l = r1.back();
        while (!r.empty() && zdeg(r) >= zdeg(r1)) {
            Int c = r.back();
            int d = zdeg(r) - zdeg(r1);
            for (auto& x : r) x *= l;
            for (size_t i = 0; i < r1.size(); ++i) r[i + d] -= c * r1[i];
            ztrim(r);
        }
        Int cont = zcontent(r);
        if (cont != 0)
            for (auto& x : r) x /= cont;
        r0 = r1;
        r1 = r;
    }
    return to_qpoly(r0).monic_scaled();
}

Factorisation factorize(const QPoly& f) {
    check(!f.zero(), "ZeroPolynomial", "cannot factor the zero polynomial");
    Factorisation res;
    res.unit = f.lc();
    if (f.degree() == 0) return res;
    QPoly g = f.monic_scaled();

    // Yun's squarefree decomposition over Q
    std::vector<std::pair<QPoly, int>> sqfree; // (squarefree part, multiplicity)
    {
        QPoly d = g.derivative();
        QPoly a = QPoly::gcd(g, d);
        QPoly b = QPoly::div_exact(g, a);
        QPoly c = QPoly::div_exact(d, a);
        int mult = 1;
        while (b.degree() > 0) {
            QPoly cc = c - b.derivative();
            QPoly p = QPoly::gcd(b, cc);
            if (p.degree() > 0) sqfree.push_back({p, mult});
            b = QPoly::div_exact(b, p);
            c = QPoly::div_exact(cc, p);
            ++mult;
        }
    }

    for (auto& [part, mult] : sqfree) {
        // clear denominators -> primitive Z[x]
        Int den = 1;
        for (const Rat& c : part.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), rat_den(c).get_mpz_t());
        ZPoly zf;
        for (const Rat& c : part.coeffs()) {
            Rat v = c * Rat(den);
            zf.push_back(rat_num(v));
        }
        ztrim(zf);
        Int cont = zcontent(zf);
        if (sgn(zf.back()) < 0) cont = -cont;
        for (auto& c : zf) c /= cont;
        for (auto& irr : zassenhaus(zf)) res.factors.push_back({irr, mult});
    }
    auto coeff_less = [](const Rat& a, const Rat& b) {
        Rat aa = abs(a), ab = abs(b);
        if (aa != ab) return aa < ab;
        return a < b;
    };
    std::sort(res.factors.begin(), res.factors.end(), [&](const auto& x, const auto& y) {
        if (x.first.degree() != y.first.degree()) return x.first.degree() < y.first.degree();
        for (int i = x.first.degree(); i >= 0; --i) {
            if (x.first[i] != y.first[i]) return coeff_less(x.first[i], y.first[i]);
        }
        return x.second < y.second;
    });
    return res;
}

bool is_irreducible(const QPoly& f) {
    if (f.degree() <= 0) return false;
    auto fac = factorize(f);
    return fac.factors.size() == 1 && fac.factors[0].second == 1;
}

std::vector<Rat> rational_roots(const QPoly& f) {
    std::vector<Rat> roots;
    for (auto& [g, mult] : factorize(f).factors) {
        if (g.degree() == 1) {
            (void)mult;
            roots.push_back(-g[0]); // monic: x + c
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

} // namespace ellsurf
