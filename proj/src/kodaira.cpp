#include "ellsurf/kodaira.hpp"

#include <algorithm>
#include <map>

namespace ellsurf {

int KodairaType::components() const {
    switch (family) {
        case In: return n == 0 ? 1 : n;
        case II: return 1;
        case III: return 2;
        case IV: return 3;
        case InStar: return n + 5;
        case IVStar: return 7;
        case IIIStar: return 8;
        case IIStar: return 9;
    }
    return 1;
}

int KodairaType::euler() const {
    if (family == In) return n;
    return components() + 1;
}

std::vector<int> KodairaType::group_invariants() const {
    switch (family) {
        case In: return n >= 2 ? std::vector<int>{n} : std::vector<int>{};
        case II:
        case IIStar: return {};
        case III:
        case IIIStar: return {2};
        case IV:
        case IVStar: return {3};
        case InStar: return n % 2 == 0 ? std::vector<int>{2, 2} : std::vector<int>{4};
    }
    return {};
}

long KodairaType::group_order() const {
    long o = 1;
    for (int d : group_invariants()) o *= d;
    return o;
}

long KodairaType::root_det_abs() const {
    switch (family) {
        case In: return n >= 2 ? n : 1; // A_{n-1}
        case II: return 1;
        case III: return 2;  // A1
        case IV: return 3;   // A2
        case InStar: return 4; // D_{n+4}
        case IVStar: return 3; // E6
        case IIIStar: return 2; // E7
        case IIStar: return 1;  // E8
    }
    return 1;
}

std::string KodairaType::str() const {
    switch (family) {
        case In: return "I" + std::to_string(n);
        case InStar: return "I" + std::to_string(n) + "*";
        case II: return "II";
        case III: return "III";
        case IV: return "IV";
        case IVStar: return "IV*";
        case IIIStar: return "III*";
        case IIStar: return "II*";
    }
    return "?";
}

KodairaType KodairaType::parse(const std::string& s) {
    if (s == "II") return {II, 0};
    if (s == "III") return {III, 0};
    if (s == "IV") return {IV, 0};
    if (s == "II*") return {IIStar, 0};
    if (s == "III*") return {IIIStar, 0};
    if (s == "IV*") return {IVStar, 0};
    bool star = !s.empty() && s.back() == '*';
    std::string body = star ? s.substr(0, s.size() - 1) : s;
    if (!body.empty() && body[0] == 'I') body = body.substr(1);
    check(!body.empty() && body.find_first_not_of("0123456789") == std::string::npos, "ParseError",
          "bad Kodaira type '" + s + "'");
    int n = std::stoi(body);
    return star ? i_n_star(n) : i_n(n);
}

Place place_s_zero() { return Place::of_root(rat(0)); }

namespace {

std::string root_label(const KodairaType& t) {
    switch (t.family) {
        case KodairaType::In: return t.n >= 2 ? "A" + std::to_string(t.n - 1) : "";
        case KodairaType::II: return "";
        case KodairaType::III: return "A1";
        case KodairaType::IV: return "A2";
        case KodairaType::InStar: return "D" + std::to_string(t.n + 4);
        case KodairaType::IVStar: return "E6";
        case KodairaType::IIIStar: return "E7";
        case KodairaType::IIStar: return "E8";
    }
    return "";
}

long vval(const QRatFunc& f, const Place& v) { return valuation(f, v); }

} // namespace

FibreData classify_fibre(const WModel& m, const Place& v) {
    check(m.integral(), "NotIntegral", "classify_fibre expects an integral model");
    check(!v.is_infinity(), "BadPlace",
          "for the fibre at infinity classify the chart model at s = 0");
    QRatFunc c4 = m.c4(), c6 = m.c6(), dis = m.disc();
    check(!dis.zero(), "NotElliptic", "Delta = 0");

    long n = vval(dis, v);
    long a = c4.zero() ? VAL_INF : vval(c4, v); // = v(a4) of the short form
    long b = c6.zero() ? VAL_INF : vval(c6, v); // = v(a6) of the short form

    FibreData F;
    F.place = v;
    if (n == 0) {
        F.type = KodairaType::i_n(0);
        F.m_v = 1;
        F.e_v = 0;
        F.split = SplitFlag::NotApplicable;
        return F;
    }
    check(!(a >= 4 && b >= 6 && n >= 12), "NotMinimal", "model is not minimal at the place");

    KodairaType T;
    SplitFlag split = SplitFlag::NotApplicable;
    if (a == 0) {
        T = KodairaType::i_n((int)n);
        // Tangent cone of the node y^2 = d (x-c)^2 for the short form
        // x^3 + Ax + B with A = -27 c4, B = -54 c6: the double root is
        // c = -3B/(2A) and d = 3c = -9 c6/c4. Split iff d is a square.
        if (v.degree() > 2) {
            split = SplitFlag::Undetermined;
        } else {
            ResidueElt c4r = reduce_at(c4, v), c6r = reduce_at(c6, v);
            ResidueElt d = -(ResidueElt::from_rat(rat(9), c4r.modulus())) * c6r * c4r.inverse();
            check(!d.zero(), "InternalError", "degenerate tangent cone at a node");
            split = is_square_in_residue(d) == SquareAnswer::Yes ? SplitFlag::Split
                                                                 : SplitFlag::NonSplit;
        }
    } else if (b == 1) {
        T = KodairaType{KodairaType::II, 0};
    } else if (a == 1) {
        T = KodairaType{KodairaType::III, 0};
    } else if (b == 2) {
        T = KodairaType{KodairaType::IV, 0};
    } else if (n == 6) {
        T = KodairaType::i_n_star(0);
    } else if (a == 2 && b == 3) {
        T = KodairaType::i_n_star((int)n - 6);
    } else if (b == 4) {
        T = KodairaType{KodairaType::IVStar, 0};
    } else if (a == 3) {
        T = KodairaType{KodairaType::IIIStar, 0};
    } else if (b == 5) {
        T = KodairaType{KodairaType::IIStar, 0};
    } else {
        fail("NotMinimal", "vanishing orders match no minimal Kodaira pattern");
    }

    F.type = T;
    F.m_v = T.components();
    F.e_v = (int)n;
    check(F.e_v == T.euler(), "InternalError",
          "v(Delta) disagrees with the Euler number of type " + T.str());
    F.group = T.group_invariants();
    F.root = root_label(T);
    F.split = split;
    return F;
}

SurfaceAnalysis analyze(const WModel& m0) {
    SurfaceAnalysis A;
    A.minimal = globally_minimal(m0);
    const WModel& m = A.minimal.model;
    A.chart_inf = chart_at_infinity(A.minimal);
    A.chi = A.minimal.chi;

    QPoly delta = discriminant(m);
    auto fac = factorize(delta);
    for (auto& [p, e] : fac.factors) {
        (void)e;
        Place v = Place::finite(p);
        FibreData F = classify_fibre(m, v);
        if (F.type.smooth()) continue;
        A.fibres.push_back(F);
    }
    long v_inf = 12L * A.chi - delta.degree();
    if (v_inf > 0) {
        FibreData F = classify_fibre(A.chart_inf, place_s_zero());
        F.place = Place::infinity();
        A.fibres.push_back(F);
    }

    long e = 0, rank = 2, cond = 0;
    for (const auto& F : A.fibres) {
        long d = F.place.degree();
        e += (long)F.e_v * d;
        rank += (long)(F.m_v - 1) * d;
        cond += (F.type.multiplicative() ? 1 : 2) * d;
    }
    check(e == 12L * A.chi, "InternalError", "Euler number does not equal 12*chi");
    A.euler = (int)e;
    A.trivial_rank = (int)rank;
    A.conductor_degree = (int)cond;
    A.b2 = A.euler - 2;
    A.h11 = 10 * A.chi;
    A.pg = A.chi - 1;
    A.classification = A.chi == 1   ? SurfaceClass::Rational
                       : A.chi == 2 ? SurfaceClass::K3
                                    : SurfaceClass::HonestlyElliptic;
    QRatFunc j = j_invariant(m);
    A.isotrivial = j.num().degree() <= 0 && j.den().degree() <= 0;
    check(A.trivial_rank <= A.b2, "InternalError", "trivial lattice exceeds b2 (Igusa)");
    return A;
}

SzpiroCheck szpiro_check(const SurfaceAnalysis& a) {
    SzpiroCheck out;
    if (a.isotrivial) {
        out.skipped_isotrivial = true;
        return out;
    }
    out.lhs = 12L * a.chi;
    out.rhs = 6L * (a.conductor_degree - 2);
    out.holds = out.lhs <= out.rhs;
    return out;
}

bool isomorphism_test_semistable(const SurfaceAnalysis& a, const SurfaceAnalysis& b) {
    auto semistable = [](const SurfaceAnalysis& s) {
        for (const auto& f : s.fibres)
            if (!f.type.multiplicative()) return false;
        return true;
    };
    check(semistable(a) && semistable(b), "NotSemiStable",
          "both surfaces must have only I_n fibres");
    auto divisor = [](const SurfaceAnalysis& s) {
        std::map<std::string, int> d;
        for (const auto& f : s.fibres) {
            std::string key = f.place.is_infinity() ? "inf" : "";
            if (!f.place.is_infinity()) {
                for (int i = f.place.poly().degree(); i >= 0; --i)
                    key += rat_str(f.place.poly()[i]) + ",";
            }
            d[key] = f.e_v;
        }
        return d;
    };
    return divisor(a) == divisor(b);
}

} // namespace ellsurf
