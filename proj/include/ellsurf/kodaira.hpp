#pragma once

#include <string>
#include <vector>

#include "ellsurf/weierstrass.hpp"

namespace ellsurf {

/// Kodaira fibre type. I0 is In(0), I0* is InStar(0).
struct KodairaType {
    enum Family { In, InStar, II, III, IV, IVStar, IIIStar, IIStar } family = In;
    int n = 0; // only for In / InStar

    static KodairaType make(Family f, int n = 0) { return KodairaType{f, n}; }
    static KodairaType i_n(int n) { return {In, n}; }
    static KodairaType i_n_star(int n) { return {InStar, n}; }

    bool multiplicative() const { return family == In && n >= 1; }
    bool additive() const { return !(family == In); }
    bool smooth() const { return family == In && n == 0; }

    int components() const;   // m_v
    int euler() const;        // e_v = v(Delta) in characteristic zero
    long group_order() const; // |G(F_v)|
    std::vector<int> group_invariants() const; // invariant factors of G(F_v)
    long root_det_abs() const; // |det T_v| (1 if no root lattice)

    std::string str() const;
    static KodairaType parse(const std::string& s);

    friend bool operator==(const KodairaType& a, const KodairaType& b) {
        return a.family == b.family && a.n == b.n;
    }
    friend bool operator!=(const KodairaType& a, const KodairaType& b) { return !(a == b); }
    friend bool operator<(const KodairaType& a, const KodairaType& b) {
        if (a.family != b.family) return a.family < b.family;
        return a.n < b.n;
    }
};

enum class SplitFlag { Split, NonSplit, Undetermined, NotApplicable };

struct FibreData {
    Place place = Place::infinity();
    KodairaType type;
    int m_v = 1;
    int e_v = 0;
    std::vector<int> group; // invariant factors of G(F_v), empty = trivial
    std::string root;       // "A3", "D5", "E8", or "" when none
    SplitFlag split = SplitFlag::NotApplicable;
};

enum class SurfaceClass { Rational, K3, HonestlyElliptic };

struct SurfaceAnalysis {
    MinimalModel minimal;
    WModel chart_inf; // integral model at infinity (AffineS)
    int chi = 0;
    int euler = 0;
    std::vector<FibreData> fibres; // singular places only, infinity included
    int conductor_degree = 0;
    int trivial_rank = 0;
    int b2 = 0, h11 = 0, pg = 0;
    SurfaceClass classification = SurfaceClass::Rational;
    bool isotrivial = false;

    const FibreData* fibre_at(const Place& v) const {
        for (const auto& f : fibres)
            if (f.place == v) return &f;
        return nullptr;
    }
};

/// Classify the fibre of an integral model at a place where it is minimal.
/// For v = infinity pass the chart model (AffineS) and the place (s).
FibreData classify_fibre(const WModel& m, const Place& v);

/// Full ledger of the surface: global minimalisation, fibre classification
/// at every zero of Delta (infinity included), Euler/Betti/Hodge data.
SurfaceAnalysis analyze(const WModel& m);

struct SzpiroCheck {
    long lhs = 0, rhs = 0;
    bool holds = false;
    bool skipped_isotrivial = false;
};

/// deg(Delta) <= 6 (deg N - 2) for non-isotrivial surfaces over P^1.
SzpiroCheck szpiro_check(const SurfaceAnalysis& a);

/// Thm 5.2 criterion: semi-stable surfaces are isomorphic iff their
/// discriminant divisors coincide. NotSemiStable if an additive fibre occurs.
bool isomorphism_test_semistable(const SurfaceAnalysis& a, const SurfaceAnalysis& b);

/// The place "(s)" used for the chart at infinity.
Place place_s_zero();

} // namespace ellsurf
