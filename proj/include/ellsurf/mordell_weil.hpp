#pragma once

#include <map>
#include <vector>

#include "ellsurf/kodaira.hpp"
#include "ellsurf/lattices.hpp"

namespace ellsurf {

using KFunc = RatFunc<Quad>; // elements of Q(sqrt D)(t)

/// A point of the generic fibre: the zero section or (x(t), y(t)).
struct Section {
    bool is_zero = true;
    KFunc x, y;

    static Section zero() { return Section{}; }
    static Section finite(KFunc x, KFunc y) { return Section{false, std::move(x), std::move(y)}; }
};

struct ComponentId {
    enum Kind { Zero, Cyclic, NonZeroSimple, Near, Far, FarAny } kind = Zero;
    int index = 0; // Cyclic: 1..n-1; NonZeroSimple: 1|2; Far: 1|2; FarAny: 1|2|3

    bool nonzero() const { return kind != Zero; }
    std::string str() const;
    friend bool operator==(const ComponentId& a, const ComponentId& b) {
        return a.kind == b.kind && a.index == b.index;
    }
    friend bool operator!=(const ComponentId& a, const ComponentId& b) { return !(a == b); }
};

struct HeightReport {
    Rat height;
    long contact_O = 0;
    std::vector<std::pair<Place, Rat>> contributions; // nonzero local terms
    std::vector<std::pair<Place, ComponentId>> components;
};

/// Validate that P satisfies the model equation identically; OffCurve otherwise.
void validate_on_curve(const WModel& m, const Section& P);

Section negate(const WModel& m, const Section& P);
Section add(const WModel& m, const Section& P, const Section& Q);
Section sub(const WModel& m, const Section& P, const Section& Q);
Section mul(const WModel& m, long k, const Section& P);

/// Transport a section through an admissible transform (old coords -> new).
Section push_section(const AdmissibleTransform& T, const Section& P);

/// Section in the chart at infinity: x'(s) = s^(2n) x(1/s), y'(s) = s^(3n) y(1/s).
Section section_at_infinity(const Section& P, int chi);

/// P.O-bar: sum over poles of x (finite places and the chart at infinity).
/// MalformedPole when pole orders are not of the (-2k, -3k) shape.
long contact_with_zero(const SurfaceAnalysis& a, const Section& P);

/// Fibre component met by the section at v (infinity allowed).
ComponentId identify_component(const SurfaceAnalysis& a, const Section& P, const Place& v);

/// Correction term of Table 4 for one or two sections on the same fibre.
Rat table4_contr(const KodairaType& t, const ComponentId& c);
Rat table4_contr(const KodairaType& t, const ComponentId& c1, const ComponentId& c2);

HeightReport height(const SurfaceAnalysis& a, const Section& P);
Rat pairing(const SurfaceAnalysis& a, const Section& P, const Section& Q);

std::vector<std::vector<Rat>> gram_matrix(const SurfaceAnalysis& a,
                                          const std::vector<Section>& sections);

bool is_torsion(const SurfaceAnalysis& a, const Section& P);
bool narrow_member(const SurfaceAnalysis& a, const Section& P);
bool is_integral(const SurfaceAnalysis& a, const Section& P);

/// disc(NS) = (-1)^rank disc(T) disc(MWL) / #tor^2  (eq. (18) shape).
Rat ns_discriminant(const SurfaceAnalysis& a, const std::vector<std::vector<Rat>>& gram_free,
                    long torsion_order);

/// Pure-arithmetic height for configuration reasoning: 2 chi + 2 contact
/// minus the Table-4 terms of the listed components.
Rat height_from_data(int chi, long contact,
                     const std::vector<std::pair<KodairaType, ComponentId>>& comps);

/// Transport P to base_change(m, phi); height scales by deg(phi).
Section base_change_section(const Section& P, const QRatFunc& phi,
                            const AdmissibleTransform& minimalising);

/// Image of a component in the abstract group G(F_v), written in the
/// invariant-factor presentation of KodairaType::group_invariants().
std::vector<int> component_group_element(const KodairaType& t, const ComponentId& c);

} // namespace ellsurf
