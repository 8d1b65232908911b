#pragma once

#include <climits>
#include <optional>
#include <vector>

#include "ellsurf/factor.hpp"
#include "ellsurf/poly.hpp"

namespace ellsurf {

/// Place of P^1 over Q: a monic irreducible polynomial in t, or infinity.
class Place {
public:
    static Place infinity() {
        Place v;
        v.infinite_ = true;
        return v;
    }
    static Place finite(const QPoly& p); // validates monic irreducible
    static Place of_root(const Rat& a) { // the place t - a
        return finite(QPoly(std::vector<Rat>{-a, Rat(1)}));
    }

    bool is_infinity() const { return infinite_; }
    const QPoly& poly() const {
        check(!infinite_, "InternalError", "finite polynomial of the infinite place");
        return p_;
    }
    int degree() const { return infinite_ ? 1 : p_.degree(); }

    friend bool operator==(const Place& a, const Place& b) {
        if (a.infinite_ != b.infinite_) return false;
        return a.infinite_ || a.p_ == b.p_;
    }
    friend bool operator!=(const Place& a, const Place& b) { return !(a == b); }
    friend bool operator<(const Place& a, const Place& b); // deterministic order

private:
    Place() = default;
    bool infinite_ = false;
    QPoly p_;
};

constexpr long VAL_INF = LONG_MAX; // valuation of 0

/// Valuation of a polynomial at a finite place (multiplicity of p in f).
long val_poly(const QPoly& f, const QPoly& p);

/// Normalised valuation of f at v; VAL_INF for f = 0.
long valuation(const QRatFunc& f, const Place& v);
long valuation(const RatFunc<Quad>& f, const Place& v);

/// Element of the residue field kappa(v) = Q[t]/(p); infinity uses Q (deg 0).
class ResidueElt {
public:
    ResidueElt() = default;
    ResidueElt(QPoly rep, QPoly mod) : rep_(std::move(rep)), mod_(std::move(mod)) {
        if (mod_.degree() >= 1) rep_ = rep_ % mod_;
    }
    static ResidueElt from_rat(const Rat& c, const QPoly& mod) {
        return ResidueElt(QPoly(c), mod);
    }

    const QPoly& rep() const { return rep_; }
    const QPoly& modulus() const { return mod_; }
    bool zero() const { return rep_.zero(); }

    friend ResidueElt operator+(const ResidueElt& x, const ResidueElt& y) {
        return ResidueElt(x.rep_ + y.rep_, x.mod(y));
    }
    friend ResidueElt operator-(const ResidueElt& x, const ResidueElt& y) {
        return ResidueElt(x.rep_ - y.rep_, x.mod(y));
    }
    friend ResidueElt operator-(const ResidueElt& x) { return ResidueElt(-x.rep_, x.mod_); }
    friend ResidueElt operator*(const ResidueElt& x, const ResidueElt& y) {
        return ResidueElt(x.rep_ * y.rep_, x.mod(y));
    }
    ResidueElt inverse() const;
    friend ResidueElt operator/(const ResidueElt& x, const ResidueElt& y) {
        return x * y.inverse();
    }
    friend bool operator==(const ResidueElt& x, const ResidueElt& y) {
        return x.rep_ == y.rep_;
    }
    friend bool operator!=(const ResidueElt& x, const ResidueElt& y) { return !(x == y); }

private:
    QPoly mod(const ResidueElt& other) const {
        return mod_.degree() >= other.mod_.degree() ? mod_ : other.mod_;
    }
    QPoly rep_; // degree < deg(mod)
    QPoly mod_;
};

enum class SquareAnswer { Yes, No, Undetermined };

/// Reduce f at v (image in the residue field). NegativeValuation on a pole.
/// At infinity this is evaluation at s = 0 after t = 1/s.
ResidueElt reduce_at(const QRatFunc& f, const Place& v);

/// Exact square test in kappa(v). Exact for every degree (the spec only
/// demands degrees <= 2; the resultant/gcd route answers the rest too).
SquareAnswer is_square_in_residue(const ResidueElt& e);

/// Exact square root in kappa(v) with a deterministic sign choice
/// (leading nonzero coefficient of the representative positive).
std::optional<ResidueElt> residue_sqrt(const ResidueElt& e);

/// All kappa(v)-roots of a monic polynomial with residue coefficients of
/// degree <= 3, given one already known root (deflate, then solve the
/// quadratic exactly). Result is deterministically ordered.
std::vector<ResidueElt> roots_with_known(const std::vector<ResidueElt>& monic_coeffs,
                                         const ResidueElt& known_root);

/// Deterministic total order on residue elements (for stable labelling).
bool residue_less(const ResidueElt& x, const ResidueElt& y);

void quad_parts(const RatFunc<Quad>& f, QRatFunc& a, QRatFunc& b, Int& D);

} // namespace ellsurf
