#pragma once

#include <optional>
#include <vector>

#include "ellsurf/funcfield.hpp"

namespace ellsurf {

enum class Chart { AffineT, AffineS };

/// Coordinate change x = u^2 x' + r, y = u^3 y' + s u^2 x' + w.
struct AdmissibleTransform {
    QRatFunc u = QRatFunc(1);
    QRatFunc r, s, w;

    static AdmissibleTransform identity() { return {}; }
    static AdmissibleTransform scaling(const QRatFunc& u) {
        AdmissibleTransform T;
        T.u = u;
        return T;
    }
    /// first `a`, then `b` (coordinates of a composed into b's frame)
    static AdmissibleTransform compose(const AdmissibleTransform& a, const AdmissibleTransform& b);
    AdmissibleTransform inverse() const;
};

/// Generalised Weierstrass model y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6
/// over Q(t). Coefficients are rational functions so transforms can be carried
/// symbolically; most entry points insist on polynomial (integral) models.
struct WModel {
    QRatFunc a1, a2, a3, a4, a6;
    Chart chart = Chart::AffineT;

    bool integral() const {
        return a1.is_poly() && a2.is_poly() && a3.is_poly() && a4.is_poly() && a6.is_poly();
    }

    QRatFunc b2() const { return a1 * a1 + rat(4) * a2; }
    QRatFunc b4() const { return rat(2) * a4 + a1 * a3; }
    QRatFunc b6() const { return a3 * a3 + rat(4) * a6; }
    QRatFunc b8() const {
        return a1 * a1 * a6 + rat(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    }
    QRatFunc c4() const { return b2() * b2() - rat(24) * b4(); }
    QRatFunc c6() const {
        QRatFunc b = b2();
        return -(b * b * b) + rat(36) * b * b4() - rat(216) * b6();
    }
    QRatFunc disc() const {
        QRatFunc B2 = b2(), B4 = b4(), B6 = b6(), B8 = b8();
        return -(B2 * B2) * B8 - rat(8) * (B4 * B4 * B4) - rat(27) * (B6 * B6) + rat(9) * B2 * B4 * B6;
    }
};

WModel make_model(const QPoly& a1, const QPoly& a2, const QPoly& a3, const QPoly& a4,
                  const QPoly& a6, Chart chart = Chart::AffineT);

/// Discriminant of an integral model as a polynomial.
QPoly discriminant(const WModel& m);

/// j = c4^3 / Delta; NotElliptic when Delta = 0.
QRatFunc j_invariant(const WModel& m);

WModel apply_transform(const WModel& m, const AdmissibleTransform& T);

/// Least n with deg(a_i) <= n*i (integral model).
int weight_of(const WModel& m);

/// Scale by a constant-free u = 1/d to clear denominators; returns the
/// transform used.
WModel make_integral(const WModel& m, AdmissibleTransform* used = nullptr);

/// Minimalise at one finite place. Tries the plain u = p division that keeps
/// the general shape; otherwise falls back to the short form via c4/c6.
WModel minimalize_at(const WModel& m, const Place& v, int* count = nullptr,
                     AdmissibleTransform* used = nullptr);

struct MinimalModel {
    WModel model;      // integral, globally minimal, AffineT
    int chi = 0;       // weight n = chi(S)
    AdmissibleTransform from_input; // coordinates of input -> coordinates of model
};

/// Globally minimal integral model; NoSingularFibre if Delta has no zero
/// anywhere (including infinity), NotElliptic if Delta = 0.
MinimalModel globally_minimal(const WModel& m);

/// The integral model in the chart at infinity: t = 1/s, a_i' = s^{n i} a_i(1/s).
WModel chart_at_infinity(const MinimalModel& mm);

struct TwistResult {
    WModel model;
    std::vector<std::string> warnings;
};

/// Quadratic twist by a squarefree polynomial d (square parts are moved into
/// an admissible transform, with a warning).
TwistResult quadratic_twist(const WModel& m, const QPoly& d);

/// Pull back along t = phi(u) and minimalise. ConstantMap if phi is constant.
MinimalModel base_change(const WModel& m, const QRatFunc& phi,
                         AdmissibleTransform* post = nullptr);

} // namespace ellsurf
