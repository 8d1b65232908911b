#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

#include "ellsurf/error.hpp"

namespace ellsurf {

using Int = mpz_class;
using Rat = mpq_class; // GMP keeps gcd(num,den)=1 and den>0 for us

inline Rat rat(long n, long d = 1) {
    Rat r(n, d);
    r.canonicalize();
    return r;
}

inline bool is_zero(const Rat& x) { return sgn(x) == 0; }

inline Int rat_num(const Rat& x) { return x.get_num(); }
inline Int rat_den(const Rat& x) { return x.get_den(); }

inline Rat rat_pow(const Rat& x, unsigned long e) {
    Rat r = 1;
    Rat b = x;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

inline Int int_pow(const Int& x, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), x.get_mpz_t(), e);
    return r;
}

inline bool is_perfect_square(const Int& n) {
    return sgn(n) >= 0 && mpz_perfect_square_p(n.get_mpz_t());
}

inline Int int_sqrt(const Int& n) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

/// Exact square root in Q, if it exists.
inline std::optional<Rat> rat_sqrt(const Rat& x) {
    if (sgn(x) < 0) return std::nullopt;
    Int n = rat_num(x), d = rat_den(x);
    if (!is_perfect_square(n) || !is_perfect_square(d)) return std::nullopt;
    Rat r(int_sqrt(n), int_sqrt(d));
    r.canonicalize();
    return r;
}

/// Largest square divisor split: n = s^2 * f with f squarefree (sign kept in f).
/// Trial division; intended for the small integers seen in input normalisation.
inline void squarefree_split(const Int& n, Int& s, Int& f) {
    s = 1;
    f = n;
    if (sgn(n) == 0) return;
    Int a = abs(n);
    Int p = 2;
    while (p * p <= a) {
        Int pp = p * p;
        while (mpz_divisible_p(a.get_mpz_t(), pp.get_mpz_t())) {
            a /= pp;
            s *= p;
        }
        if (p == 2) p = 3; else p += 2;
    }
    f = n / (s * s);
}

inline std::string rat_str(const Rat& x) {
    if (rat_den(x) == 1) return rat_num(x).get_str();
    return rat_num(x).get_str() + "/" + rat_den(x).get_str();
}

/// Element of Q(sqrt(D)) for a fixed squarefree D (D=0 encodes plain Q).
/// Values with b=0 coexist with any D; mixing two different nonzero D fails.
struct Quad {
    Rat a;
    Rat b;
    Int D;

    Quad() : a(0), b(0), D(0) {}
    Quad(const Rat& r) : a(r), b(0), D(0) {}
    Quad(long n) : a(rat(n)), b(0), D(0) {}
    Quad(const Rat& a_, const Rat& b_, const Int& D_) : a(a_), b(b_), D(D_) {
        if (is_zero(b)) D = 0;
    }

    bool is_rational() const { return is_zero(b); }
    bool is_zero_elt() const { return is_zero(a) && is_zero(b); }

    static Int merge_d(const Quad& x, const Quad& y) {
        if (x.D == 0) return y.D;
        if (y.D == 0 || x.D == y.D) return x.D;
        fail("MixedExtensions", "cannot mix sqrt(" + x.D.get_str() + ") with sqrt(" + y.D.get_str() + ")");
    }

    friend Quad operator+(const Quad& x, const Quad& y) {
        return Quad(x.a + y.a, x.b + y.b, merge_d(x, y));
    }
    friend Quad operator-(const Quad& x, const Quad& y) {
        return Quad(x.a - y.a, x.b - y.b, merge_d(x, y));
    }
    friend Quad operator-(const Quad& x) { return Quad(-x.a, -x.b, x.D); }
    friend Quad operator*(const Quad& x, const Quad& y) {
        Int D = merge_d(x, y);
        return Quad(x.a * y.a + Rat(D) * x.b * y.b, x.a * y.b + x.b * y.a, D);
    }
    Quad conj() const { return Quad(a, -b, D); }
    Rat norm() const { return a * a - Rat(D) * b * b; }
    Quad inverse() const {
        Rat n = norm();
        check(!is_zero(n), "DivisionByZero", "non-invertible element of Q(sqrt(D))");
        return Quad(a / n, -b / n, D);
    }
    friend Quad operator/(const Quad& x, const Quad& y) { return x * y.inverse(); }
    friend bool operator==(const Quad& x, const Quad& y) {
        merge_d(x, y);
        return x.a == y.a && x.b == y.b;
    }
    friend bool operator!=(const Quad& x, const Quad& y) { return !(x == y); }

    Quad& operator+=(const Quad& y) { return *this = *this + y; }
    Quad& operator-=(const Quad& y) { return *this = *this - y; }
    Quad& operator*=(const Quad& y) { return *this = *this * y; }
    Quad& operator/=(const Quad& y) { return *this = *this / y; }
};

inline bool is_zero(const Quad& x) { return x.is_zero_elt(); }

inline std::string quad_str(const Quad& x) {
    if (x.is_rational()) return rat_str(x.a);
    std::string s;
    if (!is_zero(x.a)) s = rat_str(x.a);
    std::string bs = rat_str(x.b);
    if (bs == "1") bs = "";
    else if (bs == "-1") bs = "-";
    std::string tail = bs + "sqrt(" + x.D.get_str() + ")";
    if (s.empty()) return tail;
    if (tail[0] != '-') return s + "+" + tail;
    return s + tail;
}

} // namespace ellsurf
