#pragma once

#include <algorithm>
#include <type_traits>
#include <vector>

#include "ellsurf/rational.hpp"

namespace ellsurf {

/// Dense univariate polynomial over a field K (K = Rat or Quad).
/// Coefficients indexed by degree; the zero polynomial has an empty vector
/// and degree() == -1.
template <class K>
class Poly {
public:
    Poly() = default;
    Poly(const K& c) {
        if (!is_zero(c)) c_.push_back(c);
    }
    Poly(long c) : Poly(K(c)) {}
    explicit Poly(std::vector<K> cs) : c_(std::move(cs)) { trim(); }

    static Poly var() { return Poly(std::vector<K>{K(0), K(1)}); }
    static Poly monomial(const K& c, int deg) {
        std::vector<K> v(deg + 1, K(0));
        v[deg] = c;
        return Poly(std::move(v));
    }

    int degree() const { return (int)c_.size() - 1; }
    bool zero() const { return c_.empty(); }
    const K& operator[](int i) const {
        static const K z = K(0);
        if (i < 0 || i >= (int)c_.size()) return z;
        return c_[i];
    }
    const std::vector<K>& coeffs() const { return c_; }
    const K& lc() const { return c_.back(); }
    bool is_one() const { return degree() == 0 && c_[0] == K(1); }
    bool monic() const { return !zero() && lc() == K(1); }

    void set_coeff(int i, const K& v) {
        if ((int)c_.size() <= i) c_.resize(i + 1, K(0));
        c_[i] = v;
        trim();
    }

    friend Poly operator+(const Poly& f, const Poly& g) {
        std::vector<K> r(std::max(f.c_.size(), g.c_.size()), K(0));
        for (size_t i = 0; i < r.size(); ++i) r[i] = f[(int)i] + g[(int)i];
        return Poly(std::move(r));
    }
    friend Poly operator-(const Poly& f, const Poly& g) {
        std::vector<K> r(std::max(f.c_.size(), g.c_.size()), K(0));
        for (size_t i = 0; i < r.size(); ++i) r[i] = f[(int)i] - g[(int)i];
        return Poly(std::move(r));
    }
    friend Poly operator-(const Poly& f) {
        std::vector<K> r = f.c_;
        for (auto& x : r) x = -x;
        return Poly(std::move(r));
    }
    friend Poly operator*(const Poly& f, const Poly& g) {
        if (f.zero() || g.zero()) return Poly();
        std::vector<K> r(f.c_.size() + g.c_.size() - 1, K(0));
        for (size_t i = 0; i < f.c_.size(); ++i)
            for (size_t j = 0; j < g.c_.size(); ++j) r[i + j] += f.c_[i] * g.c_[j];
        return Poly(std::move(r));
    }
    friend Poly operator*(const K& a, const Poly& f) {
        if (is_zero(a)) return Poly();
        std::vector<K> r = f.c_;
        for (auto& x : r) x = a * x;
        return Poly(std::move(r));
    }
    Poly& operator+=(const Poly& g) { return *this = *this + g; }
    Poly& operator-=(const Poly& g) { return *this = *this - g; }
    Poly& operator*=(const Poly& g) { return *this = *this * g; }

    friend bool operator==(const Poly& f, const Poly& g) {
        if (f.degree() != g.degree()) return false;
        for (size_t i = 0; i < f.c_.size(); ++i)
            if (!(f.c_[i] == g.c_[i])) return false;
        return true;
    }
    friend bool operator!=(const Poly& f, const Poly& g) { return !(f == g); }

    /// Euclidean division: f = q*g + r with deg r < deg g.
    static void divrem(const Poly& f, const Poly& g, Poly& q, Poly& r) {
        check(!g.zero(), "DivisionByZero", "polynomial division by zero");
        q = Poly();
        r = f;
        K inv = K(1) / g.lc();
        while (!r.zero() && r.degree() >= g.degree()) {
            K c = r.lc() * inv;
            int d = r.degree() - g.degree();
            q.set_coeff(d, q[d] + c);
            // r -= c * x^d * g
            std::vector<K> rr = r.c_;
            for (int i = 0; i <= g.degree(); ++i) rr[i + d] -= c * g.c_[i];
            rr.pop_back(); // leading term cancels exactly
            r = Poly(std::move(rr));
        }
    }
    friend Poly operator/(const Poly& f, const Poly& g) {
        Poly q, r;
        divrem(f, g, q, r);
        return q;
    }
    friend Poly operator%(const Poly& f, const Poly& g) {
        Poly q, r;
        divrem(f, g, q, r);
        return r;
    }
    /// Exact division; error if a remainder is left.
    static Poly div_exact(const Poly& f, const Poly& g) {
        Poly q, r;
        divrem(f, g, q, r);
        check(r.zero(), "InexactDivision", "polynomial division was not exact");
        return q;
    }

    Poly monic_scaled() const {
        if (zero()) return *this;
        return (K(1) / lc()) * (*this);
    }

    static Poly gcd(const Poly& a, const Poly& b);

    /// g = gcd(a,b) together with u,v such that u*a + v*b = g.
    static Poly ext_gcd(const Poly& a, const Poly& b, Poly& u, Poly& v) {
        Poly r0 = a, r1 = b;
        Poly u0 = Poly(K(1)), u1 = Poly();
        Poly v0 = Poly(), v1 = Poly(K(1));
        while (!r1.zero()) {
            Poly q, r;
            divrem(r0, r1, q, r);
            Poly u2 = u0 - q * u1, v2 = v0 - q * v1;
            r0 = r1; r1 = r;
            u0 = u1; u1 = u2;
            v0 = v1; v1 = v2;
        }
        if (r0.zero()) { u = Poly(); v = Poly(); return r0; }
        K inv = K(1) / r0.lc();
        u = inv * u0;
        v = inv * v0;
        return inv * r0;
    }

    Poly derivative() const {
        if (degree() < 1) return Poly();
        std::vector<K> r(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = K((long)i) * c_[i];
        return Poly(std::move(r));
    }

    template <class T>
    T eval(const T& x) const {
        T r = T(0);
        for (int i = degree(); i >= 0; --i) r = r * x + T(c_[i]);
        return r;
    }

    /// x^k * f(1/x) for k >= deg f (homogenised reversal used at infinity).
    Poly reversed(int k) const {
        std::vector<K> r(k + 1, K(0));
        for (int i = 0; i <= degree(); ++i) r[k - i] = c_[i];
        return Poly(std::move(r));
    }

    /// f(x + a): Taylor shift.
    Poly shifted(const K& a) const {
        Poly lin(std::vector<K>{a, K(1)});
        return eval(lin);
    }

private:
    void trim() {
        while (!c_.empty() && is_zero(c_.back())) c_.pop_back();
    }
    std::vector<K> c_;
};

using QPoly = Poly<Rat>;

/// gcd over Q via the primitive PRS on integer polynomials (coefficient
/// growth of the naive monic Euclid is prohibitive).
QPoly qpoly_gcd(const QPoly& a, const QPoly& b);

template <class K>
Poly<K> Poly<K>::gcd(const Poly<K>& a, const Poly<K>& b) {
    if constexpr (std::is_same_v<K, Rat>) {
        return qpoly_gcd(a, b);
    } else {
        Poly x = a, y = b;
        while (!y.zero()) {
            Poly r = x % y;
            x = y;
            y = r.monic_scaled();
        }
        return x.monic_scaled();
    }
}

template <class K>
inline Poly<K> poly_pow(Poly<K> b, unsigned long e) {
    Poly<K> r = Poly<K>(K(1));
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

/// Rational function num/den over K, kept with den monic and gcd(num,den)=1.
template <class K>
class RatFunc {
public:
    RatFunc() : num_(), den_(K(1)) {}
    RatFunc(const K& c) : num_(c), den_(K(1)) {}
    RatFunc(long c) : num_(K(c)), den_(K(1)) {}
    RatFunc(const Poly<K>& p) : num_(p), den_(K(1)) {}
    RatFunc(Poly<K> n, Poly<K> d) : num_(std::move(n)), den_(std::move(d)) {
        check(!den_.zero(), "DivisionByZero", "rational function with zero denominator");
        normalise();
    }

    static RatFunc var() { return RatFunc(Poly<K>::var()); }

    const Poly<K>& num() const { return num_; }
    const Poly<K>& den() const { return den_; }
    bool zero() const { return num_.zero(); }
    bool is_poly() const { return den_.is_one(); }

    friend RatFunc operator+(const RatFunc& f, const RatFunc& g) {
        return RatFunc(f.num_ * g.den_ + g.num_ * f.den_, f.den_ * g.den_);
    }
    friend RatFunc operator-(const RatFunc& f, const RatFunc& g) {
        return RatFunc(f.num_ * g.den_ - g.num_ * f.den_, f.den_ * g.den_);
    }
    friend RatFunc operator-(const RatFunc& f) { return RatFunc(-f.num_, f.den_); }
    friend RatFunc operator*(const RatFunc& f, const RatFunc& g) {
        return RatFunc(f.num_ * g.num_, f.den_ * g.den_);
    }
    friend RatFunc operator/(const RatFunc& f, const RatFunc& g) {
        check(!g.zero(), "DivisionByZero", "division by the zero rational function");
        return RatFunc(f.num_ * g.den_, f.den_ * g.num_);
    }
    RatFunc& operator+=(const RatFunc& g) { return *this = *this + g; }
    RatFunc& operator-=(const RatFunc& g) { return *this = *this - g; }
    RatFunc& operator*=(const RatFunc& g) { return *this = *this * g; }
    RatFunc& operator/=(const RatFunc& g) { return *this = *this / g; }

    friend bool operator==(const RatFunc& f, const RatFunc& g) {
        return f.num_ == g.num_ && f.den_ == g.den_;
    }
    friend bool operator!=(const RatFunc& f, const RatFunc& g) { return !(f == g); }

    RatFunc inverse() const {
        check(!zero(), "DivisionByZero", "inverse of zero");
        return RatFunc(den_, num_);
    }

    /// Substitute another rational function for the variable.
    RatFunc compose(const RatFunc& g) const {
        RatFunc n = RatFunc(0), d = RatFunc(0);
        for (int i = num_.degree(); i >= 0; --i) n = n * g + RatFunc(num_[i]);
        for (int i = den_.degree(); i >= 0; --i) d = d * g + RatFunc(den_[i]);
        return n / d;
    }

private:
    void normalise() {
        if (num_.zero()) {
            den_ = Poly<K>(K(1));
            return;
        }
        Poly<K> g = Poly<K>::gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = Poly<K>::div_exact(num_, g);
            den_ = Poly<K>::div_exact(den_, g);
        }
        K inv = K(1) / den_.lc();
        num_ = inv * num_;
        den_ = inv * den_;
    }
    Poly<K> num_, den_;
};

using QRatFunc = RatFunc<Rat>;

template <class K>
inline RatFunc<K> rf_pow(RatFunc<K> b, long e) {
    bool neg = e < 0;
    unsigned long ee = neg ? -(unsigned long)e : (unsigned long)e;
    RatFunc<K> r(1);
    while (ee) {
        if (ee & 1) r *= b;
        b *= b;
        ee >>= 1;
    }
    return neg ? r.inverse() : r;
}

inline Poly<Quad> lift_quad(const QPoly& p) {
    std::vector<Quad> c(p.degree() + 1, Quad());
    for (int i = 0; i <= p.degree(); ++i) c[i] = Quad(p[i]);
    return Poly<Quad>(std::move(c));
}

inline RatFunc<Quad> lift_quad(const QRatFunc& f) {
    return RatFunc<Quad>(lift_quad(f.num()), lift_quad(f.den()));
}

/// Split a Q(sqrt(D))(t) function into rational and sqrt parts: f = a + b*sqrt(D).
void quad_parts(const RatFunc<Quad>& f, QRatFunc& a, QRatFunc& b, Int& D);

} // namespace ellsurf
