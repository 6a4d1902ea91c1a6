#pragma once

#include <array>
#include <cmath>
#include <cstdint>

#include "binaryweyl/errors.hpp"
#include "binaryweyl/rational.hpp"

namespace bw {

// ---------------------------------------------------------------------------
// Scalar ring kernels. The curvature pipeline is generic over the ring:
// double (numeric), Rational (exact), and the jet rings built on top of them.
// ---------------------------------------------------------------------------

template <class T>
struct ring_traits;

template <>
struct ring_traits<double> {
    static constexpr bool exact = false;
    static double from_rational(const Rational& q) { return q.to_double(); }
    static double from_long(long n) { return static_cast<double>(n); }
};

template <>
struct ring_traits<Rational> {
    static constexpr bool exact = true;
    static Rational from_rational(const Rational& q) { return q; }
    static Rational from_long(long n) { return Rational(n); }
};

inline double ring_exp(double v) { return std::exp(v); }
inline double ring_ln(double v) {
    if (v <= 0) throw DomainError("ln of non-positive value");
    return std::log(v);
}
inline double ring_sqrt(double v) {
    if (v <= 0) throw DomainError("sqrt of non-positive value");
    return std::sqrt(v);
}
inline double ring_sin(double v) { return std::sin(v); }
inline double ring_cos(double v) { return std::cos(v); }
inline double ring_abs(double v) { return std::fabs(v); }
inline double ring_pow_rat(double v, const Rational& r) {
    if (v <= 0) throw DomainError("non-integer power of non-positive base");
    return std::pow(v, r.to_double());
}

inline Rational ring_exp(const Rational&) { throw DomainError("exp is not exact-evaluable"); }
inline Rational ring_ln(const Rational&) { throw DomainError("ln is not exact-evaluable"); }
inline Rational ring_sqrt(const Rational&) { throw DomainError("sqrt is not exact-evaluable"); }
inline Rational ring_sin(const Rational&) { throw DomainError("sin is not exact-evaluable"); }
inline Rational ring_cos(const Rational&) { throw DomainError("cos is not exact-evaluable"); }
inline Rational ring_abs(const Rational& v) { return v.abs(); }
inline Rational ring_pow_rat(const Rational&, const Rational&) {
    throw DomainError("non-integer power is not exact-evaluable");
}

inline bool is_ring_zero(double v) { return v == 0.0; }
inline bool is_ring_zero(const Rational& v) { return v.is_zero(); }

template <class T>
T ring_pow_int(const T& v, long e) {
    if (e == 0) return ring_traits<T>::from_long(1);
    bool invert = e < 0;
    unsigned long ue = invert ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    T base = v;
    T acc = ring_traits<T>::from_long(1);
    while (ue != 0) {
        if (ue & 1u) acc = acc * base;
        ue >>= 1u;
        if (ue != 0) base = base * base;
    }
    if (invert) {
        if (is_ring_zero(acc)) throw DomainError("zero raised to a negative power");
        return ring_traits<T>::from_long(1) / acc;
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Symmetric 4x4 storage: one copy per unordered index pair, so Hessian
// symmetry holds exactly by construction.
// ---------------------------------------------------------------------------
template <class T>
class Sym4 {
  public:
    Sym4() : a_{} {}

    T& operator()(int i, int j) { return a_[flat(i, j)]; }
    const T& operator()(int i, int j) const { return a_[flat(i, j)]; }

    static constexpr int flat(int i, int j) {
        if (i > j) { int t = i; i = j; j = t; }
        constexpr int off[4] = {0, 4, 7, 9};
        return off[i] + (j - i);
    }

    std::array<T, 10> a_;
};

// ---------------------------------------------------------------------------
// Order-2 forward jet: value, gradient, Hessian in the four coordinates.
// ---------------------------------------------------------------------------
template <class T>
struct Jet2 {
    T v{};
    std::array<T, 4> g{};
    Sym4<T> h{};

    static Jet2 constant(T c) {
        Jet2 j;
        j.v = std::move(c);
        return j;
    }
    static Jet2 seed(T x, int k) {
        Jet2 j;
        j.v = std::move(x);
        j.g[k] = ring_traits<T>::from_long(1);
        return j;
    }

    Jet2 operator-() const {
        Jet2 r;
        r.v = -v;
        for (int i = 0; i < 4; ++i) r.g[i] = -g[i];
        for (int i = 0; i < 10; ++i) r.h.a_[i] = -h.a_[i];
        return r;
    }

    friend Jet2 operator+(const Jet2& a, const Jet2& b) {
        Jet2 r;
        r.v = a.v + b.v;
        for (int i = 0; i < 4; ++i) r.g[i] = a.g[i] + b.g[i];
        for (int i = 0; i < 10; ++i) r.h.a_[i] = a.h.a_[i] + b.h.a_[i];
        return r;
    }
    friend Jet2 operator-(const Jet2& a, const Jet2& b) {
        Jet2 r;
        r.v = a.v - b.v;
        for (int i = 0; i < 4; ++i) r.g[i] = a.g[i] - b.g[i];
        for (int i = 0; i < 10; ++i) r.h.a_[i] = a.h.a_[i] - b.h.a_[i];
        return r;
    }
    friend Jet2 operator*(const Jet2& a, const Jet2& b) {
        Jet2 r;
        r.v = a.v * b.v;
        for (int i = 0; i < 4; ++i) r.g[i] = a.g[i] * b.v + a.v * b.g[i];
        for (int i = 0; i < 4; ++i)
            for (int j = i; j < 4; ++j)
                r.h(i, j) = a.h(i, j) * b.v + a.g[i] * b.g[j] + a.g[j] * b.g[i] + a.v * b.h(i, j);
        return r;
    }
    // Direct quotient rule; exact over any ring with division by b.v only.
    friend Jet2 operator/(const Jet2& a, const Jet2& b) {
        if (is_ring_zero(b.v)) throw DomainError("jet division by zero value");
        Jet2 r;
        r.v = a.v / b.v;
        for (int i = 0; i < 4; ++i) r.g[i] = (a.g[i] - r.v * b.g[i]) / b.v;
        for (int i = 0; i < 4; ++i)
            for (int j = i; j < 4; ++j)
                r.h(i, j) =
                    (a.h(i, j) - r.g[i] * b.g[j] - r.g[j] * b.g[i] - r.v * b.h(i, j)) / b.v;
        return r;
    }
};

// f(a) for unary f with value f0, first derivative f1, second derivative f2 at a.v.
template <class T>
Jet2<T> jet_compose(const Jet2<T>& a, const T& f0, const T& f1, const T& f2) {
    Jet2<T> r;
    r.v = f0;
    for (int i = 0; i < 4; ++i) r.g[i] = f1 * a.g[i];
    for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) r.h(i, j) = f2 * a.g[i] * a.g[j] + f1 * a.h(i, j);
    return r;
}

template <class T>
struct ring_traits<Jet2<T>> {
    static constexpr bool exact = ring_traits<T>::exact;
    static Jet2<T> from_rational(const Rational& q) {
        return Jet2<T>::constant(ring_traits<T>::from_rational(q));
    }
    static Jet2<T> from_long(long n) { return Jet2<T>::constant(ring_traits<T>::from_long(n)); }
};

template <class T>
bool is_ring_zero(const Jet2<T>& a) {
    return is_ring_zero(a.v);
}

template <class T>
Jet2<T> ring_exp(const Jet2<T>& a) {
    T e = ring_exp(a.v);
    return jet_compose(a, e, e, e);
}
template <class T>
Jet2<T> ring_ln(const Jet2<T>& a) {
    T one = ring_traits<T>::from_long(1);
    T inv = one / a.v;  // ring_ln(a.v) checks positivity first
    T lnv = ring_ln(a.v);
    return jet_compose(a, lnv, inv, -(inv * inv));
}
template <class T>
Jet2<T> ring_sqrt(const Jet2<T>& a) {
    T s = ring_sqrt(a.v);
    T half = ring_traits<T>::from_rational(Rational(1, 2));
    T f1 = half / s;
    T quarter = ring_traits<T>::from_rational(Rational(-1, 4));
    T f2 = quarter / (s * a.v);
    return jet_compose(a, s, f1, f2);
}
template <class T>
Jet2<T> ring_sin(const Jet2<T>& a) {
    T s = ring_sin(a.v), c = ring_cos(a.v);
    return jet_compose(a, s, c, -s);
}
template <class T>
Jet2<T> ring_cos(const Jet2<T>& a) {
    T s = ring_sin(a.v), c = ring_cos(a.v);
    return jet_compose(a, c, -s, -c);
}
// |u| is smooth away from 0; at 0 the derivative does not exist and we refuse.
template <class T>
Jet2<T> ring_abs(const Jet2<T>& a) {
    if (is_ring_zero(a.v)) throw DomainError("abs at zero in a jet ring");
    T zero = ring_traits<T>::from_long(0);
    bool neg = a.v < zero;
    T f1 = ring_traits<T>::from_long(neg ? -1 : 1);
    return jet_compose(a, ring_abs(a.v), f1, zero);
}
template <class T>
Jet2<T> ring_pow_rat(const Jet2<T>& a, const Rational& r) {
    T rv = ring_traits<T>::from_rational(r);
    T one = ring_traits<T>::from_long(1);
    T f0 = ring_pow_rat(a.v, r);
    T f1 = rv * ring_pow_rat(a.v, r - Rational(1));
    T f2 = rv * (rv - one) * ring_pow_rat(a.v, r - Rational(2));
    return jet_compose(a, f0, f1, f2);
}

// ---------------------------------------------------------------------------
// Order-1 jet: carries a value and its four first derivatives. Used to push
// Christoffel symbols (and closed-form Weyl components) through one more
// derivative without going to third order.
// ---------------------------------------------------------------------------
template <class T>
struct Jet1 {
    T v{};
    std::array<T, 4> g{};

    static Jet1 constant(T c) {
        Jet1 j;
        j.v = std::move(c);
        return j;
    }

    Jet1 operator-() const {
        Jet1 r;
        r.v = -v;
        for (int i = 0; i < 4; ++i) r.g[i] = -g[i];
        return r;
    }
    friend Jet1 operator+(const Jet1& a, const Jet1& b) {
        Jet1 r;
        r.v = a.v + b.v;
        for (int i = 0; i < 4; ++i) r.g[i] = a.g[i] + b.g[i];
        return r;
    }
    friend Jet1 operator-(const Jet1& a, const Jet1& b) {
        Jet1 r;
        r.v = a.v - b.v;
        for (int i = 0; i < 4; ++i) r.g[i] = a.g[i] - b.g[i];
        return r;
    }
    friend Jet1 operator*(const Jet1& a, const Jet1& b) {
        Jet1 r;
        r.v = a.v * b.v;
        for (int i = 0; i < 4; ++i) r.g[i] = a.g[i] * b.v + a.v * b.g[i];
        return r;
    }
    friend Jet1 operator/(const Jet1& a, const Jet1& b) {
        if (is_ring_zero(b.v)) throw DomainError("jet division by zero value");
        Jet1 r;
        r.v = a.v / b.v;
        for (int i = 0; i < 4; ++i) r.g[i] = (a.g[i] - r.v * b.g[i]) / b.v;
        return r;
    }
};

template <class T>
struct ring_traits<Jet1<T>> {
    static constexpr bool exact = ring_traits<T>::exact;
    static Jet1<T> from_rational(const Rational& q) {
        return Jet1<T>::constant(ring_traits<T>::from_rational(q));
    }
    static Jet1<T> from_long(long n) { return Jet1<T>::constant(ring_traits<T>::from_long(n)); }
};

template <class T>
bool is_ring_zero(const Jet1<T>& a) {
    return is_ring_zero(a.v);
}

// Value and first derivatives of a Jet2 as an order-1 jet.
template <class T>
Jet1<T> jet1_of_value(const Jet2<T>& a) {
    Jet1<T> r;
    r.v = a.v;
    r.g = a.g;
    return r;
}

// The derivative field d_k f as an order-1 jet (pulls the Hessian row in).
template <class T>
Jet1<T> jet1_of_derivative(const Jet2<T>& a, int k) {
    Jet1<T> r;
    r.v = a.g[k];
    for (int l = 0; l < 4; ++l) r.g[l] = a.h(k, l);
    return r;
}

// Seed a coordinate point for order-2 evaluation.
template <class T>
std::array<Jet2<T>, 4> seed_point(const std::array<T, 4>& p) {
    return {Jet2<T>::seed(p[0], 0), Jet2<T>::seed(p[1], 1), Jet2<T>::seed(p[2], 2),
            Jet2<T>::seed(p[3], 3)};
}

// Float comparison used throughout the numeric tests:
// |a-b| <= tol_abs + tol_rel * max(|a|,|b|).
inline bool nearly_equal(double a, double b, double tol_abs = 1e-12, double tol_rel = 1e-9) {
    double m = std::fmax(std::fabs(a), std::fabs(b));
    return std::fabs(a - b) <= tol_abs + tol_rel * m;
}

}  // namespace bw
