#pragma once

#include <array>
#include <vector>

#include "binaryweyl/indices.hpp"
#include "binaryweyl/jets.hpp"
#include "binaryweyl/metric.hpp"
#include "binaryweyl/rational.hpp"

namespace bw {

// Everything the closed-form Weyl expressions consume at one point: order-2
// jets of the six phi_ij, values and first derivatives of the F_i, the
// G_k^{-2} weights and M^2. G_k^2 = g_kk M^2 F_k, which for the iv families
// is the signed product prod_{l != k}(x^k - x^l)^{2m}.
template <class T>
struct PhiPoint {
    std::array<Jet2<T>, 6> phi{};
    bool values_ok = true;  // exact iv construction leaves phi values unset
    bool g_ok = true;       // false when G_k^{-2} is not exact-evaluable
    std::array<T, 4> F{};
    std::array<T, 4> Fp{};
    std::array<T, 4> g_minus2{};
    T M2{};

    T phi1(int a, int b, int c) const {  // phi_{ab},c  (c in {a,b})
        return phi[pair_index(a, b)].g[c];
    }
    T phi2(int a, int b, int c) const {  // phi_{ab},cc
        return phi[pair_index(a, b)].h(c, c);
    }
    T phi2m(int a, int b) const {  // mixed phi_{ab},ab
        return phi[pair_index(a, b)].h(a, b);
    }
};

// Numeric construction from any binary spec (jets through the phi Exprs).
PhiPoint<double> phi_point(const MetricSpec& spec, const Point4& p);

// Analytic construction for the iv families (U_i = x^i): phi = m ln|x^i - x^j|.
// Works over exact rationals when 2m is an integer; jet values are left unset.
template <class T>
PhiPoint<T> phi_point_case_iv(const Rational& m, const std::array<std::vector<Rational>, 4>& F,
                              const Rational& conformal_value, const std::array<T, 4>& p);

// E_ij = phi_ij - (phi_ik + phi_il)/2, as an order-2 jet. Needs phi values.
template <class T>
Jet2<T> e_ij(const PhiPoint<T>& ph, int i, int j);

// Closed form of C^k_{ikj} (first phi derivatives only), generic over the
// scalar so it can also run in the order-1 jet ring for its own derivative.
template <class S>
S ckikj_closed_from(const std::array<std::array<S, 2>, 6>& d1, int i, int j, int k);

template <class T>
T ckikj_closed(const PhiPoint<T>& ph, int i, int j, int k);

// Closed form of C^{ij}_{ij} (the -(1/3)M^2 [...] expression).
template <class T>
T cijij_closed(const PhiPoint<T>& ph, int i, int j);

// lambda_ijk = (phi_jk - phi_ik)_{,k} phi_ij,ij
template <class T>
T lambda_ijk(const PhiPoint<T>& ph, int i, int j, int k);

// max(|l_ijk - l_jki|, |l_jki - l_kij|); zero iff the cyclic condition holds.
template <class T>
T lambda_cyclic_residual(const PhiPoint<T>& ph, int i, int j, int k);

// |d_k C^k_{ikj} - (lambda_kij + lambda_kji)/2|
template <class T>
T derivative_identity_residual(const PhiPoint<T>& ph, int i, int j, int k);

// ---------------- case-iv exact algebra (L, K, bracket, det M) -------------

// L = sum_i w_i^e F_i(x^i), e = 2(m+1), w_i = (-1)^{i-1} prod_{k<l; k,l != i}(x^k - x^l).
// The alternating weights make the sum equal V^e sum_i F_i / P_i^e with
// P_i = prod_{j != i}(x^i - x^j); for every integer m (even e) this is the
// plain pair-product sum.
Rational L_quantity(const Rational& m, const std::array<std::vector<Rational>, 4>& F,
                    const Point4q& p);

// K = L / prod_{k<l}(x^k - x^l)^{2(m+1)} (diagnostic variant).
Rational K_quantity(const Rational& m, const std::array<std::vector<Rational>, 4>& F,
                    const Point4q& p);

enum class BracketMutation { None, RhsMFactor, LhsCoeff };

// LHS - RHS of the two-component bracket identity, exact. Zero iff it holds.
Rational bracket_residual(const Rational& m, const std::array<std::vector<Rational>, 4>& F,
                          const Rational& conformal_value, const Point4q& p,
                          BracketMutation mutation = BracketMutation::None);

enum class DetMutation { None, ClosedConst, ClosedVandExp };

struct DetM {
    std::array<std::array<Rational, 4>, 4> rows;
    Rational det;
};

// The 4x4 F-coefficient matrix of {L = 0, d12 L = 0, d13 L = 0, d14 L = 0}
// after eliminating each F'_i through d_i L = 0, and its determinant.
DetM detm_build(const Rational& m, const Point4q& p);

// -16 (m+1)^3 (2m+1)^3 (x2-x3)^2 (x2-x4)^2 (x3-x4)^2 prod_{k<l}(x^k-x^l)^{2(2m+1)}
Rational detm_closed(const Rational& m, const Point4q& p,
                     DetMutation mutation = DetMutation::None);

// ---------------- template bodies -----------------------------------------

template <class S>
S ckikj_closed_from(const std::array<std::array<S, 2>, 6>& d1, int i, int j, int k) {
    auto d = [&](int a, int b, int c) -> const S& {
        int pid = pair_index(a, b);
        return d1[pid][c == kPairs[pid][0] ? 0 : 1];
    };
    S main = d(i, j, i) * d(j, k, j) + d(k, i, i) * d(i, j, j) - d(k, i, i) * d(k, j, j);
    S sum{};
    for (int l = 0; l < 4; ++l) {
        if (l == i || l == j) continue;
        sum = sum + d(i, j, i) * d(j, l, j) + d(l, i, i) * d(i, j, j) - d(l, i, i) * d(l, j, j);
    }
    S half = ring_traits<S>::from_rational(Rational(1, 2));
    return main - half * sum;
}

template <class T>
T ckikj_closed(const PhiPoint<T>& ph, int i, int j, int k) {
    if (i == j || i == k || j == k) throw SpecError("ckikj needs three distinct indices");
    std::array<std::array<T, 2>, 6> d1;
    for (int pid = 0; pid < 6; ++pid) {
        d1[pid][0] = ph.phi[pid].g[kPairs[pid][0]];
        d1[pid][1] = ph.phi[pid].g[kPairs[pid][1]];
    }
    return ckikj_closed_from(d1, i, j, k);
}

template <class T>
Jet2<T> e_ij(const PhiPoint<T>& ph, int i, int j) {
    if (i == j) throw SpecError("E_ij needs distinct indices");
    if (!ph.values_ok)
        throw DomainError("E_ij value is transcendental for this construction");
    auto comp = complement_of(i, j);
    T half = ring_traits<T>::from_rational(Rational(1, 2));
    Jet2<T> halfj = Jet2<T>::constant(half);
    return ph.phi[pair_index(i, j)] -
           halfj * (ph.phi[pair_index(i, comp[0])] + ph.phi[pair_index(i, comp[1])]);
}

template <class T>
T cijij_closed(const PhiPoint<T>& ph, int i, int j) {
    if (i == j) throw SpecError("cijij needs distinct indices");
    if (!ph.g_ok) throw DomainError("G_k^{-2} is not exact-evaluable for this m");
    auto comp = complement_of(i, j);
    int k1 = comp[0], k2 = comp[1];
    T half = ring_traits<T>::from_rational(Rational(1, 2));
    T two = ring_traits<T>::from_long(2);
    T three = ring_traits<T>::from_long(3);

    // E_{ab},c and E_{ab},cc with c = a
    auto E1 = [&](int a, int b) {
        auto cc = complement_of(a, b);
        return ph.phi1(a, b, a) - half * (ph.phi1(a, cc[0], a) + ph.phi1(a, cc[1], a));
    };
    auto E2 = [&](int a, int b) {
        auto cc = complement_of(a, b);
        return ph.phi2(a, b, a) - half * (ph.phi2(a, cc[0], a) + ph.phi2(a, cc[1], a));
    };
    // (E_ki + E_kj) d/dk and d2/dk2:  E_ki + E_kj = phi_ki/2 + phi_kj/2 - phi_kk'
    auto EE1 = [&](int k, int kp) {
        return half * (ph.phi1(k, i, k) + ph.phi1(k, j, k)) - ph.phi1(k, kp, k);
    };
    auto EE2 = [&](int k, int kp) {
        return half * (ph.phi2(k, i, k) + ph.phi2(k, j, k)) - ph.phi2(k, kp, k);
    };

    T b = half * ph.g_minus2[i] * E1(i, j) * ph.Fp[i] +
          half * ph.g_minus2[j] * E1(j, i) * ph.Fp[j];
    b = b - half * ph.g_minus2[k1] * EE1(k1, k2) * ph.Fp[k1];
    b = b - half * ph.g_minus2[k2] * EE1(k2, k1) * ph.Fp[k2];

    b = b + ph.g_minus2[i] *
                (E2(i, j) - ph.phi1(i, j, i) * (ph.phi1(i, k1, i) + ph.phi1(i, k2, i)) +
                 two * ph.phi1(i, k1, i) * ph.phi1(i, k2, i)) *
                ph.F[i];
    b = b + ph.g_minus2[j] *
                (E2(j, i) - ph.phi1(i, j, j) * (ph.phi1(j, k1, j) + ph.phi1(j, k2, j)) +
                 two * ph.phi1(j, k1, j) * ph.phi1(j, k2, j)) *
                ph.F[j];

    for (auto [k, kp] : {std::array<int, 2>{k1, k2}, std::array<int, 2>{k2, k1}}) {
        // sum over l != r, both != k, of phi_kl,k phi_kr,k
        T s{};
        T sq{};
        for (int l = 0; l < 4; ++l) {
            if (l == k) continue;
            T d = ph.phi1(k, l, k);
            s = s + d;
            sq = sq + d * d;
        }
        T cross = s * s - sq;
        b = b - ph.g_minus2[k] *
                    (EE2(k, kp) - three * ph.phi1(i, k, k) * ph.phi1(j, k, k) + half * cross) *
                    ph.F[k];
    }
    T third = ring_traits<T>::from_rational(Rational(-1, 3));
    return third * ph.M2 * b;
}

template <class T>
T lambda_ijk(const PhiPoint<T>& ph, int i, int j, int k) {
    if (i == j || i == k || j == k) throw SpecError("lambda needs three distinct indices");
    return (ph.phi1(j, k, k) - ph.phi1(i, k, k)) * ph.phi2m(i, j);
}

template <class T>
T lambda_cyclic_residual(const PhiPoint<T>& ph, int i, int j, int k) {
    T a = lambda_ijk(ph, i, j, k);
    T b = lambda_ijk(ph, j, k, i);
    T c = lambda_ijk(ph, k, i, j);
    T r1 = ring_abs(a - b), r2 = ring_abs(b - c);
    return r1 < r2 ? r2 : r1;
}

template <class T>
T derivative_identity_residual(const PhiPoint<T>& ph, int i, int j, int k) {
    std::array<std::array<Jet1<T>, 2>, 6> d1;
    for (int pid = 0; pid < 6; ++pid) {
        d1[pid][0] = jet1_of_derivative(ph.phi[pid], kPairs[pid][0]);
        d1[pid][1] = jet1_of_derivative(ph.phi[pid], kPairs[pid][1]);
    }
    Jet1<T> closed = ckikj_closed_from(d1, i, j, k);
    T half = ring_traits<T>::from_rational(Rational(1, 2));
    T lam = half * (lambda_ijk(ph, k, i, j) + lambda_ijk(ph, k, j, i));
    return ring_abs(closed.g[k] - lam);
}

template <class T>
PhiPoint<T> phi_point_case_iv(const Rational& m, const std::array<std::vector<Rational>, 4>& F,
                              const Rational& conformal_value, const std::array<T, 4>& p) {
    Rational two_m = m * Rational(2);
    PhiPoint<T> ph;
    ph.values_ok = false;
    T mv = ring_traits<T>::from_rational(m);
    for (int pid = 0; pid < 6; ++pid) {
        int i = kPairs[pid][0], j = kPairs[pid][1];
        T d = p[i] - p[j];
        if (is_ring_zero(d)) throw DomainError("coordinate collision");
        T q = mv / d;
        Jet2<T>& jet = ph.phi[pid];
        jet.g[i] = q;
        jet.g[j] = -q;
        T q2 = q / d;
        jet.h(i, i) = -q2;
        jet.h(j, j) = -q2;
        jet.h(i, j) = q2;
    }
    auto poly_val = [](const std::vector<Rational>& c, const T& x) {
        T acc{};
        for (std::size_t a = c.size(); a-- > 0;)
            acc = acc * x + ring_traits<T>::from_rational(c[a]);
        return acc;
    };
    auto poly_dval = [](const std::vector<Rational>& c, const T& x) {
        T acc{};
        for (std::size_t a = c.size(); a-- > 1;)
            acc = acc * x + ring_traits<T>::from_rational(c[a] * Rational(static_cast<long>(a)));
        return acc;
    };
    for (int i = 0; i < 4; ++i) {
        ph.F[i] = poly_val(F[i], p[i]);
        ph.Fp[i] = poly_dval(F[i], p[i]);
    }
    // G_k^{-2} = P_k^{-2m}, the signed anchored product
    if (!two_m.is_integer() && ring_traits<T>::exact) {
        ph.g_ok = false;  // only phi derivatives are exact for such m
    } else {
        long e = two_m.is_integer() ? two_m.to_long() : 0;
        for (int k = 0; k < 4; ++k) {
            T prod = ring_traits<T>::from_long(1);
            for (int l = 0; l < 4; ++l)
                if (l != k) prod = prod * (p[k] - p[l]);
            if (two_m.is_integer()) {
                ph.g_minus2[k] = ring_pow_int(prod, -e);
            } else {
                ph.g_minus2[k] = ring_pow_rat(ring_abs(prod), -two_m);
            }
        }
    }
    T mc = ring_traits<T>::from_rational(conformal_value);
    ph.M2 = mc * mc;
    return ph;
}

extern template PhiPoint<double> phi_point_case_iv<double>(
    const Rational&, const std::array<std::vector<Rational>, 4>&, const Rational&,
    const std::array<double, 4>&);
extern template PhiPoint<Rational> phi_point_case_iv<Rational>(
    const Rational&, const std::array<std::vector<Rational>, 4>&, const Rational&,
    const std::array<Rational, 4>&);

}  // namespace bw
