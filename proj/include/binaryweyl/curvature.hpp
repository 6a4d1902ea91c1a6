#pragma once

#include <array>
#include <cmath>

#include "binaryweyl/jets.hpp"
#include "binaryweyl/metric.hpp"

namespace bw {

template <class T>
using Tensor4 = std::array<std::array<std::array<std::array<T, 4>, 4>, 4>, 4>;

// Everything the pipeline produces at one point. Index conventions:
//   R^i_{jkl} = d_k Gamma^i_{lj} - d_l Gamma^i_{kj}
//               + Gamma^i_{km} Gamma^m_{lj} - Gamma^i_{lm} Gamma^m_{kj}
//   Ricci_{jl} = R^i_{jil},  scalar = g^{jl} Ricci_{jl}
//   C_{ijkl} = R_{ijkl} - (g_{ik}R_{jl} - g_{il}R_{jk} + g_{jl}R_{ik} - g_{jk}R_{il})/2
//              + scalar (g_{ik}g_{jl} - g_{il}g_{jk})/6
template <class T>
struct CurvatureBundle {
    std::array<T, 4> g{};                           // diagonal components
    std::array<T, 4> ginv{};                        // 1/g_ii
    std::array<std::array<std::array<Jet1<T>, 4>, 4>, 4> gamma{};  // Gamma^i_{jk}
    Tensor4<T> riemann_down{};
    std::array<std::array<T, 4>, 4> ricci{};
    T scalar{};
    Tensor4<T> weyl_down{};

    T weyl_mixed13(int i, int j, int k, int l) const {
        return ginv[i] * weyl_down[i][j][k][l];
    }
    // C^{ij}_{ij}, no sum.
    T weyl_mixed22(int i, int j) const {
        return ginv[i] * ginv[j] * weyl_down[i][j][i][j];
    }
    // C^k_{ikj} = g^{kk} C_{kikj}.
    T ckikj(int i, int j, int k) const { return ginv[k] * weyl_down[k][i][k][j]; }
};

// Christoffel symbols of a diagonal metric, with their first derivatives:
//   Gamma^i_{ii} = d_i g_ii / (2 g_ii)
//   Gamma^i_{ij} = d_j g_ii / (2 g_ii)
//   Gamma^i_{jj} = -d_i g_jj / (2 g_ii)        (i != j; all others vanish)
template <class T>
std::array<std::array<std::array<Jet1<T>, 4>, 4>, 4> christoffel_jets(
    const std::array<Jet2<T>, 4>& gj) {
    std::array<std::array<std::array<Jet1<T>, 4>, 4>, 4> gamma{};
    T half = ring_traits<T>::from_rational(Rational(1, 2));
    for (int i = 0; i < 4; ++i) {
        Jet1<T> inv = Jet1<T>::constant(half) / jet1_of_value(gj[i]);
        for (int j = 0; j < 4; ++j) {
            if (j == i) {
                gamma[i][i][i] = inv * jet1_of_derivative(gj[i], i);
            } else {
                Jet1<T> t = inv * jet1_of_derivative(gj[i], j);
                gamma[i][i][j] = t;
                gamma[i][j][i] = t;
                gamma[i][j][j] = -(inv * jet1_of_derivative(gj[j], i));
            }
        }
    }
    return gamma;
}

template <class T>
CurvatureBundle<T> curvature_from_jets(const std::array<Jet2<T>, 4>& gj) {
    CurvatureBundle<T> b;
    T one = ring_traits<T>::from_long(1);
    for (int i = 0; i < 4; ++i) {
        b.g[i] = gj[i].v;
        if (is_ring_zero(b.g[i])) throw DomainError("degenerate metric component");
        b.ginv[i] = one / b.g[i];
    }
    b.gamma = christoffel_jets(gj);
    const auto& ga = b.gamma;
    Tensor4<T> rup{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    T s = ga[i][l][j].g[k] - ga[i][k][j].g[l];
                    for (int mm = 0; mm < 4; ++mm)
                        s = s + ga[i][k][mm].v * ga[mm][l][j].v -
                            ga[i][l][mm].v * ga[mm][k][j].v;
                    rup[i][j][k][l] = s;
                }
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) b.riemann_down[i][j][k][l] = b.g[i] * rup[i][j][k][l];
    for (int j = 0; j < 4; ++j)
        for (int l = 0; l < 4; ++l) {
            T s{};
            for (int i = 0; i < 4; ++i) s = s + rup[i][j][i][l];
            b.ricci[j][l] = s;
        }
    T scal{};
    for (int j = 0; j < 4; ++j) scal = scal + b.ginv[j] * b.ricci[j][j];
    b.scalar = scal;
    T half = ring_traits<T>::from_rational(Rational(1, 2));
    T sixth = ring_traits<T>::from_rational(Rational(1, 6));
    auto gd = [&](int i, int j) { return i == j ? b.g[i] : T{}; };
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    T trace = gd(i, k) * b.ricci[j][l] - gd(i, l) * b.ricci[j][k] +
                              gd(j, l) * b.ricci[i][k] - gd(j, k) * b.ricci[i][l];
                    T gg = gd(i, k) * gd(j, l) - gd(i, l) * gd(j, k);
                    b.weyl_down[i][j][k][l] =
                        b.riemann_down[i][j][k][l] - half * trace + sixth * scal * gg;
                }
    return b;
}

template <class T>
CurvatureBundle<T> curvature(const MetricSpec& spec, const std::array<T, 4>& p) {
    return curvature_from_jets(metric_jets(spec, p));
}

// Scale-normalized flatness residual: sum R_{ijkl}^2 / sum g_ii^2.
inline double riemann_norm(const MetricSpec& spec, const Point4& p) {
    auto b = curvature(spec, p);
    double num = 0, den = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) num += b.riemann_down[i][j][k][l] * b.riemann_down[i][j][k][l];
    for (int i = 0; i < 4; ++i) den += b.g[i] * b.g[i];
    return num / den;
}

// ---------------- residual diagnostics (numeric ring) ----------------------

// Orthonormal-frame magnitude of a fourth-rank down tensor component:
// |T_{ijkl}| / sqrt|g_ii g_jj g_kk g_ll|. Robust to the wild component
// scalings of the iv families.
inline double frame_component(const CurvatureBundle<double>& b, const Tensor4<double>& t, int i,
                              int j, int k, int l) {
    double scale = std::sqrt(std::fabs(b.g[i] * b.g[j] * b.g[k] * b.g[l]));
    return std::fabs(t[i][j][k][l]) / scale;
}

inline double max_frame_weyl(const CurvatureBundle<double>& b) {
    double m = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l)
                    m = std::fmax(m, frame_component(b, b.weyl_down, i, j, k, l));
    return m;
}

inline double max_frame_riemann(const CurvatureBundle<double>& b) {
    double m = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l)
                    m = std::fmax(m, frame_component(b, b.riemann_down, i, j, k, l));
    return m;
}

// Max violation of the Riemann pair symmetries and first Bianchi identity,
// in frame-normalized units.
double riemann_symmetry_residual(const CurvatureBundle<double>& b);
// Max |g^{ik} C_{ijkl}| over all traces, frame-normalized.
double weyl_trace_residual(const CurvatureBundle<double>& b);

// Finite-difference oracle: uses metric VALUES only; every derivative is a
// central difference of step h. Test-side ground truth for the jet engine.
CurvatureBundle<double> fd_oracle_curvature(const MetricSpec& spec, const Point4& p, double h);

// Largest |engine - oracle| entry across Riemann, Ricci, scalar and Weyl,
// normalized by max(1, |engine entry|).
double fd_engine_deviation(const CurvatureBundle<double>& engine,
                           const CurvatureBundle<double>& oracle);

}  // namespace bw
