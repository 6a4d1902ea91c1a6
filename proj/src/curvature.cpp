#include "binaryweyl/curvature.hpp"

#include <cmath>

namespace bw {

double riemann_symmetry_residual(const CurvatureBundle<double>& b) {
    const auto& R = b.riemann_down;
    double worst = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    double scale = std::sqrt(std::fabs(b.g[i] * b.g[j] * b.g[k] * b.g[l]));
                    auto norm = [&](double x) { return std::fabs(x) / scale; };
                    worst = std::fmax(worst, norm(R[i][j][k][l] + R[j][i][k][l]));
                    worst = std::fmax(worst, norm(R[i][j][k][l] + R[i][j][l][k]));
                    worst = std::fmax(worst, norm(R[i][j][k][l] - R[k][l][i][j]));
                    worst = std::fmax(worst,
                                      norm(R[i][j][k][l] + R[i][k][l][j] + R[i][l][j][k]));
                }
    return worst;
}

double weyl_trace_residual(const CurvatureBundle<double>& b) {
    double worst = 0;
    // g^{ik} C_{ijkl} over all (j,l); diagonal metric so the sum collapses.
    for (int j = 0; j < 4; ++j)
        for (int l = 0; l < 4; ++l) {
            double tr = 0;
            for (int i = 0; i < 4; ++i) tr += b.ginv[i] * b.weyl_down[i][j][i][l];
            double scale = std::sqrt(std::fabs(b.g[j] * b.g[l]));
            worst = std::fmax(worst, std::fabs(tr) / scale);
        }
    return worst;
}

namespace {

using G4 = std::array<double, 4>;

struct ComponentEvals {
    std::array<ExprPtr, 4> expr;

    G4 values(const Point4& q) const {
        G4 g;
        for (int i = 0; i < 4; ++i) g[i] = eval(expr[i], q);
        return g;
    }
};

// First derivatives of all metric components at q via central differences.
std::array<G4, 4> fd_dg(const ComponentEvals& comps, const Point4& q, double h) {
    std::array<G4, 4> dg{};  // dg[k][i] = d_k g_ii
    for (int k = 0; k < 4; ++k) {
        Point4 qp = q, qm = q;
        qp[k] += h;
        qm[k] -= h;
        G4 gp = comps.values(qp), gm = comps.values(qm);
        for (int i = 0; i < 4; ++i) dg[k][i] = (gp[i] - gm[i]) / (2 * h);
    }
    return dg;
}

using Gamma3 = std::array<std::array<std::array<double, 4>, 4>, 4>;

Gamma3 fd_gamma(const ComponentEvals& comps, const Point4& q, double h) {
    G4 g = comps.values(q);
    auto dg = fd_dg(comps, q, h);
    Gamma3 ga{};
    for (int i = 0; i < 4; ++i) {
        double inv = 0.5 / g[i];
        for (int j = 0; j < 4; ++j) {
            if (j == i) {
                ga[i][i][i] = inv * dg[i][i];
            } else {
                ga[i][i][j] = ga[i][j][i] = inv * dg[j][i];
                ga[i][j][j] = -inv * dg[i][j];
            }
        }
    }
    return ga;
}

}  // namespace

CurvatureBundle<double> fd_oracle_curvature(const MetricSpec& spec, const Point4& p, double h) {
    ComponentEvals comps;
    for (int i = 0; i < 4; ++i) comps.expr[i] = spec.component_expr(i);

    CurvatureBundle<double> b;
    G4 g = comps.values(p);
    for (int i = 0; i < 4; ++i) {
        b.g[i] = g[i];
        if (g[i] == 0) throw DomainError("degenerate metric component");
        b.ginv[i] = 1.0 / g[i];
    }
    Gamma3 ga = fd_gamma(comps, p, h);
    // d Gamma by central differences of the FD Christoffels
    std::array<Gamma3, 4> dga{};
    for (int k = 0; k < 4; ++k) {
        Point4 qp = p, qm = p;
        qp[k] += h;
        qm[k] -= h;
        Gamma3 gp = fd_gamma(comps, qp, h), gm = fd_gamma(comps, qm, h);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                for (int l = 0; l < 4; ++l) dga[k][i][j][l] = (gp[i][j][l] - gm[i][j][l]) / (2 * h);
    }
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int l = 0; l < 4; ++l) {
                b.gamma[i][j][l].v = ga[i][j][l];
                for (int k = 0; k < 4; ++k) b.gamma[i][j][l].g[k] = dga[k][i][j][l];
            }
    Tensor4<double> rup{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    double s = dga[k][i][l][j] - dga[l][i][k][j];
                    for (int m = 0; m < 4; ++m)
                        s += ga[i][k][m] * ga[m][l][j] - ga[i][l][m] * ga[m][k][j];
                    rup[i][j][k][l] = s;
                }
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) b.riemann_down[i][j][k][l] = g[i] * rup[i][j][k][l];
    for (int j = 0; j < 4; ++j)
        for (int l = 0; l < 4; ++l) {
            double s = 0;
            for (int i = 0; i < 4; ++i) s += rup[i][j][i][l];
            b.ricci[j][l] = s;
        }
    b.scalar = 0;
    for (int j = 0; j < 4; ++j) b.scalar += b.ginv[j] * b.ricci[j][j];
    auto gd = [&](int i, int j) { return i == j ? g[i] : 0.0; };
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    double trace = gd(i, k) * b.ricci[j][l] - gd(i, l) * b.ricci[j][k] +
                                   gd(j, l) * b.ricci[i][k] - gd(j, k) * b.ricci[i][l];
                    double gg = gd(i, k) * gd(j, l) - gd(i, l) * gd(j, k);
                    b.weyl_down[i][j][k][l] =
                        b.riemann_down[i][j][k][l] - 0.5 * trace + b.scalar / 6.0 * gg;
                }
    return b;
}

double fd_engine_deviation(const CurvatureBundle<double>& e, const CurvatureBundle<double>& o) {
    double worst = 0;
    auto cmp = [&](double a, double b) {
        worst = std::fmax(worst, std::fabs(a - b) / std::fmax(1.0, std::fabs(a)));
    };
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    cmp(e.riemann_down[i][j][k][l], o.riemann_down[i][j][k][l]);
                    cmp(e.weyl_down[i][j][k][l], o.weyl_down[i][j][k][l]);
                }
    for (int j = 0; j < 4; ++j)
        for (int l = 0; l < 4; ++l) cmp(e.ricci[j][l], o.ricci[j][l]);
    cmp(e.scalar, o.scalar);
    return worst;
}

}  // namespace bw
