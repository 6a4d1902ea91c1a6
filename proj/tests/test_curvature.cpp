#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "binaryweyl/curvature.hpp"
#include "binaryweyl/errors.hpp"
#include "binaryweyl/metric.hpp"
#include "binaryweyl/sampling.hpp"
#include "corpus.hpp"

using namespace bw;
using bw::testing::random_binary_spec;

namespace {

std::string specs_dir() {
    const char* d = std::getenv("BWM_SPECS");
    return d ? d : "specs";
}

}  // namespace

TEST_CASE("euclidean curvature vanishes identically") {
    MetricSpec s = make_euclidean();
    auto b = curvature(s, Point4{0.4, -0.9, 1.7, 0.2});
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            CHECK(b.ricci[i][j] == 0.0);
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    CHECK(b.gamma[i][j][k].v == 0.0);
                    CHECK(b.riemann_down[i][j][k][l] == 0.0);
                    CHECK(b.weyl_down[i][j][k][l] == 0.0);
                }
        }
    CHECK(b.scalar == 0.0);
    CHECK(riemann_norm(s, Point4{0.4, -0.9, 1.7, 0.2}) == 0.0);
}

TEST_CASE("polar-style metric has the textbook Christoffels") {
    // g = diag(1, x1^2, 1, 1) as a binary spec: phi12 = ln|x1|, F1 = x1^2
    MetricSpec s;
    s.family = Family::BinaryGeneral;
    s.phi[pair_index(0, 1)] = parse_expr("ln(abs(x1))");
    for (int p = 1; p < 6; ++p) s.phi[p] = parse_expr("0");
    s.F[0] = FComponent::from_expr(parse_expr("x1^2"));
    for (int i = 1; i < 4; ++i) s.F[i] = FComponent::from_poly({Rational(1)}, i + 1);
    s.conformal = parse_expr("1");
    s.validate();

    Point4 p{2.0, 0.3, -0.5, 1.0};
    CHECK(nearly_equal(eval(s.component_expr(0), p), 1.0));
    CHECK(nearly_equal(eval(s.component_expr(1), p), 4.0));

    auto b = curvature(s, p);
    CHECK(nearly_equal(b.gamma[1][0][1].v, 0.5));   // Gamma^2_{12} = 1/x1
    CHECK(nearly_equal(b.gamma[0][1][1].v, -2.0));  // Gamma^1_{22} = -x1
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l)
                    CHECK(std::fabs(b.riemann_down[i][j][k][l]) < 1e-13);
}

TEST_CASE("sphere times plane has scalar curvature 2") {
    MetricSpec s = load_bwm_file(specs_dir() + "/sphere_product.bwm");
    for (const auto& p : sample_points(s, 10, 5)) {
        auto b = curvature(s, p);
        CHECK(nearly_equal(b.scalar, 2.0, 1e-10, 1e-10));
    }
}

TEST_CASE("lemma case c is conformally flat at the engine level") {
    MetricSpec s = load_bwm_file(specs_dir() + "/lemma_c.bwm");
    for (const auto& p : sample_points(s, 20, 9)) {
        auto b = curvature(s, p);
        CHECK(max_frame_weyl(b) < 1e-10);
    }
}

TEST_CASE("christoffels match the finite-difference oracle") {
    MetricSpec s = random_binary_spec(1);
    auto pts = sample_points(s, 5, 17);
    for (const auto& p : pts) {
        auto eng = curvature(s, p);
        auto fd = fd_oracle_curvature(s, p, 1e-4);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                for (int k = 0; k < 4; ++k)
                    CHECK(std::fabs(eng.gamma[i][j][k].v - fd.gamma[i][j][k].v) <= 1e-6);
    }
}

TEST_CASE("engine matches the finite-difference oracle at h = 1e-4") {
    for (std::uint64_t seed : {2, 3, 4}) {
        MetricSpec s = random_binary_spec(seed);
        for (const auto& p : sample_points(s, 3, seed * 7 + 1)) {
            auto eng = curvature(s, p);
            auto fd = fd_oracle_curvature(s, p, 1e-4);
            CHECK(fd_engine_deviation(eng, fd) <= 1e-5);
        }
    }
}

TEST_CASE("oracle error shrinks at second order") {
    MetricSpec s = random_binary_spec(5);
    Point4 p = sample_points(s, 1, 23).front();
    auto eng = curvature(s, p);
    double dc = fd_engine_deviation(eng, fd_oracle_curvature(s, p, 1e-3));
    double df = fd_engine_deviation(eng, fd_oracle_curvature(s, p, 5e-4));
    CHECK(dc / df > 2.5);
    CHECK(dc / df < 6.5);
}

TEST_CASE("riemann and weyl invariants hold on the corpus") {
    for (std::uint64_t seed : {6, 7, 8, 9}) {
        MetricSpec s = random_binary_spec(seed);
        for (const auto& p : sample_points(s, 3, seed + 100)) {
            auto b = curvature(s, p);
            CHECK(riemann_symmetry_residual(b) <= 1e-9);
            CHECK(weyl_trace_residual(b) <= 1e-9);
            for (const auto& pr : kPairs) {
                int i = kPairs[0][0];
                (void)i;
                // C^{ij}_{ij} = g^{ii} g^{jj} C_{ijij} by definition here
                double w = b.weyl_mixed22(pr[0], pr[1]);
                double direct = b.weyl_down[pr[0]][pr[1]][pr[0]][pr[1]] *
                                b.ginv[pr[0]] * b.ginv[pr[1]];
                CHECK(nearly_equal(w, direct, 1e-15, 1e-14));
            }
        }
    }
}

TEST_CASE("all-distinct mixed Weyl components vanish identically") {
    for (std::uint64_t seed : {10, 11}) {
        MetricSpec s = random_binary_spec(seed);
        for (const auto& p : sample_points(s, 5, seed + 3)) {
            auto b = curvature(s, p);
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j)
                    for (int k = 0; k < 4; ++k)
                        for (int l = 0; l < 4; ++l) {
                            if (i == j || i == k || i == l || j == k || j == l || k == l)
                                continue;
                            CHECK(b.weyl_mixed13(i, j, k, l) == 0.0);  // exactly
                        }
        }
    }
}

TEST_CASE("mixed (1,3) Weyl is conformally invariant") {
    MetricSpec s1 = random_binary_spec(12);
    MetricSpec s2 = random_binary_spec(12);
    s2.conformal = parse_expr("exp(x1*x2)");
    for (const auto& p : sample_points(s1, 10, 31)) {
        auto a = curvature(s1, p);
        auto b = curvature(s2, p);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                for (int k = 0; k < 4; ++k)
                    for (int l = 0; l < 4; ++l)
                        CHECK(nearly_equal(a.weyl_mixed13(i, j, k, l),
                                           b.weyl_mixed13(i, j, k, l), 1e-10, 1e-9));
    }
}

TEST_CASE("exact rational engine agrees with its own symmetries") {
    std::array<FComponent, 4> F;
    for (int i = 0; i < 4; ++i)
        F[i] = FComponent::from_poly({Rational(1), Rational(1, 3)}, i + 1);
    MetricSpec s = make_case_iv(Rational(1), F);
    Point4q p{Rational(4), Rational(2), Rational(1), Rational(0)};
    auto b = curvature<Rational>(s, p);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    CHECK(b.riemann_down[i][j][k][l] == -b.riemann_down[j][i][k][l]);
                    CHECK(b.riemann_down[i][j][k][l] == b.riemann_down[k][l][i][j]);
                    bool distinct = i != j && i != k && i != l && j != k && j != l && k != l;
                    if (distinct) CHECK(b.weyl_down[i][j][k][l].is_zero());
                }
    // trace-free exactly
    for (int j = 0; j < 4; ++j)
        for (int l = 0; l < 4; ++l) {
            Rational tr;
            for (int i = 0; i < 4; ++i) tr += b.ginv[i] * b.weyl_down[i][j][i][l];
            CHECK(tr.is_zero());
        }
}

TEST_CASE("flatness of the truncated sextic family") {
    MetricSpec s = load_bwm_file(specs_dir() + "/met_half_quartic.bwm");
    for (const auto& p : sample_points(s, 10, 41)) CHECK(riemann_norm(s, p) <= 1e-9);

    MetricSpec d = load_bwm_file(specs_dir() + "/lemma_d.bwm");  // a6 = 1
    double worst = 0;
    for (const auto& p : sample_points(d, 10, 43)) worst = std::fmax(worst, riemann_norm(d, p));
    CHECK(worst > 1e-3);
}

TEST_CASE("degenerate component raises a domain error") {
    MetricSpec s = make_euclidean();
    s.F[2] = FComponent::from_expr(parse_expr("x3"));  // vanishes at x3 = 0
    CHECK_THROWS_AS(curvature(s, Point4{0.5, 0.25, 0.0, -0.75}), DomainError);
}
