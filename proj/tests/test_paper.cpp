#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "binaryweyl/curvature.hpp"
#include "binaryweyl/errors.hpp"
#include "binaryweyl/paper_formulas.hpp"
#include "binaryweyl/sampling.hpp"
#include "corpus.hpp"

using namespace bw;
using bw::testing::random_binary_spec;

namespace {

MetricSpec constant_phi12_spec(const Rational& c) {
    MetricSpec s;
    s.family = Family::BinaryGeneral;
    for (int p = 0; p < 6; ++p) s.phi[p] = Expr::constant(Rational(0));
    s.phi[pair_index(0, 1)] = Expr::constant(c);
    for (int i = 0; i < 4; ++i) s.F[i] = FComponent::from_poly({Rational(1)}, i + 1);
    s.conformal = Expr::constant(Rational(1));
    s.validate();
    return s;
}

std::array<std::vector<Rational>, 4> const_polys(std::array<long, 4> c) {
    std::array<std::vector<Rational>, 4> F;
    for (int i = 0; i < 4; ++i) F[i] = {Rational(c[i])};
    return F;
}

}  // namespace

TEST_CASE("E_ij on constant phi") {
    MetricSpec zero = constant_phi12_spec(Rational(0));
    auto ph0 = phi_point(zero, Point4{0.3, -0.2, 0.9, 1.4});
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (i != j) CHECK(e_ij(ph0, i, j).v == 0.0);

    MetricSpec s = constant_phi12_spec(Rational(7, 10));
    auto ph = phi_point(s, Point4{0.3, -0.2, 0.9, 1.4});
    CHECK(nearly_equal(e_ij(ph, 0, 1).v, 0.7));
    CHECK(nearly_equal(e_ij(ph, 0, 2).v, -0.35));  // E_13 = -c/2
}

TEST_CASE("E_12 for case iv with m = 1 at (4,2,1,0)") {
    std::array<FComponent, 4> F;
    for (int i = 0; i < 4; ++i) F[i] = FComponent::from_poly({Rational(1)}, i + 1);
    MetricSpec s = make_case_iv(Rational(1), F);
    auto ph = phi_point(s, Point4{4, 2, 1, 0});
    double expect = std::log(2.0) - 0.5 * (std::log(3.0) + std::log(4.0));
    CHECK(nearly_equal(e_ij(ph, 0, 1).v, expect, 1e-14, 1e-12));
}

TEST_CASE("ckikj closed form: zeros and engine agreement") {
    MetricSpec zero = constant_phi12_spec(Rational(0));
    auto ph0 = phi_point(zero, Point4{0.1, 0.5, -0.6, 1.0});
    CHECK(ckikj_closed(ph0, 0, 1, 2) == 0.0);

    // Table 1 row i instance vanishes at every admissible point
    Table1Functions fns;
    fns.U[0] = parse_expr("x1^2");
    fns.U[1] = parse_expr("sin(x2)");
    fns.U[2] = parse_expr("exp(x3)");
    fns.U[3] = parse_expr("x4");
    fns.free12 = parse_expr("x1*x2^2");
    fns.free34 = parse_expr("cos(x3)*x4");
    std::array<FComponent, 4> F;
    for (int i = 0; i < 4; ++i) F[i] = FComponent::from_poly({Rational(1)}, i + 1);
    MetricSpec t1 = make_table1(Family::Table1i, fns, F);
    t1.domain.box = {Box{-1.4, 1.4}, Box{-1.4, 1.4}, Box{-1.4, 1.4}, Box{-1.4, 1.4}};
    for (const auto& p : sample_points(t1, 20, 19)) {
        auto ph = phi_point(t1, p);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                for (int k = 0; k < 4; ++k) {
                    if (i == j || j == k || i == k) continue;
                    CHECK(std::fabs(ckikj_closed(ph, i, j, k)) < 1e-10);
                }
    }

    // engine cross-check on a random binary spec: the frozen factor is 1
    MetricSpec s = random_binary_spec(3);
    for (const auto& p : sample_points(s, 10, 29)) {
        auto ph = phi_point(s, p);
        auto b = curvature(s, p);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                for (int k = 0; k < 4; ++k) {
                    if (i == j || j == k || i == k) continue;
                    CHECK(nearly_equal(b.ckikj(i, j, k), ckikj_closed(ph, i, j, k), 1e-12,
                                       1e-9));
                }
    }
}

TEST_CASE("cijij closed form: zeros and engine agreement") {
    MetricSpec zero = constant_phi12_spec(Rational(0));
    auto ph0 = phi_point(zero, Point4{0.1, 0.5, -0.6, 1.0});
    for (const auto& pr : kPairs) CHECK(cijij_closed(ph0, pr[0], pr[1]) == 0.0);

    std::array<FComponent, 4> Fc{FComponent::from_expr(parse_expr("1 + x1^2")),
                                 FComponent::from_expr(parse_expr("exp(x2)")),
                                 FComponent::from_expr(parse_expr("2 + sin(x3)")),
                                 FComponent::from_poly({Rational(2)}, 4)};
    MetricSpec c = make_lemma_family_c(Fc);
    for (const auto& p : sample_points(c, 15, 37)) {
        auto ph = phi_point(c, p);
        for (const auto& pr : kPairs)
            CHECK(std::fabs(cijij_closed(ph, pr[0], pr[1])) < 1e-10);
    }

    for (std::uint64_t seed : {4, 5}) {
        MetricSpec s = random_binary_spec(seed);
        s.conformal = parse_expr("exp(0.2*x1) + 0.1*x3");
        for (const auto& p : sample_points(s, 8, seed + 50)) {
            auto ph = phi_point(s, p);
            auto b = curvature(s, p);
            for (const auto& pr : kPairs)
                CHECK(nearly_equal(b.weyl_mixed22(pr[0], pr[1]),
                                   cijij_closed(ph, pr[0], pr[1]), 1e-12, 1e-8));
        }
    }
}

TEST_CASE("single convention factor across points, metrics and indices") {
    // where |closed| is clearly nonzero, engine/closed stays 1 to 1e-8
    for (std::uint64_t seed : {6, 7, 8}) {
        MetricSpec s = random_binary_spec(seed);
        for (const auto& p : sample_points(s, 5, seed + 60)) {
            auto ph = phi_point(s, p);
            auto b = curvature(s, p);
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j)
                    for (int k = 0; k < 4; ++k) {
                        if (i == j || j == k || i == k) continue;
                        double clo = ckikj_closed(ph, i, j, k);
                        if (std::fabs(clo) > 1e-6)
                            CHECK(std::fabs(b.ckikj(i, j, k) / clo - 1.0) < 1e-8);
                    }
            for (const auto& pr : kPairs) {
                double clo = cijij_closed(ph, pr[0], pr[1]);
                if (std::fabs(clo) > 1e-6)
                    CHECK(std::fabs(b.weyl_mixed22(pr[0], pr[1]) / clo - 1.0) < 1e-8);
            }
        }
    }
}

TEST_CASE("lambda values and antisymmetry") {
    MetricSpec sep = constant_phi12_spec(Rational(0));
    auto ph0 = phi_point(sep, Point4{0.2, 0.8, -0.4, 1.1});
    CHECK(lambda_ijk(ph0, 0, 1, 2) == 0.0);

    std::array<FComponent, 4> F;
    for (int i = 0; i < 4; ++i) F[i] = FComponent::from_poly({Rational(1)}, i + 1);
    MetricSpec iv = make_case_iv(Rational(1), F);
    auto ph = phi_point(iv, Point4{4, 2, 1, 0});
    CHECK(nearly_equal(lambda_ijk(ph, 0, 1, 2), -1.0 / 6.0, 1e-14, 1e-12));
    // exact antisymmetry over the rational construction
    auto phq = phi_point_case_iv<Rational>(
        Rational(1), {std::vector<Rational>{Rational(1)}, {Rational(1)}, {Rational(1)},
                      {Rational(1)}},
        Rational(1), Point4q{Rational(4), Rational(2), Rational(1), Rational(0)});
    CHECK(lambda_ijk(phq, 0, 1, 2) == -lambda_ijk(phq, 1, 0, 2));
    CHECK(lambda_ijk(phq, 0, 1, 2) == Rational(-1, 6));
    CHECK(lambda_cyclic_residual(phq, 0, 1, 2).is_zero());
}

TEST_CASE("lambda cyclic residual flags a structural violation") {
    MetricSpec s;
    s.family = Family::BinaryGeneral;
    s.phi[pair_index(0, 1)] = parse_expr("x1^2*x2^2");
    s.phi[pair_index(0, 2)] = parse_expr("x1 + 2*x3");
    s.phi[pair_index(1, 2)] = parse_expr("x2 + x3");
    s.phi[pair_index(0, 3)] = parse_expr("0");
    s.phi[pair_index(1, 3)] = parse_expr("0");
    s.phi[pair_index(2, 3)] = parse_expr("0");
    for (int i = 0; i < 4; ++i) s.F[i] = FComponent::from_poly({Rational(1)}, i + 1);
    s.conformal = parse_expr("1");
    s.validate();
    auto ph = phi_point(s, Point4{1.0, 1.0 - 0.25, 0.5, -0.75});
    CHECK(lambda_cyclic_residual(ph, 0, 1, 2) > 1e-3);
}

TEST_CASE("derivative identity residual") {
    MetricSpec sep = constant_phi12_spec(Rational(3, 2));
    auto ph0 = phi_point(sep, Point4{0.2, 0.8, -0.4, 1.1});
    CHECK(derivative_identity_residual(ph0, 0, 1, 2) == 0.0);

    for (std::uint64_t seed : {9, 10}) {
        MetricSpec s = random_binary_spec(seed);
        for (const auto& p : sample_points(s, 5, seed + 70)) {
            auto ph = phi_point(s, p);
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j)
                    for (int k = 0; k < 4; ++k) {
                        if (i == j || j == k || i == k) continue;
                        CHECK(derivative_identity_residual(ph, i, j, k) <= 1e-10);
                    }
        }
    }

    std::array<FComponent, 4> F;
    for (int i = 0; i < 4; ++i) F[i] = FComponent::from_poly({Rational(1)}, i + 1);
    MetricSpec iv = make_case_iv(Rational(1), F);
    for (const auto& p : sample_points(iv, 5, 71)) {
        auto ph = phi_point(iv, p);
        CHECK(derivative_identity_residual(ph, 0, 1, 2) <= 1e-10);
        CHECK(derivative_identity_residual(ph, 2, 3, 0) <= 1e-10);
    }
}

TEST_CASE("L quantity") {
    Point4q p{Rational(4), Rational(2), Rational(1), Rational(0)};
    CHECK(L_quantity(Rational(-1), const_polys({1, 2, 3, -6}), p).is_zero());
    CHECK(L_quantity(Rational(-1), const_polys({1, 1, 1, 1}), p) == Rational(4));

    std::vector<Rational> q{Rational(1), Rational(-2, 3), Rational(5, 7)};
    std::array<std::vector<Rational>, 4> shared{q, q, q, q};
    for (int t = 0; t < 100; ++t) {
        Point4q pt = random_rational_point(99, t, -5, 5);
        CHECK(L_quantity(Rational(-1, 2), shared, pt).is_zero());
    }
    // K = L / V^{2(m+1)}
    Rational L = L_quantity(Rational(1), const_polys({1, 2, 3, 4}), p);
    Rational K = K_quantity(Rational(1), const_polys({1, 2, 3, 4}), p);
    Rational V(1);
    for (const auto& pr : kPairs) V *= p[pr[0]] - p[pr[1]];
    CHECK(K * V.pow_int(4) == L);

    CHECK_THROWS_AS(L_quantity(Rational(1, 3), shared, p), DomainError);
    CHECK_THROWS_AS(
        L_quantity(Rational(1), shared,
                   Point4q{Rational(1), Rational(1), Rational(0), Rational(2)}),
        DomainError);
}

TEST_CASE("bracket identity") {
    SplitMix64 rng(123);
    auto rnd_quad = [&]() {
        std::vector<Rational> c;
        for (int k = 0; k < 3; ++k)
            c.push_back(Rational(rng.uniform_long(-9, 9), rng.uniform_long(1, 3)));
        return c;
    };
    // m = 0: both sides vanish
    {
        std::array<std::vector<Rational>, 4> F{rnd_quad(), rnd_quad(), rnd_quad(), rnd_quad()};
        Point4q p = random_rational_point(7, 0, -5, 5);
        CHECK(bracket_residual(Rational(0), F, Rational(2), p).is_zero());
    }
    // m = 2 random quadratics: exact identity
    for (int t = 0; t < 20; ++t) {
        std::array<std::vector<Rational>, 4> F{rnd_quad(), rnd_quad(), rnd_quad(), rnd_quad()};
        Point4q p = random_rational_point(11, t, -5, 5);
        CHECK(bracket_residual(Rational(2), F, Rational(3, 2), p).is_zero());
    }
    // m = 1/2: the (2m-1) factor kills the RHS and the LHS must vanish too
    for (int t = 0; t < 10; ++t) {
        std::array<std::vector<Rational>, 4> F{rnd_quad(), rnd_quad(), rnd_quad(), rnd_quad()};
        Point4q p = random_rational_point(13, t, -5, 5);
        CHECK(bracket_residual(Rational(1, 2), F, Rational(1), p).is_zero());
    }
    // mutation control: the identity must break
    {
        std::array<std::vector<Rational>, 4> F{rnd_quad(), rnd_quad(), rnd_quad(), rnd_quad()};
        Point4q p = random_rational_point(17, 0, -5, 5);
        CHECK_FALSE(
            bracket_residual(Rational(2), F, Rational(1), p, BracketMutation::RhsMFactor)
                .is_zero());
        CHECK_FALSE(
            bracket_residual(Rational(2), F, Rational(1), p, BracketMutation::LhsCoeff)
                .is_zero());
    }
}

TEST_CASE("detM build matches the closed form") {
    Point4q p{Rational(4), Rational(2), Rational(1), Rational(0)};
    DetM d1 = detm_build(Rational(1), p);
    CHECK(d1.det == detm_closed(Rational(1), p));
    CHECK(d1.det == Rational::parse("-169075682574336"));

    for (int t = 0; t < 10; ++t) {
        Point4q pt = random_rational_point(21, t, -5, 5);
        for (Rational m : {Rational(1), Rational(3, 2), Rational(2), Rational(-2)}) {
            CAPTURE(m.str());
            CHECK(detm_build(m, pt).det == detm_closed(m, pt));
        }
        CHECK(detm_build(Rational(-1), pt).det.is_zero());
        CHECK(detm_build(Rational(-1, 2), pt).det.is_zero());
        CHECK(detm_closed(Rational(-1), pt).is_zero());
        CHECK(detm_closed(Rational(-1, 2), pt).is_zero());
    }
    // mutations break the equality
    Point4q pt = random_rational_point(23, 0, -5, 5);
    CHECK(detm_build(Rational(1), pt).det !=
          detm_closed(Rational(1), pt, DetMutation::ClosedConst));
    CHECK(detm_build(Rational(1), pt).det !=
          detm_closed(Rational(1), pt, DetMutation::ClosedVandExp));
}

TEST_CASE("exact lemma-b and lemma-d verification through the closed forms") {
    std::vector<Rational> quad{Rational(1), Rational(0), Rational(2)};
    std::vector<Rational> sextic{Rational(1), Rational(1, 2), Rational(0), Rational(0),
                                 Rational(0), Rational(0),    Rational(3)};
    struct Case { Rational m; std::vector<Rational> poly; };
    for (const auto& c : {Case{Rational(-1, 2), quad}, Case{Rational(1, 2), sextic}}) {
        std::array<std::vector<Rational>, 4> F{c.poly, c.poly, c.poly, c.poly};
        for (int t = 0; t < 25; ++t) {
            Point4q p = random_rational_point(31, t, -5, 5);
            auto ph = phi_point_case_iv<Rational>(c.m, F, Rational(1), p);
            bool skip = false;
            for (int i = 0; i < 4; ++i)
                if (ph.F[i].is_zero()) skip = true;
            if (skip) continue;
            for (const auto& pr : kPairs)
                CHECK(cijij_closed(ph, pr[0], pr[1]).is_zero());
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j)
                    for (int k = 0; k < 4; ++k) {
                        if (i == j || j == k || i == k) continue;
                        CHECK(ckikj_closed(ph, i, j, k).is_zero());
                    }
        }
    }
}

TEST_CASE("index preconditions") {
    MetricSpec s = constant_phi12_spec(Rational(1));
    auto ph = phi_point(s, Point4{0.1, 0.2, 0.3, 0.4});
    CHECK_THROWS_AS(ckikj_closed(ph, 1, 1, 2), SpecError);
    CHECK_THROWS_AS(cijij_closed(ph, 2, 2), SpecError);
    CHECK_THROWS_AS(lambda_ijk(ph, 0, 0, 1), SpecError);
    CHECK_THROWS_AS(e_ij(ph, 3, 3), SpecError);
}
