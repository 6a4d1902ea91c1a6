#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "binaryweyl/errors.hpp"
#include "binaryweyl/metric.hpp"
#include "binaryweyl/sampling.hpp"

using namespace bw;

namespace {

MetricSpec generic_binary() {
    MetricSpec s;
    s.family = Family::BinaryGeneral;
    s.name = "generic";
    const char* phis[6] = {"0.1*x1*x2", "0.2*x1 - 0.1*x3",      "0.05*x1*x4",
                           "0.1*x2*x3", "-(0.2)*x2 + 0.15*x4", "0.3*x3*x4"};
    for (int p = 0; p < 6; ++p) s.phi[p] = parse_expr(phis[p]);
    for (int i = 0; i < 4; ++i)
        s.F[i] = FComponent::from_poly({Rational(1), Rational(1, 4)}, i + 1);
    s.conformal = parse_expr("1");
    s.domain.box = {Box{-1.2, 1.2}, Box{-1.2, 1.2}, Box{-1.2, 1.2}, Box{-1.2, 1.2}};
    s.validate();
    return s;
}

}  // namespace

TEST_CASE("euclidean components are 1") {
    MetricSpec s = make_euclidean();
    Point4 p{0.3, -0.7, 1.9, 0.4};
    for (int i = 0; i < 4; ++i) CHECK(eval(s.component_expr(i), p) == 1.0);
}

TEST_CASE("case-iv component matches the closed form") {
    std::array<FComponent, 4> F;
    for (int i = 0; i < 4; ++i)
        F[i] = FComponent::from_poly({Rational(1), Rational(0), Rational(1, 2)}, i + 1);
    for (Rational m : {Rational(1), Rational(-2), Rational(1, 2), Rational(5, 4)}) {
        CAPTURE(m.str());
        MetricSpec s = make_case_iv(m, F, parse_expr("1 + 0.1*x1*x3"));
        Point4 p{3.1, 1.9, 0.6, -0.8};
        double mm = m.to_double();
        double Mv = 1 + 0.1 * p[0] * p[2];
        for (int i = 0; i < 4; ++i) {
            double prod = 1;
            for (int j = 0; j < 4; ++j)
                if (j != i) prod *= std::pow(std::fabs(p[i] - p[j]), 2 * mm) *
                                    ((m * Rational(2)).is_integer() && p[i] < p[j] &&
                                             (m * Rational(2)).to_long() % 2 != 0
                                         ? -1.0
                                         : 1.0);
            double Fv = 1 + 0.5 * p[i] * p[i];
            double expect = prod / (Mv * Mv * Fv);
            double got = eval(s.component_expr(i), p);
            CHECK(nearly_equal(got, expect, 1e-12, 1e-12));
        }
    }
}

TEST_CASE("binary-general with a foreign-variable phi is rejected") {
    MetricSpec s = generic_binary();
    s.phi[pair_index(0, 1)] = parse_expr("x1*x3");  // phi12 must not see x3
    CHECK_THROWS_AS(s.validate(), SpecError);
}

TEST_CASE("make_table1 row i assembles the printed structure") {
    Table1Functions fns;
    for (int i = 0; i < 4; ++i) fns.U[i] = Expr::variable(i + 1);
    fns.free12 = parse_expr("x1*x2");
    fns.free34 = parse_expr("x3*x4");
    std::array<FComponent, 4> F;
    for (int i = 0; i < 4; ++i) F[i] = FComponent::from_poly({Rational(1)}, i + 1);
    MetricSpec s = make_table1(Family::Table1i, fns, F);
    Point4 p{0.5, -0.3, 0.8, 1.1};
    CHECK(eval(s.phi_expr(pair_index(0, 2)), p) == doctest::Approx(p[0] + p[2]));
    CHECK(eval(s.phi_expr(pair_index(1, 3)), p) == doctest::Approx(p[1] + p[3]));
    CHECK(eval(s.phi_expr(pair_index(0, 1)), p) == doctest::Approx(p[0] * p[1]));
}

TEST_CASE("make_table1 row ii rejects a Q3 that depends on x4") {
    Table1Functions fns;
    fns.U[0] = parse_expr("x1");
    fns.U[1] = parse_expr("x2");
    fns.U[2] = parse_expr("x3");
    fns.V[0] = parse_expr("2*x1");
    fns.V[1] = parse_expr("x2^2");
    fns.V[3] = parse_expr("x4");
    fns.Q[2] = parse_expr("x3*x4");  // depends on x4: invalid
    fns.Q[3] = parse_expr("x4");
    std::array<FComponent, 4> F;
    for (int i = 0; i < 4; ++i) F[i] = FComponent::from_poly({Rational(1)}, i + 1);
    CHECK_THROWS_AS(make_table1(Family::Table1ii, fns, F), SpecError);
}

TEST_CASE("make_table1 iv equals the case-iv constructor pointwise") {
    Table1Functions fns;
    fns.m = Rational(1, 2);
    std::array<FComponent, 4> F;
    for (int i = 0; i < 4; ++i)
        F[i] = FComponent::from_poly({Rational(1), Rational(0), Rational(1)}, i + 1);
    MetricSpec a = make_table1(Family::Table1iv, fns, F);
    MetricSpec b = make_case_iv(Rational(1, 2), F);
    a.domain = b.domain;
    auto pts = sample_points(b, 100, 11);
    for (const auto& p : pts)
        for (int i = 0; i < 4; ++i)
            CHECK(nearly_equal(eval(a.component_expr(i), p), eval(b.component_expr(i), p),
                               1e-13, 1e-13));
}

TEST_CASE("lemma family constructors") {
    MetricSpec a = make_lemma_family(LemmaCaseTag::A,
                                     {Rational(1), Rational(2), Rational(3), Rational(-6)});
    CHECK(a.m == Rational(-1));

    CHECK_THROWS_WITH_AS(
        make_lemma_family(LemmaCaseTag::A, {Rational(1), Rational(1), Rational(1), Rational(1)}),
        doctest::Contains("L = 0"), SpecError);

    MetricSpec d = make_lemma_family(LemmaCaseTag::D,
                                     {Rational(1), Rational(0), Rational(0), Rational(0),
                                      Rational(0), Rational(0), Rational(1)});
    CHECK(d.m == Rational(1, 2));
    // g_ii = prod(x^i - x^j) / (M^2 (1 + (x^i)^6))
    Point4 p{3.0, 1.8, 0.6, -1.0};
    for (int i = 0; i < 4; ++i) {
        double prod = 1;
        for (int j = 0; j < 4; ++j)
            if (j != i) prod *= p[i] - p[j];
        double expect = prod / (1 + std::pow(p[i], 6));
        CHECK(nearly_equal(eval(d.component_expr(i), p), expect, 1e-12, 1e-12));
    }

    std::array<FComponent, 4> Fc{
        FComponent::from_expr(parse_expr("1 + x1^2")), FComponent::from_expr(parse_expr("exp(x2)")),
        FComponent::from_expr(parse_expr("2 + sin(x3)")), FComponent::from_poly({Rational(2)}, 4)};
    MetricSpec c = make_lemma_family_c(Fc);
    CHECK(c.m == Rational(0));
    CHECK(eval(c.component_expr(1), Point4{1, 0, 0, 0}) == 1.0);  // 1/exp(0)
}

TEST_CASE("admissibility diagnostics") {
    MetricSpec s = generic_binary();
    CHECK(admissible(s, Point4{1.15, 0.7, -0.2, -1.1}).ok);

    auto r = admissible(s, Point4{0.7, 0.7, -0.2, -1.3});
    CHECK_FALSE(r.ok);
    CHECK(r.reason == "coordinate collision (1,2)");

    // case-iv with F_1 vanishing at p_1: F = x^2 - 1 has a root at 1
    std::array<FComponent, 4> F;
    for (int i = 0; i < 4; ++i)
        F[i] = FComponent::from_poly({Rational(-1), Rational(0), Rational(1)}, i + 1);
    MetricSpec iv = make_case_iv(Rational(1), F);
    iv.domain.ordered = false;
    auto r2 = admissible(iv, Point4{1.0, 0.5, -0.2, -1.3});
    CHECK_FALSE(r2.ok);
    CHECK(r2.reason == "degenerate metric component 1");

    MetricSpec ordered = make_case_iv(Rational(1), F);
    auto r3 = admissible(ordered, Point4{0.5, 0.6, -0.4, -1.3});
    CHECK_FALSE(r3.ok);
    CHECK(r3.reason.find("ordering") == 0);
}

TEST_CASE("binary product structure of the components") {
    MetricSpec s = generic_binary();
    s.conformal = parse_expr("1 + 0.2*x1 - 0.1*x2*x4");
    auto pts = sample_points(s, 50, 3);
    for (const auto& p : pts) {
        double M = eval(s.conformal, p);
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) {
                double gij = eval(s.component_expr(i), p) * eval(s.component_expr(j), p);
                double Fi = eval(s.F[i].expr, p), Fj = eval(s.F[j].expr, p);
                double sum = 0;
                for (int k = 0; k < 4; ++k) {
                    if (k != i) sum += eval(s.phi_expr(pair_index(i, k)), p);
                    if (k != j) sum += eval(s.phi_expr(pair_index(j, k)), p);
                }
                double lhs = gij * std::pow(M, 4) * Fi * Fj / std::exp(2 * sum);
                CHECK(nearly_equal(lhs, 1.0, 1e-12, 1e-9));
            }
    }
}

TEST_CASE("rescaling M leaves g_ii * M^2 unchanged") {
    MetricSpec s1 = generic_binary();
    MetricSpec s2 = generic_binary();
    s1.conformal = parse_expr("1");
    s2.conformal = parse_expr("exp(0.3*x1 - 0.2*x3)");
    auto pts = sample_points(s1, 25, 7);
    for (const auto& p : pts) {
        double m1 = eval(s1.conformal, p), m2 = eval(s2.conformal, p);
        for (int i = 0; i < 4; ++i) {
            double a = eval(s1.component_expr(i), p) * m1 * m1;
            double b = eval(s2.component_expr(i), p) * m2 * m2;
            CHECK(nearly_equal(a, b, 1e-12, 1e-9));
        }
    }
}

TEST_CASE("bwm loader round trip and errors") {
    const char* specs = std::getenv("BWM_SPECS");
    std::string dir = specs ? specs : "specs";
    MetricSpec e = load_bwm_file(dir + "/euclidean.bwm");
    CHECK(e.name == "euclidean");
    CHECK(e.family == Family::BinaryGeneral);

    MetricSpec d = load_bwm_file(dir + "/lemma_d.bwm");
    CHECK(d.family == Family::CaseIv);
    CHECK(d.m == Rational(1, 2));
    CHECK(d.domain.ordered);
    CHECK(d.F[0].poly.has_value());
    CHECK((*d.F[0].poly)[1] == Rational(11, 4));

    CHECK_THROWS_AS(load_bwm_file(dir + "/missing.bwm"), SpecError);
    CHECK_THROWS_WITH_AS(parse_bwm("family binary-general\nbogus 1\n"),
                         doctest::Contains("unknown key"), SpecError);
    CHECK_THROWS_WITH_AS(parse_bwm("family case-iv\nF1 poly 1\nF2 poly 1\nF3 poly 1\n"
                                   "F4 poly 1\nM expr 1\n"),
                         doctest::Contains("requires m"), SpecError);
    // phi lines are for the general families only
    CHECK_THROWS_AS(parse_bwm("family case-iv\nm 1\nphi12 expr x1\nF1 poly 1\nF2 poly 1\n"
                              "F3 poly 1\nF4 poly 1\nM expr 1\n"),
                    SpecError);
    // six phi lines mandatory for binary-general
    CHECK_THROWS_WITH_AS(parse_bwm("family binary-general\nF1 poly 1\nF2 poly 1\nF3 poly 1\n"
                                   "F4 poly 1\nM expr 1\n"),
                         doctest::Contains("missing phi12"), SpecError);
}

TEST_CASE("exact evaluability") {
    std::array<FComponent, 4> F;
    for (int i = 0; i < 4; ++i) F[i] = FComponent::from_poly({Rational(1)}, i + 1);
    CHECK(make_case_iv(Rational(1, 2), F).exact_evaluable());
    CHECK(make_case_iv(Rational(-2), F).exact_evaluable());
    CHECK_FALSE(make_case_iv(Rational(1, 3), F).exact_evaluable());
    CHECK_FALSE(generic_binary().exact_evaluable());
}
