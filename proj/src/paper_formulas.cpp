#include "binaryweyl/paper_formulas.hpp"

#include "binaryweyl/errors.hpp"

namespace bw {

PhiPoint<double> phi_point(const MetricSpec& spec, const Point4& p) {
    PhiPoint<double> ph;
    auto seeds = seed_point(p);
    for (int pid = 0; pid < 6; ++pid) ph.phi[pid] = eval(spec.phi_expr(pid), seeds);
    for (int i = 0; i < 4; ++i) {
        Jet2<double> fj = eval(spec.F[i].expr, seeds);
        ph.F[i] = fj.v;
        ph.Fp[i] = fj.g[i];
    }
    double mval = eval(spec.conformal, p);
    ph.M2 = mval * mval;
    for (int k = 0; k < 4; ++k) {
        double gkk = eval(spec.component_expr(k), p);
        double g2 = gkk * ph.M2 * ph.F[k];  // G_k^2
        if (g2 == 0) throw DomainError("degenerate metric component");
        ph.g_minus2[k] = 1.0 / g2;
    }
    return ph;
}

template PhiPoint<double> phi_point_case_iv<double>(const Rational&,
                                                    const std::array<std::vector<Rational>, 4>&,
                                                    const Rational&,
                                                    const std::array<double, 4>&);
template PhiPoint<Rational> phi_point_case_iv<Rational>(
    const Rational&, const std::array<std::vector<Rational>, 4>&, const Rational&,
    const std::array<Rational, 4>&);

// ------------------------- exact case-iv algebra ---------------------------

namespace {

void require_distinct(const Point4q& p) {
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (p[i] == p[j])
                throw DomainError("coordinate collision (" + std::to_string(i + 1) + "," +
                                  std::to_string(j + 1) + ")");
}

long integral_exponent(const Rational& e, const char* what) {
    if (!e.is_integer())
        throw DomainError(std::string(what) + " = " + e.str() + " is not an integer");
    return e.to_long();
}

Rational poly_val(const std::vector<Rational>& c, const Rational& x) {
    Rational acc;
    for (std::size_t a = c.size(); a-- > 0;) acc = acc * x + c[a];
    return acc;
}

// prod over pairs k<l avoiding index i
Rational pair_product_avoiding(const Point4q& p, int avoid) {
    Rational acc(1);
    for (const auto& pr : kPairs)
        if (pr[0] != avoid && pr[1] != avoid) acc *= p[pr[0]] - p[pr[1]];
    return acc;
}

Rational vandermonde(const Point4q& p) {
    Rational acc(1);
    for (const auto& pr : kPairs) acc *= p[pr[0]] - p[pr[1]];
    return acc;
}

}  // namespace

Rational L_quantity(const Rational& m, const std::array<std::vector<Rational>, 4>& F,
                    const Point4q& p) {
    require_distinct(p);
    long e = integral_exponent(m * Rational(2) + Rational(2), "exponent 2(m+1)");
    Rational sum;
    for (int i = 0; i < 4; ++i) {
        Rational w = pair_product_avoiding(p, i);
        if ((i * e) % 2 != 0) w = -w;  // alternating anchored weights
        sum += w.pow_int(e) * poly_val(F[i], p[i]);
    }
    return sum;
}

Rational K_quantity(const Rational& m, const std::array<std::vector<Rational>, 4>& F,
                    const Point4q& p) {
    long e = integral_exponent(m * Rational(2) + Rational(2), "exponent 2(m+1)");
    return L_quantity(m, F, p) / vandermonde(p).pow_int(e);
}

Rational bracket_residual(const Rational& m, const std::array<std::vector<Rational>, 4>& F,
                          const Rational& conformal_value, const Point4q& p,
                          BracketMutation mutation) {
    require_distinct(p);
    const Rational &x1 = p[0], &x2 = p[1], &x3 = p[2], &x4 = p[3];
    Rational two(2);
    if (mutation == BracketMutation::LhsCoeff) two = Rational(1);
    Rational B1 = x2 * (x1 + x3 - two * x4) + x3 * (x4 - Rational(2) * x1) + x1 * x4;
    Rational B2 = x3 * (x1 + x2 - Rational(2) * x4) + x2 * (x4 - Rational(2) * x1) + x1 * x4;
    PhiPoint<Rational> ph = phi_point_case_iv<Rational>(m, F, conformal_value, p);
    Rational lhs = B1 * cijij_closed(ph, 0, 1) - B2 * cijij_closed(ph, 0, 2);
    Rational mfac = m * Rational(2) - Rational(1);
    if (mutation == BracketMutation::RhsMFactor) mfac = m * Rational(2) + Rational(1);
    long em = integral_exponent(Rational(-2) * m - Rational(1), "exponent -2m-1");
    Rational rhs = ph.M2 * Rational(1, 2) * m * mfac * vandermonde(p).pow_int(em) *
                   L_quantity(m, F, p);
    return lhs - rhs;
}

DetM detm_build(const Rational& m, const Point4q& p) {
    require_distinct(p);
    long e = integral_exponent(m * Rational(2) + Rational(2), "exponent 2(m+1)");

    // exact order-2 jets of the coefficient functions c_j (no alternation:
    // column sign flips cancel in the determinant)
    std::array<Jet2<Rational>, 4> c;
    auto seeds = seed_point(p);
    for (int j = 0; j < 4; ++j) {
        Jet2<Rational> acc = Jet2<Rational>::constant(Rational(1));
        for (const auto& pr : kPairs) {
            if (pr[0] == j || pr[1] == j) continue;
            acc = acc * ring_pow_int(seeds[pr[0]] - seeds[pr[1]], e);
        }
        c[j] = acc;
    }
    DetM out;
    for (int j = 0; j < 4; ++j) out.rows[0][j] = c[j].v;
    for (int s = 1; s <= 3; ++s) {
        for (int j = 0; j < 4; ++j) {
            Rational val;
            if (j != 0 && j != s) val += c[j].h(0, s);
            if (c[0].v.is_zero() || c[s].v.is_zero())
                throw DomainError("elimination pivot vanished; resample the point");
            if (j != 0) val -= c[0].g[s] * c[j].g[0] / c[0].v;
            if (j != s) val -= c[s].g[0] * c[j].g[s] / c[s].v;
            out.rows[s][j] = val;
        }
    }
    // 4x4 determinant by cofactor expansion along the first row
    auto det3 = [&](int skip_col) {
        std::array<int, 3> cols{};
        int n = 0;
        for (int cidx = 0; cidx < 4; ++cidx)
            if (cidx != skip_col) cols[n++] = cidx;
        const auto& r = out.rows;
        return r[1][cols[0]] * (r[2][cols[1]] * r[3][cols[2]] - r[2][cols[2]] * r[3][cols[1]]) -
               r[1][cols[1]] * (r[2][cols[0]] * r[3][cols[2]] - r[2][cols[2]] * r[3][cols[0]]) +
               r[1][cols[2]] * (r[2][cols[0]] * r[3][cols[1]] - r[2][cols[1]] * r[3][cols[0]]);
    };
    Rational det;
    int sign = 1;
    for (int cidx = 0; cidx < 4; ++cidx) {
        Rational term = out.rows[0][cidx] * det3(cidx);
        det += sign > 0 ? term : -term;
        sign = -sign;
    }
    out.det = det;
    return out;
}

Rational detm_closed(const Rational& m, const Point4q& p, DetMutation mutation) {
    require_distinct(p);
    Rational ee = Rational(2) * (Rational(2) * m + Rational(1));
    if (mutation == DetMutation::ClosedVandExp) ee += Rational(1);
    long e2 = integral_exponent(ee, "exponent 2(2m+1)");
    Rational front(-16);
    if (mutation == DetMutation::ClosedConst) front = Rational(-15);
    Rational mp1 = m + Rational(1);
    Rational tmp1 = Rational(2) * m + Rational(1);
    return front * mp1.pow_int(3) * tmp1.pow_int(3) * (p[1] - p[2]).pow_int(2) *
           (p[1] - p[3]).pow_int(2) * (p[2] - p[3]).pow_int(2) * vandermonde(p).pow_int(e2);
}

}  // namespace bw
