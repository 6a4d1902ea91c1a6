#include "binaryweyl/exact_verify.hpp"

#include "binaryweyl/curvature.hpp"
#include "binaryweyl/errors.hpp"
#include "binaryweyl/sampling.hpp"

namespace bw {

const char* identity_name(IdentityName n) {
    switch (n) {
        case IdentityName::Bracket: return "bracket";
        case IdentityName::DetM: return "detM";
        case IdentityName::LLemmaA: return "L-lemma-a";
        case IdentityName::LLemmaB: return "L-lemma-b";
        case IdentityName::FlatnessElliptic: return "flatness-elliptic";
        case IdentityName::LambdaCyclicIv: return "lambda-cyclic-iv";
        case IdentityName::DerivativeIdentityIv: return "derivative-identity-iv";
    }
    return "?";
}

std::optional<IdentityName> identity_from_name(std::string_view s) {
    for (IdentityName n :
         {IdentityName::Bracket, IdentityName::DetM, IdentityName::LLemmaA, IdentityName::LLemmaB,
          IdentityName::FlatnessElliptic, IdentityName::LambdaCyclicIv,
          IdentityName::DerivativeIdentityIv})
        if (s == identity_name(n)) return n;
    return std::nullopt;
}

const char* mutation_name(MutationTag m) {
    switch (m) {
        case MutationTag::None: return "none";
        case MutationTag::BracketRhsMFactor: return "bracket-rhs-mfactor";
        case MutationTag::BracketLhsCoeff: return "bracket-lhs-coeff";
        case MutationTag::DetmClosedConst: return "detm-closed-const";
        case MutationTag::DetmClosedVandExp: return "detm-closed-vandexp";
    }
    return "?";
}

std::optional<MutationTag> mutation_from_name(std::string_view s) {
    for (MutationTag m : {MutationTag::None, MutationTag::BracketRhsMFactor,
                          MutationTag::BracketLhsCoeff, MutationTag::DetmClosedConst,
                          MutationTag::DetmClosedVandExp})
        if (s == mutation_name(m)) return m;
    return std::nullopt;
}

namespace {

std::string point_str(const Point4q& p) {
    return p[0].str() + "," + p[1].str() + "," + p[2].str() + "," + p[3].str();
}

Rational rnd_rational(SplitMix64& rng, long num_range, long max_den, bool nonzero = false) {
    for (;;) {
        long den = rng.uniform_long(1, max_den);
        long num = rng.uniform_long(-num_range, num_range);
        if (nonzero && num == 0) continue;
        return Rational(num, den);
    }
}

bool poly_is_zero(const std::vector<Rational>& c) {
    for (const auto& q : c)
        if (!q.is_zero()) return false;
    return true;
}

std::vector<Rational> rnd_poly(SplitMix64& rng, int degree) {
    std::vector<Rational> c;
    c.reserve(degree + 1);
    for (int k = 0; k <= degree; ++k) c.push_back(rnd_rational(rng, 9, 3));
    if (poly_is_zero(c)) c[0] = Rational(1);
    return c;
}

Rational poly_at(const std::vector<Rational>& c, const Rational& x) {
    Rational acc;
    for (std::size_t a = c.size(); a-- > 0;) acc = acc * x + c[a];
    return acc;
}

}  // namespace

IdentityOutcome run_identity(const IdentityCase& c) {
    IdentityOutcome out;
    std::uint64_t point_index = 0;
    const int max_resamples = 64 * std::max(c.trials, 1);

    auto next_point = [&]() {
        return random_rational_point(c.seed, point_index++, c.box_lo, c.box_hi);
    };
    auto fail = [&](const Point4q& p, const Rational& residual) {
        out.pass = false;
        out.failure = "point=" + point_str(p) + " residual=" + residual.str();
    };

    BracketMutation bmut = BracketMutation::None;
    if (c.mutation == MutationTag::BracketRhsMFactor) bmut = BracketMutation::RhsMFactor;
    if (c.mutation == MutationTag::BracketLhsCoeff) bmut = BracketMutation::LhsCoeff;
    DetMutation dmut = DetMutation::None;
    if (c.mutation == MutationTag::DetmClosedConst) dmut = DetMutation::ClosedConst;
    if (c.mutation == MutationTag::DetmClosedVandExp) dmut = DetMutation::ClosedVandExp;

    out.pass = true;
    for (int t = 0; t < c.trials && out.pass; ++t) {
        SplitMix64 coeff_rng(c.seed ^ (0xabcdef1234567890ULL + 0x100000001ULL * (t + 1)));
        switch (c.name) {
            case IdentityName::Bracket: {
                Point4q p = next_point();
                std::array<std::vector<Rational>, 4> F;
                for (auto& f : F) f = rnd_poly(coeff_rng, 3);
                Rational mval = rnd_rational(coeff_rng, 5, 3, /*nonzero=*/true);
                Rational r = bracket_residual(c.m, F, mval, p, bmut);
                if (!r.is_zero()) fail(p, r);
                break;
            }
            case IdentityName::DetM: {
                Point4q p = next_point();
                DetM built = detm_build(c.m, p);
                Rational closed = detm_closed(c.m, p, dmut);
                Rational r = built.det - closed;
                if (!r.is_zero()) fail(p, r);
                break;
            }
            case IdentityName::LLemmaA: {
                Point4q p = next_point();
                std::array<std::vector<Rational>, 4> F;
                Rational sum;
                for (int i = 0; i < 3; ++i) {
                    Rational v = rnd_rational(coeff_rng, 9, 3);
                    F[i] = {v};
                    sum += v;
                }
                F[3] = {-sum};
                Rational r = L_quantity(Rational(-1), F, p);
                if (!r.is_zero()) fail(p, r);
                break;
            }
            case IdentityName::LLemmaB: {
                Point4q p = next_point();
                std::vector<Rational> shared = rnd_poly(coeff_rng, 2);
                std::array<std::vector<Rational>, 4> F{shared, shared, shared, shared};
                Rational r = L_quantity(Rational(-1, 2), F, p);
                if (!r.is_zero()) fail(p, r);
                break;
            }
            case IdentityName::FlatnessElliptic: {
                // shared quartic with four distinct rational roots, leading
                // coefficient random: the elliptic-coordinate flat case
                std::array<Rational, 4> roots;
                bool distinct = false;
                while (!distinct) {
                    distinct = true;
                    for (auto& r : roots) r = rnd_rational(coeff_rng, 6, 2);
                    for (int a = 0; a < 4 && distinct; ++a)
                        for (int b = a + 1; b < 4; ++b)
                            if (roots[a] == roots[b]) { distinct = false; break; }
                }
                Rational lead = rnd_rational(coeff_rng, 3, 2, /*nonzero=*/true);
                std::vector<Rational> quartic{lead};
                for (const auto& r : roots) {
                    std::vector<Rational> next(quartic.size() + 1);
                    for (std::size_t a = 0; a < quartic.size(); ++a) {
                        next[a + 1] += quartic[a];
                        next[a] -= r * quartic[a];
                    }
                    quartic = std::move(next);
                }
                Point4q p;
                bool found = false;
                while (!found) {
                    p = next_point();
                    found = true;
                    for (int i = 0; i < 4; ++i)
                        if (poly_at(quartic, p[i]).is_zero()) { found = false; break; }
                    if (!found && ++out.resamples > max_resamples)
                        throw DomainError("resampling budget exhausted");
                }
                std::array<FComponent, 4> F;
                for (int i = 0; i < 4; ++i) F[i] = FComponent::from_poly(quartic, i + 1);
                MetricSpec spec = make_case_iv(Rational(1, 2), F);
                auto bundle = curvature<Rational>(spec, p);
                Rational worst;
                for (int i = 0; i < 4 && worst.is_zero(); ++i)
                    for (int j = 0; j < 4 && worst.is_zero(); ++j)
                        for (int k = 0; k < 4 && worst.is_zero(); ++k)
                            for (int l = 0; l < 4; ++l)
                                if (!bundle.riemann_down[i][j][k][l].is_zero()) {
                                    worst = bundle.riemann_down[i][j][k][l];
                                    break;
                                }
                if (!worst.is_zero()) fail(p, worst);
                break;
            }
            case IdentityName::LambdaCyclicIv: {
                Point4q p = next_point();
                std::array<std::vector<Rational>, 4> F{std::vector<Rational>{Rational(1)},
                                                       {Rational(1)},
                                                       {Rational(1)},
                                                       {Rational(1)}};
                auto ph = phi_point_case_iv<Rational>(c.m, F, Rational(1), p);
                for (int i = 0; i < 2; ++i)
                    for (int j = i + 1; j < 3; ++j)
                        for (int k = j + 1; k < 4; ++k) {
                            Rational r = lambda_cyclic_residual(ph, i, j, k);
                            if (!r.is_zero()) { fail(p, r); break; }
                        }
                break;
            }
            case IdentityName::DerivativeIdentityIv: {
                Point4q p = next_point();
                std::array<std::vector<Rational>, 4> F;
                for (auto& f : F) f = rnd_poly(coeff_rng, 2);
                auto ph = phi_point_case_iv<Rational>(c.m, F, Rational(1), p);
                for (int i = 0; i < 4; ++i)
                    for (int j = 0; j < 4; ++j) {
                        if (j == i) continue;
                        for (int k = 0; k < 4; ++k) {
                            if (k == i || k == j) continue;
                            Rational r = derivative_identity_residual(ph, i, j, k);
                            if (!r.is_zero()) { fail(p, r); break; }
                        }
                    }
                break;
            }
        }
        ++out.trials_run;
    }
    return out;
}

}  // namespace bw
