#pragma once

// Seeded corpus of low-degree polynomial binary specs shared by the unit and
// acceptance suites. Coefficients are small rationals so exponents stay tame
// on the default boxes and everything is reproducible.

#include "binaryweyl/metric.hpp"
#include "binaryweyl/sampling.hpp"

namespace bw::testing {

inline Rational small_coeff(SplitMix64& rng, long range = 10, long den = 40) {
    return Rational(rng.uniform_long(-range, range), den);
}

inline MetricSpec random_binary_spec(std::uint64_t seed) {
    SplitMix64 rng(seed ^ 0x5eedULL);
    MetricSpec s;
    s.family = Family::BinaryGeneral;
    s.name = "corpus-" + std::to_string(seed);
    for (int p = 0; p < 6; ++p) {
        int i = kPairs[p][0] + 1, j = kPairs[p][1] + 1;
        ExprPtr xi = Expr::variable(i), xj = Expr::variable(j);
        ExprPtr e = Expr::constant(small_coeff(rng));
        e = Expr::add(e, Expr::mul(Expr::constant(small_coeff(rng)), xi));
        e = Expr::add(e, Expr::mul(Expr::constant(small_coeff(rng)), xj));
        e = Expr::add(e, Expr::mul(Expr::constant(small_coeff(rng)), Expr::mul(xi, xj)));
        s.phi[p] = e;
    }
    for (int i = 0; i < 4; ++i)
        s.F[i] = FComponent::from_poly(
            {Rational(1), small_coeff(rng, 10, 40), small_coeff(rng, 10, 40)}, i + 1);
    s.conformal = Expr::constant(Rational(1));
    s.domain.box = {Box{-1.2, 1.2}, Box{-1.2, 1.2}, Box{-1.2, 1.2}, Box{-1.2, 1.2}};
    s.validate();
    return s;
}

}  // namespace bw::testing
