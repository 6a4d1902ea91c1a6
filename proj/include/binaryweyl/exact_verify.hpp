#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "binaryweyl/paper_formulas.hpp"

namespace bw {

enum class IdentityName {
    Bracket,
    DetM,
    LLemmaA,
    LLemmaB,
    FlatnessElliptic,
    LambdaCyclicIv,
    DerivativeIdentityIv,
};

const char* identity_name(IdentityName n);
std::optional<IdentityName> identity_from_name(std::string_view s);

enum class MutationTag {
    None,
    BracketRhsMFactor,   // (2m-1) -> (2m+1) in the bracket RHS
    BracketLhsCoeff,     // -2 x^4 -> -x^4 in the first LHS bracket
    DetmClosedConst,     // -16 -> -15
    DetmClosedVandExp,   // 2(2m+1) -> 2(2m+1)+1
};

const char* mutation_name(MutationTag m);
std::optional<MutationTag> mutation_from_name(std::string_view s);

struct IdentityCase {
    IdentityName name = IdentityName::Bracket;
    Rational m;
    int trials = 100;
    std::uint64_t seed = 7;
    long box_lo = -5;
    long box_hi = 5;
    MutationTag mutation = MutationTag::None;
};

struct IdentityOutcome {
    bool pass = false;
    int trials_run = 0;
    int resamples = 0;
    std::string failure;  // first nonzero residual, verbatim rational
};

// Exact rational-point identity testing; no floating-point arithmetic on any
// path. pass iff the residual is exactly zero at every trial point.
IdentityOutcome run_identity(const IdentityCase& c);

}  // namespace bw
