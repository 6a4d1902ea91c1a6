#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "binaryweyl/expr.hpp"
#include "binaryweyl/indices.hpp"
#include "binaryweyl/jets.hpp"
#include "binaryweyl/rational.hpp"

namespace bw {

using Point4 = std::array<double, 4>;
using Point4q = std::array<Rational, 4>;

enum class Family { BinaryGeneral, Table1i, Table1ii, Table1iii, Table1iv, CaseIv };

const char* family_name(Family f);
std::optional<Family> family_from_name(std::string_view name);

struct Box {
    double lo = -2.0;
    double hi = 2.0;
};

struct DomainSpec {
    double delta = 1e-6;       // minimal pairwise coordinate gap
    double f_floor = 1e-9;     // |F_i| below this counts as degenerate
    bool ordered = false;      // require x1 > x2 > x3 > x4
    std::array<Box, 4> box{};
};

// One diagonal-component denominator function F_i: always an Expr; when given
// as polynomial coefficients those are kept exactly for the rational paths.
struct FComponent {
    ExprPtr expr;
    std::optional<std::vector<Rational>> poly;  // a0 + a1 x + ... (coefficients)

    static FComponent from_expr(ExprPtr e) { return {std::move(e), std::nullopt}; }
    static FComponent from_poly(std::vector<Rational> coeffs, int var_index_1to4);
};

// A complete binary metric description. phi entries are stored in kPairs
// order; the diagonal component is
//     g_ii = exp(2 * sum_{j != i} phi_ij) / (M^2 F_i),
// which for the iv families with 2m integral collapses to the literal
//     g_ii = prod_{j != i} (U_i - U_j)^{2m} / (M^2 F_i).
class MetricSpec {
  public:
    std::string name = "metric";
    Family family = Family::BinaryGeneral;
    Rational m;                       // iv families only
    std::array<ExprPtr, 6> phi;      // null for iv families until derived
    std::array<FComponent, 4> F;
    ExprPtr conformal;                // the factor M
    std::array<ExprPtr, 4> U;         // iv families; defaults to x^i
    DomainSpec domain;

    // Checks the dependence invariants and family-specific preconditions.
    void validate() const;

    // Closed-form Expr for g_ii.
    ExprPtr component_expr(int i) const;

    // phi_ij for the given pair slot; iv families derive m*ln|U_i - U_j|.
    ExprPtr phi_expr(int pair) const;

    bool is_iv_family() const {
        return family == Family::Table1iv || family == Family::CaseIv;
    }
    // Whether the diagonal components evaluate exactly over rationals.
    bool exact_evaluable() const;
};

// ---- constructors -----------------------------------------------------

MetricSpec make_euclidean();

// Case iv with U_i = x^i: g_ii = prod (x^i - x^j)^{2m} / (M^2 F_i).
MetricSpec make_case_iv(Rational m, std::array<FComponent, 4> F, ExprPtr conformal = nullptr);

struct Table1Functions {
    std::array<ExprPtr, 4> U{};  // row i: U1..U4; row ii: U1,U2,U3; row iii: all
    std::array<ExprPtr, 4> V{};  // row ii: V1,V2,V4; row iii: all
    std::array<ExprPtr, 4> Q{};  // rows ii, iii: Q3,Q4 / Q1..Q4
    ExprPtr free12, free34;      // rows i, ii: free entries
    Rational m;                  // row iv
};

MetricSpec make_table1(Family row, const Table1Functions& fns,
                       std::array<FComponent, 4> F, ExprPtr conformal = nullptr);

enum class LemmaCaseTag { A, B, C, D };

// a: four constants with sum 0 (m=-1); b: one shared quadratic (m=-1/2);
// c: four arbitrary one-variable F (m=0); d: one shared sextic (m=1/2).
MetricSpec make_lemma_family(LemmaCaseTag tag, const std::vector<Rational>& shared_coeffs,
                             ExprPtr conformal = nullptr);
MetricSpec make_lemma_family_c(std::array<FComponent, 4> F, ExprPtr conformal = nullptr);

// ---- queries ----------------------------------------------------------

struct Admissibility {
    bool ok = true;
    std::string reason;
};

Admissibility admissible(const MetricSpec& spec, const Point4& p);

// Order-2 jets of the four diagonal components at p.
template <class T>
std::array<Jet2<T>, 4> metric_jets(const MetricSpec& spec, const std::array<T, 4>& p) {
    std::array<Jet2<T>, 4> out;
    auto seeds = seed_point(p);
    for (int i = 0; i < 4; ++i) out[i] = eval(spec.component_expr(i), seeds);
    return out;
}

// ---- .bwm file format --------------------------------------------------

MetricSpec load_bwm(std::istream& in, const std::string& display_name);
MetricSpec load_bwm_file(const std::string& path);
MetricSpec parse_bwm(const std::string& text, const std::string& display_name = "inline");

}  // namespace bw
