#pragma once

#include <array>
#include <bit>
#include <initializer_list>
#include <memory>
#include <string>
#include <string_view>

#include "binaryweyl/jets.hpp"
#include "binaryweyl/rational.hpp"

namespace bw {

enum class Func { Exp, Ln, Abs, Sqrt, Sin, Cos };

const char* func_name(Func f);

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// Immutable expression tree in variables x1..x4. Numeric literals are exact
// rationals; Pow exponents are literals, never sub-expressions.
class Expr {
  public:
    enum class Kind { Constant, Variable, Add, Sub, Mul, Div, Neg, Pow, Call };

    Kind kind;
    Rational value;    // Constant, Pow exponent
    int var = 0;       // Variable index, 1..4
    Func func{};       // Call
    ExprPtr a, b;      // children

    static ExprPtr constant(Rational c);
    static ExprPtr variable(int idx1to4);
    static ExprPtr add(ExprPtr l, ExprPtr r);
    static ExprPtr sub(ExprPtr l, ExprPtr r);
    static ExprPtr mul(ExprPtr l, ExprPtr r);
    static ExprPtr div(ExprPtr l, ExprPtr r);
    static ExprPtr neg(ExprPtr e);
    static ExprPtr pow(ExprPtr base, Rational exponent);
    static ExprPtr call(Func f, ExprPtr arg);

  private:
    explicit Expr(Kind k) : kind(k) {}
    friend ExprPtr make_node(Kind);
};

// Set of variable indices an expression syntactically depends on.
struct VarDependence {
    unsigned mask = 0;  // bit i-1 <=> depends on x^i

    bool contains(int idx1to4) const { return (mask >> (idx1to4 - 1)) & 1u; }
    bool subset_of(VarDependence o) const { return (mask & ~o.mask) == 0; }
    int count() const { return std::popcount(mask); }
    static VarDependence of(std::initializer_list<int> idx) {
        VarDependence d;
        for (int i : idx) d.mask |= 1u << (i - 1);
        return d;
    }
};

ExprPtr parse_expr(std::string_view source);
std::string to_string(const ExprPtr& e);
VarDependence dependence(const ExprPtr& e);
bool structurally_equal(const ExprPtr& a, const ExprPtr& b);

// Recursive evaluation over a scalar ring; point entries are the ring values
// bound to x1..x4 (seed jets for derivative rings).
template <class T>
T eval(const ExprPtr& e, const std::array<T, 4>& point);

extern template double eval<double>(const ExprPtr&, const std::array<double, 4>&);
extern template Rational eval<Rational>(const ExprPtr&, const std::array<Rational, 4>&);
extern template Jet2<double> eval<Jet2<double>>(const ExprPtr&, const std::array<Jet2<double>, 4>&);
extern template Jet2<Rational> eval<Jet2<Rational>>(const ExprPtr&,
                                                    const std::array<Jet2<Rational>, 4>&);

// Independent derivative oracle: evaluates e as an order-2 jet at p and
// compares every gradient/Hessian entry against central differences of step h.
// Returns the largest absolute discrepancy.
double fd_check(const ExprPtr& e, const std::array<double, 4>& p, double h);

}  // namespace bw
