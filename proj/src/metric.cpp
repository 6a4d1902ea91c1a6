#include "binaryweyl/metric.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "binaryweyl/errors.hpp"

namespace bw {

const char* family_name(Family f) {
    switch (f) {
        case Family::BinaryGeneral: return "binary-general";
        case Family::Table1i: return "table1-i";
        case Family::Table1ii: return "table1-ii";
        case Family::Table1iii: return "table1-iii";
        case Family::Table1iv: return "table1-iv";
        case Family::CaseIv: return "case-iv";
    }
    return "?";
}

std::optional<Family> family_from_name(std::string_view name) {
    for (Family f : {Family::BinaryGeneral, Family::Table1i, Family::Table1ii, Family::Table1iii,
                     Family::Table1iv, Family::CaseIv})
        if (name == family_name(f)) return f;
    return std::nullopt;
}

FComponent FComponent::from_poly(std::vector<Rational> coeffs, int var) {
    if (coeffs.empty()) coeffs.push_back(Rational(0));
    ExprPtr x = Expr::variable(var);
    ExprPtr acc = Expr::constant(coeffs[0]);
    for (std::size_t k = 1; k < coeffs.size(); ++k) {
        if (coeffs[k].is_zero()) continue;
        ExprPtr term = k == 1 ? x : Expr::pow(x, Rational(static_cast<long>(k)));
        acc = Expr::add(acc, Expr::mul(Expr::constant(coeffs[k]), term));
    }
    return {acc, std::move(coeffs)};
}

namespace {

ExprPtr const_one() { return Expr::constant(Rational(1)); }

bool is_const_one(const ExprPtr& e) {
    return e && e->kind == Expr::Kind::Constant && e->value == Rational(1);
}

bool rational_evaluable(const ExprPtr& e) {
    switch (e->kind) {
        case Expr::Kind::Constant:
        case Expr::Kind::Variable: return true;
        case Expr::Kind::Neg: return rational_evaluable(e->a);
        case Expr::Kind::Pow: return e->value.is_integer() && rational_evaluable(e->a);
        case Expr::Kind::Call: return e->func == Func::Abs && rational_evaluable(e->a);
        default: return rational_evaluable(e->a) && rational_evaluable(e->b);
    }
}

void require_dependence(const ExprPtr& e, VarDependence allowed, const std::string& what) {
    if (!e) throw SpecError(what + " is missing");
    if (!dependence(e).subset_of(allowed)) {
        std::string vars;
        for (int v = 1; v <= 4; ++v)
            if (dependence(e).contains(v) && !allowed.contains(v))
                vars += (vars.empty() ? "x" : ", x") + std::to_string(v);
        throw SpecError(what + " depends on " + vars + " which the family forbids");
    }
}

}  // namespace

ExprPtr MetricSpec::phi_expr(int pair) const {
    if (!is_iv_family()) return phi[pair];
    int i = kPairs[pair][0], j = kPairs[pair][1];
    ExprPtr ui = U[i] ? U[i] : Expr::variable(i + 1);
    ExprPtr uj = U[j] ? U[j] : Expr::variable(j + 1);
    // phi_ij = m * ln|U_i - U_j|
    return Expr::mul(Expr::constant(m),
                     Expr::call(Func::Ln, Expr::call(Func::Abs, Expr::sub(ui, uj))));
}

void MetricSpec::validate() const {
    for (int i = 0; i < 4; ++i) {
        require_dependence(F[i].expr, VarDependence::of({i + 1}),
                           "F" + std::to_string(i + 1));
    }
    if (!conformal) throw SpecError("conformal factor M is missing");
    if (is_iv_family()) {
        for (int i = 0; i < 4; ++i)
            if (U[i])
                require_dependence(U[i], VarDependence::of({i + 1}),
                                   "U" + std::to_string(i + 1));
        for (int p = 0; p < 6; ++p)
            if (phi[p])
                throw SpecError("family " + std::string(family_name(family)) +
                                " derives phi from m; explicit phi entries are not allowed");
    } else {
        for (int p = 0; p < 6; ++p) {
            int i = kPairs[p][0], j = kPairs[p][1];
            require_dependence(phi[p], VarDependence::of({i + 1, j + 1}),
                               "phi" + std::to_string(i + 1) + std::to_string(j + 1));
        }
    }
}

ExprPtr MetricSpec::component_expr(int i) const {
    ExprPtr den = F[i].expr;
    if (!is_const_one(conformal))
        den = Expr::mul(Expr::pow(conformal, Rational(2)), den);
    if (is_iv_family()) {
        Rational two_m = m * Rational(2);
        ExprPtr num;
        for (int j = 0; j < 4; ++j) {
            if (j == i) continue;
            ExprPtr ui = U[i] ? U[i] : Expr::variable(i + 1);
            ExprPtr uj = U[j] ? U[j] : Expr::variable(j + 1);
            ExprPtr diff = Expr::sub(ui, uj);
            // literal signed power when 2m is integral, |.|^{2m} otherwise
            ExprPtr fac = two_m.is_integer() ? Expr::pow(diff, two_m)
                                             : Expr::pow(Expr::call(Func::Abs, diff), two_m);
            num = num ? Expr::mul(num, fac) : fac;
        }
        return Expr::div(num, den);
    }
    ExprPtr sum;
    for (int j = 0; j < 4; ++j) {
        if (j == i) continue;
        ExprPtr p = phi[pair_index(i, j)];
        sum = sum ? Expr::add(sum, p) : p;
    }
    ExprPtr num = Expr::call(Func::Exp, Expr::mul(Expr::constant(Rational(2)), sum));
    return Expr::div(num, den);
}

bool MetricSpec::exact_evaluable() const {
    if (!is_iv_family()) return false;
    if (!(m * Rational(2)).is_integer()) return false;
    for (int i = 0; i < 4; ++i)
        if (!rational_evaluable(F[i].expr)) return false;
    for (int i = 0; i < 4; ++i)
        if (U[i] && !rational_evaluable(U[i])) return false;
    return rational_evaluable(conformal);
}

MetricSpec make_euclidean() {
    MetricSpec s;
    s.name = "euclidean";
    s.family = Family::BinaryGeneral;
    for (int p = 0; p < 6; ++p) s.phi[p] = Expr::constant(Rational(0));
    for (int i = 0; i < 4; ++i) s.F[i] = FComponent::from_poly({Rational(1)}, i + 1);
    s.conformal = const_one();
    s.validate();
    return s;
}

MetricSpec make_case_iv(Rational m, std::array<FComponent, 4> F, ExprPtr conformal) {
    MetricSpec s;
    s.name = "case-iv";
    s.family = Family::CaseIv;
    s.m = std::move(m);
    s.F = std::move(F);
    s.conformal = conformal ? std::move(conformal) : const_one();
    s.domain.ordered = true;
    s.domain.box = {Box{2.6, 3.6}, Box{1.4, 2.2}, Box{0.2, 1.0}, Box{-1.6, -0.4}};
    s.validate();
    return s;
}

MetricSpec make_table1(Family row, const Table1Functions& fns, std::array<FComponent, 4> F,
                       ExprPtr conformal) {
    auto need = [](const ExprPtr& e, int var, const char* what) {
        if (!e) throw SpecError(std::string(what) + " is required for this row");
        require_dependence(e, VarDependence::of({var}), what);
        return e;
    };
    MetricSpec s;
    s.family = row;
    s.F = std::move(F);
    s.conformal = conformal ? std::move(conformal) : const_one();
    s.name = family_name(row);
    auto set = [&](int i, int j, ExprPtr e) { s.phi[pair_index(i - 1, j - 1)] = std::move(e); };
    const auto& U = fns.U;
    const auto& V = fns.V;
    const auto& Q = fns.Q;
    auto sum2 = [](ExprPtr a, ExprPtr b) { return Expr::add(std::move(a), std::move(b)); };
    switch (row) {
        case Family::Table1i:
            set(1, 2, fns.free12 ? fns.free12 : Expr::constant(Rational(0)));
            set(3, 4, fns.free34 ? fns.free34 : Expr::constant(Rational(0)));
            set(1, 3, sum2(need(U[0], 1, "U1"), need(U[2], 3, "U3")));
            set(1, 4, sum2(U[0], need(U[3], 4, "U4")));
            set(2, 3, sum2(need(U[1], 2, "U2"), U[2]));
            set(2, 4, sum2(U[1], U[3]));
            break;
        case Family::Table1ii:
            set(1, 2, fns.free12 ? fns.free12 : Expr::constant(Rational(0)));
            set(1, 3, sum2(need(U[0], 1, "U1"), need(U[2], 3, "U3")));
            set(2, 3, sum2(need(U[1], 2, "U2"), U[2]));
            set(1, 4, sum2(need(V[0], 1, "V1"), need(V[3], 4, "V4")));
            set(2, 4, sum2(need(V[1], 2, "V2"), V[3]));
            set(3, 4, sum2(need(Q[2], 3, "Q3"), need(Q[3], 4, "Q4")));
            break;
        case Family::Table1iii:
            set(1, 2, sum2(need(U[0], 1, "U1"), need(U[1], 2, "U2")));
            set(1, 3, sum2(need(V[0], 1, "V1"), need(U[2], 3, "U3")));
            set(1, 4, sum2(need(Q[0], 1, "Q1"), need(U[3], 4, "U4")));
            set(2, 3, sum2(need(V[1], 2, "V2"), need(V[2], 3, "V3")));
            set(2, 4, sum2(need(Q[1], 2, "Q2"), need(V[3], 4, "V4")));
            set(3, 4, sum2(need(Q[2], 3, "Q3"), need(Q[3], 4, "Q4")));
            break;
        case Family::Table1iv:
            s.m = fns.m;
            s.U = fns.U;
            break;
        default:
            throw SpecError("make_table1 expects a table1 row family");
    }
    s.validate();
    return s;
}

MetricSpec make_lemma_family(LemmaCaseTag tag, const std::vector<Rational>& coeffs,
                             ExprPtr conformal) {
    std::array<FComponent, 4> F;
    Rational m;
    std::size_t max_coeffs = 0;
    switch (tag) {
        case LemmaCaseTag::A: {
            if (coeffs.size() != 4)
                throw SpecError("lemma case a needs exactly four constants");
            Rational sum;
            for (const auto& c : coeffs) sum += c;
            if (!sum.is_zero())
                throw SpecError(
                    "lemma case a requires sum F_i = 0 (the L = 0 criterion at m = -1); got sum " +
                    sum.str());
            for (int i = 0; i < 4; ++i) F[i] = FComponent::from_poly({coeffs[i]}, i + 1);
            m = Rational(-1);
            break;
        }
        case LemmaCaseTag::B:
            m = Rational(-1, 2);
            max_coeffs = 3;
            break;
        case LemmaCaseTag::C:
            throw SpecError("lemma case c takes four arbitrary F; use make_lemma_family_c");
        case LemmaCaseTag::D:
            m = Rational(1, 2);
            max_coeffs = 7;
            break;
    }
    if (tag == LemmaCaseTag::B || tag == LemmaCaseTag::D) {
        if (coeffs.empty() || coeffs.size() > max_coeffs)
            throw SpecError("shared polynomial needs 1.." + std::to_string(max_coeffs) +
                            " coefficients");
        for (int i = 0; i < 4; ++i) F[i] = FComponent::from_poly(coeffs, i + 1);
    }
    MetricSpec s = make_case_iv(m, std::move(F), std::move(conformal));
    switch (tag) {
        case LemmaCaseTag::A: s.name = "lemma-a"; break;
        case LemmaCaseTag::B: s.name = "lemma-b"; break;
        case LemmaCaseTag::D: s.name = "lemma-d"; break;
        default: break;
    }
    return s;
}

MetricSpec make_lemma_family_c(std::array<FComponent, 4> F, ExprPtr conformal) {
    MetricSpec s = make_case_iv(Rational(0), std::move(F), std::move(conformal));
    s.name = "lemma-c";
    return s;
}

Admissibility admissible(const MetricSpec& spec, const Point4& p) {
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (std::fabs(p[i] - p[j]) < spec.domain.delta)
                return {false, "coordinate collision (" + std::to_string(i + 1) + "," +
                                   std::to_string(j + 1) + ")"};
    if (spec.domain.ordered)
        for (int i = 0; i < 3; ++i)
            if (!(p[i] > p[i + 1]))
                return {false, "ordering x1 > x2 > x3 > x4 violated at position " +
                                   std::to_string(i + 1)};
    for (int i = 0; i < 4; ++i) {
        double f = eval(spec.F[i].expr, p);
        if (std::fabs(f) <= spec.domain.f_floor)
            return {false, "degenerate metric component " + std::to_string(i + 1)};
    }
    if (std::fabs(eval(spec.conformal, p)) <= spec.domain.f_floor)
        return {false, "conformal factor vanishes"};
    return {true, ""};
}

// ------------------------------ .bwm loader --------------------------------

namespace {

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string w;
    while (in >> w) out.push_back(w);
    return out;
}

}  // namespace

MetricSpec load_bwm(std::istream& in, const std::string& display_name) {
    MetricSpec s;
    s.conformal = nullptr;
    bool have_m = false;
    bool have_family = false;
    std::array<bool, 4> have_F{};
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& msg) {
        throw SpecError(display_name + ":" + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::string trimmed = line;
        auto words = split_ws(trimmed);
        if (words.empty()) continue;
        const std::string& key = words[0];
        auto rest_after = [&](std::size_t nwords) {
            std::size_t pos = 0;
            for (std::size_t w = 0; w < nwords; ++w) {
                pos = line.find(words[w], pos);
                pos += words[w].size();
            }
            auto start = line.find_first_not_of(" \t", pos);
            return start == std::string::npos ? std::string() : line.substr(start);
        };
        if (key == "metric") {
            auto q1 = line.find('"');
            auto q2 = line.rfind('"');
            if (q1 == std::string::npos || q2 <= q1) fail("expected metric \"<name>\"");
            s.name = line.substr(q1 + 1, q2 - q1 - 1);
        } else if (key == "family") {
            if (words.size() != 2) fail("expected family <tag>");
            auto f = family_from_name(words[1]);
            if (!f) fail("unknown family '" + words[1] + "'");
            s.family = *f;
            have_family = true;
        } else if (key == "m") {
            if (words.size() != 2) fail("expected m <rational>");
            s.m = Rational::parse(words[1]);
            have_m = true;
        } else if (key.size() == 5 && key.compare(0, 3, "phi") == 0) {
            int i = key[3] - '0', j = key[4] - '0';
            if (i < 1 || j < 1 || i > 4 || j > 4 || i >= j) fail("bad phi key '" + key + "'");
            if (words.size() < 2 || words[1] != "expr") fail("expected " + key + " expr <expression>");
            try {
                s.phi[pair_index(i - 1, j - 1)] = parse_expr(rest_after(2));
            } catch (const ParseError& e) {
                fail(std::string("in ") + key + ": " + e.what());
            }
        } else if (key.size() == 2 && key[0] == 'F' && key[1] >= '1' && key[1] <= '4') {
            int i = key[1] - '1';
            if (words.size() < 2) fail("expected " + key + " expr|poly ...");
            if (words[1] == "expr") {
                try {
                    s.F[i] = FComponent::from_expr(parse_expr(rest_after(2)));
                } catch (const ParseError& e) {
                    fail(std::string("in ") + key + ": " + e.what());
                }
            } else if (words[1] == "poly") {
                if (words.size() < 3) fail(key + " poly needs at least one coefficient");
                std::vector<Rational> coeffs;
                for (std::size_t w = 2; w < words.size(); ++w)
                    coeffs.push_back(Rational::parse(words[w]));
                s.F[i] = FComponent::from_poly(std::move(coeffs), i + 1);
            } else {
                fail("expected " + key + " expr|poly ...");
            }
            have_F[i] = true;
        } else if (key == "M") {
            if (words.size() < 2 || words[1] != "expr") fail("expected M expr <expression>");
            try {
                s.conformal = parse_expr(rest_after(2));
            } catch (const ParseError& e) {
                fail(std::string("in M: ") + e.what());
            }
        } else if (key == "domain") {
            if (words.size() != 2 || words[1] != "ordered") fail("expected domain ordered");
            s.domain.ordered = true;
        } else if (key == "box") {
            if (words.size() != 4 || words[1].size() != 2 || words[1][0] != 'x')
                fail("expected box x<i> <lo> <hi>");
            int i = words[1][1] - '1';
            if (i < 0 || i > 3) fail("bad box coordinate '" + words[1] + "'");
            s.domain.box[i].lo = Rational::parse(words[2]).to_double();
            s.domain.box[i].hi = Rational::parse(words[3]).to_double();
            if (!(s.domain.box[i].lo < s.domain.box[i].hi)) fail("empty box");
        } else {
            fail("unknown key '" + key + "'");
        }
    }
    lineno = 0;
    if (!have_family) throw SpecError(display_name + ": missing family line");
    for (int i = 0; i < 4; ++i)
        if (!have_F[i])
            throw SpecError(display_name + ": missing F" + std::to_string(i + 1) + " line");
    if (!s.conformal) throw SpecError(display_name + ": missing M line");
    if (s.is_iv_family() && !have_m)
        throw SpecError(display_name + ": family " + family_name(s.family) + " requires m");
    if (!s.is_iv_family()) {
        for (int p = 0; p < 6; ++p)
            if (!s.phi[p])
                throw SpecError(display_name + ": missing phi" +
                                std::to_string(kPairs[p][0] + 1) +
                                std::to_string(kPairs[p][1] + 1) + " line");
    }
    s.validate();
    return s;
}

MetricSpec load_bwm_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SpecError("spec file not found: " + path);
    return load_bwm(in, path);
}

MetricSpec parse_bwm(const std::string& text, const std::string& display_name) {
    std::istringstream in(text);
    return load_bwm(in, display_name);
}

}  // namespace bw
