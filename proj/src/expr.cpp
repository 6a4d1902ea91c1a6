#include "binaryweyl/expr.hpp"

#include <cctype>
#include <sstream>
#include <vector>

#include "binaryweyl/errors.hpp"

namespace bw {

const char* func_name(Func f) {
    switch (f) {
        case Func::Exp: return "exp";
        case Func::Ln: return "ln";
        case Func::Abs: return "abs";
        case Func::Sqrt: return "sqrt";
        case Func::Sin: return "sin";
        case Func::Cos: return "cos";
    }
    return "?";
}

ExprPtr make_node(Expr::Kind k) { return ExprPtr(new Expr(k)); }

ExprPtr Expr::constant(Rational c) {
    auto e = make_node(Kind::Constant);
    const_cast<Expr&>(*e).value = std::move(c);
    return e;
}
ExprPtr Expr::variable(int idx) {
    if (idx < 1 || idx > 4) throw SpecError("variable index out of range 1..4");
    auto e = make_node(Kind::Variable);
    const_cast<Expr&>(*e).var = idx;
    return e;
}
static ExprPtr binary(Expr::Kind k, ExprPtr l, ExprPtr r) {
    auto e = make_node(k);
    const_cast<Expr&>(*e).a = std::move(l);
    const_cast<Expr&>(*e).b = std::move(r);
    return e;
}
ExprPtr Expr::add(ExprPtr l, ExprPtr r) { return binary(Kind::Add, std::move(l), std::move(r)); }
ExprPtr Expr::sub(ExprPtr l, ExprPtr r) { return binary(Kind::Sub, std::move(l), std::move(r)); }
ExprPtr Expr::mul(ExprPtr l, ExprPtr r) { return binary(Kind::Mul, std::move(l), std::move(r)); }
ExprPtr Expr::div(ExprPtr l, ExprPtr r) { return binary(Kind::Div, std::move(l), std::move(r)); }
ExprPtr Expr::neg(ExprPtr e) {
    auto n = make_node(Kind::Neg);
    const_cast<Expr&>(*n).a = std::move(e);
    return n;
}
ExprPtr Expr::pow(ExprPtr base, Rational exponent) {
    auto n = make_node(Kind::Pow);
    const_cast<Expr&>(*n).a = std::move(base);
    const_cast<Expr&>(*n).value = std::move(exponent);
    return n;
}
ExprPtr Expr::call(Func f, ExprPtr arg) {
    auto n = make_node(Kind::Call);
    const_cast<Expr&>(*n).func = f;
    const_cast<Expr&>(*n).a = std::move(arg);
    return n;
}

// ------------------------------- lexer -------------------------------------

namespace {

struct Token {
    enum Kind { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End } kind;
    std::string text;
    std::size_t offset;
};

class Lexer {
  public:
    explicit Lexer(std::string_view src) : src_(src) { advance(); }

    const Token& peek() const { return tok_; }
    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

  private:
    void advance() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else {
                break;
            }
        }
        std::size_t start = pos_;
        if (pos_ >= src_.size()) {
            tok_ = {Token::End, "", start};
            return;
        }
        char c = src_[pos_];
        auto single = [&](Token::Kind k) {
            ++pos_;
            tok_ = {k, std::string(1, c), start};
        };
        switch (c) {
            case '+': return single(Token::Plus);
            case '-': return single(Token::Minus);
            case '*': return single(Token::Star);
            case '/': return single(Token::Slash);
            case '^': return single(Token::Caret);
            case '(': return single(Token::LParen);
            case ')': return single(Token::RParen);
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t n = pos_;
            bool dot = false;
            while (n < src_.size() &&
                   (std::isdigit(static_cast<unsigned char>(src_[n])) || src_[n] == '.')) {
                if (src_[n] == '.') {
                    if (dot) throw ParseError("malformed number", n);
                    dot = true;
                }
                ++n;
            }
            tok_ = {Token::Number, std::string(src_.substr(pos_, n - pos_)), start};
            pos_ = n;
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t n = pos_;
            while (n < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[n])) || src_[n] == '_'))
                ++n;
            tok_ = {Token::Ident, std::string(src_.substr(pos_, n - pos_)), start};
            pos_ = n;
            return;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    Token tok_{Token::End, "", 0};
};

class Parser {
  public:
    explicit Parser(std::string_view src) : lx_(src) {}

    ExprPtr parse() {
        ExprPtr e = expr();
        if (lx_.peek().kind != Token::End)
            throw ParseError("trailing input '" + lx_.peek().text + "'", lx_.peek().offset);
        return e;
    }

  private:
    ExprPtr expr() {
        ExprPtr e = term();
        while (lx_.peek().kind == Token::Plus || lx_.peek().kind == Token::Minus) {
            Token op = lx_.take();
            ExprPtr r = term();
            e = op.kind == Token::Plus ? Expr::add(e, r) : Expr::sub(e, r);
        }
        return e;
    }

    ExprPtr term() {
        ExprPtr e = factor();
        while (lx_.peek().kind == Token::Star || lx_.peek().kind == Token::Slash) {
            Token op = lx_.take();
            ExprPtr r = factor();
            if (op.kind == Token::Star) {
                e = Expr::mul(e, r);
            } else if (e->kind == Expr::Kind::Constant && r->kind == Expr::Kind::Constant &&
                       !r->value.is_zero()) {
                // fold integer/integer so "p/q" literals round-trip structurally
                e = Expr::constant(e->value / r->value);
            } else {
                e = Expr::div(e, r);
            }
        }
        return e;
    }

    ExprPtr factor() {
        if (lx_.peek().kind == Token::Minus) {
            lx_.take();
            return Expr::neg(factor());
        }
        return power();
    }

    ExprPtr power() {
        ExprPtr base = atom();
        if (lx_.peek().kind != Token::Caret) return base;
        lx_.take();
        return Expr::pow(base, exponent_literal());
    }

    Rational exponent_literal() {
        bool paren = false;
        if (lx_.peek().kind == Token::LParen) {
            paren = true;
            lx_.take();
        }
        bool negative = false;
        if (lx_.peek().kind == Token::Minus) {
            negative = true;
            lx_.take();
        }
        Token num = lx_.take();
        if (num.kind != Token::Number)
            throw ParseError("Pow exponent must be a numeric literal", num.offset);
        Rational r = Rational::parse(num.text);
        // "p/q" exponents only inside parens; a bare slash is a division
        if (paren && lx_.peek().kind == Token::Slash) {
            lx_.take();
            Token den = lx_.take();
            if (den.kind != Token::Number)
                throw ParseError("malformed rational exponent", den.offset);
            Rational d = Rational::parse(den.text);
            if (d.is_zero()) throw ParseError("zero denominator in exponent", den.offset);
            r = r / d;
        }
        if (negative) r = -r;
        if (paren) {
            Token close = lx_.take();
            if (close.kind != Token::RParen)
                throw ParseError("expected ')' after exponent", close.offset);
        }
        return r;
    }

    ExprPtr atom() {
        Token t = lx_.take();
        switch (t.kind) {
            case Token::Number:
                return Expr::constant(Rational::parse(t.text));
            case Token::LParen: {
                ExprPtr e = expr();
                Token close = lx_.take();
                if (close.kind != Token::RParen)
                    throw ParseError("expected ')'", close.offset);
                return e;
            }
            case Token::Ident: {
                if (t.text.size() == 2 && t.text[0] == 'x' && t.text[1] >= '1' && t.text[1] <= '4')
                    return Expr::variable(t.text[1] - '0');
                Func f;
                if (t.text == "exp") f = Func::Exp;
                else if (t.text == "ln") f = Func::Ln;
                else if (t.text == "abs") f = Func::Abs;
                else if (t.text == "sqrt") f = Func::Sqrt;
                else if (t.text == "sin") f = Func::Sin;
                else if (t.text == "cos") f = Func::Cos;
                else throw ParseError("unknown identifier \"" + t.text + "\"", t.offset);
                Token open = lx_.take();
                if (open.kind != Token::LParen)
                    throw ParseError("expected '(' after " + t.text, open.offset);
                ExprPtr arg = expr();
                Token close = lx_.take();
                if (close.kind != Token::RParen)
                    throw ParseError("expected ')'", close.offset);
                return Expr::call(f, arg);
            }
            default:
                throw ParseError("unexpected token '" + t.text + "'", t.offset);
        }
    }

    Lexer lx_;
};

int precedence(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::Add:
        case Expr::Kind::Sub: return 1;
        case Expr::Kind::Mul:
        case Expr::Kind::Div: return 2;
        case Expr::Kind::Neg: return 3;
        case Expr::Kind::Pow: return 4;
        default: return 5;
    }
}

void print(const ExprPtr& e, std::ostringstream& out, int parent_prec, bool right_child) {
    int prec = precedence(*e);
    bool parens = prec < parent_prec ||
                  (prec == parent_prec && right_child &&
                   (e->kind == Expr::Kind::Add || e->kind == Expr::Kind::Sub ||
                    e->kind == Expr::Kind::Mul || e->kind == Expr::Kind::Div));
    if (parens) out << "(";
    switch (e->kind) {
        case Expr::Kind::Constant: {
            // non-integer literals print as (p/q): their text contains '/' and
            // must stay a unit when re-lexed inside a larger expression
            if (e->value.sign() < 0 || !e->value.is_integer())
                out << "(" << e->value.str() << ")";
            else
                out << e->value.str();
            break;
        }
        case Expr::Kind::Variable: out << "x" << e->var; break;
        case Expr::Kind::Add:
            print(e->a, out, prec, false);
            out << " + ";
            print(e->b, out, prec, true);
            break;
        case Expr::Kind::Sub:
            print(e->a, out, prec, false);
            out << " - ";
            print(e->b, out, prec, true);
            break;
        case Expr::Kind::Mul:
            print(e->a, out, prec, false);
            out << "*";
            print(e->b, out, prec, true);
            break;
        case Expr::Kind::Div:
            print(e->a, out, prec, false);
            out << "/";
            print(e->b, out, prec, true);
            break;
        case Expr::Kind::Neg:
            out << "-";
            print(e->a, out, prec, true);
            break;
        case Expr::Kind::Pow:
            print(e->a, out, prec + 1, false);
            out << "^";
            if (e->value.sign() < 0 || !e->value.is_integer())
                out << "(" << e->value.str() << ")";
            else
                out << e->value.str();
            break;
        case Expr::Kind::Call:
            out << func_name(e->func) << "(";
            print(e->a, out, 0, false);
            out << ")";
            break;
    }
    if (parens) out << ")";
}

}  // namespace

ExprPtr parse_expr(std::string_view source) { return Parser(source).parse(); }

std::string to_string(const ExprPtr& e) {
    std::ostringstream out;
    print(e, out, 0, false);
    return out.str();
}

VarDependence dependence(const ExprPtr& e) {
    VarDependence d;
    switch (e->kind) {
        case Expr::Kind::Constant: break;
        case Expr::Kind::Variable: d.mask |= 1u << (e->var - 1); break;
        case Expr::Kind::Neg:
        case Expr::Kind::Pow:
        case Expr::Kind::Call: d = dependence(e->a); break;
        default:
            d.mask = dependence(e->a).mask | dependence(e->b).mask;
            break;
    }
    return d;
}

bool structurally_equal(const ExprPtr& x, const ExprPtr& y) {
    if (x->kind != y->kind) return false;
    switch (x->kind) {
        case Expr::Kind::Constant: return x->value == y->value;
        case Expr::Kind::Variable: return x->var == y->var;
        case Expr::Kind::Neg: return structurally_equal(x->a, y->a);
        case Expr::Kind::Pow:
            return x->value == y->value && structurally_equal(x->a, y->a);
        case Expr::Kind::Call:
            return x->func == y->func && structurally_equal(x->a, y->a);
        default:
            return structurally_equal(x->a, y->a) && structurally_equal(x->b, y->b);
    }
}

template <class T>
T eval(const ExprPtr& e, const std::array<T, 4>& point) {
    switch (e->kind) {
        case Expr::Kind::Constant: return ring_traits<T>::from_rational(e->value);
        case Expr::Kind::Variable: return point[e->var - 1];
        case Expr::Kind::Add: return eval(e->a, point) + eval(e->b, point);
        case Expr::Kind::Sub: return eval(e->a, point) - eval(e->b, point);
        case Expr::Kind::Mul: return eval(e->a, point) * eval(e->b, point);
        case Expr::Kind::Div: {
            T num = eval(e->a, point);
            T den = eval(e->b, point);
            if (is_ring_zero(den)) throw DomainError("division by zero");
            return num / den;
        }
        case Expr::Kind::Neg: return -eval(e->a, point);
        case Expr::Kind::Pow: {
            T base = eval(e->a, point);
            if (e->value.is_integer()) return ring_pow_int(base, e->value.to_long());
            return ring_pow_rat(base, e->value);
        }
        case Expr::Kind::Call: {
            T arg = eval(e->a, point);
            switch (e->func) {
                case Func::Exp: return ring_exp(arg);
                case Func::Ln: return ring_ln(arg);
                case Func::Abs: return ring_abs(arg);
                case Func::Sqrt: return ring_sqrt(arg);
                case Func::Sin: return ring_sin(arg);
                case Func::Cos: return ring_cos(arg);
            }
            throw SpecError("unreachable function tag");
        }
    }
    throw SpecError("unreachable expression kind");
}

template double eval<double>(const ExprPtr&, const std::array<double, 4>&);
template Rational eval<Rational>(const ExprPtr&, const std::array<Rational, 4>&);
template Jet2<double> eval<Jet2<double>>(const ExprPtr&, const std::array<Jet2<double>, 4>&);
template Jet2<Rational> eval<Jet2<Rational>>(const ExprPtr&,
                                             const std::array<Jet2<Rational>, 4>&);

double fd_check(const ExprPtr& e, const std::array<double, 4>& p, double h) {
    Jet2<double> jet = eval(e, seed_point(p));
    auto at = [&](const std::array<double, 4>& q) { return eval(e, q); };
    double worst = 0.0;
    double f0 = at(p);
    for (int i = 0; i < 4; ++i) {
        std::array<double, 4> pp = p, pm = p;
        pp[i] += h;
        pm[i] -= h;
        double fp = at(pp), fm = at(pm);
        worst = std::fmax(worst, std::fabs((fp - fm) / (2 * h) - jet.g[i]));
        worst = std::fmax(worst, std::fabs((fp - 2 * f0 + fm) / (h * h) - jet.h(i, i)));
        for (int j = i + 1; j < 4; ++j) {
            std::array<double, 4> qpp = p, qpm = p, qmp = p, qmm = p;
            qpp[i] += h; qpp[j] += h;
            qpm[i] += h; qpm[j] -= h;
            qmp[i] -= h; qmp[j] += h;
            qmm[i] -= h; qmm[j] -= h;
            double fd = (at(qpp) - at(qpm) - at(qmp) + at(qmm)) / (4 * h * h);
            worst = std::fmax(worst, std::fabs(fd - jet.h(i, j)));
        }
    }
    return worst;
}

}  // namespace bw
