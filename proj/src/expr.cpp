#include "xhom/expr.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace xhom {

namespace {

struct Token {
    enum Kind { Num, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End } kind;
    double num = 0.0;
    std::string text;
    std::size_t pos = 0;
};

struct Lexer {
    std::string_view s;
    std::size_t i = 0;

    Token next() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        if (i >= s.size()) return {Token::End, 0, "", i};
        const std::size_t start = i;
        const char c = s[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            if (j < s.size() && s[j] == '.') {
                ++j;
                while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            }
            if (j < s.size() && (s[j] == 'e' || s[j] == 'E')) {
                std::size_t k = j + 1;
                if (k < s.size() && (s[k] == '+' || s[k] == '-')) ++k;
                if (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) {
                    while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
                    j = k;
                }
            }
            double v = 0;
            auto [p, ec] = std::from_chars(s.data() + i, s.data() + j, v);
            if (ec != std::errc() || p != s.data() + j)
                throw ParseError("bad number literal", start);
            i = j;
            return {Token::Num, v, std::string(s.substr(start, j - start)), start};
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
                ++j;
            Token t{Token::Ident, 0, std::string(s.substr(i, j - i)), start};
            i = j;
            return t;
        }
        ++i;
        switch (c) {
            case '+': return {Token::Plus, 0, "+", start};
            case '-': return {Token::Minus, 0, "-", start};
            case '*': return {Token::Star, 0, "*", start};
            case '/': return {Token::Slash, 0, "/", start};
            case '^': return {Token::Caret, 0, "^", start};
            case '(': return {Token::LParen, 0, "(", start};
            case ')': return {Token::RParen, 0, ")", start};
            default: throw ParseError(std::string("unexpected character '") + c + "'", start);
        }
    }
};

struct Parser {
    Lexer lex;
    Token cur;
    std::vector<Expr::Node>* nodes;

    void advance() { cur = lex.next(); }
    std::int32_t add(Expr::Node n) {
        nodes->push_back(n);
        return static_cast<std::int32_t>(nodes->size() - 1);
    }

    std::int32_t expr() {
        std::int32_t lhs = term();
        while (cur.kind == Token::Plus || cur.kind == Token::Minus) {
            const ExprOp op = cur.kind == Token::Plus ? ExprOp::Add : ExprOp::Sub;
            advance();
            std::int32_t rhs = term();
            lhs = add({op, 0, lhs, rhs});
        }
        return lhs;
    }

    std::int32_t term() {
        std::int32_t lhs = factor();
        while (cur.kind == Token::Star || cur.kind == Token::Slash) {
            const ExprOp op = cur.kind == Token::Star ? ExprOp::Mul : ExprOp::Div;
            advance();
            std::int32_t rhs = factor();
            lhs = add({op, 0, lhs, rhs});
        }
        return lhs;
    }

    std::int32_t factor() {
        if (cur.kind == Token::Minus) {
            advance();
            std::int32_t x = factor();
            return add({ExprOp::Neg, 0, x, -1});
        }
        return power();
    }

    std::int32_t power() {
        std::int32_t base = atom();
        if (cur.kind == Token::Caret) {
            advance();
            std::int32_t exp = factor();  // right-associative, unary minus allowed
            return add({ExprOp::Pow, 0, base, exp});
        }
        return base;
    }

    std::int32_t atom() {
        if (cur.kind == Token::Num) {
            const double v = cur.num;
            advance();
            return add({ExprOp::Num, v, -1, -1});
        }
        if (cur.kind == Token::LParen) {
            advance();
            std::int32_t inner = expr();
            if (cur.kind != Token::RParen) throw ParseError("expected ')'", cur.pos);
            advance();
            return inner;
        }
        if (cur.kind == Token::Ident) {
            const std::string name = cur.text;
            const std::size_t pos = cur.pos;
            advance();
            if (name == "s") return add({ExprOp::Var, 0, -1, -1});
            ExprOp op;
            if (name == "exp") op = ExprOp::Exp;
            else if (name == "ln") op = ExprOp::Ln;
            else if (name == "sqrt") op = ExprOp::Sqrt;
            else if (name == "sin") op = ExprOp::Sin;
            else if (name == "cos") op = ExprOp::Cos;
            else if (name == "flatbump") op = ExprOp::Flatbump;
            else throw ParseError("unknown identifier '" + name + "'", pos);
            if (cur.kind != Token::LParen) throw ParseError("expected '(' after '" + name + "'", cur.pos);
            advance();
            std::int32_t arg = expr();
            if (cur.kind != Token::RParen) throw ParseError("expected ')'", cur.pos);
            advance();
            return add({op, 0, arg, -1});
        }
        throw ParseError("expected a number, 's', function or '('", cur.pos);
    }
};

}  // namespace

Expr parse_expr(std::string_view text) {
    Expr e;
    Parser p{Lexer{text}, {}, &e.nodes_};
    p.advance();
    e.root_ = p.expr();
    if (p.cur.kind != Token::End) throw ParseError("trailing input", p.cur.pos);
    return e;
}

Expr Expr::number(double v) {
    if (!std::isfinite(v)) throw InputError("non-finite literal");
    Expr e;
    e.nodes_.push_back({ExprOp::Num, v, -1, -1});
    e.root_ = 0;
    return e;
}

Expr Expr::var() {
    Expr e;
    e.nodes_.push_back({ExprOp::Var, 0, -1, -1});
    e.root_ = 0;
    return e;
}

Expr Expr::unary(ExprOp op, const Expr& x) {
    Expr e = x;
    e.nodes_.push_back({op, 0, x.root_, -1});
    e.root_ = static_cast<std::int32_t>(e.nodes_.size() - 1);
    return e;
}

Expr Expr::binary(ExprOp op, const Expr& x, const Expr& y) {
    Expr e = x;
    const auto off = static_cast<std::int32_t>(e.nodes_.size());
    for (Expr::Node n : y.nodes_) {
        if (n.a >= 0) n.a += off;
        if (n.b >= 0) n.b += off;
        e.nodes_.push_back(n);
    }
    e.nodes_.push_back({op, 0, x.root_, y.root_ + off});
    e.root_ = static_cast<std::int32_t>(e.nodes_.size() - 1);
    return e;
}

namespace {

// Printing precedence levels; a child is parenthesized when its level is
// below what its context requires, so parse(print(e)) rebuilds e.
int prec_of(ExprOp op) {
    switch (op) {
        case ExprOp::Add:
        case ExprOp::Sub: return 1;
        case ExprOp::Mul:
        case ExprOp::Div: return 2;
        case ExprOp::Neg: return 3;
        case ExprOp::Pow: return 4;
        default: return 5;
    }
}

std::string num_str(double v) {
    if (v == static_cast<double>(static_cast<long long>(v)) && std::abs(v) < 9e15)
        return std::to_string(static_cast<long long>(v));
    char buf[64] = {0};
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

void print_node(const Expr& e, std::int32_t idx, int min_prec, std::string& out) {
    const Expr::Node& n = e.nodes()[static_cast<std::size_t>(idx)];
    const int p = prec_of(n.op);
    const bool parens = p < min_prec;
    if (parens) out += '(';
    switch (n.op) {
        case ExprOp::Num: out += num_str(n.num); break;
        case ExprOp::Var: out += 's'; break;
        case ExprOp::Neg:
            out += '-';
            print_node(e, n.a, 3, out);
            break;
        case ExprOp::Add:
        case ExprOp::Sub:
            print_node(e, n.a, 1, out);
            out += n.op == ExprOp::Add ? '+' : '-';
            print_node(e, n.b, 2, out);
            break;
        case ExprOp::Mul:
        case ExprOp::Div:
            print_node(e, n.a, 2, out);
            out += n.op == ExprOp::Mul ? '*' : '/';
            print_node(e, n.b, 3, out);
            break;
        case ExprOp::Pow:
            print_node(e, n.a, 5, out);
            out += '^';
            print_node(e, n.b, 3, out);
            break;
        case ExprOp::Exp:
        case ExprOp::Ln:
        case ExprOp::Sqrt:
        case ExprOp::Sin:
        case ExprOp::Cos:
        case ExprOp::Flatbump: {
            const char* name = n.op == ExprOp::Exp    ? "exp"
                               : n.op == ExprOp::Ln   ? "ln"
                               : n.op == ExprOp::Sqrt ? "sqrt"
                               : n.op == ExprOp::Sin  ? "sin"
                               : n.op == ExprOp::Cos  ? "cos"
                                                      : "flatbump";
            out += name;
            out += '(';
            print_node(e, n.a, 0, out);
            out += ')';
            break;
        }
    }
    if (parens) out += ')';
}

std::string subexpr_str(const Expr& e, std::int32_t idx) {
    std::string s;
    print_node(e, idx, 0, s);
    return s;
}

Dual int_pow(Dual u, long long n, const Expr& e, std::int32_t idx) {
    if (n < 0) {
        if (u.v == 0.0) throw EvalError("zero raised to a negative power", subexpr_str(e, idx));
        return dual_const(1.0) / int_pow(u, -n, e, idx);
    }
    Dual r = dual_const(1.0);
    Dual base = u;
    while (n > 0) {
        if (n & 1) r = r * base;
        base = base * base;
        n >>= 1;
    }
    return r;
}

Dual eval_node(const Expr& e, std::int32_t idx, double s) {
    const Expr::Node& n = e.nodes()[static_cast<std::size_t>(idx)];
    switch (n.op) {
        case ExprOp::Num: return dual_const(n.num);
        case ExprOp::Var: return dual_var(s);
        case ExprOp::Neg: return -eval_node(e, n.a, s);
        case ExprOp::Add: return eval_node(e, n.a, s) + eval_node(e, n.b, s);
        case ExprOp::Sub: return eval_node(e, n.a, s) - eval_node(e, n.b, s);
        case ExprOp::Mul: return eval_node(e, n.a, s) * eval_node(e, n.b, s);
        case ExprOp::Div: {
            Dual a = eval_node(e, n.a, s), b = eval_node(e, n.b, s);
            if (b.v == 0.0) throw EvalError("division by zero", subexpr_str(e, idx));
            return a / b;
        }
        case ExprOp::Pow: {
            Dual u = eval_node(e, n.a, s), w = eval_node(e, n.b, s);
            if (w.d == 0.0 && w.v == std::rint(w.v) && std::abs(w.v) <= 1e9)
                return int_pow(u, static_cast<long long>(w.v), e, idx);
            if (u.v <= 0.0)
                throw EvalError("non-positive base with non-integer exponent", subexpr_str(e, idx));
            if (w.d == 0.0) {
                const double val = std::pow(u.v, w.v);
                return {val, w.v * std::pow(u.v, w.v - 1.0) * u.d};
            }
            return dexp(w * dln(u));
        }
        case ExprOp::Exp: return dexp(eval_node(e, n.a, s));
        case ExprOp::Ln: {
            Dual a = eval_node(e, n.a, s);
            if (a.v <= 0.0) throw EvalError("ln of a non-positive value", subexpr_str(e, idx));
            return dln(a);
        }
        case ExprOp::Sqrt: {
            Dual a = eval_node(e, n.a, s);
            if (a.v < 0.0) throw EvalError("sqrt of a negative value", subexpr_str(e, idx));
            if (a.v == 0.0) throw EvalError("sqrt derivative undefined at zero", subexpr_str(e, idx));
            return dsqrt(a);
        }
        case ExprOp::Sin: return dsin(eval_node(e, n.a, s));
        case ExprOp::Cos: return dcos(eval_node(e, n.a, s));
        case ExprOp::Flatbump: return dflatbump(eval_node(e, n.a, s));
    }
    throw InputError("corrupt expression node");
}

}  // namespace

std::string print_expr(const Expr& e) {
    if (e.root() < 0) throw InputError("empty expression");
    return subexpr_str(e, e.root());
}

Dual eval_dual(const Expr& e, double s) {
    if (e.root() < 0) throw InputError("empty expression");
    return eval_node(e, e.root(), s);
}

double eval_value(const Expr& e, double s) { return eval_dual(e, s).v; }

namespace {

bool flat_node(const Expr& e, std::int32_t idx) {
    const Expr::Node& n = e.nodes()[static_cast<std::size_t>(idx)];
    switch (n.op) {
        case ExprOp::Num: return true;
        case ExprOp::Var: return false;
        case ExprOp::Neg:
        case ExprOp::Exp:
        case ExprOp::Ln:
        case ExprOp::Sqrt:
        case ExprOp::Sin:
        case ExprOp::Cos: return flat_node(e, n.a);
        case ExprOp::Add:
        case ExprOp::Sub:
        case ExprOp::Mul:
        case ExprOp::Div:
        case ExprOp::Pow: return flat_node(e, n.a) && flat_node(e, n.b);
        case ExprOp::Flatbump: {
            if (flat_node(e, n.a)) return true;
            // flatbump is flat at argument 0, so a root of the argument at
            // s=0 makes the whole composition flat.
            try {
                return eval_node(e, n.a, 0.0).v == 0.0;
            } catch (const EvalError&) {
                return false;
            }
        }
    }
    return false;
}

struct Stencil {
    std::array<int, 8> offs;
    std::array<double, 8> coef;
    int len;
};

// Order-2 central stencils for the n-th derivative, n = 1..6.
const Stencil kStencils[6] = {
    {{-1, 1}, {-0.5, 0.5}, 2},
    {{-1, 0, 1}, {1, -2, 1}, 3},
    {{-2, -1, 1, 2}, {-0.5, 1, -1, 0.5}, 4},
    {{-2, -1, 0, 1, 2}, {1, -4, 6, -4, 1}, 5},
    {{-3, -2, -1, 1, 2, 3}, {-0.5, 2, -2.5, 2.5, -2, 0.5}, 6},
    {{-3, -2, -1, 0, 1, 2, 3}, {1, -6, 15, -20, 15, -6, 1}, 7},
};

}  // namespace

bool is_flat_jet(const Expr& e) {
    if (e.root() < 0) throw InputError("empty expression");
    return flat_node(e, e.root());
}

DerivResult nth_deriv_at_zero(const Expr& e, int n) {
    if (n < 1 || n > 6) throw InputError("derivative order must be in [1, 6]");
    if (is_flat_jet(e)) return {0.0, 0.0, true};
    const Stencil& st = kStencils[n - 1];
    const std::array<double, 4> steps = {1e-2, 5e-3, 2.5e-3, 1.25e-3};
    std::array<double, 4> d{}, noise{};
    double abs_coef = 0;
    for (int i = 0; i < st.len; ++i) abs_coef += std::abs(st.coef[i]);
    for (std::size_t k = 0; k < steps.size(); ++k) {
        const double h = steps[k];
        double acc = 0, maxf = 0;
        for (int i = 0; i < st.len; ++i) {
            const double f = eval_value(e, st.offs[i] * h);
            maxf = std::max(maxf, std::abs(f));
            acc += st.coef[i] * f;
        }
        const double hn = std::pow(h, n);
        d[k] = acc / hn;
        noise[k] = abs_coef * (1e-15 * maxf + 1e-300) / hn;
    }
    // One Richardson level per adjacent pair; score = pair disagreement plus
    // propagated rounding noise, pick the best-scoring pair.
    std::array<double, 3> rich{}, rich_noise{};
    for (std::size_t k = 0; k < 3; ++k) {
        rich[k] = (4.0 * d[k + 1] - d[k]) / 3.0;
        rich_noise[k] = (4.0 * noise[k + 1] + noise[k]) / 3.0;
    }
    std::size_t best = 0;
    double best_score = 0;
    for (std::size_t k = 0; k < 3; ++k) {
        const double disagree = k == 0 ? std::abs(rich[1] - rich[0])
                                       : std::abs(rich[k] - rich[k - 1]);
        const double score = disagree + rich_noise[k];
        if (k == 0 || score < best_score) {
            best = k;
            best_score = score;
        }
    }
    return {rich[best], best_score + 1e-14 * (1.0 + std::abs(rich[best])), false};
}

}  // namespace xhom
