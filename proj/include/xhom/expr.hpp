#ifndef XHOM_EXPR_HPP
#define XHOM_EXPR_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "xhom/dual.hpp"
#include "xhom/errors.hpp"

namespace xhom {

/// Syntax error with the byte offset of the offending token.
struct ParseError : InputError {
    ParseError(const std::string& what, std::size_t offset_)
        : InputError(what + " at offset " + std::to_string(offset_)), offset(offset_) {}
    std::size_t offset;
};

enum class ExprOp : std::uint8_t {
    Num, Var,                      // leaves: literal, the variable `s`
    Neg,                           // unary minus
    Add, Sub, Mul, Div, Pow,       // binary; `^` right-associative
    Exp, Ln, Sqrt, Sin, Cos,       // builtin functions
    Flatbump,                      // exp(-1/x^2), flat at 0 by definition
};

/// Immutable expression tree in one variable `s`, stored as a small arena.
/// Built by parse_expr; evaluation is pure, so values are safe to share
/// across threads.
///
/// Grammar (precedence climbing):
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := '-' factor | power
///   power  := atom ('^' factor)?
///   atom   := number | 's' | name '(' expr ')' | '(' expr ')'
/// Numbers: digits, optional fraction and exponent (1, 0.5, 1e-3).
class Expr {
public:
    struct Node {
        ExprOp op;
        double num = 0.0;          // Num payload
        std::int32_t a = -1, b = -1;  // child indices
        bool operator==(const Node&) const = default;
    };

    const std::vector<Node>& nodes() const { return nodes_; }
    std::int32_t root() const { return root_; }
    bool operator==(const Expr&) const = default;

    /// Building blocks for programmatic construction (tests, oracles).
    static Expr number(double v);
    static Expr var();
    static Expr unary(ExprOp op, const Expr& x);
    static Expr binary(ExprOp op, const Expr& x, const Expr& y);

private:
    friend Expr parse_expr(std::string_view);
    std::vector<Node> nodes_;
    std::int32_t root_ = -1;
};

Expr parse_expr(std::string_view text);

/// Minimal-parenthesis rendering; parse_expr(print_expr(e)) == e.
std::string print_expr(const Expr& e);

/// Value and first derivative at s. Throws EvalError naming the offending
/// subexpression on domain violations (x/0, ln(x<=0), sqrt(x<0), 0^neg, ...).
Dual eval_dual(const Expr& e, double s);
double eval_value(const Expr& e, double s);

/// Conservative structural check that every derivative of order >= 1
/// vanishes at s = 0 (the jet at 0 is constant). Constants are flat;
/// flatbump(u) is flat when u is flat or u(0) = 0; smooth combinations of
/// flat parts stay flat. `false` means "not provably flat".
bool is_flat_jet(const Expr& e);

struct DerivResult {
    double value;
    double error;             ///< honest estimate: Richardson disagreement + rounding noise
    bool structurally_flat;   ///< is_flat_jet fired; value/error are 0 exactly
};

/// n-th derivative at 0 (1 <= n <= 6) by order-2 central stencils on steps
/// 1e-2 ... 1.25e-3 with Richardson extrapolation; picks the step pair with
/// the best noise/agreement score.
DerivResult nth_deriv_at_zero(const Expr& e, int n);

}  // namespace xhom

#endif
