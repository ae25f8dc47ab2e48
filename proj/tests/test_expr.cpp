#include "doctest.h"

#include <cmath>

#include "xhom/expr.hpp"

using namespace xhom;

namespace {

std::string round_trip(const char* text) { return print_expr(parse_expr(text)); }

}  // namespace

TEST_CASE("printing uses minimal parentheses") {
    CHECK(round_trip("(1+s)*2") == "(1+s)*2");
    CHECK(round_trip("s^(1+s)") == "s^(1+s)");
    CHECK(round_trip("s^2^3") == "s^2^3");  // right-associative
    CHECK(round_trip("(s^2)^3") == "(s^2)^3");
    CHECK(round_trip("1 +  2*s") == "1+2*s");
    CHECK(round_trip("-(1+s)") == "-(1+s)");
    CHECK(round_trip("1-(s-2)") == "1-(s-2)");
    CHECK(round_trip("1-s-2") == "1-s-2");
    CHECK(round_trip("2*(3/s)") == "2*(3/s)");
    CHECK(round_trip("cos(2*s)") == "cos(2*s)");
    CHECK(round_trip("1e-3") == "0.001");
}

TEST_CASE("parse o print is the identity on parsed trees") {
    const char* samples[] = {"-1+s^3",        "flatbump(s)*sin(s)", "sqrt(1+s^2)/(2-s)",
                             "s^-2",          "exp(-1/(1+s))",      "2.5*s^(1/3)",
                             "-(s*(s+1))^2",  "ln(exp(s))"};
    for (const char* t : samples) {
        const Expr e = parse_expr(t);
        CHECK(parse_expr(print_expr(e)) == e);
    }
}

TEST_CASE("programmatic construction matches the parser's layout") {
    const Expr built = Expr::binary(ExprOp::Add, Expr::number(2),
                                    Expr::binary(ExprOp::Pow, Expr::var(), Expr::number(3)));
    CHECK(built == parse_expr("2+s^3"));
    CHECK(print_expr(built) == "2+s^3");
    CHECK(Expr::unary(ExprOp::Sin, Expr::var()) == parse_expr("sin(s)"));
    CHECK_THROWS_AS(Expr::number(1.0 / 0.0), InputError);
}

TEST_CASE("value and derivative fixtures") {
    auto at = [](const char* t, double s) { return eval_dual(parse_expr(t), s); };
    CHECK(at("1+s^2", 3).v == doctest::Approx(10).epsilon(1e-14));
    CHECK(at("1+s^2", 3).d == doctest::Approx(6).epsilon(1e-14));
    CHECK(at("sqrt(s)", 4).v == doctest::Approx(2).epsilon(1e-14));
    CHECK(at("sqrt(s)", 4).d == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(at("s^2", -3).v == doctest::Approx(9).epsilon(1e-14));   // integer powers
    CHECK(at("s^2", -3).d == doctest::Approx(-6).epsilon(1e-14));  // of negatives work
    CHECK(at("s^1.5", 4).v == doctest::Approx(8).epsilon(1e-14));
    CHECK(at("s^1.5", 4).d == doctest::Approx(3).epsilon(1e-14));
    CHECK(at("s^s", 2).v == doctest::Approx(4).epsilon(1e-13));
    CHECK(at("s^s", 2).d == doctest::Approx(4 * (std::log(2) + 1)).epsilon(1e-13));
    CHECK(at("sin(s)^2+cos(s)^2", 0.7).v == doctest::Approx(1).epsilon(1e-14));
    CHECK(at("sin(s)^2+cos(s)^2", 0.7).d == doctest::Approx(0).epsilon(1e-14));
    CHECK(eval_value(parse_expr("2"), 99) == 2);
    CHECK(at("flatbump(s)", 2).v == doctest::Approx(std::exp(-0.25)).epsilon(1e-14));
    CHECK(at("flatbump(s)", 0).v == 0);
    CHECK(at("flatbump(s)", 0).d == 0);
}

TEST_CASE("domain violations name the offending subexpression") {
    auto sub = [](const char* t, double s) {
        try {
            eval_dual(parse_expr(t), s);
        } catch (const EvalError& e) {
            return e.subexpr;
        }
        return std::string("<no throw>");
    };
    CHECK(sub("1/s", 0) == "1/s");
    CHECK(sub("2+1/s", 0) == "1/s");  // innermost culprit, not the whole tree
    CHECK(sub("ln(s-1)", 0.5) == "ln(s-1)");
    CHECK(sub("sqrt(s-2)", 1) == "sqrt(s-2)");
    CHECK(sub("s^0.5", -1) == "s^0.5");
    CHECK(sub("s^-1", 0) == "s^-1");
    CHECK_THROWS_WITH_AS(eval_dual(parse_expr("sqrt(s)"), 0),
                         "sqrt derivative undefined at zero in 'sqrt(s)'", EvalError);
}

TEST_CASE("parse errors carry the byte offset") {
    auto offset_of = [](const char* t) {
        try {
            parse_expr(t);
        } catch (const ParseError& e) {
            return e.offset;
        }
        return static_cast<std::size_t>(-1);
    };
    CHECK(offset_of("1+") == 2);
    CHECK(offset_of("(1+s") == 4);
    CHECK(offset_of("foo(s)") == 0);
    CHECK(offset_of("1 @ 2") == 2);
    CHECK(offset_of("s s") == 2);     // trailing input
    CHECK(offset_of("sin s") == 4);   // function without '('
    CHECK_THROWS_WITH_AS(parse_expr("1+"), "expected a number, 's', function or '(' at offset 2",
                         ParseError);
}

TEST_CASE("structural flatness detection") {
    auto flat = [](const char* t) { return is_flat_jet(parse_expr(t)); };
    CHECK(flat("2"));
    CHECK_FALSE(flat("s"));
    CHECK(flat("flatbump(s)"));
    CHECK(flat("-1+flatbump(s)"));
    CHECK(flat("sin(flatbump(s))"));
    CHECK(flat("flatbump(s^2)"));
    CHECK_FALSE(flat("flatbump(1+s)"));   // argument does not vanish at 0
    CHECK_FALSE(flat("flatbump(s)*s"));   // conservative: product not recognized
    CHECK_FALSE(flat("-1+s^3"));
}

TEST_CASE("numeric derivatives at zero") {
    DerivResult r = nth_deriv_at_zero(parse_expr("s^3"), 3);
    CHECK_FALSE(r.structurally_flat);
    CHECK(std::abs(r.value - 6) < 1e-6);
    CHECK(std::abs(r.value - 6) < 10 * r.error + 1e-9);

    for (int n = 1; n <= 4; ++n) {
        r = nth_deriv_at_zero(parse_expr("exp(s)"), n);
        CHECK(std::abs(r.value - 1) < 1e-4);
    }

    r = nth_deriv_at_zero(parse_expr("-1+s^3"), 3);
    CHECK(std::abs(r.value - 6) < 1e-6);
    r = nth_deriv_at_zero(parse_expr("-1+s^3"), 1);
    CHECK(std::abs(r.value) < 1e-8);

    // structurally flat input short-circuits the stencils entirely
    r = nth_deriv_at_zero(parse_expr("flatbump(s)"), 4);
    CHECK(r.structurally_flat);
    CHECK(r.value == 0);
    CHECK(r.error == 0);

    CHECK_THROWS_AS(nth_deriv_at_zero(parse_expr("s"), 0), InputError);
    CHECK_THROWS_AS(nth_deriv_at_zero(parse_expr("s"), 7), InputError);
}
