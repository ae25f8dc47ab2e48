#ifndef XHOM_ERRORS_HPP
#define XHOM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace xhom {

/// Malformed or inconsistent input (dimension mismatch, bad JSON, bad flags).
/// The CLI maps this to exit code 2.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Expression evaluation left its domain (division by zero, ln of a
/// non-positive value, ...). Carries the offending subexpression.
struct EvalError : std::runtime_error {
    EvalError(const std::string& what, std::string subexpr_)
        : std::runtime_error(what + " in '" + subexpr_ + "'"), subexpr(std::move(subexpr_)) {}
    std::string subexpr;
};

/// A deformation path violated a family constraint somewhere on its domain.
struct PathError : InputError {
    using InputError::InputError;
};

/// Moser integration could not proceed (kappa unavailable at some s).
struct FlowError : std::runtime_error {
    FlowError(const std::string& what, double s_) : std::runtime_error(what), s(s_) {}
    double s;
};

}  // namespace xhom

#endif
