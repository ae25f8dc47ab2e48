#ifndef XHOM_RATIONAL_HPP
#define XHOM_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <string_view>

#include "xhom/errors.hpp"

namespace xhom {

/// Exact rational scalar used throughout the algebraic side.
using Rat = boost::multiprecision::cpp_rational;
using Int = boost::multiprecision::cpp_int;

/// Parses "p", "-p" or "p/q" (q > 0 after canonicalization). Throws
/// InputError on anything else, including q == 0.
Rat parse_rat(std::string_view text);

/// Inverse of parse_rat: "p" for integers, "p/q" otherwise.
std::string rat_str(const Rat& r);

double to_double(const Rat& r);

}  // namespace xhom

#endif
