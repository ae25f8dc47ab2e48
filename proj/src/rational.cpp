#include "xhom/rational.hpp"

#include <cctype>

namespace xhom {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

Rat parse_rat(std::string_view text) {
    std::string_view s = text;
    bool negative = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    std::string_view num = s, den = "1";
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        num = s.substr(0, slash);
        den = s.substr(slash + 1);
    }
    if (!all_digits(num) || !all_digits(den))
        throw InputError("bad rational literal '" + std::string(text) + "'");
    Int n{std::string(num)}, d{std::string(den)};
    if (d == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
    Rat r{n, d};
    return negative ? -r : r;
}

std::string rat_str(const Rat& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

double to_double(const Rat& r) { return r.convert_to<double>(); }

}  // namespace xhom
