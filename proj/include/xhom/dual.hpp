#ifndef XHOM_DUAL_HPP
#define XHOM_DUAL_HPP

#include <cmath>

namespace xhom {

/// Forward-mode dual number: value + derivative, eps^2 = 0. Domain checks
/// (ln of non-positive values etc.) are the caller's job; these functions
/// just follow the calculus.
struct Dual {
    double v = 0.0;  ///< value
    double d = 0.0;  ///< derivative

    friend Dual operator+(Dual a, Dual b) { return {a.v + b.v, a.d + b.d}; }
    friend Dual operator-(Dual a, Dual b) { return {a.v - b.v, a.d - b.d}; }
    friend Dual operator-(Dual a) { return {-a.v, -a.d}; }
    friend Dual operator*(Dual a, Dual b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }
    friend Dual operator/(Dual a, Dual b) {
        return {a.v / b.v, (a.d * b.v - a.v * b.d) / (b.v * b.v)};
    }
    bool operator==(const Dual&) const = default;
};

inline Dual dual_const(double c) { return {c, 0.0}; }
inline Dual dual_var(double s) { return {s, 1.0}; }

inline Dual dexp(Dual a) {
    double e = std::exp(a.v);
    return {e, e * a.d};
}
inline Dual dln(Dual a) { return {std::log(a.v), a.d / a.v}; }
inline Dual dsqrt(Dual a) {
    double r = std::sqrt(a.v);
    return {r, a.d / (2.0 * r)};
}
inline Dual dsin(Dual a) { return {std::sin(a.v), std::cos(a.v) * a.d}; }
inline Dual dcos(Dual a) { return {std::cos(a.v), -std::sin(a.v) * a.d}; }

/// exp(-1/x^2) extended by (0, 0) at x = 0; smooth and flat there.
inline Dual dflatbump(Dual a) {
    if (a.v == 0.0) return {0.0, 0.0};
    double e = std::exp(-1.0 / (a.v * a.v));
    return {e, e * (2.0 / (a.v * a.v * a.v)) * a.d};
}

}  // namespace xhom

#endif
