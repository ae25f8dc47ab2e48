#include "xhom/deformation.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace xhom {

namespace {

std::string fmt_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

double grid_at(double lo, double hi, int n, int i) {
    return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
}

struct Scan {
    bool all_below;
    double max_abs = 0, arg_s = 0;
};

// |f| <= threshold at n equispaced samples of [lo, hi]?
Scan scan_zero(const std::function<double(double)>& f, double lo, double hi,
               double threshold, int n = tol::kZeroScanSamples) {
    Scan sc{true, 0, lo};
    for (int i = 0; i < n; ++i) {
        const double s = grid_at(lo, hi, n, i);
        const double v = std::abs(f(s));
        if (v > sc.max_abs) {
            sc.max_abs = v;
            sc.arg_s = s;
        }
        if (v > threshold) sc.all_below = false;
    }
    return sc;
}

}  // namespace

DeformationPath DeformationPath::make_g1(Expr f, double eps) {
    DeformationPath p;
    p.family = Family::G1;
    p.p1 = std::move(f);
    p.p2 = Expr::number(0.0);
    p.eps = eps;
    p.validate();
    return p;
}

DeformationPath DeformationPath::make_g2(Expr k, Expr m, double eps) {
    DeformationPath p;
    p.family = Family::G2;
    p.p1 = std::move(k);
    p.p2 = std::move(m);
    p.eps = eps;
    p.validate();
    return p;
}

DeformationPath DeformationPath::make_g3(Expr g, Expr h, double eps) {
    DeformationPath p;
    p.family = Family::G3;
    p.p1 = std::move(g);
    p.p2 = std::move(h);
    p.eps = eps;
    p.validate();
    return p;
}

DeformationPath DeformationPath::from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("family") || !j["family"].is_string())
        throw InputError("deformation json needs a 'family' tag (g1|g2|g3)");
    const std::string fam = j["family"].get<std::string>();
    const double eps = j.value("eps", 0.5);
    auto expr_field = [&](const char* key) {
        if (!j.contains(key) || !j[key].is_string())
            throw InputError(std::string("deformation json for ") + fam +
                             " needs expression string '" + key + "'");
        return parse_expr(j[key].get<std::string>());
    };
    if (fam == "g1") return make_g1(expr_field("f"), eps);
    if (fam == "g2") return make_g2(expr_field("k"), expr_field("m"), eps);
    if (fam == "g3") return make_g3(expr_field("g"), expr_field("h"), eps);
    throw InputError("unknown family '" + fam + "' (expected g1|g2|g3)");
}

nlohmann::json DeformationPath::to_json() const {
    switch (family) {
        case Family::G1:
            return {{"family", "g1"}, {"f", print_expr(p1)}, {"eps", eps}};
        case Family::G2:
            return {{"family", "g2"}, {"k", print_expr(p1)}, {"m", print_expr(p2)}, {"eps", eps}};
        case Family::G3:
            return {{"family", "g3"}, {"g", print_expr(p1)}, {"h", print_expr(p2)}, {"eps", eps}};
    }
    throw InputError("corrupt deformation path");
}

FamilySpec DeformationPath::family_at(double s) const {
    if (!(std::abs(s) <= eps))
        throw PathError("s = " + fmt_g(s) + " outside the path domain [-" + fmt_g(eps) + ", " +
                        fmt_g(eps) + "]");
    switch (family) {
        case Family::G1: return Gamma1{eval_value(p1, s)};
        case Family::G2: return Gamma2{eval_value(p1, s), eval_value(p2, s)};
        case Family::G3: {
            const double g = eval_value(p1, s), h = eval_value(p2, s);
            try {
                return Gamma3(g, h);
            } catch (const InputError& e) {
                throw PathError("invalid g3 member at s = " + fmt_g(s) + ": " + e.what());
            }
        }
    }
    throw InputError("corrupt deformation path");
}

void DeformationPath::validate() const {
    if (!(eps > 0) || !std::isfinite(eps)) throw InputError("path needs finite eps > 0");
    (void)family_at(0.0);
    if (family != Family::G3) return;
    for (int i = 0; i < tol::kPathScanSamples; ++i) {
        const double s = grid_at(-eps, eps, tol::kPathScanSamples, i);
        const double g = eval_value(p1, s);
        if (std::abs(g) <= tol::kPathMargin || std::abs(g + 1.0) <= tol::kPathMargin)
            throw PathError("g3 parameter g(s) = " + fmt_g(g) + " too close to {0, -1} at s = " +
                            fmt_g(s));
    }
}

UT2 eval_path(const DeformationPath& P, UT2 g, double s) {
    return eval_family(P.family_at(s), g);
}

HVec dhat_closed(const DeformationPath& P, UT2 g, double s) {
    (void)P.family_at(s);  // domain check
    const double a = g.a, b = g.b;
    switch (P.family) {
        case DeformationPath::Family::G1: {
            const Dual f = eval_dual(P.p1, s);
            return {0.0, f.d * std::log(a)};
        }
        case DeformationPath::Family::G2: {
            const Dual k = eval_dual(P.p1, s), m = eval_dual(P.p2, s);
            return {0.0, k.d * a * b + m.d / 2.0 * (a * a - 1.0)};
        }
        case DeformationPath::Family::G3: {
            const Dual gg = eval_dual(P.p1, s), hh = eval_dual(P.p2, s);
            const double lna = std::log(a);
            const double den = 2.0 * gg.v + 2.0;
            const double A = std::pow(a, 2.0 + 2.0 * gg.v) - 1.0;
            const double x = gg.d * lna;
            const double y = hh.v * gg.d * lna / (gg.v + 1.0) + hh.d * A / den -
                             2.0 * hh.v * gg.d * A / (den * den);
            return {x, y};
        }
    }
    throw InputError("corrupt deformation path");
}

HVec dhat_numeric(const DeformationPath& P, UT2 g, double s) {
    const UT2 at = eval_path(P, g, s);
    const double ap =
        richardson_diff([&](double t) { return eval_path(P, g, s + t).a; }, 0.0);
    const double bp =
        richardson_diff([&](double t) { return eval_path(P, g, s + t).b; }, 0.0);
    // (d/dt D_{t+s}(g)) D_s(g)^{-1} = [[a'/a0, b' a0 - a' b0], [0, -a'/a0]]
    return {ap / at.a, bp * at.a - ap * at.b};
}

CocycleSample sample_dhat(const DeformationPath& P, double s, const std::vector<UT2>& grid) {
    CocycleSample out;
    out.s = s;
    out.grid = grid;
    out.values.reserve(grid.size());
    for (const UT2& g : grid) out.values.push_back(dhat_closed(P, g, s));
    return out;
}

double cocycle_residual(const DeformationPath& P, double s,
                        std::span<const std::pair<UT2, UT2>> pairs) {
    const FamilySpec F = P.family_at(s);
    auto alpha = [&](UT2 g) { return dhat_closed(P, g, s); };
    double worst = 0;
    for (const auto& [g1, g2] : pairs) {
        const HVec r = group_coboundary1(F, alpha, g1, g2);
        worst = std::fmax(worst, std::fmax(std::abs(r.x), std::abs(r.y)));
    }
    return worst;
}

std::optional<KappaSolution> solve_kappa(const DeformationPath& P, double s) {
    (void)P.family_at(s);
    switch (P.family) {
        case DeformationPath::Family::G1: {
            const Dual f = eval_dual(P.p1, s);
            if (std::abs(f.v) > tol::kZeroThreshold)
                return KappaSolution{{-f.d / (2.0 * f.v), 0.0}, false, true};
            if (std::abs(f.d) <= tol::kZeroThreshold)
                // f(s) = f'(s) = 0: D_s(g) g is the identity, so theta is
                // trivial and every kappa solves d kappa = 0 = dhat.
                return KappaSolution{{0.0, 0.0}, true, true};
            return std::nullopt;
        }
        case DeformationPath::Family::G2: {
            const Dual k = eval_dual(P.p1, s), m = eval_dual(P.p2, s);
            const double K = k.v + 1.0;
            if (std::abs(K) > tol::kZeroThreshold) {
                const double k1 = -k.d / (2.0 * K);
                return KappaSolution{{k1, m.d / 2.0 + m.v * k1}, false, false};
            }
            if (std::abs(k.d) <= tol::kZeroThreshold)
                return KappaSolution{{0.0, m.d / 2.0}, true, false};
            return std::nullopt;
        }
        case DeformationPath::Family::G3: {
            const Dual g = eval_dual(P.p1, s), h = eval_dual(P.p2, s);
            if (std::abs(g.d) > tol::kZeroThreshold) return std::nullopt;
            return KappaSolution{{0.0, h.d / (2.0 * g.v + 2.0)}, true, false};
        }
    }
    throw InputError("corrupt deformation path");
}

double gauge_verify(const DeformationPath& P, const std::function<UT2(double)>& tau,
                    double s_lo, double s_hi, int samples, const std::vector<UT2>& elements) {
    const UT2 t0 = tau(0.0);
    if (std::fmax(std::abs(t0.a - 1.0), std::abs(t0.b)) > tol::kExact)
        throw InputError("gauge must satisfy tau(0) = identity");
    std::vector<UT2> base;
    base.reserve(elements.size());
    for (const UT2& g : elements) base.push_back(eval_path(P, g, 0.0));
    double worst = 0;
    for (int i = 0; i < samples; ++i) {
        const double s = samples == 1 ? s_lo : grid_at(s_lo, s_hi, samples, i);
        const UT2 ts = tau(s);
        const UT2 ts_inv = {1.0 / ts.a, -ts.b};
        for (std::size_t gi = 0; gi < elements.size(); ++gi) {
            const UT2 lhs = eval_path(P, elements[gi], s);
            const UT2 rhs = group_mul(ts, group_mul(base[gi], conj_action(elements[gi], ts_inv)));
            const double diff = std::fmax(std::abs(lhs.a - rhs.a), std::abs(lhs.b - rhs.b));
            if (!std::isfinite(diff)) return std::numeric_limits<double>::infinity();
            worst = std::fmax(worst, diff);
        }
    }
    return worst;
}

const char* kind_name(RigidityVerdict::Kind k) {
    switch (k) {
        case RigidityVerdict::Kind::Trivial: return "trivial";
        case RigidityVerdict::Kind::Nontrivial: return "nontrivial";
        case RigidityVerdict::Kind::Indeterminate: return "indeterminate";
        case RigidityVerdict::Kind::ConstantPath: return "constant-path";
    }
    return "?";
}

namespace {

// Largest contiguous sample window around s = 0 inside [-eps/2, eps/2]
// where `ok` holds, then the gauge residual over that window.
void attach_gauge(RigidityVerdict& v, const DeformationPath& P,
                  std::function<UT2(double)> tau, const std::function<bool(double)>& ok) {
    const int n = tol::kZeroScanSamples;
    const double lo = -P.eps / 2.0, hi = P.eps / 2.0;
    const int center = (n - 1) / 2;
    auto safe_ok = [&](double s) {
        try {
            return ok(s);
        } catch (const EvalError&) {
            return false;
        }
    };
    int ilo = center, ihi = center;
    while (ilo > 0 && safe_ok(grid_at(lo, hi, n, ilo - 1))) --ilo;
    while (ihi < n - 1 && safe_ok(grid_at(lo, hi, n, ihi + 1))) ++ihi;
    v.verified_lo = grid_at(lo, hi, n, ilo);
    v.verified_hi = grid_at(lo, hi, n, ihi);
    v.gauge_residual = gauge_verify(P, tau, v.verified_lo, v.verified_hi);
    v.gauge = std::move(tau);
}

RigidityVerdict verdict_g1(const DeformationPath& P) {
    const Dual f0 = eval_dual(P.p1, 0.0);
    RigidityVerdict v;
    if (std::abs(f0.v) > tol::kZeroThreshold) {
        v.kind = RigidityVerdict::Kind::Trivial;
        v.certificate = "f(0) = " + fmt_g(f0.v) + " is nonzero (threshold " +
                        fmt_g(tol::kZeroThreshold) + ")";
        v.gauge_formula = "tau(s) = [[sqrt(f(s)/f(0)), 0], [0, sqrt(f(0)/f(s))]]";
        const DeformationPath Pc = P;
        const double fv0 = f0.v;
        attach_gauge(
            v, P,
            [Pc, fv0](double s) -> UT2 { return {std::sqrt(eval_value(Pc.p1, s) / fv0), 0.0}; },
            [&P, fv0](double s) { return eval_value(P.p1, s) / fv0 > tol::kZeroThreshold; });
        return v;
    }
    const Scan sc = scan_zero([&](double s) { return eval_value(P.p1, s); }, -P.eps, P.eps,
                              tol::kZeroThreshold);
    if (sc.all_below) {
        v.kind = RigidityVerdict::Kind::ConstantPath;
        v.certificate = "f vanishes at all " + std::to_string(tol::kZeroScanSamples) +
                        " samples of [-eps, eps] (threshold " + fmt_g(tol::kZeroThreshold) +
                        "); D_s is constantly the inverse map";
        return v;
    }
    v.kind = RigidityVerdict::Kind::Nontrivial;
    v.certificate = "f(0) = 0 but f is not identically zero: f'(0) = " + fmt_g(f0.d) +
                    ", |f| reaches " + fmt_g(sc.max_abs) + " at s = " + fmt_g(sc.arg_s) +
                    "; the invariant f(s) = f(0) exp(-2 int kappa_1) cannot be matched";
    return v;
}

RigidityVerdict verdict_g2(const DeformationPath& P) {
    const Dual k0 = eval_dual(P.p1, 0.0);
    const Dual m0 = eval_dual(P.p2, 0.0);
    const double K0 = k0.v + 1.0;
    RigidityVerdict v;
    if (std::abs(K0) > tol::kZeroThreshold) {
        v.kind = RigidityVerdict::Kind::Trivial;
        v.certificate = "k(0) = " + fmt_g(k0.v) + " != -1 (threshold " +
                        fmt_g(tol::kZeroThreshold) + ")";
        v.gauge_formula =
            "tau(s) = [[sqrt((k(s)+1)/(k(0)+1)), (m(0)(k(s)+1) - m(s)(k(0)+1)) / "
            "(2 sqrt((k(0)+1)(k(s)+1)))], [0, sqrt((k(0)+1)/(k(s)+1))]]";
        const DeformationPath Pc = P;
        const double mv0 = m0.v;
        attach_gauge(
            v, P,
            [Pc, K0, mv0](double s) -> UT2 {
                const double Ks = eval_value(Pc.p1, s) + 1.0;
                const double ms = eval_value(Pc.p2, s);
                return {std::sqrt(Ks / K0), (mv0 * Ks - ms * K0) / (2.0 * std::sqrt(K0 * Ks))};
            },
            [&P, K0](double s) { return (eval_value(P.p1, s) + 1.0) / K0 > tol::kZeroThreshold; });
        return v;
    }
    const Scan sc = scan_zero([&](double s) { return eval_value(P.p1, s) + 1.0; }, -P.eps, P.eps,
                              tol::kZeroThreshold);
    if (sc.all_below) {
        v.kind = RigidityVerdict::Kind::Trivial;
        v.certificate = "k = -1 at all " + std::to_string(tol::kZeroScanSamples) +
                        " samples; the path moves only through m(s)";
        v.gauge_formula = "tau(s) = [[1, (m(0) - m(s))/2], [0, 1]]";
        const DeformationPath Pc = P;
        const double mv0 = m0.v;
        attach_gauge(
            v, P,
            [Pc, mv0](double s) -> UT2 { return {1.0, (mv0 - eval_value(Pc.p2, s)) / 2.0}; },
            [](double) { return true; });
        return v;
    }
    if (is_flat_jet(P.p1)) {
        v.kind = RigidityVerdict::Kind::Indeterminate;
        v.certificate =
            "k(0) = -1 and k + 1 is structurally flat at 0 (flatbump): no Taylor "
            "coefficient can decide, and the path is not constant in k";
        return v;
    }
    for (int n = 1; n <= 6; ++n) {
        const DerivResult dr = nth_deriv_at_zero(P.p1, n);
        if (std::abs(dr.value) >
            std::fmax(tol::kDerivSafety * dr.error, tol::kDerivDetectFloor)) {
            v.kind = RigidityVerdict::Kind::Nontrivial;
            v.certificate = "k(0) = -1 with lowest nonvanishing derivative k^(" +
                            std::to_string(n) + ")(0) = " + fmt_g(dr.value) + " (+/- " +
                            fmt_g(dr.error) + ")";
            return v;
        }
    }
    v.kind = RigidityVerdict::Kind::Indeterminate;
    v.certificate =
        "k(0) = -1 and derivatives k^(n)(0), n = 1..6, are all below the detection "
        "threshold: numerically flat, cannot decide";
    return v;
}

RigidityVerdict verdict_g3(const DeformationPath& P) {
    const Scan sc = scan_zero([&](double s) { return eval_dual(P.p1, s).d; }, -P.eps, P.eps,
                              tol::kZeroThreshold);
    RigidityVerdict v;
    if (sc.all_below) {
        const Gamma3 base = std::get<Gamma3>(P.family_at(0.0));
        v.kind = RigidityVerdict::Kind::Trivial;
        v.certificate = "g'(s) = 0 at all " + std::to_string(tol::kZeroScanSamples) +
                        " samples: p = " + fmt_g(base.p) + " is frozen, only h(s) moves";
        v.gauge_formula = "tau(s) = [[1, (h(0) - h(s))/(2p + 2)], [0, 1]]";
        const DeformationPath Pc = P;
        const double pval = base.p, q0 = base.q;
        attach_gauge(
            v, P,
            [Pc, pval, q0](double s) -> UT2 {
                return {1.0, (q0 - eval_value(Pc.p2, s)) / (2.0 * pval + 2.0)};
            },
            [](double) { return true; });
        return v;
    }
    v.kind = RigidityVerdict::Kind::Nontrivial;
    v.certificate = "g'(" + fmt_g(sc.arg_s) + ") = " + fmt_g(sc.max_abs) +
                    " != 0: the x-component g'(s) ln(a) of the deformation cocycle is not a "
                    "coboundary (theta_D fixes the x-coordinate)";
    return v;
}

}  // namespace

RigidityVerdict rigidity_verdict(const DeformationPath& P) {
    P.validate();
    switch (P.family) {
        case DeformationPath::Family::G1: return verdict_g1(P);
        case DeformationPath::Family::G2: return verdict_g2(P);
        case DeformationPath::Family::G3: return verdict_g3(P);
    }
    throw InputError("corrupt deformation path");
}

MoserTrace moser_flow(const DeformationPath& P, double s_max, int steps) {
    if (steps < 10) throw InputError("moser_flow needs steps >= 10");
    if (!(std::abs(s_max) <= P.eps)) throw InputError("s_max outside the path domain");
    auto kap = [&](double s) -> HVec {
        const auto k = solve_kappa(P, s);
        if (!k) throw FlowError("kappa unavailable at s = " + fmt_g(s), s);
        return k->kappa;
    };
    auto deriv = [&](double s, double ta, double tb, double& da, double& db) {
        const HVec k = kap(s);
        da = -k.x * ta;
        db = -k.x * tb - k.y / ta;
    };
    MoserTrace tr;
    tr.s.reserve(static_cast<std::size_t>(steps) + 1);
    tr.tau.reserve(static_cast<std::size_t>(steps) + 1);
    double ta = 1.0, tb = 0.0;
    tr.s.push_back(0.0);
    tr.tau.push_back({1.0, 0.0});
    const double h = s_max / steps;
    for (int i = 0; i < steps; ++i) {
        const double s = s_max * i / steps;
        double k1a, k1b, k2a, k2b, k3a, k3b, k4a, k4b;
        deriv(s, ta, tb, k1a, k1b);
        deriv(s + h / 2, ta + h / 2 * k1a, tb + h / 2 * k1b, k2a, k2b);
        deriv(s + h / 2, ta + h / 2 * k2a, tb + h / 2 * k2b, k3a, k3b);
        deriv(s + h, ta + h * k3a, tb + h * k3b, k4a, k4b);
        ta += h / 6 * (k1a + 2 * k2a + 2 * k3a + k4a);
        tb += h / 6 * (k1b + 2 * k2b + 2 * k3b + k4b);
        tr.s.push_back(s_max * (i + 1) / steps);
        tr.tau.push_back({ta, tb});
    }
    const auto els = default_elements();
    std::vector<UT2> base;
    base.reserve(els.size());
    for (const UT2& g : els) base.push_back(eval_path(P, g, 0.0));
    double worst = 0;
    for (std::size_t i = 0; i < tr.s.size(); ++i) {
        const UT2 ts = tr.tau[i];
        const UT2 ts_inv = {1.0 / ts.a, -ts.b};
        for (std::size_t gi = 0; gi < els.size(); ++gi) {
            const UT2 lhs = eval_path(P, els[gi], tr.s[i]);
            const UT2 rhs = group_mul(ts, group_mul(base[gi], conj_action(els[gi], ts_inv)));
            worst = std::fmax(worst,
                              std::fmax(std::abs(lhs.a - rhs.a), std::abs(lhs.b - rhs.b)));
        }
    }
    tr.max_gauge_residual = worst;
    return tr;
}

std::optional<FamilySpec> identify_family(const std::function<UT2(UT2)>& D) {
    const auto pairs = default_pairs();
    if (!(check_crossed_hom_group(D, pairs) < tol::kIdentify)) return std::nullopt;
    const double e = std::exp(1.0);
    const UT2 v20 = D({2.0, 0.0}), v11 = D({1.0, 1.0}), ve0 = D({e, 0.0});
    FamilySpec rec = Gamma1{0};
    if (std::abs(v20.a - 1.0) <= tol::kIdentify) {
        rec = Gamma2{v11.b, 2.0 / 3.0 * v20.b};
    } else if (std::abs(v20.a - 0.5) <= tol::kIdentify) {
        rec = Gamma1{ve0.b / e};
    } else {
        if (!(v20.a > 0.0) || !std::isfinite(v20.a)) return std::nullopt;
        const double p = std::log2(v20.a);
        if (p == 0.0 || p == -1.0) return std::nullopt;
        const double q = ve0.b * 2.0 * (p + 1.0) / (std::exp(2.0 + p) - std::exp(-p));
        if (!std::isfinite(q)) return std::nullopt;
        rec = Gamma3(p, q);
    }
    double worst = 0;
    for (const UT2& g : default_elements()) {
        const UT2 lhs = D(g), rhs = eval_family(rec, g);
        worst = std::fmax(worst, std::fmax(std::abs(lhs.a - rhs.a), std::abs(lhs.b - rhs.b)));
    }
    if (!(worst < tol::kIdentify)) return std::nullopt;
    return rec;
}

}  // namespace xhom
