#include "xhom/matrix_group.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace xhom {

UT2 make_ut2(double a, double b) {
    if (!(a > 0.0) || !std::isfinite(a) || !std::isfinite(b))
        throw InputError("group element needs finite a > 0, b");
    return {a, b};
}

UT2 group_mul(UT2 g1, UT2 g2) { return {g1.a * g2.a, g1.a * g2.b + g1.b / g2.a}; }

UT2 group_inv(UT2 g) { return {1.0 / g.a, -g.b}; }

UT2 conj_action(UT2 g, UT2 h) { return group_mul(group_mul(g, h), group_inv(g)); }

double mat2_max_diff(const Mat2& A, const Mat2& B) {
    return std::max(std::max(std::abs(A.m00 - B.m00), std::abs(A.m01 - B.m01)),
                    std::max(std::abs(A.m10 - B.m10), std::abs(A.m11 - B.m11)));
}

double hvec_max_diff(HVec u, HVec v) {
    return std::max(std::abs(u.x - v.x), std::abs(u.y - v.y));
}

Mat2 ad_matrix(UT2 g) { return {1.0, 0.0, -2.0 * g.a * g.b, g.a * g.a}; }

HVec adjoint(UT2 g, HVec u) { return ad_matrix(g).apply(u); }

UT2 exp_curve(HVec u, double t, CurveKind kind) {
    const double tx = t * u.x;
    if (kind == CurveKind::ProofLinear) return {std::exp(tx), t * u.y};
    double b;
    if (std::abs(tx) < 1e-8) {
        // sinh(tx)/x -> t (1 + (tx)^2/6 + ...)
        b = u.y * t * (1.0 + tx * tx / 6.0);
    } else {
        b = u.y * std::sinh(tx) / u.x;
    }
    return {std::exp(tx), b};
}

Gamma3::Gamma3(double p_, double q_) : p(p_), q(q_) {
    if (p == 0.0 || p == -1.0) throw InputError("Gamma3 requires p != 0 and p != -1");
    if (!std::isfinite(p) || !std::isfinite(q)) throw InputError("Gamma3 parameters must be finite");
}

std::string family_name(const FamilySpec& f) {
    if (std::holds_alternative<Gamma1>(f)) return "g1";
    if (std::holds_alternative<Gamma2>(f)) return "g2";
    return "g3";
}

std::string family_str(const FamilySpec& f) {
    std::ostringstream os;
    if (const auto* g1 = std::get_if<Gamma1>(&f)) {
        os << "g1(q=" << g1->q << ")";
    } else if (const auto* g2 = std::get_if<Gamma2>(&f)) {
        os << "g2(mu=" << g2->mu << ", lambda=" << g2->lambda << ")";
    } else {
        const auto& g3 = std::get<Gamma3>(f);
        os << "g3(p=" << g3.p << ", q=" << g3.q << ")";
    }
    return os.str();
}

UT2 eval_family(const FamilySpec& f, UT2 g) {
    const double a = g.a, b = g.b;
    if (const auto* g2 = std::get_if<Gamma2>(&f))
        return {1.0, g2->mu * a * b + g2->lambda / 2.0 * (a * a - 1.0)};
    if (const auto* g1 = std::get_if<Gamma1>(&f))
        return {1.0 / a, -b + g1->q * a * std::log(a)};
    const auto& g3 = std::get<Gamma3>(f);
    const double p = g3.p;
    return {std::pow(a, p), g3.q * (std::pow(a, 2.0 + p) - std::pow(a, -p)) / (2.0 * (p + 1.0)) -
                                b * std::pow(a, 1.0 + p)};
}

Mat2 tilde_theta(UT2 g) { return ad_matrix(g); }

Mat2 theta_D(const FamilySpec& f, UT2 g) { return ad_matrix(eval_family(f, g)) * ad_matrix(g); }

double richardson_diff(const std::function<double(double)>& fn, double at, double h) {
    const double d1 = (fn(at + h) - fn(at - h)) / (2.0 * h);
    const double d2 = (fn(at + h / 2) - fn(at - h / 2)) / h;
    return (4.0 * d2 - d1) / 3.0;
}

Mat2 tangent_map(const FamilySpec& f, CurveKind kind) {
    // Column j: tangent vector of s -> D(exp(s e_j)) at the identity,
    // expressed as x e1 + y e2 via [[a', b'], [0, -a']].
    const HVec e1{1, 0}, e2{0, 1};
    auto comp = [&](HVec dir, bool want_a) {
        return richardson_diff(
            [&](double s) {
                UT2 v = eval_family(f, exp_curve(dir, s, kind));
                return want_a ? v.a : v.b;
            },
            0.0);
    };
    return {comp(e1, true), comp(e2, true), comp(e1, false), comp(e2, false)};
}

Mat2 classified_tangent(const FamilySpec& f) {
    if (const auto* g2 = std::get_if<Gamma2>(&f)) return {0, 0, g2->lambda, g2->mu};
    if (const auto* g1 = std::get_if<Gamma1>(&f)) return {-1, 0, g1->q, -1};
    const auto& g3 = std::get<Gamma3>(f);
    return {g3.p, 0, g3.q, -1};
}

Mat2 ad_vec(HVec u) { return {0, 0, -2.0 * u.y, 2.0 * u.x}; }

Mat2 theta_tangent(const Mat2& d, HVec x) {
    const Mat2 a = ad_vec(x), b = ad_vec(d.apply(x));
    return {a.m00 + b.m00, a.m01 + b.m01, a.m10 + b.m10, a.m11 + b.m11};
}

double check_crossed_hom_group(const std::function<UT2(UT2)>& D,
                               std::span<const std::pair<UT2, UT2>> pairs) {
    double worst = 0;
    for (const auto& [g, h] : pairs) {
        const UT2 lhs = D(group_mul(g, h));
        const UT2 rhs = group_mul(D(g), conj_action(g, D(h)));
        worst = std::max(worst, std::max(std::abs(lhs.a - rhs.a), std::abs(lhs.b - rhs.b)));
    }
    return worst;
}

HVec group_coboundary0(const FamilySpec& f, HVec w, UT2 g) {
    const HVec t = theta_D(f, g).apply(w);
    return {t.x - w.x, t.y - w.y};
}

HVec group_coboundary1(const FamilySpec& f, const std::function<HVec(UT2)>& alpha, UT2 g1,
                       UT2 g2) {
    const HVec t = theta_D(f, g1).apply(alpha(g2));
    const HVec m = alpha(group_mul(g1, g2));
    const HVec h = alpha(g1);
    return {t.x - m.x + h.x, t.y - m.y + h.y};
}

HVec van_est1(const std::function<HVec(UT2)>& c, HVec x, CurveKind kind) {
    return {richardson_diff([&](double t) { return c(exp_curve(x, t, kind)).x; }, 0.0),
            richardson_diff([&](double t) { return c(exp_curve(x, t, kind)).y; }, 0.0)};
}

HVec van_est2(const std::function<HVec(UT2, UT2)>& c, HVec x1, HVec x2, CurveKind kind) {
    const double h = tol::kDiffStep2;
    auto mixed = [&](HVec u, HVec v) {
        auto at = [&](double t, double s) { return c(exp_curve(u, t, kind), exp_curve(v, s, kind)); };
        const HVec pp = at(h, h), pm = at(h, -h), mp = at(-h, h), mm = at(-h, -h);
        const double denom = 4.0 * h * h;
        return HVec{(pp.x - pm.x - mp.x + mm.x) / denom, (pp.y - pm.y - mp.y + mm.y) / denom};
    };
    const HVec fwd = mixed(x1, x2), rev = mixed(x2, x1);
    return {fwd.x - rev.x, fwd.y - rev.y};
}

std::vector<UT2> default_elements() {
    const double as[] = {0.5, 1.0, 2.0, std::exp(1.0), 5.0};
    const double bs[] = {-2.0, -1.0, 0.0, 1.0, 3.0};
    std::vector<UT2> out;
    for (double a : as)
        for (double b : bs) out.push_back({a, b});
    return out;
}

std::vector<std::pair<UT2, UT2>> default_pairs() {
    const auto els = default_elements();
    std::vector<std::pair<UT2, UT2>> out;
    for (std::size_t k = 0; k < 100; ++k) {
        const std::size_t flat = 6 * k;  // stride through the 625 row-major pairs
        out.emplace_back(els[flat / 25], els[flat % 25]);
    }
    return out;
}

std::vector<UT2> dense_elements() {
    std::vector<UT2> out;
    for (int i = 0; i < 9; ++i) {
        const double a = std::exp(std::log(0.25) + (std::log(6.0) - std::log(0.25)) * i / 8.0);
        for (int j = 0; j < 9; ++j) out.push_back({a, -4.0 + j});
    }
    return out;
}

std::vector<std::pair<UT2, UT2>> dense_pairs() {
    const auto els = dense_elements();
    std::vector<std::pair<UT2, UT2>> out;
    for (std::size_t k = 0; k < 200; ++k) {
        const std::size_t flat = 32 * k;  // stride through the 6561 row-major pairs
        out.emplace_back(els[flat / els.size()], els[flat % els.size()]);
    }
    return out;
}

std::vector<UT2> random_elements(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> da(0.2, 5.0), db(-5.0, 5.0);
    std::vector<UT2> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double a = da(rng);
        out.push_back({a, db(rng)});
    }
    return out;
}

std::vector<std::pair<UT2, UT2>> random_pairs(std::size_t n, std::uint64_t seed) {
    const auto els = random_elements(2 * n, seed);
    std::vector<std::pair<UT2, UT2>> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.emplace_back(els[2 * i], els[2 * i + 1]);
    return out;
}

}  // namespace xhom
