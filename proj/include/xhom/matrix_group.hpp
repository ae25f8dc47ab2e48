#ifndef XHOM_MATRIX_GROUP_HPP
#define XHOM_MATRIX_GROUP_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "xhom/errors.hpp"
#include "xhom/tolerances.hpp"

namespace xhom {

/// Element [[a, b], [0, 1/a]] of the connected solvable group G, a > 0.
struct UT2 {
    double a = 1.0;
    double b = 0.0;
    bool operator==(const UT2&) const = default;
};

/// Validates a > 0 and finiteness.
UT2 make_ut2(double a, double b);

inline UT2 group_identity() { return {1.0, 0.0}; }
UT2 group_mul(UT2 g1, UT2 g2);
UT2 group_inv(UT2 g);
/// g h g^{-1}
UT2 conj_action(UT2 g, UT2 h);

/// x e1 + y e2 = [[x, y], [0, -x]] in the Lie algebra h of G.
struct HVec {
    double x = 0.0;
    double y = 0.0;
    bool operator==(const HVec&) const = default;
};

/// Linear operator on HVec coordinates (Ad, Theta-tilde, Theta_D live here).
/// Operators produced below are invertible (positive determinant).
struct Mat2 {
    double m00 = 1, m01 = 0, m10 = 0, m11 = 1;

    HVec apply(HVec u) const { return {m00 * u.x + m01 * u.y, m10 * u.x + m11 * u.y}; }
    double det() const { return m00 * m11 - m01 * m10; }
    friend Mat2 operator*(const Mat2& A, const Mat2& B) {
        return {A.m00 * B.m00 + A.m01 * B.m10, A.m00 * B.m01 + A.m01 * B.m11,
                A.m10 * B.m00 + A.m11 * B.m10, A.m10 * B.m01 + A.m11 * B.m11};
    }
    bool operator==(const Mat2&) const = default;
};

double mat2_max_diff(const Mat2& A, const Mat2& B);
double hvec_max_diff(HVec u, HVec v);

/// Matrix of Ad(g) in the (e1, e2) basis: [[1, 0], [-2ab, a^2]].
Mat2 ad_matrix(UT2 g);
HVec adjoint(UT2 g, HVec u);

/// Which curve through the identity realizes a tangent vector. Exact is the
/// genuine one-parameter subgroup exp(t u) = (e^{tx}, y sinh(tx)/x); the
/// linear variant (e^{tx}, t y) agrees to first order and is kept as an
/// alternative because some derivations are phrased with it.
enum class CurveKind { Exact, ProofLinear };
UT2 exp_curve(HVec u, double t, CurveKind kind = CurveKind::Exact);

/// The three families of crossed homomorphisms G -> G for the conjugation
/// action. Parameter names follow the classification: Gamma2 fixes the
/// diagonal, Gamma1 inverts it, Gamma3 raises it to a power p.
struct Gamma1 {
    double q = 0;
    bool operator==(const Gamma1&) const = default;
};
struct Gamma2 {
    double mu = 0, lambda = 0;
    bool operator==(const Gamma2&) const = default;
};
struct Gamma3 {
    /// Throws InputError when p is exactly 0 or -1 (excluded by the family).
    Gamma3(double p_, double q_);
    double p, q;
    bool operator==(const Gamma3&) const = default;
};
using FamilySpec = std::variant<Gamma1, Gamma2, Gamma3>;

std::string family_name(const FamilySpec& f);
/// "g1(q=2)" style echo for reports.
std::string family_str(const FamilySpec& f);

/// Closed-form evaluation of the family map at g.
UT2 eval_family(const FamilySpec& f, UT2 g);

/// Theta-tilde(g) = Ad(g) for the conjugation action.
Mat2 tilde_theta(UT2 g);
/// Theta_D(g) = Ad(D(g)) Ad(g), the twisted representation of G on h.
Mat2 theta_D(const FamilySpec& f, UT2 g);

/// Central difference with one Richardson level at `at`; the single source
/// of first-derivative truth on the group side (base step tol::kDiffStep).
double richardson_diff(const std::function<double(double)>& fn, double at,
                       double h = tol::kDiffStep);

/// Tangent map of the family at the identity, columns = images of e1, e2,
/// computed by differentiating along exp-curves.
Mat2 tangent_map(const FamilySpec& f, CurveKind kind = CurveKind::Exact);

/// The tangent matrix the classification predicts for each family:
/// g2 -> [[0,0],[lambda,mu]], g1 -> [[-1,0],[q,-1]], g3 -> [[p,0],[q,-1]].
Mat2 classified_tangent(const FamilySpec& f);

/// Matrix of ad_u on h in the (e1, e2) basis: [[0, 0], [-2 u.y, 2 u.x]].
Mat2 ad_vec(HVec u);
/// Float mirror of the twisted algebra representation:
/// theta_d(x) = ad_x + ad_{d x} for a tangent matrix d.
Mat2 theta_tangent(const Mat2& d, HVec x);

/// Max entrywise |D(gh) - D(g) g D(h) g^{-1}| over the sampled pairs.
double check_crossed_hom_group(const std::function<UT2(UT2)>& D,
                               std::span<const std::pair<UT2, UT2>> pairs);

/// Group coboundaries in the complex twisted by Theta_D.
HVec group_coboundary0(const FamilySpec& f, HVec w, UT2 g);
HVec group_coboundary1(const FamilySpec& f, const std::function<HVec(UT2)>& alpha, UT2 g1,
                       UT2 g2);

/// Differentiation of group cochains along exp-curves (van Est map).
/// Degree 1: d/dt c(exp(t x)) at 0. Degree 2: antisymmetrized mixed second
/// difference (step tol::kDiffStep2) over the two argument orders.
HVec van_est1(const std::function<HVec(UT2)>& c, HVec x, CurveKind kind = CurveKind::Exact);
HVec van_est2(const std::function<HVec(UT2, UT2)>& c, HVec x1, HVec x2,
              CurveKind kind = CurveKind::Exact);

/// Deterministic grids: a in {1/2, 1, 2, e, 5} x b in {-2, -1, 0, 1, 3},
/// row-major (25 elements); pairs = the 625 element pairs row-major,
/// subsampled at stride 6 to 100 fixed pairs.
std::vector<UT2> default_elements();
std::vector<std::pair<UT2, UT2>> default_pairs();
/// Denser deterministic variant (a log-spaced in [1/4, 6], b in [-4, 4];
/// 81 elements, 200 pairs) for the --grid dense mode.
std::vector<UT2> dense_elements();
std::vector<std::pair<UT2, UT2>> dense_pairs();
/// Seeded draws with a in [0.2, 5], b in [-5, 5].
std::vector<UT2> random_elements(std::size_t n, std::uint64_t seed);
std::vector<std::pair<UT2, UT2>> random_pairs(std::size_t n, std::uint64_t seed);

}  // namespace xhom

#endif
