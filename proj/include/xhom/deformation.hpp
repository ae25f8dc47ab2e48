#ifndef XHOM_DEFORMATION_HPP
#define XHOM_DEFORMATION_HPP

#include <nlohmann/json.hpp>
#include <optional>

#include "xhom/expr.hpp"
#include "xhom/matrix_group.hpp"

namespace xhom {

/// A smooth curve s -> D_s through one of the three crossed-homomorphism
/// families, driven by parameter expressions in s on the domain (-eps, eps).
/// Family parameters:  g1: f(s);  g2: k(s), m(s);  g3: g(s), h(s).
struct DeformationPath {
    enum class Family { G1, G2, G3 };
    Family family = Family::G1;
    Expr p1, p2;  ///< g1: (f, unused 0); g2: (k, m); g3: (g, h)
    double eps = 0.5;

    static DeformationPath make_g1(Expr f, double eps = 0.5);
    static DeformationPath make_g2(Expr k, Expr m, double eps = 0.5);
    static DeformationPath make_g3(Expr g, Expr h, double eps = 0.5);

    /// {"family":"g1","f":"1+s","eps":0.5}; g2 takes "k","m", g3 takes
    /// "g","h". eps defaults to 0.5. Validates on construction.
    static DeformationPath from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;

    /// Family member at parameter s. Throws PathError when s leaves the
    /// declared domain or a g3 parameter hits the excluded values.
    FamilySpec family_at(double s) const;

    /// Domain checks: s = 0 yields a valid member; for g3, g(s) stays away
    /// from {0, -1} by tol::kPathMargin on tol::kPathScanSamples samples.
    void validate() const;
};

/// D_s(g) for the member at s.
UT2 eval_path(const DeformationPath& P, UT2 g, double s);

/// The deformation cocycle: right-translated s-derivative of s -> D_s(g),
/// as an h-vector. dhat_closed evaluates the per-family closed forms (with
/// parameter derivatives from eval_dual); dhat_numeric differentiates
/// eval_path directly and right-translates. The two must agree.
HVec dhat_closed(const DeformationPath& P, UT2 g, double s);
HVec dhat_numeric(const DeformationPath& P, UT2 g, double s);

/// The cocycle sampled over an element grid at fixed s.
struct CocycleSample {
    double s = 0;
    std::vector<UT2> grid;
    std::vector<HVec> values;
};
CocycleSample sample_dhat(const DeformationPath& P, double s, const std::vector<UT2>& grid);

/// Max residual of the degree-1 cocycle identity for dhat_closed at s over
/// the sampled pairs (should vanish: the cocycle property).
double cocycle_residual(const DeformationPath& P, double s,
                        std::span<const std::pair<UT2, UT2>> pairs);

/// A 0-cochain kappa(s) with d^{D_s} kappa = dhat, when one exists. Free
/// components are fixed to 0 and flagged.
struct KappaSolution {
    HVec kappa;
    bool x_free = false, y_free = false;
};
std::optional<KappaSolution> solve_kappa(const DeformationPath& P, double s);

/// Max entrywise |D_s(g) - tau(s) D(g) (g tau(s)^{-1} g^{-1})| over the
/// element grid x an equispaced s-grid [s_lo, s_hi]. Requires tau(0) =
/// identity within tol::kExact (checked unconditionally).
double gauge_verify(const DeformationPath& P, const std::function<UT2(double)>& tau,
                    double s_lo, double s_hi, int samples = tol::kZeroScanSamples,
                    const std::vector<UT2>& elements = default_elements());

struct RigidityVerdict {
    enum class Kind { Trivial, Nontrivial, Indeterminate, ConstantPath };
    Kind kind;
    /// Human-readable witness: the nonzero value driving the decision, or
    /// the reason no decision is possible.
    std::string certificate;
    /// Trivial only: closed-form gauge, its description, its residual over
    /// the verified interval [verified_lo, verified_hi].
    std::string gauge_formula;
    std::function<UT2(double)> gauge;
    double gauge_residual = 0;
    double verified_lo = 0, verified_hi = 0;
};
const char* kind_name(RigidityVerdict::Kind k);

/// Decision procedure per family; see the per-family certificates for the
/// exact thresholds applied (all from tolerances.hpp).
RigidityVerdict rigidity_verdict(const DeformationPath& P);

/// Fixed-step RK4 integration of tau'(s) = -kappa(s) tau(s) from tau(0) =
/// identity (kappa acting as [[k1, k2], [0, -k1]]). Throws FlowError when
/// solve_kappa fails along the way.
struct MoserTrace {
    std::vector<double> s;
    std::vector<UT2> tau;
    /// gauge residual of the traced tau over trace x element grid
    double max_gauge_residual = 0;
};
MoserTrace moser_flow(const DeformationPath& P, double s_max, int steps = 1000);

/// Recover the family member behind a black-box group map by probing
/// (2,0), (1,1), (e,0), then re-verifying on the element grid. nullopt when
/// the map fails the crossed-homomorphism precheck or the re-verification.
std::optional<FamilySpec> identify_family(const std::function<UT2(UT2)>& D);

}  // namespace xhom

#endif
