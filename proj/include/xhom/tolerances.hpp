#ifndef XHOM_TOLERANCES_HPP
#define XHOM_TOLERANCES_HPP

// Every numeric threshold used by the library lives here. Checks must not
// introduce ad-hoc tolerances: pick one of these (or add one, with a comment
// saying what it guards).

namespace xhom::tol {

/// Group axioms, exact-identity sanity checks, tau(0) == identity.
inline constexpr double kExact = 1e-12;

/// Residuals of identities that hold exactly in the model and are evaluated
/// through a handful of floating-point products (multiplicativity of the
/// family maps, d o d = 0 on sampled chains, closed-form vs. model checks).
inline constexpr double kGroupResidual = 1e-9;

/// "Is this sampled function identically zero" decisions (f == 0, g' == 0).
inline constexpr double kZeroThreshold = 1e-9;

/// Finite-difference derivative vs. exact/closed-form value.
inline constexpr double kDerivMatch = 1e-5;

/// Degree-1 cocycle identity evaluated on sampled pairs.
inline constexpr double kCocycleResidual = 1e-5;

/// Differentiated tangent map vs. the expected matrix.
inline constexpr double kTangentMatch = 1e-6;

/// Gauge conjugation residual, Moser-flow vs. closed-form gauge.
inline constexpr double kGaugeResidual = 1e-6;

/// Family identification: crossed-homomorphism precheck and the
/// reproduce-on-grid acceptance for a recovered member.
inline constexpr double kIdentify = 1e-6;

/// Newton refinement acceptance for the numeric crossed-homomorphism solver.
inline constexpr double kNewtonResidual = 1e-10;

/// Frobenius distance below which two numeric solutions are duplicates.
inline constexpr double kDedupDistance = 1e-6;

/// Continued-fraction rationalization acceptance.
inline constexpr double kRationalize = 1e-8;

/// Margin kept between a path parameter and a forbidden value.
inline constexpr double kPathMargin = 1e-6;

/// A probed derivative counts as nonvanishing when |value| exceeds
/// max(kDerivSafety * estimate, kDerivDetectFloor).
inline constexpr double kDerivSafety = 10.0;
inline constexpr double kDerivDetectFloor = 1e-6;

/// Base step for the first-derivative Richardson helper.
inline constexpr double kDiffStep = 1e-5;

/// Step for mixed second differences (van Est on degree-2 cochains).
inline constexpr double kDiffStep2 = 1e-4;

/// Samples for "identically zero on [-eps, eps]" scans.
inline constexpr int kZeroScanSamples = 41;

/// Samples for deformation-path domain validation.
inline constexpr int kPathScanSamples = 101;

}  // namespace xhom::tol

#endif
