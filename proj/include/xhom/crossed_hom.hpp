#ifndef XHOM_CROSSED_HOM_HPP
#define XHOM_CROSSED_HOM_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "xhom/lie_algebra.hpp"
#include "xhom/tolerances.hpp"

namespace xhom {

/// Residual of the defining identity on one basis pair (i < j):
///   d[e_i,e_j] - theta(e_i) d(e_j) + theta(e_j) d(e_i) - [d(e_i), d(e_j)].
struct ResidualEntry {
    std::size_t i, j;
    RatVec value;
};
using ResidualTable = std::vector<ResidualEntry>;

bool residual_is_zero(const ResidualTable& t);
std::string residual_report(const ResidualTable& t);

/// Candidate matrices are codomain_dim x domain_dim; column c holds the
/// codomain coordinates of d(e_c).
ResidualTable crossed_residual(const RatMatrix& d, const AlgebraAction& theta);

/// {"matrix": [["0","0"],["3","5"]]} with rational-string entries (bare
/// integers accepted). Rows are codomain coordinates.
RatMatrix candidate_from_json(const nlohmann::json& j);

/// A validated crossed homomorphism of Lie algebras. Construction throws
/// InputError (carrying the residual table) unless the identity holds
/// exactly; the action itself is also checked.
class AlgCrossedHom {
public:
    AlgCrossedHom(AlgebraAction theta, RatMatrix d);

    const AlgebraAction& action() const { return theta_; }
    const LieAlgebraSpec& source() const { return theta_.domain(); }
    const LieAlgebraSpec& target() const { return theta_.codomain(); }
    const RatMatrix& matrix() const { return d_; }

    RatVec apply(const RatVec& x) const { return d_.apply(x); }

private:
    AlgebraAction theta_;
    RatMatrix d_;
};

/// The representation twisted by d: theta_d(x) = theta(x) + ad_{d(x)}.
/// The bracket-compatibility of theta_d is re-derived exactly at
/// construction as an internal consistency check.
class TwistedRep {
public:
    explicit TwistedRep(const AlgCrossedHom& d);

    const LieAlgebraSpec& domain() const { return domain_; }
    const LieAlgebraSpec& codomain() const { return codomain_; }
    const RatMatrix& matrix(std::size_t i) const { return mats_[i]; }
    RatMatrix of(const RatVec& x) const;

    /// View as an AlgebraAction (always passes its check).
    AlgebraAction as_action() const { return AlgebraAction(domain_, codomain_, mats_); }

private:
    LieAlgebraSpec domain_, codomain_;
    std::vector<RatMatrix> mats_;
};

/// Solution of the crossed-homomorphism equations for the solvable2d
/// algebra acting on itself adjointly: two parameter families.
struct Classification2D {
    std::string family_a;  ///< d = [[0,0],[lambda,mu]]
    std::string family_b;  ///< d = [[p,0],[q,-1]], p != 0
};

/// Requires the solvable2d presentation with the adjoint action; throws
/// InputError otherwise.
Classification2D classify_2d(const LieAlgebraSpec& a, const AlgebraAction& theta);
RatMatrix family_a_member(const Rat& lambda, const Rat& mu);
/// Throws InputError when p == 0 (that member belongs to family A).
RatMatrix family_b_member(const Rat& p, const Rat& q);

/// Floating-point search for crossed homomorphisms by multi-start
/// Gauss-Newton on the residual system.
struct NumericSolveOptions {
    int starts = 100;
    double box = 3.0;          ///< initial entries drawn uniformly from [-box, box]
    std::uint64_t seed = 0;
    int max_iter = 60;
    double accept_residual = tol::kNewtonResidual;
    double dedup_distance = tol::kDedupDistance;
};

struct NumericSolution {
    std::vector<double> entries;  ///< row-major codomain_dim x domain_dim
    double residual;              ///< max-abs residual of the defining identity
    /// Entry-wise continued-fraction snap; present only when every entry
    /// rationalizes and the snapped matrix passes the exact residual check.
    std::optional<RatMatrix> exact;
};

std::vector<NumericSolution> solve_numeric(const AlgebraAction& theta,
                                           const NumericSolveOptions& opts = {});

/// Nearest rational with denominator <= max_den within tol, by continued
/// fractions. nullopt when no convergent lands inside the tolerance.
std::optional<Rat> rationalize(double x, double tol = tol::kRationalize,
                               std::int64_t max_den = 1000000);

}  // namespace xhom

#endif
