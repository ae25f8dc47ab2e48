#ifndef XHOM_LIE_ALGEBRA_HPP
#define XHOM_LIE_ALGEBRA_HPP

#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "xhom/ratmat.hpp"

namespace xhom {

/// First triple (i < j < k, 0-based) where the Jacobi identity fails,
/// together with the nonzero cyclic sum.
struct JacobiWitness {
    std::size_t i, j, k;
    RatVec residual;
    std::string describe() const;
};

/// Finite-dimensional Lie algebra given by structure constants over Q:
/// [e_i, e_j] = sum_k c(i,j,k) e_k. Antisymmetry is enforced at
/// construction; the Jacobi identity is checked on demand so that broken
/// inputs can be probed for a witness.
class LieAlgebraSpec {
public:
    /// Full tensor, flat index (i*dim + j)*dim + k. Throws InputError if the
    /// tensor is not antisymmetric in (i, j).
    LieAlgebraSpec(std::size_t dim, std::vector<Rat> structure);

    static LieAlgebraSpec abelian(std::size_t dim);
    /// The 2-dimensional algebra with [e1, e2] = 2 e2 used by the
    /// reproduction suite.
    static LieAlgebraSpec solvable2d();

    /// {"dim": n, "brackets": [{"i":1,"j":2,"result":[["0"],["2"]]}, ...]}
    /// Generator indices are 1-based; unlisted pairs are zero; the (j, i)
    /// entry is filled in by antisymmetry. Conflicting duplicates are
    /// rejected.
    static LieAlgebraSpec from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;

    std::size_t dim() const { return dim_; }
    const Rat& c(std::size_t i, std::size_t j, std::size_t k) const {
        return c_[(i * dim_ + j) * dim_ + k];
    }

    RatVec bracket(const RatVec& u, const RatVec& v) const;

    /// nullopt when Jacobi holds on all basis triples.
    std::optional<JacobiWitness> check_jacobi() const;

    /// True iff this is exactly the solvable2d presentation (same basis,
    /// same constants), which the 2d classification assumes.
    bool is_solvable2d_presentation() const;

    bool operator==(const LieAlgebraSpec&) const = default;

private:
    std::size_t dim_ = 0;
    std::vector<Rat> c_;
};

/// Representation of a Lie algebra `domain` on another algebra `codomain`
/// by derivations: one codomain-endomorphism matrix per domain generator.
/// Validity (each matrix a derivation, bracket compatibility) is a check,
/// not a constructor invariant, so defective actions can be examined.
class AlgebraAction {
public:
    AlgebraAction(LieAlgebraSpec domain, LieAlgebraSpec codomain, std::vector<RatMatrix> mats);

    static AlgebraAction adjoint(const LieAlgebraSpec& a);
    static AlgebraAction zero(LieAlgebraSpec domain, LieAlgebraSpec codomain);

    const LieAlgebraSpec& domain() const { return domain_; }
    const LieAlgebraSpec& codomain() const { return codomain_; }
    const RatMatrix& matrix(std::size_t i) const { return mats_[i]; }

    /// theta(x) for an arbitrary domain vector, by linearity.
    RatMatrix of(const RatVec& x) const;

    struct Witness {
        enum class Kind { Derivation, Homomorphism } kind;
        // Derivation: generator i fails Leibniz on the codomain pair (j, k).
        // Homomorphism: theta[e_i,e_j] != [theta e_i, theta e_j].
        std::size_t i, j, k;
        std::string describe() const;
    };
    /// nullopt when the action is a genuine representation by derivations.
    std::optional<Witness> check() const;

    bool operator==(const AlgebraAction&) const = default;

private:
    LieAlgebraSpec domain_, codomain_;
    std::vector<RatMatrix> mats_;
};

}  // namespace xhom

#endif
