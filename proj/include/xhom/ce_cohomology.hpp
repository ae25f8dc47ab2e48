#ifndef XHOM_CE_COHOMOLOGY_HPP
#define XHOM_CE_COHOMOLOGY_HPP

#include <optional>
#include <vector>

#include "xhom/crossed_hom.hpp"

namespace xhom {

/// All k-element subsets of {0, ..., n-1} in lexicographic order. This
/// ordering fixes the cochain bases below.
std::vector<std::vector<std::size_t>> k_subsets(std::size_t n, std::size_t k);

/// C^k = Hom(Lambda^k g, h). Basis element (S, r): the cochain sending the
/// wedge of the (sorted) subset S to the r-th codomain generator and all
/// other basis wedges to zero. Flat index = subset_index * dim(h) + r with
/// subsets in k_subsets order; degree 0 is included (C^0 = h).
std::size_t cochain_dim(const TwistedRep& rep, std::size_t k);

/// Chevalley-Eilenberg differential d^k : C^k -> C^{k+1} with coefficients
/// in the twisted representation. Throws InputError for k > dim(g).
RatMatrix build_coboundary(const TwistedRep& rep, std::size_t k);

/// d^{k+1} o d^k == 0 for every k, checked exactly.
bool verify_complex(const TwistedRep& rep);

struct CohomologyRow {
    std::size_t k, dim_ck, rank_dk, dim_hk;
};

/// dim H^k = dim ker d^k - rank d^{k-1}, for k = 0 .. dim(g).
std::vector<CohomologyRow> cohomology_dims(const TwistedRep& rep);

/// For a 1-cocycle (flat C^1 coordinates): a primitive w with d^0 w equal to
/// the cocycle, or nullopt when the class is nontrivial. Throws InputError
/// when the input is not a cocycle.
std::optional<RatVec> coboundary_witness(const TwistedRep& rep, const RatVec& cocycle);

// Conveniences taking the crossed homomorphism directly.
std::size_t cochain_dim(const AlgCrossedHom& d, std::size_t k);
RatMatrix build_coboundary(const AlgCrossedHom& d, std::size_t k);
bool verify_complex(const AlgCrossedHom& d);
std::vector<CohomologyRow> cohomology_dims(const AlgCrossedHom& d);
std::optional<RatVec> coboundary_witness(const AlgCrossedHom& d, const RatVec& cocycle);

}  // namespace xhom

#endif
