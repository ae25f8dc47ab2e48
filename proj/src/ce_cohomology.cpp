#include "xhom/ce_cohomology.hpp"

#include <algorithm>
#include <map>

namespace xhom {

std::vector<std::vector<std::size_t>> k_subsets(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    if (k > n) return out;
    std::vector<std::size_t> cur(k);
    for (std::size_t i = 0; i < k; ++i) cur[i] = i;
    while (true) {
        out.push_back(cur);
        // advance to the lexicographic successor
        std::size_t i = k;
        while (i > 0 && cur[i - 1] == n - k + i - 1) --i;
        if (i == 0) break;
        ++cur[i - 1];
        for (std::size_t j = i; j < k; ++j) cur[j] = cur[j - 1] + 1;
    }
    return out;
}

namespace {

std::size_t binom(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    std::size_t r = 1;
    for (std::size_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

std::map<std::vector<std::size_t>, std::size_t> index_of(
    const std::vector<std::vector<std::size_t>>& subsets) {
    std::map<std::vector<std::size_t>, std::size_t> m;
    for (std::size_t i = 0; i < subsets.size(); ++i) m[subsets[i]] = i;
    return m;
}

}  // namespace

std::size_t cochain_dim(const TwistedRep& rep, std::size_t k) {
    if (k > rep.domain().dim()) throw InputError("cochain degree exceeds dim(g)");
    return binom(rep.domain().dim(), k) * rep.codomain().dim();
}

RatMatrix build_coboundary(const TwistedRep& rep, std::size_t k) {
    const std::size_t ng = rep.domain().dim(), nh = rep.codomain().dim();
    if (k > ng) throw InputError("cochain degree exceeds dim(g)");
    const auto rows_sub = k_subsets(ng, k + 1);
    const auto cols_sub = k_subsets(ng, k);
    const auto col_idx = index_of(cols_sub);
    RatMatrix d(rows_sub.size() * nh, cols_sub.size() * nh);

    for (std::size_t ti = 0; ti < rows_sub.size(); ++ti) {
        const auto& T = rows_sub[ti];
        // sum_i (-1)^i theta_d(e_{t_i}) alpha(T \ t_i)
        for (std::size_t i = 0; i < T.size(); ++i) {
            std::vector<std::size_t> S;
            for (std::size_t m = 0; m < T.size(); ++m)
                if (m != i) S.push_back(T[m]);
            const std::size_t si = col_idx.at(S);
            const RatMatrix& th = rep.matrix(T[i]);
            const Rat sign = (i % 2 == 0) ? 1 : -1;
            for (std::size_t a = 0; a < nh; ++a)
                for (std::size_t b = 0; b < nh; ++b)
                    d.at(ti * nh + a, si * nh + b) += sign * th.at(a, b);
        }
        // sum_{i<j} (-1)^{i+j} alpha([e_{t_i}, e_{t_j}], T \ {t_i, t_j})
        for (std::size_t i = 0; i < T.size(); ++i)
            for (std::size_t j = i + 1; j < T.size(); ++j) {
                std::vector<std::size_t> rest;
                for (std::size_t m = 0; m < T.size(); ++m)
                    if (m != i && m != j) rest.push_back(T[m]);
                for (std::size_t g = 0; g < ng; ++g) {
                    const Rat& coeff = rep.domain().c(T[i], T[j], g);
                    if (coeff == 0) continue;
                    if (std::find(rest.begin(), rest.end(), g) != rest.end()) continue;
                    // sorted insertion sign for moving e_g to its slot
                    std::size_t pos = 0;
                    while (pos < rest.size() && rest[pos] < g) ++pos;
                    std::vector<std::size_t> S = rest;
                    S.insert(S.begin() + static_cast<std::ptrdiff_t>(pos), g);
                    Rat sign = ((i + j) % 2 == 0) ? 1 : -1;
                    if (pos % 2 == 1) sign = -sign;
                    const std::size_t si = col_idx.at(S);
                    for (std::size_t a = 0; a < nh; ++a)
                        d.at(ti * nh + a, si * nh + a) += sign * coeff;
                }
            }
    }
    return d;
}

bool verify_complex(const TwistedRep& rep) {
    const std::size_t ng = rep.domain().dim();
    for (std::size_t k = 0; k + 1 <= ng; ++k) {
        RatMatrix dd = build_coboundary(rep, k + 1) * build_coboundary(rep, k);
        if (!dd.is_zero()) return false;
    }
    return true;
}

std::vector<CohomologyRow> cohomology_dims(const TwistedRep& rep) {
    const std::size_t ng = rep.domain().dim();
    std::vector<CohomologyRow> rows;
    std::size_t prev_rank = 0;  // rank of d^{k-1}; zero map below degree 0
    for (std::size_t k = 0; k <= ng; ++k) {
        const std::size_t dim_ck = cochain_dim(rep, k);
        const std::size_t rank_dk = k < ng ? build_coboundary(rep, k).rank() : 0;
        rows.push_back({k, dim_ck, rank_dk, dim_ck - rank_dk - prev_rank});
        prev_rank = rank_dk;
    }
    return rows;
}

std::optional<RatVec> coboundary_witness(const TwistedRep& rep, const RatVec& cocycle) {
    if (cocycle.size() != cochain_dim(rep, 1))
        throw InputError("cocycle must have dim C^1 = " + std::to_string(cochain_dim(rep, 1)) +
                         " coordinates");
    RatVec image = build_coboundary(rep, 1).apply(cocycle);
    if (!vec_is_zero(image)) throw InputError("input 1-cochain is not a cocycle");
    return build_coboundary(rep, 0).solve(cocycle);
}

std::size_t cochain_dim(const AlgCrossedHom& d, std::size_t k) {
    return cochain_dim(TwistedRep(d), k);
}
RatMatrix build_coboundary(const AlgCrossedHom& d, std::size_t k) {
    return build_coboundary(TwistedRep(d), k);
}
bool verify_complex(const AlgCrossedHom& d) { return verify_complex(TwistedRep(d)); }
std::vector<CohomologyRow> cohomology_dims(const AlgCrossedHom& d) {
    return cohomology_dims(TwistedRep(d));
}
std::optional<RatVec> coboundary_witness(const AlgCrossedHom& d, const RatVec& cocycle) {
    return coboundary_witness(TwistedRep(d), cocycle);
}

}  // namespace xhom
