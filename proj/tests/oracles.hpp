#ifndef XHOM_TESTS_ORACLES_HPP
#define XHOM_TESTS_ORACLES_HPP
// Independent re-implementations used to cross-check the library:
//  - textbook rational Gaussian elimination (the library uses Bareiss),
//  - the twisted differential evaluated straight from its defining formula
//    (the library assembles sparse block matrices),
//  - exact polynomial value/derivative (the library uses dual numbers).

#include <algorithm>
#include <cstddef>
#include <vector>

#include "xhom/ce_cohomology.hpp"
#include "xhom/expr.hpp"
#include "xhom/ratmat.hpp"

namespace oracles {

using xhom::Rat;
using xhom::RatMatrix;
using xhom::RatVec;

inline std::size_t plain_rank(const RatMatrix& m) {
    std::vector<RatVec> rows(m.rows(), RatVec(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) rows[i][j] = m.at(i, j);
    std::size_t rank = 0;
    for (std::size_t col = 0; col < m.cols() && rank < rows.size(); ++col) {
        std::size_t pivot = rank;
        while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[rank], rows[pivot]);
        for (std::size_t r = rank + 1; r < rows.size(); ++r) {
            if (rows[r][col] == 0) continue;
            const Rat f = rows[r][col] / rows[rank][col];
            for (std::size_t c = col; c < m.cols(); ++c) rows[r][c] -= f * rows[rank][c];
        }
        ++rank;
    }
    return rank;
}

/// Value of an alternating k-cochain (flat coordinates, library basis
/// order) on an arbitrary index tuple: sort tracking the permutation sign,
/// zero on repeats.
inline RatVec alt_eval(const xhom::TwistedRep& rep, std::size_t k, const RatVec& flat,
                       std::vector<std::size_t> idx) {
    const std::size_t nh = rep.codomain().dim();
    int sign = 1;
    for (std::size_t i = 0; i + 1 < idx.size(); ++i)
        for (std::size_t j = 0; j + 1 < idx.size() - i; ++j)
            if (idx[j] > idx[j + 1]) {
                std::swap(idx[j], idx[j + 1]);
                sign = -sign;
            }
    for (std::size_t i = 0; i + 1 < idx.size(); ++i)
        if (idx[i] == idx[i + 1]) return RatVec(nh);
    const auto subsets = xhom::k_subsets(rep.domain().dim(), k);
    const auto it = std::find(subsets.begin(), subsets.end(), idx);
    RatVec out(nh);
    for (std::size_t r = 0; r < nh; ++r) out[r] = flat[(it - subsets.begin()) * nh + r] * sign;
    return out;
}

/// (d alpha)(e_{a_0}, ..., e_{a_k}) from the formula
///   sum_i (-1)^i theta_d(e_{a_i}) alpha(... hat a_i ...)
///   + sum_{i<j} (-1)^{i+j} alpha([e_{a_i}, e_{a_j}], ... hat a_i, hat a_j ...)
inline RatVec direct_coboundary(const xhom::TwistedRep& rep, std::size_t k, const RatVec& flat,
                                const std::vector<std::size_t>& args) {
    const xhom::LieAlgebraSpec& g = rep.domain();
    const std::size_t nh = rep.codomain().dim();
    RatVec out(nh);
    for (std::size_t i = 0; i < args.size(); ++i) {
        std::vector<std::size_t> rest;
        for (std::size_t j = 0; j < args.size(); ++j)
            if (j != i) rest.push_back(args[j]);
        const RatVec v = rep.matrix(args[i]).apply(alt_eval(rep, k, flat, rest));
        const int sign = (i % 2) ? -1 : 1;
        for (std::size_t r = 0; r < nh; ++r) out[r] += sign * v[r];
    }
    for (std::size_t i = 0; i < args.size(); ++i)
        for (std::size_t j = i + 1; j < args.size(); ++j) {
            std::vector<std::size_t> rest;
            for (std::size_t l = 0; l < args.size(); ++l)
                if (l != i && l != j) rest.push_back(args[l]);
            for (std::size_t m = 0; m < g.dim(); ++m) {
                const Rat& c = g.c(args[i], args[j], m);
                if (c == 0) continue;
                std::vector<std::size_t> tuple{m};
                tuple.insert(tuple.end(), rest.begin(), rest.end());
                const RatVec v = alt_eval(rep, k, flat, tuple);
                const int sign = ((i + j) % 2) ? -1 : 1;
                for (std::size_t r = 0; r < nh; ++r) out[r] += sign * c * v[r];
            }
        }
    return out;
}

/// Dense univariate polynomial: exact-form value/derivative plus the
/// equivalent expression tree, for comparing against eval_dual.
struct Poly {
    std::vector<double> c;  // c[i] s^i

    double value(double s) const {
        double v = 0;
        for (std::size_t i = c.size(); i-- > 0;) v = v * s + c[i];
        return v;
    }
    double deriv(double s) const {
        double v = 0;
        for (std::size_t i = c.size(); i-- > 1;) v = v * s + c[i] * double(i);
        return v;
    }
    xhom::Expr to_expr() const {
        using xhom::Expr;
        using xhom::ExprOp;
        Expr sum = Expr::number(c.empty() ? 0.0 : c[0]);
        for (std::size_t i = 1; i < c.size(); ++i) {
            Expr mono = Expr::binary(
                ExprOp::Mul, Expr::number(c[i]),
                i == 1 ? Expr::var()
                       : Expr::binary(ExprOp::Pow, Expr::var(), Expr::number(double(i))));
            sum = Expr::binary(ExprOp::Add, sum, mono);
        }
        return sum;
    }
};

}  // namespace oracles

#endif
