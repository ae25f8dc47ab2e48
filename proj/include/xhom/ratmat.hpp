#ifndef XHOM_RATMAT_HPP
#define XHOM_RATMAT_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "xhom/rational.hpp"

namespace xhom {

using RatVec = std::vector<Rat>;

bool vec_is_zero(const RatVec& v);

/// Dense matrix over the rationals. Small sizes only (cochain spaces up to a
/// few hundred dimensions), so everything is exact and unoptimized.
class RatMatrix {
public:
    RatMatrix() = default;
    RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    /// Row-major literal, e.g. {{"0","0"},{"3","5"}}.
    explicit RatMatrix(const std::vector<std::vector<std::string>>& rows);

    static RatMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rat& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rat& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    RatMatrix operator+(const RatMatrix& o) const;
    RatMatrix operator-(const RatMatrix& o) const;
    RatMatrix operator*(const RatMatrix& o) const;
    RatMatrix scaled(const Rat& c) const;
    RatVec apply(const RatVec& v) const;

    bool operator==(const RatMatrix& o) const = default;
    bool is_zero() const;

    /// Rank by fraction-free (Bareiss) elimination on integerized rows.
    std::size_t rank() const;
    /// Basis of the right kernel, via exact reduced row echelon form.
    std::vector<RatVec> nullspace_basis() const;
    /// One solution of A x = rhs, or nullopt when inconsistent.
    std::optional<RatVec> solve(const RatVec& rhs) const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    RatVec data_;
};

}  // namespace xhom

#endif
