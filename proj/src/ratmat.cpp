#include "xhom/ratmat.hpp"

#include <utility>

namespace xhom {

bool vec_is_zero(const RatVec& v) {
    for (const Rat& x : v)
        if (x != 0) return false;
    return true;
}

RatMatrix::RatMatrix(const std::vector<std::vector<std::string>>& rows)
    : RatMatrix(rows.size(), rows.empty() ? 0 : rows.front().size()) {
    for (std::size_t i = 0; i < rows_; ++i) {
        if (rows[i].size() != cols_) throw InputError("ragged matrix literal");
        for (std::size_t j = 0; j < cols_; ++j) at(i, j) = parse_rat(rows[i][j]);
    }
}

RatMatrix RatMatrix::identity(std::size_t n) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

RatMatrix RatMatrix::operator+(const RatMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw InputError("matrix shape mismatch in +");
    RatMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] + o.data_[i];
    return r;
}

RatMatrix RatMatrix::operator-(const RatMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw InputError("matrix shape mismatch in -");
    RatMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] - o.data_[i];
    return r;
}

RatMatrix RatMatrix::operator*(const RatMatrix& o) const {
    if (cols_ != o.rows_) throw InputError("matrix shape mismatch in *");
    RatMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            if (at(i, k) == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) r.at(i, j) += at(i, k) * o.at(k, j);
        }
    return r;
}

RatMatrix RatMatrix::scaled(const Rat& c) const {
    RatMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] * c;
    return r;
}

RatVec RatMatrix::apply(const RatVec& v) const {
    if (v.size() != cols_) throw InputError("matrix/vector shape mismatch");
    RatVec r(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r[i] += at(i, j) * v[j];
    return r;
}

bool RatMatrix::is_zero() const { return vec_is_zero(data_); }

namespace {

void swap_rows(RatMatrix& m, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(a, j), m.at(b, j));
}

// Clear denominators row by row; scaling a row by a positive integer
// preserves rank, kernel and row space.
void integerize_rows(RatMatrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Int l = 1;
        for (std::size_t j = 0; j < m.cols(); ++j) l = lcm(l, denominator(m.at(i, j)));
        if (l == 1) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) m.at(i, j) *= Rat(l);
    }
}

struct Rref {
    RatMatrix m;
    std::vector<std::size_t> pivot_cols;
};

Rref reduced_echelon(RatMatrix m) {
    Rref out;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t pr = r;
        while (pr < m.rows() && m.at(pr, c) == 0) ++pr;
        if (pr == m.rows()) continue;
        swap_rows(m, pr, r);
        Rat p = m.at(r, c);
        for (std::size_t j = c; j < m.cols(); ++j) m.at(r, j) /= p;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m.at(i, c) == 0) continue;
            Rat f = m.at(i, c);
            for (std::size_t j = c; j < m.cols(); ++j) m.at(i, j) -= f * m.at(r, j);
        }
        out.pivot_cols.push_back(c);
        ++r;
    }
    out.m = std::move(m);
    return out;
}

}  // namespace

std::size_t RatMatrix::rank() const {
    RatMatrix m = *this;
    integerize_rows(m);
    // Bareiss fraction-free elimination: every division below is exact over
    // the integers, which keeps intermediate entries small.
    Rat prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t pr = r;
        while (pr < m.rows() && m.at(pr, c) == 0) ++pr;
        if (pr == m.rows()) continue;
        swap_rows(m, pr, r);
        for (std::size_t i = r + 1; i < m.rows(); ++i) {
            for (std::size_t j = c + 1; j < m.cols(); ++j)
                m.at(i, j) = (m.at(r, c) * m.at(i, j) - m.at(i, c) * m.at(r, j)) / prev;
            m.at(i, c) = 0;
        }
        prev = m.at(r, c);
        ++r;
    }
    return r;
}

std::vector<RatVec> RatMatrix::nullspace_basis() const {
    Rref e = reduced_echelon(*this);
    std::vector<bool> is_pivot(cols_, false);
    for (std::size_t c : e.pivot_cols) is_pivot[c] = true;
    std::vector<RatVec> basis;
    for (std::size_t f = 0; f < cols_; ++f) {
        if (is_pivot[f]) continue;
        RatVec v(cols_);
        v[f] = 1;
        for (std::size_t t = 0; t < e.pivot_cols.size(); ++t) v[e.pivot_cols[t]] = -e.m.at(t, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<RatVec> RatMatrix::solve(const RatVec& rhs) const {
    if (rhs.size() != rows_) throw InputError("rhs length mismatch in solve");
    RatMatrix aug(rows_, cols_ + 1);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
        aug.at(i, cols_) = rhs[i];
    }
    Rref e = reduced_echelon(aug);
    for (std::size_t c : e.pivot_cols)
        if (c == cols_) return std::nullopt;  // 0 = 1 row: inconsistent
    RatVec x(cols_);
    for (std::size_t t = 0; t < e.pivot_cols.size(); ++t) x[e.pivot_cols[t]] = e.m.at(t, cols_);
    return x;
}

}  // namespace xhom
