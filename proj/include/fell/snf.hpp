#pragma once

#include <cstdint>
#include <vector>

#include "fell/errors.hpp"

namespace fell {

// Dense integer matrix with overflow-checked arithmetic. Row/column
// operations throw CapacityError instead of wrapping silently.
class IntMatrix {
public:
    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

    static IntMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    std::int64_t& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    std::int64_t at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    IntMatrix operator*(const IntMatrix& o) const;
    bool operator==(const IntMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

    void swap_rows(std::size_t a, std::size_t b);
    void swap_cols(std::size_t a, std::size_t b);
    void add_row_multiple(std::size_t dst, std::size_t src, std::int64_t f);
    void add_col_multiple(std::size_t dst, std::size_t src, std::int64_t f);
    void negate_row(std::size_t r);
    void negate_col(std::size_t c);

private:
    std::size_t rows_, cols_;
    std::vector<std::int64_t> data_;
};

std::int64_t checked_mul(std::int64_t a, std::int64_t b);
std::int64_t checked_add(std::int64_t a, std::int64_t b);

struct SNFDecomposition {
    IntMatrix u;      // rows x rows, |det| = 1
    IntMatrix v;      // cols x cols, |det| = 1
    IntMatrix d;      // diagonal, d1 | d2 | ...
    IntMatrix u_inv;  // maintained alongside u
    IntMatrix v_inv;  // maintained alongside v
    std::vector<std::int64_t> diagonal() const;
};

// U * A * V = D with unimodular U, V and nonnegative diagonal D whose
// entries form a divisibility chain.
SNFDecomposition smith_normal_form(const IntMatrix& a);

// Lower-triangular column-style Hermite form of the lattice spanned by
// the columns of `gens` (must have full row rank). Returns an N x N
// basis H with H[i][i] > 0 and H[i][j] = 0 for j > i; column j has its
// pivot at row j. Used for canonical coset representatives.
IntMatrix column_hermite_lower(const IntMatrix& gens);

// Lexicographically smallest representative of x + L where L is the
// lattice with lower-triangular basis `hnf` (as produced above), taking
// coordinates in order 0,1,2,...
std::vector<std::int64_t> hermite_reduce(const IntMatrix& hnf, std::vector<std::int64_t> x);

} // namespace fell
