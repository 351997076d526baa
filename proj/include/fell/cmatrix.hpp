#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace fell {

using cplx = std::complex<double>;

// Dense complex matrix, row-major. Everything in this project is tiny
// (block dimension <= 16), so the implementation favours clarity over
// blocking or vectorization.
class CMatrix {
public:
    CMatrix() : rows_(0), cols_(0) {}
    CMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, cplx(0.0, 0.0)) {}

    static CMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    cplx& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const cplx& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    CMatrix operator+(const CMatrix& o) const;
    CMatrix operator-(const CMatrix& o) const;
    CMatrix operator*(const CMatrix& o) const;
    CMatrix scaled(cplx a) const;
    CMatrix adjoint() const;

    double frobenius() const;
    double max_abs() const;
    bool is_hermitian(double tol) const;

    const std::vector<cplx>& data() const { return data_; }
    std::vector<cplx>& data() { return data_; }

private:
    std::size_t rows_, cols_;
    std::vector<cplx> data_;
};

// Eigenvalues (ascending) of a Hermitian matrix by cyclic Jacobi
// rotations, iterated until the off-diagonal norm drops below 1e-12
// (relative to the matrix scale). If `vectors` is non-null it receives
// the unitary V with A = V diag(w) V^*.
std::vector<double> hermitian_eigenvalues(const CMatrix& a, CMatrix* vectors = nullptr);

// Largest singular value, via the eigenvalues of a^* a.
double operator_norm(const CMatrix& a);
double smallest_singular_value(const CMatrix& a);

// (a^* a)^{-1/2} for an invertible square a; the unitary polar factor
// is then a * inv_sqrt. Throws InputError when a is singular at `tol`.
CMatrix polar_unitary(const CMatrix& a, double tol);

// Rank of the matrix whose columns are `vecs`, with singular values
// below `tol` treated as zero (Gaussian elimination with full pivot).
std::size_t numeric_rank(std::vector<std::vector<cplx>> vecs, double tol);

} // namespace fell
