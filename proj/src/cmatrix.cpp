#include "fell/cmatrix.hpp"

#include <algorithm>
#include <cmath>

#include "fell/errors.hpp"

namespace fell {

CMatrix CMatrix::identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::operator+(const CMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw InputError("CMatrix: shape mismatch in +");
    CMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] + o.data_[i];
    return r;
}

CMatrix CMatrix::operator-(const CMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw InputError("CMatrix: shape mismatch in -");
    CMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] - o.data_[i];
    return r;
}

CMatrix CMatrix::operator*(const CMatrix& o) const {
    if (cols_ != o.rows_) throw InputError("CMatrix: shape mismatch in *");
    CMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const cplx aik = at(i, k);
            if (aik == cplx(0.0, 0.0)) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) r.at(i, j) += aik * o.at(k, j);
        }
    return r;
}

CMatrix CMatrix::scaled(cplx a) const {
    CMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = a * data_[i];
    return r;
}

CMatrix CMatrix::adjoint() const {
    CMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = std::conj(at(i, j));
    return r;
}

double CMatrix::frobenius() const {
    double s = 0.0;
    for (const auto& z : data_) s += std::norm(z);
    return std::sqrt(s);
}

double CMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& z : data_) m = std::max(m, std::abs(z));
    return m;
}

bool CMatrix::is_hermitian(double tol) const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i; j < cols_; ++j)
            if (std::abs(at(i, j) - std::conj(at(j, i))) > tol) return false;
    return true;
}

namespace {

double offdiag_norm(const CMatrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) s += std::norm(a.at(i, j));
    return std::sqrt(s);
}

} // namespace

std::vector<double> hermitian_eigenvalues(const CMatrix& a, CMatrix* vectors) {
    if (a.rows() != a.cols()) throw InputError("hermitian_eigenvalues: not square");
    const std::size_t n = a.rows();
    CMatrix w = a;
    CMatrix v = CMatrix::identity(n);
    const double scale = std::max(1.0, w.frobenius());
    const double target = 1e-12 * scale;

    for (int sweep = 0; sweep < 60 && offdiag_norm(w) > target; ++sweep) {
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx apq = w.at(p, q);
                if (std::abs(apq) <= 1e-300) continue;
                const double app = w.at(p, p).real();
                const double aqq = w.at(q, q).real();
                // Unitary 2x2 rotation annihilating w[p][q]; the phase of
                // apq is absorbed into the rotation.
                const double absapq = std::abs(apq);
                const cplx phase = apq / absapq;
                const double tau = (aqq - app) / (2.0 * absapq);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const cplx sp = s * phase;
                // Apply R^* W R and V R with R = [[c, sp],[-conj(sp), c]]
                // acting on columns (p,q).
                for (std::size_t i = 0; i < n; ++i) {
                    const cplx wip = w.at(i, p), wiq = w.at(i, q);
                    w.at(i, p) = c * wip - std::conj(sp) * wiq;
                    w.at(i, q) = sp * wip + c * wiq;
                }
                for (std::size_t j = 0; j < n; ++j) {
                    const cplx wpj = w.at(p, j), wqj = w.at(q, j);
                    w.at(p, j) = c * wpj - sp * wqj;
                    w.at(q, j) = std::conj(sp) * wpj + c * wqj;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const cplx vip = v.at(i, p), viq = v.at(i, q);
                    v.at(i, p) = c * vip - std::conj(sp) * viq;
                    v.at(i, q) = sp * vip + c * viq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) eig[i] = w.at(i, i).real();
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return eig[x] < eig[y]; });

    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = eig[order[i]];
    if (vectors) {
        CMatrix vv(n, n);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i) vv.at(i, j) = v.at(i, order[j]);
        *vectors = vv;
    }
    return out;
}

double operator_norm(const CMatrix& a) {
    if (a.rows() == 0 || a.cols() == 0) return 0.0;
    const CMatrix g = a.adjoint() * a;
    const auto eig = hermitian_eigenvalues(g);
    return std::sqrt(std::max(0.0, eig.back()));
}

double smallest_singular_value(const CMatrix& a) {
    if (a.rows() == 0 || a.cols() == 0) return 0.0;
    const CMatrix g = a.adjoint() * a;
    const auto eig = hermitian_eigenvalues(g);
    return std::sqrt(std::max(0.0, eig.front()));
}

CMatrix polar_unitary(const CMatrix& a, double tol) {
    if (a.rows() != a.cols()) throw InputError("polar_unitary: block is not square");
    const std::size_t n = a.rows();
    const CMatrix g = a.adjoint() * a;
    CMatrix vec;
    const auto eig = hermitian_eigenvalues(g, &vec);
    if (eig.front() < tol * tol)
        throw InputError("polar_unitary: singular block (smallest singular value below tolerance)");
    // (a^* a)^{-1/2} = V diag(1/sqrt(w)) V^*
    CMatrix d(n, n);
    for (std::size_t i = 0; i < n; ++i) d.at(i, i) = 1.0 / std::sqrt(eig[i]);
    const CMatrix inv_sqrt = vec * d * vec.adjoint();
    return a * inv_sqrt;
}

std::size_t numeric_rank(std::vector<std::vector<cplx>> vecs, double tol) {
    if (vecs.empty()) return 0;
    const std::size_t dim = vecs[0].size();
    std::size_t rank = 0;
    std::vector<bool> used(vecs.size(), false);
    for (std::size_t row = 0; row < dim; ++row) {
        // pick the unused vector with the largest entry at `row`
        std::size_t best = vecs.size();
        double best_abs = tol;
        for (std::size_t v = 0; v < vecs.size(); ++v) {
            if (used[v]) continue;
            const double m = std::abs(vecs[v][row]);
            if (m > best_abs) { best_abs = m; best = v; }
        }
        if (best == vecs.size()) continue;
        used[best] = true;
        ++rank;
        const cplx pivot = vecs[best][row];
        for (std::size_t v = 0; v < vecs.size(); ++v) {
            if (used[v]) continue;
            const cplx f = vecs[v][row] / pivot;
            if (f == cplx(0.0, 0.0)) continue;
            for (std::size_t i = 0; i < dim; ++i) vecs[v][i] -= f * vecs[best][i];
        }
    }
    return rank;
}

} // namespace fell
