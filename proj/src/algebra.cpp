#include "fell/algebra.hpp"

#include <cmath>

#include "fell/errors.hpp"

namespace fell {

namespace {
constexpr int kMaxBlockDim = 16;
}

BlockAlgebra::BlockAlgebra(std::vector<int> block_sizes) : sizes_(std::move(block_sizes)) {
    if (sizes_.empty()) throw InputError("BlockAlgebra: needs at least one block");
    for (int n : sizes_) {
        if (n < 1) throw InputError("BlockAlgebra: block sizes must be positive");
        if (n > kMaxBlockDim) throw CapacityError("BlockAlgebra: block dimension cap is 16");
    }
}

static void check_same_algebra(const AlgebraElement& a, const AlgebraElement& b) {
    if (!a.algebra || !b.algebra || *a.algebra != *b.algebra)
        throw InputError("algebra elements live over different algebras");
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& o) const {
    check_same_algebra(*this, o);
    AlgebraElement r{algebra, {}};
    r.blocks.reserve(blocks.size());
    for (std::size_t i = 0; i < blocks.size(); ++i) r.blocks.push_back(blocks[i] + o.blocks[i]);
    return r;
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& o) const {
    check_same_algebra(*this, o);
    AlgebraElement r{algebra, {}};
    r.blocks.reserve(blocks.size());
    for (std::size_t i = 0; i < blocks.size(); ++i) r.blocks.push_back(blocks[i] - o.blocks[i]);
    return r;
}

AlgebraElement AlgebraElement::scaled(cplx a) const {
    AlgebraElement r{algebra, {}};
    r.blocks.reserve(blocks.size());
    for (const auto& b : blocks) r.blocks.push_back(b.scaled(a));
    return r;
}

CentralUnitary CentralUnitary::from_angles(AngleVec angles) {
    CentralUnitary u;
    u.values_.reserve(angles.size());
    for (const auto& a : angles) u.values_.push_back(a.unit());
    u.angles_ = std::move(angles);
    return u;
}

CentralUnitary CentralUnitary::from_values(std::vector<cplx> values, double tol) {
    for (const auto& z : values)
        if (std::abs(std::abs(z) - 1.0) > tol)
            throw InputError("CentralUnitary: entry is not of modulus 1");
    CentralUnitary u;
    u.values_ = std::move(values);
    return u;
}

CentralUnitary CentralUnitary::operator*(const CentralUnitary& o) const {
    if (values_.size() != o.values_.size()) throw InputError("CentralUnitary: size mismatch");
    CentralUnitary r;
    if (angles_ && o.angles_) {
        AngleVec a = *angles_ + *o.angles_;
        return from_angles(std::move(a));
    }
    r.values_.reserve(values_.size());
    for (std::size_t i = 0; i < values_.size(); ++i) r.values_.push_back(values_[i] * o.values_[i]);
    return r;
}

CentralUnitary CentralUnitary::conj() const {
    if (angles_) return from_angles(-(*angles_));
    CentralUnitary r;
    r.values_.reserve(values_.size());
    for (const auto& z : values_) r.values_.push_back(std::conj(z));
    return r;
}

AlgebraElement identity(const AlgebraPtr& algebra) {
    AlgebraElement r{algebra, {}};
    for (int i = 0; i < algebra->blocks(); ++i)
        r.blocks.push_back(CMatrix::identity(static_cast<std::size_t>(algebra->size(i))));
    return r;
}

AlgebraElement zero(const AlgebraPtr& algebra) {
    AlgebraElement r{algebra, {}};
    for (int i = 0; i < algebra->blocks(); ++i) {
        const auto n = static_cast<std::size_t>(algebra->size(i));
        r.blocks.emplace_back(n, n);
    }
    return r;
}

AlgebraElement mul(const AlgebraElement& a, const AlgebraElement& b) {
    check_same_algebra(a, b);
    AlgebraElement r{a.algebra, {}};
    r.blocks.reserve(a.blocks.size());
    for (std::size_t i = 0; i < a.blocks.size(); ++i) r.blocks.push_back(a.blocks[i] * b.blocks[i]);
    return r;
}

AlgebraElement adjoint(const AlgebraElement& a) {
    AlgebraElement r{a.algebra, {}};
    r.blocks.reserve(a.blocks.size());
    for (const auto& b : a.blocks) r.blocks.push_back(b.adjoint());
    return r;
}

double op_norm(const AlgebraElement& a) {
    double m = 0.0;
    for (const auto& b : a.blocks) m = std::max(m, operator_norm(b));
    return m;
}

bool is_positive(const AlgebraElement& a, double tol) {
    for (const auto& b : a.blocks) {
        if (!b.is_hermitian(tol)) return false;
        const auto eig = hermitian_eigenvalues(b);
        if (!eig.empty() && eig.front() < -tol) return false;
    }
    return true;
}

AlgebraElement central_embed(const CentralUnitary& u, const AlgebraPtr& algebra) {
    if (u.size() != algebra->blocks())
        throw InputError("central_embed: unitary length does not match block count");
    AlgebraElement r{algebra, {}};
    for (int i = 0; i < algebra->blocks(); ++i)
        r.blocks.push_back(CMatrix::identity(static_cast<std::size_t>(algebra->size(i)))
                               .scaled(u.values()[static_cast<std::size_t>(i)]));
    return r;
}

double distance(const AlgebraElement& a, const AlgebraElement& b) {
    return op_norm(a - b);
}

} // namespace fell
