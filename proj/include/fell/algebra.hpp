#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "fell/cmatrix.hpp"
#include "fell/rational.hpp"

namespace fell {

// Multi-matrix C*-algebra B = M_{n_1} (+) ... (+) M_{n_k}.
class BlockAlgebra {
public:
    explicit BlockAlgebra(std::vector<int> block_sizes);

    int blocks() const { return static_cast<int>(sizes_.size()); }
    int size(int i) const { return sizes_[i]; }
    const std::vector<int>& sizes() const { return sizes_; }

    bool operator==(const BlockAlgebra& o) const { return sizes_ == o.sizes_; }
    bool operator!=(const BlockAlgebra& o) const { return !(*this == o); }

private:
    std::vector<int> sizes_;
};

using AlgebraPtr = std::shared_ptr<const BlockAlgebra>;

struct AlgebraElement {
    AlgebraPtr algebra;
    std::vector<CMatrix> blocks;

    AlgebraElement operator+(const AlgebraElement& o) const;
    AlgebraElement operator-(const AlgebraElement& o) const;
    AlgebraElement scaled(cplx a) const;
};

// Unitary element of the center: one phase per block, optionally backed
// by exact rational angles when it comes out of a cochain. Products and
// adjoints of angle-backed values stay exact.
class CentralUnitary {
public:
    static CentralUnitary from_angles(AngleVec angles);
    static CentralUnitary from_values(std::vector<cplx> values, double tol);

    int size() const { return static_cast<int>(values_.size()); }
    const std::vector<cplx>& values() const { return values_; }
    const std::optional<AngleVec>& angles() const { return angles_; }

    CentralUnitary operator*(const CentralUnitary& o) const;
    CentralUnitary conj() const;

private:
    std::vector<cplx> values_;
    std::optional<AngleVec> angles_;
};

AlgebraElement identity(const AlgebraPtr& algebra);
AlgebraElement zero(const AlgebraPtr& algebra);
AlgebraElement mul(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement adjoint(const AlgebraElement& a);
double op_norm(const AlgebraElement& a);
bool is_positive(const AlgebraElement& a, double tol);
AlgebraElement central_embed(const CentralUnitary& u, const AlgebraPtr& algebra);

// |a - b| in operator norm
double distance(const AlgebraElement& a, const AlgebraElement& b);

} // namespace fell
