#pragma once

#include <vector>

#include "fell/algebra.hpp"

namespace fell {

// Block permutation sigma of {0,..,k-1}; stands for the Picard class of
// the Morita bimodule X_sigma over a multi-matrix algebra.
class BlockPermutation {
public:
    explicit BlockPermutation(std::vector<int> images);
    static BlockPermutation id(int k);

    int size() const { return static_cast<int>(images_.size()); }
    int operator()(int i) const { return images_[i]; }
    const std::vector<int>& images() const { return images_; }

    BlockPermutation inverse() const;

    //  (sigma |> tau)(i) = tau(sigma(i)); tensor composes this way.
    BlockPermutation then(const BlockPermutation& tau) const;

    bool is_identity() const;
    bool operator==(const BlockPermutation& o) const { return images_ == o.images_; }
    bool operator!=(const BlockPermutation& o) const { return !(*this == o); }

private:
    std::vector<int> images_;
};

// Element of X_sigma: component i is an n_i x n_{sigma(i)} matrix.
struct BimoduleElement {
    AlgebraPtr algebra;
    BlockPermutation sigma;
    std::vector<CMatrix> blocks;

    BimoduleElement operator+(const BimoduleElement& o) const;
    BimoduleElement operator-(const BimoduleElement& o) const;
    BimoduleElement scaled(cplx a) const;
    double norm() const;
};

// Canonical element with identity-shaped blocks; only exists when sigma
// preserves block sizes.
BimoduleElement canonical_element(const AlgebraPtr& algebra, const BlockPermutation& sigma);
BimoduleElement zero_element(const AlgebraPtr& algebra, const BlockPermutation& sigma);

BimoduleElement left_act(const AlgebraElement& b, const BimoduleElement& x);
BimoduleElement right_act(const BimoduleElement& x, const AlgebraElement& b);
AlgebraElement inner_left(const BimoduleElement& x, const BimoduleElement& y);
AlgebraElement inner_right(const BimoduleElement& x, const BimoduleElement& y);
BimoduleElement tensor(const BimoduleElement& x, const BimoduleElement& y);
BimoduleElement central_aut(const CentralUnitary& u, const BimoduleElement& x);

// psi_{X_sigma}(u) = u o sigma, the central unitary with
// central_aut(psi(u), x) = right_act(x, central_embed(u)).
CentralUnitary psi_of_bimodule(const BlockPermutation& sigma, const CentralUnitary& u);

// Dimension of X_sigma as a complex vector space.
int bimodule_dim(const BlockAlgebra& algebra, const BlockPermutation& sigma);

class Rng;
BimoduleElement random_element(const AlgebraPtr& algebra, const BlockPermutation& sigma, Rng& rng);

// Matrix-unit basis of X_sigma, in a fixed (block, row, column) order.
std::vector<BimoduleElement> basis_elements(const AlgebraPtr& algebra, const BlockPermutation& sigma);

} // namespace fell
