#include "fell/bimodule.hpp"

#include <algorithm>
#include <cmath>

#include "fell/errors.hpp"
#include "fell/rng.hpp"

namespace fell {

BlockPermutation::BlockPermutation(std::vector<int> images) : images_(std::move(images)) {
    const int k = static_cast<int>(images_.size());
    if (k == 0) throw InputError("BlockPermutation: empty");
    std::vector<bool> seen(static_cast<std::size_t>(k), false);
    for (int v : images_) {
        if (v < 0 || v >= k || seen[static_cast<std::size_t>(v)])
            throw InputError("BlockPermutation: not a permutation");
        seen[static_cast<std::size_t>(v)] = true;
    }
}

BlockPermutation BlockPermutation::id(int k) {
    std::vector<int> v(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) v[static_cast<std::size_t>(i)] = i;
    return BlockPermutation(std::move(v));
}

BlockPermutation BlockPermutation::inverse() const {
    std::vector<int> v(images_.size());
    for (int i = 0; i < size(); ++i) v[static_cast<std::size_t>(images_[static_cast<std::size_t>(i)])] = i;
    return BlockPermutation(std::move(v));
}

BlockPermutation BlockPermutation::then(const BlockPermutation& tau) const {
    if (size() != tau.size()) throw InputError("BlockPermutation: size mismatch in composition");
    std::vector<int> v(images_.size());
    for (int i = 0; i < size(); ++i) v[static_cast<std::size_t>(i)] = tau(images_[static_cast<std::size_t>(i)]);
    return BlockPermutation(std::move(v));
}

bool BlockPermutation::is_identity() const {
    for (int i = 0; i < size(); ++i)
        if (images_[static_cast<std::size_t>(i)] != i) return false;
    return true;
}

namespace {

void check_element(const BimoduleElement& x) {
    const auto& alg = *x.algebra;
    if (x.sigma.size() != alg.blocks())
        throw InputError("bimodule element: permutation size does not match block count");
    if (static_cast<int>(x.blocks.size()) != alg.blocks())
        throw InputError("bimodule element: wrong number of blocks");
    for (int i = 0; i < alg.blocks(); ++i) {
        const auto& m = x.blocks[static_cast<std::size_t>(i)];
        if (static_cast<int>(m.rows()) != alg.size(i) ||
            static_cast<int>(m.cols()) != alg.size(x.sigma(i)))
            throw InputError("bimodule element: block shape mismatch");
    }
}

void check_pair(const BimoduleElement& x, const BimoduleElement& y) {
    if (*x.algebra != *y.algebra) throw InputError("bimodule elements over different algebras");
    if (x.sigma != y.sigma) throw InputError("bimodule elements with different permutations");
}

} // namespace

BimoduleElement BimoduleElement::operator+(const BimoduleElement& o) const {
    check_pair(*this, o);
    BimoduleElement r{algebra, sigma, {}};
    for (std::size_t i = 0; i < blocks.size(); ++i) r.blocks.push_back(blocks[i] + o.blocks[i]);
    return r;
}

BimoduleElement BimoduleElement::operator-(const BimoduleElement& o) const {
    check_pair(*this, o);
    BimoduleElement r{algebra, sigma, {}};
    for (std::size_t i = 0; i < blocks.size(); ++i) r.blocks.push_back(blocks[i] - o.blocks[i]);
    return r;
}

BimoduleElement BimoduleElement::scaled(cplx a) const {
    BimoduleElement r{algebra, sigma, {}};
    for (const auto& b : blocks) r.blocks.push_back(b.scaled(a));
    return r;
}

double BimoduleElement::norm() const {
    // Hilbert-module norm: ||x|| = ||<x,x>||^{1/2} = max block singular value
    double m = 0.0;
    for (const auto& b : blocks) m = std::max(m, operator_norm(b));
    return m;
}

BimoduleElement canonical_element(const AlgebraPtr& algebra, const BlockPermutation& sigma) {
    BimoduleElement r{algebra, sigma, {}};
    for (int i = 0; i < algebra->blocks(); ++i) {
        const int rows = algebra->size(i);
        const int cols = algebra->size(sigma(i));
        CMatrix m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
        for (int d = 0; d < std::min(rows, cols); ++d)
            m.at(static_cast<std::size_t>(d), static_cast<std::size_t>(d)) = 1.0;
        r.blocks.push_back(std::move(m));
    }
    return r;
}

BimoduleElement zero_element(const AlgebraPtr& algebra, const BlockPermutation& sigma) {
    BimoduleElement r{algebra, sigma, {}};
    for (int i = 0; i < algebra->blocks(); ++i)
        r.blocks.emplace_back(static_cast<std::size_t>(algebra->size(i)),
                              static_cast<std::size_t>(algebra->size(sigma(i))));
    return r;
}

BimoduleElement left_act(const AlgebraElement& b, const BimoduleElement& x) {
    if (*b.algebra != *x.algebra) throw InputError("left_act: algebra mismatch");
    check_element(x);
    BimoduleElement r{x.algebra, x.sigma, {}};
    for (std::size_t i = 0; i < x.blocks.size(); ++i) r.blocks.push_back(b.blocks[i] * x.blocks[i]);
    return r;
}

BimoduleElement right_act(const BimoduleElement& x, const AlgebraElement& b) {
    if (*b.algebra != *x.algebra) throw InputError("right_act: algebra mismatch");
    check_element(x);
    BimoduleElement r{x.algebra, x.sigma, {}};
    for (int i = 0; i < x.sigma.size(); ++i)
        r.blocks.push_back(x.blocks[static_cast<std::size_t>(i)] *
                           b.blocks[static_cast<std::size_t>(x.sigma(i))]);
    return r;
}

AlgebraElement inner_left(const BimoduleElement& x, const BimoduleElement& y) {
    check_pair(x, y);
    AlgebraElement r{x.algebra, {}};
    for (std::size_t i = 0; i < x.blocks.size(); ++i)
        r.blocks.push_back(x.blocks[i] * y.blocks[i].adjoint());
    return r;
}

AlgebraElement inner_right(const BimoduleElement& x, const BimoduleElement& y) {
    check_pair(x, y);
    const auto inv = x.sigma.inverse();
    AlgebraElement r{x.algebra, {}};
    for (int j = 0; j < x.sigma.size(); ++j) {
        const auto i = static_cast<std::size_t>(inv(j));
        r.blocks.push_back(x.blocks[i].adjoint() * y.blocks[i]);
    }
    return r;
}

BimoduleElement tensor(const BimoduleElement& x, const BimoduleElement& y) {
    if (*x.algebra != *y.algebra) throw InputError("tensor: algebra mismatch");
    BimoduleElement r{x.algebra, x.sigma.then(y.sigma), {}};
    for (int i = 0; i < x.sigma.size(); ++i)
        r.blocks.push_back(x.blocks[static_cast<std::size_t>(i)] *
                           y.blocks[static_cast<std::size_t>(x.sigma(i))]);
    return r;
}

BimoduleElement central_aut(const CentralUnitary& u, const BimoduleElement& x) {
    if (u.size() != x.sigma.size()) throw InputError("central_aut: size mismatch");
    BimoduleElement r{x.algebra, x.sigma, {}};
    for (std::size_t i = 0; i < x.blocks.size(); ++i)
        r.blocks.push_back(x.blocks[i].scaled(u.values()[i]));
    return r;
}

CentralUnitary psi_of_bimodule(const BlockPermutation& sigma, const CentralUnitary& u) {
    if (u.size() != sigma.size()) throw InputError("psi_of_bimodule: size mismatch");
    if (u.angles()) {
        AngleVec a(static_cast<std::size_t>(sigma.size()));
        for (int i = 0; i < sigma.size(); ++i)
            a[static_cast<std::size_t>(i)] = (*u.angles())[static_cast<std::size_t>(sigma(i))];
        return CentralUnitary::from_angles(std::move(a));
    }
    std::vector<cplx> v(static_cast<std::size_t>(sigma.size()));
    for (int i = 0; i < sigma.size(); ++i)
        v[static_cast<std::size_t>(i)] = u.values()[static_cast<std::size_t>(sigma(i))];
    return CentralUnitary::from_values(std::move(v), 1e-9);
}

int bimodule_dim(const BlockAlgebra& algebra, const BlockPermutation& sigma) {
    int d = 0;
    for (int i = 0; i < algebra.blocks(); ++i) d += algebra.size(i) * algebra.size(sigma(i));
    return d;
}

BimoduleElement random_element(const AlgebraPtr& algebra, const BlockPermutation& sigma, Rng& rng) {
    BimoduleElement r = zero_element(algebra, sigma);
    for (auto& block : r.blocks)
        for (auto& z : block.data()) z = rng.next_complex();
    return r;
}

std::vector<BimoduleElement> basis_elements(const AlgebraPtr& algebra, const BlockPermutation& sigma) {
    std::vector<BimoduleElement> out;
    for (int i = 0; i < algebra->blocks(); ++i)
        for (int r = 0; r < algebra->size(i); ++r)
            for (int c = 0; c < algebra->size(sigma(i)); ++c) {
                BimoduleElement e = zero_element(algebra, sigma);
                e.blocks[static_cast<std::size_t>(i)].at(static_cast<std::size_t>(r),
                                                         static_cast<std::size_t>(c)) = 1.0;
                out.push_back(std::move(e));
            }
    return out;
}

} // namespace fell
