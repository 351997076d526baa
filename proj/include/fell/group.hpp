#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "fell/errors.hpp"

namespace fell {

// Finite group given by its Cayley table. The identity always sits at
// index 0 (constructors reorder explicit tables if needed), which makes
// normalized cochains testable by index-0 checks.
class FiniteGroup {
public:
    // table[a][b] = index of a*b; reorders so that the identity is 0.
    explicit FiniteGroup(std::vector<std::vector<int>> table);

    int order() const { return order_; }
    int mul(int a, int b) const { return cayley_[a][b]; }
    int inv(int a) const { return inverse_[a]; }
    static constexpr int identity = 0;

    const std::vector<std::vector<int>>& cayley() const { return cayley_; }

    bool operator==(const FiniteGroup& o) const { return cayley_ == o.cayley_; }

private:
    int order_;
    std::vector<std::vector<int>> cayley_;
    std::vector<int> inverse_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

GroupPtr make_cyclic(int n);
GroupPtr direct_product(const FiniteGroup& a, const FiniteGroup& b);

// Exhaustive check of associativity, identity and inverses.
// Throws InputError on inconsistent table dimensions.
bool validate_group(const std::vector<std::vector<int>>& table);

// Z^d with lazy integer-vector arithmetic; no element enumeration.
class FreeAbelianGroup {
public:
    explicit FreeAbelianGroup(int rank);

    int rank() const { return rank_; }
    using Elt = std::vector<std::int64_t>;

    Elt identity() const { return Elt(rank_, 0); }
    Elt mul(const Elt& a, const Elt& b) const;
    Elt inv(const Elt& a) const;

private:
    int rank_;
};

} // namespace fell
