#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fell/bimodule.hpp"
#include "fell/group.hpp"
#include "fell/rational.hpp"
#include "fell/snf.hpp"

namespace fell {

// Normalized p-cochain G^p -> T^k with exact rational angles. Only
// tuples free of the identity are stored; everything else is zero by
// normalization.
class Cochain {
public:
    Cochain(GroupPtr group, int k, int degree);

    int degree() const { return degree_; }
    int k() const { return k_; }
    const GroupPtr& group() const { return group_; }

    // number of identity-free tuples
    std::size_t tuples() const { return table_.size(); }
    std::vector<int> tuple_at(std::size_t index) const;
    std::size_t index_of(const std::vector<int>& tuple) const;

    // value at an arbitrary tuple (zero if any argument is the identity)
    AngleVec value(const std::vector<int>& tuple) const;
    void set(const std::vector<int>& tuple, AngleVec v);

    const AngleVec& entry(std::size_t index) const { return table_[index]; }
    AngleVec& entry(std::size_t index) { return table_[index]; }

    bool is_zero() const;
    Cochain operator+(const Cochain& o) const;
    Cochain operator-(const Cochain& o) const;
    Cochain operator-() const;

    bool operator==(const Cochain& o) const;
    bool lex_less(const Cochain& o) const;

private:
    GroupPtr group_;
    int k_;
    int degree_;
    std::vector<AngleVec> table_;
};

// g -> block permutation, the G-module structure on T^k induced by a
// Picard homomorphism: (S(g)u)_i = u_{sigma_g(i)}.
class GroupAction {
public:
    GroupAction(GroupPtr group, std::vector<BlockPermutation> perms);
    static GroupAction trivial(GroupPtr group, int k);

    const GroupPtr& group() const { return group_; }
    int k() const { return k_; }
    const BlockPermutation& perm(int g) const { return perms_[static_cast<std::size_t>(g)]; }
    bool is_trivial() const;

    AngleVec apply(int g, const AngleVec& v) const;

private:
    GroupPtr group_;
    int k_;
    std::vector<BlockPermutation> perms_;
};

Cochain differential(const Cochain& f, const GroupAction& action);
bool is_cocycle(const Cochain& f, const GroupAction& action);

// The twisted differential d: C^{p-1} -> C^p as an integer matrix on
// the free coordinates (tuple-major, component-minor ordering).
IntMatrix differential_matrix(const GroupAction& action, int target_degree);

// Solve d(eta) = omega over Q/Z; empty when omega is not a coboundary
// of any T-valued cochain. Requires omega to be a cocycle.
std::optional<Cochain> coboundary_solve(const Cochain& omega, const GroupAction& action);

// Representatives of the classes of mu_m-valued p-cocycles modulo
// T-valued coboundaries, canonicalized to the lexicographically
// smallest table and sorted. Computed via Smith normal form.
std::vector<Cochain> cohomology_classes(const GroupPtr& group, const GroupAction& action,
                                        int degree, std::int64_t m);

inline std::vector<Cochain> h2_classes(const GroupPtr& group, const GroupAction& action,
                                       std::int64_t m) {
    return cohomology_classes(group, action, 2, m);
}

// Independent oracle: the same quotient computed by exhaustive
// enumeration of all normalized p-cochains with mu_m values, with
// equivalence decided by enumerating mu_{|G|*m}-valued (p-1)-cochains.
// Throws CapacityError above 10^7 candidates.
std::vector<Cochain> brute_force_classes(const GroupPtr& group, const GroupAction& action,
                                         int degree, std::int64_t m);

} // namespace fell
