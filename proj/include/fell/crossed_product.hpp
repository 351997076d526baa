#pragma once

#include <string>
#include <vector>

#include "fell/algebra.hpp"
#include "fell/bimodule.hpp"
#include "fell/group.hpp"

namespace fell {

// Automorphism of B = (+) M_{n_i}: a size-preserving block permutation
// pi together with unitaries U_i, acting by alpha(b)_i = U_i b_{pi(i)} U_i^*.
struct AlgebraAutomorphism {
    AlgebraPtr algebra;
    BlockPermutation perm;
    std::vector<CMatrix> unitaries;

    static AlgebraAutomorphism id(const AlgebraPtr& algebra);
    AlgebraElement apply(const AlgebraElement& b) const;
    AlgebraElement apply_inverse(const AlgebraElement& b) const;
    void validate(double tol) const;
};

// (S, omega) with S: G -> Aut(B), S(e) = id, and omega: G x G -> UB
// normalized, subject to the twisted action and twisted cocycle
// conditions C1/C2.
struct TwistedAction {
    GroupPtr group;
    AlgebraPtr algebra;
    std::vector<AlgebraAutomorphism> s;             // indexed by g
    std::vector<std::vector<AlgebraElement>> omega; // indexed by [g][h]

    const AlgebraAutomorphism& S(int g) const { return s[static_cast<std::size_t>(g)]; }
    const AlgebraElement& w(int g, int h) const {
        return omega[static_cast<std::size_t>(g)][static_cast<std::size_t>(h)];
    }
};

struct ConditionResult {
    bool pass = true;
    double max_residual = 0.0;
    std::string witness;
};

struct TwistedActionReport {
    ConditionResult normalization;   // S(e) = id, omega(e,.) = omega(.,e) = 1
    ConditionResult unitarity;       // S(g) unitaries and omega values unitary
    ConditionResult twisted_action;  // C1 on a matrix-unit basis
    ConditionResult twisted_cocycle; // C2 on all (g,h,k)
    bool all_pass() const {
        return normalization.pass && unitarity.pass && twisted_action.pass && twisted_cocycle.pass;
    }
};

TwistedActionReport verify_twisted_action(const TwistedAction& ta, double tol);

// Unitary polar factor u = v (v^* v)^{-1/2}, blockwise. Requires every
// block square (sigma in Out(B)) and invertible at `tol`.
BimoduleElement unitarize(const BimoduleElement& v, double tol);

} // namespace fell
