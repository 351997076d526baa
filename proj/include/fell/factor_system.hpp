#pragma once

#include <cstdint>
#include <optional>

#include "fell/cohomology.hpp"

namespace fell {

// Group homomorphism psi: G -> Pic(B), realized by block permutations
// with sigma_e = id and sigma_{gh} = sigma_g |> sigma_h (validated
// exhaustively on construction).
class PicardHom {
public:
    PicardHom(GroupPtr group, AlgebraPtr algebra, std::vector<BlockPermutation> perms);
    static PicardHom trivial(GroupPtr group, AlgebraPtr algebra);

    const GroupPtr& group() const { return group_; }
    const AlgebraPtr& algebra() const { return algebra_; }
    const BlockPermutation& sigma(int g) const { return perms_[static_cast<std::size_t>(g)]; }
    int k() const { return algebra_->blocks(); }

    // The induced G-module structure mu o psi on UZ(B) = T^k.
    GroupAction action() const;

    // True when every sigma_g maps blocks to blocks of the same size
    // (the Out(B) situation of crossed product bundles).
    bool size_preserving() const;

    bool operator==(const PicardHom& o) const;

private:
    GroupPtr group_;
    AlgebraPtr algebra_;
    std::vector<BlockPermutation> perms_;
};

// Factor system: psi plus a central twist omega in Z^2(G, T^k)_psi.
// All structure maps Psi_{g,h} are the canonical tensor maps twisted by
// omega(g,h), so associativity is exactly the cocycle condition.
class FactorSystem {
public:
    FactorSystem(PicardHom picard, Cochain twist);

    const PicardHom& picard() const { return picard_; }
    const Cochain& twist() const { return twist_; }

    CentralUnitary omega(int g, int h) const;

private:
    PicardHom picard_;
    Cochain twist_;
};

// Same data without the cocycle requirement ("pre" systems that may
// fail associativity).
class PreFactorSystem {
public:
    PreFactorSystem(PicardHom picard, Cochain twist);

    const PicardHom& picard() const { return picard_; }
    const Cochain& twist() const { return twist_; }

private:
    PicardHom picard_;
    Cochain twist_;
};

// Non-vanishing obstruction: carries the degree-3 representative.
class ObstructionError : public std::runtime_error {
public:
    ObstructionError(std::string msg, Cochain rep)
        : std::runtime_error(std::move(msg)), representative(std::move(rep)) {}
    Cochain representative;
};

FactorSystem canonical_system(const PicardHom& psi);

// Exact path: is_cocycle(twist). Also cross-checks both sides of the
// associativity condition on random bimodule elements over every
// (g,h,k) and insists the two paths agree.
bool is_factor_system(const PreFactorSystem& pre, int samples = 2, std::uint64_t seed = 0,
                      double tol = 1e-9);

// The obstruction 3-cochain d(lambda); always an exact 3-cocycle.
Cochain obstruction(const PreFactorSystem& pre);

struct CharacteristicClass {
    Cochain obstruction_cocycle;
    bool vanishing;
    std::optional<Cochain> witness;  // 2-cochain with d(witness) = -obstruction
};

CharacteristicClass characteristic_class(const PreFactorSystem& pre);

// Twist by the witness: the repaired twist lambda + witness is a
// cocycle. Throws ObstructionError when the class does not vanish.
FactorSystem repair(const PreFactorSystem& pre);

} // namespace fell
