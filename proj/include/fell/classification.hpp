#pragma once

#include <cstdint>
#include <optional>

#include "fell/factor_system.hpp"

namespace fell {

// Fiberwise central twist realizing an equivalence between two factor
// systems over the same psi; d(varpi) equals the twist difference
// exactly, with varpi(e) = 0 by normalization.
struct EquivalenceWitness {
    Cochain varpi;  // degree 1
};

// Cochain-level decision (exact): witness iff twist2 - twist1 is a
// coboundary of a T-valued 1-cochain. The witness is numerically
// validated on random bimodule elements before being returned.
std::optional<EquivalenceWitness> are_equivalent(const FactorSystem& fs1, const FactorSystem& fs2,
                                                 int samples = 4, std::uint64_t seed = 0,
                                                 double tol = 1e-9);

// Representatives of Ext classes over psi at modulus m: the canonical
// system acted on by each cohomology class representative. Verified
// pairwise inequivalent.
std::vector<FactorSystem> ext_classes(const PicardHom& psi, std::int64_t m);

// The simply transitive action: add a 2-cocycle to the twist.
FactorSystem act(const FactorSystem& fs, const Cochain& omega);

} // namespace fell
