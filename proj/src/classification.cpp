#include "fell/classification.hpp"

#include "fell/fell_bundle.hpp"

namespace fell {

std::optional<EquivalenceWitness> are_equivalent(const FactorSystem& fs1, const FactorSystem& fs2,
                                                 int samples, std::uint64_t seed, double tol) {
    if (!(*fs1.picard().group() == *fs2.picard().group()) ||
        *fs1.picard().algebra() != *fs2.picard().algebra())
        throw InputError("are_equivalent: mismatched group or algebra");
    if (!(fs1.picard() == fs2.picard())) return std::nullopt;  // different psi

    const auto diff = fs2.twist() - fs1.twist();
    auto varpi = coboundary_solve(diff, fs1.picard().action());
    if (!varpi) return std::nullopt;

    // Redundant numerical validation: with d(varpi) = w2 - w1 the family
    // Phi_g = central_aut(varpi(g), .) intertwines the bundle built from
    // fs2 with the one built from fs1.
    const auto b1 = FellBundle::from_factor_system(fs1);
    const auto b2 = FellBundle::from_factor_system(fs2);
    const auto& w = *varpi;
    const auto phi = [&](const BundleElement& s) {
        return b1.element(s.base,
                          central_aut(CentralUnitary::from_angles(w.value({s.base})), s.value));
    };
    const auto check = check_equivalence_map(b2, b1, phi, samples, seed, 10.0 * tol);
    if (!check.pass)
        throw std::logic_error("are_equivalent: cochain witness failed the bimodule check");

    return EquivalenceWitness{std::move(*varpi)};
}

std::vector<FactorSystem> ext_classes(const PicardHom& psi, std::int64_t m) {
    if (psi.group()->order() > 64)
        throw CapacityError("ext_classes: group order cap is 64");
    const auto classes = h2_classes(psi.group(), psi.action(), m);
    std::vector<FactorSystem> reps;
    reps.reserve(classes.size());
    for (const auto& c : classes) reps.emplace_back(psi, c);
    for (std::size_t i = 0; i < reps.size(); ++i)
        for (std::size_t j = i + 1; j < reps.size(); ++j)
            if (are_equivalent(reps[i], reps[j], 1, 0))
                throw std::logic_error("ext_classes: representatives are not pairwise inequivalent");
    return reps;
}

FactorSystem act(const FactorSystem& fs, const Cochain& omega) {
    if (!is_cocycle(omega, fs.picard().action()))
        throw InputError("act: cochain is not a 2-cocycle for the action");
    return FactorSystem(fs.picard(), fs.twist() + omega);
}

} // namespace fell
