#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fell/crossed_product.hpp"
#include "fell/factor_system.hpp"
#include "fell/rng.hpp"

namespace fell {

struct BundleElement {
    int base;               // group element index
    BimoduleElement value;  // permutation sigma_{base}
};

// Discrete saturated Fell bundle over a finite group, either built from
// a factor system (fiber X_{sigma_g}, multiplication = twisted tensor)
// or from a twisted action (fiber B, crossed product formulas).
class FellBundle {
public:
    static FellBundle from_factor_system(FactorSystem fs);
    // Bundle of a possibly non-associative pre-system; the axiom suite
    // then reports the associativity failures.
    static FellBundle from_pre_system(const PreFactorSystem& pre);
    static FellBundle from_twisted_action(TwistedAction ta, double tol);

    const GroupPtr& group() const { return group_; }
    const AlgebraPtr& algebra() const { return algebra_; }
    const BlockPermutation& sigma(int g) const { return perms_[static_cast<std::size_t>(g)]; }

    bool is_crossed_product_form() const { return crossed_.has_value(); }
    const Cochain* central_twist() const { return twist_ ? &*twist_ : nullptr; }
    const TwistedAction* twisted_action() const { return crossed_ ? &*crossed_ : nullptr; }
    CentralUnitary omega(int g, int h) const;  // central twist form only

    BundleElement element(int g, BimoduleElement value) const;
    BundleElement embed_unit(const AlgebraElement& b) const;  // fiber at e
    AlgebraElement as_algebra(const BundleElement& s) const;  // requires base == e

    BundleElement mul(const BundleElement& s, const BundleElement& t) const;
    BundleElement star(const BundleElement& s) const;
    BundleElement add(const BundleElement& s, const BundleElement& t) const;
    BundleElement scale(cplx a, const BundleElement& s) const;
    double norm(const BundleElement& s) const { return s.value.norm(); }

    BundleElement random_in_fiber(int g, Rng& rng) const;
    std::vector<BundleElement> fiber_basis(int g) const;

private:
    FellBundle() = default;
    void check_membership(const BundleElement& s) const;

    GroupPtr group_;
    AlgebraPtr algebra_;
    std::vector<BlockPermutation> perms_;
    std::optional<Cochain> twist_;
    std::optional<TwistedAction> crossed_;
};

FellBundle trivial_bundle(const GroupPtr& group, const AlgebraPtr& algebra);

struct CheckResult {
    bool pass = true;
    double max_residual = 0.0;
    std::string witness;  // short description of the worst case, if any
};

struct AxiomReport {
    std::vector<std::pair<std::string, CheckResult>> checks;
    bool all_pass() const;
    const CheckResult* find(const std::string& name) const;
};

// Sampled verification of F1-F7 plus associativity, the saturation rank
// check and the inner-product reconstruction of the involution.
AxiomReport verify_axioms(const FellBundle& bundle, int samples = 32, std::uint64_t seed = 0,
                          double tol = 1e-9);

PicardHom picard_hom_of(const FellBundle& bundle);

using UnitarySection = std::vector<BundleElement>;  // indexed by g, u_e = 1_B

// Unitary in every fiber when psi is size-preserving; absent otherwise.
std::optional<UnitarySection> find_unitary_section(const FellBundle& bundle, double tol);

TwistedAction extract_twisted_action(const FellBundle& bundle, const UnitarySection& section,
                                     double tol);

FellBundle build_crossed_product(const TwistedAction& ta, double tol);

// Checks Lemma-style identities u_g B = B u_g = B_g by a rank test on
// left/right translates of the section.
CheckResult check_unitary_translates(const FellBundle& bundle, const UnitarySection& section,
                                     double tol);

// Sampled check that a fiberwise map phi realizes an equivalence of
// bundles: phi_e = id, phi(s)phi(t) = phi(st), phi(s)^* = phi(s^*).
template <typename Map>
CheckResult check_equivalence_map(const FellBundle& from, const FellBundle& to, Map&& phi,
                                  int samples, std::uint64_t seed, double tol) {
    CheckResult res;
    const auto note = [&](double r, const std::string& w) {
        if (r > res.max_residual) {
            res.max_residual = r;
            res.witness = w;
        }
        if (r > tol) res.pass = false;
    };
    Rng rng(seed * 7919ull + 5);
    const int n = from.group()->order();
    for (int s = 0; s < std::max(1, samples); ++s) {
        {
            auto b = from.random_in_fiber(FiniteGroup::identity, rng);
            note((phi(b).value - b.value).norm(), "phi_e != id");
        }
        for (int a = 0; a < n; ++a) {
            const auto x = from.random_in_fiber(a, rng);
            note((to.star(phi(x)).value - phi(from.star(x)).value).norm(),
                 "involution at g=" + std::to_string(a));
            for (int b = 0; b < n; ++b) {
                const auto y = from.random_in_fiber(b, rng);
                note((to.mul(phi(x), phi(y)).value - phi(from.mul(x, y)).value).norm(),
                     "multiplication at g=" + std::to_string(a) + ",h=" + std::to_string(b));
            }
        }
    }
    return res;
}

} // namespace fell
