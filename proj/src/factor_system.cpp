#include "fell/factor_system.hpp"

#include <algorithm>

#include "fell/rng.hpp"

namespace fell {

PicardHom::PicardHom(GroupPtr group, AlgebraPtr algebra, std::vector<BlockPermutation> perms)
    : group_(std::move(group)), algebra_(std::move(algebra)), perms_(std::move(perms)) {
    if (static_cast<int>(perms_.size()) != group_->order())
        throw InputError("PicardHom: one permutation per group element required");
    for (const auto& p : perms_)
        if (p.size() != algebra_->blocks())
            throw InputError("PicardHom: permutation size does not match block count");
    if (!perms_[0].is_identity()) throw InputError("PicardHom: sigma_e must be the identity");
    const int n = group_->order();
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h)
            if (perms_[static_cast<std::size_t>(g)].then(perms_[static_cast<std::size_t>(h)]) !=
                perms_[static_cast<std::size_t>(group_->mul(g, h))])
                throw InputError("PicardHom: sigma_{gh} != sigma_g |> sigma_h");
}

PicardHom PicardHom::trivial(GroupPtr group, AlgebraPtr algebra) {
    std::vector<BlockPermutation> perms(static_cast<std::size_t>(group->order()),
                                        BlockPermutation::id(algebra->blocks()));
    return PicardHom(std::move(group), std::move(algebra), std::move(perms));
}

GroupAction PicardHom::action() const { return GroupAction(group_, perms_); }

bool PicardHom::size_preserving() const {
    for (int g = 0; g < group_->order(); ++g)
        for (int i = 0; i < algebra_->blocks(); ++i)
            if (algebra_->size(sigma(g)(i)) != algebra_->size(i)) return false;
    return true;
}

bool PicardHom::operator==(const PicardHom& o) const {
    if (!(*group_ == *o.group_) || *algebra_ != *o.algebra_) return false;
    for (std::size_t g = 0; g < perms_.size(); ++g)
        if (perms_[g] != o.perms_[g]) return false;
    return true;
}

namespace {

void check_twist_shape(const PicardHom& picard, const Cochain& twist) {
    if (!(*twist.group() == *picard.group()))
        throw InputError("factor system: twist group does not match psi");
    if (twist.k() != picard.k())
        throw InputError("factor system: twist block count does not match algebra");
    if (twist.degree() != 2) throw InputError("factor system: twist must have degree 2");
}

} // namespace

FactorSystem::FactorSystem(PicardHom picard, Cochain twist)
    : picard_(std::move(picard)), twist_(std::move(twist)) {
    check_twist_shape(picard_, twist_);
    if (!is_cocycle(twist_, picard_.action()))
        throw InputError("factor system: twist is not a 2-cocycle (associativity fails)");
}

CentralUnitary FactorSystem::omega(int g, int h) const {
    return CentralUnitary::from_angles(twist_.value({g, h}));
}

PreFactorSystem::PreFactorSystem(PicardHom picard, Cochain twist)
    : picard_(std::move(picard)), twist_(std::move(twist)) {
    check_twist_shape(picard_, twist_);
}

FactorSystem canonical_system(const PicardHom& psi) {
    return FactorSystem(psi, Cochain(psi.group(), psi.k(), 2));
}

bool is_factor_system(const PreFactorSystem& pre, int samples, std::uint64_t seed, double tol) {
    const auto action = pre.picard().action();
    const bool exact = is_cocycle(pre.twist(), action);

    // Redundant numerical path: evaluate both sides of the associativity
    // condition on random elements over every triple.
    const auto& g = *pre.picard().group();
    const auto& algebra = pre.picard().algebra();
    const auto& lambda = pre.twist();
    double worst = 0.0;
    Rng rng(seed * 0x9E3779B9ull + 17);
    const auto twisted_mul = [&](int a, int b, const BimoduleElement& x, const BimoduleElement& y) {
        return central_aut(CentralUnitary::from_angles(lambda.value({a, b})), tensor(x, y));
    };
    for (int a = 0; a < g.order(); ++a)
        for (int b = 0; b < g.order(); ++b)
            for (int c = 0; c < g.order(); ++c)
                for (int s = -1; s < samples; ++s) {
                    // s == -1 uses canonical elements (norm-1 tensor), so a
                    // broken triple is always detected
                    const auto x = s < 0 ? canonical_element(algebra, pre.picard().sigma(a))
                                         : random_element(algebra, pre.picard().sigma(a), rng);
                    const auto y = s < 0 ? canonical_element(algebra, pre.picard().sigma(b))
                                         : random_element(algebra, pre.picard().sigma(b), rng);
                    const auto z = s < 0 ? canonical_element(algebra, pre.picard().sigma(c))
                                         : random_element(algebra, pre.picard().sigma(c), rng);
                    const auto lhs = twisted_mul(g.mul(a, b), c, twisted_mul(a, b, x, y), z);
                    const auto rhs = twisted_mul(a, g.mul(b, c), x, twisted_mul(b, c, y, z));
                    worst = std::max(worst, (lhs - rhs).norm());
                }
    const bool numeric = worst <= 100.0 * tol;
    if (numeric != exact)
        throw std::logic_error("is_factor_system: cochain and bimodule verification disagree");
    return exact;
}

Cochain obstruction(const PreFactorSystem& pre) {
    return differential(pre.twist(), pre.picard().action());
}

CharacteristicClass characteristic_class(const PreFactorSystem& pre) {
    Cochain obs = obstruction(pre);
    auto witness = coboundary_solve(-obs, pre.picard().action());
    CharacteristicClass cc{std::move(obs), witness.has_value(), std::move(witness)};
    return cc;
}

FactorSystem repair(const PreFactorSystem& pre) {
    auto cc = characteristic_class(pre);
    if (!cc.vanishing)
        throw ObstructionError("repair: characteristic class does not vanish",
                               std::move(cc.obstruction_cocycle));
    return FactorSystem(pre.picard(), pre.twist() + *cc.witness);
}

} // namespace fell
