#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "fell/fell_bundle.hpp"
#include "fell/group.hpp"
#include "fell/rational.hpp"

namespace fell {

// Lazily evaluated 2-cocycle on Z^d attached to an antisymmetric
// rational matrix theta: lambda(x, y) = sum_{i<j} theta_ij x_j y_i
// (mod 1). Bilinearity makes it a cocycle; nothing is materialized.
class LazyTwist {
public:
    explicit LazyTwist(std::vector<std::vector<Angle>> theta);

    int rank() const { return rank_; }
    const std::vector<std::vector<Angle>>& theta() const { return theta_; }

    Angle operator()(const std::vector<std::int64_t>& x, const std::vector<std::int64_t>& y) const;

private:
    int rank_;
    std::vector<std::vector<Angle>> theta_;
};

// Pre-factor-system over Z^d with unit fiber C (k = 1); the twist is
// evaluated on demand.
LazyTwist lazy_system(int rank, std::vector<std::vector<Angle>> theta);

// Fell line bundle over Z^d with the lazy twist: fiber C at every
// point, (x,a)(y,b) = (x+y, e(lambda(x,y)) a b).
class LazyBundle {
public:
    explicit LazyBundle(LazyTwist twist);

    using Elt = std::pair<std::vector<std::int64_t>, cplx>;

    int rank() const { return group_.rank(); }
    const LazyTwist& twist() const { return twist_; }

    Elt mul(const Elt& s, const Elt& t) const;
    Elt star(const Elt& s) const;

private:
    LazyTwist twist_;
    FreeAbelianGroup group_;
};

// Exact cocycle identity on random triples drawn from [-window, window]^d.
bool lazy_cocycle_identity(const LazyTwist& twist, int window, int triples, std::uint64_t seed);

// Sampled axiom checks on the windowed bundle (same report shape as the
// finite-group verifier).
AxiomReport verify_axioms_lazy(const LazyBundle& bundle, int window, int samples,
                               std::uint64_t seed, double tol);

} // namespace fell
