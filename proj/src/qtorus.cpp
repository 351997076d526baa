#include "fell/qtorus.hpp"

#include <algorithm>
#include <cmath>

#include "fell/rng.hpp"

namespace fell {

LazyTwist::LazyTwist(std::vector<std::vector<Angle>> theta) : theta_(std::move(theta)) {
    rank_ = static_cast<int>(theta_.size());
    if (rank_ < 1) throw InputError("LazyTwist: rank must be positive");
    for (const auto& row : theta_)
        if (static_cast<int>(row.size()) != rank_)
            throw InputError("LazyTwist: theta must be square");
    for (int i = 0; i < rank_; ++i) {
        if (!theta_[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)].is_zero())
            throw InputError("LazyTwist: theta must have zero diagonal");
        for (int j = i + 1; j < rank_; ++j)
            if (theta_[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] !=
                -theta_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])
                throw InputError("LazyTwist: theta must be antisymmetric");
    }
}

Angle LazyTwist::operator()(const std::vector<std::int64_t>& x,
                            const std::vector<std::int64_t>& y) const {
    if (static_cast<int>(x.size()) != rank_ || static_cast<int>(y.size()) != rank_)
        throw InputError("LazyTwist: element length does not match rank");
    Angle acc;
    for (int i = 0; i < rank_; ++i)
        for (int j = i + 1; j < rank_; ++j) {
            const auto& th = theta_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            if (th.is_zero()) continue;
            acc = acc + th.times(checked_mul(x[static_cast<std::size_t>(j)],
                                             y[static_cast<std::size_t>(i)]));
        }
    return acc;
}

LazyTwist lazy_system(int rank, std::vector<std::vector<Angle>> theta) {
    if (static_cast<int>(theta.size()) != rank)
        throw InputError("lazy_system: theta size does not match rank");
    return LazyTwist(std::move(theta));
}

LazyBundle::LazyBundle(LazyTwist twist) : twist_(std::move(twist)), group_(twist_.rank()) {}

LazyBundle::Elt LazyBundle::mul(const Elt& s, const Elt& t) const {
    return {group_.mul(s.first, t.first), twist_(s.first, t.first).unit() * s.second * t.second};
}

LazyBundle::Elt LazyBundle::star(const Elt& s) const {
    const auto inv = group_.inv(s.first);
    return {inv, std::conj(twist_(inv, s.first).unit()) * std::conj(s.second)};
}

namespace {

std::vector<std::int64_t> random_point(Rng& rng, int rank, int window) {
    std::vector<std::int64_t> v(static_cast<std::size_t>(rank));
    for (auto& c : v) c = rng.next_int(-window, window);
    return v;
}

void record(CheckResult& c, double residual, double tol, const std::string& witness) {
    if (residual > c.max_residual) {
        c.max_residual = residual;
        c.witness = witness;
    }
    if (residual > tol) c.pass = false;
}

} // namespace

bool lazy_cocycle_identity(const LazyTwist& twist, int window, int triples, std::uint64_t seed) {
    Rng rng(seed + 0x10f5);
    FreeAbelianGroup group(twist.rank());
    for (int i = 0; i < triples; ++i) {
        const auto x = random_point(rng, twist.rank(), window);
        const auto y = random_point(rng, twist.rank(), window);
        const auto z = random_point(rng, twist.rank(), window);
        // d(lambda)(x,y,z) = lambda(y,z) - lambda(x+y,z) + lambda(x,y+z) - lambda(x,y)
        const Angle d = twist(y, z) - twist(group.mul(x, y), z) + twist(x, group.mul(y, z)) - twist(x, y);
        if (!d.is_zero()) return false;
    }
    return true;
}

AxiomReport verify_axioms_lazy(const LazyBundle& bundle, int window, int samples,
                               std::uint64_t seed, double tol) {
    Rng rng(seed * 31337ull + 11);
    const int d = bundle.rank();
    FreeAbelianGroup group(d);
    samples = std::max(1, samples);

    std::vector<LazyBundle::Elt> pool;
    for (int i = 0; i < samples; ++i)
        pool.emplace_back(random_point(rng, d, window), rng.next_complex());

    CheckResult f1, f2, f3, f4, f5, f6, f7, assoc, saturation;
    const cplx alpha(0.7, -0.3);
    const auto abs2 = [](cplx z) { return std::abs(z); };

    for (const auto& s : pool) {
        for (const auto& t : pool) {
            const auto st = bundle.mul(s, t);
            record(f1, st.first == group.mul(s.first, t.first) ? 0.0 : 1.0, tol, "fiber targeting");
            // bilinearity on scalars
            const cplx lin = bundle.mul({s.first, alpha * s.second}, t).second - alpha * st.second;
            record(f1, std::abs(lin), tol, "bilinearity");
            record(f2, std::max(0.0, abs2(st.second) - abs2(s.second) * abs2(t.second)), tol, "F2");
            const auto sts = bundle.star(st);
            const auto tsss = bundle.mul(bundle.star(t), bundle.star(s));
            record(f4, std::abs(sts.second - tsss.second), tol, "F4");
        }
        const auto ss = bundle.star(s);
        record(f3, ss.first == group.inv(s.first) ? 0.0 : 1.0, tol, "involution fiber");
        record(f3, std::abs(bundle.star({s.first, alpha * s.second}).second - std::conj(alpha) * ss.second),
               tol, "anti-linearity");
        record(f5, std::abs(bundle.star(ss).second - s.second), tol, "F5");
        const auto prod = bundle.mul(ss, s);
        record(f6, std::abs(abs2(prod.second) - abs2(s.second) * abs2(s.second)), 10.0 * tol, "F6");
        record(f7, std::max(0.0, -prod.second.real()), 10.0 * tol, "F7 positivity");
        record(f7, std::abs(prod.second.imag()), 10.0 * tol, "F7 self-adjoint");
    }

    for (int i = 0; i < samples; ++i) {
        const auto& x = pool[static_cast<std::size_t>(i)];
        const auto& y = pool[static_cast<std::size_t>((i + 1) % samples)];
        const auto& z = pool[static_cast<std::size_t>((i + 2) % samples)];
        record(assoc, std::abs(bundle.mul(bundle.mul(x, y), z).second -
                               bundle.mul(x, bundle.mul(y, z)).second),
               tol, "associativity");
    }

    // one-dimensional fibers: the product of unit sections never vanishes
    for (int i = 0; i < samples; ++i) {
        const auto x = random_point(rng, d, window);
        const auto y = random_point(rng, d, window);
        const auto prod = bundle.mul({x, 1.0}, {y, 1.0});
        record(saturation, std::abs(std::abs(prod.second) - 1.0), 10.0 * tol, "unit products");
    }

    AxiomReport rep;
    rep.checks = {
        {"F1_bilinearity", f1},
        {"F2_submultiplicative", f2},
        {"F3_involution_antilinear", f3},
        {"F4_antimultiplicative", f4},
        {"F5_involutive", f5},
        {"F6_cstar_identity", f6},
        {"F7_positivity", f7},
        {"associativity", assoc},
        {"saturation", saturation},
    };
    return rep;
}

} // namespace fell
