#include "fell/crossed_product.hpp"

#include <algorithm>
#include <cmath>

#include "fell/errors.hpp"

namespace fell {

AlgebraAutomorphism AlgebraAutomorphism::id(const AlgebraPtr& algebra) {
    AlgebraAutomorphism a{algebra, BlockPermutation::id(algebra->blocks()), {}};
    for (int i = 0; i < algebra->blocks(); ++i)
        a.unitaries.push_back(CMatrix::identity(static_cast<std::size_t>(algebra->size(i))));
    return a;
}

AlgebraElement AlgebraAutomorphism::apply(const AlgebraElement& b) const {
    if (*b.algebra != *algebra) throw InputError("AlgebraAutomorphism: algebra mismatch");
    AlgebraElement r{algebra, {}};
    for (int i = 0; i < algebra->blocks(); ++i) {
        const auto& u = unitaries[static_cast<std::size_t>(i)];
        r.blocks.push_back(u * b.blocks[static_cast<std::size_t>(perm(i))] * u.adjoint());
    }
    return r;
}

void AlgebraAutomorphism::validate(double tol) const {
    if (perm.size() != algebra->blocks())
        throw InputError("AlgebraAutomorphism: permutation size mismatch");
    if (static_cast<int>(unitaries.size()) != algebra->blocks())
        throw InputError("AlgebraAutomorphism: one unitary per block required");
    for (int i = 0; i < algebra->blocks(); ++i) {
        if (algebra->size(perm(i)) != algebra->size(i))
            throw InputError("AlgebraAutomorphism: permutation does not preserve block sizes");
        const auto& u = unitaries[static_cast<std::size_t>(i)];
        if (static_cast<int>(u.rows()) != algebra->size(i) || u.rows() != u.cols())
            throw InputError("AlgebraAutomorphism: unitary shape mismatch");
        const auto n = u.rows();
        if ((u.adjoint() * u - CMatrix::identity(n)).max_abs() > tol)
            throw InputError("AlgebraAutomorphism: block is not unitary at tolerance");
    }
}

AlgebraElement AlgebraAutomorphism::apply_inverse(const AlgebraElement& b) const {
    if (*b.algebra != *algebra) throw InputError("AlgebraAutomorphism: algebra mismatch");
    const auto inv = perm.inverse();
    AlgebraElement r{algebra, {}};
    for (int j = 0; j < algebra->blocks(); ++j) {
        const auto i = static_cast<std::size_t>(inv(j));
        const auto& u = unitaries[i];
        r.blocks.push_back(u.adjoint() * b.blocks[i] * u);
    }
    return r;
}

namespace {

void worse(ConditionResult& c, double residual, const std::string& witness, double tol) {
    if (residual > c.max_residual) {
        c.max_residual = residual;
        c.witness = witness;
    }
    if (residual > tol) c.pass = false;
}

} // namespace

TwistedActionReport verify_twisted_action(const TwistedAction& ta, double tol) {
    TwistedActionReport rep;
    const int n = ta.group->order();
    if (static_cast<int>(ta.s.size()) != n)
        throw InputError("TwistedAction: one automorphism per group element required");
    if (static_cast<int>(ta.omega.size()) != n)
        throw InputError("TwistedAction: omega must be an n x n table");
    for (const auto& row : ta.omega)
        if (static_cast<int>(row.size()) != n)
            throw InputError("TwistedAction: omega must be an n x n table");
    for (const auto& a : ta.s) a.validate(tol);

    const auto one = identity(ta.algebra);

    // normalization: S(e) = id on a basis, omega(e,.) = omega(.,e) = 1
    {
        for (int i = 0; i < ta.algebra->blocks(); ++i) {
            if (!ta.S(0).perm.is_identity()) {
                worse(rep.normalization, 1.0, "S(e) permutes blocks", tol);
                break;
            }
        }
        const auto basis = basis_elements(ta.algebra, BlockPermutation::id(ta.algebra->blocks()));
        for (const auto& e : basis) {
            AlgebraElement b{ta.algebra, e.blocks};
            worse(rep.normalization, distance(ta.S(0).apply(b), b), "S(e) != id", tol);
        }
        for (int g = 0; g < n; ++g) {
            worse(rep.normalization, distance(ta.w(0, g), one), "omega(e,g) != 1", tol);
            worse(rep.normalization, distance(ta.w(g, 0), one), "omega(g,e) != 1", tol);
        }
    }

    // unitarity of the omega values
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h) {
            const auto& w = ta.w(g, h);
            worse(rep.unitarity, distance(mul(w, adjoint(w)), one),
                  "omega(" + std::to_string(g) + "," + std::to_string(h) + ") not unitary", tol);
            worse(rep.unitarity, distance(mul(adjoint(w), w), one),
                  "omega(" + std::to_string(g) + "," + std::to_string(h) + ") not unitary", tol);
        }

    // C1 on the matrix-unit basis:
    //   S(g)(S(h)(b)) omega(g,h) = omega(g,h) S(gh)(b)
    const auto basis = basis_elements(ta.algebra, BlockPermutation::id(ta.algebra->blocks()));
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h) {
            const int gh = ta.group->mul(g, h);
            for (const auto& e : basis) {
                AlgebraElement b{ta.algebra, e.blocks};
                const auto lhs = mul(ta.S(g).apply(ta.S(h).apply(b)), ta.w(g, h));
                const auto rhs = mul(ta.w(g, h), ta.S(gh).apply(b));
                worse(rep.twisted_action, distance(lhs, rhs),
                      "C1 at g=" + std::to_string(g) + ",h=" + std::to_string(h), tol);
            }
        }

    // C2: S(g)(omega(h,k)) omega(g,hk) = omega(gh,k) omega(g,h)
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h)
            for (int k = 0; k < n; ++k) {
                const auto lhs = mul(ta.S(g).apply(ta.w(h, k)), ta.w(g, ta.group->mul(h, k)));
                const auto rhs = mul(ta.w(ta.group->mul(g, h), k), ta.w(g, h));
                worse(rep.twisted_cocycle, distance(lhs, rhs),
                      "C2 at g=" + std::to_string(g) + ",h=" + std::to_string(h) +
                          ",k=" + std::to_string(k),
                      tol);
            }

    return rep;
}

BimoduleElement unitarize(const BimoduleElement& v, double tol) {
    for (int i = 0; i < v.sigma.size(); ++i) {
        const auto& b = v.blocks[static_cast<std::size_t>(i)];
        if (b.rows() != b.cols())
            throw InputError("unitarize: non-square block, psi does not take values in Out(B)");
    }
    BimoduleElement u{v.algebra, v.sigma, {}};
    for (const auto& b : v.blocks) u.blocks.push_back(polar_unitary(b, tol));
    return u;
}

} // namespace fell
