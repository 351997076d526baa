#include "fell/cohomology.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace fell {

namespace {

std::size_t pow_size(std::size_t base, int exp) {
    std::size_t r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

constexpr std::int64_t kEnumerationCap = 10'000'000;

} // namespace

Cochain::Cochain(GroupPtr group, int k, int degree)
    : group_(std::move(group)), k_(k), degree_(degree) {
    if (degree_ < 1) throw InputError("Cochain: degree must be >= 1");
    if (k_ < 1) throw InputError("Cochain: block count must be >= 1");
    const auto n1 = static_cast<std::size_t>(group_->order() - 1);
    table_.assign(pow_size(n1, degree_), AngleVec(static_cast<std::size_t>(k_)));
}

std::vector<int> Cochain::tuple_at(std::size_t index) const {
    const auto n1 = static_cast<std::size_t>(group_->order() - 1);
    std::vector<int> t(static_cast<std::size_t>(degree_));
    for (int i = degree_ - 1; i >= 0; --i) {
        t[static_cast<std::size_t>(i)] = static_cast<int>(index % n1) + 1;
        index /= n1;
    }
    return t;
}

std::size_t Cochain::index_of(const std::vector<int>& tuple) const {
    const auto n1 = static_cast<std::size_t>(group_->order() - 1);
    std::size_t idx = 0;
    for (int g : tuple) idx = idx * n1 + static_cast<std::size_t>(g - 1);
    return idx;
}

AngleVec Cochain::value(const std::vector<int>& tuple) const {
    if (static_cast<int>(tuple.size()) != degree_) throw InputError("Cochain: wrong tuple length");
    for (int g : tuple)
        if (g == FiniteGroup::identity) return AngleVec(static_cast<std::size_t>(k_));
    return table_[index_of(tuple)];
}

void Cochain::set(const std::vector<int>& tuple, AngleVec v) {
    if (static_cast<int>(tuple.size()) != degree_) throw InputError("Cochain: wrong tuple length");
    if (static_cast<int>(v.size()) != k_) throw InputError("Cochain: wrong value length");
    for (int g : tuple)
        if (g == FiniteGroup::identity) {
            if (!all_zero(v)) throw InputError("Cochain: nonzero value at identity tuple");
            return;
        }
    table_[index_of(tuple)] = std::move(v);
}

bool Cochain::is_zero() const {
    for (const auto& v : table_)
        if (!all_zero(v)) return false;
    return true;
}

Cochain Cochain::operator+(const Cochain& o) const {
    if (degree_ != o.degree_ || k_ != o.k_ || !(*group_ == *o.group_))
        throw InputError("Cochain: mismatch in +");
    Cochain r = *this;
    for (std::size_t i = 0; i < table_.size(); ++i) r.table_[i] = table_[i] + o.table_[i];
    return r;
}

Cochain Cochain::operator-() const {
    Cochain r = *this;
    for (auto& v : r.table_) v = -v;
    return r;
}

Cochain Cochain::operator-(const Cochain& o) const { return *this + (-o); }

bool Cochain::operator==(const Cochain& o) const {
    if (degree_ != o.degree_ || k_ != o.k_ || !(*group_ == *o.group_)) return false;
    for (std::size_t i = 0; i < table_.size(); ++i)
        for (int c = 0; c < k_; ++c)
            if (table_[i][static_cast<std::size_t>(c)] != o.table_[i][static_cast<std::size_t>(c)])
                return false;
    return true;
}

bool Cochain::lex_less(const Cochain& o) const {
    for (std::size_t i = 0; i < table_.size(); ++i)
        for (int c = 0; c < k_; ++c) {
            const auto& a = table_[i][static_cast<std::size_t>(c)];
            const auto& b = o.table_[i][static_cast<std::size_t>(c)];
            if (a < b) return true;
            if (b < a) return false;
        }
    return false;
}

GroupAction::GroupAction(GroupPtr group, std::vector<BlockPermutation> perms)
    : group_(std::move(group)), perms_(std::move(perms)) {
    if (static_cast<int>(perms_.size()) != group_->order())
        throw InputError("GroupAction: one permutation per group element required");
    k_ = perms_[0].size();
    for (const auto& p : perms_)
        if (p.size() != k_) throw InputError("GroupAction: inconsistent permutation sizes");
    if (!perms_[0].is_identity())
        throw InputError("GroupAction: identity element must act trivially");
    const int n = group_->order();
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h)
            if (perms_[static_cast<std::size_t>(g)].then(perms_[static_cast<std::size_t>(h)]) !=
                perms_[static_cast<std::size_t>(group_->mul(g, h))])
                throw InputError("GroupAction: sigma_{gh} != sigma_g |> sigma_h");
}

GroupAction GroupAction::trivial(GroupPtr group, int k) {
    std::vector<BlockPermutation> perms(static_cast<std::size_t>(group->order()),
                                        BlockPermutation::id(k));
    return GroupAction(std::move(group), std::move(perms));
}

bool GroupAction::is_trivial() const {
    for (const auto& p : perms_)
        if (!p.is_identity()) return false;
    return true;
}

AngleVec GroupAction::apply(int g, const AngleVec& v) const {
    const auto& s = perm(g);
    AngleVec r(v.size());
    for (int i = 0; i < s.size(); ++i) r[static_cast<std::size_t>(i)] = v[static_cast<std::size_t>(s(i))];
    return r;
}

namespace {

// Enumerates the terms of (d f)(out): sign, input tuple, and whether
// the term is hit by S(out[0]) (only the leading term is).
template <typename F>
void for_each_differential_term(const FiniteGroup& g, const std::vector<int>& out, F&& fn) {
    const int p = static_cast<int>(out.size()) - 1;  // degree of the input cochain

    std::vector<int> lead(out.begin() + 1, out.end());
    fn(+1, lead, true);

    int sign = +1;
    for (int j = 1; j <= p; ++j) {
        sign = -sign;
        std::vector<int> t;
        t.reserve(static_cast<std::size_t>(p));
        for (int i = 0; i <= p; ++i) {
            if (i == j - 1) {
                t.push_back(g.mul(out[static_cast<std::size_t>(j - 1)], out[static_cast<std::size_t>(j)]));
                ++i;  // consume index j as well
            } else {
                t.push_back(out[static_cast<std::size_t>(i)]);
            }
        }
        fn(sign, t, false);
    }

    sign = -sign;
    std::vector<int> tail(out.begin(), out.end() - 1);
    fn(sign, tail, false);
}

} // namespace

Cochain differential(const Cochain& f, const GroupAction& action) {
    if (!(*f.group() == *action.group()) || f.k() != action.k())
        throw InputError("differential: cochain and action mismatch");
    const auto& g = *f.group();
    Cochain df(f.group(), f.k(), f.degree() + 1);
    for (std::size_t idx = 0; idx < df.tuples(); ++idx) {
        const auto out = df.tuple_at(idx);
        AngleVec acc(static_cast<std::size_t>(f.k()));
        for_each_differential_term(g, out, [&](int sign, const std::vector<int>& t, bool permuted) {
            AngleVec v = f.value(t);
            if (permuted) v = action.apply(out[0], v);
            acc = (sign > 0) ? acc + v : acc - v;
        });
        df.entry(idx) = std::move(acc);
    }
    return df;
}

bool is_cocycle(const Cochain& f, const GroupAction& action) {
    return differential(f, action).is_zero();
}

IntMatrix differential_matrix(const GroupAction& action, int target_degree) {
    const auto& g = *action.group();
    const auto n1 = static_cast<std::size_t>(g.order() - 1);
    const auto k = static_cast<std::size_t>(action.k());
    const std::size_t rows = pow_size(n1, target_degree) * k;
    const std::size_t cols = pow_size(n1, target_degree - 1) * k;
    IntMatrix a(rows, cols);
    if (rows == 0 || cols == 0) return a;

    Cochain out_shape(action.group(), action.k(), target_degree);
    Cochain in_shape(action.group(), action.k(), target_degree - 1);
    for (std::size_t idx = 0; idx < out_shape.tuples(); ++idx) {
        const auto out = out_shape.tuple_at(idx);
        for_each_differential_term(g, out, [&](int sign, const std::vector<int>& t, bool permuted) {
            for (int x : t)
                if (x == FiniteGroup::identity) return;
            const std::size_t col_base = in_shape.index_of(t) * k;
            const std::size_t row_base = idx * k;
            for (std::size_t c = 0; c < k; ++c) {
                const std::size_t in_comp =
                    permuted ? static_cast<std::size_t>(action.perm(out[0])(static_cast<int>(c))) : c;
                a.at(row_base + c, col_base + in_comp) =
                    checked_add(a.at(row_base + c, col_base + in_comp), sign);
            }
        });
    }
    return a;
}

std::optional<Cochain> coboundary_solve(const Cochain& omega, const GroupAction& action) {
    if (!is_cocycle(omega, action)) throw InputError("coboundary_solve: input is not a cocycle");
    const int p = omega.degree();
    if (p < 2) throw InputError("coboundary_solve: degree must be >= 2");
    const auto k = static_cast<std::size_t>(omega.k());

    const IntMatrix a = differential_matrix(action, p);
    const std::size_t rows = a.rows(), cols = a.cols();

    Cochain eta(omega.group(), omega.k(), p - 1);
    if (rows == 0) return eta;

    // angle vector of omega in coordinate order
    std::vector<Angle> b(rows);
    for (std::size_t i = 0; i < omega.tuples(); ++i)
        for (std::size_t c = 0; c < k; ++c) b[i * k + c] = omega.entry(i)[c];

    const SNFDecomposition snf = smith_normal_form(a);

    // c = U b
    std::vector<Angle> cvec(rows);
    for (std::size_t i = 0; i < rows; ++i) {
        Angle acc;
        for (std::size_t j = 0; j < rows; ++j) {
            const std::int64_t f = snf.u.at(i, j);
            if (f != 0) acc = acc + b[j].times(f);
        }
        cvec[i] = acc;
    }

    const std::size_t nmin = std::min(rows, cols);
    std::vector<Angle> y(cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const std::int64_t di = (i < nmin) ? snf.d.at(i, i) : 0;
        if (di == 0) {
            if (!cvec[i].is_zero()) return std::nullopt;
        } else {
            y[i] = cvec[i].divided_by(di);
        }
    }

    // x = V y
    std::vector<Angle> x(cols);
    for (std::size_t i = 0; i < cols; ++i) {
        Angle acc;
        for (std::size_t j = 0; j < cols; ++j) {
            const std::int64_t f = snf.v.at(i, j);
            if (f != 0 && !y[j].is_zero()) acc = acc + y[j].times(f);
        }
        x[i] = acc;
    }

    for (std::size_t i = 0; i < eta.tuples(); ++i) {
        AngleVec v(k);
        for (std::size_t c = 0; c < k; ++c) v[c] = x[i * k + c];
        eta.entry(i) = std::move(v);
    }

    if (!(differential(eta, action) == omega))
        throw std::logic_error("coboundary_solve: SNF solution failed verification");
    return eta;
}

namespace {

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

void check_enumeration_cap(double count) {
    if (count > static_cast<double>(kEnumerationCap))
        throw CapacityError("enumeration exceeds the 10^7 candidate cap");
}

} // namespace

std::vector<Cochain> cohomology_classes(const GroupPtr& group, const GroupAction& action,
                                        int degree, std::int64_t m) {
    if (m < 1) throw InputError("cohomology_classes: modulus must be positive");
    if (!(*group == *action.group())) throw InputError("cohomology_classes: group mismatch");
    const auto k = static_cast<std::size_t>(action.k());
    const auto n1 = static_cast<std::size_t>(group->order() - 1);
    const std::size_t ncoords = pow_size(n1, degree) * k;

    if (ncoords == 0) return {Cochain(group, action.k(), degree)};
    if (pow_size(n1, degree + 1) * k * ncoords > 50'000'000)
        throw CapacityError("cohomology_classes: differential matrix too large at desk scale");

    // Cocycle lattice L_Z = { x : A_out x = 0 mod m } = V diag(t_i) Z^n,
    // with t_i = m / gcd(d_i, m).
    const IntMatrix a_out = differential_matrix(action, degree + 1);
    const SNFDecomposition snf_out = smith_normal_form(a_out);
    const std::size_t nmin_out = std::min(a_out.rows(), a_out.cols());
    IntMatrix gz = snf_out.v;  // ncoords x ncoords
    for (std::size_t i = 0; i < ncoords; ++i) {
        const std::int64_t di = (i < nmin_out) ? snf_out.d.at(i, i) : 0;
        const std::int64_t t = m / gcd64(di, m);  // gcd(0, m) = m
        for (std::size_t r = 0; r < ncoords; ++r) gz.at(r, i) = checked_mul(gz.at(r, i), t);
    }

    // Coboundary lattice L_B = Sat(A_in) + m Z^n, where Sat is the set of
    // integer vectors in the rational column space of A_in: the first
    // rank(A_in) columns of U^{-1}.
    const IntMatrix a_in = differential_matrix(action, degree);
    const SNFDecomposition snf_in = smith_normal_form(a_in);
    std::size_t rank_in = 0;
    {
        const auto diag = snf_in.diagonal();
        for (const auto d : diag)
            if (d != 0) ++rank_in;
    }
    IntMatrix gb(ncoords, rank_in + ncoords);
    for (std::size_t i = 0; i < ncoords; ++i) {
        for (std::size_t j = 0; j < rank_in; ++j) gb.at(i, j) = snf_in.u_inv.at(i, j);
        gb.at(i, rank_in + i) = m;
    }

    // W = G_Z^{-1} G_B (integral because L_B is contained in L_Z)
    const IntMatrix m_vinv_gb = snf_out.v_inv * gb;
    IntMatrix w(ncoords, gb.cols());
    for (std::size_t i = 0; i < ncoords; ++i) {
        const std::int64_t di = (i < nmin_out) ? snf_out.d.at(i, i) : 0;
        const std::int64_t t = m / gcd64(di, m);
        for (std::size_t j = 0; j < gb.cols(); ++j) {
            if (m_vinv_gb.at(i, j) % t != 0)
                throw std::logic_error("cohomology_classes: coboundary lattice not inside cocycles");
            w.at(i, j) = m_vinv_gb.at(i, j) / t;
        }
    }

    const SNFDecomposition snf_w = smith_normal_form(w);
    std::vector<std::int64_t> e(ncoords);
    std::int64_t count = 1;
    for (std::size_t i = 0; i < ncoords; ++i) {
        e[i] = snf_w.d.at(i, i);
        if (e[i] <= 0) throw std::logic_error("cohomology_classes: quotient is not finite");
        count = checked_mul(count, e[i]);
        if (count > 4096) throw CapacityError("cohomology_classes: more than 4096 classes");
    }

    const IntMatrix hnf = column_hermite_lower(gb);

    std::vector<Cochain> reps;
    std::vector<std::int64_t> rho(ncoords, 0);
    for (std::int64_t c = 0; c < count; ++c) {
        // x = G_Z * (U_W^{-1} rho)
        std::vector<std::int64_t> y(ncoords, 0);
        for (std::size_t i = 0; i < ncoords; ++i) {
            std::int64_t acc = 0;
            for (std::size_t j = 0; j < ncoords; ++j)
                acc = checked_add(acc, checked_mul(snf_w.u_inv.at(i, j), rho[j]));
            y[i] = acc;
        }
        std::vector<std::int64_t> x(ncoords, 0);
        for (std::size_t i = 0; i < ncoords; ++i) {
            std::int64_t acc = 0;
            for (std::size_t j = 0; j < ncoords; ++j)
                acc = checked_add(acc, checked_mul(gz.at(i, j), y[j]));
            x[i] = acc;
        }
        x = hermite_reduce(hnf, std::move(x));

        Cochain rep(group, action.k(), degree);
        for (std::size_t t = 0; t < rep.tuples(); ++t) {
            AngleVec v(k);
            for (std::size_t cc = 0; cc < k; ++cc) v[cc] = Angle::of(x[t * k + cc], m);
            rep.entry(t) = std::move(v);
        }
        reps.push_back(std::move(rep));

        // next mixed-radix rho
        for (std::size_t i = ncoords; i-- > 0;) {
            if (++rho[i] < e[i]) break;
            rho[i] = 0;
        }
    }

    std::sort(reps.begin(), reps.end(), [](const Cochain& a, const Cochain& b) { return a.lex_less(b); });
    reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
    if (static_cast<std::int64_t>(reps.size()) != count)
        throw std::logic_error("cohomology_classes: representatives collided");

    for (const auto& r : reps)
        if (!is_cocycle(r, action)) throw std::logic_error("cohomology_classes: non-cocycle representative");
    // belt and braces at desk scale: the solver confirms that distinct
    // representatives are not cohomologous
    if (reps.size() <= 16)
        for (std::size_t i = 0; i < reps.size(); ++i)
            for (std::size_t j = i + 1; j < reps.size(); ++j)
                if (coboundary_solve(reps[j] - reps[i], action).has_value())
                    throw std::logic_error("cohomology_classes: cohomologous representatives");
    return reps;
}

std::vector<Cochain> brute_force_classes(const GroupPtr& group, const GroupAction& action,
                                         int degree, std::int64_t m) {
    if (m < 1) throw InputError("brute_force_classes: modulus must be positive");
    if (degree < 2) throw InputError("brute_force_classes: degree must be >= 2");
    const int n = group->order();
    const auto k = static_cast<std::size_t>(action.k());
    const auto n1 = static_cast<std::size_t>(n - 1);
    const std::size_t ncoords = pow_size(n1, degree) * k;
    const std::size_t bcoords = pow_size(n1, degree - 1) * k;

    check_enumeration_cap(std::pow(static_cast<double>(m), static_cast<double>(ncoords)));

    // Precompiled differential on digit tables: for each output
    // coordinate, the list of (sign, input coordinate) contributions.
    struct DigitTerm {
        int sign;
        std::size_t in_coord;
    };
    const auto compile = [&](int q) {
        Cochain out_shape(group, action.k(), q + 1);
        Cochain in_shape(group, action.k(), q);
        std::vector<std::vector<DigitTerm>> terms(out_shape.tuples() * k);
        for (std::size_t idx = 0; idx < out_shape.tuples(); ++idx) {
            const auto out = out_shape.tuple_at(idx);
            for_each_differential_term(*group, out,
                                       [&](int sign, const std::vector<int>& t, bool permuted) {
                for (int x : t)
                    if (x == FiniteGroup::identity) return;
                const std::size_t base = in_shape.index_of(t) * k;
                for (std::size_t c = 0; c < k; ++c) {
                    const std::size_t comp =
                        permuted ? static_cast<std::size_t>(action.perm(out[0])(static_cast<int>(c))) : c;
                    terms[idx * k + c].push_back({sign, base + comp});
                }
            });
        }
        return terms;
    };

    // A degree-q table with values j/M is a cocycle iff every output
    // coordinate sums to 0 mod M.
    const auto eval_ok = [&](const std::vector<std::vector<DigitTerm>>& terms,
                             const std::vector<std::int32_t>& digits, std::int64_t M,
                             std::vector<std::int32_t>* out_digits) -> bool {
        bool zero = true;
        if (out_digits) out_digits->assign(terms.size(), 0);
        for (std::size_t oc = 0; oc < terms.size(); ++oc) {
            std::int64_t acc = 0;
            for (const auto& t : terms[oc]) acc += t.sign > 0 ? digits[t.in_coord] : -digits[t.in_coord];
            const std::int64_t r = ((acc % M) + M) % M;
            if (out_digits)
                (*out_digits)[oc] = static_cast<std::int32_t>(r);
            else if (r != 0)
                return false;
            if (r != 0) zero = false;
        }
        return zero;
    };

    const auto terms_p = compile(degree);
    const auto terms_b = compile(degree - 1);

    const auto advance = [](std::vector<std::int32_t>& digits, std::int64_t base) -> bool {
        for (std::size_t i = digits.size(); i-- > 0;) {
            if (++digits[i] < base) return true;
            digits[i] = 0;
        }
        return false;
    };

    // All mu_m-valued cocycles, ascending lexicographic order.
    std::vector<std::vector<std::int32_t>> cocycles;
    {
        std::vector<std::int32_t> digits(ncoords, 0);
        do {
            if (eval_ok(terms_p, digits, m, nullptr)) cocycles.push_back(digits);
        } while (advance(digits, m));
    }

    // Coboundaries of mu_{n*m}-valued (degree-1)-cochains that happen to
    // be mu_m-valued; for the trivial action these exhaust all T-valued
    // coboundaries with mu_m values (averaging bound M = |G|*m).
    const std::int64_t M = static_cast<std::int64_t>(n) * m;
    check_enumeration_cap(std::pow(static_cast<double>(M), static_cast<double>(bcoords)));
    std::set<std::vector<std::int32_t>> coboundaries;
    {
        std::vector<std::int32_t> digits(bcoords, 0);
        std::vector<std::int32_t> d_out;
        do {
            eval_ok(terms_b, digits, M, &d_out);
            bool mu_m = true;
            for (const auto v : d_out)
                if (v % n != 0) { mu_m = false; break; }
            if (mu_m) {
                std::vector<std::int32_t> reduced(d_out.size());
                for (std::size_t i = 0; i < d_out.size(); ++i) reduced[i] = d_out[i] / n;
                coboundaries.insert(std::move(reduced));
            }
        } while (advance(digits, M));
    }

    std::set<std::vector<std::int32_t>> visited;
    std::vector<Cochain> reps;
    for (const auto& z : cocycles) {
        if (visited.count(z)) continue;
        for (const auto& b : coboundaries) {
            std::vector<std::int32_t> w(z.size());
            for (std::size_t i = 0; i < z.size(); ++i)
                w[i] = static_cast<std::int32_t>((z[i] + b[i]) % m);
            visited.insert(std::move(w));
        }
        Cochain rep(group, action.k(), degree);
        for (std::size_t t = 0; t < rep.tuples(); ++t) {
            AngleVec v(k);
            for (std::size_t c = 0; c < k; ++c) v[c] = Angle::of(z[t * k + c], m);
            rep.entry(t) = std::move(v);
        }
        reps.push_back(std::move(rep));
    }
    return reps;
}

} // namespace fell
