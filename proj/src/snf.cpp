#include "fell/snf.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

namespace fell {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw CapacityError("integer overflow in multiply");
    return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw CapacityError("integer overflow in add");
    return r;
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
    if (cols_ != o.rows_) throw InputError("IntMatrix: shape mismatch in *");
    IntMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const std::int64_t aik = at(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j)
                r.at(i, j) = checked_add(r.at(i, j), checked_mul(aik, o.at(k, j)));
        }
    return r;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap(at(a, j), at(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap(at(i, a), at(i, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, std::int64_t f) {
    if (f == 0) return;
    for (std::size_t j = 0; j < cols_; ++j)
        at(dst, j) = checked_add(at(dst, j), checked_mul(f, at(src, j)));
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, std::int64_t f) {
    if (f == 0) return;
    for (std::size_t i = 0; i < rows_; ++i)
        at(i, dst) = checked_add(at(i, dst), checked_mul(f, at(i, src)));
}

void IntMatrix::negate_row(std::size_t r) {
    for (std::size_t j = 0; j < cols_; ++j) at(r, j) = -at(r, j);
}

void IntMatrix::negate_col(std::size_t c) {
    for (std::size_t i = 0; i < rows_; ++i) at(i, c) = -at(i, c);
}

std::vector<std::int64_t> SNFDecomposition::diagonal() const {
    const std::size_t n = std::min(d.rows(), d.cols());
    std::vector<std::int64_t> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = d.at(i, i);
    return out;
}

namespace {

// true when row/column s of `a` is zero outside the pivot (s,s)
bool pivot_is_lone(const IntMatrix& a, std::size_t s) {
    for (std::size_t i = s + 1; i < a.rows(); ++i)
        if (a.at(i, s) != 0) return false;
    for (std::size_t j = s + 1; j < a.cols(); ++j)
        if (a.at(s, j) != 0) return false;
    return true;
}

bool find_min_nonzero(const IntMatrix& a, std::size_t s, std::size_t& ir, std::size_t& ic) {
    std::int64_t best = 0;
    bool found = false;
    for (std::size_t i = s; i < a.rows(); ++i)
        for (std::size_t j = s; j < a.cols(); ++j) {
            const std::int64_t v = std::abs(a.at(i, j));
            if (v != 0 && (!found || v < best)) {
                best = v;
                ir = i;
                ic = j;
                found = true;
            }
        }
    return found;
}

} // namespace

SNFDecomposition smith_normal_form(const IntMatrix& a) {
    const std::size_t rows = a.rows(), cols = a.cols();
    SNFDecomposition out;
    out.u = IntMatrix::identity(rows);
    out.v = IntMatrix::identity(cols);
    out.u_inv = IntMatrix::identity(rows);
    out.v_inv = IntMatrix::identity(cols);
    out.d = a;
    IntMatrix& d = out.d;
    IntMatrix& u = out.u;
    IntMatrix& v = out.v;
    IntMatrix& ui = out.u_inv;
    IntMatrix& vi = out.v_inv;

    const std::size_t nmin = std::min(rows, cols);
    for (std::size_t s = 0; s < nmin; ++s) {
        std::size_t ir = s, ic = s;
        if (!find_min_nonzero(d, s, ir, ic)) break;  // remainder is zero

        while (true) {
            find_min_nonzero(d, s, ir, ic);
            d.swap_rows(s, ir);
            u.swap_rows(s, ir);
            ui.swap_cols(s, ir);
            d.swap_cols(s, ic);
            v.swap_cols(s, ic);
            vi.swap_rows(s, ic);

            // clear column s below the pivot, then row s right of it
            bool reduced = true;
            for (std::size_t i = s + 1; i < rows; ++i) {
                if (d.at(i, s) == 0) continue;
                const std::int64_t q = d.at(i, s) / d.at(s, s);
                d.add_row_multiple(i, s, -q);
                u.add_row_multiple(i, s, -q);
                ui.add_col_multiple(s, i, q);
                if (d.at(i, s) != 0) reduced = false;
            }
            for (std::size_t j = s + 1; j < cols; ++j) {
                if (d.at(s, j) == 0) continue;
                const std::int64_t q = d.at(s, j) / d.at(s, s);
                d.add_col_multiple(j, s, -q);
                v.add_col_multiple(j, s, -q);
                vi.add_row_multiple(s, j, q);
                if (d.at(s, j) != 0) reduced = false;
            }
            if (!reduced) continue;
            if (!pivot_is_lone(d, s)) continue;

            // enforce divisibility: pivot must divide the whole tail
            bool divides = true;
            for (std::size_t i = s + 1; i < rows && divides; ++i)
                for (std::size_t j = s + 1; j < cols && divides; ++j)
                    if (d.at(i, j) % d.at(s, s) != 0) {
                        d.add_row_multiple(s, i, 1);
                        u.add_row_multiple(s, i, 1);
                        ui.add_col_multiple(i, s, -1);
                        divides = false;
                    }
            if (divides) break;
        }

        if (d.at(s, s) < 0) {
            d.negate_row(s);
            u.negate_row(s);
            ui.negate_col(s);
        }
    }
    return out;
}

IntMatrix column_hermite_lower(const IntMatrix& gens) {
    const std::size_t n = gens.rows();
    IntMatrix w = gens;
    if (w.cols() < n) throw InputError("column_hermite_lower: not enough generators");

    for (std::size_t r = 0; r < n; ++r) {
        while (true) {
            // smallest nonzero entry of row r among columns >= r
            std::size_t best_col = w.cols();
            std::int64_t best = 0;
            for (std::size_t c = r; c < w.cols(); ++c) {
                const std::int64_t v = std::abs(w.at(r, c));
                if (v != 0 && (best_col == w.cols() || v < best)) {
                    best = v;
                    best_col = c;
                }
            }
            if (best_col == w.cols())
                throw InputError("column_hermite_lower: generators do not have full row rank");
            w.swap_cols(r, best_col);
            bool clean = true;
            for (std::size_t c = r + 1; c < w.cols(); ++c) {
                if (w.at(r, c) == 0) continue;
                const std::int64_t q = w.at(r, c) / w.at(r, r);
                w.add_col_multiple(c, r, -q);
                if (w.at(r, c) != 0) clean = false;
            }
            if (clean) break;
        }
        if (w.at(r, r) < 0) w.negate_col(r);
    }

    IntMatrix h(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) h.at(i, j) = w.at(i, j);
    return h;
}

std::vector<std::int64_t> hermite_reduce(const IntMatrix& hnf, std::vector<std::int64_t> x) {
    const std::size_t n = hnf.rows();
    if (x.size() != n) throw InputError("hermite_reduce: size mismatch");
    for (std::size_t i = 0; i < n; ++i) {
        const std::int64_t p = hnf.at(i, i);
        // floor division so the residue lands in [0, p)
        std::int64_t q = x[i] / p;
        if (x[i] % p < 0) --q;
        if (q == 0) continue;
        for (std::size_t r = i; r < n; ++r)
            x[r] = checked_add(x[r], -checked_mul(q, hnf.at(r, i)));
    }
    return x;
}

} // namespace fell
