#include <doctest.h>

#include <cstdlib>

#include "fell/rng.hpp"
#include "fell/snf.hpp"

using namespace fell;

namespace {

IntMatrix from_rows(const std::vector<std::vector<std::int64_t>>& rows) {
    IntMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) m.at(i, j) = rows[i][j];
    return m;
}

// fraction-free determinant (Bareiss), good enough as an oracle for the
// unimodularity of U and V on small matrices
__int128 bareiss_det(IntMatrix a) {
    const std::size_t n = a.rows();
    std::vector<std::vector<__int128>> m(n, std::vector<__int128>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m[i][j] = a.at(i, j);
    __int128 prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && m[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(m[k], m[p]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

void check_snf_contract(const IntMatrix& a) {
    const auto snf = smith_normal_form(a);
    CHECK(snf.u * a * snf.v == snf.d);
    CHECK(snf.u * snf.u_inv == IntMatrix::identity(a.rows()));
    CHECK(snf.v * snf.v_inv == IntMatrix::identity(a.cols()));
    const auto det_u = bareiss_det(snf.u);
    const auto det_v = bareiss_det(snf.v);
    CHECK((det_u == 1 || det_u == -1));
    CHECK((det_v == 1 || det_v == -1));
    const auto diag = snf.diagonal();
    for (std::size_t i = 0; i < diag.size(); ++i) {
        CHECK(diag[i] >= 0);
        if (i + 1 < diag.size() && diag[i] != 0) {
            if (diag[i + 1] != 0) CHECK(diag[i + 1] % diag[i] == 0);
        }
        if (diag[i] == 0 && i + 1 < diag.size()) CHECK(diag[i + 1] == 0);
    }
    // off-diagonal entries vanish
    for (std::size_t i = 0; i < snf.d.rows(); ++i)
        for (std::size_t j = 0; j < snf.d.cols(); ++j)
            if (i != j) CHECK(snf.d.at(i, j) == 0);
}

} // namespace

TEST_CASE("smith normal form of known matrices") {
    // diag(2,3) has invariant factors 1, 6
    const auto a = from_rows({{2, 0}, {0, 3}});
    const auto snf = smith_normal_form(a);
    CHECK(snf.diagonal() == std::vector<std::int64_t>{1, 6});
    check_snf_contract(a);

    const auto zero = IntMatrix(3, 2);
    const auto z = smith_normal_form(zero);
    CHECK(z.diagonal() == std::vector<std::int64_t>{0, 0});
    check_snf_contract(zero);

    const auto one = from_rows({{2}});
    CHECK(smith_normal_form(one).diagonal() == std::vector<std::int64_t>{2});
}

TEST_CASE("smith normal form on random small matrices") {
    Rng rng(101);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t rows = 1 + rng.next_below(5);
        const std::size_t cols = 1 + rng.next_below(5);
        IntMatrix a(rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) a.at(i, j) = rng.next_int(-6, 6);
        check_snf_contract(a);
    }
}

TEST_CASE("hermite reduction picks the lexicographically smallest coset member") {
    // lattice spanned by (2,1) and (0,3) in Z^2, plus a redundant generator
    const auto gens = from_rows({{2, 0, 2}, {1, 3, 4}});
    const auto h = column_hermite_lower(gens);
    CHECK(h.at(0, 0) > 0);
    CHECK(h.at(1, 1) > 0);
    CHECK(h.at(0, 1) == 0);

    // brute-force oracle: minimum of x + L over a window, lexicographically
    const auto reduce_oracle = [&](std::vector<std::int64_t> x) {
        std::vector<std::int64_t> best = {1 << 20, 1 << 20};
        for (int a = -12; a <= 12; ++a)
            for (int b = -12; b <= 12; ++b) {
                std::vector<std::int64_t> y = {x[0] + 2 * a, x[1] + a + 3 * b};
                if (y[0] < 0 || y[1] < 0) continue;
                if (y[0] > 6 || y[1] > 6) continue;
                if (y < best) best = y;
            }
        return best;
    };
    Rng rng(7);
    for (int t = 0; t < 30; ++t) {
        std::vector<std::int64_t> x = {rng.next_int(-5, 5), rng.next_int(-5, 5)};
        const auto got = hermite_reduce(h, x);
        CHECK(got == reduce_oracle(x));
    }
}
