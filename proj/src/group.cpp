#include "fell/group.hpp"

namespace fell {

namespace {

void check_table_shape(const std::vector<std::vector<int>>& table) {
    const std::size_t n = table.size();
    if (n == 0) throw InputError("group: empty Cayley table");
    for (const auto& row : table) {
        if (row.size() != n) throw InputError("group: Cayley table is not square");
        for (int v : row)
            if (v < 0 || static_cast<std::size_t>(v) >= n)
                throw InputError("group: Cayley table entry out of range");
    }
}

int find_identity(const std::vector<std::vector<int>>& table) {
    const int n = static_cast<int>(table.size());
    for (int e = 0; e < n; ++e) {
        bool ok = true;
        for (int a = 0; a < n && ok; ++a)
            ok = table[e][a] == a && table[a][e] == a;
        if (ok) return e;
    }
    return -1;
}

} // namespace

FiniteGroup::FiniteGroup(std::vector<std::vector<int>> table) {
    check_table_shape(table);
    const int n = static_cast<int>(table.size());
    const int e = find_identity(table);
    if (e < 0) throw InputError("group: table has no identity element");

    if (e != 0) {
        // relabel by the transposition swapping e and 0
        std::vector<int> relabel(n);
        for (int i = 0; i < n; ++i) relabel[i] = i;
        relabel[e] = 0;
        relabel[0] = e;
        std::vector<std::vector<int>> fixed(n, std::vector<int>(n));
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                fixed[relabel[a]][relabel[b]] = relabel[table[a][b]];
        table = std::move(fixed);
    }

    if (!validate_group(table)) throw InputError("group: Cayley table is not a group");

    order_ = n;
    cayley_ = std::move(table);
    inverse_.assign(n, -1);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (cayley_[a][b] == 0) inverse_[a] = b;
}

GroupPtr make_cyclic(int n) {
    if (n < 1) throw InputError("make_cyclic: order must be positive");
    std::vector<std::vector<int>> table(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) table[a][b] = (a + b) % n;
    return std::make_shared<FiniteGroup>(std::move(table));
}

GroupPtr direct_product(const FiniteGroup& a, const FiniteGroup& b) {
    const int na = a.order(), nb = b.order();
    const int n = na * nb;
    std::vector<std::vector<int>> table(n, std::vector<int>(n));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            const int xa = x / nb, xb = x % nb;
            const int ya = y / nb, yb = y % nb;
            table[x][y] = a.mul(xa, ya) * nb + b.mul(xb, yb);
        }
    return std::make_shared<FiniteGroup>(std::move(table));
}

bool validate_group(const std::vector<std::vector<int>>& table) {
    check_table_shape(table);
    const int n = static_cast<int>(table.size());

    for (int a = 0; a < n; ++a)
        if (table[0][a] != a || table[a][0] != a) return false;

    for (int a = 0; a < n; ++a) {
        bool has_inverse = false;
        for (int b = 0; b < n; ++b)
            if (table[a][b] == 0 && table[b][a] == 0) has_inverse = true;
        if (!has_inverse) return false;
    }

    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (table[table[a][b]][c] != table[a][table[b][c]]) return false;

    return true;
}

FreeAbelianGroup::FreeAbelianGroup(int rank) : rank_(rank) {
    if (rank < 1) throw InputError("FreeAbelianGroup: rank must be positive");
}

FreeAbelianGroup::Elt FreeAbelianGroup::mul(const Elt& a, const Elt& b) const {
    if (static_cast<int>(a.size()) != rank_ || static_cast<int>(b.size()) != rank_)
        throw InputError("FreeAbelianGroup: element length does not match rank");
    Elt r(rank_);
    for (int i = 0; i < rank_; ++i) r[i] = a[i] + b[i];
    return r;
}

FreeAbelianGroup::Elt FreeAbelianGroup::inv(const Elt& a) const {
    if (static_cast<int>(a.size()) != rank_)
        throw InputError("FreeAbelianGroup: element length does not match rank");
    Elt r(rank_);
    for (int i = 0; i < rank_; ++i) r[i] = -a[i];
    return r;
}

} // namespace fell
