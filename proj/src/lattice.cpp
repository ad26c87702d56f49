#include "conecheck/lattice.hpp"

#include <cstdlib>
#include <numeric>
#include <stdexcept>

namespace conecheck {

namespace {

void sub_scaled(Vec& a, const Vec& b, i64 q) {
    for (std::size_t c = 0; c < a.size(); ++c) a[c] = checked_sub(a[c], checked_mul(q, b[c]));
}

bool is_zero(const Vec& v) {
    for (i64 x : v)
        if (x != 0) return false;
    return true;
}

i64 lcm_checked(i64 a, i64 b) {
    i64 g = std::gcd(a, b);
    return checked_mul(a / g, b);
}

}  // namespace

ZLattice::ZLattice(std::vector<Vec> gens, std::size_t dim) : dim_(dim) {
    for (const Vec& g : gens)
        if (g.size() != dim) throw std::invalid_argument("lattice generator has wrong dimension");

    // Integer row echelon: for each column, gcd-reduce all rows with a nonzero
    // entry there until one survives, then freeze it as a pivot row.
    std::vector<Vec> rows = std::move(gens);
    std::size_t top = 0;
    for (std::size_t col = 0; col < dim && top < rows.size(); ++col) {
        for (;;) {
            std::size_t best = rows.size();
            for (std::size_t r = top; r < rows.size(); ++r) {
                if (rows[r][col] == 0) continue;
                if (best == rows.size() || std::llabs(rows[r][col]) < std::llabs(rows[best][col]))
                    best = r;
            }
            if (best == rows.size()) break;  // column is clear below `top`
            std::swap(rows[top], rows[best]);
            bool clean = true;
            for (std::size_t r = top + 1; r < rows.size(); ++r) {
                if (rows[r][col] == 0) continue;
                sub_scaled(rows[r], rows[top], rows[r][col] / rows[top][col]);
                if (rows[r][col] != 0) clean = false;  // remainder survives, keep reducing
            }
            if (clean) {
                if (rows[top][col] < 0)
                    for (i64& x : rows[top]) x = checked_sub(0, x);
                basis_.push_back(rows[top]);
                pivot_col_.push_back(col);
                ++top;
                break;
            }
        }
    }
}

bool ZLattice::contains(Vec v) const {
    if (v.size() != dim_) throw std::invalid_argument("vector has wrong dimension");
    std::size_t next = 0;
    for (std::size_t b = 0; b < basis_.size(); ++b) {
        std::size_t col = pivot_col_[b];
        while (next < col) {
            if (v[next] != 0) return false;  // nonzero in a pivot-free column
            ++next;
        }
        i64 p = basis_[b][col];
        if (v[col] % p != 0) return false;
        sub_scaled(v, basis_[b], v[col] / p);
        ++next;
    }
    return is_zero(v);
}

std::optional<i64> ZLattice::order_in_quotient(Vec v) const {
    if (v.size() != dim_) throw std::invalid_argument("vector has wrong dimension");

    // Smith normal form U*A*V = diag(s_1..s_r) of the matrix A whose columns
    // are the generators. Column ops (right factor V) do not change the column
    // span, so m*v lies in the lattice iff m*(U*v) lies in the span of the
    // diagonal columns: s_i | m*(Uv)_i on the diagonal, (Uv)_i = 0 below it.
    // Only U's action on v needs tracking, as w := U*v.
    std::size_t k = basis_.size();
    std::vector<Vec> a(dim_, Vec(k, 0));  // a[row][col]
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < dim_; ++i) a[i][j] = basis_[j][i];

    Vec w = v;
    std::vector<i64> diag;
    std::size_t t = 0;
    for (; t < dim_ && t < k; ++t) {
        bool block_zero = false;
        for (;;) {
            std::size_t bi = dim_, bj = k;
            for (std::size_t i = t; i < dim_; ++i)
                for (std::size_t j = t; j < k; ++j) {
                    if (a[i][j] == 0) continue;
                    if (bi == dim_ || std::llabs(a[i][j]) < std::llabs(a[bi][bj])) { bi = i; bj = j; }
                }
            if (bi == dim_) { block_zero = true; break; }
            std::swap(a[t], a[bi]);
            std::swap(w[t], w[bi]);
            for (std::size_t i = 0; i < dim_; ++i) std::swap(a[i][t], a[i][bj]);

            bool clean = true;
            for (std::size_t i = t + 1; i < dim_; ++i) {
                if (a[i][t] == 0) continue;
                i64 q = a[i][t] / a[t][t];
                for (std::size_t j = t; j < k; ++j) a[i][j] = checked_sub(a[i][j], checked_mul(q, a[t][j]));
                w[i] = checked_sub(w[i], checked_mul(q, w[t]));
                if (a[i][t] != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < k; ++j) {
                if (a[t][j] == 0) continue;
                i64 q = a[t][j] / a[t][t];
                for (std::size_t i = t; i < dim_; ++i) a[i][j] = checked_sub(a[i][j], checked_mul(q, a[i][t]));
                if (a[t][j] != 0) clean = false;
            }
            if (clean) break;
        }
        if (block_zero) break;
        if (a[t][t] < 0) {
            for (std::size_t j = t; j < k; ++j) a[t][j] = checked_sub(0, a[t][j]);
            w[t] = checked_sub(0, w[t]);
        }
        diag.push_back(a[t][t]);
    }

    i64 order = 1;
    for (std::size_t i = 0; i < dim_; ++i) {
        if (i < diag.size()) {
            order = lcm_checked(order, diag[i] / std::gcd(diag[i], w[i]));
        } else if (w[i] != 0) {
            return std::nullopt;  // v has a component outside the rational span
        }
    }
    return order;
}

}  // namespace conecheck
