#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ucyc/rational.hpp"
#include "ucyc/sparse_matrix.hpp"

namespace ucyc {

struct SmithNormalForm {
    std::vector<Int> invariant_factors;  // positive, each divides the next
    IntegerMatrix U;                     // rows x rows, det +-1
    IntegerMatrix V;                     // cols x cols, det +-1
    IntegerMatrix D;                     // U * M * V, diagonal
};

/// Smith normal form by gcd-reduction with smallest-pivot selection.
/// Dense internally; inputs here are desk scale (Cech complexes, class
/// comparisons), not the tensor-power complexes.
inline SmithNormalForm smith_normal_form(const IntegerMatrix& m) {
    const std::size_t R = m.rows(), C = m.cols();
    std::vector<std::vector<Int>> a(R, std::vector<Int>(C, 0));
    for (std::size_t r = 0; r < R; ++r)
        for (const auto& [c, v] : m.row(r)) a[r][c] = v;
    std::vector<std::vector<Int>> u(R, std::vector<Int>(R, 0)), v(C, std::vector<Int>(C, 0));
    for (std::size_t i = 0; i < R; ++i) u[i][i] = 1;
    for (std::size_t j = 0; j < C; ++j) v[j][j] = 1;

    auto swap_rows = [&](std::size_t i, std::size_t j) {
        std::swap(a[i], a[j]);
        std::swap(u[i], u[j]);
    };
    auto swap_cols = [&](std::size_t i, std::size_t j) {
        for (auto& row : a) std::swap(row[i], row[j]);
        for (auto& row : v) std::swap(row[i], row[j]);
    };
    auto row_axpy = [&](std::size_t dst, std::size_t src, const Int& q) {
        // row_dst -= q * row_src
        for (std::size_t c = 0; c < C; ++c) a[dst][c] -= q * a[src][c];
        for (std::size_t c = 0; c < R; ++c) u[dst][c] -= q * u[src][c];
    };
    auto col_axpy = [&](std::size_t dst, std::size_t src, const Int& q) {
        for (std::size_t r = 0; r < R; ++r) a[r][dst] -= q * a[r][src];
        for (std::size_t r = 0; r < C; ++r) v[r][dst] -= q * v[r][src];
    };

    std::size_t t = 0;
    const std::size_t tmax = std::min(R, C);
    while (t < tmax) {
        // Smallest nonzero |entry| in the trailing submatrix, (row, col) lex ties.
        std::optional<std::pair<std::size_t, std::size_t>> piv;
        for (std::size_t i = t; i < R; ++i)
            for (std::size_t j = t; j < C; ++j) {
                if (a[i][j] == 0) continue;
                if (!piv || cmp(abs(a[i][j]), abs(a[piv->first][piv->second])) < 0) piv = {{i, j}};
            }
        if (!piv) break;
        swap_rows(t, piv->first);
        swap_cols(t, piv->second);

        bool dirty = true;
        while (dirty) {
            dirty = false;
            // Clear column t.
            for (std::size_t i = t + 1; i < R; ++i) {
                if (a[i][t] == 0) continue;
                Int q = a[i][t] / a[t][t];  // truncated division
                if (q != 0) row_axpy(i, t, q);
                if (a[i][t] != 0) {
                    swap_rows(t, i);  // strictly smaller remainder becomes the pivot
                    dirty = true;
                }
            }
            if (dirty) continue;
            // Clear row t.
            for (std::size_t j = t + 1; j < C; ++j) {
                if (a[t][j] == 0) continue;
                Int q = a[t][j] / a[t][t];
                if (q != 0) col_axpy(j, t, q);
                if (a[t][j] != 0) {
                    swap_cols(t, j);
                    dirty = true;
                }
            }
            if (dirty) continue;
            // Divisibility: pivot must divide every remaining entry.
            for (std::size_t i = t + 1; i < R && !dirty; ++i)
                for (std::size_t j = t + 1; j < C && !dirty; ++j)
                    if (a[i][j] % a[t][t] != 0) {
                        row_axpy(t, i, Int(-1));  // row_t += row_i
                        dirty = true;
                    }
        }
        if (sgn(a[t][t]) < 0) {
            for (std::size_t c = 0; c < C; ++c) a[t][c] = -a[t][c];
            for (std::size_t c = 0; c < R; ++c) u[t][c] = -u[t][c];
        }
        ++t;
    }

    SmithNormalForm out;
    for (std::size_t i = 0; i < tmax; ++i)
        if (a[i][i] != 0) out.invariant_factors.push_back(a[i][i]);
    {
        std::vector<std::tuple<std::size_t, std::size_t, Int>> ts;
        for (std::size_t i = 0; i < R; ++i)
            for (std::size_t j = 0; j < R; ++j)
                if (u[i][j] != 0) ts.push_back({i, j, u[i][j]});
        out.U = IntegerMatrix::from_triplets(R, R, std::move(ts));
    }
    {
        std::vector<std::tuple<std::size_t, std::size_t, Int>> ts;
        for (std::size_t i = 0; i < C; ++i)
            for (std::size_t j = 0; j < C; ++j)
                if (v[i][j] != 0) ts.push_back({i, j, v[i][j]});
        out.V = IntegerMatrix::from_triplets(C, C, std::move(ts));
    }
    {
        std::vector<std::tuple<std::size_t, std::size_t, Int>> ts;
        for (std::size_t i = 0; i < out.invariant_factors.size(); ++i)
            ts.push_back({i, i, out.invariant_factors[i]});
        out.D = IntegerMatrix::from_triplets(R, C, std::move(ts));
    }
    return out;
}

/// Exact integral solve M x = b using a precomputed SNF; nullopt when no
/// integer solution exists.
inline std::optional<std::vector<Int>> solve_integer(const SmithNormalForm& s,
                                                     const std::vector<Int>& b) {
    const std::size_t R = s.U.rows(), C = s.V.rows();
    if (b.size() != R) throw domain_error("solve_integer: dimension mismatch");
    std::vector<Int> ub(R, 0);
    for (std::size_t r = 0; r < R; ++r)
        for (const auto& [c, val] : s.U.row(r)) ub[r] += val * b[c];
    std::vector<Int> y(C, 0);
    const std::size_t k = s.invariant_factors.size();
    for (std::size_t i = 0; i < R; ++i) {
        if (i < k) {
            if (ub[i] % s.invariant_factors[i] != 0) return std::nullopt;
            if (i < C) y[i] = ub[i] / s.invariant_factors[i];
        } else if (ub[i] != 0) {
            return std::nullopt;
        }
    }
    std::vector<Int> x(C, 0);
    for (std::size_t r = 0; r < C; ++r)
        for (const auto& [c, val] : s.V.row(r)) x[r] += val * y[c];
    return x;
}

}  // namespace ucyc
