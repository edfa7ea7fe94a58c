#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <numeric>
#include <optional>
#include <vector>

#include "ucyc/rational.hpp"
#include "ucyc/sparse_matrix.hpp"

namespace ucyc {

namespace detail {

/// Fraction-free sparse elimination for rank computation.
///
/// Rows are primitive integer vectors (rank is scale-invariant, so each row of
/// the rational input is cleared of denominators and stripped of content).
/// The update rule row_i <- (p * row_i - v * row_p) / content is the Bareiss
/// family step: exact integer arithmetic, one exact division per row, no
/// rational arithmetic in the inner loop.
///
/// Pivot selection is Markowitz cost (nnz_row - 1) * (nnz_col - 1) with
/// lowest (row, col) lexicographic tie-breaking, which makes runs bit-identical.
class RankEliminator {
public:
    using Row = std::vector<std::pair<std::size_t, Int>>;  // sorted by column

    explicit RankEliminator(const SparseRationalMatrix& m)
        : ncols_(m.cols()), col_count_(m.cols(), 0), col_rows_(m.cols()) {
        rows_.reserve(m.rows());
        for (std::size_t r = 0; r < m.rows(); ++r) {
            const auto& src = m.row(r);
            if (src.empty()) continue;
            Row row;
            row.reserve(src.size());
            Int lcm = 1;
            for (const auto& [c, v] : src) {
                Int den = v.den();
                Int g;
                mpz_gcd(g.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
                lcm = lcm / g * den;
            }
            for (const auto& [c, v] : src) row.push_back({c, v.num() * (lcm / v.den())});
            strip_content(row);
            rows_.push_back(std::move(row));
        }
        alive_.assign(rows_.size(), true);
        for (std::size_t i = 0; i < rows_.size(); ++i) register_row(i);
    }

    std::size_t run() {
        std::size_t rank = 0;
        while (true) {
            auto pivot = choose_pivot();
            if (!pivot) break;
            eliminate(pivot->first, pivot->second);
            ++rank;
        }
        return rank;
    }

private:
    void strip_content(Row& row) {
        if (row.empty()) return;
        Int g = 0;
        for (const auto& [c, v] : row) {
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
            if (g == 1) return;
        }
        for (auto& [c, v] : row) v /= g;
    }

    void register_row(std::size_t i) {
        for (const auto& [c, v] : rows_[i]) {
            ++col_count_[c];
            col_rows_[c].push_back(i);
        }
    }

    bool row_has_col(std::size_t i, std::size_t c) const {
        const auto& row = rows_[i];
        auto it = std::lower_bound(row.begin(), row.end(), c,
                                   [](const auto& e, std::size_t col) { return e.first < col; });
        return it != row.end() && it->first == c;
    }

    /// Exact minimal-Markowitz search: scan columns in increasing count order;
    /// prune once no remaining column can beat the best cost found.
    std::optional<std::pair<std::size_t, std::size_t>> choose_pivot() {
        std::size_t min_row_nnz = std::numeric_limits<std::size_t>::max();
        for (std::size_t i = 0; i < rows_.size(); ++i)
            if (alive_[i] && !rows_[i].empty()) min_row_nnz = std::min(min_row_nnz, rows_[i].size());
        if (min_row_nnz == std::numeric_limits<std::size_t>::max()) return std::nullopt;

        std::vector<std::size_t> cols_by_count;
        for (std::size_t c = 0; c < ncols_; ++c)
            if (col_count_[c] > 0) cols_by_count.push_back(c);
        std::sort(cols_by_count.begin(), cols_by_count.end(), [&](std::size_t a, std::size_t b) {
            if (col_count_[a] != col_count_[b]) return col_count_[a] < col_count_[b];
            return a < b;
        });

        std::size_t best_cost = std::numeric_limits<std::size_t>::max();
        std::size_t best_row = 0, best_col = 0;
        for (std::size_t c : cols_by_count) {
            std::size_t lower = (min_row_nnz - 1) * (col_count_[c] - 1);
            if (lower >= best_cost) break;  // columns are sorted; nothing can improve
            compact_col(c);
            for (std::size_t i : col_rows_[c]) {
                std::size_t cost = (rows_[i].size() - 1) * (col_count_[c] - 1);
                if (cost < best_cost ||
                    (cost == best_cost && (i < best_row || (i == best_row && c < best_col)))) {
                    best_cost = cost;
                    best_row = i;
                    best_col = c;
                }
            }
        }
        if (best_cost == std::numeric_limits<std::size_t>::max()) return std::nullopt;
        return std::make_pair(best_row, best_col);
    }

    /// Drop stale row ids from a column's candidate list.
    void compact_col(std::size_t c) {
        auto& list = col_rows_[c];
        list.erase(std::remove_if(list.begin(), list.end(),
                                  [&](std::size_t i) { return !alive_[i] || !row_has_col(i, c); }),
                   list.end());
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
    }

    Int value_at(std::size_t i, std::size_t c) const {
        const auto& row = rows_[i];
        auto it = std::lower_bound(row.begin(), row.end(), c,
                                   [](const auto& e, std::size_t col) { return e.first < col; });
        return it->second;
    }

    void eliminate(std::size_t prow, std::size_t pcol) {
        const Int p = value_at(prow, pcol);
        compact_col(pcol);
        std::vector<std::size_t> targets;
        for (std::size_t i : col_rows_[pcol])
            if (i != prow) targets.push_back(i);

        for (std::size_t i : targets) {
            const Int v = value_at(i, pcol);
            Row next;
            next.reserve(rows_[i].size() + rows_[prow].size());
            const Row& a = rows_[i];
            const Row& b = rows_[prow];
            std::size_t x = 0, y = 0;
            while (x < a.size() || y < b.size()) {
                if (y == b.size() || (x < a.size() && a[x].first < b[y].first)) {
                    next.push_back({a[x].first, p * a[x].second});
                    ++x;
                } else if (x == a.size() || b[y].first < a[x].first) {
                    next.push_back({b[y].first, -v * b[y].second});
                    ++y;
                } else {
                    Int val = p * a[x].second - v * b[y].second;
                    if (val != 0) next.push_back({a[x].first, std::move(val)});
                    ++x;
                    ++y;
                }
            }
            strip_content(next);
            update_row(i, std::move(next));
        }
        retire_row(prow);
        col_count_[pcol] = 0;
        col_rows_[pcol].clear();
        col_rows_[pcol].shrink_to_fit();
    }

    void update_row(std::size_t i, Row next) {
        // Column counts: remove old coverage, add new.
        const Row& old = rows_[i];
        std::size_t x = 0, y = 0;
        while (x < old.size() || y < next.size()) {
            if (y == next.size() || (x < old.size() && old[x].first < next[y].first)) {
                --col_count_[old[x].first];
                ++x;
            } else if (x == old.size() || next[y].first < old[x].first) {
                ++col_count_[next[y].first];
                col_rows_[next[y].first].push_back(i);
                ++y;
            } else {
                ++x;
                ++y;
            }
        }
        rows_[i] = std::move(next);
    }

    void retire_row(std::size_t i) {
        for (const auto& [c, v] : rows_[i]) --col_count_[c];
        rows_[i].clear();
        rows_[i].shrink_to_fit();
        alive_[i] = false;
    }

    std::size_t ncols_;
    std::vector<Row> rows_;
    std::vector<bool> alive_;
    std::vector<std::size_t> col_count_;
    std::vector<std::vector<std::size_t>> col_rows_;
};

}  // namespace detail

/// Exact rank over the rationals.
inline std::size_t rank(const SparseRationalMatrix& m) {
    detail::RankEliminator e(m);
    return e.run();
}

struct RankKernel {
    std::size_t rank = 0;
    std::vector<std::vector<Rational>> kernel_basis;  // column vectors, M * v = 0 exactly
};

/// Rank and an exact kernel basis via rational row echelon with
/// back-substitution. Deterministic: leftmost pivot column, first eligible row.
inline RankKernel rank_and_kernel(const SparseRationalMatrix& m) {
    using Row = std::vector<std::pair<std::size_t, Rational>>;
    std::vector<Row> rows;
    for (std::size_t r = 0; r < m.rows(); ++r)
        if (!m.row(r).empty()) rows.push_back(Row(m.row(r).begin(), m.row(r).end()));

    // echelon[i] = row with pivot at pivot_col[i]; rows normalized to pivot 1.
    std::vector<Row> echelon;
    std::vector<std::size_t> pivot_col;

    auto reduce = [&](Row& row) {
        for (std::size_t e = 0; e < echelon.size(); ++e) {
            auto it = std::lower_bound(row.begin(), row.end(), pivot_col[e],
                                       [](const auto& a, std::size_t c) { return a.first < c; });
            if (it == row.end() || it->first != pivot_col[e]) continue;
            Rational f = it->second;
            // row -= f * echelon[e]
            Row next;
            next.reserve(row.size() + echelon[e].size());
            std::size_t x = 0, y = 0;
            const Row& a = row;
            const Row& b = echelon[e];
            while (x < a.size() || y < b.size()) {
                if (y == b.size() || (x < a.size() && a[x].first < b[y].first)) {
                    next.push_back(a[x++]);
                } else if (x == a.size() || b[y].first < a[x].first) {
                    next.push_back({b[y].first, -f * b[y].second});
                    ++y;
                } else {
                    Rational val = a[x].second - f * b[y].second;
                    if (!val.is_zero()) next.push_back({a[x].first, val});
                    ++x;
                    ++y;
                }
            }
            row = std::move(next);
        }
    };

    for (auto& row : rows) {
        reduce(row);
        if (row.empty()) continue;
        Rational inv = Rational(1) / row.front().second;
        for (auto& [c, v] : row) v *= inv;
        // Back-substitute into existing echelon rows so the echelon is fully reduced.
        std::size_t pc = row.front().first;
        for (std::size_t e = 0; e < echelon.size(); ++e) {
            auto& er = echelon[e];
            auto it = std::lower_bound(er.begin(), er.end(), pc,
                                       [](const auto& a, std::size_t c) { return a.first < c; });
            if (it == er.end() || it->first != pc) continue;
            Rational f = it->second;
            Row next;
            std::size_t x = 0, y = 0;
            while (x < er.size() || y < row.size()) {
                if (y == row.size() || (x < er.size() && er[x].first < row[y].first)) {
                    next.push_back(er[x++]);
                } else if (x == er.size() || row[y].first < er[x].first) {
                    next.push_back({row[y].first, -f * row[y].second});
                    ++y;
                } else {
                    Rational val = er[x].second - f * row[y].second;
                    if (!val.is_zero()) next.push_back({er[x].first, val});
                    ++x;
                    ++y;
                }
            }
            er = std::move(next);
        }
        echelon.push_back(std::move(row));
        pivot_col.push_back(pc);
    }

    RankKernel out;
    out.rank = echelon.size();

    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t c : pivot_col) is_pivot[c] = true;
    // Map pivot column -> echelon row index.
    std::vector<std::size_t> row_of(m.cols(), 0);
    for (std::size_t e = 0; e < echelon.size(); ++e) row_of[pivot_col[e]] = e;

    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rational> v(m.cols(), Rational(0));
        v[f] = Rational(1);
        // Reduced echelon: pivot var = -coefficient of free var in its row.
        for (std::size_t e = 0; e < echelon.size(); ++e) {
            const Row& er = echelon[e];
            auto it = std::lower_bound(er.begin(), er.end(), f,
                                       [](const auto& a, std::size_t c) { return a.first < c; });
            if (it != er.end() && it->first == f) v[pivot_col[e]] = -it->second;
        }
        out.kernel_basis.push_back(std::move(v));
    }
    return out;
}

/// Exact solve M x = b; returns nullopt when inconsistent.
inline std::optional<std::vector<Rational>> solve_linear(const SparseRationalMatrix& m,
                                                         const std::vector<Rational>& b) {
    if (b.size() != m.rows()) throw domain_error("solve_linear: dimension mismatch");
    // Augmented column at index cols().
    SparseRationalMatrix aug(m.rows(), m.cols() + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (const auto& [c, v] : m.row(r)) aug.set(r, c, v);
        if (!b[r].is_zero()) aug.set(r, m.cols(), b[r]);
    }
    // Kernel vectors of [M | b] with last coordinate t solve M x + t b = 0;
    // in reduced echelon form the augmented column is free exactly when the
    // system is consistent, and then its kernel basis vector has t = 1.
    auto kr = rank_and_kernel(aug);
    for (const auto& v : kr.kernel_basis) {
        if (!v[m.cols()].is_zero()) {
            Rational t = v[m.cols()];
            std::vector<Rational> x(m.cols());
            for (std::size_t i = 0; i < m.cols(); ++i) x[i] = -v[i] / t;
            return x;
        }
    }
    return std::nullopt;
}

}  // namespace ucyc
