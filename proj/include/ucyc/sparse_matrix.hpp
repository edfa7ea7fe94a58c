#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include "ucyc/rational.hpp"

namespace ucyc {

/// Sparse matrix over an exact scalar type. Rows are kept sorted by column
/// index and never store zeros.
template <typename Scalar>
class SparseMatrix {
public:
    using Entry = std::pair<std::size_t, Scalar>;  // (col, value)

    SparseMatrix() : rows_(0), cols_(0) {}
    SparseMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows) {}

    static SparseMatrix identity(std::size_t n) {
        SparseMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.data_[i].push_back({i, Scalar(1)});
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    std::size_t nnz() const {
        std::size_t n = 0;
        for (const auto& r : data_) n += r.size();
        return n;
    }

    bool is_zero() const { return nnz() == 0; }

    const std::vector<Entry>& row(std::size_t r) const { return data_[r]; }

    Scalar get(std::size_t r, std::size_t c) const {
        check_bounds(r, c);
        const auto& row = data_[r];
        auto it = std::lower_bound(row.begin(), row.end(), c,
                                   [](const Entry& e, std::size_t col) { return e.first < col; });
        if (it != row.end() && it->first == c) return it->second;
        return Scalar(0);
    }

    /// Set entry (r, c); removes the entry when v == 0.
    void set(std::size_t r, std::size_t c, const Scalar& v) {
        check_bounds(r, c);
        auto& row = data_[r];
        auto it = std::lower_bound(row.begin(), row.end(), c,
                                   [](const Entry& e, std::size_t col) { return e.first < col; });
        if (it != row.end() && it->first == c) {
            if (v == Scalar(0)) row.erase(it);
            else it->second = v;
        } else if (!(v == Scalar(0))) {
            row.insert(it, {c, v});
        }
    }

    void add_to(std::size_t r, std::size_t c, const Scalar& v) {
        if (v == Scalar(0)) return;
        check_bounds(r, c);
        auto& row = data_[r];
        auto it = std::lower_bound(row.begin(), row.end(), c,
                                   [](const Entry& e, std::size_t col) { return e.first < col; });
        if (it != row.end() && it->first == c) {
            it->second += v;
            if (it->second == Scalar(0)) row.erase(it);
        } else {
            row.insert(it, {c, v});
        }
    }

    /// Bulk constructor; duplicate positions are accumulated.
    static SparseMatrix from_triplets(std::size_t rows, std::size_t cols,
                                      std::vector<std::tuple<std::size_t, std::size_t, Scalar>> ts) {
        SparseMatrix m(rows, cols);
        std::sort(ts.begin(), ts.end(), [](const auto& a, const auto& b) {
            if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) < std::get<0>(b);
            return std::get<1>(a) < std::get<1>(b);
        });
        for (std::size_t i = 0; i < ts.size();) {
            std::size_t j = i;
            Scalar acc(0);
            while (j < ts.size() && std::get<0>(ts[j]) == std::get<0>(ts[i]) &&
                   std::get<1>(ts[j]) == std::get<1>(ts[i])) {
                acc += std::get<2>(ts[j]);
                ++j;
            }
            if (!(acc == Scalar(0))) {
                m.check_bounds(std::get<0>(ts[i]), std::get<1>(ts[i]));
                m.data_[std::get<0>(ts[i])].push_back({std::get<1>(ts[i]), acc});
            }
            i = j;
        }
        return m;
    }

    SparseMatrix transpose() const {
        SparseMatrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (const auto& [c, v] : data_[r]) t.data_[c].push_back({r, v});
        return t;
    }

    std::vector<Scalar> apply(const std::vector<Scalar>& x) const {
        if (x.size() != cols_) throw domain_error("SparseMatrix::apply: dimension mismatch");
        std::vector<Scalar> y(rows_, Scalar(0));
        for (std::size_t r = 0; r < rows_; ++r)
            for (const auto& [c, v] : data_[r]) y[r] += v * x[c];
        return y;
    }

    friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
        if (a.cols_ != b.rows_) throw domain_error("SparseMatrix: product shape mismatch");
        SparseMatrix p(a.rows_, b.cols_);
        std::vector<Scalar> acc(b.cols_, Scalar(0));
        std::vector<std::size_t> touched;
        for (std::size_t r = 0; r < a.rows_; ++r) {
            touched.clear();
            for (const auto& [k, av] : a.data_[r]) {
                for (const auto& [c, bv] : b.data_[k]) {
                    if (acc[c] == Scalar(0)) touched.push_back(c);
                    acc[c] += av * bv;
                }
            }
            std::sort(touched.begin(), touched.end());
            for (std::size_t c : touched) {
                if (!(acc[c] == Scalar(0))) p.data_[r].push_back({c, acc[c]});
                acc[c] = Scalar(0);
            }
        }
        return p;
    }

    friend SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw domain_error("SparseMatrix: sum shape mismatch");
        SparseMatrix s(a.rows_, a.cols_);
        for (std::size_t r = 0; r < a.rows_; ++r) {
            auto& out = s.data_[r];
            const auto& x = a.data_[r];
            const auto& y = b.data_[r];
            std::size_t i = 0, j = 0;
            while (i < x.size() || j < y.size()) {
                if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
                    out.push_back(x[i++]);
                } else if (i == x.size() || y[j].first < x[i].first) {
                    out.push_back(y[j++]);
                } else {
                    Scalar v = x[i].second + y[j].second;
                    if (!(v == Scalar(0))) out.push_back({x[i].first, v});
                    ++i;
                    ++j;
                }
            }
        }
        return s;
    }

    SparseMatrix operator-() const {
        SparseMatrix m = *this;
        for (auto& row : m.data_)
            for (auto& [c, v] : row) v = -v;
        return m;
    }

    friend SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b) { return a + (-b); }

    friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    /// First nonzero entry position in row-major order, if any. Used by
    /// validators to point at a concrete violation.
    std::optional<std::pair<std::size_t, std::size_t>> first_nonzero() const {
        for (std::size_t r = 0; r < rows_; ++r)
            if (!data_[r].empty()) return std::make_pair(r, data_[r].front().first);
        return std::nullopt;
    }

private:
    void check_bounds(std::size_t r, std::size_t c) const {
        if (r >= rows_ || c >= cols_) throw domain_error("SparseMatrix: index out of bounds");
    }

    std::size_t rows_, cols_;
    std::vector<std::vector<Entry>> data_;
};

using SparseRationalMatrix = SparseMatrix<Rational>;
using IntegerMatrix = SparseMatrix<Int>;

}  // namespace ucyc
