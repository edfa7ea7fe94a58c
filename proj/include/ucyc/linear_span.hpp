#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ucyc/rational.hpp"

namespace ucyc {

/// Incrementally built row space over Q with coordinate recovery.
///
/// Rows are kept in reduced echelon form together with the combination of
/// inserted vectors that produced them, so membership tests also yield exact
/// coordinates over the inserted generating set.
class RationalSpan {
public:
    explicit RationalSpan(std::size_t dim) : dim_(dim) {}

    std::size_t dim() const { return dim_; }
    std::size_t rank() const { return rows_.size(); }
    std::size_t inserted() const { return n_inserted_; }

    /// Insert a vector; returns true when it enlarged the span.
    bool insert(const std::vector<Rational>& v) {
        auto [main, aug] = reduce_tracked(v);
        ++n_inserted_;
        std::size_t p = pivot_of(main);
        if (p == dim_) return false;
        aug.resize(n_inserted_, Rational(0));
        aug[n_inserted_ - 1] = Rational(1);
        normalize(main, aug, p);
        back_substitute(main, aug, p);
        insert_sorted(std::move(main), std::move(aug), p);
        return true;
    }

    bool contains(const std::vector<Rational>& v) const {
        auto main = reduce_plain(v);
        return pivot_of(main) == dim_;
    }

    /// Residue of v modulo the span (canonical reduced form).
    std::vector<Rational> reduce(const std::vector<Rational>& v) const { return reduce_plain(v); }

    /// Coordinates of v over the inserted vectors, if v lies in the span.
    std::optional<std::vector<Rational>> coords(const std::vector<Rational>& v) const {
        auto [main, aug] = reduce_tracked(v);
        if (pivot_of(main) != dim_) return std::nullopt;
        aug.resize(n_inserted_, Rational(0));
        for (auto& c : aug) c = -c;
        return aug;
    }

private:
    std::size_t pivot_of(const std::vector<Rational>& v) const {
        for (std::size_t i = 0; i < dim_; ++i)
            if (!v[i].is_zero()) return i;
        return dim_;
    }

    std::vector<Rational> reduce_plain(std::vector<Rational> v) const {
        for (const auto& row : rows_) {
            const Rational& f = v[row.pivot];
            if (f.is_zero()) continue;
            Rational c = f;  // row.main[pivot] == 1
            for (std::size_t i = row.pivot; i < dim_; ++i)
                if (!row.main[i].is_zero()) v[i] -= c * row.main[i];
        }
        return v;
    }

    std::pair<std::vector<Rational>, std::vector<Rational>> reduce_tracked(
        std::vector<Rational> v) const {
        std::vector<Rational> aug(n_inserted_, Rational(0));
        for (const auto& row : rows_) {
            const Rational& f = v[row.pivot];
            if (f.is_zero()) continue;
            Rational c = f;
            for (std::size_t i = row.pivot; i < dim_; ++i)
                if (!row.main[i].is_zero()) v[i] -= c * row.main[i];
            for (std::size_t i = 0; i < row.aug.size(); ++i)
                if (!row.aug[i].is_zero()) {
                    if (aug.size() < row.aug.size()) aug.resize(row.aug.size(), Rational(0));
                    aug[i] -= c * row.aug[i];
                }
        }
        return {std::move(v), std::move(aug)};
    }

    void normalize(std::vector<Rational>& main, std::vector<Rational>& aug, std::size_t p) const {
        Rational inv = Rational(1) / main[p];
        for (auto& x : main) x *= inv;
        for (auto& x : aug) x *= inv;
    }

    void back_substitute(const std::vector<Rational>& main, const std::vector<Rational>& aug,
                         std::size_t p) {
        for (auto& row : rows_) {
            const Rational& f = row.main[p];
            if (f.is_zero()) continue;
            Rational c = f;
            row.aug.resize(std::max(row.aug.size(), aug.size()), Rational(0));
            for (std::size_t i = p; i < dim_; ++i)
                if (!main[i].is_zero()) row.main[i] -= c * main[i];
            for (std::size_t i = 0; i < aug.size(); ++i)
                if (!aug[i].is_zero()) row.aug[i] -= c * aug[i];
        }
    }

    struct EchelonRow {
        std::vector<Rational> main;
        std::vector<Rational> aug;
        std::size_t pivot;
    };

    void insert_sorted(std::vector<Rational> main, std::vector<Rational> aug, std::size_t p) {
        EchelonRow row{std::move(main), std::move(aug), p};
        auto it = rows_.begin();
        while (it != rows_.end() && it->pivot < p) ++it;
        rows_.insert(it, std::move(row));
    }

    std::size_t dim_;
    std::size_t n_inserted_ = 0;
    std::vector<EchelonRow> rows_;
};

}  // namespace ucyc
