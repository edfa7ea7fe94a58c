#pragma once

#include <map>
#include <utility>
#include <vector>

#include "ucyc/chain_complex.hpp"
#include "ucyc/linear_span.hpp"

namespace ucyc {

/// Chain complex with a filtration level attached to every basis element.
/// Homological convention: the differential never raises the level, so
/// F_s = span{ basis elements of level <= s } satisfies d F_s (subset) F_s
/// and page-r differentials drop the level by r.
struct FilteredComplex {
    ChainComplex complex;
    std::map<int, std::vector<int>> levels;  // degree -> level per basis element

    int level(int degree, std::size_t idx) const {
        return levels.at(degree).at(idx);
    }

    ValidationReport validate() const {
        auto base = complex.validate();
        if (!base.ok) return base;
        for (int k = complex.min_deg(); k <= complex.max_deg(); ++k) {
            if (complex.dim(k) > 0 &&
                (!levels.count(k) || levels.at(k).size() != complex.dim(k)))
                return ValidationReport::fail(k, 0, 0, "missing filtration levels");
        }
        for (int k = complex.min_deg() + 1; k <= complex.max_deg(); ++k) {
            auto d = complex.differential(k);
            for (std::size_t r = 0; r < d.rows(); ++r)
                for (const auto& [c, v] : d.row(r))
                    if (level(k - 1, r) > level(k, c))
                        return ValidationReport::fail(
                            k, r, c, "differential raises filtration level at degree " +
                                         std::to_string(k));
        }
        return ValidationReport::pass();
    }

    std::pair<int, int> level_range() const {
        bool seen = false;
        int lo = 0, hi = 0;
        for (const auto& [k, ls] : levels)
            for (int s : ls) {
                if (!seen) { lo = hi = s; seen = true; }
                lo = std::min(lo, s);
                hi = std::max(hi, s);
            }
        if (!seen) throw domain_error("FilteredComplex: no basis elements");
        return {lo, hi};
    }
};

/// One page of the spectral sequence of a filtered complex. Cells are keyed
/// by (filtration level s, total degree n); representatives are vectors in
/// the ambient C_n coordinates.
struct SpectralPage {
    int r = 0;
    std::map<std::pair<int, int>, std::size_t> dims;
    std::map<std::pair<int, int>, std::vector<std::vector<Rational>>> reps;
    // d_r : E_r(s, n) -> E_r(s - r, n - 1), in page coordinates.
    std::map<std::pair<int, int>, SparseRationalMatrix> d;
};

struct SpectralSequence {
    std::vector<SpectralPage> pages;  // pages[r] = E_r
    int stabilized_at = -1;           // first r with E_r = E_{r+1} and d_r = 0, if seen

    /// Total dimension of page r in total degree n.
    std::size_t total_dim(std::size_t r, int n) const {
        std::size_t t = 0;
        for (const auto& [key, d] : pages.at(r).dims)
            if (key.second == n) t += d;
        return t;
    }
};

namespace detail {

/// A_r(s, n) = { x in F_s C_n : d x in F_{s-r} C_{n-1} }, as explicit
/// spanning vectors in C_n coordinates.
inline std::vector<std::vector<Rational>> approx_cycles(const FilteredComplex& fc, int r, int s,
                                                        int n) {
    const auto& C = fc.complex;
    std::size_t dn = C.dim(n);
    if (dn == 0) return {};
    std::vector<std::size_t> cols;  // basis of F_s C_n
    for (std::size_t i = 0; i < dn; ++i)
        if (fc.level(n, i) <= s) cols.push_back(i);
    if (cols.empty()) return {};

    std::size_t dn1 = C.dim(n - 1);
    std::vector<std::size_t> rows;  // coordinates of C_{n-1} with level > s - r
    for (std::size_t i = 0; i < dn1; ++i)
        if (fc.level(n - 1, i) > s - r) rows.push_back(i);

    if (rows.empty() || n <= C.min_deg()) {
        // No constraint: all of F_s.
        std::vector<std::vector<Rational>> out;
        for (std::size_t c : cols) {
            std::vector<Rational> v(dn, Rational(0));
            v[c] = Rational(1);
            out.push_back(std::move(v));
        }
        return out;
    }

    auto d = C.differential(n);
    std::map<std::size_t, std::size_t> row_index;
    for (std::size_t i = 0; i < rows.size(); ++i) row_index[rows[i]] = i;
    std::vector<std::tuple<std::size_t, std::size_t, Rational>> ts;
    for (std::size_t j = 0; j < cols.size(); ++j) {
        // column cols[j] of d, restricted to the forbidden rows
        for (std::size_t rr = 0; rr < d.rows(); ++rr) {
            auto it = row_index.find(rr);
            if (it == row_index.end()) continue;
            Rational v = d.get(rr, cols[j]);
            if (!v.is_zero()) ts.push_back({it->second, j, v});
        }
    }
    auto sub = SparseRationalMatrix::from_triplets(rows.size(), cols.size(), std::move(ts));
    auto kr = rank_and_kernel(sub);
    std::vector<std::vector<Rational>> out;
    for (const auto& kv : kr.kernel_basis) {
        std::vector<Rational> v(dn, Rational(0));
        for (std::size_t j = 0; j < cols.size(); ++j) v[cols[j]] = kv[j];
        out.push_back(std::move(v));
    }
    return out;
}

inline std::vector<Rational> apply_diff(const ChainComplex& C, int n,
                                        const std::vector<Rational>& x) {
    return C.differential(n).apply(x);
}

}  // namespace detail

/// Computes pages E_0 .. E_{r_max} with explicit subquotient bases:
///   E_r(s, n) = A_r(s, n) / ( A_{r-1}(s-1, n) + d A_{r-1}(s+r-1, n+1) )
/// with A_r(s, n) = { x in F_s : d x in F_{s-r} } and A_{-1}(t, m) = F_t C_m.
inline SpectralSequence spectral_sequence_pages(const FilteredComplex& fc, int r_max) {
    auto rep = fc.validate();
    if (!rep.ok) throw domain_error("spectral_sequence_pages: " + rep.violation->message);
    const auto& C = fc.complex;
    auto [smin, smax] = fc.level_range();

    SpectralSequence ss;
    auto cycles = [&](int r, int s, int n) {
        if (r < 0) {
            // A_{-1}(s, n) = F_s C_n
            std::vector<std::vector<Rational>> out;
            std::size_t dn = C.dim(n);
            for (std::size_t i = 0; i < dn; ++i)
                if (fc.level(n, i) <= s) {
                    std::vector<Rational> v(dn, Rational(0));
                    v[i] = Rational(1);
                    out.push_back(std::move(v));
                }
            return out;
        }
        return detail::approx_cycles(fc, r, s, n);
    };

    for (int r = 0; r <= r_max; ++r) {
        SpectralPage page;
        page.r = r;
        // Per cell: the full span (denominator + reps) and the insertion
        // indices of the accepted representatives, for coordinate solves.
        struct CellData {
            RationalSpan span;
            std::vector<std::size_t> rep_idx;
        };
        std::map<std::pair<int, int>, CellData> cells;

        for (int n = C.min_deg(); n <= C.max_deg(); ++n) {
            if (C.dim(n) == 0) continue;
            for (int s = smin; s <= smax; ++s) {
                auto numer = cycles(r, s, n);
                if (numer.empty()) continue;
                RationalSpan span(C.dim(n));
                for (const auto& v : cycles(r - 1, s - 1, n)) span.insert(v);
                if (n + 1 <= C.max_deg()) {
                    for (const auto& v : cycles(r - 1, s + r - 1, n + 1)) {
                        auto dv = detail::apply_diff(C, n + 1, v);
                        span.insert(dv);
                    }
                }
                std::size_t denom_rank = span.rank();
                std::vector<std::vector<Rational>> reps;
                std::vector<std::size_t> rep_idx;
                for (const auto& v : numer) {
                    if (span.insert(v)) {
                        reps.push_back(v);
                        rep_idx.push_back(span.inserted() - 1);
                    }
                }
                if (span.rank() == denom_rank) continue;  // zero cell
                page.dims[{s, n}] = span.rank() - denom_rank;
                page.reps[{s, n}] = reps;
                cells.emplace(std::make_pair(s, n), CellData{std::move(span), std::move(rep_idx)});
            }
        }

        // d_r in page coordinates.
        for (const auto& [key, reps] : page.reps) {
            auto [s, n] = key;
            auto tgt_key = std::make_pair(s - r, n - 1);
            std::size_t tgt_dim = page.dims.count(tgt_key) ? page.dims[tgt_key] : 0;
            std::vector<std::tuple<std::size_t, std::size_t, Rational>> ts;
            if (tgt_dim > 0) {
                auto& tgt = cells.at(tgt_key);
                for (std::size_t j = 0; j < reps.size(); ++j) {
                    auto w = detail::apply_diff(C, n, reps[j]);
                    bool zero = true;
                    for (const auto& x : w)
                        if (!x.is_zero()) { zero = false; break; }
                    if (zero) continue;
                    auto coords = tgt.span.coords(w);
                    if (!coords)
                        throw domain_error("spectral_sequence_pages: d_r image not in target span");
                    for (std::size_t i = 0; i < tgt_dim; ++i) {
                        const Rational& v = (*coords)[tgt.rep_idx[i]];
                        if (!v.is_zero()) ts.push_back({i, j, v});
                    }
                }
            }
            page.d[key] = SparseRationalMatrix::from_triplets(tgt_dim, reps.size(), std::move(ts));
        }

        ss.pages.push_back(std::move(page));
        if (ss.stabilized_at < 0 && r > 0) {
            const auto& prev = ss.pages[r - 1];
            const auto& cur = ss.pages[r];
            bool same_dims = prev.dims == cur.dims;
            bool prev_d_zero = true;
            for (const auto& [k, m] : prev.d)
                if (!m.is_zero()) prev_d_zero = false;
            bool cur_d_zero = true;
            for (const auto& [k, m] : cur.d)
                if (!m.is_zero()) cur_d_zero = false;
            if (same_dims && prev_d_zero && cur_d_zero) ss.stabilized_at = r - 1;
        }
    }
    return ss;
}

}  // namespace ucyc
