#pragma once

#include <map>
#include <tuple>
#include <utility>
#include <vector>

#include "ucyc/chain_complex.hpp"

namespace ucyc {

/// Bounded double complex, homological orientation:
///   d_h : (p, q) -> (p - 1, q),   d_v : (p, q) -> (p, q - 1),
/// squares anticommute exactly: d_h d_v + d_v d_h = 0.
class DoubleComplex {
public:
    using Key = std::pair<int, int>;  // (p, q)

    void set_dim(int p, int q, std::size_t n) {
        if (n > 0) dims_[{p, q}] = n;
    }
    std::size_t dim(int p, int q) const {
        auto it = dims_.find({p, q});
        return it == dims_.end() ? 0 : it->second;
    }

    void set_horizontal(int p, int q, SparseRationalMatrix m) {
        if (m.cols() != dim(p, q) || m.rows() != dim(p - 1, q))
            throw domain_error("DoubleComplex: horizontal shape mismatch");
        dh_[{p, q}] = std::move(m);
    }
    void set_vertical(int p, int q, SparseRationalMatrix m) {
        if (m.cols() != dim(p, q) || m.rows() != dim(p, q - 1))
            throw domain_error("DoubleComplex: vertical shape mismatch");
        dv_[{p, q}] = std::move(m);
    }

    SparseRationalMatrix horizontal(int p, int q) const {
        auto it = dh_.find({p, q});
        if (it != dh_.end()) return it->second;
        return SparseRationalMatrix(dim(p - 1, q), dim(p, q));
    }
    SparseRationalMatrix vertical(int p, int q) const {
        auto it = dv_.find({p, q});
        if (it != dv_.end()) return it->second;
        return SparseRationalMatrix(dim(p, q - 1), dim(p, q));
    }

    /// Normalizes a commuting-squares input: the horizontal maps on row q are
    /// scaled by (-1)^q, after which all squares anticommute.
    void make_anticommuting_from_commuting() {
        for (auto& [key, m] : dh_)
            if (key.second % 2 != 0) m = -m;
    }

    bool empty() const { return dims_.empty(); }

    std::tuple<int, int, int, int> bounds() const {
        if (dims_.empty()) throw domain_error("DoubleComplex: empty");
        int pmin = dims_.begin()->first.first, pmax = pmin;
        int qmin = dims_.begin()->first.second, qmax = qmin;
        for (const auto& [k, n] : dims_) {
            pmin = std::min(pmin, k.first);
            pmax = std::max(pmax, k.first);
            qmin = std::min(qmin, k.second);
            qmax = std::max(qmax, k.second);
        }
        return {pmin, pmax, qmin, qmax};
    }

    ValidationReport validate() const {
        auto [pmin, pmax, qmin, qmax] = bounds();
        for (int p = pmin; p <= pmax + 1; ++p)
            for (int q = qmin; q <= qmax + 1; ++q) {
                auto hh = horizontal(p - 1, q) * horizontal(p, q);
                if (auto pos = hh.first_nonzero())
                    return ValidationReport::fail(p, pos->first, pos->second,
                                                  "d_h . d_h != 0 at (" + std::to_string(p) + "," +
                                                      std::to_string(q) + ")");
                auto vv = vertical(p, q - 1) * vertical(p, q);
                if (auto pos = vv.first_nonzero())
                    return ValidationReport::fail(q, pos->first, pos->second,
                                                  "d_v . d_v != 0 at (" + std::to_string(p) + "," +
                                                      std::to_string(q) + ")");
                auto anti = vertical(p - 1, q) * horizontal(p, q) +
                            horizontal(p, q - 1) * vertical(p, q);
                if (auto pos = anti.first_nonzero())
                    return ValidationReport::fail(p, pos->first, pos->second,
                                                  "squares do not anticommute at (" +
                                                      std::to_string(p) + "," + std::to_string(q) +
                                                      ")");
            }
        return ValidationReport::pass();
    }

    /// Total complex T_n = (+)_{p+q=n} C_{p,q} with d = d_h + d_v.
    /// Blocks within T_n are ordered by increasing p.
    ChainComplex total() const {
        auto [pmin, pmax, qmin, qmax] = bounds();
        int nmin = pmin + qmin, nmax = pmax + qmax;
        ChainComplex tot(nmin, nmax);

        // offset[(p,q)] = starting coordinate of block (p,q) inside T_{p+q}
        std::map<Key, std::size_t> offset;
        for (int n = nmin; n <= nmax; ++n) {
            std::size_t total_dim = 0;
            for (int p = pmin; p <= pmax; ++p) {
                int q = n - p;
                if (dim(p, q) == 0) continue;
                offset[{p, q}] = total_dim;
                total_dim += dim(p, q);
            }
            tot.set_dim(n, total_dim);
        }
        for (int n = nmin + 1; n <= nmax; ++n) {
            std::vector<std::tuple<std::size_t, std::size_t, Rational>> ts;
            for (int p = pmin; p <= pmax; ++p) {
                int q = n - p;
                if (dim(p, q) == 0) continue;
                std::size_t src_off = offset[{p, q}];
                auto h = horizontal(p, q);
                if (dim(p - 1, q) > 0) {
                    std::size_t dst_off = offset[{p - 1, q}];
                    for (std::size_t r = 0; r < h.rows(); ++r)
                        for (const auto& [c, v] : h.row(r))
                            ts.push_back({dst_off + r, src_off + c, v});
                }
                auto vmat = vertical(p, q);
                if (dim(p, q - 1) > 0) {
                    std::size_t dst_off = offset[{p, q - 1}];
                    for (std::size_t r = 0; r < vmat.rows(); ++r)
                        for (const auto& [c, v] : vmat.row(r))
                            ts.push_back({dst_off + r, src_off + c, v});
                }
            }
            tot.set_differential(
                n, SparseRationalMatrix::from_triplets(tot.dim(n - 1), tot.dim(n), std::move(ts)));
        }
        return tot;
    }

private:
    std::map<Key, std::size_t> dims_;
    std::map<Key, SparseRationalMatrix> dh_, dv_;
};

}  // namespace ucyc
