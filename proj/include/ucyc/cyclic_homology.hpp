#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ucyc/chain_complex.hpp"
#include "ucyc/tensor_chain.hpp"

namespace ucyc {

constexpr std::uint64_t kDefaultCoordCap = 2'000'000;

inline void check_cap(const FDAlgebra& a, std::size_t k, std::uint64_t cap) {
    if (cc_dim(a, k) > cap)
        throw resource_error("tensor space dimension " + std::to_string(cc_dim(a, k)) +
                             " at degree " + std::to_string(k) + " exceeds cap " +
                             std::to_string(cap));
}

/// Matrix of b : CC_k -> CC_{k-1} in the flat tensor basis.
inline SparseRationalMatrix b_matrix(const AlgebraPtr& a, std::size_t k,
                                     std::uint64_t cap = kDefaultCoordCap) {
    check_cap(*a, k, cap);
    std::uint64_t cols = cc_dim(*a, k);
    std::uint64_t rows = k >= 1 ? cc_dim(*a, k - 1) : 0;
    if (k == 0) return SparseRationalMatrix(0, cols);
    std::vector<std::tuple<std::size_t, std::size_t, Rational>> ts;
    for (std::uint64_t col = 0; col < cols; ++col)
        detail::expand_b(*a, k, col, [&](std::uint64_t row, const Rational& v) {
            ts.push_back({static_cast<std::size_t>(row), static_cast<std::size_t>(col), v});
        });
    return SparseRationalMatrix::from_triplets(rows, cols, std::move(ts));
}

/// Matrix of B : CC_k -> CC_{k+1}.
inline SparseRationalMatrix B_matrix(const AlgebraPtr& a, std::size_t k,
                                     std::uint64_t cap = kDefaultCoordCap) {
    check_cap(*a, k + 1, cap);
    std::uint64_t cols = cc_dim(*a, k);
    std::uint64_t rows = cc_dim(*a, k + 1);
    std::vector<std::tuple<std::size_t, std::size_t, Rational>> ts;
    for (std::uint64_t col = 0; col < cols; ++col)
        detail::expand_B(*a, k, col, [&](std::uint64_t row, const Rational& v) {
            ts.push_back({static_cast<std::size_t>(row), static_cast<std::size_t>(col), v});
        });
    return SparseRationalMatrix::from_triplets(rows, cols, std::move(ts));
}

/// The reduced Hochschild complex (CC_., b) on degrees 0..max_deg, flagged
/// truncated above (the full complex continues past the window).
inline ChainComplex hochschild_complex(const AlgebraPtr& a, std::size_t max_deg,
                                       std::uint64_t cap = kDefaultCoordCap) {
    ChainComplex c(0, static_cast<int>(max_deg));
    for (std::size_t k = 0; k <= max_deg; ++k)
        c.set_dim(static_cast<int>(k), static_cast<std::size_t>(cc_dim(*a, k)));
    for (std::size_t k = 1; k <= max_deg; ++k)
        c.set_differential(static_cast<int>(k), b_matrix(a, k, cap));
    c.set_truncated(false, true);
    return c;
}

/// HH_k(A) dims for k < max_deg (exact); k = max_deg is reported uncertified.
inline HomologyResult hochschild_homology(const AlgebraPtr& a, std::size_t max_deg,
                                          std::uint64_t cap = kDefaultCoordCap) {
    return hochschild_complex(a, max_deg, cap).homology();
}

/// Total-degree component of the cyclic complex
/// CC_.(A) (x) C((u))/uC[[u]]: blocks u^j CC_{m+2j}, j <= 0.
/// Finite in every total degree, so no truncation is involved.
inline ChainComplex cyclic_complex(const AlgebraPtr& a, std::size_t max_total_deg,
                                   std::uint64_t cap = kDefaultCoordCap) {
    const int M = static_cast<int>(max_total_deg);
    ChainComplex c(0, M);
    // offsets[m] = list of (j, tensor degree, offset) blocks of T_m,
    // ordered j = 0, -1, -2, ...
    std::map<int, std::vector<std::tuple<int, std::size_t, std::size_t>>> blocks;
    for (int m = 0; m <= M; ++m) {
        std::size_t off = 0;
        for (int j = 0; m + 2 * j >= 0; --j) {
            std::size_t deg = static_cast<std::size_t>(m + 2 * j);
            check_cap(*a, deg, cap);
            blocks[m].push_back({j, deg, off});
            off += static_cast<std::size_t>(cc_dim(*a, deg));
        }
        c.set_dim(m, off);
    }
    for (int m = 1; m <= M; ++m) {
        std::vector<std::tuple<std::size_t, std::size_t, Rational>> ts;
        // target offsets by u-exponent
        std::map<int, std::size_t> tgt_off;
        for (const auto& [j, deg, off] : blocks[m - 1]) tgt_off[j] = off;
        for (const auto& [j, deg, off] : blocks[m]) {
            if (deg >= 1 && tgt_off.count(j)) {
                std::size_t to = tgt_off[j];
                for (std::uint64_t col = 0; col < cc_dim(*a, deg); ++col)
                    detail::expand_b(*a, deg, col, [&](std::uint64_t row, const Rational& v) {
                        ts.push_back({to + static_cast<std::size_t>(row),
                                      off + static_cast<std::size_t>(col), v});
                    });
            }
            if (j + 1 <= 0 && tgt_off.count(j + 1)) {
                std::size_t to = tgt_off[j + 1];
                for (std::uint64_t col = 0; col < cc_dim(*a, deg); ++col)
                    detail::expand_B(*a, deg, col, [&](std::uint64_t row, const Rational& v) {
                        ts.push_back({to + static_cast<std::size_t>(row),
                                      off + static_cast<std::size_t>(col), v});
                    });
            }
        }
        c.set_differential(m, SparseRationalMatrix::from_triplets(c.dim(m - 1), c.dim(m), std::move(ts)));
    }
    return c;
}

/// HC_n(A) for n <= max_deg, all exact.
inline HomologyResult cyclic_homology(const AlgebraPtr& a, std::size_t max_deg,
                                      std::uint64_t cap = kDefaultCoordCap) {
    auto c = cyclic_complex(a, max_deg + 1, cap);
    auto h = c.homology();
    HomologyResult out;
    for (std::size_t n = 0; n <= max_deg; ++n) {
        out.dims[static_cast<int>(n)] = h.dims.at(static_cast<int>(n));
        out.certified[static_cast<int>(n)] = true;
    }
    return out;
}

struct PeriodicResult {
    std::size_t even = 0, odd = 0;
    bool even_certified = false, odd_certified = false;
    std::size_t cutoff = 0;  // tensor-degree cutoff K; the run compares K and K+2
    std::size_t even_at_higher = 0, odd_at_higher = 0;
};

namespace detail {

/// Homology of the periodic complex at total degree m with tensor degrees
/// truncated to <= K.
inline std::size_t hp_truncated_dim(const AlgebraPtr& a, int m, std::size_t K, std::uint64_t cap) {
    // Blocks of T_t: u^j CC_{t+2j} for all j with 0 <= t+2j <= K.
    auto blocks = [&](int t) {
        std::vector<std::pair<int, std::size_t>> out;  // (j, tensor degree)
        int jlo = t >= 0 ? -(t / 2) : (-t + 1) / 2;
        while (t + 2 * jlo < 0) ++jlo;
        for (int j = jlo; t + 2 * j <= static_cast<int>(K); ++j)
            out.push_back({j, static_cast<std::size_t>(t + 2 * j)});
        return out;
    };
    auto build_d = [&](int t) {  // D : T_t -> T_{t-1}
        auto src = blocks(t);
        auto tgt = blocks(t - 1);
        std::map<int, std::size_t> tgt_off;
        std::size_t off = 0, rows = 0;
        for (const auto& [j, deg] : tgt) {
            tgt_off[j] = off;
            off += static_cast<std::size_t>(cc_dim(*a, deg));
        }
        rows = off;
        std::size_t cols = 0;
        std::vector<std::tuple<std::size_t, std::size_t, Rational>> ts;
        for (const auto& [j, deg] : src) {
            check_cap(*a, deg, cap);
            std::size_t src_off = cols;
            if (deg >= 1 && tgt_off.count(j)) {
                std::size_t to = tgt_off[j];
                for (std::uint64_t col = 0; col < cc_dim(*a, deg); ++col)
                    expand_b(*a, deg, col, [&](std::uint64_t row, const Rational& v) {
                        ts.push_back({to + static_cast<std::size_t>(row),
                                      src_off + static_cast<std::size_t>(col), v});
                    });
            }
            if (tgt_off.count(j + 1)) {
                std::size_t to = tgt_off[j + 1];
                for (std::uint64_t col = 0; col < cc_dim(*a, deg); ++col)
                    expand_B(*a, deg, col, [&](std::uint64_t row, const Rational& v) {
                        ts.push_back({to + static_cast<std::size_t>(row),
                                      src_off + static_cast<std::size_t>(col), v});
                    });
            }
            cols += static_cast<std::size_t>(cc_dim(*a, deg));
        }
        return SparseRationalMatrix::from_triplets(rows, cols, std::move(ts));
    };
    auto d_m = build_d(m);
    auto d_m1 = build_d(m + 1);
    std::size_t dim_m = d_m.cols();
    return dim_m - rank(d_m) - rank(d_m1);
}

}  // namespace detail

/// HP parity dims with a stabilization certificate: computed at tensor-degree
/// cutoffs K and K+2; a parity is certified only when the two runs agree.
inline PeriodicResult periodic_cyclic_homology(const AlgebraPtr& a, std::size_t max_tensor_deg,
                                               std::uint64_t cap = kDefaultCoordCap) {
    PeriodicResult out;
    out.cutoff = max_tensor_deg;
    out.even = detail::hp_truncated_dim(a, 0, max_tensor_deg, cap);
    out.odd = detail::hp_truncated_dim(a, 1, max_tensor_deg, cap);
    out.even_at_higher = detail::hp_truncated_dim(a, 0, max_tensor_deg + 2, cap);
    out.odd_at_higher = detail::hp_truncated_dim(a, 1, max_tensor_deg + 2, cap);
    out.even_certified = out.even == out.even_at_higher;
    out.odd_certified = out.odd == out.odd_at_higher;
    return out;
}

// ---- generalized trace and inclusion (Morita machinery) ----

/// Trace morphism CC_k(M_n(A)) -> CC_k(A): contracts the matrix indices
/// around the tensor cycle; the adjoined unit of M_n(A)~ is read as the
/// identity matrix.
inline TensorChain generalized_trace(const TensorChain& c) {
    const auto& M = c.algebra();
    const auto& prov = M->matrix_provenance();
    if (!prov) throw domain_error("generalized_trace: source is not a declared matrix algebra");
    const AlgebraPtr& A = prov->base;
    const std::size_t n = prov->n, d = A->dim(), dm = M->dim();
    const std::size_t k = c.degree();
    TensorChain out(A, k);

    for (const auto& [idx, coeff] : c.coeffs()) {
        auto legs = TensorChain::decode(dm, k, idx);
        // Decode each leg into (i, j, a); the unit leg stays symbolic.
        bool unit_led = (k >= 1 && legs[0] == dm);
        std::vector<std::size_t> ii(k + 1), jj(k + 1), aa(k + 1);
        bool ok = true;
        for (std::size_t m = (unit_led ? 1 : 0); m <= k; ++m) {
            std::size_t v = legs[m];
            aa[m] = v % d;
            std::size_t e = v / d;
            ii[m] = e / n;
            jj[m] = e % n;
        }
        if (k == 0) {
            // plain matrix trace
            if (!unit_led && ii[0] == jj[0]) out.add_term({aa[0]}, coeff);
            continue;
        }
        if (unit_led) {
            // I (x) x_1 (x) ... (x) x_k: indices must close among legs 1..k.
            for (std::size_t m = 1; m < k; ++m)
                if (jj[m] != ii[m + 1]) { ok = false; break; }
            if (ok && jj[k] != ii[1]) ok = false;
            if (ok) {
                std::vector<std::size_t> t(k + 1);
                t[0] = d;  // unit of A~
                for (std::size_t m = 1; m <= k; ++m) t[m] = aa[m];
                out.add_term(t, coeff);
            }
        } else {
            for (std::size_t m = 0; m < k; ++m)
                if (jj[m] != ii[m + 1]) { ok = false; break; }
            if (ok && jj[k] != ii[0]) ok = false;
            if (ok) {
                std::vector<std::size_t> t(k + 1);
                for (std::size_t m = 0; m <= k; ++m) t[m] = aa[m];
                out.add_term(t, coeff);
            }
        }
    }
    return out;
}

/// Inclusion CC_k(A) -> CC_k(M_n(A)): every leg a is sent to a * E_11 (the
/// rank-one corner), the adjoined unit to the adjoined unit.
inline TensorChain inclusion_map(const TensorChain& c, const AlgebraPtr& M) {
    const auto& prov = M->matrix_provenance();
    if (!prov) throw domain_error("inclusion_map: target is not a declared matrix algebra");
    const AlgebraPtr& A = prov->base;
    if (A.get() != c.algebra().get())
        throw domain_error("inclusion_map: base algebra mismatch");
    const std::size_t d = A->dim(), dm = M->dim();
    const std::size_t k = c.degree();
    TensorChain out(M, k);
    for (const auto& [idx, coeff] : c.coeffs()) {
        auto legs = TensorChain::decode(d, k, idx);
        std::vector<std::size_t> t(k + 1);
        for (std::size_t m = 0; m <= k; ++m) {
            if (k >= 1 && m == 0 && legs[0] == d) t[0] = dm;      // unit -> unit
            else t[m] = legs[m];                                   // E_11 block: (0,0,a) = a
        }
        out.add_term(t, coeff);
    }
    return out;
}

/// The trace morphism as an explicit ChainMap between Hochschild complexes.
inline ChainMap trace_chain_map(const AlgebraPtr& M, std::size_t max_deg,
                                std::uint64_t cap = kDefaultCoordCap) {
    const auto& prov = M->matrix_provenance();
    if (!prov) throw domain_error("trace_chain_map: not a declared matrix algebra");
    const AlgebraPtr& A = prov->base;
    ChainMap f;
    f.source = hochschild_complex(M, max_deg, cap);
    f.target = hochschild_complex(A, max_deg, cap);
    for (std::size_t k = 0; k <= max_deg; ++k) {
        std::vector<std::tuple<std::size_t, std::size_t, Rational>> ts;
        for (std::uint64_t col = 0; col < cc_dim(*M, k); ++col) {
            TensorChain unit_chain(M, k);
            unit_chain.add(col, Rational(1));
            auto tr = generalized_trace(unit_chain);
            for (const auto& [row, v] : tr.coeffs())
                ts.push_back({static_cast<std::size_t>(row), static_cast<std::size_t>(col), v});
        }
        f.components[static_cast<int>(k)] = SparseRationalMatrix::from_triplets(
            static_cast<std::size_t>(cc_dim(*A, k)), static_cast<std::size_t>(cc_dim(*M, k)),
            std::move(ts));
    }
    return f;
}

// ---- bar complex ----

struct BarExactness {
    // degree k -> (dim ker b'_k, rank b'_{k+1}, exact?)
    struct Line {
        std::size_t kernel_dim = 0, image_rank = 0;
        bool exact = false;
    };
    std::map<std::size_t, Line> lines;
    bool all_exact = true;
};

/// Matrix of the bar differential b' : A^{(x)k} -> A^{(x)k-1}.
inline SparseRationalMatrix bar_matrix(const AlgebraPtr& a, std::size_t k,
                                       std::uint64_t cap = kDefaultCoordCap) {
    const std::size_t d = a->dim();
    std::uint64_t cols = 1, rows = 1;
    for (std::size_t i = 0; i < k; ++i) cols *= d;
    for (std::size_t i = 0; i + 1 < k; ++i) rows *= d;
    if (cols > cap) throw resource_error("bar complex exceeds cap");
    if (k <= 1) return SparseRationalMatrix(0, static_cast<std::size_t>(cols));
    std::vector<std::tuple<std::size_t, std::size_t, Rational>> ts;
    std::vector<std::size_t> legs(k), out(k - 1);
    for (std::uint64_t col = 0; col < cols; ++col) {
        std::uint64_t x = col;
        for (std::size_t i = k; i-- > 0;) {
            legs[i] = static_cast<std::size_t>(x % d);
            x /= d;
        }
        for (std::size_t j = 0; j + 1 < k; ++j) {
            int sign = (j % 2 == 0) ? +1 : -1;
            std::size_t w = 0;
            for (std::size_t i = 0; i < k; ++i) {
                if (i == j + 1) continue;
                out[w++] = legs[i];
            }
            for (const auto& [m, cval] : a->product(legs[j], legs[j + 1])) {
                out[j] = m;
                std::uint64_t row = 0;
                for (std::size_t i = 0; i < k - 1; ++i) row = row * d + out[i];
                ts.push_back({static_cast<std::size_t>(row), static_cast<std::size_t>(col),
                              sign > 0 ? cval : -cval});
            }
        }
    }
    return SparseRationalMatrix::from_triplets(static_cast<std::size_t>(rows),
                                               static_cast<std::size_t>(cols), std::move(ts));
}

/// Exactness report of the (b') complex in degrees 1..max_deg-1. A unital
/// algebra is contractible here; non-unital inputs may fail and the failure
/// is reported as-is.
inline BarExactness bar_acyclicity_probe(const AlgebraPtr& a, std::size_t max_deg,
                                         std::uint64_t cap = kDefaultCoordCap) {
    BarExactness out;
    std::map<std::size_t, std::size_t> ranks;
    std::map<std::size_t, std::uint64_t> dims;
    for (std::size_t k = 1; k <= max_deg; ++k) {
        std::uint64_t n = 1;
        for (std::size_t i = 0; i < k; ++i) n *= a->dim();
        dims[k] = n;
        ranks[k] = rank(bar_matrix(a, k, cap));
    }
    for (std::size_t k = 1; k + 1 <= max_deg; ++k) {
        BarExactness::Line line;
        line.kernel_dim = static_cast<std::size_t>(dims[k]) - ranks[k];
        line.image_rank = ranks[k + 1];
        line.exact = line.kernel_dim == line.image_rank;
        if (!line.exact) out.all_exact = false;
        out.lines[k] = line;
    }
    return out;
}

}  // namespace ucyc
