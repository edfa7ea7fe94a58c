#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ucyc/elimination.hpp"
#include "ucyc/rational.hpp"
#include "ucyc/sparse_matrix.hpp"

namespace ucyc {

struct Violation {
    int degree = 0;
    std::size_t row = 0, col = 0;
    std::string message;
};

struct ValidationReport {
    bool ok = true;
    std::optional<Violation> violation;

    static ValidationReport pass() { return {}; }
    static ValidationReport fail(int degree, std::size_t row, std::size_t col, std::string msg) {
        ValidationReport r;
        r.ok = false;
        r.violation = Violation{degree, row, col, std::move(msg)};
        return r;
    }
};

struct HomologyResult {
    std::map<int, std::size_t> dims;
    std::map<int, bool> certified;  // false at truncated window boundaries
};

/// Bounded chain complex with degree -1 differentials d_k : C_k -> C_{k-1}.
///
/// Degrees outside the window are zero unless the window is flagged as
/// truncated, in which case homology at the affected boundary degree is
/// reported but marked uncertified.
class ChainComplex {
public:
    ChainComplex() : min_deg_(0), max_deg_(-1) {}
    ChainComplex(int min_deg, int max_deg) : min_deg_(min_deg), max_deg_(max_deg) {}

    int min_deg() const { return min_deg_; }
    int max_deg() const { return max_deg_; }

    void set_dim(int k, std::size_t n) {
        if (k < min_deg_ || k > max_deg_) throw domain_error("ChainComplex: degree outside window");
        dims_[k] = n;
    }

    std::size_t dim(int k) const {
        auto it = dims_.find(k);
        return it == dims_.end() ? 0 : it->second;
    }

    /// d_k : C_k -> C_{k-1}.
    void set_differential(int k, SparseRationalMatrix m) {
        if (m.cols() != dim(k) || m.rows() != dim(k - 1))
            throw domain_error("ChainComplex: differential shape mismatch at degree " +
                               std::to_string(k));
        diff_[k] = std::move(m);
    }

    SparseRationalMatrix differential(int k) const {
        auto it = diff_.find(k);
        if (it != diff_.end()) return it->second;
        return SparseRationalMatrix(dim(k - 1), dim(k));
    }

    void set_truncated(bool low, bool high) {
        truncated_low_ = low;
        truncated_high_ = high;
    }
    bool truncated_low() const { return truncated_low_; }
    bool truncated_high() const { return truncated_high_; }

    void set_labels(int k, std::vector<std::string> ls) {
        if (ls.size() != dim(k)) throw domain_error("ChainComplex: label count mismatch");
        labels_[k] = std::move(ls);
    }
    const std::vector<std::string>* labels(int k) const {
        auto it = labels_.find(k);
        return it == labels_.end() ? nullptr : &it->second;
    }

    /// Checks shape coherence and d . d = 0 exactly; pinpoints the first
    /// failing degree and entry.
    ValidationReport validate() const {
        for (int k = min_deg_; k <= max_deg_; ++k) {
            auto it = diff_.find(k);
            if (it == diff_.end()) continue;
            if (it->second.cols() != dim(k) || it->second.rows() != dim(k - 1))
                return ValidationReport::fail(k, 0, 0, "differential shape mismatch");
        }
        for (int k = min_deg_ + 2; k <= max_deg_; ++k) {
            auto sq = differential(k - 1) * differential(k);
            if (auto pos = sq.first_nonzero()) {
                return ValidationReport::fail(
                    k, pos->first, pos->second,
                    "d.d != 0 from degree " + std::to_string(k) + ", entry (" +
                        std::to_string(pos->first) + "," + std::to_string(pos->second) + ") = " +
                        sq.get(pos->first, pos->second).str());
            }
        }
        return ValidationReport::pass();
    }

    /// dim H_k = dim ker d_k - rank d_{k+1} for every window degree. Degrees
    /// whose incoming or outgoing differential was truncated away are flagged.
    HomologyResult homology() const {
        HomologyResult out;
        std::map<int, std::size_t> ranks;
        for (int k = min_deg_; k <= max_deg_ + 1; ++k) {
            if (dim(k) == 0 || dim(k - 1) == 0) {
                ranks[k] = 0;
                continue;
            }
            ranks[k] = rank(differential(k));
        }
        for (int k = min_deg_; k <= max_deg_; ++k) {
            std::size_t h = dim(k) - ranks[k] - ranks[k + 1];
            out.dims[k] = h;
            bool cert = true;
            if (truncated_low_ && k == min_deg_) cert = false;
            if (truncated_high_ && k == max_deg_) cert = false;
            out.certified[k] = cert;
        }
        return out;
    }

private:
    int min_deg_, max_deg_;
    std::map<int, std::size_t> dims_;
    std::map<int, SparseRationalMatrix> diff_;
    std::map<int, std::vector<std::string>> labels_;
    bool truncated_low_ = false, truncated_high_ = false;
};

/// Degree-preserving map of complexes; f . d = d . f exactly.
struct ChainMap {
    ChainComplex source, target;
    std::map<int, SparseRationalMatrix> components;  // degree k -> matrix C^src_k -> C^tgt_k

    SparseRationalMatrix component(int k) const {
        auto it = components.find(k);
        if (it != components.end()) return it->second;
        return SparseRationalMatrix(target.dim(k), source.dim(k));
    }

    ValidationReport validate() const {
        for (const auto& [k, m] : components)
            if (m.cols() != source.dim(k) || m.rows() != target.dim(k))
                return ValidationReport::fail(k, 0, 0, "chain map component shape mismatch");
        int lo = std::max(source.min_deg(), target.min_deg()) + 1;
        int hi = std::min(source.max_deg(), target.max_deg());
        for (int k = lo; k <= hi; ++k) {
            auto lhs = component(k - 1) * source.differential(k);
            auto rhs = target.differential(k) * component(k);
            auto delta = lhs - rhs;
            if (auto pos = delta.first_nonzero())
                return ValidationReport::fail(k, pos->first, pos->second,
                                              "f.d != d.f at degree " + std::to_string(k));
        }
        return ValidationReport::pass();
    }
};

/// Cone(f)_k = C^src_{k-1} (+) C^tgt_k with d(x, y) = (-dx, f(x) + dy).
inline ChainComplex mapping_cone(const ChainMap& f) {
    const ChainComplex& s = f.source;
    const ChainComplex& t = f.target;
    int lo = std::min(s.min_deg() + 1, t.min_deg());
    int hi_exact = std::max(s.max_deg() + 1, t.max_deg());
    bool trunc = s.truncated_high() || t.truncated_high();
    // With truncated inputs the cone is only complete up to the degree where
    // both blocks are inside their windows.
    int hi = trunc ? std::min(s.max_deg() + 1, t.max_deg()) : hi_exact;
    ChainComplex cone(lo, hi);
    for (int k = lo; k <= hi; ++k) cone.set_dim(k, s.dim(k - 1) + t.dim(k));
    for (int k = lo + 1; k <= hi; ++k) {
        std::size_t rows = cone.dim(k - 1), cols = cone.dim(k);
        std::vector<std::tuple<std::size_t, std::size_t, Rational>> ts;
        auto ds = s.differential(k - 1);  // src_{k-1} -> src_{k-2}
        for (std::size_t r = 0; r < ds.rows(); ++r)
            for (const auto& [c, v] : ds.row(r)) ts.push_back({r, c, -v});
        auto fk = f.component(k - 1);  // src_{k-1} -> tgt_{k-1}
        for (std::size_t r = 0; r < fk.rows(); ++r)
            for (const auto& [c, v] : fk.row(r)) ts.push_back({s.dim(k - 2) + r, c, v});
        auto dt = t.differential(k);  // tgt_k -> tgt_{k-1}
        for (std::size_t r = 0; r < dt.rows(); ++r)
            for (const auto& [c, v] : dt.row(r)) ts.push_back({s.dim(k - 2) + r, s.dim(k - 1) + c, v});
        cone.set_differential(k, SparseRationalMatrix::from_triplets(rows, cols, std::move(ts)));
    }
    cone.set_truncated(s.truncated_low() || t.truncated_low(), trunc);
    return cone;
}

struct QuasiIsoResult {
    bool is_quasi_iso = false;          // over all certified degrees
    bool fully_certified = false;       // no degree in the test range was truncated
    std::map<int, std::size_t> cone_homology;
    std::map<int, bool> certified;
};

/// True iff the mapping cone of f is exact in every certified window degree.
inline QuasiIsoResult cone_quasi_iso_test(const ChainMap& f) {
    auto cone = mapping_cone(f);
    auto h = cone.homology();
    QuasiIsoResult out;
    out.cone_homology = h.dims;
    out.certified = h.certified;
    out.is_quasi_iso = true;
    out.fully_certified = true;
    for (const auto& [k, d] : h.dims) {
        if (!h.certified[k]) {
            out.fully_certified = false;
            continue;
        }
        if (d != 0) out.is_quasi_iso = false;
    }
    return out;
}

}  // namespace ucyc
