#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ucyc/rational.hpp"

namespace ucyc {

/// Sparse vector in a fixed basis: (index, coefficient) pairs sorted by index.
using SparseVec = std::vector<std::pair<std::size_t, Rational>>;

inline void sparse_add(SparseVec& acc, const SparseVec& v, const Rational& scale) {
    if (scale.is_zero() || v.empty()) return;
    SparseVec out;
    out.reserve(acc.size() + v.size());
    std::size_t i = 0, j = 0;
    while (i < acc.size() || j < v.size()) {
        if (j == v.size() || (i < acc.size() && acc[i].first < v[j].first)) {
            out.push_back(acc[i++]);
        } else if (i == acc.size() || v[j].first < acc[i].first) {
            out.push_back({v[j].first, scale * v[j].second});
            ++j;
        } else {
            Rational val = acc[i].second + scale * v[j].second;
            if (!val.is_zero()) out.push_back({acc[i].first, val});
            ++i;
            ++j;
        }
    }
    acc = std::move(out);
}

inline SparseVec sparse_from_dense(const std::vector<Rational>& v) {
    SparseVec out;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero()) out.push_back({i, v[i]});
    return out;
}

struct AlgebraCheck {
    bool ok = true;
    std::string message;
};

class FDAlgebra;
std::shared_ptr<const FDAlgebra> matrix_algebra(std::shared_ptr<const FDAlgebra> a, std::size_t n);

/// Finite-dimensional associative algebra over Q given by structure constants
/// on a distinguished basis; optionally unital.
class FDAlgebra {
public:
    FDAlgebra(std::vector<std::string> labels,
              std::map<std::pair<std::size_t, std::size_t>, SparseVec> products,
              std::optional<std::vector<Rational>> unit = std::nullopt)
        : labels_(std::move(labels)), unit_(std::move(unit)) {
        dim_ = labels_.size();
        table_.assign(dim_ * dim_, SparseVec{});
        for (auto& [key, v] : products) {
            if (key.first >= dim_ || key.second >= dim_)
                throw domain_error("FDAlgebra: product index out of range");
            for (const auto& [k, c] : v)
                if (k >= dim_) throw domain_error("FDAlgebra: product coefficient out of range");
            table_[key.first * dim_ + key.second] = std::move(v);
        }
        if (unit_ && unit_->size() != dim_)
            throw domain_error("FDAlgebra: unit dimension mismatch");
    }

    std::size_t dim() const { return dim_; }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(std::size_t i) const { return labels_[i]; }
    bool has_unit() const { return unit_.has_value(); }
    const std::vector<Rational>& unit() const {
        if (!unit_) throw domain_error("FDAlgebra: no unit declared");
        return *unit_;
    }

    /// e_i * e_j in basis coordinates.
    const SparseVec& product(std::size_t i, std::size_t j) const { return table_[i * dim_ + j]; }

    SparseVec multiply(const SparseVec& a, const SparseVec& b) const {
        SparseVec acc;
        for (const auto& [i, x] : a)
            for (const auto& [j, y] : b) sparse_add(acc, product(i, j), x * y);
        return acc;
    }

    /// Exhaustive associativity and unit axioms, exact; names the first
    /// violating triple.
    AlgebraCheck validate() const {
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = 0; j < dim_; ++j)
                for (std::size_t k = 0; k < dim_; ++k) {
                    SparseVec lhs;  // (e_i e_j) e_k
                    for (const auto& [m, c] : product(i, j)) sparse_add(lhs, product(m, k), c);
                    SparseVec rhs;  // e_i (e_j e_k)
                    for (const auto& [m, c] : product(j, k)) sparse_add(rhs, product(i, m), c);
                    sparse_add(lhs, rhs, Rational(-1));
                    if (!lhs.empty())
                        return {false, "associativity fails on triple (" + labels_[i] + ", " +
                                           labels_[j] + ", " + labels_[k] + ")"};
                }
        if (unit_) {
            SparseVec u = sparse_from_dense(*unit_);
            for (std::size_t i = 0; i < dim_; ++i) {
                SparseVec e{{i, Rational(1)}};
                SparseVec left = multiply(u, e);
                SparseVec right = multiply(e, u);
                sparse_add(left, e, Rational(-1));
                sparse_add(right, e, Rational(-1));
                if (!left.empty() || !right.empty())
                    return {false, "declared unit is not a two-sided unit at basis " + labels_[i]};
            }
        }
        return {};
    }

    /// Exact exhaustive commutativity detection (never trusted by declaration).
    bool is_commutative() const {
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = i + 1; j < dim_; ++j) {
                SparseVec d = product(i, j);
                sparse_add(d, product(j, i), Rational(-1));
                if (!d.empty()) return false;
            }
        return true;
    }

    struct MatrixProvenance {
        std::shared_ptr<const FDAlgebra> base;
        std::size_t n = 0;
    };
    const std::optional<MatrixProvenance>& matrix_provenance() const { return matrix_prov_; }

    friend std::shared_ptr<const FDAlgebra> matrix_algebra(std::shared_ptr<const FDAlgebra> a,
                                                           std::size_t n);

private:
    std::size_t dim_;
    std::vector<std::string> labels_;
    std::vector<SparseVec> table_;
    std::optional<std::vector<Rational>> unit_;
    std::optional<MatrixProvenance> matrix_prov_;
};

using AlgebraPtr = std::shared_ptr<const FDAlgebra>;

/// A~ = A (+) Q with (a, s)(b, t) = (ab + sb + ta, st). The original algebra
/// sits as the ideal spanned by indices 0..dim-1; the adjoined unit is the
/// last basis element.
inline AlgebraPtr unitization(const AlgebraPtr& a) {
    std::size_t d = a->dim();
    std::vector<std::string> labels = a->labels();
    labels.push_back("1~");
    std::map<std::pair<std::size_t, std::size_t>, SparseVec> prod;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            const auto& v = a->product(i, j);
            if (!v.empty()) prod[{i, j}] = v;
        }
    for (std::size_t i = 0; i < d; ++i) {
        prod[{i, d}] = SparseVec{{i, Rational(1)}};
        prod[{d, i}] = SparseVec{{i, Rational(1)}};
    }
    prod[{d, d}] = SparseVec{{d, Rational(1)}};
    std::vector<Rational> unit(d + 1, Rational(0));
    unit[d] = Rational(1);
    return std::make_shared<FDAlgebra>(std::move(labels), std::move(prod), std::move(unit));
}

/// M_n(A) with basis E_{ij} (x) e_a, index = (i*n + j)*dim(A) + a.
/// Matrix-unit calculus: (E_{ij} (x) e_a)(E_{kl} (x) e_b) = delta_{jk} E_{il} (x) e_a e_b.
inline AlgebraPtr matrix_algebra(AlgebraPtr a, std::size_t n) {
    if (n < 1) throw domain_error("matrix_algebra: n must be >= 1");
    std::size_t d = a->dim();
    std::vector<std::string> labels;
    labels.reserve(n * n * d);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t s = 0; s < d; ++s)
                labels.push_back("E" + std::to_string(i + 1) + std::to_string(j + 1) + "*" +
                                 a->label(s));
    auto idx = [&](std::size_t i, std::size_t j, std::size_t s) { return (i * n + j) * d + s; };
    std::map<std::pair<std::size_t, std::size_t>, SparseVec> prod;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l = 0; l < n; ++l) {
                    if (j != k) continue;
                    for (std::size_t s = 0; s < d; ++s)
                        for (std::size_t t = 0; t < d; ++t) {
                            const auto& v = a->product(s, t);
                            if (v.empty()) continue;
                            SparseVec out;
                            for (const auto& [m, c] : v) out.push_back({idx(i, l, m), c});
                            prod[{idx(i, j, s), idx(k, l, t)}] = std::move(out);
                        }
                }
    std::optional<std::vector<Rational>> unit;
    if (a->has_unit()) {
        std::vector<Rational> u(n * n * d, Rational(0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t s = 0; s < d; ++s) u[idx(i, i, s)] = a->unit()[s];
        unit = std::move(u);
    }
    auto out = std::make_shared<FDAlgebra>(std::move(labels), std::move(prod), std::move(unit));
    out->matrix_prov_ = FDAlgebra::MatrixProvenance{std::move(a), n};
    return out;
}

// ---- standard desk algebras ----

/// The ground field Q as a unital algebra on one basis element.
inline AlgebraPtr ground_field() {
    std::map<std::pair<std::size_t, std::size_t>, SparseVec> prod;
    prod[{0, 0}] = SparseVec{{0, Rational(1)}};
    return std::make_shared<FDAlgebra>(std::vector<std::string>{"1"}, std::move(prod),
                                       std::vector<Rational>{Rational(1)});
}

/// Q[x]/(x^2), basis {1, x}.
inline AlgebraPtr dual_numbers() {
    std::map<std::pair<std::size_t, std::size_t>, SparseVec> prod;
    prod[{0, 0}] = SparseVec{{0, Rational(1)}};
    prod[{0, 1}] = SparseVec{{1, Rational(1)}};
    prod[{1, 0}] = SparseVec{{1, Rational(1)}};
    return std::make_shared<FDAlgebra>(std::vector<std::string>{"1", "x"}, std::move(prod),
                                       std::vector<Rational>{Rational(1), Rational(0)});
}

/// Q[x]/(x^2 - 1), basis {1, x}; isomorphic to Q x Q.
inline AlgebraPtr split_quadratic() {
    std::map<std::pair<std::size_t, std::size_t>, SparseVec> prod;
    prod[{0, 0}] = SparseVec{{0, Rational(1)}};
    prod[{0, 1}] = SparseVec{{1, Rational(1)}};
    prod[{1, 0}] = SparseVec{{1, Rational(1)}};
    prod[{1, 1}] = SparseVec{{0, Rational(1)}};
    return std::make_shared<FDAlgebra>(std::vector<std::string>{"1", "x"}, std::move(prod),
                                       std::vector<Rational>{Rational(1), Rational(0)});
}

/// One-dimensional algebra span{x} with x^2 = 0 (non-unital).
inline AlgebraPtr nilpotent_line() {
    std::map<std::pair<std::size_t, std::size_t>, SparseVec> prod;
    return std::make_shared<FDAlgebra>(std::vector<std::string>{"x"}, std::move(prod));
}

/// Product algebra A x B (componentwise multiplication).
inline AlgebraPtr product_algebra(const AlgebraPtr& a, const AlgebraPtr& b) {
    std::size_t da = a->dim(), db = b->dim();
    std::vector<std::string> labels;
    for (const auto& l : a->labels()) labels.push_back("L." + l);
    for (const auto& l : b->labels()) labels.push_back("R." + l);
    std::map<std::pair<std::size_t, std::size_t>, SparseVec> prod;
    for (std::size_t i = 0; i < da; ++i)
        for (std::size_t j = 0; j < da; ++j) {
            const auto& v = a->product(i, j);
            if (!v.empty()) prod[{i, j}] = v;
        }
    for (std::size_t i = 0; i < db; ++i)
        for (std::size_t j = 0; j < db; ++j) {
            const auto& v = b->product(i, j);
            if (v.empty()) continue;
            SparseVec out;
            for (const auto& [k, c] : v) out.push_back({da + k, c});
            prod[{da + i, da + j}] = std::move(out);
        }
    std::optional<std::vector<Rational>> unit;
    if (a->has_unit() && b->has_unit()) {
        std::vector<Rational> u(da + db, Rational(0));
        for (std::size_t i = 0; i < da; ++i) u[i] = a->unit()[i];
        for (std::size_t i = 0; i < db; ++i) u[da + i] = b->unit()[i];
        unit = std::move(u);
    }
    return std::make_shared<FDAlgebra>(std::move(labels), std::move(prod), std::move(unit));
}

}  // namespace ucyc
