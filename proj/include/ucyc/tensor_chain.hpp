#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "ucyc/algebra.hpp"

namespace ucyc {

/// Chain in the reduced complex CC_k(A) = A~ (x) A^{(x)k} (CC_0 = A).
///
/// Basis tensors are encoded as flat indices: the first leg ranges over
/// 0..dim(A) with dim(A) standing for the adjoined unit (degree >= 1 only),
/// the remaining k legs over 0..dim(A)-1, radix dim(A), leg 0 most
/// significant.
class TensorChain {
public:
    TensorChain(AlgebraPtr algebra, std::size_t degree)
        : algebra_(std::move(algebra)), degree_(degree) {}

    const AlgebraPtr& algebra() const { return algebra_; }
    std::size_t degree() const { return degree_; }
    const std::map<std::uint64_t, Rational>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    void add(std::uint64_t index, const Rational& c) {
        if (c.is_zero()) return;
        auto [it, fresh] = coeffs_.try_emplace(index, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) coeffs_.erase(it);
        }
    }

    void add_term(const std::vector<std::size_t>& legs, const Rational& c) {
        add(encode(algebra_->dim(), legs), c);
    }

    TensorChain& operator+=(const TensorChain& o) {
        for (const auto& [i, c] : o.coeffs_) add(i, c);
        return *this;
    }

    TensorChain& operator*=(const Rational& s) {
        if (s.is_zero()) {
            coeffs_.clear();
            return *this;
        }
        for (auto& [i, c] : coeffs_) c *= s;
        return *this;
    }

    friend TensorChain operator*(const Rational& s, TensorChain c) { return c *= s; }

    friend TensorChain operator-(TensorChain a, const TensorChain& b) {
        for (const auto& [i, c] : b.coeffs_) a.add(i, -c);
        return a;
    }

    bool operator==(const TensorChain& o) const {
        return degree_ == o.degree_ && coeffs_ == o.coeffs_;
    }

    static std::uint64_t encode(std::size_t d, const std::vector<std::size_t>& legs) {
        std::uint64_t idx = legs[0];
        for (std::size_t i = 1; i < legs.size(); ++i) idx = idx * d + legs[i];
        return idx;
    }

    static std::vector<std::size_t> decode(std::size_t d, std::size_t degree, std::uint64_t idx) {
        std::vector<std::size_t> legs(degree + 1);
        for (std::size_t i = degree; i >= 1; --i) {
            legs[i] = static_cast<std::size_t>(idx % d);
            idx /= d;
        }
        legs[0] = static_cast<std::size_t>(idx);
        return legs;
    }

    std::string str() const {
        const std::size_t d = algebra_->dim();
        std::string s;
        for (const auto& [i, c] : coeffs_) {
            if (!s.empty()) s += " + ";
            s += c.str();
            auto legs = decode(d, degree_, i);
            for (std::size_t m = 0; m < legs.size(); ++m) {
                s += (m == 0 ? "*" : "(x)");
                s += legs[m] == d ? std::string("1~") : algebra_->label(legs[m]);
            }
        }
        return s.empty() ? "0" : s;
    }

private:
    AlgebraPtr algebra_;
    std::size_t degree_;
    std::map<std::uint64_t, Rational> coeffs_;
};

/// Coordinate dimension of CC_k(A).
inline std::uint64_t cc_dim(const FDAlgebra& a, std::size_t k) {
    std::uint64_t d = a.dim();
    if (k == 0) return d;
    std::uint64_t n = d + 1;
    for (std::size_t i = 0; i < k; ++i) n *= d;
    return n;
}

namespace detail {

/// Expands b on one basis tensor; `emit(flat_index_out, value)` receives the
/// terms of the image in CC_{k-1}.
template <typename Emit>
void expand_b(const FDAlgebra& A, std::size_t k, std::uint64_t idx, Emit&& emit) {
    if (k == 0) return;
    const std::size_t d = A.dim();
    auto legs = TensorChain::decode(d, k, idx);
    const std::size_t unit = d;
    std::vector<std::size_t> out(k);

    auto emit_merged = [&](std::size_t pos_removed, const SparseVec& prod, std::size_t merged_pos,
                           int sign) {
        // Build the leg layout once, then loop over the product expansion.
        // merged_pos is where the product lands in the output tensor.
        std::size_t w = 0;
        for (std::size_t i = 0; i <= k; ++i) {
            if (i == pos_removed) continue;
            out[w++] = legs[i];
        }
        for (const auto& [m, c] : prod) {
            out[merged_pos] = m;
            emit(TensorChain::encode(d, out), sign > 0 ? c : -c);
        }
    };

    // j = 0: merge legs 0 and 1.
    if (legs[0] == unit) {
        // 1~ * a_1 = a_1
        std::size_t w = 0;
        out[w++] = legs[1];
        for (std::size_t i = 2; i <= k; ++i) out[w++] = legs[i];
        emit(TensorChain::encode(d, out), Rational(1));
    } else {
        emit_merged(1, A.product(legs[0], legs[1]), 0, +1);
    }
    // j = 1 .. k-1: merge legs j and j+1.
    for (std::size_t j = 1; j + 1 <= k; ++j) {
        int sign = (j % 2 == 0) ? +1 : -1;
        emit_merged(j + 1, A.product(legs[j], legs[j + 1]), j, sign);
    }
    // wrap: merge leg k into leg 0, sign (-1)^k.
    {
        int sign = (k % 2 == 0) ? +1 : -1;
        if (legs[0] == unit) {
            std::size_t w = 0;
            out[w++] = legs[k];
            for (std::size_t i = 1; i < k; ++i) out[w++] = legs[i];
            emit(TensorChain::encode(d, out), Rational(sign));
        } else {
            // product a_k * a_0 lands in leg 0; legs 1..k-1 keep their order.
            std::size_t w = 1;
            for (std::size_t i = 1; i < k; ++i) out[w++] = legs[i];
            for (const auto& [m, c] : A.product(legs[k], legs[0])) {
                out[0] = m;
                emit(TensorChain::encode(d, out), sign > 0 ? c : -c);
            }
        }
    }
}

/// Expands Connes' B on one basis tensor: zero on unit-led tensors, otherwise
/// the signed cyclic sum landing in the unit-led part one degree up.
template <typename Emit>
void expand_B(const FDAlgebra& A, std::size_t k, std::uint64_t idx, Emit&& emit) {
    const std::size_t d = A.dim();
    auto legs = TensorChain::decode(d, k, idx);
    const std::size_t unit = d;
    if (k >= 1 && legs[0] == unit) return;
    std::vector<std::size_t> out(k + 2);
    out[0] = unit;
    for (std::size_t i = 0; i <= k; ++i) {
        // rotation starting at leg i: a_i, ..., a_k, a_0, ..., a_{i-1}
        std::size_t w = 1;
        for (std::size_t m = i; m <= k; ++m) out[w++] = legs[m];
        for (std::size_t m = 0; m < i; ++m) out[w++] = legs[m];
        int sign = ((i * k) % 2 == 0) ? +1 : -1;
        emit(TensorChain::encode(d, out), Rational(sign));
    }
}

}  // namespace detail

inline TensorChain apply_b(const TensorChain& c) {
    if (c.degree() == 0) return TensorChain(c.algebra(), 0);
    TensorChain out(c.algebra(), c.degree() - 1);
    for (const auto& [idx, coeff] : c.coeffs()) {
        const Rational& cc = coeff;
        detail::expand_b(*c.algebra(), c.degree(), idx,
                         [&](std::uint64_t i, const Rational& v) { out.add(i, cc * v); });
    }
    return out;
}

inline TensorChain apply_B(const TensorChain& c) {
    TensorChain out(c.algebra(), c.degree() + 1);
    for (const auto& [idx, coeff] : c.coeffs()) {
        const Rational& cc = coeff;
        detail::expand_B(*c.algebra(), c.degree(), idx,
                         [&](std::uint64_t i, const Rational& v) { out.add(i, cc * v); });
    }
    return out;
}

}  // namespace ucyc
