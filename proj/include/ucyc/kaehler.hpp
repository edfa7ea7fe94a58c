#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "ucyc/algebra.hpp"
#include "ucyc/linear_span.hpp"

namespace ucyc {

/// Module of Kaehler k-forms of a commutative unital algebra, presented by
/// generators e_a * de_{j1} ^ ... ^ de_{jk} (j1 < ... < jk) modulo the
/// A-module span of the Leibniz relations d(e_i e_j) - e_i de_j - e_j de_i
/// and d(1) = 0.
class KaehlerModule {
public:
    KaehlerModule(AlgebraPtr base, std::size_t k)
        : base_(std::move(base)), k_(k), relations_(0) {
        if (!base_->is_commutative())
            throw domain_error("KaehlerModule: algebra is not commutative");
        if (!base_->has_unit()) throw domain_error("KaehlerModule: algebra is not unital");
        const std::size_t d = base_->dim();

        std::vector<std::size_t> subset;
        build_subsets(d, k_, 0, subset);
        for (std::size_t g = 0; g < gens_.size(); ++g) gen_index_[gens_[g]] = g;

        relations_ = RationalSpan(gens_.size());
        if (k_ >= 1) {
            std::vector<std::size_t> sub1;
            std::vector<std::vector<std::size_t>> wedges;
            collect_subsets(d, k_ - 1, 0, sub1, wedges);

            // rho_{ij} = sum_m c_{ij}^m de_m - e_i de_j - e_j de_i, with
            // A-coefficients; saturate by all basis multiples e_a * rho_{ij}.
            for (std::size_t a = 0; a < d; ++a) {
                for (std::size_t i = 0; i < d; ++i)
                    for (std::size_t j = i; j < d; ++j) {
                        std::vector<Rational> rel(gens_.size(), Rational(0));
                        for (const auto& [m, c] : base_->product(i, j))
                            add_coeff_term(rel, {{a, c}}, m, wedges);
                        SparseVec ai = base_->product(a, i);
                        SparseVec aj = base_->product(a, j);
                        add_coeff_term(rel, aj, i, wedges, Rational(-1));
                        add_coeff_term(rel, ai, j, wedges, Rational(-1));
                        relations_.insert(rel);
                    }
                // d(1) = 0
                std::vector<Rational> rel(gens_.size(), Rational(0));
                for (std::size_t m = 0; m < d; ++m) {
                    const Rational& um = base_->unit()[m];
                    if (!um.is_zero()) add_coeff_term(rel, {{a, um}}, m, wedges);
                }
                relations_.insert(rel);
            }
        }
    }

    const AlgebraPtr& base() const { return base_; }
    std::size_t form_degree() const { return k_; }
    std::size_t num_generators() const { return gens_.size(); }
    std::size_t dim() const { return gens_.size() - relations_.rank(); }

    std::vector<Rational> zero_element() const {
        return std::vector<Rational>(gens_.size(), Rational(0));
    }

    /// Adds coeff * e_a de_{J} to elt; J may be unsorted and may repeat
    /// (repeats vanish, sorting contributes the alternating sign).
    void add_monomial(std::vector<Rational>& elt, std::size_t a, std::vector<std::size_t> J,
                      const Rational& coeff) const {
        if (coeff.is_zero()) return;
        if (J.size() != k_) throw domain_error("KaehlerModule: wrong wedge length");
        int sign = sort_sign(J);
        if (sign == 0) return;
        auto it = gen_index_.find({a, J});
        if (it == gen_index_.end()) throw domain_error("KaehlerModule: unknown generator");
        elt[it->second] += Rational(sign) * coeff;
    }

    /// Canonical representative modulo the relation span.
    std::vector<Rational> reduce(const std::vector<Rational>& elt) const {
        return relations_.reduce(elt);
    }

    bool is_zero(const std::vector<Rational>& elt) const {
        for (const auto& c : reduce(elt))
            if (!c.is_zero()) return false;
        return true;
    }

    std::string describe(const std::vector<Rational>& elt) const {
        auto red = reduce(elt);
        std::string s;
        for (std::size_t g = 0; g < red.size(); ++g) {
            if (red[g].is_zero()) continue;
            if (!s.empty()) s += " + ";
            s += red[g].str() + "*" + base_->label(gens_[g].first);
            for (std::size_t j : gens_[g].second) s += " d" + base_->label(j);
        }
        return s.empty() ? "0" : s;
    }

    const std::vector<std::pair<std::size_t, std::vector<std::size_t>>>& generators() const {
        return gens_;
    }

private:
    static int sort_sign(std::vector<std::size_t>& J) {
        int sign = 1;
        for (std::size_t i = 1; i < J.size(); ++i)
            for (std::size_t j = i; j > 0 && J[j - 1] >= J[j]; --j) {
                if (J[j - 1] == J[j]) return 0;
                std::swap(J[j - 1], J[j]);
                sign = -sign;
            }
        return sign;
    }

    void build_subsets(std::size_t d, std::size_t k, std::size_t start,
                       std::vector<std::size_t>& cur) {
        if (cur.size() == k) {
            for (std::size_t a = 0; a < d; ++a) gens_.push_back({a, cur});
            return;
        }
        for (std::size_t j = start; j < d; ++j) {
            cur.push_back(j);
            build_subsets(d, k, j + 1, cur);
            cur.pop_back();
        }
    }

    static void collect_subsets(std::size_t d, std::size_t k, std::size_t start,
                                std::vector<std::size_t>& cur,
                                std::vector<std::vector<std::size_t>>& out) {
        if (cur.size() == k) {
            out.push_back(cur);
            return;
        }
        for (std::size_t j = start; j < d; ++j) {
            cur.push_back(j);
            collect_subsets(d, k, j + 1, cur, out);
            cur.pop_back();
        }
    }

    /// Adds coeff * (sum_b v_b e_b) de_m ^ de_{J'} over all wedges J'.
    void add_coeff_term(std::vector<Rational>& rel, const SparseVec& v, std::size_t m,
                        const std::vector<std::vector<std::size_t>>& wedges,
                        const Rational& coeff = Rational(1)) {
        for (const auto& wedge : wedges) {
            for (const auto& [b, c] : v) {
                std::vector<std::size_t> J;
                J.reserve(k_);
                J.push_back(m);
                J.insert(J.end(), wedge.begin(), wedge.end());
                std::vector<std::size_t> Jcopy = J;
                int sign = sort_sign(Jcopy);
                if (sign == 0) continue;
                auto it = gen_index_.find({b, Jcopy});
                rel[it->second] += Rational(sign) * coeff * c;
            }
        }
    }

    AlgebraPtr base_;
    std::size_t k_;
    std::vector<std::pair<std::size_t, std::vector<std::size_t>>> gens_;
    std::map<std::pair<std::size_t, std::vector<std::size_t>>, std::size_t> gen_index_;
    RationalSpan relations_;
};

}  // namespace ucyc
