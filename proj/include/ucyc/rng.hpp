#pragma once

#include <cstdint>
#include <random>

#include "ucyc/tensor_chain.hpp"

namespace ucyc {

/// Seeded deterministic RNG for property runs. Draws use plain modulo so the
/// stream depends only on mt19937_64, not on library distribution internals.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t u64() { return gen_(); }

    std::size_t below(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(u64() % n); }

    int int_in(int lo, int hi) { return lo + static_cast<int>(below(static_cast<std::size_t>(hi - lo + 1))); }

    /// Small nonzero rational with numerator in [-max, max] and denominator
    /// in [1, maxden].
    Rational rational(int max = 4, int maxden = 3) {
        int num = 0;
        while (num == 0) num = int_in(-max, max);
        return Rational(num, int_in(1, maxden));
    }

private:
    std::mt19937_64 gen_;
};

/// Random sparse chain in CC_degree(A) with `terms` random basis tensors.
inline TensorChain random_chain(const AlgebraPtr& a, std::size_t degree, std::size_t terms,
                                Rng& rng, bool allow_unit_leg = true) {
    const std::size_t d = a->dim();
    TensorChain c(a, degree);
    for (std::size_t t = 0; t < terms; ++t) {
        std::vector<std::size_t> legs(degree + 1);
        std::size_t first_range = (degree >= 1 && allow_unit_leg) ? d + 1 : d;
        legs[0] = rng.below(first_range);
        for (std::size_t i = 1; i <= degree; ++i) legs[i] = rng.below(d);
        c.add_term(legs, rng.rational());
    }
    return c;
}

}  // namespace ucyc
