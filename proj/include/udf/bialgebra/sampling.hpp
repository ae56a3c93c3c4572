#pragma once

#include "udf/bialgebra/tensor.hpp"

#include <cstdint>
#include <random>

namespace udf {

/// Deterministic sampler. Integers are drawn as raw mt19937_64 output
/// reduced modulo the range, so sequences are identical on every platform.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    /// Uniform-ish in [lo, hi].
    long integer(long lo, long hi);
    /// Nonzero small rational with numerator in [-3,3], denominator in [1,2].
    Scalar coefficient();
    /// Sum of 1..max_terms pure tensors, every slot of degree <= max_slot_degree.
    TensorElement tensor(const Bialgebra& b, std::size_t arity, int max_slot_degree, int max_terms = 3);
    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

} // namespace udf
