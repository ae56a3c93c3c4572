#include "udf/bialgebra/sampling.hpp"

namespace udf {

long Sampler::integer(long lo, long hi)
{
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<long>(rng_() % span);
}

Scalar Sampler::coefficient()
{
    long n = integer(1, 3) * (integer(0, 1) ? 1 : -1);
    return make_scalar(n, integer(1, 2));
}

TensorElement Sampler::tensor(const Bialgebra& b, std::size_t arity, int max_slot_degree, int max_terms)
{
    std::vector<BasisKey> pool = b.basis_up_to(max_slot_degree);
    TensorElement t = b.zero(arity);
    const long terms = integer(1, max_terms);
    for (long n = 0; n < terms; ++n) {
        TensorKey key;
        for (std::size_t s = 0; s < arity; ++s)
            key.push_back(pool[static_cast<std::size_t>(integer(0, static_cast<long>(pool.size()) - 1))]);
        t.add_term(key, coefficient());
    }
    return t;
}

} // namespace udf
