#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace udf {

/// Exact rational number. mpq_class keeps numerator/denominator coprime with
/// a positive denominator as long as every value is canonicalized on entry,
/// which make_scalar and parse_scalar do.
using Scalar = mpq_class;
using Integer = mpz_class;

inline Scalar make_scalar(long num, long den = 1)
{
    Scalar q(num, den);
    q.canonicalize();
    return q;
}

/// Accepts "3", "-2/7", "+5".
Scalar parse_scalar(std::string_view text);

std::string to_string(const Scalar& q);

inline bool is_zero(const Scalar& q) { return sgn(q) == 0; }
inline Scalar one_like(const Scalar&) { return Scalar(1); }

Scalar factorial(unsigned n);

} // namespace udf
