#pragma once

#include "udf/error.hpp"
#include "udf/kernel/scalar.hpp"

#include <concepts>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace udf {

/// What the series layer needs from a coefficient space: ring operations,
/// scaling by rationals, a zero test and the unit of the same "shape" (for
/// tensors the unit depends on arity and parent, hence one_like).
template <class C>
concept SeriesCoefficient = std::equality_comparable<C> && requires(const C& a, const C& b, const Scalar& s) {
    { a + b } -> std::convertible_to<C>;
    { a - b } -> std::convertible_to<C>;
    { a * b } -> std::convertible_to<C>;
    { s * a } -> std::convertible_to<C>;
    { is_zero(a) } -> std::convertible_to<bool>;
    { one_like(a) } -> std::convertible_to<C>;
};

/// Element of C[t]/(t^{N+1}): exactly N+1 coefficient slots c_0..c_N.
template <class C>
class TruncSeries {
public:
    /// All slots set to `zero` (a zero of the right shape).
    TruncSeries(unsigned order, C zero) : coeffs_(order + 1, std::move(zero)) {}

    /// c_0 = value, higher slots zero; `zero` supplies the shape.
    static TruncSeries constant(unsigned order, C value, const C& zero)
    {
        TruncSeries s(order, zero);
        s.coeffs_[0] = std::move(value);
        return s;
    }

    unsigned order() const { return static_cast<unsigned>(coeffs_.size() - 1); }
    const C& operator[](unsigned k) const { return coeffs_.at(k); }
    C& operator[](unsigned k) { return coeffs_.at(k); }
    const std::vector<C>& coefficients() const { return coeffs_; }

    bool operator==(const TruncSeries& other) const = default;

    TruncSeries& operator+=(const TruncSeries& other)
    {
        require_same_order(other);
        for (std::size_t k = 0; k < coeffs_.size(); ++k)
            coeffs_[k] = coeffs_[k] + other.coeffs_[k];
        return *this;
    }
    TruncSeries& operator-=(const TruncSeries& other)
    {
        require_same_order(other);
        for (std::size_t k = 0; k < coeffs_.size(); ++k)
            coeffs_[k] = coeffs_[k] - other.coeffs_[k];
        return *this;
    }
    friend TruncSeries operator+(TruncSeries a, const TruncSeries& b) { return a += b; }
    friend TruncSeries operator-(TruncSeries a, const TruncSeries& b) { return a -= b; }
    friend TruncSeries operator*(const Scalar& s, TruncSeries a)
    {
        for (auto& c : a.coeffs_)
            c = s * c;
        return a;
    }

    /// Cauchy product truncated at order N.
    friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b)
    {
        a.require_same_order(b);
        const unsigned n = a.order();
        TruncSeries r(n, a.coeffs_[0] - a.coeffs_[0]);
        for (unsigned i = 0; i <= n; ++i) {
            if (is_zero(a.coeffs_[i]))
                continue;
            for (unsigned j = 0; i + j <= n; ++j) {
                if (is_zero(b.coeffs_[j]))
                    continue;
                r.coeffs_[i + j] = r.coeffs_[i + j] + a.coeffs_[i] * b.coeffs_[j];
            }
        }
        return r;
    }

    /// Multiplies by t^k, dropping what falls beyond t^N.
    TruncSeries shifted(unsigned k) const
    {
        TruncSeries r(order(), coeffs_[0] - coeffs_[0]);
        for (unsigned i = 0; i + k <= order(); ++i)
            r.coeffs_[i + k] = coeffs_[i];
        return r;
    }

    /// Applies a coefficientwise map (must be linear for the result to mean
    /// anything as a series).
    template <class F>
    auto map(F&& f) const -> TruncSeries<std::decay_t<decltype(f(std::declval<const C&>()))>>
    {
        using D = std::decay_t<decltype(f(std::declval<const C&>()))>;
        std::vector<D> out;
        out.reserve(coeffs_.size());
        for (const auto& c : coeffs_)
            out.push_back(f(c));
        return TruncSeries<D>(std::move(out));
    }

    explicit TruncSeries(std::vector<C> coeffs) : coeffs_(std::move(coeffs))
    {
        if (coeffs_.empty())
            throw DomainError("a truncated series needs at least one coefficient");
    }

    /// Index of the first nonzero slot, or -1.
    int valuation() const
    {
        for (std::size_t k = 0; k < coeffs_.size(); ++k)
            if (!is_zero(coeffs_[k]))
                return static_cast<int>(k);
        return -1;
    }

    void require_same_order(const TruncSeries& other) const
    {
        if (other.coeffs_.size() != coeffs_.size())
            throw DomainError("truncation orders differ: " + std::to_string(order()) + " vs " +
                              std::to_string(other.order()));
    }

private:
    std::vector<C> coeffs_;
};

template <class C>
bool is_zero(const TruncSeries<C>& s)
{
    return s.valuation() < 0;
}

template <class C>
TruncSeries<C> series_mul(const TruncSeries<C>& a, const TruncSeries<C>& b)
{
    return a * b;
}

/// The series x·t (x placed in slot 1).
template <class C>
TruncSeries<C> times_t(unsigned order, const C& x)
{
    TruncSeries<C> s(order, x - x);
    if (order >= 1)
        s[1] = x;
    return s;
}

template <SeriesCoefficient C>
TruncSeries<C> unit_series(const TruncSeries<C>& like)
{
    return TruncSeries<C>::constant(like.order(), one_like(like[0]), like[0] - like[0]);
}

/// Σ_{k=0}^{N} x^k / k!; x must have zero constant term.
template <SeriesCoefficient C>
TruncSeries<C> series_exp(const TruncSeries<C>& x)
{
    if (!is_zero(x[0]))
        throw DomainError("exp needs a series with zero constant term");
    TruncSeries<C> result = unit_series(x);
    TruncSeries<C> power = result;
    for (unsigned k = 1; k <= x.order(); ++k) {
        power = Scalar(1, k) * (power * x);
        if (is_zero(power))
            break;
        result += power;
    }
    return result;
}

/// Σ_{k=1}^{N} (-1)^{k+1} (y-1)^k / k; y must have constant term 1.
template <SeriesCoefficient C>
TruncSeries<C> series_log(const TruncSeries<C>& y)
{
    const TruncSeries<C> one = unit_series(y);
    if (!is_zero(y[0] - one[0]))
        throw DomainError("log needs a series with constant term 1");
    const TruncSeries<C> z = y - one;
    TruncSeries<C> result(y.order(), y[0] - y[0]);
    TruncSeries<C> power = one;
    for (unsigned k = 1; k <= y.order(); ++k) {
        power = power * z;
        if (is_zero(power))
            break;
        result += Scalar(k % 2 ? 1 : -1, k) * power;
    }
    return result;
}

/// Two-sided inverse mod t^{N+1}. The constant term must be 1, or, for
/// rational coefficients, any nonzero number.
template <SeriesCoefficient C>
TruncSeries<C> series_inv(const TruncSeries<C>& y)
{
    Scalar c0_inv = 1;
    if constexpr (std::is_same_v<C, Scalar>) {
        if (is_zero(y[0]))
            throw DomainError("series with zero constant term is not invertible");
        c0_inv = 1 / y[0];
    } else if (!is_zero(y[0] - one_like(y[0]))) {
        throw DomainError("only series with constant term 1 are inverted");
    }
    const TruncSeries<C> u = c0_inv * y; // constant term 1
    TruncSeries<C> z = unit_series(u);
    for (unsigned k = 1; k <= u.order(); ++k) {
        C acc = u[0] - u[0];
        for (unsigned j = 1; j <= k; ++j)
            if (!is_zero(u[j]) && !is_zero(z[k - j]))
                acc = acc + u[j] * z[k - j];
        z[k] = Scalar(-1) * acc;
    }
    return c0_inv * z;
}

} // namespace udf
