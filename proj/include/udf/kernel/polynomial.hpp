#pragma once

#include "udf/kernel/scalar.hpp"

#include <compare>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace udf {

/// Sparse exponent map. Entries are (variable id, exponent) sorted by id; a
/// stored exponent is never zero.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::vector<std::pair<int, int>> powers);

    static Monomial variable(int var, int exponent = 1);

    const std::vector<std::pair<int, int>>& powers() const { return powers_; }
    int exponent(int var) const;
    int degree() const;
    bool is_one() const { return powers_.empty(); }

    Monomial operator*(const Monomial& other) const;
    /// True iff `other` divides *this.
    bool divisible_by(const Monomial& other) const;

    /// Graded order: total degree first, then the dense exponent vectors
    /// compared lexicographically (a higher power of a lower variable id is
    /// larger).
    std::strong_ordering operator<=>(const Monomial& other) const;
    bool operator==(const Monomial& other) const = default;

    std::string to_string(std::span<const std::string> names = {}) const;

private:
    std::vector<std::pair<int, int>> powers_;
};

class Polynomial {
public:
    using Terms = std::map<Monomial, Scalar>;

    Polynomial() = default;
    Polynomial(const Scalar& constant);
    Polynomial(long constant) : Polynomial(Scalar(constant)) {}
    Polynomial(const Monomial& m, const Scalar& c = 1);

    static Polynomial variable(int var) { return Polynomial(Monomial::variable(var)); }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Scalar coefficient(const Monomial& m) const;
    Scalar constant_term() const { return coefficient(Monomial{}); }
    /// -1 for the zero polynomial.
    int degree() const;
    /// Largest monomial in the graded order; precondition: nonzero.
    const Monomial& leading_monomial() const;

    void add_term(const Monomial& m, const Scalar& c);

    Polynomial& operator+=(const Polynomial& other);
    Polynomial& operator-=(const Polynomial& other);
    Polynomial& operator*=(const Scalar& s);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator-(Polynomial a) { return a *= Scalar(-1); }
    friend Polynomial operator*(const Scalar& s, Polynomial a) { return a *= s; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    bool operator==(const Polynomial& other) const = default;

    Polynomial derivative(int var) const;
    Polynomial pow(unsigned k) const;
    /// Replaces variable i by images[i]; variables without an image are kept.
    Polynomial substitute(std::span<const Polynomial> images) const;

    std::string to_string(std::span<const std::string> names = {}) const;

private:
    Terms terms_;
};

inline bool is_zero(const Polynomial& p) { return p.is_zero(); }
inline Polynomial one_like(const Polynomial&) { return Polynomial(1); }

/// Parses a product such as "p^2*q", "3/2*p*q^3" or "1" over the given names.
Polynomial parse_monomial_term(std::string_view text, std::span<const std::string> names);

/// Splits "a - 2*b + c" into signed terms {"a", "- 2*b", "c"}; a sign right
/// after '^', '*', '/' or another sign stays inside its term.
std::vector<std::string> split_sum(std::string_view text);

} // namespace udf
