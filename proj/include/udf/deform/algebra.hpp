#pragma once

#include "udf/kernel/polynomial.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace udf {

enum class AlgebraKind {
    PolynomialTruncated, ///< k[x1..xv], basis monomials of degree <= cutoff
    FiniteDimensional,   ///< explicit basis with structure constants
};

std::string to_string(AlgebraKind kind);

class Algebra;
using AlgebraPtr = std::shared_ptr<const Algebra>;

/// Elements of A are sparse maps basis key -> coefficient. Keys are
/// monomials: real monomials for polynomial algebras and monomial quotients,
/// the synthetic monomial x_i for basis element i of an algebra given by a
/// structure-constant table. The Polynomial product is only meaningful for
/// the first two; always multiply through Algebra.
using AlgElement = Polynomial;

/// An associative unital algebra with a finite working basis.
class Algebra {
public:
    /// k[variables] truncated at total degree `cutoff`; products above the
    /// cutoff raise CutoffOverflow.
    static AlgebraPtr polynomial(std::vector<std::string> variables, int cutoff);
    /// k[variables]/(monomials); must be finite-dimensional.
    static AlgebraPtr monomial_quotient(std::vector<std::string> variables, const std::vector<std::string>& ideal);
    /// Basis names, unit name and table[i][j] = e_i·e_j. Associativity and
    /// the unit law are checked on the whole basis.
    static AlgebraPtr finite(std::vector<std::string> names, const std::string& unit,
                             std::vector<std::vector<AlgElement>> table);

    AlgebraKind kind() const { return kind_; }
    /// Variables (polynomial, quotient) or basis names (table).
    const std::vector<std::string>& names() const { return names_; }
    /// Polynomial kind: the degree cutoff. Otherwise the largest basis degree.
    int cutoff() const { return cutoff_; }
    /// True for polynomial algebras and monomial quotients, where keys are
    /// genuine monomials in names() and differential operators make sense.
    bool has_variables() const { return variables_; }
    const std::vector<Monomial>& ideal() const { return ideal_; }

    /// Sorted by degree, then higher powers of earlier variables first.
    const std::vector<Monomial>& basis() const { return basis_; }
    std::vector<Monomial> basis_up_to(int degree) const;
    bool in_basis(const Monomial& m) const;
    int degree(const Monomial& m) const;

    AlgElement one() const;
    AlgElement basis_element(const Monomial& m) const { return AlgElement(m); }
    AlgElement variable(const std::string& name) const;
    /// Linear combination such as "p^2*q - 1/2*q" or "e1 + 2*e2".
    AlgElement parse(const std::string& text) const;
    std::string render(const AlgElement& x) const;
    std::string render(const Monomial& m) const;

    /// Product in A; polynomial kind throws CutoffOverflow above the cutoff.
    AlgElement multiply(const AlgElement& x, const AlgElement& y) const;
    /// Same, without the cutoff (polynomial kind only differs).
    AlgElement multiply_unbounded(const AlgElement& x, const AlgElement& y) const;
    /// Drops monomials of the ideal (quotient), checks the cutoff (polynomial).
    AlgElement normalize(const AlgElement& x) const;
    void require_in_range(const AlgElement& x) const;

private:
    Algebra() = default;
    void index_basis();
    bool killed(const Monomial& m) const;

    AlgebraKind kind_ = AlgebraKind::PolynomialTruncated;
    std::vector<std::string> names_;
    int cutoff_ = 0;
    bool variables_ = true;
    std::vector<Monomial> ideal_;
    std::vector<Monomial> basis_;
    std::map<Monomial, std::size_t> index_;
    int unit_index_ = 0;
    std::vector<std::vector<AlgElement>> table_;
};

/// A linear map A -> A, either a differential operator Σ c_α(x) ∂^α (algebras
/// with variables) or an explicit matrix on the basis.
class LinearOperator {
public:
    struct Term {
        Polynomial coefficient;
        Monomial derivative; // multi-index α as a monomial in the variables
    };

    static LinearOperator differential(AlgebraPtr a, std::vector<Term> terms);
    static LinearOperator matrix(AlgebraPtr a, std::map<Monomial, AlgElement> images);
    static LinearOperator identity(AlgebraPtr a);
    /// "p^2*d_p - 1/2*q*d_q^2 + 3". A term carries at most one d_x^k per
    /// variable; variables and constants form the coefficient.
    static LinearOperator parse(AlgebraPtr a, const std::string& text);

    const Algebra& algebra() const { return *a_; }
    const AlgebraPtr& parent() const { return a_; }
    bool is_differential() const { return !matrix_.has_value(); }
    const std::vector<Term>& terms() const { return terms_; }
    /// Largest |α|; -1 for a matrix.
    int order() const;

    AlgElement apply(const AlgElement& x) const;
    /// Without the cutoff check (polynomial kind).
    AlgElement apply_unbounded(const AlgElement& x) const;
    std::string to_string() const;

private:
    LinearOperator(AlgebraPtr a) : a_(std::move(a)) {}
    AlgebraPtr a_;
    std::vector<Term> terms_;
    std::optional<std::map<Monomial, AlgElement>> matrix_;
};

/// Σ c x^α ∂^β applied to f in the polynomial ring, no truncation.
Polynomial apply_differential(const std::vector<LinearOperator::Term>& terms, const Polynomial& f);

} // namespace udf
