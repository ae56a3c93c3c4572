#pragma once

#include "udf/bialgebra/tensor.hpp"
#include "udf/deform/algebra.hpp"
#include "udf/report.hpp"

#include <map>
#include <optional>

namespace udf {

using AlgSeries = TruncSeries<AlgElement>;

/// B acting on A through operators attached to the generators of B (for a
/// finite monoid table: to every element). A basis element of B acts by the
/// matching composite, x·y acting as a ↦ x(y(a)).
class ModuleAction {
public:
    /// Validates by kind:
    ///  * primitive kinds: every image is a derivation (Leibniz on basis pairs
    ///    of A whose product fits the cutoff);
    ///  * commutative kinds: images commute pairwise;
    ///  * monoid kinds: images are unital algebra endomorphisms, and a finite
    ///    table is represented (O_m O_n = O_{mn}).
    /// Throws DomainError naming the first failure.
    ModuleAction(BialgebraPtr b, AlgebraPtr a, std::map<std::string, LinearOperator> images);

    const Bialgebra& bialgebra() const { return *b_; }
    const BialgebraPtr& bialgebra_ptr() const { return b_; }
    const Algebra& algebra() const { return *a_; }
    const AlgebraPtr& algebra_ptr() const { return a_; }
    const std::map<std::string, LinearOperator>& images() const { return images_; }

    /// key · x, with the cutoff of A enforced.
    AlgElement act(const BasisKey& key, const AlgElement& x) const;
    /// b · x for b in B.
    AlgElement act(const TensorElement& b, const AlgElement& x) const;
    /// μ_A(T(x⊗y)) for T in B⊗B.
    AlgElement apply_pair(const TensorElement& T, const AlgElement& x, const AlgElement& y) const;

private:
    const LinearOperator& image_of(int generator) const;

    BialgebraPtr b_;
    AlgebraPtr a_;
    std::map<std::string, LinearOperator> images_;
    std::vector<const LinearOperator*> by_id_; // generator id (or monoid element index) -> image
};

/// Primitively generated B acting by derivations. Same validation as the
/// ModuleAction constructor; rejects non-primitive kinds.
ModuleAction action_from_derivations(BialgebraPtr b, AlgebraPtr a, std::map<std::string, LinearOperator> images);

/// b·(xy) = Σ (b₍₁₎x)(b₍₂₎y) and b·1 = ε(b)1 for B-basis elements of degree
/// <= b_degree and A-basis pairs of total degree <= cutoff.
Report check_module_algebra(const ModuleAction& action, int cutoff, int b_degree = 2);

/// x * y = Σ_k t^k μ_A(F_k(x⊗y)).
AlgSeries twisted_product(const TensorSeries& F, const ModuleAction& action, const AlgElement& x, const AlgElement& y);
AlgSeries twisted_product(const TensorSeries& F, const ModuleAction& action, const AlgSeries& x, const AlgSeries& y);

/// (x*y)*z = x*(y*z) for basis triples of total degree <= d, and 1 as a two
/// sided unit, mod t^{N+1}. The witness is the first triple (in basis order,
/// by total degree) that fails at the lowest failing order.
Report check_associativity(const TensorSeries& F, const ModuleAction& action, int d);

std::string render(const Algebra& a, const AlgSeries& s);

/// A multilinear map A^{⊗n} → A stored on basis tuples of total degree <= d.
class HochschildCochain {
public:
    HochschildCochain(AlgebraPtr a, int n, int d);

    const Algebra& algebra() const { return *a_; }
    const AlgebraPtr& parent() const { return a_; }
    int arity() const { return n_; }
    int domain_degree() const { return d_; }
    /// All basis tuples in the domain, in sweep order.
    std::vector<std::vector<Monomial>> domain() const;

    void set(const std::vector<Monomial>& args, AlgElement value);
    AlgElement at(const std::vector<Monomial>& args) const;
    /// Multilinear extension; every combination must lie in the domain.
    AlgElement operator()(const std::vector<AlgElement>& args) const;
    bool is_zero() const;
    const std::map<std::vector<Monomial>, AlgElement>& values() const { return values_; }

private:
    AlgebraPtr a_;
    int n_;
    int d_;
    std::map<std::vector<Monomial>, AlgElement> values_;
};

/// μ₁(x,y) = μ_A(F₁(x⊗y)) on pairs of total degree <= d.
HochschildCochain infinitesimal_cocycle(const TensorSeries& F, const ModuleAction& action, int d);

/// δc for a 1- or 2-cochain, on the domain of c (degree reduced by one for
/// the extra argument: tuples of total degree <= d).
HochschildCochain hochschild_differential(const HochschildCochain& c);

/// δ of a linear map g: (x,y) ↦ x g(y) − g(xy) + g(x) y on pairs of total
/// degree <= d, without the cutoff.
HochschildCochain hochschild_coboundary(const LinearOperator& g, int d);

/// δc = 0 on every triple of the domain.
Report check_hochschild_cocycle(const HochschildCochain& c);

struct CoboundaryVerdict {
    bool found = false;
    std::optional<LinearOperator> witness;
    /// Declared search space, reported with every verdict.
    std::string search_space;
};

/// Solves c = δg. Finite-dimensional A: g ranges over all linear maps.
/// Polynomial A: g = Σ_{|α| <= search_bound} c_α ∂^α with deg c_α <= d, where
/// d is the domain degree of c. A negative verdict only rules out that space.
CoboundaryVerdict is_hochschild_coboundary(const HochschildCochain& c, int search_bound);

struct WedgeResult {
    /// (i,j), i<j -> coefficient of ∂_i ∧ ∂_j
    std::map<std::pair<int, int>, Polynomial> coefficients;
    bool nonzero() const;
    std::string to_string(const Algebra& a) const;
};

/// θ₁ ∧_A θ₂ in the free A-module Λ²Der(A) of a polynomial algebra. Both
/// operators must be derivations Σ a_i ∂_i.
WedgeResult wedge_over_A(const LinearOperator& theta1, const LinearOperator& theta2);

} // namespace udf
