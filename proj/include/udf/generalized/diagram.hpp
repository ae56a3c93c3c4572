#pragma once

#include "udf/deform/deform.hpp"
#include "udf/twist/twist.hpp"

#include <map>
#include <memory>
#include <optional>

namespace udf {

/// τ1324{(Δ⊗Δ)(F′)(F″⊗F″)} = (Δ⊗Δ)(F″)(F′⊗F′) in B^⊗4, mod t^{N+1}.
Report interchange_check(const TensorSeries& F1, const TensorSeries& F2);

/// A unital algebra morphism between algebras with variables, fixed by the
/// images of the source variables.
class AlgebraMorphism {
public:
    /// Quotient sources: the ideal generators must map to 0.
    AlgebraMorphism(AlgebraPtr source, AlgebraPtr target, std::map<std::string, AlgElement> images);
    static AlgebraMorphism parse(AlgebraPtr source, AlgebraPtr target, const std::map<std::string, std::string>& images);

    const Algebra& source() const { return *source_; }
    const Algebra& target() const { return *target_; }
    const AlgebraPtr& target_ptr() const { return target_; }
    /// Target cutoff enforced.
    AlgElement apply(const AlgElement& x) const;
    AlgSeries apply(const AlgSeries& x) const;
    std::string to_string() const;

private:
    AlgElement apply_unbounded(const Monomial& m) const;

    AlgebraPtr source_;
    AlgebraPtr target_;
    std::map<std::string, AlgElement> images_;
};

/// A bialgebra morphism fixed by the images of the source generators;
/// compatibility with Δ and ε is checked on source basis elements up to
/// degree 2.
class BialgebraMorphism {
public:
    BialgebraMorphism(BialgebraPtr source, BialgebraPtr target, std::map<std::string, TensorElement> images);
    static BialgebraMorphism identity(BialgebraPtr b);
    static BialgebraMorphism parse(BialgebraPtr source, BialgebraPtr target,
                                   const std::map<std::string, std::string>& images);

    const BialgebraPtr& source_ptr() const { return source_; }
    const BialgebraPtr& target_ptr() const { return target_; }
    TensorElement apply(const BasisKey& key) const;
    /// Slotwise on a tensor of any arity.
    TensorElement apply(const TensorElement& x) const;
    TensorSeries apply(const TensorSeries& x) const;
    std::string to_string() const;

private:
    BialgebraPtr source_;
    BialgebraPtr target_;
    std::map<std::string, TensorElement> images_;
    std::vector<TensorElement> by_id_;
};

struct DiagramNode {
    std::string name;
    std::shared_ptr<const ModuleAction> action; ///< carries A and B of the node
};

/// r: from -> to with h: A_from -> A_to and φ: B_to -> B_from.
struct DiagramArrow {
    std::size_t from = 0;
    std::size_t to = 0;
    AlgebraMorphism h;
    BialgebraMorphism phi;
};

struct Diagram {
    std::vector<DiagramNode> nodes;
    std::vector<DiagramArrow> arrows;
};

/// (i) every node is a module algebra (check_module_algebra at `cutoff`);
/// (ii) b·h(a) = h(φ(b)·a) for every arrow, generator b of B_to and basis
/// element a of A_from of degree <= cutoff.
Report diagram_compat_check(const Diagram& d, int cutoff);

struct TwistTriple {
    TensorSeries F1; ///< over B_from
    TensorSeries G;  ///< arity 1 over B_from
    TensorSeries F2; ///< over B_to
};

/// For one arrow: F1, F2 twisting elements; Δ(G)F1 = (φ⊗φ)(F2)(G⊗G); the
/// deformed map h̃(a) = h(G·a) is multiplicative on basis pairs of degree
/// <= d; for invertible G, the reduced triple (Δ(G)F1(G⊗G)⁻¹, 1, F2) again
/// satisfies (ii) and h is multiplicative for it.
Report diagram_twist_check(const Diagram& d, std::size_t arrow, const TwistTriple& triple, int degree);

/// h̃ at t⁰ on the basis of A_from up to `degree`, compared with the basis of
/// A_to up to `degree`.
struct ImageCheck {
    bool injective = false;
    bool surjective = false;
    std::size_t rank = 0;
    std::size_t source_dim = 0;
    std::size_t target_dim = 0;
};
ImageCheck morphism_image(const Diagram& d, std::size_t arrow, const TwistTriple& triple, int degree);

} // namespace udf
