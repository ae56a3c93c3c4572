#pragma once

#include "udf/bialgebra/tensor.hpp"
#include "udf/kernel/linalg.hpp"
#include "udf/kernel/polynomial.hpp"
#include "udf/report.hpp"

#include <array>
#include <functional>
#include <map>
#include <memory>

namespace udf {

/// u ∘_i v in 𝔹 extended to series.
TensorSeries circ_B(const TensorSeries& u, std::size_t i, const TensorSeries& v);

/// H = F ∘₁ F, the twist of the ternary operation μ₂ ∘₁ μ₂. Throws
/// DomainError if F ∘₂ F differs (F then fails (d1)).
TensorSeries pass_udf(const TensorSeries& F);

/// Elements of a ternary algebra: tree id -> coefficient, stored as the
/// synthetic monomials x_id (same trick as table algebras in deform).
using TernaryElement = Polynomial;
using TernarySeries = TruncSeries<TernaryElement>;

class TernaryAlgebra;
using TernaryAlgebraPtr = std::shared_ptr<const TernaryAlgebra>;

/// The free partially associative ternary algebra on named generators,
/// (a,b,(c,d,e)) + (a,(b,c,d),e) + ((a,b,c),d,e) = 0, truncated above
/// `leaf_cutoff` leaves (A/A_{>L}; products with more leaves are 0). In the
/// symmetric case the product is totally symmetric.
class TernaryAlgebra {
public:
    static constexpr std::size_t default_tree_limit = 40000;
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    /// Odd L >= 1. DomainError when more than tree_limit trees would be needed.
    static TernaryAlgebraPtr free_pass(std::vector<std::string> generators, int leaf_cutoff, bool symmetric,
                                       std::size_t tree_limit = default_tree_limit);

    const std::vector<std::string>& generators() const { return names_; }
    int leaf_cutoff() const { return cutoff_; }
    bool symmetric() const { return symmetric_; }

    std::size_t tree_count() const { return nodes_.size(); }
    std::size_t tree_count(int leaves) const;
    int leaves(std::size_t tree) const { return nodes_.at(tree).leaves; }
    std::string render_tree(std::size_t tree) const;
    /// Tree with the given children (sorted in the symmetric case); npos above
    /// the cutoff.
    std::size_t node(std::size_t a, std::size_t b, std::size_t c) const;
    const std::array<std::size_t, 3>& children(std::size_t tree) const { return nodes_.at(tree).kids; }
    bool is_leaf(std::size_t tree) const { return nodes_.at(tree).gen >= 0; }

    /// Normal-form basis (trees that are not pivots of the relation span),
    /// by leaf count then tree id.
    const std::vector<std::size_t>& basis() const { return basis_; }
    std::size_t dimension(int leaves) const;
    /// Rank of the relation span among trees with this many leaves.
    std::size_t relation_rank(int leaves) const;

    TernaryElement generator(const std::string& name) const;
    TernaryElement tree(std::size_t id) const;
    /// "(p,p,(p,q,q)) - 1/2*p".
    TernaryElement parse(const std::string& text) const;
    std::string render(const TernaryElement& x) const;
    int leaves_of(const TernaryElement& x) const; ///< max over terms, 0 for zero

    /// Reduced modulo the relations.
    TernaryElement normal_form(const TernaryElement& x) const;
    /// (x, y, z) in normal form, truncated.
    TernaryElement product(const TernaryElement& x, const TernaryElement& y, const TernaryElement& z) const;
    /// Combination of three trees without reduction (used for raw relations).
    TernaryElement product_raw(const TernaryElement& x, const TernaryElement& y, const TernaryElement& z) const;

private:
    struct Node {
        int leaves = 1;
        int gen = -1;
        std::array<std::size_t, 3> kids{npos, npos, npos};
    };
    TernaryAlgebra() = default;
    void enumerate(std::size_t tree_limit);
    void build_relations();
    std::size_t lookup(std::array<std::size_t, 3> kids) const;
    std::size_t slot(int leaves) const { return static_cast<std::size_t>((leaves - 1) / 2); }

    std::vector<std::string> names_;
    int cutoff_ = 1;
    bool symmetric_ = false;
    std::vector<Node> nodes_;
    std::map<std::array<std::size_t, 3>, std::size_t> index_;
    std::vector<std::vector<std::size_t>> by_leaves_;
    std::vector<linalg::Echelon> relations_;
    std::vector<std::size_t> basis_;
};

/// A derivation of the ternary product fixed by generator images and
/// extended by the three-slot Leibniz rule
/// D(x,y,z) = (Dx,y,z) + (x,Dy,z) + (x,y,Dz).
class TernaryDerivation {
public:
    TernaryDerivation(TernaryAlgebraPtr a, const std::map<std::string, TernaryElement>& images);
    static TernaryDerivation parse(TernaryAlgebraPtr a, const std::map<std::string, std::string>& images);

    const TernaryAlgebra& algebra() const { return *a_; }
    TernaryElement apply(const TernaryElement& x) const;
    std::string to_string() const;

private:
    TernaryAlgebraPtr a_;
    std::map<std::string, TernaryElement> images_;
    std::vector<TernaryElement> on_tree_; // D on every tree, normal form
};

/// A primitively generated B acting on a ternary algebra by derivations.
/// Polynomial-primitive B needs pairwise commuting images (checked on the
/// whole truncated basis).
class TernaryAction {
public:
    TernaryAction(BialgebraPtr b, TernaryAlgebraPtr a, std::map<std::string, TernaryDerivation> images);

    const Bialgebra& bialgebra() const { return *b_; }
    const BialgebraPtr& bialgebra_ptr() const { return b_; }
    const TernaryAlgebra& algebra() const { return *a_; }
    const TernaryAlgebraPtr& algebra_ptr() const { return a_; }
    TernaryElement act(const BasisKey& key, const TernaryElement& x) const;

private:
    BialgebraPtr b_;
    TernaryAlgebraPtr a_;
    std::map<std::string, TernaryDerivation> images_;
    std::vector<const TernaryDerivation*> by_id_;
};

using TernaryStructure =
    std::function<TernarySeries(const TernarySeries&, const TernarySeries&, const TernarySeries&)>;

/// (a,b,c)' = Σ_k t^k Σ (H_k⁽¹⁾a, H_k⁽²⁾b, H_k⁽³⁾c).
TernarySeries twisted_ternary(const TensorSeries& H, const TernaryAction& action, const TernarySeries& a,
                              const TernarySeries& b, const TernarySeries& c);
TernarySeries twisted_ternary(const TensorSeries& H, const TernaryAction& action, const TernaryElement& a,
                              const TernaryElement& b, const TernaryElement& c);

TernaryStructure undeformed_structure(TernaryAlgebraPtr a);
TernaryStructure twisted_structure(TensorSeries H, std::shared_ptr<const TernaryAction> action);

/// The relation on all basis 5-tuples with at most `leaf_cutoff` leaves in
/// total, mod t^{order+1}. The witness is the first 5-tuple failing at the
/// lowest order.
Report check_partial_assoc(const TernaryAlgebra& a, const TernaryStructure& product, unsigned order, int leaf_cutoff);

} // namespace udf
