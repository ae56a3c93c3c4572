#pragma once

#include "udf/bialgebra/tensor.hpp"
#include "udf/kernel/polynomial.hpp"
#include "udf/report.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>

namespace udf {

struct TwistOptions {
    bool counital = true;  ///< check (d2)
    bool symmetric = false; ///< check F = τF
};

/// (d1) [(Δ⊗id)F](F⊗1) = [(id⊗Δ)F](1⊗F), (d2) (ε⊗id)F = 1 = (id⊗ε)F and
/// optionally F = τF, all mod t^{N+1}. A failing entry carries the first
/// failing order and the difference there.
Report check_twisting(const TensorSeries& F, const TwistOptions& options = {});

/// An arity-2 series together with write-once twisting verdicts keyed by
/// (order, options). A plain element of B⊗B is the order-0 case.
class TwistingElement {
public:
    explicit TwistingElement(TensorSeries F);
    static TwistingElement constant(const TensorElement& F);

    const TensorSeries& series() const { return F_; }
    unsigned order() const { return F_.order(); }
    const Bialgebra& bialgebra() const { return F_[0].bialgebra(); }
    /// t^0 coefficient is exactly 1⊗1.
    bool is_udf() const;

    const Report& verdict(const TwistOptions& options = {}) const;

private:
    TensorSeries F_;
    struct Cache {
        std::mutex mutex;
        std::map<std::pair<bool, bool>, std::shared_ptr<const Report>> verdicts;
    };
    std::shared_ptr<Cache> cache_;
};

/// Throws DomainError unless F has arity 2 and constant term 1⊗1.
void require_udf(const TensorSeries& F);

/// exp(t·r) mod t^{N+1}. Requires a commutative bialgebra.
TensorSeries make_exp_udf(const TensorElement& r, unsigned order);

/// A gauge element G = 1 + G∘ over B together with its inverse.
class GaugeElement {
public:
    explicit GaugeElement(TensorSeries G);
    const TensorSeries& series() const { return G_; }
    const TensorSeries& inverse() const { return inverse_; }

private:
    TensorSeries G_;
    TensorSeries inverse_;
};

/// Δ(G) F (G⁻¹ ⊗ G⁻¹).
TensorSeries gauge_transform(const TensorSeries& F, const GaugeElement& G);

/// f = log F. Requires a commutative bialgebra or N <= 1.
TensorSeries to_additive(const TensorSeries& F);
/// F = exp f, same requirement; f must have zero constant term.
TensorSeries from_additive(const TensorSeries& f);

/// (Δ⊗id)f + f⊗1 = (id⊗Δ)f + 1⊗f, and (ε⊗id)f = 0 = (id⊗ε)f when counital.
Report check_additive_twist(const TensorSeries& f);

/// f + Δg − 1⊗g − g⊗1; g is a series over B with zero constant term.
TensorSeries additive_gauge(const TensorSeries& f, const TensorSeries& g);

/// Δg − 1⊗g − g⊗1 for g in B.
TensorElement additive_coboundary(const TensorElement& g);

/// A g in B of degree <= max_degree with Δg − 1⊗g − g⊗1 = target, if any.
/// This is the first-order gauge problem: G = 1 + t·g carries F to F'
/// at order t iff F'_1 − F_1 = Δg − 1⊗g − g⊗1.
std::optional<TensorElement> solve_additive_coboundary(const TensorElement& target, int max_degree);

struct RescaledPair {
    TensorElement F;
    Scalar a;
};

/// Normalizes a pair (F, a) with F∘_1F = F∘_2F and a(ε⊗id)F = 1 = a(id⊗ε)F
/// to (a·F, 1), which satisfies (d1) and (d2). Rejects a = 0 and pairs that
/// violate either condition.
RescaledPair rescale(const TensorElement& F, const Scalar& a);

using PolySeries = TruncSeries<Polynomial>;

/// F(u1+u2,u3)F(u1,u2) = F(u1,u2+u3)F(u2,u3) with F(0,u) = F(u,0) = 1, for F
/// in the variables u1 = 0, u2 = 1. The witness on failure is the leading
/// monomial of the first nonzero difference.
Report check_functional_equation(const PolySeries& F);
Report check_functional_equation(const Polynomial& F);

/// For B = k[p]: p^a ⊗ p^b ↦ u1^a u2^b.
PolySeries functional_image(const TensorSeries& F);

} // namespace udf
