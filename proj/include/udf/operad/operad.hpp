#pragma once

#include "udf/bialgebra/tensor.hpp"
#include "udf/report.hpp"

#include <cstdint>

namespace udf {

/// 𝔹 composes through Δ^{n-1} and the product of B; 𝕓 is its additive
/// version and only reads Δ and 1.
enum class OperadFlavor { Multiplicative, Additive };

std::string to_string(OperadFlavor f);

class OperadElement {
public:
    /// Additive elements must have arity >= 1.
    OperadElement(OperadFlavor flavor, TensorElement payload);

    static OperadElement unit(OperadFlavor flavor, const BialgebraPtr& b);

    OperadFlavor flavor() const { return flavor_; }
    const TensorElement& payload() const { return payload_; }
    std::size_t arity() const { return payload_.arity(); }
    bool operator==(const OperadElement&) const = default;

private:
    OperadFlavor flavor_;
    TensorElement payload_;
};

/// u ∘_i v in 𝔹: u_1 ⊗ .. ⊗ Δ^{n-1}(u_i)·(v_1⊗..⊗v_n) ⊗ .. ⊗ u_m.
/// An arity-0 v applies ε to slot i (DomainError without a counit).
TensorElement circ_B(const TensorElement& u, std::size_t i, const TensorElement& v);

/// u ∘_i v in 𝕓: (id.. Δ^{n-1} ..id)(u) + 1^{⊗ i-1} ⊗ v ⊗ 1^{⊗ m-i}.
/// Only the coalgebra view is consulted.
TensorElement circ_b(const CoalgebraView& coalgebra, const TensorElement& u, std::size_t i, const TensorElement& v);
TensorElement circ_b(const TensorElement& u, std::size_t i, const TensorElement& v);

/// Dispatches on the (common) flavor.
OperadElement circ(const OperadElement& u, std::size_t i, const OperadElement& v);

struct SweepOptions {
    int samples = 100;
    std::uint64_t seed = 0;
    /// Degree budget for sampled elements; clipped to the bialgebra cutoff.
    int cutoff = 3;
    /// Exhaustive sweep over pure basis tensors of total degree <= this.
    int exhaustive_degree = 2;
};

/// The three associativity cases for (u ∘_j v) ∘_i w:
///   i < j          = (u ∘_i w) ∘_{j+c-1} v
///   j <= i < j+b   = u ∘_j (v ∘_{i-j+1} w)
///   i >= j+b       = (u ∘_{i-b+1} w) ∘_j v
Report check_assoc_cases(OperadFlavor flavor, const Bialgebra& b, const SweepOptions& options);

/// Σ-equivariance of ∘_i in both arguments. Holds iff B is cocommutative.
Report check_equivariance(const Bialgebra& b, const SweepOptions& options);

/// Unit laws, plus 1^{⊗n} ∘_i x = 1^{⊗ i-1} ⊗ x ⊗ 1^{⊗ n-i} for 𝔹.
Report check_unit(OperadFlavor flavor, const Bialgebra& b, const SweepOptions& options);

/// Reads back product x·y = x ∘_1 y, Δx = x ∘_1 (1⊗1) and ε(x) = x ∘_1 1
/// from 𝔹 and compares with the presentation on the basis up to cutoff.
Report check_reconstruction(const Bialgebra& b, int cutoff);

} // namespace udf
