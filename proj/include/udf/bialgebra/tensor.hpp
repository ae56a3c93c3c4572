#pragma once

#include "udf/bialgebra/bialgebra.hpp"
#include "udf/kernel/series.hpp"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace udf {

using TensorKey = std::vector<BasisKey>;

/// Sparse element of B^{⊗n}. Arity 0 is a bare scalar (key = empty tuple).
/// Arity is fixed at construction; all binary operations require equal
/// arity and the same parent.
class TensorElement {
public:
    using Terms = std::map<TensorKey, Scalar>;

    TensorElement(BialgebraPtr parent, std::size_t arity) : parent_(std::move(parent)), arity_(arity) {}

    const BialgebraPtr& parent() const { return parent_; }
    const Bialgebra& bialgebra() const { return *parent_; }
    std::size_t arity() const { return arity_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Scalar coefficient(const TensorKey& key) const;

    void add_term(const TensorKey& key, const Scalar& c);

    TensorElement& operator+=(const TensorElement& other);
    TensorElement& operator-=(const TensorElement& other);
    TensorElement& operator*=(const Scalar& s);
    friend TensorElement operator+(TensorElement a, const TensorElement& b) { return a += b; }
    friend TensorElement operator-(TensorElement a, const TensorElement& b) { return a -= b; }
    friend TensorElement operator-(TensorElement a) { return a *= Scalar(-1); }
    friend TensorElement operator*(const Scalar& s, TensorElement a) { return a *= s; }
    /// Slotwise product in the algebra B^{⊗n}.
    friend TensorElement operator*(const TensorElement& a, const TensorElement& b);

    bool operator==(const TensorElement& other) const;

    /// Canonical rendering, terms in sorted key order: "1/2 p1⊗p2 - 1/2 p2⊗p1".
    std::string to_string() const;

    /// The single coefficient of an arity-0 element.
    Scalar scalar_value() const;

    void require_compatible(const TensorElement& other) const;

private:
    BialgebraPtr parent_;
    std::size_t arity_;
    Terms terms_;
};

inline bool is_zero(const TensorElement& t) { return t.is_zero(); }
inline TensorElement one_like(const TensorElement& t) { return t.bialgebra().unit_tensor(t.arity()); }

TensorElement tensor_multiply(const TensorElement& u, const TensorElement& v);
/// u ⊗ v, arity adds.
TensorElement otimes(const TensorElement& u, const TensorElement& v);
TensorElement otimes(std::span<const TensorElement> factors);

enum class SlotMap { Coproduct, Counit, Identity };

/// Applies Δ, ε or id to slot i (1-based). Arity changes by +1, -1, 0.
TensorElement slot_apply(SlotMap map, std::size_t slot, const TensorElement& u);

/// Δ^k on an element of B (arity 1): Δ^{-1} = ε, Δ^0 = id,
/// Δ^k = (Δ ⊗ id^{⊗ k-1}) Δ^{k-1}.
TensorElement iterated_coproduct(const TensorElement& b, int k);

/// Applies Δ^k in slot i of u (slot widens to k+1 factors; k = -1 drops it).
TensorElement slot_iterated_coproduct(const TensorElement& u, std::size_t slot, int k);
/// Same, reading only Δ and ε through the view.
TensorElement slot_iterated_coproduct(const CoalgebraView& coalgebra, const TensorElement& u, std::size_t slot, int k);

/// Inverse of to_string: "1/2 p1⊗p2 - 1/2 p2⊗p1", "2*p1^2⊗1". Slots may
/// also be separated by "(x)". A bare scalar is c·1^{⊗n}.
TensorElement parse_tensor(const BialgebraPtr& b, std::size_t arity, const std::string& text);

/// All pure basis tensors of the given arity with total degree <= max_degree.
std::vector<TensorKey> pure_tensor_keys(const Bialgebra& b, std::size_t arity, int max_degree);

/// Permutation of {1..n} in one-line notation: image[i-1] = σ(i).
class Permutation {
public:
    explicit Permutation(std::vector<int> image);
    static Permutation identity(std::size_t n);
    static Permutation transposition(std::size_t n, int i, int j);

    std::size_t size() const { return image_.size(); }
    int operator()(int i) const { return image_.at(static_cast<std::size_t>(i - 1)); }
    const std::vector<int>& image() const { return image_; }
    Permutation inverse() const;

    /// (σ * τ)(i) = τ(σ(i)); with the right action below,
    /// permute(σ, permute(τ, u)) = permute(σ * τ, u).
    friend Permutation operator*(const Permutation& s, const Permutation& t);
    bool operator==(const Permutation&) const = default;

private:
    std::vector<int> image_;
};

/// Right action on pure tensors: (u·σ)_i = u_{σ(i)}.
TensorElement permute_factors(const Permutation& sigma, const TensorElement& u);

/// The flip on B⊗B.
TensorElement flip(const TensorElement& u);

/// Series of tensors: the carrier of UDFs and gauge elements.
using TensorSeries = TruncSeries<TensorElement>;

TensorSeries constant_series(unsigned order, const TensorElement& value);
TensorSeries slot_apply(SlotMap map, std::size_t slot, const TensorSeries& u);
TensorSeries otimes(const TensorSeries& u, const TensorSeries& v);
TensorSeries permute_factors(const Permutation& sigma, const TensorSeries& u);
std::string to_string(const TensorSeries& s);

} // namespace udf
