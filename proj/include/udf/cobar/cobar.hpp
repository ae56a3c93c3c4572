#pragma once

#include "udf/bialgebra/tensor.hpp"
#include "udf/kernel/linalg.hpp"
#include "udf/report.hpp"

#include <map>

namespace udf {

/// Δ̄(u) = Δ(u) − u⊗1 − 1⊗u for ε(u) = 0.
TensorElement reduced_diagonal(const TensorElement& u);

/// An element of B̄^{⊗w}, w in {1,2,3}: ε vanishes in every slot.
class CobarCochain {
public:
    explicit CobarCochain(TensorElement value);
    std::size_t word_length() const { return value_.arity(); }
    /// Total degree, or -1 when the terms are not homogeneous.
    int degree() const { return degree_; }
    const TensorElement& value() const { return value_; }

private:
    TensorElement value_;
    int degree_;
};

/// d₁ = Δ̄ and d₂(x⊗y) = Δ̄x⊗y − x⊗Δ̄y. Word length must be 1 or 2.
CobarCochain differential(const CobarCochain& c);

/// One internal-degree slice. Primitively generated kinds are graded by total
/// degree; group-like kinds form a single block of everything with slot
/// degree <= cutoff (filtered = true, degree = cutoff).
struct CobarBlock {
    int degree = 0;
    bool filtered = false;
    std::vector<BasisKey> reduced;                     // basis of B̄ in the block
    std::vector<std::pair<BasisKey, BasisKey>> pairs;  // basis of B̄⊗B̄
    std::vector<linalg::SparseVector> d1;              // columns, indexed by pairs
    std::vector<linalg::SparseVector> d2;              // columns, rows from triples
    std::size_t triple_count = 0;
};

/// Low-degree cobar complex B̄ → B̄⊗B̄ → B̄^{⊗3}. Construction asserts
/// d₂∘d₁ = 0 in every block and throws DomainError otherwise.
class CobarComplex {
public:
    CobarComplex(BialgebraPtr b, int cutoff);
    const Bialgebra& bialgebra() const { return *b_; }
    const BialgebraPtr& parent() const { return b_; }
    int cutoff() const { return cutoff_; }
    const std::vector<CobarBlock>& blocks() const { return blocks_; }

    /// x̄⊗ȳ summed with the coefficients of v, as an element of B⊗B.
    TensorElement render(const CobarBlock& block, const linalg::SparseVector& v) const;

private:
    BialgebraPtr b_;
    int cutoff_;
    std::vector<CobarBlock> blocks_;
};

struct CohomologyBlock {
    int degree = 0;
    bool filtered = false;
    std::size_t cocycles = 0;    // dim ker
    std::size_t coboundaries = 0; // rank of the incoming map
    std::size_t dim = 0;
    std::vector<TensorElement> representatives;
};

struct CohomologyResult {
    std::string method; // "cobar" or "direct"
    int cutoff = 0;
    std::vector<CohomologyBlock> blocks;

    std::size_t total() const;
    std::map<int, std::size_t> profile() const;
};

/// H²(Ω(B)) per internal degree <= cutoff, with representatives in B̄⊗B̄.
CohomologyResult h2(const BialgebraPtr& b, int cutoff);

/// Solutions ξ ∈ B⊗B of (Δ⊗id)ξ + ξ⊗1 = (id⊗Δ)ξ + 1⊗ξ modulo
/// ξ ~ ξ + Δγ − 1⊗γ − γ⊗1, solved on all of B⊗B per degree block.
CohomologyResult twi_direct(const BialgebraPtr& b, int cutoff);

/// Every direct solution is equivalent to one in B̄⊗B̄, and the two solvers
/// agree degree by degree.
Report check_twi_reduction(const BialgebraPtr& b, int cutoff);

/// a ~ b, i.e. a − b = Δγ − 1⊗γ − γ⊗1 for some γ of degree <= max_degree.
bool same_twi_class(const TensorElement& a, const TensorElement& b, int max_degree);

/// dim Λ²(k-dimensional space) = k(k−1)/2.
long lambda_expected(long k);

} // namespace udf
