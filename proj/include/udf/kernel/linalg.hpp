#pragma once

#include "udf/kernel/scalar.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

namespace udf::linalg {

/// Sparse rational vector: index -> nonzero value.
using SparseVector = std::map<std::size_t, Scalar>;

/// Incrementally built echelon basis of a subspace of Q^n.
///
/// Rows are stored fraction-free: integer entries with content 1, pivot at
/// the smallest index, distinct pivots. Elimination of a pivot only creates
/// entries at larger indices, so reduction sweeps indices in increasing
/// order and ends with a residue supported off the pivot set. That residue
/// is unique, which makes it a normal form for the quotient space.
///
/// With tracking enabled, every row remembers which combination of inserted
/// vectors produced it (by insertion number), which gives kernels and
/// solutions.
class Echelon {
public:
    explicit Echelon(bool track = false) : track_(track) {}

    std::size_t rank() const { return rows_.size(); }

    /// Inserts v (with insertion number = number of previous inserts).
    /// Returns true if v was independent of the current span. In tracking
    /// mode a dependent v yields a kernel relation, available via
    /// relations().
    bool insert(const SparseVector& v);

    /// Exact residue of v modulo the span (zero iff v lies in the span).
    SparseVector reduce(const SparseVector& v) const;
    bool contains(const SparseVector& v) const { return reduce(v).empty(); }

    /// Tracking mode: coefficients x (by insertion number) with
    /// Σ x_j v_j = target, or nullopt.
    std::optional<SparseVector> solve(const SparseVector& target) const;

    /// Tracking mode: one relation Σ c_j v_j = 0 per dependent insert, in
    /// insertion order.
    const std::vector<SparseVector>& relations() const { return relations_; }

    std::vector<std::size_t> pivots() const;

private:
    using IntVector = std::map<std::size_t, Integer>;
    struct Row {
        IntVector v;
        SparseVector comb;
    };

    bool track_;
    std::size_t inserted_ = 0;
    std::map<std::size_t, Row> rows_; // keyed by pivot
    std::vector<SparseVector> relations_;
};

/// Rank of a family of vectors.
std::size_t rank(const std::vector<SparseVector>& vectors);

/// Basis of {x : Σ x_j columns[j] = 0}, one vector per dependent column in
/// column order, each normalized to have coefficient 1 on its own column.
std::vector<SparseVector> kernel(const std::vector<SparseVector>& columns);

} // namespace udf::linalg
