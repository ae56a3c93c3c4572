#pragma once

#include "udf/bialgebra/tensor.hpp"
#include "udf/kernel/linalg.hpp"

#include <optional>

namespace udf {

/// Assigns consecutive coordinates to tensor keys on first sight, so tensors
/// can be handed to the sparse linear algebra.
class TensorIndexer {
public:
    std::size_t index(const TensorKey& key);
    std::optional<std::size_t> find(const TensorKey& key) const;
    const TensorKey& key(std::size_t i) const { return keys_.at(i); }
    std::size_t size() const { return keys_.size(); }

    linalg::SparseVector vectorize(const TensorElement& t);
    /// Without registering new keys; nullopt if t has an unknown key.
    std::optional<linalg::SparseVector> vectorize_known(const TensorElement& t) const;
    TensorElement element(const BialgebraPtr& parent, std::size_t arity, const linalg::SparseVector& v) const;

private:
    std::map<TensorKey, std::size_t> index_;
    std::vector<TensorKey> keys_;
};

} // namespace udf
