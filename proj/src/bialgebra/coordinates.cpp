#include "udf/bialgebra/coordinates.hpp"

namespace udf {

std::size_t TensorIndexer::index(const TensorKey& key)
{
    auto [it, inserted] = index_.try_emplace(key, keys_.size());
    if (inserted)
        keys_.push_back(key);
    return it->second;
}

std::optional<std::size_t> TensorIndexer::find(const TensorKey& key) const
{
    auto it = index_.find(key);
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

linalg::SparseVector TensorIndexer::vectorize(const TensorElement& t)
{
    linalg::SparseVector v;
    for (const auto& [k, c] : t.terms())
        v.emplace(index(k), c);
    return v;
}

std::optional<linalg::SparseVector> TensorIndexer::vectorize_known(const TensorElement& t) const
{
    linalg::SparseVector v;
    for (const auto& [k, c] : t.terms()) {
        auto i = find(k);
        if (!i)
            return std::nullopt;
        v.emplace(*i, c);
    }
    return v;
}

TensorElement TensorIndexer::element(const BialgebraPtr& parent, std::size_t arity, const linalg::SparseVector& v) const
{
    TensorElement t(parent, arity);
    for (const auto& [i, c] : v)
        t.add_term(keys_.at(i), c);
    return t;
}

} // namespace udf
