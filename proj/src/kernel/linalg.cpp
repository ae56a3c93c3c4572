#include "udf/kernel/linalg.hpp"

#include "udf/error.hpp"

namespace udf::linalg {

namespace {

using IntVector = std::map<std::size_t, Integer>;

// Returns w = L*v with L the lcm of the denominators.
IntVector to_integer(const SparseVector& v, Integer& lcm_out)
{
    Integer l = 1;
    for (const auto& [i, q] : v)
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    IntVector w;
    for (const auto& [i, q] : v) {
        Integer e = q.get_num() * (l / q.get_den());
        if (e != 0)
            w.emplace(i, std::move(e));
    }
    lcm_out = l;
    return w;
}

Integer content(const IntVector& w)
{
    Integer g = 0;
    for (const auto& [i, e] : w) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.get_mpz_t());
        if (g == 1)
            break;
    }
    return g;
}

void axpy_rational(SparseVector& x, const Scalar& a, const SparseVector& y, const Scalar& b)
{
    // x <- a*x - b*y
    if (a != 1)
        for (auto& [i, q] : x)
            q *= a;
    for (const auto& [i, q] : y) {
        auto [it, inserted] = x.try_emplace(i, 0);
        it->second -= b * q;
        if (sgn(it->second) == 0)
            x.erase(it);
    }
}

struct Work {
    IntVector w;
    SparseVector comb;
    Scalar scale = 1;
};

// Sweeps pivots of w in increasing index order.
template <class Rows>
void reduce_work(const Rows& rows, Work& work, bool carry)
{
    auto it = work.w.begin();
    while (it != work.w.end()) {
        auto row_it = rows.find(it->first);
        if (row_it == rows.end()) {
            ++it;
            continue;
        }
        const std::size_t pivot = it->first;
        const auto& row = row_it->second;
        Integer a = row.v.begin()->second;
        Integer b = it->second;
        Integer g;
        mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        a /= g;
        b /= g;
        if (a != 1)
            for (auto& [i, e] : work.w)
                e *= a;
        for (const auto& [i, e] : row.v) {
            auto [wit, inserted] = work.w.try_emplace(i, 0);
            wit->second -= b * e;
            if (wit->second == 0)
                work.w.erase(wit);
        }
        if (carry)
            axpy_rational(work.comb, Scalar(a), row.comb, Scalar(b));
        work.scale *= Scalar(a);
        Integer c = content(work.w);
        if (c > 1) {
            for (auto& [i, e] : work.w)
                e /= c;
            Scalar cq(c);
            if (carry)
                for (auto& [i, q] : work.comb)
                    q /= cq;
            work.scale /= cq;
        }
        it = work.w.upper_bound(pivot);
    }
}

} // namespace

bool Echelon::insert(const SparseVector& v)
{
    Work work;
    Integer l;
    work.w = to_integer(v, l);
    const std::size_t idx = inserted_++;
    if (track_)
        work.comb.emplace(idx, Scalar(l));
    reduce_work(rows_, work, track_);
    if (work.w.empty()) {
        if (track_) {
            Scalar self = work.comb.at(idx);
            for (auto& [i, q] : work.comb)
                q /= self;
            relations_.push_back(std::move(work.comb));
        }
        return false;
    }
    Integer c = content(work.w);
    if (work.w.begin()->second < 0)
        c = -c;
    for (auto& [i, e] : work.w)
        e /= c;
    if (track_)
        for (auto& [i, q] : work.comb)
            q /= Scalar(c);
    const std::size_t pivot = work.w.begin()->first;
    rows_.emplace(pivot, Row{std::move(work.w), std::move(work.comb)});
    return true;
}

SparseVector Echelon::reduce(const SparseVector& v) const
{
    Work work;
    Integer l;
    work.w = to_integer(v, l);
    work.scale = Scalar(l);
    reduce_work(rows_, work, false);
    SparseVector out;
    for (const auto& [i, e] : work.w)
        out.emplace(i, Scalar(e) / work.scale);
    return out;
}

std::optional<SparseVector> Echelon::solve(const SparseVector& target) const
{
    if (!track_)
        throw DomainError("Echelon::solve needs tracking mode");
    Work work;
    Integer l;
    work.w = to_integer(target, l);
    work.scale = Scalar(l);
    reduce_work(rows_, work, true);
    if (!work.w.empty())
        return std::nullopt;
    SparseVector x;
    for (const auto& [i, q] : work.comb)
        x.emplace(i, -q / work.scale);
    return x;
}

std::vector<std::size_t> Echelon::pivots() const
{
    std::vector<std::size_t> p;
    p.reserve(rows_.size());
    for (const auto& [pivot, row] : rows_)
        p.push_back(pivot);
    return p;
}

std::size_t rank(const std::vector<SparseVector>& vectors)
{
    Echelon e;
    for (const auto& v : vectors)
        e.insert(v);
    return e.rank();
}

std::vector<SparseVector> kernel(const std::vector<SparseVector>& columns)
{
    Echelon e(true);
    for (const auto& c : columns)
        e.insert(c);
    return e.relations();
}

} // namespace udf::linalg
