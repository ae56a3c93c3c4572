#include "udf/cobar/cobar.hpp"

#include "udf/bialgebra/coordinates.hpp"
#include "udf/error.hpp"
#include "udf/twist/twist.hpp"

#include <array>
#include <future>
#include <numeric>

namespace udf {

namespace {

void require_counital(const Bialgebra& b, const char* what)
{
    if (!b.counital())
        throw DomainError(std::string(what) + " needs a counital bialgebra");
}

TensorElement insert_unit(const TensorElement& z, std::size_t slot)
{
    // slot in 1..arity+1; the new factor 1 lands there
    TensorElement r(z.parent(), z.arity() + 1);
    const BasisKey one = z.bialgebra().unit_key();
    for (const auto& [key, c] : z.terms()) {
        TensorKey nk = key;
        nk.insert(nk.begin() + static_cast<std::ptrdiff_t>(slot - 1), one);
        r.add_term(nk, c);
    }
    return r;
}

bool reduced_slots(const TensorElement& t)
{
    for (std::size_t s = 1; s <= t.arity(); ++s)
        if (!slot_apply(SlotMap::Counit, s, t).is_zero())
            return false;
    return true;
}

int homogeneous_degree(const TensorElement& t)
{
    int deg = -2;
    for (const auto& [key, c] : t.terms()) {
        int d = 0;
        for (const auto& k : key)
            d += t.bialgebra().degree(k);
        if (deg == -2)
            deg = d;
        else if (deg != d)
            return -1;
    }
    return deg == -2 ? 0 : deg;
}

// (Δ⊗id)z − (id⊗Δ)z + z⊗1 − 1⊗z. On B̄⊗B̄ this is d₂, on B⊗B it is the
// left-hand side minus the right-hand side of the additive twist equation.
TensorElement twist_defect(const TensorElement& z)
{
    return slot_apply(SlotMap::Coproduct, 1, z) - slot_apply(SlotMap::Coproduct, 2, z) + insert_unit(z, 3) -
           insert_unit(z, 1);
}

Scalar counit_of(const Bialgebra& b, const BasisKey& k) { return b.counit(k); }

std::vector<int> block_degrees(const Bialgebra& b, int cutoff)
{
    if (b.grouplike_graded())
        return {cutoff};
    std::vector<int> out(static_cast<std::size_t>(cutoff + 1));
    std::iota(out.begin(), out.end(), 0);
    return out;
}

// Basis keys of B (unit included) living in a block, grouped by degree.
std::vector<BasisKey> block_keys(const Bialgebra& b, int cutoff)
{
    return b.finite_monoid_kind() ? b.basis_up_to(1) : b.basis_up_to(cutoff);
}

void require_cutoff(const Bialgebra& b, int cutoff)
{
    const int least = b.grouplike_graded() ? 1 : 2;
    if (cutoff < least)
        throw DomainError("cutoff " + std::to_string(cutoff) + " is too small to contain any degree-2 cochain");
    if (cutoff > b.degree_cutoff())
        throw DomainError("cutoff " + std::to_string(cutoff) + " exceeds the bialgebra cutoff " +
                          std::to_string(b.degree_cutoff()));
    if (b.grouplike_graded())
        return;
    for (const auto& k : b.basis_up_to(cutoff))
        for (const auto& e : b.coproduct(k))
            if (b.degree(e.left) + b.degree(e.right) != b.degree(k))
                throw DomainError("the coproduct of " + b.render(k) + " is not homogeneous; no internal grading");
}

// Integral content 1 with a positive leading coefficient.
TensorElement normalize(const TensorElement& t)
{
    if (t.is_zero())
        return t;
    Integer l = 1, g = 0;
    for (const auto& [k, c] : t.terms())
        l = lcm(l, Integer(c.get_den()));
    for (const auto& [k, c] : t.terms())
        g = gcd(g, Integer(c.get_num() * (l / c.get_den())));
    Scalar s(l, g);
    s.canonicalize();
    if (sgn(t.terms().begin()->second) < 0)
        s = -s;
    return s * t;
}

// Picks representatives of ker/im. With a cocommutative parent the
// antisymmetric part of each class is preferred when it represents the same
// class, which gives p1⊗p2 − p2⊗p1 instead of p1⊗p2.
std::vector<TensorElement> pick_representatives(const std::vector<TensorElement>& cocycles,
                                                std::vector<linalg::SparseVector> image, TensorIndexer& idx,
                                                bool cocommutative)
{
    linalg::Echelon span;
    for (const auto& v : image)
        span.insert(v);
    const linalg::Echelon boundaries = span;
    std::vector<TensorElement> reps;
    for (const auto& z : cocycles) {
        if (!span.insert(idx.vectorize(z)))
            continue;
        TensorElement rep = z;
        if (cocommutative) {
            TensorElement anti = Scalar(1, 2) * (z - flip(z));
            if (!anti.is_zero() && boundaries.contains(idx.vectorize(z - anti)))
                rep = anti;
        }
        reps.push_back(normalize(rep));
    }
    return reps;
}

bool is_cocommutative(const Bialgebra& b, int cutoff)
{
    return check_cocommutative(b, b.finite_monoid_kind() ? 1 : cutoff).cocommutative;
}

} // namespace

TensorElement reduced_diagonal(const TensorElement& u)
{
    if (u.arity() != 1)
        throw DomainError("reduced_diagonal needs an element of B");
    require_counital(u.bialgebra(), "reduced_diagonal");
    if (!slot_apply(SlotMap::Counit, 1, u).is_zero())
        throw DomainError("reduced_diagonal needs ε(u) = 0, got ε(" + u.to_string() + ") = " +
                          slot_apply(SlotMap::Counit, 1, u).to_string());
    const TensorElement one = u.bialgebra().one();
    return slot_apply(SlotMap::Coproduct, 1, u) - otimes(u, one) - otimes(one, u);
}

CobarCochain::CobarCochain(TensorElement value) : value_(std::move(value)), degree_(0)
{
    if (value_.arity() < 1 || value_.arity() > 3)
        throw DomainError("cobar cochains have word length 1, 2 or 3");
    require_counital(value_.bialgebra(), "the cobar complex");
    if (!reduced_slots(value_))
        throw DomainError("cobar cochain with a slot outside Ker ε: " + value_.to_string());
    degree_ = homogeneous_degree(value_);
}

CobarCochain differential(const CobarCochain& c)
{
    const TensorElement& z = c.value();
    if (c.word_length() == 1)
        return CobarCochain(reduced_diagonal(z));
    if (c.word_length() == 2)
        return CobarCochain(twist_defect(z));
    throw DomainError("differential supports word length 1 or 2");
}

CobarComplex::CobarComplex(BialgebraPtr b, int cutoff) : b_(std::move(b)), cutoff_(cutoff)
{
    const Bialgebra& B = *b_;
    require_counital(B, "the cobar complex");
    require_cutoff(B, cutoff);
    const BasisKey unit = B.unit_key();
    const bool filtered = B.grouplike_graded();

    std::vector<BasisKey> all;
    for (const auto& k : block_keys(B, cutoff))
        if (k != unit)
            all.push_back(k);

    for (int g : block_degrees(B, cutoff)) {
        CobarBlock blk;
        blk.degree = g;
        blk.filtered = filtered;
        for (const auto& k : all)
            if (filtered || B.degree(k) == g)
                blk.reduced.push_back(k);
        for (const auto& x : all)
            for (const auto& y : all)
                if (filtered || B.degree(x) + B.degree(y) == g)
                    blk.pairs.emplace_back(x, y);
        std::map<std::pair<BasisKey, BasisKey>, std::size_t> pair_index;
        for (std::size_t i = 0; i < blk.pairs.size(); ++i)
            pair_index.emplace(blk.pairs[i], i);

        // Δ̄ in reduced coordinates is Δ restricted to pairs of non-unit keys.
        auto diag = [&](const BasisKey& x) {
            std::vector<std::pair<std::pair<BasisKey, BasisKey>, Scalar>> out;
            for (const auto& e : B.coproduct(x))
                if (e.left != unit && e.right != unit)
                    out.push_back({{e.left, e.right}, e.coeff});
            return out;
        };

        for (const auto& x : blk.reduced) {
            linalg::SparseVector col;
            for (const auto& [p, c] : diag(x)) {
                auto it = pair_index.find(p);
                if (it == pair_index.end())
                    throw DomainError("Δ̄(" + B.render(x) + ") leaves the degree block");
                col[it->second] += c;
            }
            blk.d1.push_back(std::move(col));
        }

        std::map<std::array<BasisKey, 3>, std::size_t> triples;
        auto triple = [&](const BasisKey& a, const BasisKey& c, const BasisKey& e) {
            return triples.try_emplace({a, c, e}, triples.size()).first->second;
        };
        for (const auto& [x, y] : blk.pairs) {
            linalg::SparseVector col;
            for (const auto& [p, c] : diag(x))
                col[triple(p.first, p.second, y)] += c;
            for (const auto& [p, c] : diag(y))
                col[triple(x, p.first, p.second)] -= c;
            std::erase_if(col, [](const auto& kv) { return is_zero(kv.second); });
            blk.d2.push_back(std::move(col));
        }
        blk.triple_count = triples.size();

        for (std::size_t j = 0; j < blk.d1.size(); ++j) {
            linalg::SparseVector dd;
            for (const auto& [i, c] : blk.d1[j])
                for (const auto& [r, e] : blk.d2[i])
                    dd[r] += c * e;
            std::erase_if(dd, [](const auto& kv) { return is_zero(kv.second); });
            if (!dd.empty())
                throw DomainError("d∘d != 0 on " + B.render(blk.reduced[j]) + "; the coalgebra is not coassociative");
        }
        blocks_.push_back(std::move(blk));
    }
}

TensorElement CobarComplex::render(const CobarBlock& block, const linalg::SparseVector& v) const
{
    const Bialgebra& B = *b_;
    auto bar = [&](const BasisKey& k) { return B.basis_element(k) - counit_of(B, k) * B.one(); };
    TensorElement out = B.zero(2);
    for (const auto& [i, c] : v) {
        const auto& [x, y] = block.pairs.at(i);
        out += c * otimes(bar(x), bar(y));
    }
    return out;
}

std::size_t CohomologyResult::total() const
{
    std::size_t s = 0;
    for (const auto& b : blocks)
        s += b.dim;
    return s;
}

std::map<int, std::size_t> CohomologyResult::profile() const
{
    std::map<int, std::size_t> p;
    for (const auto& b : blocks)
        p[b.degree] = b.dim;
    return p;
}

CohomologyResult h2(const BialgebraPtr& b, int cutoff)
{
    const CobarComplex complex(b, cutoff);
    const bool cocomm = is_cocommutative(*b, cutoff);
    CohomologyResult res;
    res.method = "cobar";
    res.cutoff = cutoff;
    std::vector<std::future<CohomologyBlock>> jobs;
    for (const auto& blk : complex.blocks())
        jobs.push_back(std::async(std::launch::async, [&, cocomm] {
            CohomologyBlock out;
            out.degree = blk.degree;
            out.filtered = blk.filtered;
            const auto ker = linalg::kernel(blk.d2);
            out.cocycles = ker.size();
            out.coboundaries = linalg::rank(blk.d1);
            out.dim = out.cocycles - out.coboundaries;
            TensorIndexer idx;
            std::vector<TensorElement> cocycles;
            for (const auto& v : ker)
                cocycles.push_back(complex.render(blk, v));
            std::vector<linalg::SparseVector> image;
            for (const auto& col : blk.d1)
                image.push_back(idx.vectorize(complex.render(blk, col)));
            out.representatives = pick_representatives(cocycles, image, idx, cocomm);
            if (out.representatives.size() != out.dim)
                throw DomainError("cobar block " + std::to_string(blk.degree) + ": image of d1 not inside ker d2");
            return out;
        }));
    for (auto& j : jobs)
        res.blocks.push_back(j.get());
    return res;
}

namespace {

struct DirectBlock {
    CohomologyBlock result;
    // ker L as elements of B⊗B and the coboundary image, both vectorized by idx
    std::vector<TensorElement> solutions;
    std::vector<linalg::SparseVector> image;
    TensorIndexer idx;
};

DirectBlock solve_direct_block(const BialgebraPtr& bp, int g, bool filtered, int cutoff, bool cocomm)
{
    const Bialgebra& B = *bp;
    const auto keys = block_keys(B, cutoff);
    DirectBlock out;
    out.result.degree = g;
    out.result.filtered = filtered;

    std::vector<TensorElement> unknowns;
    for (const auto& x : keys)
        for (const auto& y : keys)
            if (filtered || B.degree(x) + B.degree(y) == g)
                unknowns.push_back(otimes(B.basis_element(x), B.basis_element(y)));
    TensorIndexer rows;
    std::vector<linalg::SparseVector> cols;
    for (const auto& u : unknowns)
        cols.push_back(rows.vectorize(twist_defect(u)));
    const auto ker = linalg::kernel(cols);
    for (const auto& v : ker) {
        TensorElement s = B.zero(2);
        for (const auto& [j, c] : v)
            s += c * unknowns[j];
        out.solutions.push_back(std::move(s));
    }
    for (const auto& x : keys)
        if (filtered || B.degree(x) == g) {
            TensorElement cob = additive_coboundary(B.basis_element(x));
            if (!twist_defect(cob).is_zero())
                throw DomainError("coboundary of " + B.render(x) + " does not solve the twist equation");
            out.image.push_back(out.idx.vectorize(cob));
        }
    out.result.cocycles = ker.size();
    out.result.coboundaries = linalg::rank(out.image);
    out.result.dim = out.result.cocycles - out.result.coboundaries;
    out.result.representatives = pick_representatives(out.solutions, out.image, out.idx, cocomm);
    return out;
}

std::vector<DirectBlock> solve_direct(const BialgebraPtr& b, int cutoff)
{
    require_counital(*b, "twi_direct");
    require_cutoff(*b, cutoff);
    const bool cocomm = is_cocommutative(*b, cutoff);
    std::vector<std::future<DirectBlock>> jobs;
    for (int g : block_degrees(*b, cutoff))
        jobs.push_back(std::async(std::launch::async, solve_direct_block, b, g, b->grouplike_graded(), cutoff, cocomm));
    std::vector<DirectBlock> out;
    for (auto& j : jobs)
        out.push_back(j.get());
    return out;
}

} // namespace

CohomologyResult twi_direct(const BialgebraPtr& b, int cutoff)
{
    CohomologyResult res;
    res.method = "direct";
    res.cutoff = cutoff;
    for (auto& blk : solve_direct(b, cutoff))
        res.blocks.push_back(std::move(blk.result));
    return res;
}

Report check_twi_reduction(const BialgebraPtr& b, int cutoff)
{
    Report r;
    r.subject = "twi(" + to_string(b->kind()) + ") cutoff " + std::to_string(cutoff);
    const CobarComplex complex(b, cutoff);
    auto direct = solve_direct(b, cutoff);
    const auto cobar = h2(b, cutoff);

    bool same = true;
    std::string mismatch;
    for (std::size_t i = 0; i < direct.size(); ++i) {
        const auto& d = direct[i].result;
        const auto& c = cobar.blocks[i];
        if (d.dim != c.dim && same) {
            same = false;
            mismatch = "degree " + std::to_string(d.degree) + ": direct " + std::to_string(d.dim) + ", cobar " +
                       std::to_string(c.dim);
        }
    }
    r.add("dimensions agree", same, "direct solver vs cobar H² per degree", mismatch);

    bool reduced = true;
    std::string witness;
    for (std::size_t i = 0; i < direct.size() && reduced; ++i) {
        auto& blk = direct[i];
        linalg::Echelon span;
        for (const auto& v : blk.image)
            span.insert(v);
        for (const auto& v : linalg::kernel(complex.blocks()[i].d2))
            span.insert(blk.idx.vectorize(complex.render(complex.blocks()[i], v)));
        for (const auto& s : blk.solutions)
            if (!span.contains(blk.idx.vectorize(s))) {
                reduced = false;
                witness = s.to_string();
                break;
            }
    }
    r.add("solutions reduce to B̄⊗B̄", reduced, "every solution is equivalent to a cocycle in B̄⊗B̄", witness);

    bool reps = true;
    std::string rep_witness;
    for (std::size_t i = 0; i < direct.size() && reps; ++i) {
        const auto& dr = direct[i].result.representatives;
        const auto& cr = cobar.blocks[i].representatives;
        auto& blk = direct[i];
        linalg::Echelon span;
        for (const auto& v : blk.image)
            span.insert(v);
        const std::size_t base = span.rank();
        for (const auto& x : cr)
            span.insert(blk.idx.vectorize(x));
        for (const auto& x : dr)
            if (span.insert(blk.idx.vectorize(x))) {
                reps = false;
                rep_witness = x.to_string();
                break;
            }
        if (span.rank() != base + cr.size()) {
            reps = false;
            if (rep_witness.empty())
                rep_witness = "degree " + std::to_string(blk.result.degree);
        }
    }
    r.add("representatives span the same classes", reps, "cobar and direct representatives modulo coboundaries",
          rep_witness);
    return r;
}

bool same_twi_class(const TensorElement& a, const TensorElement& b, int max_degree)
{
    if (a.arity() != 2)
        throw DomainError("twi classes live in B⊗B");
    return solve_additive_coboundary(a - b, max_degree).has_value();
}

long lambda_expected(long k)
{
    if (k < 0)
        throw DomainError("lambda_expected needs k >= 0");
    return k * (k - 1) / 2;
}

} // namespace udf
