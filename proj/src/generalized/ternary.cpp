#include "udf/generalized/ternary.hpp"

#include "udf/bialgebra/bialgebra.hpp"
#include "udf/error.hpp"
#include "udf/operad/operad.hpp"
#include "udf/twist/twist.hpp"

#include <algorithm>
#include <cctype>
#include <future>
#include <thread>

namespace udf {

TensorSeries circ_B(const TensorSeries& u, std::size_t i, const TensorSeries& v)
{
    const unsigned n = u.order();
    if (v.order() != n)
        throw DomainError("series orders differ");
    const auto& b = u[0].parent();
    TensorSeries out(n, b->zero(u[0].arity() + v[0].arity() - 1));
    for (unsigned k = 0; k <= n; ++k)
        for (unsigned j = 0; j + k <= n; ++j)
            if (!u[k].is_zero() && !v[j].is_zero())
                out[k + j] += circ_B(u[k], i, v[j]);
    return out;
}

TensorSeries pass_udf(const TensorSeries& F)
{
    require_udf(F);
    TensorSeries h1 = circ_B(F, 1, F);
    TensorSeries h2 = circ_B(F, 2, F);
    const int k = (h1 - h2).valuation();
    if (k >= 0)
        throw DomainError("F ∘₁ F and F ∘₂ F differ at order t^" + std::to_string(k) +
                          "; F is not a twisting element");
    return h1;
}

namespace {

std::size_t tree_of(const Monomial& m) { return static_cast<std::size_t>(m.powers().at(0).first); }

TernaryElement single(std::size_t id, const Scalar& c = Scalar(1))
{
    return TernaryElement(Monomial::variable(static_cast<int>(id)), c);
}

linalg::SparseVector to_vector(const TernaryElement& x)
{
    linalg::SparseVector v;
    for (const auto& [m, c] : x.terms())
        v.emplace(tree_of(m), c);
    return v;
}

TernaryElement from_vector(const linalg::SparseVector& v)
{
    TernaryElement x;
    for (const auto& [i, c] : v)
        x += single(i, c);
    return x;
}

} // namespace

TernaryAlgebraPtr TernaryAlgebra::free_pass(std::vector<std::string> generators, int leaf_cutoff, bool symmetric,
                                            std::size_t tree_limit)
{
    if (generators.empty())
        throw DomainError("a free algebra needs at least one generator");
    if (leaf_cutoff < 1 || leaf_cutoff % 2 == 0)
        throw DomainError("the leaf cutoff must be odd and positive, got " + std::to_string(leaf_cutoff));
    for (std::size_t i = 0; i < generators.size(); ++i) {
        const auto& g = generators[i];
        if (g.empty() || !std::all_of(g.begin(), g.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }))
            throw DomainError("bad generator name '" + g + "'");
        if (std::find(generators.begin(), generators.begin() + static_cast<long>(i), g) != generators.begin() + static_cast<long>(i))
            throw DomainError("duplicate generator '" + g + "'");
    }
    std::shared_ptr<TernaryAlgebra> a(new TernaryAlgebra());
    a->names_ = std::move(generators);
    a->cutoff_ = leaf_cutoff;
    a->symmetric_ = symmetric;
    a->enumerate(tree_limit);
    a->build_relations();
    return a;
}

void TernaryAlgebra::enumerate(std::size_t tree_limit)
{
    by_leaves_.assign(slot(cutoff_) + 1, {});
    for (std::size_t g = 0; g < names_.size(); ++g) {
        Node n;
        n.gen = static_cast<int>(g);
        nodes_.push_back(n);
        by_leaves_[0].push_back(g);
    }
    for (int n = 3; n <= cutoff_; n += 2) {
        auto& out = by_leaves_[slot(n)];
        for (int n1 = 1; n1 <= n - 2; n1 += 2)
            for (int n2 = 1; n1 + n2 <= n - 1; n2 += 2) {
                const int n3 = n - n1 - n2;
                if (symmetric_ && (n1 > n2 || n2 > n3))
                    continue;
                for (std::size_t t1 : by_leaves_[slot(n1)])
                    for (std::size_t t2 : by_leaves_[slot(n2)]) {
                        if (symmetric_ && t2 < t1)
                            continue;
                        for (std::size_t t3 : by_leaves_[slot(n3)]) {
                            if (symmetric_ && t3 < t2)
                                continue;
                            if (nodes_.size() >= tree_limit)
                                throw DomainError("leaf cutoff " + std::to_string(cutoff_) +
                                                  " needs more than " + std::to_string(tree_limit) + " trees");
                            Node node;
                            node.leaves = n;
                            node.kids = {t1, t2, t3};
                            index_.emplace(node.kids, nodes_.size());
                            out.push_back(nodes_.size());
                            nodes_.push_back(node);
                        }
                    }
            }
    }
}

std::size_t TernaryAlgebra::lookup(std::array<std::size_t, 3> kids) const
{
    if (symmetric_)
        std::sort(kids.begin(), kids.end());
    auto it = index_.find(kids);
    return it == index_.end() ? npos : it->second;
}

std::size_t TernaryAlgebra::node(std::size_t a, std::size_t b, std::size_t c) const
{
    if (leaves(a) + leaves(b) + leaves(c) > cutoff_)
        return npos;
    return lookup({a, b, c});
}

void TernaryAlgebra::build_relations()
{
    relations_.assign(by_leaves_.size(), linalg::Echelon());
    std::vector<std::vector<TernaryElement>> independent(by_leaves_.size());
    auto combo = [&](std::size_t x, std::size_t y, std::size_t z) { return single(node(x, y, z)); };

    for (int n = 5; n <= cutoff_; n += 2) {
        const std::size_t s = slot(n);
        auto add = [&](const TernaryElement& r) {
            if (relations_[s].insert(to_vector(r)))
                independent[s].push_back(r);
        };
        // instances at the root: the root reads as (a, b, (c, d, e))
        for (std::size_t t : by_leaves_[s]) {
            const auto kids = children(t);
            if (!symmetric_) {
                if (is_leaf(kids[2]))
                    continue;
                const auto [a, b] = std::pair{kids[0], kids[1]};
                const auto [c, d, e] = children(kids[2]);
                add(combo(a, b, node(c, d, e)) + combo(a, node(b, c, d), e) + combo(node(a, b, c), d, e));
                continue;
            }
            for (int i = 0; i < 3; ++i) {
                const std::size_t x = kids[static_cast<std::size_t>(i)];
                if (is_leaf(x))
                    continue;
                std::array<std::size_t, 2> ab;
                for (int j = 0, k = 0; j < 3; ++j)
                    if (j != i)
                        ab[static_cast<std::size_t>(k++)] = kids[static_cast<std::size_t>(j)];
                std::array<std::size_t, 3> cde = children(x);
                std::sort(cde.begin(), cde.end());
                for (int flip = 0; flip < 2; ++flip) {
                    const std::size_t a = ab[static_cast<std::size_t>(flip)], b = ab[static_cast<std::size_t>(1 - flip)];
                    auto p = cde;
                    do {
                        const auto [c, d, e] = p;
                        add(combo(a, b, node(c, d, e)) + combo(a, node(b, c, d), e) + combo(node(a, b, c), d, e));
                    } while (std::next_permutation(p.begin(), p.end()));
                }
            }
        }
        // instances inside a context: wrap lower relations
        for (int n1 = 5; n1 < n; n1 += 2)
            for (const auto& r : independent[slot(n1)])
                for (int ny = 1; n1 + ny <= n - 1; ny += 2) {
                    const int nz = n - n1 - ny;
                    for (std::size_t y : by_leaves_[slot(ny)])
                        for (std::size_t z : by_leaves_[slot(nz)]) {
                            const TernaryElement ey = single(y), ez = single(z);
                            add(product_raw(r, ey, ez));
                            if (symmetric_)
                                continue;
                            add(product_raw(ey, r, ez));
                            add(product_raw(ey, ez, r));
                        }
                }
    }
    for (const auto& level : by_leaves_) {
        const std::size_t s = slot(leaves(level.front()));
        const auto piv = relations_[s].pivots();
        for (std::size_t t : level)
            if (!std::binary_search(piv.begin(), piv.end(), t))
                basis_.push_back(t);
    }
}

std::size_t TernaryAlgebra::tree_count(int leaves) const
{
    if (leaves < 1 || leaves % 2 == 0 || leaves > cutoff_)
        return 0;
    return by_leaves_[slot(leaves)].size();
}

std::size_t TernaryAlgebra::relation_rank(int leaves) const
{
    if (leaves < 1 || leaves % 2 == 0 || leaves > cutoff_)
        return 0;
    return relations_[slot(leaves)].rank();
}

std::size_t TernaryAlgebra::dimension(int leaves) const { return tree_count(leaves) - relation_rank(leaves); }

std::string TernaryAlgebra::render_tree(std::size_t tree) const
{
    const Node& n = nodes_.at(tree);
    if (n.gen >= 0)
        return names_[static_cast<std::size_t>(n.gen)];
    return "(" + render_tree(n.kids[0]) + "," + render_tree(n.kids[1]) + "," + render_tree(n.kids[2]) + ")";
}

TernaryElement TernaryAlgebra::generator(const std::string& name) const
{
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end())
        throw DomainError("no generator '" + name + "'");
    return single(static_cast<std::size_t>(it - names_.begin()));
}

TernaryElement TernaryAlgebra::tree(std::size_t id) const
{
    if (id >= nodes_.size())
        throw DomainError("no tree " + std::to_string(id));
    return single(id);
}

namespace {

struct TreeParser {
    const TernaryAlgebra& a;
    std::string_view s;
    std::size_t pos = 0;

    void skip()
    {
        while (pos < s.size() && s[pos] == ' ')
            ++pos;
    }
    std::size_t tree()
    {
        skip();
        if (pos < s.size() && s[pos] == '(') {
            ++pos;
            std::array<std::size_t, 3> kids{};
            for (int i = 0; i < 3; ++i) {
                kids[static_cast<std::size_t>(i)] = tree();
                skip();
                const char want = i < 2 ? ',' : ')';
                if (pos >= s.size() || s[pos] != want)
                    throw DomainError("expected '" + std::string(1, want) + "' in '" + std::string(s) + "'");
                ++pos;
            }
            const std::size_t id = a.node(kids[0], kids[1], kids[2]);
            if (id == TernaryAlgebra::npos)
                throw DomainError("'" + std::string(s) + "' exceeds the leaf cutoff");
            return id;
        }
        const std::size_t start = pos;
        while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
            ++pos;
        const std::string name(s.substr(start, pos - start));
        const auto& g = a.generators();
        auto it = std::find(g.begin(), g.end(), name);
        if (it == g.end())
            throw DomainError("no generator '" + name + "' in '" + std::string(s) + "'");
        return static_cast<std::size_t>(it - g.begin());
    }
};

} // namespace

TernaryElement TernaryAlgebra::parse(const std::string& text) const
{
    // split at top-level signs
    std::vector<std::string> terms;
    std::string cur;
    int depth = 0;
    for (char ch : text) {
        if (ch == '(')
            ++depth;
        if (ch == ')')
            --depth;
        if (depth == 0 && (ch == '+' || ch == '-')) {
            bool blank = std::all_of(cur.begin(), cur.end(), [](char c) { return c == ' ' || c == '-'; });
            if (!blank || ch == '+') {
                if (!blank)
                    terms.push_back(cur);
                cur.clear();
            }
            if (ch == '-')
                cur += '-';
            continue;
        }
        cur += ch;
    }
    if (depth != 0)
        throw DomainError("unbalanced parentheses in '" + text + "'");
    terms.push_back(cur);
    TernaryElement out;
    for (auto term : terms) {
        Scalar c(1);
        std::size_t i = term.find_first_not_of(' ');
        if (i == std::string::npos)
            throw DomainError("empty term in '" + text + "'");
        term = term.substr(i);
        while (!term.empty() && term[0] == '-') {
            c = -c;
            term = term.substr(term.find_first_not_of(' ', 1) == std::string::npos ? term.size()
                                                                                 : term.find_first_not_of(' ', 1));
        }
        if (!term.empty() && (std::isdigit(static_cast<unsigned char>(term[0])))) {
            auto star = term.find('*');
            if (star == std::string::npos)
                throw DomainError("constants are not elements of a ternary algebra: '" + term + "'");
            c *= parse_scalar(term.substr(0, star));
            term = term.substr(star + 1);
        }
        TreeParser p{*this, term};
        const std::size_t id = p.tree();
        p.skip();
        if (p.pos != term.size())
            throw DomainError("trailing text in '" + term + "'");
        out += single(id, c);
    }
    return normal_form(out);
}

std::string TernaryAlgebra::render(const TernaryElement& x) const
{
    if (x.is_zero())
        return "0";
    std::string s;
    for (const auto& [m, c] : x.terms()) {
        const std::string t = render_tree(tree_of(m));
        if (s.empty()) {
            s = c == Scalar(1) ? t : c == Scalar(-1) ? "-" + t : to_string(c) + "*" + t;
            continue;
        }
        const Scalar a = sgn(c) < 0 ? -c : c;
        s += sgn(c) < 0 ? " - " : " + ";
        s += a == Scalar(1) ? t : to_string(a) + "*" + t;
    }
    return s;
}

int TernaryAlgebra::leaves_of(const TernaryElement& x) const
{
    int l = 0;
    for (const auto& [m, c] : x.terms())
        l = std::max(l, leaves(tree_of(m)));
    return l;
}

TernaryElement TernaryAlgebra::normal_form(const TernaryElement& x) const
{
    std::map<std::size_t, linalg::SparseVector> parts;
    for (const auto& [m, c] : x.terms()) {
        const std::size_t t = tree_of(m);
        if (t >= nodes_.size())
            throw DomainError("not an element of this ternary algebra");
        parts[slot(leaves(t))].emplace(t, c);
    }
    TernaryElement out;
    for (const auto& [s, v] : parts)
        out += from_vector(relations_[s].reduce(v));
    return out;
}

TernaryElement TernaryAlgebra::product_raw(const TernaryElement& x, const TernaryElement& y, const TernaryElement& z) const
{
    TernaryElement out;
    for (const auto& [mx, cx] : x.terms())
        for (const auto& [my, cy] : y.terms()) {
            const int lxy = leaves(tree_of(mx)) + leaves(tree_of(my));
            if (lxy + 1 > cutoff_)
                continue;
            for (const auto& [mz, cz] : z.terms()) {
                const std::size_t t = node(tree_of(mx), tree_of(my), tree_of(mz));
                if (t != npos)
                    out += single(t, cx * cy * cz);
            }
        }
    return out;
}

TernaryElement TernaryAlgebra::product(const TernaryElement& x, const TernaryElement& y, const TernaryElement& z) const
{
    return normal_form(product_raw(x, y, z));
}

TernaryDerivation::TernaryDerivation(TernaryAlgebraPtr a, const std::map<std::string, TernaryElement>& images)
    : a_(std::move(a)), images_(images)
{
    const TernaryAlgebra& A = *a_;
    for (const auto& [name, img] : images_) {
        A.generator(name); // throws for unknown names
        if (A.normal_form(img) != img)
            throw DomainError("image of " + name + " is not in normal form");
    }
    on_tree_.resize(A.tree_count());
    for (std::size_t t = 0; t < A.tree_count(); ++t) {
        if (A.is_leaf(t)) {
            auto it = images_.find(A.generators()[t]);
            if (it != images_.end())
                on_tree_[t] = it->second;
            continue;
        }
        const auto [x, y, z] = A.children(t);
        on_tree_[t] = A.product(on_tree_[x], A.tree(y), A.tree(z)) + A.product(A.tree(x), on_tree_[y], A.tree(z)) +
                      A.product(A.tree(x), A.tree(y), on_tree_[z]);
    }
}

TernaryDerivation TernaryDerivation::parse(TernaryAlgebraPtr a, const std::map<std::string, std::string>& images)
{
    std::map<std::string, TernaryElement> parsed;
    for (const auto& [name, text] : images)
        parsed.emplace(name, a->parse(text));
    return TernaryDerivation(std::move(a), parsed);
}

TernaryElement TernaryDerivation::apply(const TernaryElement& x) const
{
    TernaryElement out;
    for (const auto& [m, c] : x.terms())
        out += c * on_tree_.at(tree_of(m));
    // D is defined on trees; on normal forms the sum is again reduced
    return a_->normal_form(out);
}

std::string TernaryDerivation::to_string() const
{
    std::string s;
    for (const auto& [name, img] : images_)
        s += (s.empty() ? "" : ", ") + name + " -> " + a_->render(img);
    return "{" + s + "}";
}

TernaryAction::TernaryAction(BialgebraPtr b, TernaryAlgebraPtr a, std::map<std::string, TernaryDerivation> images)
    : b_(std::move(b)), a_(std::move(a)), images_(std::move(images))
{
    const auto kind = b_->kind();
    if (kind != BialgebraKind::PolynomialPrimitive && kind != BialgebraKind::TensorPrimitive)
        throw DomainError("ternary actions by derivations need a primitively generated bialgebra, got " +
                          to_string(kind));
    const auto& names = b_->generator_names();
    for (const auto& [name, d] : images_) {
        if (std::find(names.begin(), names.end(), name) == names.end())
            throw DomainError("no generator '" + name + "' in B");
        if (&d.algebra() != a_.get())
            throw DomainError("derivation for '" + name + "' acts on a different algebra");
    }
    for (const auto& name : names) {
        auto it = images_.find(name);
        if (it == images_.end())
            throw DomainError("no derivation given for generator '" + name + "'");
        by_id_.push_back(&it->second);
    }
    if (kind == BialgebraKind::PolynomialPrimitive)
        for (std::size_t i = 0; i < names.size(); ++i)
            for (std::size_t j = i + 1; j < names.size(); ++j)
                for (std::size_t t : a_->basis()) {
                    const TernaryElement x = a_->tree(t);
                    if (by_id_[i]->apply(by_id_[j]->apply(x)) != by_id_[j]->apply(by_id_[i]->apply(x)))
                        throw DomainError("the derivations for " + names[i] + " and " + names[j] +
                                          " do not commute (at " + a_->render_tree(t) + ")");
                }
}

TernaryElement TernaryAction::act(const BasisKey& key, const TernaryElement& x) const
{
    TernaryElement r = x;
    for (auto it = key.v.rbegin(); it != key.v.rend() && !r.is_zero(); ++it)
        r = by_id_.at(static_cast<std::size_t>(*it))->apply(r);
    return r;
}

TernarySeries twisted_ternary(const TensorSeries& H, const TernaryAction& action, const TernarySeries& a,
                              const TernarySeries& b, const TernarySeries& c)
{
    const unsigned n = H.order();
    if (a.order() != n || b.order() != n || c.order() != n)
        throw DomainError("series orders differ");
    if (H[0].arity() != 3)
        throw DomainError("a ternary twist has arity 3");
    if (H[0].parent() != action.bialgebra_ptr())
        throw DomainError("twist and action over different bialgebras");
    const TernaryAlgebra& A = action.algebra();
    TernarySeries out(n, TernaryElement());
    for (unsigned k = 0; k <= n; ++k)
        for (const auto& [key, coef] : H[k].terms())
            for (unsigned i = 0; k + i <= n; ++i) {
                if (a[i].is_zero())
                    continue;
                const TernaryElement x = action.act(key[0], a[i]);
                if (x.is_zero())
                    continue;
                for (unsigned j = 0; k + i + j <= n; ++j) {
                    if (b[j].is_zero())
                        continue;
                    const TernaryElement y = action.act(key[1], b[j]);
                    if (y.is_zero())
                        continue;
                    for (unsigned l = 0; k + i + j + l <= n; ++l) {
                        if (c[l].is_zero())
                            continue;
                        const TernaryElement z = action.act(key[2], c[l]);
                        if (!z.is_zero())
                            out[k + i + j + l] += coef * A.product(x, y, z);
                    }
                }
            }
    return out;
}

TernarySeries twisted_ternary(const TensorSeries& H, const TernaryAction& action, const TernaryElement& a,
                              const TernaryElement& b, const TernaryElement& c)
{
    const unsigned n = H.order();
    auto lift = [&](const TernaryElement& x) { return TernarySeries::constant(n, x, TernaryElement()); };
    return twisted_ternary(H, action, lift(a), lift(b), lift(c));
}

TernaryStructure undeformed_structure(TernaryAlgebraPtr a)
{
    return [a](const TernarySeries& x, const TernarySeries& y, const TernarySeries& z) {
        const unsigned n = x.order();
        TernarySeries out(n, TernaryElement());
        for (unsigned i = 0; i <= n; ++i)
            for (unsigned j = 0; i + j <= n; ++j)
                for (unsigned l = 0; i + j + l <= n; ++l)
                    out[i + j + l] += a->product(x[i], y[j], z[l]);
        return out;
    };
}

TernaryStructure twisted_structure(TensorSeries H, std::shared_ptr<const TernaryAction> action)
{
    return [H = std::move(H), action](const TernarySeries& x, const TernarySeries& y, const TernarySeries& z) {
        return twisted_ternary(H, *action, x, y, z);
    };
}

Report check_partial_assoc(const TernaryAlgebra& a, const TernaryStructure& product, unsigned order, int leaf_cutoff)
{
    Report r;
    r.subject = "partial associativity, mod t^" + std::to_string(order + 1) + ", at most " +
                std::to_string(leaf_cutoff) + " leaves";
    std::vector<std::array<std::size_t, 5>> tuples;
    std::array<std::size_t, 5> cur{};
    auto rec = [&](auto&& self, int pos, int budget) -> void {
        if (pos == 5) {
            tuples.push_back(cur);
            return;
        }
        for (std::size_t t : a.basis()) {
            // each remaining slot needs a leaf
            if (a.leaves(t) + (4 - pos) > budget)
                break;
            cur[static_cast<std::size_t>(pos)] = t;
            self(self, pos + 1, budget - a.leaves(t));
        }
    };
    rec(rec, 0, leaf_cutoff);

    auto lift = [&](std::size_t t) { return TernarySeries::constant(order, a.tree(t), TernaryElement()); };
    std::vector<int> val(tuples.size(), -1);
    std::vector<TernaryElement> lead(tuples.size());
    const std::size_t workers = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, 8);
    std::vector<std::future<void>> jobs;
    for (std::size_t w = 0; w < workers; ++w)
        jobs.push_back(std::async(std::launch::async, [&, w] {
            for (std::size_t i = w; i < tuples.size(); i += workers) {
                const auto& t = tuples[i];
                const TernarySeries x1 = lift(t[0]), x2 = lift(t[1]), x3 = lift(t[2]), x4 = lift(t[3]), x5 = lift(t[4]);
                const TernarySeries rel = product(x1, x2, product(x3, x4, x5)) + product(x1, product(x2, x3, x4), x5) +
                                          product(product(x1, x2, x3), x4, x5);
                val[i] = rel.valuation();
                if (val[i] >= 0)
                    lead[i] = rel[static_cast<unsigned>(val[i])];
            }
        }));
    for (auto& j : jobs)
        j.get();

    int worst = -1;
    std::size_t at = 0;
    for (std::size_t i = 0; i < tuples.size(); ++i)
        if (val[i] >= 0 && (worst < 0 || val[i] < worst)) {
            worst = val[i];
            at = i;
        }
    if (worst < 0) {
        r.add("(a,b,(c,d,e)) + (a,(b,c,d),e) + ((a,b,c),d,e) = 0", true,
              std::to_string(tuples.size()) + " basis 5-tuples");
        return r;
    }
    std::string w = "(";
    for (std::size_t k = 0; k < 5; ++k)
        w += (k ? ", " : "") + a.render_tree(tuples[at][k]);
    w += ")";
    r.add("(a,b,(c,d,e)) + (a,(b,c,d),e) + ((a,b,c),d,e) = 0", false,
          "first failure at order t^" + std::to_string(worst) + ": relation = " + a.render(lead[at]), w);
    return r;
}

} // namespace udf
