#include "udf/deform/deform.hpp"

#include "udf/error.hpp"
#include "udf/kernel/linalg.hpp"

#include <algorithm>
#include <future>
#include <thread>
#include <stdexcept>

namespace udf {

namespace {

bool primitive_kind(BialgebraKind k)
{
    return k == BialgebraKind::PolynomialPrimitive || k == BialgebraKind::TensorPrimitive;
}

bool commutative_kind(BialgebraKind k) { return k != BialgebraKind::TensorPrimitive; }

std::string tuple_text(const Algebra& a, const std::vector<Monomial>& t)
{
    std::string s = "(";
    for (std::size_t i = 0; i < t.size(); ++i)
        s += (i ? ", " : "") + a.render(t[i]);
    return s + ")";
}

// Basis tuples of length n with total degree <= d (finite kinds: all).
std::vector<std::vector<Monomial>> tuples(const Algebra& a, int n, int d)
{
    const bool all = a.kind() == AlgebraKind::FiniteDimensional;
    const auto basis = all ? a.basis() : a.basis_up_to(d);
    std::vector<std::vector<Monomial>> out;
    std::vector<Monomial> cur;
    auto rec = [&](auto&& self, int budget, int target) -> void {
        if (static_cast<int>(cur.size()) == n) {
            if (all || budget == 0)
                out.push_back(cur);
            return;
        }
        for (const auto& m : basis) {
            if (!all && a.degree(m) > budget)
                continue;
            cur.push_back(m);
            self(self, all ? budget : budget - a.degree(m), target);
            cur.pop_back();
        }
    };
    if (all) {
        rec(rec, 0, 0);
        return out;
    }
    // grouped by total degree
    for (int s = 0; s <= d; ++s)
        rec(rec, s, s);
    return out;
}

std::string series_text(const Algebra& a, const AlgSeries& s)
{
    std::string out;
    for (unsigned k = 0; k <= s.order(); ++k) {
        if (s[k].is_zero())
            continue;
        if (!out.empty())
            out += " + ";
        const std::string body = a.render(s[k]);
        if (k == 0)
            out += body;
        else
            out += (k == 1 ? std::string("t") : "t^" + std::to_string(k)) + "*(" + body + ")";
    }
    return out.empty() ? "0" : out;
}

} // namespace

std::string render(const Algebra& a, const AlgSeries& s) { return series_text(a, s); }

ModuleAction::ModuleAction(BialgebraPtr b, AlgebraPtr a, std::map<std::string, LinearOperator> images)
    : b_(std::move(b)), a_(std::move(a)), images_(std::move(images))
{
    const Bialgebra& B = *b_;
    const Algebra& A = *a_;
    const auto& names = B.generator_names();
    const bool finite = B.finite_monoid_kind();
    const std::string unit_name = finite ? B.render(BasisKey{{}}) : "";

    for (const auto& [name, op] : images_) {
        if (std::find(names.begin(), names.end(), name) == names.end())
            throw DomainError("no generator '" + name + "' in B");
        if (op.parent() != a_)
            throw DomainError("operator for '" + name + "' acts on a different algebra");
    }
    by_id_.assign(names.size(), nullptr);
    for (std::size_t i = 0; i < names.size(); ++i) {
        auto it = images_.find(names[i]);
        const bool is_unit = finite && B.generator_key(i).v.empty();
        if (it == images_.end()) {
            if (!is_unit)
                throw DomainError("no operator given for generator '" + names[i] + "'");
            continue;
        }
        by_id_[i] = &it->second;
    }

    const auto basis = A.kind() == AlgebraKind::FiniteDimensional ? A.basis() : A.basis_up_to(A.cutoff());
    auto pair_fits = [&](const Monomial& x, const Monomial& y) {
        return A.kind() == AlgebraKind::FiniteDimensional || A.degree(x) + A.degree(y) <= A.cutoff();
    };
    const BialgebraKind kind = B.kind();

    for (std::size_t i = 0; i < names.size(); ++i) {
        const LinearOperator* op = by_id_[i];
        if (!op)
            continue;
        if (primitive_kind(kind)) {
            for (const auto& x : basis)
                for (const auto& y : basis) {
                    if (!pair_fits(x, y))
                        continue;
                    const AlgElement ex(x), ey(y);
                    const AlgElement lhs = op->apply_unbounded(A.multiply_unbounded(ex, ey));
                    const AlgElement rhs = A.multiply_unbounded(op->apply_unbounded(ex), ey) +
                                           A.multiply_unbounded(ex, op->apply_unbounded(ey));
                    if (lhs != rhs)
                        throw DomainError("the image of " + names[i] + " is not a derivation: Leibniz fails on " +
                                          tuple_text(A, {x, y}));
                }
        }
        if (kind == BialgebraKind::Monoid) {
            const bool is_unit = finite && B.generator_key(i).v.empty();
            if (op->apply_unbounded(A.one()) != A.one())
                throw DomainError("the image of " + names[i] + " does not fix 1");
            for (const auto& x : basis) {
                if (is_unit && op->apply_unbounded(AlgElement(x)) != AlgElement(x))
                    throw DomainError("the unit of the monoid must act as the identity");
                for (const auto& y : basis) {
                    if (!pair_fits(x, y))
                        continue;
                    const AlgElement ex(x), ey(y);
                    if (op->apply_unbounded(A.multiply_unbounded(ex, ey)) !=
                        A.multiply_unbounded(op->apply_unbounded(ex), op->apply_unbounded(ey)))
                        throw DomainError("the image of " + names[i] + " is not multiplicative on " +
                                          tuple_text(A, {x, y}));
                }
            }
        }
    }
    if (commutative_kind(kind) && !finite) {
        for (std::size_t i = 0; i < names.size(); ++i)
            for (std::size_t j = i + 1; j < names.size(); ++j)
                for (const auto& x : basis) {
                    const AlgElement ex(x);
                    if (by_id_[i]->apply_unbounded(by_id_[j]->apply_unbounded(ex)) !=
                        by_id_[j]->apply_unbounded(by_id_[i]->apply_unbounded(ex)))
                        throw DomainError("the images of " + names[i] + " and " + names[j] +
                                          " do not commute (at " + A.render(x) + ")");
                }
    }
    if (finite) {
        for (std::size_t i = 0; i < names.size(); ++i)
            for (std::size_t j = 0; j < names.size(); ++j) {
                const BasisKey ki = B.generator_key(i), kj = B.generator_key(j);
                const BasisKey kij = B.multiply(ki, kj);
                for (const auto& x : basis) {
                    const AlgElement ex(x);
                    auto run = [&](const BasisKey& k, const AlgElement& v) {
                        return k.v.empty() ? v : by_id_[static_cast<std::size_t>(k.v[0])]->apply_unbounded(v);
                    };
                    if (run(ki, run(kj, ex)) != run(kij, ex))
                        throw DomainError("the monoid table is not represented: " + names[i] + "·" + names[j] +
                                          " acts differently from its product on " + A.render(x));
                }
            }
    }
    (void)unit_name;
}

const LinearOperator& ModuleAction::image_of(int generator) const
{
    const LinearOperator* op = by_id_.at(static_cast<std::size_t>(generator));
    if (!op)
        throw DomainError("no operator for generator " + std::to_string(generator));
    return *op;
}

AlgElement ModuleAction::act(const BasisKey& key, const AlgElement& x) const
{
    if (b_->finite_monoid_kind())
        return key.v.empty() ? x : image_of(key.v[0]).apply(x);
    AlgElement r = x;
    for (auto it = key.v.rbegin(); it != key.v.rend() && !r.is_zero(); ++it)
        r = image_of(*it).apply(r);
    return r;
}

AlgElement ModuleAction::act(const TensorElement& b, const AlgElement& x) const
{
    if (b.arity() != 1)
        throw DomainError("acting by an element of arity " + std::to_string(b.arity()));
    if (b.parent() != b_)
        throw DomainError("acting element from a different bialgebra");
    AlgElement r;
    for (const auto& [key, c] : b.terms())
        r += c * act(key[0], x);
    return r;
}

AlgElement ModuleAction::apply_pair(const TensorElement& T, const AlgElement& x, const AlgElement& y) const
{
    if (T.arity() != 2)
        throw DomainError("apply_pair needs an element of B⊗B");
    if (T.parent() != b_)
        throw DomainError("twisting element over a different bialgebra");
    AlgElement r;
    std::map<BasisKey, AlgElement> left, right;
    for (const auto& [key, c] : T.terms()) {
        auto l = left.find(key[0]);
        if (l == left.end())
            l = left.emplace(key[0], act(key[0], x)).first;
        if (l->second.is_zero())
            continue;
        auto rr = right.find(key[1]);
        if (rr == right.end())
            rr = right.emplace(key[1], act(key[1], y)).first;
        if (rr->second.is_zero())
            continue;
        r += c * a_->multiply(l->second, rr->second);
    }
    return r;
}

ModuleAction action_from_derivations(BialgebraPtr b, AlgebraPtr a, std::map<std::string, LinearOperator> images)
{
    if (!primitive_kind(b->kind()))
        throw DomainError("action_from_derivations needs a primitively generated bialgebra, got " + to_string(b->kind()));
    return ModuleAction(std::move(b), std::move(a), std::move(images));
}

Report check_module_algebra(const ModuleAction& action, int cutoff, int b_degree)
{
    const Bialgebra& B = action.bialgebra();
    const Algebra& A = action.algebra();
    Report r;
    r.subject = "module algebra over " + to_string(B.kind());
    const auto bkeys = B.finite_monoid_kind() ? B.basis_up_to(1) : B.basis_up_to(std::min(b_degree, B.degree_cutoff()));
    std::string lin_witness, unit_witness;
    std::size_t checked = 0, skipped = 0;
    for (const auto& bk : bkeys) {
        const auto& cop = B.coproduct(bk);
        if (unit_witness.empty()) {
            try {
                if (action.act(bk, A.one()) != B.counit(bk) * A.one())
                    unit_witness = "b = " + B.render(bk) + ": b·1 = " + A.render(action.act(bk, A.one()));
            } catch (const CutoffOverflow&) {
                ++skipped;
            }
        }
        for (const auto& pair : tuples(A, 2, cutoff)) {
            if (!lin_witness.empty())
                break;
            const AlgElement x(pair[0]), y(pair[1]);
            try {
                const AlgElement lhs = action.act(bk, A.multiply(x, y));
                AlgElement rhs;
                for (const auto& e : cop)
                    rhs += e.coeff * A.multiply(action.act(e.left, x), action.act(e.right, y));
                ++checked;
                if (lhs != rhs)
                    lin_witness = "b = " + B.render(bk) + "; (x, y) = " + tuple_text(A, pair) + ": " + A.render(lhs) +
                                  " vs " + A.render(rhs);
            } catch (const CutoffOverflow&) {
                ++skipped;
            }
        }
    }
    const std::string detail = std::to_string(checked) + " (b, x, y) cases" +
                               (skipped ? ", " + std::to_string(skipped) + " beyond the cutoff of A skipped" : "");
    r.add("b(xy) = Σ (b₍₁₎x)(b₍₂₎y)", lin_witness.empty(), detail, lin_witness);
    r.add("b·1 = ε(b)1", unit_witness.empty(), "B basis up to degree " + std::to_string(b_degree), unit_witness);
    return r;
}

AlgSeries twisted_product(const TensorSeries& F, const ModuleAction& action, const AlgSeries& x, const AlgSeries& y)
{
    const unsigned n = F.order();
    if (x.order() != n || y.order() != n)
        throw DomainError("series orders differ");
    AlgSeries out(n, AlgElement());
    for (unsigned i = 0; i <= n; ++i) {
        if (F[i].is_zero())
            continue;
        for (unsigned j = 0; i + j <= n; ++j) {
            if (x[j].is_zero())
                continue;
            for (unsigned l = 0; i + j + l <= n; ++l)
                if (!y[l].is_zero())
                    out[i + j + l] += action.apply_pair(F[i], x[j], y[l]);
        }
    }
    return out;
}

AlgSeries twisted_product(const TensorSeries& F, const ModuleAction& action, const AlgElement& x, const AlgElement& y)
{
    const unsigned n = F.order();
    return twisted_product(F, action, AlgSeries::constant(n, x, AlgElement()), AlgSeries::constant(n, y, AlgElement()));
}

Report check_associativity(const TensorSeries& F, const ModuleAction& action, int d)
{
    if (F[0].parent() != action.bialgebra_ptr())
        throw DomainError("twist and action over different bialgebras");
    const Algebra& A = action.algebra();
    const unsigned n = F.order();
    Report r;
    r.subject = "twisted product, mod t^" + std::to_string(n + 1) + ", total degree <= " + std::to_string(d);
    auto lift = [&](const Monomial& m) { return AlgSeries::constant(n, AlgElement(m), AlgElement()); };

    const auto triples = tuples(A, 3, d);
    // valuation of the associator per triple; chunks run in parallel, the
    // witness is picked afterwards in sweep order
    std::vector<int> val(triples.size(), -1);
    std::vector<AlgElement> lead(triples.size());
    const std::size_t workers = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, 8);
    std::vector<std::future<void>> jobs;
    for (std::size_t w = 0; w < workers; ++w)
        jobs.push_back(std::async(std::launch::async, [&, w] {
            for (std::size_t i = w; i < triples.size(); i += workers) {
                const auto& t = triples[i];
                const AlgSeries a = lift(t[0]), b = lift(t[1]), c = lift(t[2]);
                const AlgSeries diff = twisted_product(F, action, twisted_product(F, action, a, b), c) -
                                       twisted_product(F, action, a, twisted_product(F, action, b, c));
                val[i] = diff.valuation();
                if (val[i] >= 0)
                    lead[i] = diff[static_cast<unsigned>(val[i])];
            }
        }));
    for (auto& j : jobs)
        j.get();
    int worst = -1;
    std::string witness, diff_text;
    const std::size_t count = triples.size();
    for (std::size_t i = 0; i < count; ++i)
        if (val[i] >= 0 && (worst < 0 || val[i] < worst)) {
            worst = val[i];
            witness = tuple_text(A, triples[i]);
            diff_text = A.render(lead[i]);
        }
    if (worst < 0)
        r.add("associativity", true, std::to_string(count) + " basis triples");
    else
        r.add("associativity", false,
              "first failure at order t^" + std::to_string(worst) + ": (x*y)*z - x*(y*z) = " + diff_text, witness);

    std::string unit_witness;
    const AlgSeries one = lift(Monomial());
    for (const auto& m : A.kind() == AlgebraKind::FiniteDimensional ? A.basis() : A.basis_up_to(d)) {
        const AlgSeries x = lift(m);
        if (twisted_product(F, action, one, x) != x || twisted_product(F, action, x, one) != x) {
            unit_witness = A.render(m);
            break;
        }
    }
    r.add("unit", unit_witness.empty(), "1*x = x = x*1", unit_witness);
    return r;
}

HochschildCochain::HochschildCochain(AlgebraPtr a, int n, int d) : a_(std::move(a)), n_(n), d_(d)
{
    if (n < 1 || n > 3)
        throw DomainError("Hochschild cochains of arity 1..3 only");
}

std::vector<std::vector<Monomial>> HochschildCochain::domain() const { return tuples(*a_, n_, d_); }

void HochschildCochain::set(const std::vector<Monomial>& args, AlgElement value)
{
    if (static_cast<int>(args.size()) != n_)
        throw DomainError("wrong number of arguments for a cochain");
    if (value.is_zero())
        values_.erase(args);
    else
        values_[args] = std::move(value);
}

AlgElement HochschildCochain::at(const std::vector<Monomial>& args) const
{
    auto it = values_.find(args);
    return it == values_.end() ? AlgElement() : it->second;
}

AlgElement HochschildCochain::operator()(const std::vector<AlgElement>& args) const
{
    if (static_cast<int>(args.size()) != n_)
        throw DomainError("wrong number of arguments for a cochain");
    const bool all = a_->kind() == AlgebraKind::FiniteDimensional;
    AlgElement out;
    std::vector<Monomial> cur;
    auto rec = [&](auto&& self, std::size_t i, Scalar c, int deg) -> void {
        if (i == args.size()) {
            if (!all && deg > d_)
                throw DomainError("argument " + tuple_text(*a_, cur) + " outside the cochain domain");
            out += c * at(cur);
            return;
        }
        for (const auto& [m, cm] : args[i].terms()) {
            cur.push_back(m);
            self(self, i + 1, c * cm, deg + m.degree());
            cur.pop_back();
        }
    };
    rec(rec, 0, Scalar(1), 0);
    return out;
}

bool HochschildCochain::is_zero() const { return values_.empty(); }

HochschildCochain infinitesimal_cocycle(const TensorSeries& F, const ModuleAction& action, int d)
{
    if (F.order() < 1)
        throw DomainError("the infinitesimal cocycle needs F mod t^2 at least");
    HochschildCochain c(action.algebra_ptr(), 2, d);
    for (const auto& t : c.domain())
        c.set(t, action.apply_pair(F[1], AlgElement(t[0]), AlgElement(t[1])));
    return c;
}

HochschildCochain hochschild_differential(const HochschildCochain& c)
{
    const Algebra& A = c.algebra();
    HochschildCochain out(c.parent(), c.arity() + 1, c.domain_degree());
    for (const auto& t : out.domain()) {
        std::vector<AlgElement> e(t.begin(), t.end());
        AlgElement v;
        if (c.arity() == 1) {
            v = A.multiply_unbounded(e[0], c({e[1]})) - c({A.multiply_unbounded(e[0], e[1])}) +
                A.multiply_unbounded(c({e[0]}), e[1]);
        } else if (c.arity() == 2) {
            v = A.multiply_unbounded(e[0], c({e[1], e[2]})) - c({A.multiply_unbounded(e[0], e[1]), e[2]}) +
                c({e[0], A.multiply_unbounded(e[1], e[2])}) - A.multiply_unbounded(c({e[0], e[1]}), e[2]);
        } else {
            throw DomainError("hochschild_differential supports 1- and 2-cochains");
        }
        out.set(t, std::move(v));
    }
    return out;
}

HochschildCochain hochschild_coboundary(const LinearOperator& g, int d)
{
    const Algebra& A = g.algebra();
    HochschildCochain out(g.parent(), 2, d);
    for (const auto& t : out.domain()) {
        const AlgElement x(t[0]), y(t[1]);
        out.set(t, A.multiply_unbounded(x, g.apply_unbounded(y)) - g.apply_unbounded(A.multiply_unbounded(x, y)) +
                       A.multiply_unbounded(g.apply_unbounded(x), y));
    }
    return out;
}

Report check_hochschild_cocycle(const HochschildCochain& c)
{
    Report r;
    r.subject = "Hochschild " + std::to_string(c.arity()) + "-cochain";
    const HochschildCochain d = hochschild_differential(c);
    std::string witness;
    for (const auto& [t, v] : d.values()) {
        witness = tuple_text(c.algebra(), t) + ": " + c.algebra().render(v);
        break;
    }
    r.add("δc = 0", witness.empty(), std::to_string(d.domain().size()) + " basis tuples", witness);
    return r;
}

CoboundaryVerdict is_hochschild_coboundary(const HochschildCochain& c, int search_bound)
{
    if (c.arity() != 2)
        throw DomainError("is_hochschild_coboundary needs a 2-cochain");
    const AlgebraPtr& ap = c.parent();
    const Algebra& A = *ap;
    const int d = c.domain_degree();
    const auto domain = c.domain();

    std::vector<LinearOperator> candidates;
    CoboundaryVerdict verdict;
    if (A.kind() == AlgebraKind::FiniteDimensional) {
        for (const auto& src : A.basis())
            for (const auto& dst : A.basis())
                candidates.push_back(LinearOperator::matrix(ap, {{src, AlgElement(dst)}}));
        verdict.search_space = "all linear maps A -> A (" + std::to_string(candidates.size()) + " unknowns)";
    } else {
        if (search_bound < 0)
            throw DomainError("negative search bound");
        const auto coeffs = A.basis_up_to(d);
        const std::vector<Monomial> derivs = Algebra::polynomial(A.names(), search_bound)->basis();
        for (const auto& alpha : derivs)
            for (const auto& m : coeffs)
                candidates.push_back(LinearOperator::differential(ap, {{Polynomial(m), alpha}}));
        verdict.search_space = "differential operators of order <= " + std::to_string(search_bound) +
                               " with coefficients of degree <= " + std::to_string(d) + " (" +
                               std::to_string(candidates.size()) + " unknowns)";
    }

    std::map<std::pair<std::size_t, Monomial>, std::size_t> index;
    auto vectorize = [&](const HochschildCochain& h, bool extend) -> std::optional<linalg::SparseVector> {
        linalg::SparseVector v;
        for (std::size_t p = 0; p < domain.size(); ++p) {
            const AlgElement value = h.at(domain[p]);
            for (const auto& [m, coef] : value.terms()) {
                auto key = std::make_pair(p, m);
                auto it = index.find(key);
                if (it == index.end()) {
                    if (!extend)
                        return std::nullopt;
                    it = index.emplace(key, index.size()).first;
                }
                v[it->second] += coef;
            }
        }
        return v;
    };
    linalg::Echelon e(true);
    for (const auto& g : candidates)
        e.insert(*vectorize(hochschild_coboundary(g, d), true));
    auto target = vectorize(c, false);
    std::optional<linalg::SparseVector> x;
    if (target)
        x = e.solve(*target);
    if (!x)
        return verdict;

    LinearOperator g = [&] {
        if (A.kind() == AlgebraKind::FiniteDimensional) {
            std::map<Monomial, AlgElement> im;
            for (const auto& [j, coef] : *x) {
                const auto& t = candidates[j];
                const Monomial src = A.basis()[j / A.basis().size()];
                im[src] += coef * t.apply_unbounded(AlgElement(src));
            }
            return LinearOperator::matrix(ap, std::move(im));
        }
        std::map<Monomial, Polynomial> merged;
        for (const auto& [j, coef] : *x) {
            const auto& term = candidates[j].terms().at(0);
            merged[term.derivative] += coef * term.coefficient;
        }
        std::vector<LinearOperator::Term> terms;
        for (auto& [alpha, coef] : merged)
            terms.push_back({coef, alpha});
        return LinearOperator::differential(ap, std::move(terms));
    }();
    const HochschildCochain check = hochschild_coboundary(g, d);
    for (const auto& t : domain)
        if (check.at(t) != c.at(t))
            throw std::logic_error("coboundary solve produced a wrong witness at " + tuple_text(A, t));
    verdict.found = true;
    verdict.witness = std::move(g);
    return verdict;
}

bool WedgeResult::nonzero() const
{
    return std::any_of(coefficients.begin(), coefficients.end(), [](const auto& kv) { return !kv.second.is_zero(); });
}

std::string WedgeResult::to_string(const Algebra& a) const
{
    std::string s;
    for (const auto& [ij, c] : coefficients) {
        if (c.is_zero())
            continue;
        if (!s.empty())
            s += " + ";
        const std::string cs = a.render(c);
        s += (c.terms().size() > 1 ? "(" + cs + ")" : cs) + " d_" + a.names()[static_cast<std::size_t>(ij.first)] +
             "∧d_" + a.names()[static_cast<std::size_t>(ij.second)];
    }
    return s.empty() ? "0" : s;
}

WedgeResult wedge_over_A(const LinearOperator& theta1, const LinearOperator& theta2)
{
    if (theta1.parent() != theta2.parent())
        throw DomainError("derivations on different algebras");
    const Algebra& A = theta1.algebra();
    if (A.kind() != AlgebraKind::PolynomialTruncated)
        throw DomainError("wedge_over_A needs a polynomial algebra (free module of derivations)");
    const int v = static_cast<int>(A.names().size());
    auto components = [&](const LinearOperator& th) {
        if (!th.is_differential())
            throw DomainError("wedge_over_A needs derivations given as Σ a_i d_i");
        std::vector<Polynomial> a(static_cast<std::size_t>(v));
        for (const auto& t : th.terms()) {
            if (t.derivative.degree() != 1)
                throw DomainError("not a derivation: " + th.to_string());
            a[static_cast<std::size_t>(t.derivative.powers()[0].first)] += t.coefficient;
        }
        return a;
    };
    const auto a = components(theta1), b = components(theta2);
    WedgeResult w;
    for (int i = 0; i < v; ++i)
        for (int j = i + 1; j < v; ++j) {
            const auto ui = static_cast<std::size_t>(i), uj = static_cast<std::size_t>(j);
            w.coefficients[{i, j}] = a[ui] * b[uj] - a[uj] * b[ui];
        }
    return w;
}

} // namespace udf
