#include "udf/twist/twist.hpp"

#include "udf/bialgebra/coordinates.hpp"
#include "udf/error.hpp"

namespace udf {

namespace {

TensorSeries unit_tensor_series(const Bialgebra& b, std::size_t arity, unsigned order)
{
    return constant_series(order, b.unit_tensor(arity));
}

// Adds an entry comparing two series; the witness names the first order
// where they differ.
void compare(Report& r, const std::string& name, const TensorSeries& lhs, const TensorSeries& rhs, const std::string& detail)
{
    const TensorSeries diff = lhs - rhs;
    const int k = diff.valuation();
    if (k < 0) {
        r.add(name, true, detail);
        return;
    }
    r.add(name, false, detail + "; first failure at order t^" + std::to_string(k),
          "order " + std::to_string(k) + ": " + diff[static_cast<unsigned>(k)].to_string());
}

void require_commutative_or_first_order(const TensorSeries& s, const char* what)
{
    if (s.order() > 1 && !s[0].bialgebra().commutative())
        throw DomainError(std::string(what) + " needs a commutative bialgebra beyond first order");
}

} // namespace

Report check_twisting(const TensorSeries& F, const TwistOptions& options)
{
    if (F[0].arity() != 2)
        throw DomainError("a twisting element has arity 2");
    const Bialgebra& b = F[0].bialgebra();
    if (options.counital && !b.counital())
        throw DomainError("(d2) requested on a non-counital bialgebra");
    const unsigned n = F.order();
    const std::string mod = "mod t^" + std::to_string(n + 1);

    Report r;
    r.subject = "twisting element, " + mod;
    const TensorSeries one = unit_tensor_series(b, 1, n);
    const TensorSeries lhs = slot_apply(SlotMap::Coproduct, 1, F) * otimes(F, one);
    const TensorSeries rhs = slot_apply(SlotMap::Coproduct, 2, F) * otimes(one, F);
    compare(r, "(d1)", lhs, rhs, "[(Δ⊗id)F](F⊗1) = [(id⊗Δ)F](1⊗F)");
    if (options.counital) {
        compare(r, "(d2) left", slot_apply(SlotMap::Counit, 1, F), one, "(ε⊗id)F = 1");
        compare(r, "(d2) right", slot_apply(SlotMap::Counit, 2, F), one, "(id⊗ε)F = 1");
    }
    if (options.symmetric)
        compare(r, "symmetric", permute_factors(Permutation({2, 1}), F), F, "F = τF");
    return r;
}

TwistingElement::TwistingElement(TensorSeries F) : F_(std::move(F)), cache_(std::make_shared<Cache>())
{
    if (F_[0].arity() != 2)
        throw DomainError("a twisting element has arity 2");
}

TwistingElement TwistingElement::constant(const TensorElement& F) { return TwistingElement(constant_series(0, F)); }

bool TwistingElement::is_udf() const { return F_[0] == bialgebra().unit_tensor(2); }

const Report& TwistingElement::verdict(const TwistOptions& options) const
{
    const auto key = std::make_pair(options.counital, options.symmetric);
    {
        std::lock_guard lock(cache_->mutex);
        if (auto it = cache_->verdicts.find(key); it != cache_->verdicts.end())
            return *it->second;
    }
    auto report = std::make_shared<const Report>(check_twisting(F_, options));
    std::lock_guard lock(cache_->mutex);
    return *cache_->verdicts.try_emplace(key, std::move(report)).first->second;
}

void require_udf(const TensorSeries& F)
{
    if (F[0].arity() != 2)
        throw DomainError("a UDF has arity 2");
    if (F[0] != F[0].bialgebra().unit_tensor(2))
        throw DomainError("a UDF has constant term 1⊗1");
}

TensorSeries make_exp_udf(const TensorElement& r, unsigned order)
{
    if (r.arity() != 2)
        throw DomainError("make_exp_udf needs an arity-2 exponent");
    if (!r.bialgebra().commutative())
        throw DomainError("make_exp_udf needs a commutative coefficient algebra");
    return series_exp(times_t(order, r));
}

GaugeElement::GaugeElement(TensorSeries G) : G_(std::move(G)), inverse_(G_)
{
    if (G_[0].arity() != 1)
        throw DomainError("a gauge element lives in B");
    if (G_[0] != G_[0].bialgebra().one())
        throw DomainError("a gauge element has constant term 1");
    inverse_ = series_inv(G_);
}

TensorSeries gauge_transform(const TensorSeries& F, const GaugeElement& G)
{
    if (F.order() != G.series().order())
        throw DomainError("gauge element and twist have different orders");
    if (F[0].parent() != G.series()[0].parent())
        throw DomainError("gauge element and twist live over different bialgebras");
    const TensorSeries dG = slot_apply(SlotMap::Coproduct, 1, G.series());
    return dG * F * otimes(G.inverse(), G.inverse());
}

TensorSeries to_additive(const TensorSeries& F)
{
    require_udf(F);
    require_commutative_or_first_order(F, "the logarithmic trick");
    return series_log(F);
}

TensorSeries from_additive(const TensorSeries& f)
{
    if (f[0].arity() != 2)
        throw DomainError("an additive twist has arity 2");
    require_commutative_or_first_order(f, "the logarithmic trick");
    return series_exp(f);
}

Report check_additive_twist(const TensorSeries& f)
{
    const Bialgebra& b = f[0].bialgebra();
    const unsigned n = f.order();
    Report r;
    r.subject = "additive twist, mod t^" + std::to_string(n + 1);
    const TensorSeries one = unit_tensor_series(b, 1, n);
    const TensorSeries zero1(n, b.zero(1));
    compare(r, "constant term", TensorSeries::constant(n, f[0], b.zero(2)), TensorSeries(n, b.zero(2)), "f has no t^0 part");
    compare(r, "additive (d1)", slot_apply(SlotMap::Coproduct, 1, f) + otimes(f, one),
            slot_apply(SlotMap::Coproduct, 2, f) + otimes(one, f), "(Δ⊗id)f + f⊗1 = (id⊗Δ)f + 1⊗f");
    if (b.counital()) {
        compare(r, "additive (d2) left", slot_apply(SlotMap::Counit, 1, f), zero1, "(ε⊗id)f = 0");
        compare(r, "additive (d2) right", slot_apply(SlotMap::Counit, 2, f), zero1, "(id⊗ε)f = 0");
    }
    return r;
}

TensorElement additive_coboundary(const TensorElement& g)
{
    if (g.arity() != 1)
        throw DomainError("additive_coboundary needs an element of B");
    const TensorElement one = g.bialgebra().one();
    return slot_apply(SlotMap::Coproduct, 1, g) - otimes(one, g) - otimes(g, one);
}

TensorSeries additive_gauge(const TensorSeries& f, const TensorSeries& g)
{
    if (g.order() != f.order())
        throw DomainError("additive gauge of a different order");
    if (!g[0].is_zero())
        throw DomainError("additive gauge elements have zero constant term");
    require_commutative_or_first_order(f, "additive gauge");
    return f + g.map([](const TensorElement& x) { return additive_coboundary(x); });
}

std::optional<TensorElement> solve_additive_coboundary(const TensorElement& target, int max_degree)
{
    if (target.arity() != 2)
        throw DomainError("the additive coboundary equation lives in B⊗B");
    const Bialgebra& b = target.bialgebra();
    const auto keys = b.basis_up_to(b.finite_monoid_kind() ? 1 : std::min(max_degree, b.degree_cutoff()));
    TensorIndexer idx;
    linalg::Echelon e(true);
    for (const auto& k : keys)
        e.insert(idx.vectorize(additive_coboundary(b.basis_element(k))));
    auto t = idx.vectorize_known(target);
    if (!t)
        return std::nullopt;
    auto x = e.solve(*t);
    if (!x)
        return std::nullopt;
    TensorElement g = b.zero(1);
    for (const auto& [j, c] : *x)
        g.add_term({keys[j]}, c);
    return g;
}

RescaledPair rescale(const TensorElement& F, const Scalar& a)
{
    if (F.arity() != 2)
        throw DomainError("rescale needs an arity-2 element");
    if (is_zero(a))
        throw DomainError("rescale needs a != 0");
    const Bialgebra& b = F.bialgebra();
    const TensorSeries s = constant_series(0, F);
    Report d1 = check_twisting(s, TwistOptions{false, false});
    if (!d1.passed())
        throw DomainError("F o_1 F != F o_2 F: " + d1.entries[0].witness);
    const TensorElement one = b.one();
    if (a * slot_apply(SlotMap::Counit, 1, F) != one || a * slot_apply(SlotMap::Counit, 2, F) != one)
        throw DomainError("the pair violates a(ε⊗id)F = 1 = a(id⊗ε)F");
    return {a * F, Scalar(1)};
}

namespace {

Polynomial u(int i) { return Polynomial::variable(i); }

PolySeries substitute(const PolySeries& F, std::vector<Polynomial> images)
{
    return F.map([&](const Polynomial& p) { return p.substitute(images); });
}

void compare_poly(Report& r, const std::string& name, const PolySeries& lhs, const PolySeries& rhs, const std::string& detail)
{
    const PolySeries diff = lhs - rhs;
    const int k = diff.valuation();
    if (k < 0) {
        r.add(name, true, detail);
        return;
    }
    static const std::vector<std::string> names{"u1", "u2", "u3"};
    const Polynomial& d = diff[static_cast<unsigned>(k)];
    r.add(name, false, detail + "; first failure at order t^" + std::to_string(k) + ": " + d.to_string(names),
          d.leading_monomial().to_string(names));
}

} // namespace

Report check_functional_equation(const PolySeries& F)
{
    Report r;
    r.subject = "functional equation, mod t^" + std::to_string(F.order() + 1);
    const PolySeries lhs = substitute(F, {u(0) + u(1), u(2)}) * substitute(F, {u(0), u(1)});
    const PolySeries rhs = substitute(F, {u(0), u(1) + u(2)}) * substitute(F, {u(1), u(2)});
    compare_poly(r, "functional equation", lhs, rhs, "F(u1+u2,u3)F(u1,u2) = F(u1,u2+u3)F(u2,u3)");
    const PolySeries one = unit_series(F);
    compare_poly(r, "boundary F(0,u)", substitute(F, {Polynomial(), u(1)}), one, "F(0,u) = 1");
    compare_poly(r, "boundary F(u,0)", substitute(F, {u(0), Polynomial()}), one, "F(u,0) = 1");
    return r;
}

Report check_functional_equation(const Polynomial& F) { return check_functional_equation(PolySeries::constant(0, F, Polynomial())); }

PolySeries functional_image(const TensorSeries& F)
{
    const Bialgebra& b = F[0].bialgebra();
    if (b.kind() != BialgebraKind::PolynomialPrimitive || b.generator_count() != 1)
        throw DomainError("the functional picture needs B = k[p]");
    return F.map([](const TensorElement& t) {
        Polynomial p;
        for (const auto& [key, c] : t.terms()) {
            std::vector<std::pair<int, int>> powers;
            for (std::size_t s = 0; s < key.size(); ++s)
                if (!key[s].v.empty())
                    powers.emplace_back(static_cast<int>(s), static_cast<int>(key[s].v.size()));
            p.add_term(Monomial(powers), c);
        }
        return p;
    });
}

} // namespace udf
