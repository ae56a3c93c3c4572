#include "udf/generalized/diagram.hpp"

#include "udf/error.hpp"
#include "udf/kernel/linalg.hpp"

#include <algorithm>

namespace udf {

Report interchange_check(const TensorSeries& F1, const TensorSeries& F2)
{
    if (F1[0].arity() != 2 || F2[0].arity() != 2)
        throw DomainError("interchange_check needs two elements of B⊗B");
    if (F1[0].parent() != F2[0].parent())
        throw DomainError("F′ and F″ live over different bialgebras");
    if (F1.order() != F2.order())
        throw DomainError("series orders differ");
    auto dd = [](const TensorSeries& F) {
        return slot_apply(SlotMap::Coproduct, 1, slot_apply(SlotMap::Coproduct, 2, F));
    };
    const Permutation tau({1, 3, 2, 4});
    const TensorSeries lhs = permute_factors(tau, dd(F1) * otimes(F2, F2));
    const TensorSeries rhs = dd(F2) * otimes(F1, F1);
    const TensorSeries diff = lhs - rhs;
    Report r;
    r.subject = "interchange, mod t^" + std::to_string(F1.order() + 1);
    const int k = diff.valuation();
    if (k < 0)
        r.add("τ1324{(Δ⊗Δ)(F′)(F″⊗F″)} = (Δ⊗Δ)(F″)(F′⊗F′)", true, "exact in B^⊗4");
    else
        r.add("τ1324{(Δ⊗Δ)(F′)(F″⊗F″)} = (Δ⊗Δ)(F″)(F′⊗F′)", false,
              "first failure at order t^" + std::to_string(k), diff[static_cast<unsigned>(k)].to_string());
    return r;
}

AlgebraMorphism::AlgebraMorphism(AlgebraPtr source, AlgebraPtr target, std::map<std::string, AlgElement> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images))
{
    if (!source_->has_variables() || !target_->has_variables())
        throw DomainError("algebra morphisms are given on variables; both algebras need them");
    const auto& names = source_->names();
    for (const auto& [name, img] : images_)
        if (std::find(names.begin(), names.end(), name) == names.end())
            throw DomainError("no variable '" + name + "' in the source algebra");
    for (const auto& name : names)
        if (!images_.count(name))
            throw DomainError("no image given for variable '" + name + "'");
    for (const auto& m : source_->ideal())
        if (!target_->normalize(apply_unbounded(m)).is_zero())
            throw DomainError("the morphism does not vanish on the ideal generator " + source_->render(m));
}

AlgebraMorphism AlgebraMorphism::parse(AlgebraPtr source, AlgebraPtr target,
                                       const std::map<std::string, std::string>& images)
{
    std::map<std::string, AlgElement> parsed;
    for (const auto& [name, text] : images)
        parsed.emplace(name, target->parse(text));
    return AlgebraMorphism(std::move(source), std::move(target), std::move(parsed));
}

AlgElement AlgebraMorphism::apply_unbounded(const Monomial& m) const
{
    AlgElement r = target_->one();
    for (const auto& [var, e] : m.powers()) {
        const AlgElement& img = images_.at(source_->names()[static_cast<std::size_t>(var)]);
        for (int k = 0; k < e; ++k)
            r = target_->multiply_unbounded(r, img);
    }
    return r;
}

AlgElement AlgebraMorphism::apply(const AlgElement& x) const
{
    AlgElement r;
    for (const auto& [m, c] : x.terms())
        r += c * apply_unbounded(m);
    r = target_->normalize(r);
    return r;
}

AlgSeries AlgebraMorphism::apply(const AlgSeries& x) const { return x.map([&](const AlgElement& e) { return apply(e); }); }

std::string AlgebraMorphism::to_string() const
{
    std::string s;
    for (const auto& name : source_->names())
        s += (s.empty() ? "" : ", ") + name + " -> " + target_->render(images_.at(name));
    return "{" + s + "}";
}

BialgebraMorphism::BialgebraMorphism(BialgebraPtr source, BialgebraPtr target, std::map<std::string, TensorElement> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images))
{
    if (source_->finite_monoid_kind())
        throw DomainError("bialgebra morphisms out of a finite monoid table are not supported");
    const auto& names = source_->generator_names();
    for (const auto& [name, img] : images_) {
        if (std::find(names.begin(), names.end(), name) == names.end())
            throw DomainError("no generator '" + name + "' in the source bialgebra");
        if (img.parent() != target_ || img.arity() != 1)
            throw DomainError("the image of " + name + " is not an element of the target bialgebra");
    }
    for (const auto& name : names) {
        auto it = images_.find(name);
        if (it == images_.end())
            throw DomainError("no image given for generator '" + name + "'");
        by_id_.push_back(it->second);
    }
    if (source_->commutative())
        for (std::size_t i = 0; i < by_id_.size(); ++i)
            for (std::size_t j = i + 1; j < by_id_.size(); ++j)
                if (by_id_[i] * by_id_[j] != by_id_[j] * by_id_[i])
                    throw DomainError("the images of " + names[i] + " and " + names[j] +
                                      " do not commute, but the source is commutative");
    for (const auto& key : source_->basis_up_to(std::min(2, source_->degree_cutoff()))) {
        const TensorElement x = source_->basis_element(key);
        const TensorElement fx = apply(key);
        if (slot_apply(SlotMap::Coproduct, 1, fx) != apply(slot_apply(SlotMap::Coproduct, 1, x)))
            throw DomainError("Δ(φ(" + source_->render(key) + ")) ≠ (φ⊗φ)Δ(" + source_->render(key) + ")");
        if (slot_apply(SlotMap::Counit, 1, fx).scalar_value() != source_->counit(key))
            throw DomainError("ε(φ(" + source_->render(key) + ")) ≠ ε(" + source_->render(key) + ")");
    }
}

BialgebraMorphism BialgebraMorphism::identity(BialgebraPtr b)
{
    std::map<std::string, TensorElement> images;
    for (const auto& name : b->generator_names())
        images.emplace(name, b->generator(name));
    return BialgebraMorphism(b, b, std::move(images));
}

BialgebraMorphism BialgebraMorphism::parse(BialgebraPtr source, BialgebraPtr target,
                                           const std::map<std::string, std::string>& images)
{
    std::map<std::string, TensorElement> parsed;
    for (const auto& [name, text] : images)
        parsed.emplace(name, target->element(text));
    return BialgebraMorphism(std::move(source), std::move(target), std::move(parsed));
}

TensorElement BialgebraMorphism::apply(const BasisKey& key) const
{
    TensorElement r = target_->one();
    for (int g : key.v)
        r = r * by_id_.at(static_cast<std::size_t>(g));
    return r;
}

TensorElement BialgebraMorphism::apply(const TensorElement& x) const
{
    if (x.parent() != source_)
        throw DomainError("element is not over the source bialgebra");
    TensorElement out = target_->zero(x.arity());
    for (const auto& [key, c] : x.terms()) {
        std::vector<TensorElement> factors;
        for (const auto& k : key)
            factors.push_back(apply(k));
        out += c * otimes(factors);
    }
    return out;
}

TensorSeries BialgebraMorphism::apply(const TensorSeries& x) const
{
    return x.map([&](const TensorElement& e) { return apply(e); });
}

std::string BialgebraMorphism::to_string() const
{
    std::string s;
    const auto& names = source_->generator_names();
    for (std::size_t i = 0; i < names.size(); ++i)
        s += (s.empty() ? "" : ", ") + names[i] + " -> " + by_id_[i].to_string();
    return "{" + s + "}";
}

namespace {

const DiagramArrow& arrow_at(const Diagram& d, std::size_t i)
{
    if (i >= d.arrows.size())
        throw DomainError("no arrow " + std::to_string(i));
    const auto& a = d.arrows[i];
    if (a.from >= d.nodes.size() || a.to >= d.nodes.size())
        throw DomainError("arrow " + std::to_string(i) + " points outside the diagram");
    const auto& src = *d.nodes[a.from].action;
    const auto& dst = *d.nodes[a.to].action;
    if (&a.h.source() != &src.algebra() || &a.h.target() != &dst.algebra())
        throw DomainError("h of arrow " + std::to_string(i) + " does not go A_from -> A_to");
    if (a.phi.source_ptr() != dst.bialgebra_ptr() || a.phi.target_ptr() != src.bialgebra_ptr())
        throw DomainError("φ of arrow " + std::to_string(i) + " does not go B_to -> B_from");
    return a;
}

std::vector<Monomial> domain_basis(const Algebra& a, int degree)
{
    return a.kind() == AlgebraKind::FiniteDimensional ? a.basis() : a.basis_up_to(degree);
}

// h̃(x) = h(G·x) on a series
AlgSeries deformed_map(const DiagramArrow& arrow, const ModuleAction& src, const TensorSeries& G, const AlgSeries& x)
{
    const unsigned n = G.order();
    AlgSeries out(n, AlgElement());
    for (unsigned i = 0; i <= n; ++i)
        for (unsigned k = 0; i + k <= n; ++k)
            if (!G[i].is_zero() && !x[k].is_zero())
                out[i + k] += arrow.h.apply(src.act(G[i], x[k]));
    return out;
}

} // namespace

Report diagram_compat_check(const Diagram& d, int cutoff)
{
    Report r;
    r.subject = "diagram of module algebras";
    for (const auto& node : d.nodes)
        r.merge(check_module_algebra(*node.action, cutoff), "(i) " + node.name + ": ");
    for (std::size_t i = 0; i < d.arrows.size(); ++i) {
        const auto& arrow = arrow_at(d, i);
        const auto& src = *d.nodes[arrow.from].action;
        const auto& dst = *d.nodes[arrow.to].action;
        const Bialgebra& B = dst.bialgebra();
        std::string witness;
        std::size_t count = 0;
        for (const auto& name : B.generator_names()) {
            const TensorElement b = B.generator(name);
            const TensorElement pb = arrow.phi.apply(b);
            for (const auto& m : domain_basis(src.algebra(), cutoff)) {
                const AlgElement a(m);
                const AlgElement lhs = dst.act(b, arrow.h.apply(a));
                const AlgElement rhs = arrow.h.apply(src.act(pb, a));
                ++count;
                if (lhs != rhs) {
                    witness = "a = " + src.algebra().render(m) + ", b = " + name + ": b·h(a) = " +
                              dst.algebra().render(lhs) + ", h(φ(b)·a) = " + dst.algebra().render(rhs);
                    break;
                }
            }
            if (!witness.empty())
                break;
        }
        const std::string label = d.nodes[arrow.from].name + " -> " + d.nodes[arrow.to].name;
        r.add("(ii) " + label + ": b·h(a) = h(φ(b)·a)", witness.empty(), std::to_string(count) + " (b, a) pairs",
              witness);
    }
    return r;
}

namespace {

void add_condition_ii(Report& r, const std::string& name, const DiagramArrow& arrow, const TensorSeries& F1,
                      const TensorSeries& G, const TensorSeries& F2)
{
    const TensorSeries lhs = slot_apply(SlotMap::Coproduct, 1, G) * F1;
    const TensorSeries rhs = arrow.phi.apply(F2) * otimes(G, G);
    const TensorSeries diff = lhs - rhs;
    const int k = diff.valuation();
    if (k < 0)
        r.add(name, true, "exact mod t^" + std::to_string(F1.order() + 1));
    else
        r.add(name, false, "first failure at order t^" + std::to_string(k), diff[static_cast<unsigned>(k)].to_string());
}

void add_morphism(Report& r, const std::string& name, const DiagramArrow& arrow, const ModuleAction& src,
                  const ModuleAction& dst, const TensorSeries& F1, const TensorSeries& G, const TensorSeries& F2,
                  int degree)
{
    const unsigned n = F1.order();
    const auto basis = domain_basis(src.algebra(), degree);
    auto lift = [&](const Monomial& m) { return AlgSeries::constant(n, AlgElement(m), AlgElement()); };
    std::string witness;
    int worst = -1;
    std::size_t count = 0;
    for (const auto& x : basis)
        for (const auto& y : basis) {
            if (src.algebra().kind() == AlgebraKind::PolynomialTruncated &&
                src.algebra().degree(x) + src.algebra().degree(y) > degree)
                continue;
            const AlgSeries lhs = deformed_map(arrow, src, G, twisted_product(F1, src, lift(x), lift(y)));
            const AlgSeries rhs =
                twisted_product(F2, dst, deformed_map(arrow, src, G, lift(x)), deformed_map(arrow, src, G, lift(y)));
            ++count;
            const int k = (lhs - rhs).valuation();
            if (k >= 0 && (worst < 0 || k < worst)) {
                worst = k;
                witness = "(" + src.algebra().render(x) + ", " + src.algebra().render(y) + ")";
            }
        }
    if (worst < 0)
        r.add(name, true, std::to_string(count) + " basis pairs");
    else
        r.add(name, false, "first failure at order t^" + std::to_string(worst), witness);
}

} // namespace

Report diagram_twist_check(const Diagram& d, std::size_t arrow_index, const TwistTriple& triple, int degree)
{
    const auto& arrow = arrow_at(d, arrow_index);
    const auto& src = *d.nodes[arrow.from].action;
    const auto& dst = *d.nodes[arrow.to].action;
    const unsigned n = triple.F1.order();
    if (triple.F2.order() != n || triple.G.order() != n)
        throw DomainError("series orders in the triple differ");
    if (triple.F1[0].parent() != src.bialgebra_ptr() || triple.G[0].parent() != src.bialgebra_ptr())
        throw DomainError("F1 and G must live over B_from");
    if (triple.F2[0].parent() != dst.bialgebra_ptr())
        throw DomainError("F2 must live over B_to");
    if (triple.G[0].arity() != 1)
        throw DomainError("G is an element of B");

    Report r;
    r.subject = "twisting triple on " + d.nodes[arrow.from].name + " -> " + d.nodes[arrow.to].name + ", mod t^" +
                std::to_string(n + 1);
    r.merge(check_twisting(triple.F1), "(i) F1: ");
    r.merge(check_twisting(triple.F2), "(i) F2: ");
    add_condition_ii(r, "(ii) Δ(G)F1 = (φ⊗φ)(F2)(G⊗G)", arrow, triple.F1, triple.G, triple.F2);
    add_morphism(r, "h̃(a*b) = h̃(a)*h̃(b)", arrow, src, dst, triple.F1, triple.G, triple.F2, degree);

    if (triple.G[0] == src.bialgebra().one()) {
        const GaugeElement G(triple.G);
        const TensorSeries F1r = gauge_transform(triple.F1, G);
        const TensorSeries one = constant_series(n, src.bialgebra().one());
        add_condition_ii(r, "gauge reduction: (ii) for (F1′, 1, F2)", arrow, F1r, one, triple.F2);
        add_morphism(r, "gauge reduction: h(a*′b) = h(a)*h(b)", arrow, src, dst, F1r, one, triple.F2, degree);
    }
    return r;
}

ImageCheck morphism_image(const Diagram& d, std::size_t arrow_index, const TwistTriple& triple, int degree)
{
    const auto& arrow = arrow_at(d, arrow_index);
    const auto& src = *d.nodes[arrow.from].action;
    const Algebra& target = arrow.h.target();
    const auto source_basis = domain_basis(src.algebra(), degree);
    const auto target_basis = domain_basis(target, degree);
    std::map<Monomial, std::size_t> index;
    for (const auto& m : target_basis)
        index.emplace(m, index.size());

    ImageCheck out;
    out.source_dim = source_basis.size();
    out.target_dim = target_basis.size();
    linalg::Echelon all, within;
    for (const auto& m : source_basis) {
        // t⁰ part of h(G·a)
        const AlgElement img = arrow.h.apply(src.act(triple.G[0], AlgElement(m)));
        linalg::SparseVector v, w;
        for (const auto& [mm, c] : img.terms()) {
            auto it = index.find(mm);
            if (it == index.end())
                it = index.emplace(mm, index.size()).first;
            v.emplace(it->second, c);
        }
        all.insert(v);
        for (const auto& [i, c] : v)
            if (i < target_basis.size())
                w.emplace(i, c);
        if (w.size() == v.size())
            within.insert(w);
    }
    out.rank = all.rank();
    out.injective = out.rank == out.source_dim;
    out.surjective = within.rank() == out.target_dim;
    return out;
}

} // namespace udf
