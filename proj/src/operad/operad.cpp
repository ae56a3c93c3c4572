#include "udf/operad/operad.hpp"

#include "udf/bialgebra/sampling.hpp"
#include "udf/error.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace udf {

std::string to_string(OperadFlavor f) { return f == OperadFlavor::Multiplicative ? "B" : "b"; }

OperadElement::OperadElement(OperadFlavor flavor, TensorElement payload) : flavor_(flavor), payload_(std::move(payload))
{
    if (flavor_ == OperadFlavor::Additive && payload_.arity() == 0)
        throw DomainError("the additive operad has no arity-0 part");
}

OperadElement OperadElement::unit(OperadFlavor flavor, const BialgebraPtr& b)
{
    return flavor == OperadFlavor::Multiplicative ? OperadElement(flavor, b->one())
                                                  : OperadElement(flavor, b->zero(1));
}

namespace {

void check_index(const TensorElement& u, std::size_t i, const TensorElement& v)
{
    if (u.parent() != v.parent())
        throw DomainError("operad elements over different bialgebras");
    if (i < 1 || i > u.arity())
        throw DomainError("composition index " + std::to_string(i) + " out of range for arity " +
                          std::to_string(u.arity()));
}

TensorElement units(const CoalgebraView& view, const BialgebraPtr& parent, std::size_t n)
{
    TensorElement t(parent, n);
    t.add_term(TensorKey(n, view.unit_key()), Scalar(1));
    return t;
}

// 1^{⊗ i-1} ⊗ v ⊗ 1^{⊗ m-i}
TensorElement pad(const CoalgebraView& view, const TensorElement& v, std::size_t i, std::size_t m)
{
    TensorElement r = v;
    if (i > 1)
        r = otimes(units(view, v.parent(), i - 1), r);
    if (m > i)
        r = otimes(r, units(view, v.parent(), m - i));
    return r;
}

std::string perm_text(const Permutation& p)
{
    std::string s = "[";
    for (std::size_t k = 0; k < p.size(); ++k)
        s += (k ? "," : "") + std::to_string(p.image()[k]);
    return s + "]";
}

std::vector<Permutation> all_permutations(std::size_t n)
{
    std::vector<int> im(n);
    std::iota(im.begin(), im.end(), 1);
    std::vector<Permutation> out;
    do
        out.emplace_back(im);
    while (std::next_permutation(im.begin(), im.end()));
    return out;
}

TensorElement compose(OperadFlavor f, const TensorElement& u, std::size_t i, const TensorElement& v)
{
    return f == OperadFlavor::Multiplicative ? circ_B(u, i, v) : circ_b(u, i, v);
}

int budget(const Bialgebra& b, int cutoff) { return b.finite_monoid_kind() ? 1 : std::min(cutoff, b.degree_cutoff()); }

struct Triple {
    TensorElement u, v, w;
};

// Exhaustive pure triples of total degree <= d, then fixed-seed random ones.
std::vector<Triple> triples(OperadFlavor f, const Bialgebra& b, const SweepOptions& o)
{
    std::vector<Triple> out;
    const std::size_t c_min = (f == OperadFlavor::Multiplicative && b.counital()) ? 0 : 1;
    const int d = std::min(o.exhaustive_degree, budget(b, o.cutoff));
    for (int total = 0; total <= d; ++total)
        for (std::size_t a = 1; a <= 2; ++a)
            for (std::size_t bb = 1; bb <= 2; ++bb)
                for (std::size_t c = c_min; c <= 2; ++c)
                    for (int du = 0; du <= total; ++du)
                        for (int dv = 0; du + dv <= total; ++dv) {
                            const int dw = total - du - dv;
                            for (const auto& ku : pure_tensor_keys(b, a, du))
                                for (const auto& kv : pure_tensor_keys(b, bb, dv))
                                    for (const auto& kw : pure_tensor_keys(b, c, dw)) {
                                        auto deg = [&](const TensorKey& k) {
                                            int s = 0;
                                            for (const auto& x : k)
                                                s += b.degree(x);
                                            return s;
                                        };
                                        if (deg(ku) != du || deg(kv) != dv || deg(kw) != dw)
                                            continue;
                                        Triple t{b.zero(a), b.zero(bb), b.zero(c)};
                                        t.u.add_term(ku, 1);
                                        t.v.add_term(kv, 1);
                                        t.w.add_term(kw, 1);
                                        out.push_back(std::move(t));
                                    }
                        }
    Sampler s(o.seed);
    const int top = budget(b, o.cutoff);
    for (int n = 0; n < o.samples; ++n) {
        const auto a = static_cast<std::size_t>(s.integer(1, 3));
        const auto bb = static_cast<std::size_t>(s.integer(1, 3));
        const auto c = static_cast<std::size_t>(s.integer(static_cast<long>(c_min), 3));
        const int du = static_cast<int>(s.integer(0, top));
        const int dv = static_cast<int>(s.integer(0, top - du));
        const int dw = static_cast<int>(s.integer(0, top - du - dv));
        Triple t{s.tensor(b, a, du), s.tensor(b, bb, dv), s.tensor(b, c, dw)};
        out.push_back(std::move(t));
    }
    return out;
}

} // namespace

TensorElement circ_B(const TensorElement& u, std::size_t i, const TensorElement& v)
{
    check_index(u, i, v);
    const std::size_t n = v.arity();
    if (n == 0)
        return v.scalar_value() * slot_iterated_coproduct(u, i, -1);
    const TensorElement spread = slot_iterated_coproduct(u, i, static_cast<int>(n) - 1);
    return spread * pad(u.bialgebra().coalgebra(), v, i, u.arity());
}

TensorElement circ_b(const CoalgebraView& coalgebra, const TensorElement& u, std::size_t i, const TensorElement& v)
{
    check_index(u, i, v);
    if (u.arity() == 0 || v.arity() == 0)
        throw DomainError("the additive operad has no arity-0 part");
    TensorElement r = slot_iterated_coproduct(coalgebra, u, i, static_cast<int>(v.arity()) - 1);
    r += pad(coalgebra, v, i, u.arity());
    return r;
}

TensorElement circ_b(const TensorElement& u, std::size_t i, const TensorElement& v)
{
    return circ_b(u.bialgebra().coalgebra(), u, i, v);
}

OperadElement circ(const OperadElement& u, std::size_t i, const OperadElement& v)
{
    if (u.flavor() != v.flavor())
        throw DomainError("composing elements of different operads");
    return OperadElement(u.flavor(), compose(u.flavor(), u.payload(), i, v.payload()));
}

Report check_assoc_cases(OperadFlavor flavor, const Bialgebra& b, const SweepOptions& o)
{
    Report report;
    report.subject = "associativity of " + to_string(flavor) + " over " + to_string(b.kind());
    const char* names[3] = {"case i<j", "case j<=i<j+b", "case i>=j+b"};
    std::string witness[3];
    long counts[3] = {0, 0, 0};
    for (const auto& t : triples(flavor, b, o)) {
        const std::size_t a = t.u.arity(), bb = t.v.arity(), c = t.w.arity();
        for (std::size_t j = 1; j <= a; ++j) {
            const TensorElement uv = compose(flavor, t.u, j, t.v);
            for (std::size_t i = 1; i + 1 <= a + bb; ++i) {
                int which;
                TensorElement rhs = b.zero(0);
                if (i < j) {
                    which = 0;
                    rhs = compose(flavor, compose(flavor, t.u, i, t.w), j + c - 1, t.v);
                } else if (i < j + bb) {
                    which = 1;
                    rhs = compose(flavor, t.u, j, compose(flavor, t.v, i - j + 1, t.w));
                } else {
                    which = 2;
                    rhs = compose(flavor, compose(flavor, t.u, i - bb + 1, t.w), j, t.v);
                }
                ++counts[which];
                if (witness[which].empty() && compose(flavor, uv, i, t.w) != rhs)
                    witness[which] = "u = " + t.u.to_string() + "; v = " + t.v.to_string() +
                                     "; w = " + t.w.to_string() + "; i = " + std::to_string(i) +
                                     "; j = " + std::to_string(j);
            }
        }
    }
    for (int k = 0; k < 3; ++k)
        report.add(names[k], witness[k].empty(), std::to_string(counts[k]) + " compositions", witness[k]);
    return report;
}

Report check_equivariance(const Bialgebra& b, const SweepOptions& o)
{
    Report report;
    report.subject = "equivariance over " + to_string(b.kind());
    for (OperadFlavor flavor : {OperadFlavor::Multiplicative, OperadFlavor::Additive}) {
        std::string w_inner, w_outer;
        long checks = 0;
        for (const auto& t : triples(OperadFlavor::Additive, b, o)) {
            const TensorElement& u = t.u;
            const TensorElement& v = t.v;
            const std::size_t m = u.arity(), n = v.arity();
            for (std::size_t i = 1; i <= m; ++i) {
                const TensorElement uv = compose(flavor, u, i, v);
                for (const auto& tau : all_permutations(n)) {
                    // block permutation acting on positions i .. i+n-1
                    std::vector<int> im(m + n - 1);
                    std::iota(im.begin(), im.end(), 1);
                    for (std::size_t q = 0; q < n; ++q)
                        im[i - 1 + q] = static_cast<int>(i - 1) + tau.image()[q];
                    ++checks;
                    if (w_inner.empty() &&
                        compose(flavor, u, i, permute_factors(tau, v)) != permute_factors(Permutation(im), uv))
                        w_inner = "u = " + u.to_string() + "; v = " + v.to_string() + "; i = " + std::to_string(i) +
                                  "; tau = " + perm_text(tau);
                }
                for (const auto& sigma : all_permutations(m)) {
                    const auto si = static_cast<std::size_t>(sigma(static_cast<int>(i)));
                    auto pos = [&](std::size_t l) { return l < si ? l : l + n - 1; };
                    std::vector<int> im;
                    for (std::size_t k = 1; k <= m; ++k) {
                        if (k == i)
                            for (std::size_t q = 0; q < n; ++q)
                                im.push_back(static_cast<int>(si + q));
                        else
                            im.push_back(static_cast<int>(pos(static_cast<std::size_t>(sigma(static_cast<int>(k))))));
                    }
                    ++checks;
                    if (w_outer.empty() && compose(flavor, permute_factors(sigma, u), i, v) !=
                                               permute_factors(Permutation(im), compose(flavor, u, si, v)))
                        w_outer = "u = " + u.to_string() + "; v = " + v.to_string() + "; i = " + std::to_string(i) +
                                  "; sigma = " + perm_text(sigma);
                }
            }
        }
        const std::string tag = to_string(flavor) + ": ";
        report.add(tag + "u o_i (v.tau) = (u o_i v).tau'", w_inner.empty(), std::to_string(checks) + " checks", w_inner);
        report.add(tag + "(u.sigma) o_i v = (u o_sigma(i) v).sigma'", w_outer.empty(), "", w_outer);
    }
    return report;
}

Report check_unit(OperadFlavor flavor, const Bialgebra& b, const SweepOptions& o)
{
    Report report;
    report.subject = "unit laws of " + to_string(flavor) + " over " + to_string(b.kind());
    const BialgebraPtr parent = b.one().parent();
    const TensorElement id = OperadElement::unit(flavor, parent).payload();
    std::string w_left, w_right;
    for (const auto& t : triples(flavor, b, o)) {
        for (const TensorElement* x : {&t.u, &t.v, &t.w}) {
            if (x->arity() == 0 && flavor == OperadFlavor::Additive)
                continue;
            if (w_left.empty() && compose(flavor, id, 1, *x) != *x)
                w_left = x->to_string();
            for (std::size_t i = 1; i <= x->arity(); ++i)
                if (w_right.empty() && compose(flavor, *x, i, id) != *x)
                    w_right = x->to_string() + "; i = " + std::to_string(i);
        }
    }
    report.add("id o_1 v = v", w_left.empty(), "", w_left);
    report.add("u o_i id = u", w_right.empty(), "", w_right);
    if (flavor == OperadFlavor::Multiplicative) {
        std::string w;
        const int top = std::min(3, budget(b, o.cutoff));
        for (const auto& key : b.basis_up_to(top)) {
            const TensorElement x = b.basis_element(key);
            for (std::size_t n = 1; n <= 4 && w.empty(); ++n)
                for (std::size_t i = 1; i <= n; ++i)
                    if (circ_B(b.unit_tensor(n), i, x) != pad(b.coalgebra(), x, i, n)) {
                        w = "x = " + x.to_string() + "; n = " + std::to_string(n) + "; i = " + std::to_string(i);
                        break;
                    }
        }
        report.add("1^n o_i x = 1^(i-1) (x) x (x) 1^(n-i)", w.empty(), "", w);
    }
    return report;
}

Report check_reconstruction(const Bialgebra& b, int cutoff)
{
    Report report;
    report.subject = "bialgebra read back from B over " + to_string(b.kind());
    const int top = budget(b, cutoff);
    const auto keys = b.basis_up_to(top);
    std::string w_delta, w_eps, w_prod;
    for (const auto& k : keys) {
        const TensorElement x = b.basis_element(k);
        if (w_delta.empty() && circ_B(x, 1, b.unit_tensor(2)) != slot_apply(SlotMap::Coproduct, 1, x))
            w_delta = b.render(k);
        if (b.counital() && w_eps.empty()) {
            TensorElement one0 = b.zero(0);
            one0.add_term({}, 1);
            if (circ_B(x, 1, one0).scalar_value() != b.counit(k))
                w_eps = b.render(k);
        }
        for (const auto& l : keys) {
            if (!b.finite_monoid_kind() && b.degree(k) + b.degree(l) > top)
                continue;
            if (w_prod.empty() && circ_B(x, 1, b.basis_element(l)) != b.basis_element(b.multiply(k, l)))
                w_prod = "(" + b.render(k) + ", " + b.render(l) + ")";
        }
    }
    report.add("coproduct x o_1 (1(x)1)", w_delta.empty(), "", w_delta);
    if (b.counital())
        report.add("counit x o_1 1", w_eps.empty(), "", w_eps);
    report.add("product x o_1 y", w_prod.empty(), "", w_prod);
    return report;
}

} // namespace udf
