#include <doctest.h>

#include "udf/error.hpp"
#include "udf/generalized/diagram.hpp"
#include "udf/generalized/ternary.hpp"
#include "udf/operad/operad.hpp"

using namespace udf;

namespace {

BialgebraPtr poly(std::vector<std::string> gens, int cutoff, BialgebraKind kind = BialgebraKind::PolynomialPrimitive)
{
    BialgebraSpec s;
    s.kind = kind;
    s.generators = std::move(gens);
    return construct_bialgebra(s, cutoff);
}

TensorElement antisym(const BialgebraPtr& b, const Scalar& c)
{
    return c * (otimes(b->element("p1"), b->element("p2")) - otimes(b->element("p2"), b->element("p1")));
}

TensorElement t3(const BialgebraPtr& b, const char* x, const char* y, const char* z)
{
    return otimes(otimes(b->element(x), b->element(y)), b->element(z));
}

// Planar ternary trees with k internal nodes: C(3k, k) / (2k + 1).
long planar(int k)
{
    long c = 1;
    for (int i = 0; i < k; ++i)
        c = c * (3 * k - i) / (i + 1);
    return c / (2 * k + 1);
}

// Brute-force count of the degree-n part of the free non-symmetric algebra
// on one generator: trees minus the rank of all relation instances,
// computed here from scratch with string trees.
std::size_t brute_dim_one_generator(int n)
{
    std::map<int, std::vector<std::string>> trees{{1, {"x"}}};
    for (int m = 3; m <= n; m += 2)
        for (int a = 1; a < m; a += 2)
            for (int b = 1; a + b < m; b += 2)
                for (const auto& s : trees[a])
                    for (const auto& t : trees[b])
                        for (const auto& u : trees[m - a - b])
                            trees[m].push_back("(" + s + t + u + ")");
    std::map<std::string, std::size_t> id;
    for (const auto& t : trees[n])
        id.emplace(t, id.size());
    // a relation instance is any tree containing a node (a,b,(c,d,e)); the
    // other two terms reshape that node in place
    std::vector<linalg::SparseVector> rels;
    auto parse = [](const std::string& s, std::size_t pos) {
        // returns end of the subtree starting at pos
        if (s[pos] == 'x')
            return pos + 1;
        int depth = 0;
        std::size_t i = pos;
        do {
            if (s[i] == '(')
                ++depth;
            if (s[i] == ')')
                --depth;
            ++i;
        } while (depth > 0);
        return i;
    };
    for (const auto& t : trees[n])
        for (std::size_t pos = 0; pos < t.size(); ++pos) {
            if (t[pos] != '(')
                continue;
            std::vector<std::string> kids;
            std::size_t i = pos + 1;
            for (int k = 0; k < 3; ++k) {
                const std::size_t e = parse(t, i);
                kids.push_back(t.substr(i, e - i));
                i = e;
            }
            if (kids[2][0] != '(')
                continue;
            std::vector<std::string> inner;
            std::size_t j = 1;
            for (int k = 0; k < 3; ++k) {
                const std::size_t e = parse(kids[2], j);
                inner.push_back(kids[2].substr(j, e - j));
                j = e;
            }
            const std::string a = kids[0], b = kids[1], c = inner[0], d = inner[1], e = inner[2];
            const std::string pre = t.substr(0, pos), post = t.substr(i + 1);
            linalg::SparseVector v;
            for (const auto& s : {"(" + a + b + "(" + c + d + e + "))", "(" + a + "(" + b + c + d + ")" + e + ")",
                                  "((" + a + b + c + ")" + d + e + ")"})
                v[id.at(pre + s + post)] += 1;
            rels.push_back(v);
        }
    return trees[n].size() - linalg::rank(rels);
}

std::shared_ptr<const TernaryAction> euler_action(const BialgebraPtr& b, const TernaryAlgebraPtr& a)
{
    return std::make_shared<const TernaryAction>(
        b, a,
        std::map<std::string, TernaryDerivation>{{"p1", TernaryDerivation::parse(a, {{"p", "(p,p,p)"}})},
                                                 {"p2", TernaryDerivation::parse(a, {{"q", "(q,q,q)"}})}});
}

} // namespace

TEST_CASE("pass_udf")
{
    auto b = poly({"p1", "p2"}, 6);
    auto one = constant_series(3, b->unit_tensor(2));
    CHECK(pass_udf(one) == constant_series(3, b->unit_tensor(3)));

    auto F = make_exp_udf(antisym(b, Scalar(1)), 3);
    auto H = pass_udf(F);
    const auto r = antisym(b, Scalar(1));
    auto expected = otimes(r, b->one()) + t3(b, "p1", "1", "p2") - t3(b, "p2", "1", "p1") + otimes(b->one(), r);
    CHECK(H[1] == expected);
    CHECK(H == circ_B(F, 2, F));
    CHECK(H[0] == b->unit_tensor(3));

    auto bad = F;
    bad[2] = b->zero(2);
    CHECK_THROWS_AS(pass_udf(bad), DomainError);
}

TEST_CASE("free pAss dimensions")
{
    auto one = TernaryAlgebra::free_pass({"x"}, 5, false);
    CHECK(one->dimension(1) == 1);
    CHECK(one->dimension(3) == 1);
    CHECK(one->tree_count(5) == 3);
    CHECK(one->dimension(5) == 2);
    CHECK(one->dimension(5) == brute_dim_one_generator(5));

    auto seven = TernaryAlgebra::free_pass({"x"}, 7, false);
    CHECK(static_cast<long>(seven->tree_count(7)) == planar(3));
    CHECK(seven->dimension(7) == brute_dim_one_generator(7));

    auto sym = TernaryAlgebra::free_pass({"p", "q"}, 3, true);
    CHECK(sym->dimension(3) == 4);
    CHECK(sym->basis().size() == 6);

    CHECK_THROWS_AS(TernaryAlgebra::free_pass({"x"}, 4, false), DomainError);
    CHECK_THROWS_AS(TernaryAlgebra::free_pass({"x", "y"}, 9, false, 1000), DomainError);
}

TEST_CASE("ternary products and normal forms")
{
    auto a = TernaryAlgebra::free_pass({"x"}, 5, false);
    const auto x = a->generator("x");
    const auto xxx = a->product(x, x, x);
    const auto rel = a->product(x, x, xxx) + a->product(x, xxx, x) + a->product(xxx, x, x);
    CHECK(rel.is_zero());
    CHECK(a->product(xxx, xxx, x).is_zero()); // 7 leaves, truncated
    CHECK(a->parse("(x,x,(x,x,x)) + (x,(x,x,x),x)") == -a->parse("((x,x,x),x,x)"));
    CHECK_THROWS_AS(a->parse("(x,x)"), DomainError);
    CHECK_THROWS_AS(a->parse("(x,y,x)"), DomainError);

    auto s = TernaryAlgebra::free_pass({"p", "q"}, 5, true);
    CHECK(s->parse("(q,p,p)") == s->parse("(p,q,p)"));
    CHECK(s->render(s->parse("2*(p,p,q) - p")) == "2*(p,p,q) - p");
    // totally symmetric: the relation kills everything with 5 leaves
    CHECK(s->tree_count(5) == 12);
    CHECK(s->dimension(5) == 0);
    CHECK(TernaryAlgebra::free_pass({"x"}, 5, true)->dimension(5) == 0); // 3(x,x,(x,x,x)) = 0
}

TEST_CASE("undeformed pAss passes")
{
    for (bool symmetric : {false, true}) {
        auto a = TernaryAlgebra::free_pass({"p", "q"}, 7, symmetric);
        CHECK(check_partial_assoc(*a, undeformed_structure(a), 1, 7).passed());
    }
}

TEST_CASE("ternary derivations")
{
    auto a = TernaryAlgebra::free_pass({"p", "q"}, 7, false);
    auto d = TernaryDerivation::parse(a, {{"p", "(p,p,p)"}});
    CHECK(d.apply(a->parse("p")) == a->parse("(p,p,p)"));
    CHECK(d.apply(a->parse("(p,p,q)")) == a->parse("((p,p,p),p,q) + (p,(p,p,p),q)"));
    CHECK(d.apply(a->parse("q")).is_zero());

    auto b = poly({"p1", "p2"}, 4);
    CHECK_NOTHROW(euler_action(b, a));
    // p ↦ (p,p,p) and p ↦ (p,q,q) do not commute on p
    auto bad = std::map<std::string, TernaryDerivation>{{"p1", TernaryDerivation::parse(a, {{"p", "(p,p,p)"}})},
                                                        {"p2", TernaryDerivation::parse(a, {{"p", "(p,q,q)"}})}};
    CHECK_THROWS_AS(TernaryAction(b, a, bad), DomainError);
    auto tb = poly({"p1", "p2"}, 4, BialgebraKind::TensorPrimitive);
    CHECK_NOTHROW(TernaryAction(tb, a, bad));
}

TEST_CASE("twisted ternary product")
{
    auto b = poly({"p1", "p2"}, 6);
    auto F = make_exp_udf(antisym(b, Scalar(1)), 2);
    auto H = pass_udf(F);
    const TensorSeries H1(std::vector<TensorElement>{H[0], H[1]});

    for (int L : {7, 9}) {
        auto a = TernaryAlgebra::free_pass({"p", "q"}, L, false);
        auto action = euler_action(b, a);
        const auto p = a->generator("p"), q = a->generator("q");
        auto ppp = twisted_ternary(H, *action, p, p, p);
        CHECK(ppp[0] == a->product(p, p, p));
        CHECK(ppp[1].is_zero()); // every term of H₁ carries p₂, which kills p
        CHECK(ppp[2].is_zero());
        // H₁ on (p,p,q): p₁⊗p₂⊗1 and p₂⊗p₁⊗1 vanish, p₁ in slot 1 or 2 meets p₂ in slot 3
        auto ppq = twisted_ternary(H1, *action, p, p, q);
        CHECK(ppq[1] == a->parse("((p,p,p),p,(q,q,q)) + (p,(p,p,p),(q,q,q))"));
        CHECK(check_partial_assoc(*a, twisted_structure(H1, action), 1, L).passed());
        auto id = TensorSeries(std::vector<TensorElement>{H[0], b->zero(3)});
        CHECK(twisted_ternary(id, *action, p, q, q)[0] == a->product(p, q, q));
    }

    // at 9 leaves the order-t part of the relation on generators is visible
    auto a = TernaryAlgebra::free_pass({"p", "q"}, 9, false);
    auto action = euler_action(b, a);
    TensorSeries broken(std::vector<TensorElement>{H[0], H[1] - t3(b, "p1", "1", "p2")});
    auto rep = check_partial_assoc(*a, twisted_structure(broken, action), 1, 9);
    REQUIRE_FALSE(rep.passed());
    CHECK(rep.entries[0].detail.find("order t^1") != std::string::npos);
    CHECK_FALSE(rep.entries[0].witness.empty());
    // at 7 leaves it is truncated away
    auto a7 = TernaryAlgebra::free_pass({"p", "q"}, 7, false);
    CHECK(check_partial_assoc(*a7, twisted_structure(broken, euler_action(b, a7)), 1, 7).passed());
}

TEST_CASE("symmetric ternary quantum plane")
{
    auto b = poly({"p1", "p2"}, 6);
    auto H = pass_udf(make_exp_udf(antisym(b, Scalar(1)), 1));
    auto a = TernaryAlgebra::free_pass({"p", "q"}, 7, true);
    auto action = euler_action(b, a);
    CHECK(check_partial_assoc(*a, twisted_structure(H, action), 1, 7).passed());
    // only generators and cubes survive, so the deformation is trivial
    const auto p = a->generator("p"), q = a->generator("q");
    CHECK(twisted_ternary(H, *action, p, p, q)[1].is_zero());
    CHECK(a->basis().size() == 6);
}

TEST_CASE("interchange")
{
    auto g = poly({"a", "b", "c", "d"}, 4, BialgebraKind::Monoid);
    auto one = constant_series(2, g->unit_tensor(2));
    CHECK(interchange_check(one, one).passed());
    auto F1 = constant_series(2, otimes(g->element("a"), g->element("b")));
    auto F2 = constant_series(2, otimes(g->element("c"), g->element("d")));
    CHECK(interchange_check(F1, F2).passed());

    auto b = poly({"p1", "p2"}, 4);
    TensorSeries P = constant_series(2, b->unit_tensor(2));
    P[1] = otimes(b->element("p1"), b->element("p2"));
    auto r = interchange_check(P, constant_series(2, b->unit_tensor(2)));
    REQUIRE_FALSE(r.passed());
    CHECK(r.entries[0].detail == "first failure at order t^1");
    const auto w = otimes(otimes(b->element("p1"), b->one()), otimes(b->one(), b->element("p2"))) +
                   otimes(otimes(b->one(), b->element("p2")), otimes(b->element("p1"), b->one()));
    CHECK(r.entries[0].witness == w.to_string());
}

namespace {

Diagram power_map(int m, int n, bool literal, int d, const BialgebraPtr& b)
{
    auto a1 = Algebra::polynomial({"p", "q"}, d);
    auto a2 = Algebra::polynomial({"p", "q"}, std::max(m, n) * d + (literal ? std::max(m, n) * d : 0));
    auto act1 = std::make_shared<const ModuleAction>(action_from_derivations(
        b, a1, {{"p1", LinearOperator::parse(a1, "p*d_p")}, {"p2", LinearOperator::parse(a1, "q*d_q")}}));
    const std::string ms = std::to_string(m), ns = std::to_string(n);
    const std::string o1 = literal ? "1/" + ms + "*p^" + ms + "*d_p" : "1/" + ms + "*p*d_p";
    const std::string o2 = literal ? "1/" + ns + "*q^" + ns + "*d_q" : "1/" + ns + "*q*d_q";
    auto act2 = std::make_shared<const ModuleAction>(
        action_from_derivations(b, a2, {{"p1", LinearOperator::parse(a2, o1)}, {"p2", LinearOperator::parse(a2, o2)}}));
    Diagram D;
    D.nodes = {{"A1", act1}, {"A2", act2}};
    D.arrows.push_back({0, 1, AlgebraMorphism::parse(a1, a2, {{"p", "p^" + ms}, {"q", "q^" + ns}}),
                        BialgebraMorphism::identity(b)});
    return D;
}

} // namespace

TEST_CASE("diagram compatibility")
{
    auto b = poly({"p1", "p2"}, 6);
    for (auto [m, n] : {std::pair{1, 1}, {2, 3}, {3, 2}}) {
        CHECK(diagram_compat_check(power_map(m, n, false, 3, b), 3).passed());
    }
    auto lit = diagram_compat_check(power_map(2, 3, true, 3, b), 3);
    REQUIRE_FALSE(lit.passed());
    const auto* f = lit.first_failure();
    CHECK(f->witness.find("a = p, b = p1") == 0);
    CHECK(f->witness.find("p^3") != std::string::npos); // p^{2m-1}
    CHECK(diagram_compat_check(power_map(1, 1, true, 3, b), 3).passed());
}

TEST_CASE("diagram twists")
{
    auto b = poly({"p1", "p2"}, 6);
    const unsigned N = 3;
    auto F = make_exp_udf(antisym(b, Scalar(1)), N);
    auto G1 = constant_series(N, b->one());
    for (auto [m, n] : {std::pair{1, 1}, {2, 3}}) {
        auto D = power_map(m, n, false, 3, b);
        TwistTriple T{F, G1, F};
        CHECK(diagram_twist_check(D, 0, T, 3).passed());
        auto img = morphism_image(D, 0, T, 3);
        CHECK(img.injective);
        CHECK(img.surjective == (m == 1 && n == 1));
        // h(p *₁ q) = e^t p^m q^n
        const auto& A1 = D.nodes[0].action->algebra();
        auto pq = twisted_product(F, *D.nodes[0].action, A1.parse("p"), A1.parse("q"));
        auto h = D.arrows[0].h.apply(pq);
        CHECK(h[2] == Scalar(1, 2) * D.arrows[0].h.target().parse("p^" + std::to_string(m) + "*q^" + std::to_string(n)));
    }

    // a nontrivial gauge: F1 = G⁻¹·F, h̃ = h(G·)
    auto D = power_map(2, 3, false, 3, b);
    TensorSeries G = constant_series(N, b->one());
    G[1] = b->element("p1 + 2*p2");
    G[2] = b->element("p1*p2");
    GaugeElement gi(GaugeElement(G).inverse());
    auto F1 = gauge_transform(F, gi);
    auto rep = diagram_twist_check(D, 0, TwistTriple{F1, G, F}, 3);
    CHECK(rep.passed());
    // the same F1 with G = 1 breaks (ii)
    auto bad = diagram_twist_check(D, 0, TwistTriple{F1, G1, F}, 3);
    CHECK_FALSE(bad.passed());
}
