#include <doctest.h>

#include "udf/cobar/cobar.hpp"
#include "udf/error.hpp"

using namespace udf;

namespace {

BialgebraPtr poly(std::vector<std::string> gens, int cutoff, BialgebraKind kind = BialgebraKind::PolynomialPrimitive)
{
    BialgebraSpec s;
    s.kind = kind;
    s.generators = std::move(gens);
    return construct_bialgebra(s, cutoff);
}

BialgebraPtr cyclic(int n)
{
    BialgebraSpec s;
    s.kind = BialgebraKind::Monoid;
    MonoidTable t;
    for (int i = 0; i < n; ++i)
        t.elements.push_back("g" + std::to_string(i));
    t.unit = "g0";
    t.product.assign(static_cast<std::size_t>(n), std::vector<std::string>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            t.product[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = "g" + std::to_string((i + j) % n);
    s.monoid_table = t;
    return construct_bialgebra(s, 1);
}

TensorElement pure(const BialgebraPtr& b, const std::string& x, const std::string& y)
{
    return otimes(b->element(x), b->element(y));
}

// Independent count: for T(X) the degree-g part of H² is Λ²(Lie) in degree g,
// i.e. pairs of Lyndon words. Dimension of the free Lie algebra on 2 letters
// by Witt's formula.
long witt(int n)
{
    auto mu = [](int k) {
        int r = 1;
        for (int p = 2; p <= k; ++p)
            if (k % p == 0) {
                k /= p;
                if (k % p == 0)
                    return 0;
                r = -r;
            }
        return r;
    };
    long s = 0;
    for (int d = 1; d <= n; ++d)
        if (n % d == 0)
            s += mu(d) * (1L << (n / d));
    return s / n;
}

long lambda2_lie(int g)
{
    // Λ² of a graded space with dims witt(1..): pairs {u,v} of total degree g
    long s = 0;
    for (int a = 1; 2 * a <= g; ++a) {
        const int b = g - a;
        if (a < b)
            s += witt(a) * witt(b);
        else
            s += witt(a) * (witt(a) - 1) / 2;
    }
    return s;
}

} // namespace

TEST_CASE("reduced diagonal")
{
    auto b = poly({"p1", "p2"}, 6);
    CHECK(reduced_diagonal(b->element("p1")).is_zero());
    CHECK(reduced_diagonal(b->element("p1*p2")) == pure(b, "p1", "p2") + pure(b, "p2", "p1"));
    auto one = poly({"p"}, 6);
    CHECK(reduced_diagonal(one->element("p^2")) == Scalar(2) * pure(one, "p", "p"));
    CHECK_THROWS_AS(reduced_diagonal(one->element("1 + p")), DomainError);

    auto g = cyclic(3);
    auto x = g->element("g1") - g->one();
    CHECK(reduced_diagonal(x) == otimes(x, x));
}

TEST_CASE("differential")
{
    auto b = poly({"p1", "p2"}, 6);
    CHECK(differential(CobarCochain(b->element("p1"))).value().is_zero());
    CHECK(differential(CobarCochain(pure(b, "p1", "p2"))).value().is_zero());
    for (const char* u : {"p1^2", "p1*p2^2", "p1^3*p2"}) {
        auto d1 = differential(CobarCochain(b->element(u)));
        CHECK(d1.word_length() == 2);
        CHECK(differential(d1).value().is_zero());
    }
    auto d = differential(CobarCochain(pure(b, "p1^2", "p2")));
    CHECK(d.value() == Scalar(2) * otimes(pure(b, "p1", "p1"), b->element("p2")));
    CHECK(d.degree() == 3);
    CHECK_THROWS_AS(differential(CobarCochain(otimes(pure(b, "p1", "p1"), b->element("p1")))), DomainError);
    CHECK_THROWS_AS(CobarCochain(pure(b, "1", "p1")), DomainError);
}

TEST_CASE("lambda_expected")
{
    CHECK(lambda_expected(0) == 0);
    CHECK(lambda_expected(1) == 0);
    CHECK(lambda_expected(2) == 1);
    CHECK(lambda_expected(4) == 6);
    CHECK_THROWS_AS(lambda_expected(-1), DomainError);
}

TEST_CASE("H2 of polynomial bialgebras")
{
    for (int k = 1; k <= 3; ++k) {
        std::vector<std::string> gens;
        for (int i = 1; i <= k; ++i)
            gens.push_back("p" + std::to_string(i));
        const int D = k == 3 ? 4 : 6;
        auto b = poly(gens, D);
        auto h = h2(b, D);
        auto t = twi_direct(b, D);
        CHECK(h.total() == static_cast<std::size_t>(lambda_expected(k)));
        CHECK(h.profile() == t.profile());
        // all of it sits in degree 2
        for (const auto& blk : h.blocks)
            CHECK(blk.dim == (blk.degree == 2 ? static_cast<std::size_t>(lambda_expected(k)) : 0));
        CHECK(check_twi_reduction(b, D).passed());
    }
}

TEST_CASE("k[p1,p2] representative")
{
    auto b = poly({"p1", "p2"}, 6);
    auto w = pure(b, "p1", "p2") - pure(b, "p2", "p1");
    auto h = h2(b, 6);
    REQUIRE(h.blocks[2].representatives.size() == 1);
    CHECK(h.blocks[2].representatives[0] == w);
    auto t = twi_direct(b, 6);
    REQUIRE(t.blocks[2].representatives.size() == 1);
    CHECK(same_twi_class(t.blocks[2].representatives[0], w, 6));
    CHECK(same_twi_class(pure(b, "p1", "p2"), Scalar(1, 2) * w, 6));
    CHECK_FALSE(same_twi_class(w, b->zero(2), 6));
}

TEST_CASE("trivial classes")
{
    auto b = poly({"p"}, 6);
    CHECK(same_twi_class(pure(b, "p", "p"), b->zero(2), 6));
    CHECK(same_twi_class(b->unit_tensor(2), b->zero(2), 6));
    auto t = twi_direct(b, 6);
    CHECK(t.blocks[0].cocycles == 1); // 1⊗1 solves the equation
    CHECK(t.blocks[0].dim == 0);
}

TEST_CASE("tensor algebra profile")
{
    auto b = poly({"x", "y"}, 6, BialgebraKind::TensorPrimitive);
    auto h = h2(b, 6);
    auto t = twi_direct(b, 6);
    CHECK(h.profile() == t.profile());
    for (const auto& blk : h.blocks)
        CHECK(static_cast<long>(blk.dim) == lambda2_lie(blk.degree));
    CHECK(h.profile().at(6) == 16);
}

TEST_CASE("group-like bialgebras have no H2")
{
    auto g = cyclic(3);
    auto h = h2(g, 1);
    CHECK(h.total() == 0);
    CHECK(twi_direct(g, 1).total() == 0);
    CHECK(check_twi_reduction(g, 1).passed());

    auto m = poly({"a", "b", "c", "d"}, 2, BialgebraKind::MatrixCoordinate);
    CHECK(h2(m, 2).total() == 0);
    CHECK(check_twi_reduction(m, 2).passed());

    auto free = poly({"x", "y"}, 3, BialgebraKind::Monoid);
    CHECK(h2(free, 3).total() == 0);
    CHECK(check_twi_reduction(free, 3).passed());
}

TEST_CASE("cobar errors")
{
    auto b = poly({"p"}, 6);
    CHECK_THROWS_AS(h2(b, 1), DomainError);
    CHECK_THROWS_AS(h2(b, 7), DomainError);
    BialgebraSpec s;
    s.generators = {"p"};
    s.counital = false;
    CHECK_THROWS_AS(h2(construct_bialgebra(s, 4), 4), DomainError);
    s.counital = true;
    s.coproduct_overrides["p"] = {{Scalar(1), "p", "p"}};
    CHECK_THROWS_AS(h2(construct_bialgebra(s, 4), 4), DomainError);
}
