#include <doctest.h>

#include "udf/bialgebra/sampling.hpp"
#include "udf/error.hpp"
#include "udf/twist/twist.hpp"

using namespace udf;

namespace {

BialgebraPtr poly(std::vector<std::string> gens, int cutoff)
{
    BialgebraSpec s;
    s.generators = std::move(gens);
    return construct_bialgebra(s, cutoff);
}

TensorElement pure(const BialgebraPtr& b, std::vector<std::string> factors, Scalar c = 1)
{
    TensorElement t = b->element(factors[0]);
    for (std::size_t i = 1; i < factors.size(); ++i)
        t = otimes(t, b->element(factors[i]));
    return c * t;
}

TensorElement wedge(const BialgebraPtr& b) { return pure(b, {"p1", "p2"}) - pure(b, {"p2", "p1"}); }

} // namespace

TEST_CASE("trivial and Moyal twists")
{
    auto b = poly({"p1", "p2"}, 12);
    CHECK(check_twisting(constant_series(6, b->unit_tensor(2)), {true, true}).passed());

    auto F = make_exp_udf(Scalar(1, 2) * wedge(b), 6);
    auto r = check_twisting(F, {true, true});
    CHECK(r.entries[0].passed);
    CHECK(r.entries[1].passed);
    CHECK(r.entries[2].passed);
    CHECK_FALSE(r.entries[3].passed);
    CHECK(r.entries[3].name == "symmetric");

    TwistingElement te(F);
    CHECK(te.is_udf());
    CHECK(&te.verdict() == &te.verdict());
    CHECK(te.verdict().passed());
}

TEST_CASE("exp of a symmetric tensor")
{
    auto b = poly({"p"}, 8);
    for (long lambda : {1L, -2L, 3L}) {
        auto F = make_exp_udf(Scalar(lambda) * pure(b, {"p", "p"}), 4);
        CHECK(check_twisting(F, {true, true}).passed());
    }
    // order t^2 of (d1) by hand for λ = 1: both sides equal (1/2)(p⊗1⊗p + 1⊗p⊗p + p⊗p⊗1)^2
    auto F = make_exp_udf(pure(b, {"p", "p"}), 2);
    auto s = pure(b, {"p", "1", "p"}) + pure(b, {"1", "p", "p"}) + pure(b, {"p", "p", "1"});
    auto one = constant_series(2, b->one());
    auto lhs = slot_apply(SlotMap::Coproduct, 1, F) * otimes(F, one);
    CHECK(lhs[2] == Scalar(1, 2) * (s * s));
    CHECK(lhs[1] == s);
}

TEST_CASE("make_exp_udf expansion")
{
    auto b = poly({"p1", "p2"}, 8);
    auto r = Scalar(1, 2) * wedge(b);
    auto F = make_exp_udf(r, 2);
    CHECK(F[0] == b->unit_tensor(2));
    CHECK(F[1] == r);
    CHECK(F[2] == Scalar(1, 8) * (wedge(b) * wedge(b)));
    CHECK(make_exp_udf(b->zero(2), 3) == constant_series(3, b->unit_tensor(2)));

    BialgebraSpec tx;
    tx.kind = BialgebraKind::TensorPrimitive;
    tx.generators = {"e1", "e2"};
    auto t = construct_bialgebra(tx, 4);
    CHECK_THROWS_AS(make_exp_udf(pure(t, {"e1", "e2"}), 2), DomainError);
}

TEST_CASE("gauge transforms")
{
    auto b = poly({"p"}, 12);
    auto F = make_exp_udf(pure(b, {"p", "p"}), 4);
    GaugeElement one(constant_series(4, b->one()));
    CHECK(gauge_transform(F, one) == F);

    GaugeElement G(series_exp(times_t(4, b->generator("p"))));
    auto trivial = constant_series(4, b->unit_tensor(2));
    CHECK(gauge_transform(trivial, G) == trivial);

    GaugeElement H(series_exp(times_t(4, b->element("p^2"))));
    auto moved = gauge_transform(F, H);
    CHECK(check_twisting(moved).passed());
    CHECK(moved[1] != F[1]);
    CHECK(moved[1] - F[1] == additive_coboundary(b->element("p^2")));

    CHECK_THROWS_AS(GaugeElement(constant_series(2, Scalar(2) * b->one())), DomainError);
}

TEST_CASE("gauge closure on sampled gauge elements")
{
    auto b = poly({"p1", "p2"}, 14);
    auto F = make_exp_udf(Scalar(1, 2) * wedge(b), 4);
    Sampler s(0);
    auto reduced = [&](TensorElement x) { return x - slot_apply(SlotMap::Counit, 1, x).scalar_value() * b->one(); };
    for (int n = 0; n < 5; ++n) {
        TensorSeries g(4, b->zero(1));
        g[1] = reduced(s.tensor(*b, 1, 2, 2));
        g[2] = reduced(s.tensor(*b, 1, 1, 2));
        GaugeElement G(constant_series(4, b->one()) + g);
        CHECK(check_twisting(gauge_transform(F, G)).passed());
    }
    // a scalar gauge 1 + t keeps (d1) but rescales the counit by 1/ε(G)
    GaugeElement scalar(constant_series(4, b->one()) + times_t(4, b->one()));
    auto r = check_twisting(gauge_transform(F, scalar));
    CHECK(r.entries[0].passed);
    CHECK_FALSE(r.entries[1].passed);
}

TEST_CASE("logarithmic trick")
{
    auto b = poly({"p1", "p2"}, 12);
    auto f = times_t(5, Scalar(1, 2) * wedge(b));
    auto F = from_additive(f);
    CHECK(F == make_exp_udf(Scalar(1, 2) * wedge(b), 5));
    CHECK(to_additive(F) == f);
    CHECK(check_additive_twist(f).passed());
    CHECK(to_additive(constant_series(3, b->unit_tensor(2))).valuation() < 0);

    // any t·(P⊗P) is an additive twist; t·(p1^2 ⊗ p2) is not
    CHECK(check_additive_twist(times_t(3, pure(b, {"p1", "p1"}) + Scalar(3) * pure(b, {"p2", "p1"}))).passed());
    CHECK_FALSE(check_additive_twist(times_t(3, pure(b, {"p1^2", "p2"}))).passed());

    // both pictures agree on a non-twist
    auto bad = constant_series(3, b->unit_tensor(2)) + times_t(3, pure(b, {"p1^2", "p2"}));
    CHECK_FALSE(check_twisting(bad).passed());
    CHECK_FALSE(check_additive_twist(to_additive(bad)).passed());
}

TEST_CASE("additive gauge")
{
    auto b = poly({"p"}, 6);
    auto f = times_t(2, pure(b, {"p", "p"}));
    CHECK(additive_gauge(f, TensorSeries(2, b->zero(1))) == f);
    CHECK(additive_gauge(f, times_t(2, b->element("1/2*p^2"))) == times_t(2, Scalar(2) * pure(b, {"p", "p"})));
    CHECK(additive_gauge(f, times_t(2, b->element("-1/2*p^2"))).valuation() < 0);

    auto g = solve_additive_coboundary(pure(b, {"p", "p"}), 4);
    REQUIRE(g.has_value());
    CHECK(*g == b->element("1/2*p^2"));
    auto unit = solve_additive_coboundary(b->unit_tensor(2), 4);
    REQUIRE(unit.has_value());
    CHECK(*unit == Scalar(-1) * b->one());

    auto b2 = poly({"p1", "p2"}, 6);
    CHECK_FALSE(solve_additive_coboundary(wedge(b2), 6).has_value());
}

TEST_CASE("rescaling")
{
    auto b = poly({"p"}, 4);
    auto F = b->unit_tensor(2);
    auto same = rescale(F, 1);
    CHECK(same.F == F);
    CHECK(same.a == 1);

    auto two = Scalar(2) * F;
    auto r = rescale(two, Scalar(1, 2));
    CHECK(r.F == F);
    CHECK(r.a == 1);
    // the normalization by 1/a instead of a breaks (d2)
    CHECK_FALSE(check_twisting(constant_series(0, Scalar(2) * two)).passed());

    CHECK_THROWS_AS(rescale(two, 1), DomainError);
    CHECK_THROWS_AS(rescale(F, 0), DomainError);
    CHECK_THROWS_AS(rescale(F + pure(b, {"p^2", "p"}), 1), DomainError);
}

TEST_CASE("functional equation")
{
    Polynomial u1 = Polynomial::variable(0), u2 = Polynomial::variable(1);
    CHECK(check_functional_equation(Polynomial(1)).passed());
    auto r = check_functional_equation(Polynomial(1) + u1 * u2);
    REQUIRE_FALSE(r.passed());
    CHECK(r.first_failure()->witness == "u1^2*u2*u3");

    auto b = poly({"p"}, 10);
    for (long lambda : {1L, 3L}) {
        auto F = make_exp_udf(Scalar(lambda) * pure(b, {"p", "p"}), 4);
        auto image = functional_image(F);
        CHECK(image[1] == Scalar(lambda) * u1 * u2);
        CHECK(check_functional_equation(image).passed());
        CHECK(check_twisting(F).passed());
    }
    auto bad = constant_series(2, b->unit_tensor(2)) + times_t(2, pure(b, {"p^2", "p"}));
    CHECK(check_functional_equation(functional_image(bad)).passed() == check_twisting(bad).passed());
}
