#include <doctest.h>

#include "udf/error.hpp"
#include "udf/kernel/linalg.hpp"
#include "udf/kernel/polynomial.hpp"
#include "udf/kernel/series.hpp"

#include <random>

using namespace udf;

namespace {

using QSeries = TruncSeries<Scalar>;

QSeries series(std::vector<long> nums, long den = 1)
{
    std::vector<Scalar> c;
    for (long n : nums)
        c.push_back(make_scalar(n, den));
    return QSeries(std::move(c));
}

QSeries series_q(std::vector<Scalar> c) { return QSeries(std::move(c)); }

} // namespace

TEST_CASE("scalars are canonical")
{
    CHECK(make_scalar(4, -6) == Scalar(-2, 3));
    CHECK(to_string(make_scalar(4, -6)) == "-2/3");
    CHECK(parse_scalar(" +5 ") == 5);
    CHECK(parse_scalar("-2/7") == Scalar(-2, 7));
    CHECK(parse_scalar("6/4").get_den() == 2);
    CHECK_THROWS_AS(parse_scalar("1/0"), Error);
    CHECK_THROWS_AS(parse_scalar("x"), Error);
    CHECK(factorial(5) == 120);
}

TEST_CASE("series multiplication")
{
    CHECK(series({1, 1, 0}) * series({1, -1, 0}) == series({1, 0, -1}));
    CHECK(series({1, 1, 0}) * series({1, 0, 0}) == series({1, 1, 0}));
    CHECK(series({0, 1, 1, 0}) * series({0, 1, 1, 0}) == series({0, 0, 1, 2}));
    CHECK_THROWS_AS(series({1, 1}) * series({1, 1, 1}), DomainError);
}

TEST_CASE("series exp, log, inverse")
{
    CHECK(series_exp(series({0, 1, 0})) == series_q({1, 1, Scalar(1, 2)}));
    CHECK(series_exp(series({0, 0, 0, 0})) == series({1, 0, 0, 0}));
    CHECK(series_exp(series({0, 1, 1})) == series_q({1, 1, Scalar(3, 2)}));
    CHECK_THROWS_AS(series_exp(series({1, 1})), DomainError);

    CHECK(series_log(series({1, 1, 0, 0})) == series_q({0, 1, Scalar(-1, 2), Scalar(1, 3)}));
    CHECK(series_log(series({1, 0, 0})) == series({0, 0, 0}));
    CHECK(series_log(series_exp(series({0, 1, 2, 0, 0}))) == series({0, 1, 2, 0, 0}));
    CHECK_THROWS_AS(series_log(series({2, 1})), DomainError);

    CHECK(series_inv(series({1, 1, 0})) == series({1, -1, 1}));
    CHECK(series_inv(series({1, 0})) == series({1, 0}));
    CHECK(series_inv(series_q({1, Scalar(-1, 2), 0})) == series_q({1, Scalar(1, 2), Scalar(1, 4)}));
    CHECK(series_inv(series({2, 0})) == series_q({Scalar(1, 2), 0}));
    CHECK_THROWS_AS(series_inv(series({0, 1})), DomainError);
}

TEST_CASE("series ring laws on random samples")
{
    std::mt19937_64 rng(7);
    auto draw = [&](unsigned n) {
        std::vector<Scalar> c;
        for (unsigned k = 0; k <= n; ++k)
            c.push_back(make_scalar(static_cast<long>(rng() % 11) - 5, static_cast<long>(rng() % 4) + 1));
        return QSeries(std::move(c));
    };
    for (unsigned n = 0; n <= 8; ++n)
        for (int rep = 0; rep < 10; ++rep) {
            QSeries a = draw(n), b = draw(n), c = draw(n);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            QSeries x = a.shifted(1), y = b.shifted(1);
            CHECK(series_exp(x + y) == series_exp(x) * series_exp(y));
            CHECK(series_log(series_exp(x)) == x);
            QSeries u = unit_series(a) + x;
            CHECK(u * series_inv(u) == unit_series(a));
        }
}

TEST_CASE("polynomial arithmetic")
{
    const std::vector<std::string> names{"p", "q"};
    Polynomial p = Polynomial::variable(0), q = Polynomial::variable(1);
    Polynomial f = (p + q).pow(3);
    CHECK(f.coefficient(Monomial({{0, 2}, {1, 1}})) == 3);
    CHECK(f.derivative(0) == Scalar(3) * (p + q).pow(2));
    CHECK((p * q - q * p).is_zero());
    CHECK(parse_monomial_term("3/2*p^2*q", names) == Scalar(3, 2) * p * p * q);
    CHECK((p * p * q).leading_monomial() == Monomial({{0, 2}, {1, 1}}));
    CHECK(Monomial::variable(0, 2) > Monomial({{0, 1}, {1, 1}}));
    CHECK(Monomial({{0, 1}, {1, 1}}) > Monomial::variable(1, 2));
    CHECK(Polynomial(Scalar(1)) + p == p + 1);
    std::vector<Polynomial> images{q, p};
    CHECK((p * p * q).substitute(images) == q * q * p);
}

TEST_CASE("echelon rank, kernel, solve, normal form")
{
    using linalg::SparseVector;
    std::vector<SparseVector> cols{
        {{0, 1}, {1, 2}},
        {{1, 1}, {2, 1}},
        {{0, 2}, {1, 5}, {2, 1}},
        {{2, Scalar(1, 3)}},
    };
    CHECK(linalg::rank(cols) == 3);
    auto ker = linalg::kernel(cols);
    REQUIRE(ker.size() == 1);
    // 2 c0 + c1 - c2 = 0
    CHECK(ker[0] == SparseVector{{0, Scalar(-2)}, {1, Scalar(-1)}, {2, Scalar(1)}});

    linalg::Echelon e(true);
    for (const auto& c : cols)
        e.insert(c);
    SparseVector target{{0, 3}, {1, 7}, {2, 2}};
    auto x = e.solve(target);
    REQUIRE(x.has_value());
    SparseVector back;
    for (const auto& [j, xj] : *x)
        for (const auto& [i, v] : cols[j])
            back[i] += xj * v;
    std::erase_if(back, [](const auto& kv) { return sgn(kv.second) == 0; });
    CHECK(back == target);

    linalg::Echelon small;
    small.insert({{0, 1}, {1, 1}});
    CHECK(small.reduce({{0, 2}, {1, 3}}) == SparseVector{{1, 1}});
    CHECK(small.reduce({{0, 1}, {1, 2}}) == small.reduce({{1, 1}}));
    CHECK(small.contains({{0, Scalar(1, 2)}, {1, Scalar(1, 2)}}));
}
