// One line per acceptance criterion. Arithmetic is exact, so every
// comparison below has tolerance 0; the only pinned limits are runtimes.

#include "udf/bialgebra/sampling.hpp"
#include "udf/cobar/cobar.hpp"
#include "udf/deform/deform.hpp"
#include "udf/error.hpp"
#include "udf/generalized/diagram.hpp"
#include "udf/generalized/ternary.hpp"
#include "udf/operad/operad.hpp"
#include "udf/twist/twist.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>

using namespace udf;

namespace {

constexpr double criterion1_seconds = 10.0;
constexpr double criterion3_seconds = 60.0;

struct Outcome {
    bool ok = true;
    std::string note;

    void require(bool cond, const std::string& what)
    {
        if (!cond && ok) {
            ok = false;
            note = what;
        }
    }
};

int failures = 0;

void criterion(int id, const char* title, double limit, const std::function<Outcome()>& body)
{
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o.ok = false;
        o.note = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (limit > 0 && secs >= limit && o.ok) {
        o.ok = false;
        o.note = "runtime over the limit";
    }
    if (!o.ok)
        ++failures;
    char time[64];
    if (limit > 0)
        std::snprintf(time, sizeof time, "%.2fs < %.0fs", secs, limit);
    else
        std::snprintf(time, sizeof time, "%.2fs", secs);
    std::printf("%s  %2d  %s  [%s]%s%s\n", o.ok ? "PASS" : "FAIL", id, title, time, o.note.empty() ? "" : "  ",
                o.note.c_str());
    std::fflush(stdout);
}

BialgebraPtr make(BialgebraKind kind, std::vector<std::string> gens, int cutoff)
{
    BialgebraSpec s;
    s.kind = kind;
    s.generators = std::move(gens);
    return construct_bialgebra(s, cutoff);
}

BialgebraPtr poly(std::vector<std::string> gens, int cutoff)
{
    return make(BialgebraKind::PolynomialPrimitive, std::move(gens), cutoff);
}

BialgebraPtr cyclic3()
{
    BialgebraSpec s;
    s.kind = BialgebraKind::Monoid;
    MonoidTable t{{"e", "g", "h"}, "e", {{"e", "g", "h"}, {"g", "h", "e"}, {"h", "e", "g"}}};
    s.monoid_table = t;
    return construct_bialgebra(s, 1);
}

TensorElement ten(const BialgebraPtr& b, std::initializer_list<const char*> slots)
{
    std::vector<TensorElement> f;
    for (const char* s : slots)
        f.push_back(b->element(s));
    return otimes(f);
}

// p1⊗p2 - p2⊗p1
TensorElement wedge(const BialgebraPtr& b) { return ten(b, {"p1", "p2"}) - ten(b, {"p2", "p1"}); }

Scalar binomial(int n, int k)
{
    Scalar c = 1;
    for (int i = 0; i < k; ++i)
        c = c * Scalar(n - i) / Scalar(i + 1);
    return c;
}

ModuleAction derivations(const BialgebraPtr& b, const AlgebraPtr& a, const char* d1, const char* d2)
{
    return action_from_derivations(b, a, {{"p1", LinearOperator::parse(a, d1)}, {"p2", LinearOperator::parse(a, d2)}});
}

AlgSeries exp_times(unsigned n, const Scalar& x, const AlgElement& v)
{
    AlgSeries s(n, AlgElement());
    Scalar c = 1;
    for (unsigned k = 0; k <= n; ++k) {
        s[k] = c * v;
        c = c * x / Scalar(static_cast<long>(k + 1));
    }
    return s;
}

// Dimension of the 5- or 7-leaf part of the free non-symmetric partially
// associative algebra on one generator, from string trees and the rank of
// every relation instance.
std::size_t brute_pass_dim(int n)
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
    auto end_of = [](const std::string& s, std::size_t pos) {
        if (s[pos] == 'x')
            return pos + 1;
        int depth = 0;
        std::size_t i = pos;
        do {
            depth += s[i] == '(' ? 1 : s[i] == ')' ? -1 : 0;
            ++i;
        } while (depth > 0);
        return i;
    };
    auto split3 = [&](const std::string& s, std::size_t start) {
        std::vector<std::string> kids;
        std::size_t i = start;
        for (int k = 0; k < 3; ++k) {
            const std::size_t e = end_of(s, i);
            kids.push_back(s.substr(i, e - i));
            i = e;
        }
        return std::pair{kids, i};
    };
    std::vector<linalg::SparseVector> rels;
    for (const auto& t : trees[n])
        for (std::size_t pos = 0; pos < t.size(); ++pos) {
            if (t[pos] != '(')
                continue;
            auto [kids, close] = split3(t, pos + 1);
            if (kids[2][0] != '(')
                continue;
            auto inner = split3(kids[2], 1).first;
            const auto &a = kids[0], &b = kids[1], &c = inner[0], &d = inner[1], &e = inner[2];
            const std::string pre = t.substr(0, pos), post = t.substr(close + 1);
            linalg::SparseVector v;
            for (const auto& s : {"(" + a + b + "(" + c + d + e + "))", "(" + a + "(" + b + c + d + ")" + e + ")",
                                  "((" + a + b + c + ")" + d + e + ")"})
                v[id.at(pre + s + post)] += 1;
            rels.push_back(v);
        }
    return trees[n].size() - linalg::rank(rels);
}

Diagram power_map(int m, int n, bool literal, int d, const BialgebraPtr& b)
{
    const int top = std::max(m, n) * d * (literal ? 2 : 1);
    auto a1 = Algebra::polynomial({"p", "q"}, d);
    auto a2 = Algebra::polynomial({"p", "q"}, top);
    auto act1 = std::make_shared<const ModuleAction>(derivations(b, a1, "p*d_p", "q*d_q"));
    const std::string ms = std::to_string(m), ns = std::to_string(n);
    const std::string o1 = "1/" + ms + "*p" + (literal ? "^" + ms : "") + "*d_p";
    const std::string o2 = "1/" + ns + "*q" + (literal ? "^" + ns : "") + "*d_q";
    auto act2 = std::make_shared<const ModuleAction>(derivations(b, a2, o1.c_str(), o2.c_str()));
    Diagram D;
    D.nodes = {{"A1", act1}, {"A2", act2}};
    D.arrows.push_back({0, 1, AlgebraMorphism::parse(a1, a2, {{"p", "p^" + ms}, {"q", "q^" + ns}}),
                        BialgebraMorphism::identity(b)});
    return D;
}

std::string fail_note(const Report& r)
{
    const auto* f = r.first_failure();
    return f ? f->name + ": " + f->detail + (f->witness.empty() ? "" : " [" + f->witness + "]") : "";
}

} // namespace

int main()
{
    std::printf("acceptance: exact rational arithmetic, tolerance 0\n");

    criterion(1, "Moyal F passes (d1) and (d2) mod t^6", criterion1_seconds, [] {
        Outcome o;
        const unsigned N = 5;
        auto b = poly({"p1", "p2"}, 8);
        auto F = make_exp_udf(Scalar(1, 2) * wedge(b), N);
        auto r = check_twisting(F);
        o.require(r.passed(), fail_note(r));
        // closed form of the coefficients: (1/2)^k/k! Σ_j C(k,j)(-1)^(k-j) p1^j p2^(k-j) ⊗ p2^j p1^(k-j)
        for (unsigned k = 0; k <= N; ++k) {
            TensorElement want = b->zero(2);
            const int kk = static_cast<int>(k);
            for (int j = 0; j <= kk; ++j) {
                Scalar c = binomial(kk, j) / factorial(k);
                for (unsigned i = 0; i < k; ++i)
                    c /= 2;
                if ((kk - j) % 2)
                    c = -c;
                const std::string l = "p1^" + std::to_string(j) + "*p2^" + std::to_string(kk - j);
                const std::string rr = "p2^" + std::to_string(j) + "*p1^" + std::to_string(kk - j);
                want += c * otimes(b->element(l), b->element(rr));
            }
            o.require(F[k] == want, "coefficient t^" + std::to_string(k) + " differs from the closed form");
        }
        return o;
    });

    criterion(2, "Moyal and quantum plane: associative, unital, commutation relations", 0, [] {
        Outcome o;
        auto b = poly({"p1", "p2"}, 10);
        auto a = Algebra::polynomial({"p", "q"}, 4);
        const auto p = a->parse("p"), q = a->parse("q");
        auto moyal = derivations(b, a, "d_p", "d_q");
        auto Fm = make_exp_udf(Scalar(1, 2) * wedge(b), 5);
        auto r1 = check_associativity(Fm, moyal, 4);
        o.require(r1.passed(), "Moyal: " + fail_note(r1));
        AlgSeries t(5, AlgElement());
        t[1] = a->one();
        o.require(twisted_product(Fm, moyal, p, q) - twisted_product(Fm, moyal, q, p) == t, "Moyal p*q - q*p != t");

        auto qp = derivations(b, a, "p*d_p", "q*d_q");
        auto Fq = make_exp_udf(wedge(b), 5);
        auto r2 = check_associativity(Fq, qp, 4);
        o.require(r2.passed(), "quantum plane: " + fail_note(r2));
        auto F8 = make_exp_udf(wedge(b), 7);
        auto pq8 = twisted_product(F8, qp, p, q), qp8 = twisted_product(F8, qp, q, p);
        o.require(pq8 - exp_times(7, Scalar(2), AlgElement(1)) * qp8 == AlgSeries(7, AlgElement()),
                  "p*q - e^{2t} q*p != 0 mod t^8");
        o.require(pq8 == exp_times(7, Scalar(1), a->parse("p*q")), "p*q != e^t pq");
        return o;
    });

    criterion(3, "twi(k[p1..pk]) has dimension k(k-1)/2, cobar = direct, cutoff 6", criterion3_seconds, [] {
        Outcome o;
        for (int k = 1; k <= 3; ++k) {
            std::vector<std::string> gens;
            for (int i = 1; i <= k; ++i)
                gens.push_back("p" + std::to_string(i));
            auto b = poly(gens, 6);
            auto h = h2(b, 6);
            auto t = twi_direct(b, 6);
            o.require(static_cast<long>(h.total()) == k * (k - 1) / 2,
                      "k=" + std::to_string(k) + ": cobar total " + std::to_string(h.total()));
            o.require(h.profile() == t.profile(), "k=" + std::to_string(k) + ": cobar and direct differ");
            if (k == 2) {
                auto w = wedge(b);
                o.require(h.blocks[2].representatives.size() == 1 && same_twi_class(h.blocks[2].representatives[0], w, 6),
                          "k=2 cobar representative not equivalent to p1⊗p2 - p2⊗p1");
                o.require(t.blocks[2].representatives.size() == 1 && same_twi_class(t.blocks[2].representatives[0], w, 6),
                          "k=2 direct representative not equivalent to p1⊗p2 - p2⊗p1");
            }
        }
        return o;
    });

    criterion(4, "direct and cobar solvers agree on every shipped counital bialgebra", 0, [] {
        Outcome o;
        struct Case {
            std::string name;
            BialgebraPtr b;
            int D;
        };
        std::vector<Case> cases{
            {"k[p1]", poly({"p1"}, 6), 6},
            {"k[p1,p2]", poly({"p1", "p2"}, 6), 6},
            {"k[p1,p2,p3]", poly({"p1", "p2", "p3"}, 6), 6},
            {"T(x,y)", make(BialgebraKind::TensorPrimitive, {"x", "y"}, 6), 6},
            {"k[free comm. monoid on x,y]", make(BialgebraKind::Monoid, {"x", "y"}, 3), 3},
            {"k[Z/3]", cyclic3(), 1},
            {"matrix coordinates", make(BialgebraKind::MatrixCoordinate, {}, 3), 3},
        };
        std::string summary;
        for (const auto& c : cases) {
            const auto h = h2(c.b, c.D).profile();
            const auto t = twi_direct(c.b, c.D).profile();
            o.require(h == t, c.name + ": profiles differ");
            std::size_t total = 0;
            for (const auto& [deg, dim] : h)
                total += dim;
            summary += (summary.empty() ? "" : ", ") + c.name + " " + std::to_string(total);
        }
        if (o.ok)
            o.note = summary;
        return o;
    });

    criterion(5, "operad axioms for 𝔹 and 𝕓; equivariance fails exactly for matrix coordinates", 0, [] {
        Outcome o;
        SweepOptions opt;
        opt.samples = 100;
        opt.seed = 0;
        opt.cutoff = 3;
        opt.exhaustive_degree = 2;
        std::vector<std::pair<std::string, BialgebraPtr>> bs{
            {"k[p1,p2]", poly({"p1", "p2"}, 6)},
            {"free monoid", make(BialgebraKind::Monoid, {"x", "y"}, 6)},
            {"Z/3", cyclic3()},
        };
        for (const auto& [name, b] : bs) {
            for (auto flavor : {OperadFlavor::Multiplicative, OperadFlavor::Additive}) {
                auto a = check_assoc_cases(flavor, *b, opt);
                o.require(a.passed(), name + " " + to_string(flavor) + ": " + fail_note(a));
                auto u = check_unit(flavor, *b, opt);
                o.require(u.passed(), name + " " + to_string(flavor) + ": " + fail_note(u));
            }
            auto e = check_equivariance(*b, opt);
            o.require(e.passed(), name + ": equivariance failed " + fail_note(e));
        }
        auto m = make(BialgebraKind::MatrixCoordinate, {}, 3);
        auto e = check_equivariance(*m, opt);
        o.require(!e.passed(), "matrix coordinates passed equivariance");
        o.require(e.first_failure() && !e.first_failure()->witness.empty(), "no witness for matrix coordinates");
        if (o.ok)
            o.note = "matrix witness: " + e.first_failure()->witness;
        return o;
    });

    criterion(6, "logarithmic trick: to/from additive round trip, additive twist, 𝕓(1) composition", 0, [] {
        Outcome o;
        const unsigned N = 6;
        auto b = poly({"p1", "p2"}, 8);
        auto bp = poly({"p"}, 8);
        std::vector<TensorSeries> udfs{make_exp_udf(Scalar(1, 2) * wedge(b), N), make_exp_udf(wedge(b), N),
                                       make_exp_udf(ten(bp, {"p", "p"}), N)};
        for (std::size_t i = 0; i < udfs.size(); ++i) {
            auto f = to_additive(udfs[i]);
            o.require(from_additive(f) == udfs[i], "round trip fails for UDF " + std::to_string(i));
            o.require(check_additive_twist(f).passed(), "log of UDF " + std::to_string(i) + " is not additive");
        }
        TensorSeries f(N, b->zero(2));
        f[1] = Scalar(1, 2) * wedge(b);
        o.require(check_additive_twist(f).passed(), "(t/2)(p1⊗p2 - p2⊗p1) fails the additive equation");
        o.require(to_additive(udfs[0]) == f, "log of the Moyal UDF is not (t/2)(p1⊗p2 - p2⊗p1)");
        Sampler s(11);
        for (const auto& bb : {b, make(BialgebraKind::MatrixCoordinate, {}, 4)})
            for (int k = 0; k < 20; ++k) {
                auto u = s.tensor(*bb, 1, 2), v = s.tensor(*bb, 1, 2);
                o.require(circ_b(u, 1, v) == u + v, "u ∘₁ v != u + v for u = " + u.to_string());
            }
        return o;
    });

    criterion(7, "triviality verdicts: zero cocycles and wedges over A", 0, [] {
        Outcome o;
        auto b = poly({"p1", "p2"}, 6);
        auto a = Algebra::polynomial({"p", "q"}, 4);
        auto F = make_exp_udf(wedge(b), 2);
        o.require(infinitesimal_cocycle(F, derivations(b, a, "d_p", "q*d_p"), 4).is_zero(), "(a) cocycle is not zero");
        auto quo = Algebra::monomial_quotient({"p", "q"}, {"p^2", "q^2", "p*q"});
        o.require(infinitesimal_cocycle(F, derivations(b, quo, "p*d_p", "q*d_q"), 2).is_zero(),
                  "(b) cocycle is not zero");
        auto w1 = wedge_over_A(LinearOperator::parse(a, "p*d_p"), LinearOperator::parse(a, "q*d_q"));
        o.require(w1.nonzero() && w1.coefficients.size() == 1 && w1.coefficients.at({0, 1}) == a->parse("p*q"),
                  "(c) wedge(p d_p, q d_q) != pq d_p∧d_q");
        auto w2 = wedge_over_A(LinearOperator::parse(a, "d_p"), LinearOperator::parse(a, "q*d_p"));
        o.require(!w2.nonzero(), "(c) wedge(d_p, q d_p) != 0");
        // the same derivations on k[p,q] itself give a nontrivial class
        auto mu = infinitesimal_cocycle(F, derivations(b, a, "p*d_p", "q*d_q"), 4);
        o.require(!mu.is_zero() && !is_hochschild_coboundary(mu, 2).found, "p d_p, q d_q on k[p,q] is trivial");
        return o;
    });

    criterion(8, "ternary: H = F∘₁F, twisted pAss product, free pAss dimension 2 in arity 5", 0, [] {
        Outcome o;
        auto b = poly({"p1", "p2"}, 8);
        // H for F = exp(t r) is exp(t R), R = r⊗1 + p1⊗1⊗p2 - p2⊗1⊗p1 + 1⊗r
        const auto r = wedge(b);
        const auto R = otimes(r, b->one()) + ten(b, {"p1", "1", "p2"}) - ten(b, {"p2", "1", "p1"}) + otimes(b->one(), r);
        TensorSeries tR(4, b->zero(3));
        tR[1] = R;
        o.require(pass_udf(make_exp_udf(r, 4)) == series_exp(tR), "F∘₁F != exp(tR) for F = exp(t r)");
        auto Hm = pass_udf(make_exp_udf(Scalar(1, 2) * r, 4));
        o.require(Hm[1] == Scalar(1, 2) * R, "Moyal H at order t != R/2");

        auto H = pass_udf(make_exp_udf(r, 1));
        auto euler = [&](const TernaryAlgebraPtr& a) {
            return std::make_shared<const TernaryAction>(
                b, a,
                std::map<std::string, TernaryDerivation>{{"p1", TernaryDerivation::parse(a, {{"p", "(p,p,p)"}})},
                                                         {"p2", TernaryDerivation::parse(a, {{"q", "(q,q,q)"}})}});
        };
        std::string note;
        for (int L : {7, 9}) {
            auto a = TernaryAlgebra::free_pass({"p", "q"}, L, false);
            auto rep = check_partial_assoc(*a, twisted_structure(H, euler(a)), 1, L);
            o.require(rep.passed(), "L=" + std::to_string(L) + ": " + fail_note(rep));
            note += "L=" + std::to_string(L) + " " + rep.entries.front().detail + "; ";
        }
        // the relation is visible at 9 leaves: dropping one term of H breaks it
        auto a9 = TernaryAlgebra::free_pass({"p", "q"}, 9, false);
        TensorSeries broken(std::vector<TensorElement>{H[0], H[1] - ten(b, {"p1", "1", "p2"})});
        o.require(!check_partial_assoc(*a9, twisted_structure(broken, euler(a9)), 1, 9).passed(),
                  "L=9 does not detect a broken H");
        auto one = TernaryAlgebra::free_pass({"x"}, 7, false);
        o.require(one->dimension(5) == 2 && brute_pass_dim(5) == 2, "arity-5 dimension != 2");
        o.require(one->dimension(7) == brute_pass_dim(7), "arity-7 dimension disagrees with the tree oracle");
        if (o.ok)
            o.note = note + "dim(5) = 2, dim(7) = " + std::to_string(one->dimension(7));
        return o;
    });

    criterion(9, "interchange: grouplike pair passes, perturbed pair fails at order t", 0, [] {
        Outcome o;
        auto g = make(BialgebraKind::Monoid, {"a", "b", "c", "d"}, 4);
        auto F1 = constant_series(3, ten(g, {"a", "b"}));
        auto F2 = constant_series(3, ten(g, {"c", "d"}));
        auto ok = interchange_check(F1, F2);
        o.require(ok.passed(), "grouplike: " + fail_note(ok));
        auto b = poly({"p1", "p2"}, 4);
        TensorSeries P = constant_series(3, b->unit_tensor(2));
        P[1] = ten(b, {"p1", "p2"});
        auto bad = interchange_check(P, constant_series(3, b->unit_tensor(2)));
        o.require(!bad.passed(), "perturbed pair passed");
        if (bad.first_failure()) {
            o.require(bad.first_failure()->detail == "first failure at order t^1", "perturbed pair not localized at t");
            const auto w = ten(b, {"p1", "1", "1", "p2"}) + ten(b, {"1", "p2", "p1", "1"});
            o.require(bad.first_failure()->witness == w.to_string(), "unexpected witness");
            if (o.ok)
                o.note = "witness " + bad.first_failure()->witness;
        }
        return o;
    });

    criterion(10, "diagram: power maps h(p)=p^m, h(q)=q^n mod t^4", 0, [] {
        Outcome o;
        auto b = poly({"p1", "p2"}, 8);
        const unsigned N = 3;
        const int d = 3;
        auto F = make_exp_udf(wedge(b), N);
        const TwistTriple T{F, constant_series(N, b->one()), F};
        for (int m = 1; m <= 3; ++m)
            for (int n = 1; n <= 3; ++n) {
                const std::string mn = "(" + std::to_string(m) + "," + std::to_string(n) + ")";
                auto D = power_map(m, n, false, d, b);
                auto c = diagram_compat_check(D, d);
                o.require(c.passed(), mn + " compatibility: " + fail_note(c));
                auto tw = diagram_twist_check(D, 0, T, d);
                o.require(tw.passed(), mn + " triple: " + fail_note(tw));
                const auto img = morphism_image(D, 0, T, d);
                o.require(img.surjective == (m == 1 && n == 1), mn + " surjectivity");
            }
        auto lit = diagram_compat_check(power_map(2, 3, true, d, b), d);
        o.require(!lit.passed(), "literal action passed condition (ii)");
        if (const auto* f = lit.first_failure()) {
            o.require(f->name.find("(ii)") != std::string::npos && !f->witness.empty(), "literal failure not in (ii)");
            if (o.ok)
                o.note = "literal action flagged: " + f->witness;
        }
        return o;
    });

    criterion(11, "gauge transforms of valid UDFs stay valid, 20 seeded gauges, mod t^6", 0, [] {
        Outcome o;
        const unsigned N = 5;
        auto b = poly({"p1", "p2"}, 16);
        std::vector<TensorSeries> udfs{make_exp_udf(Scalar(1, 2) * wedge(b), N), make_exp_udf(wedge(b), N)};
        Sampler s(2024);
        for (int k = 0; k < 20; ++k) {
            TensorSeries G(N, b->zero(1));
            G[0] = b->one();
            // G∘ in the augmentation ideal, so that (d2) survives
            for (unsigned i = 1; i <= N; ++i) {
                G[i] = s.tensor(*b, 1, 2, 2);
                G[i] -= slot_apply(SlotMap::Counit, 1, G[i]).scalar_value() * b->one();
            }
            const GaugeElement g(G);
            for (std::size_t u = 0; u < udfs.size(); ++u) {
                auto r = check_twisting(gauge_transform(udfs[u], g));
                o.require(r.passed(), "gauge " + std::to_string(k) + ", UDF " + std::to_string(u) + ": " + fail_note(r));
            }
        }
        return o;
    });

    std::printf("%s: %d of 11 criteria failed\n", failures ? "FAIL" : "PASS", failures);
    return failures ? 1 : 0;
}
