#include "job.hpp"

#include "udf/cobar/cobar.hpp"
#include "udf/deform/deform.hpp"
#include "udf/error.hpp"
#include "udf/generalized/diagram.hpp"
#include "udf/generalized/ternary.hpp"
#include "udf/operad/operad.hpp"
#include "udf/twist/twist.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

namespace udfkit {

using namespace udf;

namespace {

std::string escape_pointer(const std::string& key)
{
    std::string out;
    for (char c : key) {
        if (c == '~')
            out += "~0";
        else if (c == '/')
            out += "~1";
        else
            out += c;
    }
    return out;
}

// A value inside the job together with its JSON pointer.
struct At {
    const json& v;
    std::string path;

    [[noreturn]] void fail(const std::string& message) const { throw JobError(path.empty() ? "/" : path, message); }

    bool has(const char* key) const { return v.is_object() && v.contains(key); }

    At operator[](const char* key) const
    {
        if (!v.is_object())
            fail("expected an object");
        auto it = v.find(key);
        if (it == v.end())
            fail(std::string("missing required field '") + key + "'");
        return {*it, path + "/" + escape_pointer(key)};
    }

    std::optional<At> opt(const char* key) const
    {
        if (!v.is_object())
            fail("expected an object");
        auto it = v.find(key);
        if (it == v.end())
            return std::nullopt;
        return At{*it, path + "/" + escape_pointer(key)};
    }

    At item(std::size_t i) const { return {v.at(i), path + "/" + std::to_string(i)}; }

    std::vector<At> items() const
    {
        if (!v.is_array())
            fail("expected an array");
        std::vector<At> out;
        for (std::size_t i = 0; i < v.size(); ++i)
            out.push_back(item(i));
        return out;
    }

    std::vector<std::pair<std::string, At>> fields() const
    {
        if (!v.is_object())
            fail("expected an object");
        std::vector<std::pair<std::string, At>> out;
        for (auto it = v.begin(); it != v.end(); ++it)
            out.emplace_back(it.key(), At{it.value(), path + "/" + escape_pointer(it.key())});
        return out;
    }

    std::string str() const
    {
        if (!v.is_string())
            fail("expected a string");
        return v.get<std::string>();
    }

    long integer(long lo, long hi) const
    {
        if (!v.is_number_integer())
            fail("expected an integer");
        const long x = v.get<long>();
        if (x < lo || x > hi)
            fail("value " + std::to_string(x) + " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
        return x;
    }

    bool boolean() const
    {
        if (!v.is_boolean())
            fail("expected a boolean");
        return v.get<bool>();
    }

    std::vector<std::string> strings() const
    {
        std::vector<std::string> out;
        for (const auto& x : items())
            out.push_back(x.str());
        return out;
    }

    Scalar scalar() const
    {
        if (v.is_number_integer())
            return Scalar(v.get<long>());
        return guard([&] { return parse_scalar(str()); });
    }

    // library errors raised while building inputs point at this value
    template <class F>
    auto guard(F&& f) const -> decltype(f())
    {
        try {
            return f();
        } catch (const JobError&) {
            throw;
        } catch (const Error& e) {
            fail(e.what());
        }
    }
};

bool get_bool(const At& at, const char* key, bool fallback)
{
    auto v = at.opt(key);
    return v ? v->boolean() : fallback;
}

struct Context {
    Parameters params;
    std::map<std::string, BialgebraPtr> bialgebras;
    std::map<std::string, AlgebraPtr> algebras;
};

// ---- input blocks -------------------------------------------------------

BialgebraPtr bialgebra(Context& ctx, const At& at)
{
    const std::string memo = at.v.dump();
    if (auto it = ctx.bialgebras.find(memo); it != ctx.bialgebras.end())
        return it->second;

    BialgebraSpec spec;
    const At kind = at["kind"];
    spec.kind = kind.guard([&] { return parse_bialgebra_kind(kind.str()); });
    if (auto g = at.opt("generators"))
        spec.generators = g->strings();
    if (auto flags = at.opt("flags"))
        spec.counital = get_bool(*flags, "counital", true);
    if (auto t = at.opt("monoid_table")) {
        MonoidTable table;
        table.elements = (*t)["elements"].strings();
        table.unit = (*t)["unit"].str();
        for (const auto& row : (*t)["product"].items())
            table.product.push_back(row.strings());
        spec.monoid_table = std::move(table);
    }
    if (auto o = at.opt("coproduct_overrides"))
        for (const auto& [gen, terms] : o->fields())
            for (const auto& term : terms.items())
                spec.coproduct_overrides[gen].push_back(
                    {term["coeff"].scalar(), term["left"].str(), term["right"].str()});
    if (auto o = at.opt("counit_overrides"))
        for (const auto& [gen, value] : o->fields())
            spec.counit_overrides[gen] = value.scalar();

    const auto& p = ctx.params;
    int cutoff = std::max({static_cast<int>(p.order), p.degree, p.cobar_cutoff}) + 2;
    if (auto c = at.opt("degree_cutoff"))
        cutoff = static_cast<int>(c->integer(1, 64));
    auto b = at.guard([&] { return construct_bialgebra(spec, cutoff); });
    ctx.bialgebras.emplace(memo, b);
    return b;
}

AlgElement table_entry(const At& at, const std::vector<std::string>& names, int unit)
{
    return at.guard([&] {
        AlgElement out;
        for (const auto& term : split_sum(at.str())) {
            const Polynomial t = parse_monomial_term(term, names);
            for (const auto& [m, c] : t.terms()) {
                if (m.degree() > 1)
                    throw DomainError("table entries are linear combinations of basis names");
                out.add_term(m == Monomial::variable(unit) ? Monomial() : m, c);
            }
        }
        return out;
    });
}

AlgebraPtr algebra(Context& ctx, const At& at)
{
    const std::string memo = at.v.dump();
    if (auto it = ctx.algebras.find(memo); it != ctx.algebras.end())
        return it->second;
    const std::string kind = at["kind"].str();
    AlgebraPtr a;
    if (kind == "polynomial") {
        int cutoff = ctx.params.degree;
        if (auto c = at.opt("cutoff"))
            cutoff = static_cast<int>(c->integer(0, 64));
        auto vars = at["variables"].strings();
        a = at.guard([&] { return Algebra::polynomial(vars, cutoff); });
    } else if (kind == "quotient") {
        auto vars = at["variables"].strings();
        auto ideal = at["ideal"].strings();
        a = at.guard([&] { return Algebra::monomial_quotient(vars, ideal); });
    } else if (kind == "finite") {
        auto names = at["basis"].strings();
        const std::string unit = at["unit"].str();
        const int u = static_cast<int>(std::find(names.begin(), names.end(), unit) - names.begin());
        std::vector<std::vector<AlgElement>> table;
        for (const auto& row : at["table"].items()) {
            table.emplace_back();
            for (const auto& e : row.items())
                table.back().push_back(table_entry(e, names, u));
        }
        a = at.guard([&] { return Algebra::finite(names, unit, table); });
    } else {
        at["kind"].fail("unknown algebra kind '" + kind + "' (polynomial, quotient, finite)");
    }
    ctx.algebras.emplace(memo, a);
    return a;
}

LinearOperator linear_operator(const AlgebraPtr& a, const At& at)
{
    if (at.v.is_string())
        return at.guard([&] { return LinearOperator::parse(a, at.str()); });
    std::map<Monomial, AlgElement> images;
    for (const auto& [name, value] : at["matrix"].fields()) {
        const AlgElement x = value.guard([&] { return a->parse(name); });
        if (x.terms().size() != 1 || x.terms().begin()->second != 1)
            value.fail("'" + name + "' is not a basis element");
        images[x.terms().begin()->first] = value.guard([&] { return a->parse(value.str()); });
    }
    return at.guard([&] { return LinearOperator::matrix(a, images); });
}

std::shared_ptr<const ModuleAction> action(const BialgebraPtr& b, const AlgebraPtr& a, const At& at)
{
    std::map<std::string, LinearOperator> images;
    for (const auto& [name, op] : at.fields())
        images.emplace(name, linear_operator(a, op));
    return at.guard([&] { return std::make_shared<const ModuleAction>(b, a, images); });
}

TensorSeries series(const BialgebraPtr& b, std::size_t arity, unsigned order, const At& at)
{
    if (auto e = at.opt("exp_of")) {
        if (arity != 2)
            at.fail("exp_of is only defined for elements of B⊗B");
        return e->guard([&] { return make_exp_udf(parse_tensor(b, 2, e->str()), order); });
    }
    const At coeffs = at["coefficients"];
    TensorSeries out(order, b->zero(arity));
    const auto items = coeffs.items();
    if (items.empty())
        coeffs.fail("at least the t^0 coefficient is required");
    for (std::size_t k = 0; k < items.size() && k <= order; ++k)
        out[static_cast<unsigned>(k)] = items[k].guard([&] { return parse_tensor(b, arity, items[k].str()); });
    return out;
}

TensorSeries udf_series(const BialgebraPtr& b, unsigned order, const At& at)
{
    TensorSeries F = series(b, 2, order, at);
    at.guard([&] {
        require_udf(F);
        return 0;
    });
    return F;
}

// ---- reports ------------------------------------------------------------

json checks_json(const Report& r)
{
    json out = json::array();
    for (const auto& e : r.entries) {
        json c;
        c["name"] = e.name;
        c["status"] = e.passed ? "pass" : "fail";
        if (!e.detail.empty())
            c["detail"] = e.detail;
        if (!e.witness.empty())
            c["witness"] = e.witness;
        out.push_back(std::move(c));
    }
    return out;
}

json header(const std::string& command)
{
    json r;
    r["schema"] = report_schema;
    r["tool"] = "udfkit";
    r["version"] = tool_version;
    r["command"] = command;
    return r;
}

json parameters_json(const Parameters& p)
{
    json j;
    j["order"] = p.order;
    j["degree"] = p.degree;
    j["cobar_cutoff"] = p.cobar_cutoff;
    j["seed"] = p.seed;
    j["search_bound"] = p.search_bound;
    return j;
}

struct Outcome {
    Report report;
    json data = json::object();
};

// ---- commands -----------------------------------------------------------

Outcome verify_twist(Context& ctx, const At& job)
{
    auto b = bialgebra(ctx, job["bialgebra"]);
    auto F = series(b, 2, ctx.params.order, job["udf"]);
    TwistOptions opt;
    opt.counital = b->counital();
    opt.symmetric = get_bool(job, "symmetric", false);
    Outcome o;
    o.report = check_twisting(F, opt);
    o.data["udf"] = to_string(F);
    return o;
}

Outcome operad_axioms(Context& ctx, const At& job)
{
    auto b = bialgebra(ctx, job["bialgebra"]);
    SweepOptions opt;
    opt.seed = ctx.params.seed;
    opt.cutoff = std::min(3, b->degree_cutoff());
    if (auto s = job.opt("samples"))
        opt.samples = static_cast<int>(s->integer(0, 100000));
    std::vector<std::string> flavors{"multiplicative", "additive"};
    if (auto f = job.opt("flavors"))
        flavors = f->strings();
    Outcome o;
    for (const auto& name : flavors) {
        OperadFlavor flavor;
        if (name == "multiplicative")
            flavor = OperadFlavor::Multiplicative;
        else if (name == "additive")
            flavor = OperadFlavor::Additive;
        else
            job["flavors"].fail("unknown flavor '" + name + "'");
        const std::string tag = flavor == OperadFlavor::Multiplicative ? "𝔹: " : "𝕓: ";
        o.report.merge(check_assoc_cases(flavor, *b, opt), tag);
        o.report.merge(check_unit(flavor, *b, opt), tag);
    }
    if (b->counital())
        o.report.merge(check_reconstruction(*b, opt.cutoff), "𝔹: ");
    if (get_bool(job, "equivariance", false))
        o.report.merge(check_equivariance(*b, opt));
    o.data["cocommutative"] = check_cocommutative(*b, opt.cutoff).cocommutative;
    return o;
}

struct DeformInputs {
    BialgebraPtr b;
    std::shared_ptr<const ModuleAction> act;
    TensorSeries F;
};

DeformInputs deform_inputs(Context& ctx, const At& job)
{
    auto b = bialgebra(ctx, job["bialgebra"]);
    auto a = algebra(ctx, job["algebra"]);
    auto act = action(b, a, job["action"]);
    auto F = udf_series(b, ctx.params.order, job["udf"]);
    return {b, act, F};
}

Outcome deform(Context& ctx, const At& job)
{
    auto in = deform_inputs(ctx, job);
    const Algebra& A = in.act->algebra();
    Outcome o;
    o.report.merge(check_module_algebra(*in.act, ctx.params.degree));
    o.report.merge(check_associativity(in.F, *in.act, ctx.params.degree));
    if (auto pairs = job.opt("products")) {
        json table = json::array();
        for (const auto& pair : pairs->items()) {
            const At x = pair.item(0), y = pair.item(1);
            const AlgElement ex = x.guard([&] { return A.parse(x.str()); });
            const AlgElement ey = y.guard([&] { return A.parse(y.str()); });
            const auto s = pair.guard([&] { return twisted_product(in.F, *in.act, ex, ey); });
            table.push_back({{"x", x.str()}, {"y", y.str()}, {"product", render(A, s)}});
        }
        o.data["products"] = std::move(table);
    }
    return o;
}

Outcome cobar_h2(Context& ctx, const At& job)
{
    auto b = bialgebra(ctx, job["bialgebra"]);
    const int D = ctx.params.cobar_cutoff;
    Outcome o;
    o.report = check_twi_reduction(b, D);
    const auto h = h2(b, D);
    json blocks = json::array();
    for (const auto& blk : h.blocks) {
        json reps = json::array();
        for (const auto& r : blk.representatives)
            reps.push_back(r.to_string());
        blocks.push_back({{"degree", blk.degree}, {"filtered", blk.filtered}, {"dim", blk.dim}, {"representatives", reps}});
    }
    o.data["h2"] = std::move(blocks);
    o.data["total"] = h.total();
    if (auto e = job.opt("expected_total")) {
        const long want = e->integer(0, 1L << 30);
        o.report.add("total dimension " + std::to_string(want), static_cast<long>(h.total()) == want,
                     "cutoff " + std::to_string(D), static_cast<long>(h.total()) == want ? "" : std::to_string(h.total()));
    }
    return o;
}

Outcome hochschild(Context& ctx, const At& job)
{
    auto in = deform_inputs(ctx, job);
    const auto& p = ctx.params;
    Outcome o;
    const auto mu = infinitesimal_cocycle(in.F, *in.act, p.degree);
    o.report.merge(check_hochschild_cocycle(mu));
    std::string verdict;
    if (mu.is_zero()) {
        verdict = "zero";
    } else {
        auto v = is_hochschild_coboundary(mu, p.search_bound);
        o.data["search_space"] = v.search_space;
        if (v.found) {
            verdict = "coboundary";
            o.data["primitive"] = v.witness->to_string();
        } else {
            verdict = "not a coboundary in the search space";
        }
    }
    o.data["verdict"] = verdict;
    if (auto w = job.opt("wedge")) {
        const auto ops = w->items();
        if (ops.size() != 2)
            w->fail("expected two operators");
        const auto& a = in.act->algebra_ptr();
        const auto t1 = linear_operator(a, ops[0]), t2 = linear_operator(a, ops[1]);
        const auto wedge = w->guard([&] { return wedge_over_A(t1, t2); });
        o.data["wedge"] = wedge.to_string(*a);
        o.data["wedge_nonzero"] = wedge.nonzero();
    }
    if (auto e = job.opt("expect")) {
        const std::string want = e->str();
        if (want != "zero" && want != "coboundary" && want != "nontrivial")
            e->fail("expected one of zero, coboundary, nontrivial");
        bool ok = want == "nontrivial" ? verdict != "zero" && verdict != "coboundary" : verdict == want;
        o.report.add("verdict is " + want, ok, "", ok ? "" : verdict);
    }
    if (auto e = job.opt("expect_wedge_nonzero")) {
        const bool want = e->boolean();
        const bool got = o.data.contains("wedge_nonzero") && o.data["wedge_nonzero"].get<bool>();
        o.report.add(std::string("wedge ") + (want ? "nonzero" : "zero"), want == got, "",
                     want == got ? "" : o.data.value("wedge", std::string("no wedge requested")));
    }
    return o;
}

Outcome ternary(Context& ctx, const At& job)
{
    auto b = bialgebra(ctx, job["bialgebra"]);
    auto F = udf_series(b, ctx.params.order, job["udf"]);
    const At t = job["ternary"];
    int L = 7;
    if (auto l = t.opt("leaf_cutoff"))
        L = static_cast<int>(l->integer(1, 63));
    const bool symmetric = get_bool(t, "symmetric", false);
    auto gens = t["generators"].strings();
    auto a = t.guard([&] { return TernaryAlgebra::free_pass(gens, L, symmetric); });
    std::map<std::string, TernaryDerivation> ders;
    for (const auto& [name, images] : t["derivations"].fields()) {
        std::map<std::string, std::string> im;
        for (const auto& [g, v] : images.fields())
            im[g] = v.str();
        ders.emplace(name, images.guard([&] { return TernaryDerivation::parse(a, im); }));
    }
    auto act = t.guard([&] { return std::make_shared<const TernaryAction>(b, a, ders); });

    Outcome o;
    TensorSeries H = F;
    try {
        H = pass_udf(F);
        o.report.add("F ∘₁ F = F ∘₂ F", true);
    } catch (const DomainError& e) {
        o.report.add("F ∘₁ F = F ∘₂ F", false, e.what());
        return o;
    }
    o.report.merge(check_partial_assoc(*a, twisted_structure(H, act), ctx.params.order, L));
    if (H.order() >= 1)
        o.data["H1"] = H[1].to_string();
    json dims = json::array();
    for (int l = 1; l <= L; l += 2)
        dims.push_back(a->dimension(l));
    o.data["dimensions"] = std::move(dims);
    return o;
}

Outcome interchange(Context& ctx, const At& job)
{
    auto b = bialgebra(ctx, job["bialgebra"]);
    auto F1 = series(b, 2, ctx.params.order, job["F1"]);
    auto F2 = series(b, 2, ctx.params.order, job["F2"]);
    Outcome o;
    o.report = job.guard([&] { return interchange_check(F1, F2); });
    return o;
}

Outcome diagram(Context& ctx, const At& job)
{
    const At d = job["diagram"];
    Diagram D;
    for (const auto& node : d["nodes"].items()) {
        auto b = bialgebra(ctx, node["bialgebra"]);
        auto a = algebra(ctx, node["algebra"]);
        std::string name = "A" + std::to_string(D.nodes.size() + 1);
        if (auto n = node.opt("name"))
            name = n->str();
        D.nodes.push_back({name, action(b, a, node["action"])});
    }
    for (const auto& arrow : d["arrows"].items()) {
        const auto n = static_cast<long>(D.nodes.size()) - 1;
        const auto from = static_cast<std::size_t>(arrow["from"].integer(0, n));
        const auto to = static_cast<std::size_t>(arrow["to"].integer(0, n));
        const auto& src = *D.nodes[from].action;
        const auto& dst = *D.nodes[to].action;
        std::map<std::string, std::string> himg;
        for (const auto& [g, v] : arrow["h"].fields())
            himg[g] = v.str();
        auto h = arrow.guard([&] { return AlgebraMorphism::parse(src.algebra_ptr(), dst.algebra_ptr(), himg); });
        const At phi = arrow["phi"];
        std::optional<BialgebraMorphism> ph;
        if (phi.v.is_string()) {
            if (phi.str() != "identity")
                phi.fail("expected \"identity\" or generator images");
            if (src.bialgebra_ptr() != dst.bialgebra_ptr())
                phi.fail("identity needs the same bialgebra at both ends");
            ph = BialgebraMorphism::identity(src.bialgebra_ptr());
        } else {
            std::map<std::string, std::string> img;
            for (const auto& [g, v] : phi.fields())
                img[g] = v.str();
            ph = phi.guard([&] { return BialgebraMorphism::parse(dst.bialgebra_ptr(), src.bialgebra_ptr(), img); });
        }
        D.arrows.push_back({from, to, std::move(h), std::move(*ph)});
    }

    Outcome o;
    const auto& p = ctx.params;
    o.report.merge(diagram_compat_check(D, p.degree));
    if (auto tr = d.opt("triple")) {
        std::size_t k = 0;
        if (auto a = tr->opt("arrow"))
            k = static_cast<std::size_t>(a->integer(0, static_cast<long>(D.arrows.size()) - 1));
        if (D.arrows.empty())
            tr->fail("a triple needs an arrow");
        const auto& arrow = D.arrows[k];
        const auto& b1 = D.nodes[arrow.from].action->bialgebra_ptr();
        const auto& b2 = D.nodes[arrow.to].action->bialgebra_ptr();
        TwistTriple T{udf_series(b1, p.order, (*tr)["F1"]), series(b1, 1, p.order, (*tr)["G"]),
                      udf_series(b2, p.order, (*tr)["F2"])};
        o.report.merge(tr->guard([&] { return diagram_twist_check(D, k, T, p.degree); }));
        const auto img = tr->guard([&] { return morphism_image(D, k, T, p.degree); });
        o.data["image"] = {{"injective", img.injective},
                           {"surjective", img.surjective},
                           {"rank", img.rank},
                           {"source_dim", img.source_dim},
                           {"target_dim", img.target_dim}};
        if (auto e = tr->opt("expect_surjective")) {
            const bool want = e->boolean();
            o.report.add(std::string("h̃ ") + (want ? "surjective" : "not surjective") + " onto the truncation",
                         img.surjective == want, "degree <= " + std::to_string(p.degree));
        }
    }
    return o;
}

using Handler = std::function<Outcome(Context&, const At&)>;

const std::map<std::string, Handler>& handlers()
{
    static const std::map<std::string, Handler> h{
        {"verify-twist", verify_twist}, {"operad-axioms", operad_axioms}, {"deform", deform},
        {"cobar-h2", cobar_h2},         {"hochschild", hochschild},       {"ternary", ternary},
        {"interchange", interchange},   {"diagram", diagram},
    };
    return h;
}

Parameters parameters(const At& job, const Overrides& ov)
{
    Parameters p;
    if (auto ps = job.opt("parameters")) {
        if (auto v = ps->opt("order"))
            p.order = static_cast<unsigned>(v->integer(0, 64));
        if (auto v = ps->opt("degree"))
            p.degree = static_cast<int>(v->integer(0, 64));
        if (auto v = ps->opt("cobar_cutoff"))
            p.cobar_cutoff = static_cast<int>(v->integer(1, 64));
        if (auto v = ps->opt("seed"))
            p.seed = static_cast<std::uint64_t>(v->integer(0, std::numeric_limits<long>::max()));
        if (auto v = ps->opt("search_bound"))
            p.search_bound = static_cast<int>(v->integer(0, 16));
    }
    if (ov.order)
        p.order = *ov.order;
    if (ov.degree)
        p.degree = *ov.degree;
    if (ov.cobar_cutoff)
        p.cobar_cutoff = *ov.cobar_cutoff;
    if (ov.seed)
        p.seed = *ov.seed;
    return p;
}

json error_report(const std::string& command, const std::string& location, const std::string& message)
{
    json r = header(command);
    r["status"] = "error";
    json e;
    if (!location.empty())
        e["location"] = location;
    e["message"] = message;
    r["error"] = std::move(e);
    return r;
}

json run_one(const At& job, const Overrides& ov)
{
    std::string command = ov.command.value_or("");
    try {
        if (!job.v.is_object())
            job.fail("a job must be a JSON object");
        if (auto s = job.opt("schema"); s && s->str() != job_schema)
            s->fail("unsupported job schema '" + s->str() + "' (expected " + job_schema + ")");
        if (command.empty())
            command = job["command"].str();
        auto h = handlers().find(command);
        if (h == handlers().end()) {
            if (ov.command)
                throw JobError("", "unknown command '" + command + "'");
            job["command"].fail("unknown command '" + command + "'");
        }
        Context ctx;
        ctx.params = parameters(job, ov);
        Outcome o = h->second(ctx, job);
        json r = header(command);
        if (auto d = job.opt("description"))
            r["description"] = d->str();
        r["parameters"] = parameters_json(ctx.params);
        r["status"] = o.report.passed() ? "pass" : "fail";
        r["checks"] = checks_json(o.report);
        r["data"] = std::move(o.data);
        return r;
    } catch (const JobError& e) {
        return error_report(command, e.location(), e.what());
    } catch (const std::exception& e) {
        return error_report(command, "", e.what());
    }
}

} // namespace

const std::vector<std::string>& commands()
{
    static const std::vector<std::string> c = [] {
        std::vector<std::string> out;
        for (const auto& [name, h] : handlers())
            out.push_back(name);
        return out;
    }();
    return c;
}

json run(const json& job, const Overrides& overrides)
{
    const At root{job, ""};
    if (!job.is_object() || !job.contains("jobs"))
        return run_one(root, overrides);
    try {
        if (auto s = root.opt("schema"); s && s->str() != job_schema)
            s->fail("unsupported job schema '" + s->str() + "' (expected " + job_schema + ")");
        json r = header(overrides.command.value_or("batch"));
        if (auto d = root.opt("description"))
            r["description"] = d->str();
        json reports = json::array();
        int worst = 0;
        for (const auto& sub : root["jobs"].items()) {
            reports.push_back(run_one(sub, overrides));
            worst = std::max(worst, exit_code(reports.back()));
        }
        r["status"] = worst == 0 ? "pass" : worst == 1 ? "fail" : "error";
        r["jobs"] = std::move(reports);
        return r;
    } catch (const JobError& e) {
        return error_report("batch", e.location(), e.what());
    }
}

int exit_code(const json& report)
{
    const auto s = report.value("status", std::string("error"));
    return s == "pass" ? 0 : s == "fail" ? 1 : 2;
}

std::string render_json(const json& report) { return report.dump(2) + "\n"; }

namespace {

void render_value(std::ostringstream& out, const std::string& indent, const std::string& key, const json& v)
{
    if (v.is_object()) {
        out << indent << key << ":\n";
        for (auto it = v.begin(); it != v.end(); ++it)
            render_value(out, indent + "  ", it.key(), it.value());
    } else if (v.is_array() && !v.empty()) {
        out << indent << key << ":\n";
        for (std::size_t i = 0; i < v.size(); ++i)
            render_value(out, indent + "  ", "[" + std::to_string(i) + "]", v[i]);
    } else {
        out << indent << key << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
}

void render_one(std::ostringstream& out, const json& r)
{
    out << "udfkit " << r.value("version", "") << "  " << r.value("command", "") << "\n";
    if (r.contains("description"))
        out << "  " << r["description"].get<std::string>() << "\n";
    if (r.contains("error")) {
        const auto& e = r["error"];
        out << "  error";
        if (e.contains("location"))
            out << " at " << e["location"].get<std::string>();
        out << ": " << e["message"].get<std::string>() << "\n";
    }
    if (r.contains("parameters")) {
        const auto& p = r["parameters"];
        out << "  N=" << p["order"] << " d=" << p["degree"] << " D=" << p["cobar_cutoff"] << " seed=" << p["seed"]
            << " search_bound=" << p["search_bound"] << "\n";
    }
    if (r.contains("checks"))
        for (const auto& c : r["checks"]) {
            const bool ok = c["status"] == "pass";
            out << "  " << (ok ? "✓ " : "✗ ") << c["name"].get<std::string>();
            if (c.contains("detail"))
                out << "  [" << c["detail"].get<std::string>() << "]";
            out << "\n";
            if (c.contains("witness"))
                out << "      witness: " << c["witness"].get<std::string>() << "\n";
        }
    if (r.contains("data") && !r["data"].empty())
        render_value(out, "  ", "data", r["data"]);
    if (r.contains("jobs"))
        for (const auto& sub : r["jobs"]) {
            out << "\n";
            render_one(out, sub);
        }
    out << "status: " << r.value("status", "error") << "\n";
}

} // namespace

std::string render_text(const json& report)
{
    std::ostringstream out;
    render_one(out, report);
    return out.str();
}

} // namespace udfkit
