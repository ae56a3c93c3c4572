#include <doctest.h>

#include "job.hpp"

using namespace udfkit;

namespace {

json job(const char* text) { return json::parse(text); }

const json* check_named(const json& report, const std::string& prefix)
{
    for (const auto& c : report["checks"])
        if (c["name"].get<std::string>().rfind(prefix, 0) == 0)
            return &c;
    return nullptr;
}

} // namespace

TEST_CASE("every fixture runs with the expected status")
{
    const std::map<std::string, int> expected{
        {"diagram-power-map", 1}, {"exp-pp", 0},   {"interchange-grouplike", 0},    {"interchange-perturbed", 1},
        {"moyal", 0},             {"quantum-plane", 0}, {"nonsmooth-counterexample", 0}, {"ternary-quantum-plane", 0},
        {"trivial-pair", 0},
    };
    CHECK(example_names().size() == expected.size());
    for (const auto& name : example_names()) {
        CAPTURE(name);
        const json r = run(example(name));
        CHECK(exit_code(r) == expected.at(name));
    }
    CHECK_THROWS_AS(example("nope"), JobError);
}

TEST_CASE("reports are deterministic")
{
    for (const char* name : {"moyal", "interchange-perturbed", "ternary-quantum-plane"}) {
        CAPTURE(name);
        CHECK(render_json(run(example(name))) == render_json(run(example(name))));
    }
    auto r = run(example("moyal"));
    CHECK(r["schema"] == report_schema);
    CHECK(r["version"] == tool_version);
    CHECK_FALSE(r.contains("timing"));
}

TEST_CASE("command override reuses the job blocks")
{
    Overrides ov;
    ov.command = "verify-twist";
    auto r = run(example("moyal"), ov);
    CHECK(r["command"] == "verify-twist");
    CHECK(exit_code(r) == 0);
    CHECK(r["parameters"]["order"] == 6);

    ov.command = "hochschild";
    ov.order = 2;
    r = run(example("moyal"), ov);
    CHECK(exit_code(r) == 0);
    CHECK(r["parameters"]["order"] == 2);
    CHECK(r["data"]["verdict"] == "not a coboundary in the search space");
}

TEST_CASE("moyal products")
{
    auto r = run(example("moyal"));
    CHECK(r["data"]["products"][0]["product"] == "p*q + t*(1/2)");
    CHECK(r["data"]["products"][1]["product"] == "p*q + t*(-1/2)");
}

TEST_CASE("matrix coordinates fail equivariance with a witness")
{
    auto r = run(job(R"({"command": "operad-axioms", "bialgebra": {"kind": "matrix-coordinate", "degree_cutoff": 3},
                         "equivariance": true, "flavors": ["multiplicative"], "samples": 20})"));
    CHECK(exit_code(r) == 1);
    const json* c = check_named(r, "B: u o_i (v.tau)");
    REQUIRE(c != nullptr);
    CHECK((*c)["status"] == "fail");
    CHECK_FALSE((*c)["witness"].get<std::string>().empty());
    CHECK(r["data"]["cocommutative"] == false);
}

TEST_CASE("cobar h2 over three primitive generators")
{
    auto r = run(job(R"({"command": "cobar-h2", "parameters": {"cobar_cutoff": 4},
                         "bialgebra": {"kind": "polynomial-primitive", "generators": ["p1", "p2", "p3"]},
                         "expected_total": 3})"));
    CHECK(exit_code(r) == 0);
    CHECK(r["data"]["total"] == 3);
    CHECK(r["data"]["h2"][2]["representatives"][0] == "p1⊗p2 - p2⊗p1");
}

TEST_CASE("errors carry a location and exit 2")
{
    auto r = run(job(R"({"command": "verify-twist", "bialgebra": {"kind": "polynomial-primitive", "generators": ["p"]},
                         "udf": {"exp_of": "p⊗z"}})"));
    CHECK(exit_code(r) == 2);
    CHECK(r["error"]["location"] == "/udf/exp_of");

    r = run(job(R"({"command": "verify-twist", "bialgebra": {"kind": "lie"}})"));
    CHECK(r["error"]["location"] == "/bialgebra/kind");
    r = run(job(R"({"command": "deform", "parameters": {"order": -1}})"));
    CHECK(r["error"]["location"] == "/parameters/order");
    r = run(job(R"({"command": "transmogrify"})"));
    CHECK(r["error"]["location"] == "/command");
    r = run(job(R"({"schema": "udfkit.job/0", "command": "deform"})"));
    CHECK(r["error"]["location"] == "/schema");
    r = run(job(R"([1, 2])"));
    CHECK(exit_code(r) == 2);
    // the constant term of a UDF must be 1⊗1
    r = run(job(R"({"command": "ternary", "bialgebra": {"kind": "polynomial-primitive", "generators": ["p"]},
                    "udf": {"coefficients": ["2"]}, "ternary": {"generators": ["p"], "derivations": {}}})"));
    CHECK(r["error"]["location"] == "/udf");
}

TEST_CASE("text rendering agrees with the status")
{
    auto pass = render_text(run(example("exp-pp")));
    CHECK(pass.find("✓ (d1)") != std::string::npos);
    CHECK(pass.find("status: pass") != std::string::npos);
    auto fail = render_text(run(example("interchange-perturbed")));
    CHECK(fail.find("✗ ") != std::string::npos);
    CHECK(fail.find("order t^1") != std::string::npos);
    CHECK(fail.find("witness: 1⊗p2⊗p1⊗1 + p1⊗1⊗1⊗p2") != std::string::npos);
    CHECK(fail.find("status: fail") != std::string::npos);
}

TEST_CASE("diagram fixture flags the literal action")
{
    auto r = run(example("diagram-power-map"));
    REQUIRE(r["jobs"].size() == 2);
    CHECK(r["jobs"][0]["status"] == "pass");
    CHECK(r["jobs"][0]["data"]["image"]["surjective"] == false);
    CHECK(r["jobs"][1]["status"] == "fail");
    const json* c = check_named(r["jobs"][1], "(ii)");
    REQUIRE(c != nullptr);
    CHECK((*c)["witness"].get<std::string>().rfind("a = p, b = p1", 0) == 0);
}

TEST_CASE("finite algebras and matrix actions")
{
    // k[Z/2] with the swap s acting by the sign automorphism
    auto r = run(job(R"({"command": "deform",
        "bialgebra": {"kind": "monoid", "monoid_table": {"elements": ["u", "g"], "unit": "u", "product": [["u", "g"], ["g", "u"]]}},
        "algebra": {"kind": "finite", "basis": ["e", "s"], "unit": "e", "table": [["e", "s"], ["s", "e"]]},
        "action": {"u": {"matrix": {"e": "e", "s": "s"}}, "g": {"matrix": {"e": "e", "s": "-s"}}},
        "udf": {"coefficients": ["1⊗1"]}})"));
    CHECK(exit_code(r) == 0);
}
