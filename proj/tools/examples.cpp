#include "job.hpp"

#include <map>

namespace udfkit {

namespace {

const std::map<std::string, const char*>& sources()
{
    static const std::map<std::string, const char*> s{
        {"moyal", R"json({
  "schema": "udfkit.job/1",
  "command": "deform",
  "description": "Moyal product on k[p,q]: F = exp(t/2 (p1⊗p2 - p2⊗p1)), p1 and p2 acting by d_p and d_q",
  "bialgebra": {"kind": "polynomial-primitive", "generators": ["p1", "p2"]},
  "algebra": {"kind": "polynomial", "variables": ["p", "q"], "cutoff": 4},
  "action": {"p1": "d_p", "p2": "d_q"},
  "udf": {"exp_of": "1/2 p1⊗p2 - 1/2 p2⊗p1"},
  "products": [["p", "q"], ["q", "p"]]
})json"},
        {"quantum-plane", R"json({
  "schema": "udfkit.job/1",
  "command": "deform",
  "description": "quantum plane: F = exp(t (p1⊗p2 - p2⊗p1)) with Euler derivations, p*q = e^{2t} q*p",
  "bialgebra": {"kind": "polynomial-primitive", "generators": ["p1", "p2"]},
  "algebra": {"kind": "polynomial", "variables": ["p", "q"], "cutoff": 4},
  "action": {"p1": "p*d_p", "p2": "q*d_q"},
  "udf": {"exp_of": "p1⊗p2 - p2⊗p1"},
  "products": [["p", "q"], ["q", "p"]]
})json"},
        {"exp-pp", R"json({
  "schema": "udfkit.job/1",
  "command": "verify-twist",
  "description": "symmetric twist exp(t p⊗p) over k[p]",
  "bialgebra": {"kind": "polynomial-primitive", "generators": ["p"]},
  "udf": {"exp_of": "p⊗p"},
  "symmetric": true
})json"},
        {"ternary-quantum-plane", R"json({
  "schema": "udfkit.job/1",
  "command": "ternary",
  "description": "twist F∘₁F of the ternary product on the free partially associative algebra on p, q (leaf cutoff 7)",
  "parameters": {"order": 1},
  "bialgebra": {"kind": "polynomial-primitive", "generators": ["p1", "p2"]},
  "udf": {"exp_of": "p1⊗p2 - p2⊗p1"},
  "ternary": {
    "generators": ["p", "q"],
    "leaf_cutoff": 7,
    "symmetric": false,
    "derivations": {"p1": {"p": "(p,p,p)"}, "p2": {"q": "(q,q,q)"}}
  }
})json"},
        {"interchange-grouplike", R"json({
  "schema": "udfkit.job/1",
  "command": "interchange",
  "description": "grouplike pair a⊗b, c⊗d in the free commutative monoid bialgebra on a, b, c, d",
  "bialgebra": {"kind": "monoid", "generators": ["a", "b", "c", "d"]},
  "F1": {"coefficients": ["a⊗b"]},
  "F2": {"coefficients": ["c⊗d"]}
})json"},
        {"interchange-perturbed", R"json({
  "schema": "udfkit.job/1",
  "command": "interchange",
  "description": "pair 1⊗1 + t p1⊗p2 and 1⊗1 over k[p1,p2]; the interchange law fails at order t",
  "bialgebra": {"kind": "polynomial-primitive", "generators": ["p1", "p2"]},
  "F1": {"coefficients": ["1⊗1", "p1⊗p2"]},
  "F2": {"coefficients": ["1⊗1"]}
})json"},
        {"diagram-power-map", R"json({
  "schema": "udfkit.job/1",
  "description": "h(p) = p^2, h(q) = q^3 from k[p,q] to k[p,q]; the first job uses the action p1 -> 1/2 p d_p, p2 -> 1/3 q d_q on the target, the second the action 1/2 p^2 d_p, 1/3 q^3 d_q, which breaks b·h(a) = h(b·a)",
  "jobs": [
    {
      "command": "diagram",
      "description": "power map, corrected target action",
      "parameters": {"order": 4, "degree": 3},
      "diagram": {
        "nodes": [
          {"name": "A1", "bialgebra": {"kind": "polynomial-primitive", "generators": ["p1", "p2"]},
           "algebra": {"kind": "polynomial", "variables": ["p", "q"], "cutoff": 3},
           "action": {"p1": "p*d_p", "p2": "q*d_q"}},
          {"name": "A2", "bialgebra": {"kind": "polynomial-primitive", "generators": ["p1", "p2"]},
           "algebra": {"kind": "polynomial", "variables": ["p", "q"], "cutoff": 9},
           "action": {"p1": "1/2*p*d_p", "p2": "1/3*q*d_q"}}
        ],
        "arrows": [{"from": 0, "to": 1, "h": {"p": "p^2", "q": "q^3"}, "phi": "identity"}],
        "triple": {
          "arrow": 0,
          "F1": {"exp_of": "p1⊗p2 - p2⊗p1"},
          "G": {"coefficients": ["1"]},
          "F2": {"exp_of": "p1⊗p2 - p2⊗p1"},
          "expect_surjective": false
        }
      }
    },
    {
      "command": "diagram",
      "description": "power map, literal target action",
      "parameters": {"order": 4, "degree": 3},
      "diagram": {
        "nodes": [
          {"name": "A1", "bialgebra": {"kind": "polynomial-primitive", "generators": ["p1", "p2"]},
           "algebra": {"kind": "polynomial", "variables": ["p", "q"], "cutoff": 3},
           "action": {"p1": "p*d_p", "p2": "q*d_q"}},
          {"name": "A2", "bialgebra": {"kind": "polynomial-primitive", "generators": ["p1", "p2"]},
           "algebra": {"kind": "polynomial", "variables": ["p", "q"], "cutoff": 18},
           "action": {"p1": "1/2*p^2*d_p", "p2": "1/3*q^3*d_q"}}
        ],
        "arrows": [{"from": 0, "to": 1, "h": {"p": "p^2", "q": "q^3"}, "phi": "identity"}]
      }
    }
  ]
})json"},
        {"nonsmooth-counterexample", R"json({
  "schema": "udfkit.job/1",
  "description": "p d_p and q d_q: zero infinitesimal deformation on k[p,q]/(p^2,q^2,pq) although their wedge over k[p,q] is p*q",
  "jobs": [
    {
      "command": "hochschild",
      "description": "A = k[p,q]/(p^2,q^2,pq)",
      "parameters": {"degree": 2},
      "bialgebra": {"kind": "polynomial-primitive", "generators": ["p1", "p2"]},
      "algebra": {"kind": "quotient", "variables": ["p", "q"], "ideal": ["p^2", "q^2", "p*q"]},
      "action": {"p1": "p*d_p", "p2": "q*d_q"},
      "udf": {"exp_of": "1/2 p1⊗p2 - 1/2 p2⊗p1"},
      "expect": "zero"
    },
    {
      "command": "hochschild",
      "description": "A = k[p,q]",
      "bialgebra": {"kind": "polynomial-primitive", "generators": ["p1", "p2"]},
      "algebra": {"kind": "polynomial", "variables": ["p", "q"], "cutoff": 4},
      "action": {"p1": "p*d_p", "p2": "q*d_q"},
      "udf": {"exp_of": "1/2 p1⊗p2 - 1/2 p2⊗p1"},
      "wedge": ["p*d_p", "q*d_q"],
      "expect": "nontrivial",
      "expect_wedge_nonzero": true
    }
  ]
})json"},
        {"trivial-pair", R"json({
  "schema": "udfkit.job/1",
  "command": "hochschild",
  "description": "d_p and q d_p on k[p,q]: their wedge vanishes and so does the infinitesimal deformation",
  "bialgebra": {"kind": "polynomial-primitive", "generators": ["p1", "p2"]},
  "algebra": {"kind": "polynomial", "variables": ["p", "q"], "cutoff": 4},
  "action": {"p1": "d_p", "p2": "q*d_p"},
  "udf": {"exp_of": "p1⊗p2 - p2⊗p1"},
  "wedge": ["d_p", "q*d_p"],
  "expect": "zero",
  "expect_wedge_nonzero": false
})json"},
    };
    return s;
}

} // namespace

const std::vector<std::string>& example_names()
{
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& [name, src] : sources())
            out.push_back(name);
        return out;
    }();
    return names;
}

json example(const std::string& name)
{
    auto it = sources().find(name);
    if (it == sources().end()) {
        std::string known;
        for (const auto& n : example_names())
            known += (known.empty() ? "" : ", ") + n;
        throw JobError("", "unknown example '" + name + "' (known: " + known + ")");
    }
    return json::parse(it->second);
}

} // namespace udfkit
