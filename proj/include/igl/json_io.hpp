#pragma once

#include "igl/calculus.hpp"
#include "igl/semantics.hpp"
#include "json.hpp"

namespace igl {

nlohmann::json axioms_to_json(const AxiomSet& a);
// {"alphabet":["a","b"],"serial":["a"],"paths":[{"lhs":"z","rhs":["y","x^"]}]}
AxiomSet axioms_from_json(const nlohmann::json& j);
AxiomSet load_axioms(const std::string& path);

// {"rule":"impR","at":"w0","principal":{"side":"out","index":0},"character":null,
//  "target":null,"conclusion":"<sequent text>","premises":[...]}
// Component names are canonicalized per node (pre-order w0, w1, ...). In
// compact mode only the root conclusion is stored; premises are reconstructed
// by rule application on load.
nlohmann::json proof_to_json(const Proof& p, bool compact = false);
Proof proof_from_json(const nlohmann::json& j, const AxiomSet& axioms);

nlohmann::json model_to_json(const Model& m);
Model model_from_json(const nlohmann::json& j);

std::string pretty_proof(const Proof& p);

}  // namespace igl
