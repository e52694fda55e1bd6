#pragma once

#include <json.hpp>

#include "wtree/dwtypes.hpp"

namespace wtree {

// JSON forms. Setoid: {"elements": [id...], "eq": "discrete" | "codiscrete"
// | [[id,id]...]}. Signature: {"base": setoid, "fibers": {id: setoid},
// "transports": {"a->a2": {id: id}}}; diagonal transports may be omitted.
// Tree: {"name": id, "children": [tree...]} (children optional on input).
// Algebra: {"kind": "table", "target": setoid, "map": {name: [{"args":
// [id...], "value": id}...]}} or {"kind": "builtin", "name": "int", "expr":
// {name: expr}} with expr one of {"lit": n}, {"child": i}, {"op": "+" | "*"
// | "max" | "min", "args": [expr...]}. Witness: {"index": [tree, tree],
// "name": "related", "children": [witness...]}.
//
// Parsers raise ParseError on syntax, schema, unresolved identifiers,
// oversized carriers, or tree arity mismatches; emitted values re-parse to
// equal in-memory values.

nlohmann::json setoid_to_json(const Setoid& s);
Setoid setoid_from_json(const nlohmann::json& j);

nlohmann::json family_to_json(const SetoidFamily& f);
SetoidFamily family_from_json(const nlohmann::json& j);

nlohmann::json tree_to_json(const SetoidFamily& b, const Tree& w);
Tree tree_from_json(const SetoidFamily& b, const nlohmann::json& j);

nlohmann::json algebra_to_json(const SetoidFamily& b, const Algebra& alg);
Algebra algebra_from_json(const SetoidFamily& b, const nlohmann::json& j);

nlohmann::json witness_to_json(const SetoidFamily& b, const WperWitness& t);
WperWitness witness_from_json(const SetoidFamily& b, const nlohmann::json& j);

nlohmann::json violation_to_json(const Violation& v);

}  // namespace wtree
