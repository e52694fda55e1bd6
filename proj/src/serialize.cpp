#include "wtree/serialize.hpp"

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "util.hpp"

namespace wtree {

namespace {

using nlohmann::json;

void require(bool ok, const std::string& msg) {
  if (!ok) throw ParseError(msg);
}

const json& member(const json& j, const std::string& key,
                   const std::string& where) {
  require(j.is_object(), where + " must be an object");
  auto it = j.find(key);
  require(it != j.end(), where + " is missing '" + key + "'");
  return *it;
}

std::string as_id(const json& j, const std::string& where) {
  require(j.is_string(), where + " must be a string");
  return j.get<std::string>();
}

Val resolve(const Setoid& s, const std::string& id, const std::string& where) {
  auto v = s.find(id);
  require(v.has_value(), where + " names unknown element '" + id + "'");
  return *v;
}

json expr_to_json(const IntExpr& e) {
  switch (e.op) {
    case IntExpr::Op::kLit:
      return json{{"lit", e.lit}};
    case IntExpr::Op::kChild:
      return json{{"child", e.child}};
    default:
      break;
  }
  std::string op;
  switch (e.op) {
    case IntExpr::Op::kAdd:
      op = "+";
      break;
    case IntExpr::Op::kMul:
      op = "*";
      break;
    case IntExpr::Op::kMax:
      op = "max";
      break;
    default:
      op = "min";
      break;
  }
  json args = json::array();
  for (const auto& a : e.args) args.push_back(expr_to_json(a));
  return json{{"op", op}, {"args", args}};
}

IntExpr expr_from_json(const json& j) {
  require(j.is_object(), "expression must be an object");
  if (j.contains("lit")) {
    const json& v = j.at("lit");
    require(v.is_number_integer(), "'lit' must be an integer");
    IntExpr e;
    e.op = IntExpr::Op::kLit;
    e.lit = v.get<std::int64_t>();
    return e;
  }
  if (j.contains("child")) {
    const json& v = j.at("child");
    require(v.is_number_integer() && v.get<std::int64_t>() >= 0,
            "'child' must be a nonnegative integer");
    IntExpr e;
    e.op = IntExpr::Op::kChild;
    e.child = v.get<std::size_t>();
    return e;
  }
  std::string op = as_id(member(j, "op", "expression"), "'op'");
  IntExpr e;
  if (op == "+") {
    e.op = IntExpr::Op::kAdd;
  } else if (op == "*") {
    e.op = IntExpr::Op::kMul;
  } else if (op == "max") {
    e.op = IntExpr::Op::kMax;
  } else if (op == "min") {
    e.op = IntExpr::Op::kMin;
  } else {
    throw ParseError("unknown operator '" + op + "'");
  }
  const json& args = member(j, "args", "expression");
  require(args.is_array() && !args.empty(),
          "'args' must be a non-empty array");
  for (const auto& a : args) e.args.push_back(expr_from_json(a));
  return e;
}

void check_children(const IntExpr& e, std::size_t arity,
                    const std::string& name) {
  if (e.op == IntExpr::Op::kChild) {
    require(e.child < arity, "expression for '" + name +
                                 "' references child slot " +
                                 std::to_string(e.child) + " but the arity is " +
                                 std::to_string(arity));
  }
  for (const auto& a : e.args) check_children(a, arity, name);
}

}  // namespace

json setoid_to_json(const Setoid& s) {
  if (!s.is_table()) {
    throw SemanticError("the built-in integer setoid has no serialized form");
  }
  json elems = json::array();
  for (const auto& id : s.ids()) elems.push_back(id);
  const auto n = static_cast<Val>(s.size());
  bool discrete = true;
  bool codiscrete = true;
  for (Val i = 0; i < n; ++i) {
    for (Val j = 0; j < n; ++j) {
      if (s.eq(i, j) != (i == j)) discrete = false;
      if (!s.eq(i, j)) codiscrete = false;
    }
  }
  json eq;
  if (discrete) {
    eq = "discrete";
  } else if (codiscrete) {
    eq = "codiscrete";
  } else {
    eq = json::array();
    for (Val i = 0; i < n; ++i) {
      for (Val j = 0; j < n; ++j) {
        if (s.eq(i, j)) eq.push_back(json::array({s.id_of(i), s.id_of(j)}));
      }
    }
  }
  return json{{"elements", elems}, {"eq", eq}};
}

Setoid setoid_from_json(const json& j) {
  const json& elems = member(j, "elements", "setoid");
  require(elems.is_array(), "'elements' must be an array");
  require(elems.size() <= kMaxParsedCarrier,
          "carrier has " + std::to_string(elems.size()) +
              " elements; the parser accepts at most " +
              std::to_string(kMaxParsedCarrier));
  std::vector<std::string> ids;
  for (const auto& e : elems) ids.push_back(as_id(e, "carrier element"));
  const json& eq = member(j, "eq", "setoid");
  if (eq.is_string()) {
    std::string mode = eq.get<std::string>();
    if (mode == "discrete") return Setoid::discrete(std::move(ids));
    if (mode == "codiscrete") return Setoid::codiscrete(std::move(ids));
    throw ParseError("unknown relation '" + mode + "'");
  }
  require(eq.is_array(), "'eq' must be \"discrete\", \"codiscrete\", or an "
                         "array of pairs");
  Setoid lookup = Setoid::discrete(ids);
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& p : eq) {
    require(p.is_array() && p.size() == 2, "relation entries must be pairs");
    std::string a = as_id(p.at(0), "relation entry");
    std::string b = as_id(p.at(1), "relation entry");
    resolve(lookup, a, "relation entry");
    resolve(lookup, b, "relation entry");
    pairs.emplace_back(std::move(a), std::move(b));
  }
  return Setoid::from_pairs(std::move(ids), pairs);
}

json family_to_json(const SetoidFamily& f) {
  const Setoid& base = f.base();
  for (std::size_t i = 0; i < base.size(); ++i) {
    if (base.find(base.id_of(static_cast<Val>(i))) !=
        std::optional<Val>(static_cast<Val>(i))) {
      throw SemanticError("duplicate base identifiers cannot be serialized");
    }
  }
  json fibers = json::object();
  for (std::size_t i = 0; i < base.size(); ++i) {
    fibers[base.id_of(static_cast<Val>(i))] =
        setoid_to_json(f.fiber(static_cast<Val>(i)));
  }
  json transports = json::object();
  for (const auto& [key, table] : f.transports()) {
    const Setoid& from = f.fiber(key.first);
    const Setoid& to = f.fiber(key.second);
    for (std::size_t u = 0; u < from.size(); ++u) {
      if (from.find(from.id_of(static_cast<Val>(u))) !=
          std::optional<Val>(static_cast<Val>(u))) {
        throw SemanticError(
            "duplicate fiber identifiers cannot be serialized");
      }
    }
    json map = json::object();
    for (std::size_t u = 0; u < table.size(); ++u) {
      map[from.id_of(static_cast<Val>(u))] = to.id_of(table[u]);
    }
    transports[base.id_of(key.first) + "->" + base.id_of(key.second)] = map;
  }
  return json{{"base", setoid_to_json(base)},
              {"fibers", fibers},
              {"transports", transports}};
}

SetoidFamily family_from_json(const json& j) {
  Setoid base = setoid_from_json(member(j, "base", "signature"));
  const json& fibers = member(j, "fibers", "signature");
  require(fibers.is_object(), "'fibers' must be an object");
  std::vector<Setoid> fiber_list;
  for (std::size_t i = 0; i < base.size(); ++i) {
    std::string id = base.id_of(static_cast<Val>(i));
    auto it = fibers.find(id);
    require(it != fibers.end(), "missing fiber for base element '" + id + "'");
    fiber_list.push_back(setoid_from_json(*it));
  }
  for (auto it = fibers.begin(); it != fibers.end(); ++it) {
    require(base.find(it.key()).has_value(),
            "fiber key '" + it.key() + "' does not name a base element");
  }
  std::map<std::pair<Val, Val>, std::vector<Val>> transports;
  if (j.contains("transports")) {
    const json& ts = j.at("transports");
    require(ts.is_object(), "'transports' must be an object");
    for (auto it = ts.begin(); it != ts.end(); ++it) {
      const std::string& key = it.key();
      std::optional<std::pair<Val, Val>> split;
      bool ambiguous = false;
      for (std::size_t pos = key.find("->"); pos != std::string::npos;
           pos = key.find("->", pos + 1)) {
        auto a = base.find(key.substr(0, pos));
        auto a2 = base.find(key.substr(pos + 2));
        if (a && a2) {
          if (split) ambiguous = true;
          split = std::pair<Val, Val>(*a, *a2);
        }
      }
      require(split.has_value(),
              "transport key '" + key + "' does not name a pair of base "
                                        "elements");
      require(!ambiguous, "transport key '" + key + "' is ambiguous");
      const Setoid& dom = fiber_list[static_cast<std::size_t>(split->first)];
      const Setoid& cod = fiber_list[static_cast<std::size_t>(split->second)];
      require(it->is_object(), "transport '" + key + "' must be an object");
      std::vector<Val> table(dom.size(), -1);
      for (auto e = it->begin(); e != it->end(); ++e) {
        Val u = resolve(dom, e.key(), "transport '" + key + "'");
        table[static_cast<std::size_t>(u)] =
            resolve(cod, as_id(*e, "transport '" + key + "' image"),
                    "transport '" + key + "'");
      }
      for (std::size_t u = 0; u < table.size(); ++u) {
        require(table[u] >= 0, "transport '" + key + "' is missing '" +
                                   dom.id_of(static_cast<Val>(u)) + "'");
      }
      transports[*split] = std::move(table);
    }
  }
  return SetoidFamily(std::move(base), std::move(fiber_list),
                      std::move(transports));
}

json tree_to_json(const SetoidFamily& b, const Tree& w) {
  json children = json::array();
  for (const auto& c : w.children) children.push_back(tree_to_json(b, c));
  return json{{"name", b.base().id_of(w.name)}, {"children", children}};
}

Tree tree_from_json(const SetoidFamily& b, const json& j) {
  std::string id = as_id(member(j, "name", "tree node"), "'name'");
  Tree w;
  w.name = resolve(b.base(), id, "tree node");
  std::size_t arity = b.fiber(w.name).size();
  if (j.contains("children")) {
    const json& kids = j.at("children");
    require(kids.is_array(), "'children' must be an array");
    for (const auto& k : kids) w.children.push_back(tree_from_json(b, k));
  }
  require(w.children.size() == arity,
          "node '" + id + "' expects " + std::to_string(arity) +
              " children, got " + std::to_string(w.children.size()));
  return w;
}

json algebra_to_json(const SetoidFamily& b, const Algebra& alg) {
  const Setoid& base = b.base();
  if (alg.is_builtin()) {
    json exprs = json::object();
    for (std::size_t a = 0; a < alg.names(); ++a) {
      exprs[base.id_of(static_cast<Val>(a))] = expr_to_json(alg.exprs()[a]);
    }
    return json{{"kind", "builtin"}, {"name", "int"}, {"expr", exprs}};
  }
  const Setoid& target = alg.target();
  json map = json::object();
  for (std::size_t a = 0; a < alg.names(); ++a) {
    std::size_t arity = alg.arity(static_cast<Val>(a));
    json entries = json::array();
    std::vector<std::size_t> digits(arity, 0);
    const auto& table = alg.tables()[a];
    std::size_t idx = 0;
    do {
      json args = json::array();
      for (std::size_t d : digits) args.push_back(target.id_of(static_cast<Val>(d)));
      entries.push_back(
          json{{"args", args}, {"value", target.id_of(table[idx])}});
      ++idx;
    } while (detail::next_tuple(digits, target.size()));
    map[base.id_of(static_cast<Val>(a))] = entries;
  }
  return json{{"kind", "table"}, {"target", setoid_to_json(target)},
              {"map", map}};
}

Algebra algebra_from_json(const SetoidFamily& b, const json& j) {
  std::string kind = as_id(member(j, "kind", "algebra"), "'kind'");
  const Setoid& base = b.base();
  if (kind == "builtin") {
    std::string name = as_id(member(j, "name", "algebra"), "'name'");
    require(name == "int", "unknown builtin target '" + name + "'");
    const json& exprs = member(j, "expr", "algebra");
    require(exprs.is_object(), "'expr' must be an object");
    std::vector<IntExpr> list;
    for (std::size_t a = 0; a < base.size(); ++a) {
      std::string id = base.id_of(static_cast<Val>(a));
      auto it = exprs.find(id);
      require(it != exprs.end(), "missing expression for '" + id + "'");
      IntExpr e = expr_from_json(*it);
      check_children(e, b.fiber(static_cast<Val>(a)).size(), id);
      list.push_back(std::move(e));
    }
    for (auto it = exprs.begin(); it != exprs.end(); ++it) {
      require(base.find(it.key()).has_value(),
              "expression key '" + it.key() + "' does not name a base "
                                              "element");
    }
    return Algebra::from_exprs(b, std::move(list));
  }
  require(kind == "table", "unknown algebra kind '" + kind + "'");
  Setoid target = setoid_from_json(member(j, "target", "algebra"));
  require(target.size() > 0, "table algebra needs a nonempty target");
  const json& map = member(j, "map", "algebra");
  require(map.is_object(), "'map' must be an object");
  std::vector<std::vector<Val>> tables;
  for (std::size_t a = 0; a < base.size(); ++a) {
    std::string id = base.id_of(static_cast<Val>(a));
    auto it = map.find(id);
    require(it != map.end(), "missing table for '" + id + "'");
    require(it->is_array(), "table for '" + id + "' must be an array");
    std::size_t arity = b.fiber(static_cast<Val>(a)).size();
    std::size_t size = 1;
    for (std::size_t s = 0; s < arity; ++s) {
      size *= target.size();
      require(size <= kMaxCandidates, "table for '" + id + "' is too large");
    }
    std::vector<Val> table(size, -1);
    for (const auto& entry : *it) {
      const json& args = member(entry, "args", "table entry");
      require(args.is_array() && args.size() == arity,
              "table entry for '" + id + "' needs " + std::to_string(arity) +
                  " arguments");
      std::size_t idx = 0;
      for (const auto& arg : args) {
        idx = idx * target.size() +
              static_cast<std::size_t>(
                  resolve(target, as_id(arg, "table argument"), "table entry"));
      }
      require(table[idx] < 0,
              "duplicate table entry for '" + id + "'");
      table[idx] = resolve(target, as_id(member(entry, "value", "table entry"),
                                         "'value'"),
                           "table entry");
    }
    for (std::size_t idx = 0; idx < size; ++idx) {
      require(table[idx] >= 0, "incomplete table for '" + id + "'");
    }
    tables.push_back(std::move(table));
  }
  for (auto it = map.begin(); it != map.end(); ++it) {
    require(base.find(it.key()).has_value(),
            "table key '" + it.key() + "' does not name a base element");
  }
  return Algebra::from_tables(b, std::move(target), std::move(tables));
}

json witness_to_json(const SetoidFamily& b, const WperWitness& t) {
  json children = json::array();
  for (const auto& c : t.children) children.push_back(witness_to_json(b, c));
  return json{{"index", json::array({tree_to_json(b, t.index.first),
                                     tree_to_json(b, t.index.second)})},
              {"name", "related"},
              {"children", children}};
}

WperWitness witness_from_json(const SetoidFamily& b, const json& j) {
  const json& index = member(j, "index", "witness node");
  require(index.is_array() && index.size() == 2,
          "'index' must be a pair of trees");
  require(as_id(member(j, "name", "witness node"), "'name'") == "related",
          "witness nodes are named 'related'");
  WperWitness t;
  t.index = {tree_from_json(b, index.at(0)), tree_from_json(b, index.at(1))};
  if (j.contains("children")) {
    const json& kids = j.at("children");
    require(kids.is_array(), "'children' must be an array");
    for (const auto& k : kids) t.children.push_back(witness_from_json(b, k));
  }
  return t;
}

json violation_to_json(const Violation& v) {
  return json{{"law", v.law}, {"detail", v.detail}};
}

}  // namespace wtree
