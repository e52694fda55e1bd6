#include "wtree/wtypes.hpp"

#include <algorithm>

#include "util.hpp"

namespace wtree {

int depth(const Tree& w) {
  int d = 0;
  for (const Tree& c : w.children) d = std::max(d, 1 + depth(c));
  return d;
}

std::string structural_key(const Tree& w) {
  if (w.children.empty()) return std::to_string(w.name);
  std::string out = std::to_string(w.name) + "(";
  for (std::size_t i = 0; i < w.children.size(); ++i) {
    if (i) out += ",";
    out += structural_key(w.children[i]);
  }
  return out + ")";
}

std::string display_key(const SetoidFamily& b, const Tree& w) {
  std::string out = b.base().id_of(w.name);
  if (w.children.empty()) return out;
  out += "(";
  for (std::size_t i = 0; i < w.children.size(); ++i) {
    if (i) out += ",";
    out += display_key(b, w.children[i]);
  }
  return out + ")";
}

namespace {

void well_formed_rec(const SetoidFamily& b, const Tree& w, Report& out) {
  if (w.name < 0 || static_cast<std::size_t>(w.name) >= b.base().size()) {
    out.push_back({"name-range", "node name position " +
                                     std::to_string(w.name) +
                                     " outside the base carrier"});
    return;
  }
  const std::size_t want = b.fiber(w.name).size();
  if (w.children.size() != want) {
    out.push_back({"arity", "at " + display_key(b, w) + ": expected " +
                                std::to_string(want) + " children, found " +
                                std::to_string(w.children.size())});
    return;
  }
  for (const Tree& c : w.children) well_formed_rec(b, c, out);
}

void ensure_well_formed(const SetoidFamily& b, const Tree& w) {
  Report r = well_formed(b, w);
  if (!r.empty())
    throw SemanticError("ill-formed tree: " + r.front().detail);
}

// Core relation on well-formed trees; callers have checked shape.
bool per_rec(const SetoidFamily& b, const Tree& w, const Tree& w2) {
  if (!b.base().eq(w.name, w2.name)) return false;
  const auto& t = b.transport(w.name, w2.name);
  const Setoid& f2 = b.fiber(w2.name);
  for (std::size_t i = 0; i < w.children.size(); ++i)
    for (std::size_t j = 0; j < w2.children.size(); ++j)
      if (f2.eq(t[i], static_cast<Val>(j)) &&
          !per_rec(b, w.children[i], w2.children[j]))
        return false;
  return true;
}

}  // namespace

Report well_formed(const SetoidFamily& b, const Tree& w) {
  Report out;
  well_formed_rec(b, w, out);
  return out;
}

bool per(const SetoidFamily& b, const Tree& w, const Tree& w2) {
  ensure_well_formed(b, w);
  ensure_well_formed(b, w2);
  return per_rec(b, w, w2);
}

bool per_via_transport(const SetoidFamily& b, const Tree& w, const Tree& w2) {
  ensure_well_formed(b, w);
  ensure_well_formed(b, w2);
  if (!per_rec(b, w, w))
    throw SemanticError("per_via_transport: first tree is not extensional");
  if (!per_rec(b, w2, w2))
    throw SemanticError("per_via_transport: second tree is not extensional");
  if (!b.base().eq(w.name, w2.name)) return false;
  const auto& t = b.transport(w.name, w2.name);
  for (std::size_t i = 0; i < w.children.size(); ++i)
    if (!per_rec(b, w.children[i],
                 w2.children[static_cast<std::size_t>(t[i])]))
      return false;
  return true;
}

bool is_extensional(const SetoidFamily& b, const Tree& w) {
  ensure_well_formed(b, w);
  return per_rec(b, w, w);
}

Tree sup(const SetoidFamily& b, Val a, std::vector<Tree> children) {
  if (a < 0 || static_cast<std::size_t>(a) >= b.base().size())
    throw SemanticError("sup: name position outside the base carrier");
  const Setoid& fib = b.fiber(a);
  if (children.size() != fib.size())
    throw SemanticError("sup: expected " + std::to_string(fib.size()) +
                        " children, got " + std::to_string(children.size()));
  for (std::size_t i = 0; i < children.size(); ++i) {
    ensure_well_formed(b, children[i]);
    if (!per_rec(b, children[i], children[i]))
      throw SemanticError("sup: child at fiber position '" +
                          fib.id_of(static_cast<Val>(i)) +
                          "' is not extensional");
  }
  for (std::size_t i = 0; i < children.size(); ++i)
    for (std::size_t j = 0; j < children.size(); ++j) {
      if (i == j) continue;
      if (fib.eq(static_cast<Val>(i), static_cast<Val>(j)) &&
          !per_rec(b, children[i], children[j]))
        throw SemanticError("sup: branching is not extensional at fiber pair "
                            "('" +
                            fib.id_of(static_cast<Val>(i)) + "', '" +
                            fib.id_of(static_cast<Val>(j)) + "')");
    }
  return Tree{a, std::move(children)};
}

std::pair<Val, std::vector<Tree>> unsup(const SetoidFamily& b, const Tree& w) {
  if (!is_extensional(b, w))
    throw SemanticError("unsup: tree is not extensional");
  return {w.name, w.children};
}

std::optional<Val> TruncatedWSetoid::index_of(const Tree& w) const {
  auto it = by_key_.find(structural_key(w));
  if (it == by_key_.end()) return std::nullopt;
  return it->second;
}

TruncatedWSetoid enumerate_extensional(const SetoidFamily& b, int depth_cap,
                                       std::size_t limit) {
  if (depth_cap < 0)
    throw SemanticError("enumerate_extensional: negative depth");
  TruncatedWSetoid out;
  out.family = b;
  out.depth = depth_cap;
  std::vector<int> depths;

  // Stratum 0: nullary names.
  for (std::size_t a = 0; a < b.base().size(); ++a)
    if (b.fiber(static_cast<Val>(a)).size() == 0) {
      out.trees.push_back(Tree{static_cast<Val>(a), {}});
      depths.push_back(0);
      if (out.trees.size() > limit)
        throw LimitError("tree enumeration exceeds the configured limit");
    }

  for (int e = 1; e <= depth_cap; ++e) {
    const std::size_t pool = out.trees.size();  // all trees of depth < e
    for (std::size_t a = 0; a < b.base().size(); ++a) {
      const Setoid& fib = b.fiber(static_cast<Val>(a));
      const std::size_t k = fib.size();
      if (k == 0 || pool == 0) continue;
      std::vector<std::size_t> pick(k, 0);
      do {
        int dmax = 0;
        for (std::size_t i = 0; i < k; ++i)
          dmax = std::max(dmax, depths[pick[i]]);
        if (dmax != e - 1) continue;
        bool ok = true;
        for (std::size_t i = 0; i < k && ok; ++i) {
          // Members of earlier strata are extensional by construction.
          if (!per_rec(b, out.trees[pick[i]], out.trees[pick[i]])) ok = false;
          for (std::size_t j = 0; j < k && ok; ++j) {
            if (i == j) continue;
            if (fib.eq(static_cast<Val>(i), static_cast<Val>(j)) &&
                !per_rec(b, out.trees[pick[i]], out.trees[pick[j]]))
              ok = false;
          }
        }
        if (!ok) continue;
        Tree t{static_cast<Val>(a), {}};
        t.children.reserve(k);
        for (std::size_t i = 0; i < k; ++i) t.children.push_back(out.trees[pick[i]]);
        out.trees.push_back(std::move(t));
        depths.push_back(e);
        if (out.trees.size() > limit)
          throw LimitError("tree enumeration exceeds the configured limit");
      } while (detail::next_tuple(pick, pool));
    }
  }

  std::vector<std::string> ids;
  ids.reserve(out.trees.size());
  for (std::size_t i = 0; i < out.trees.size(); ++i) {
    ids.push_back(display_key(b, out.trees[i]));
    out.by_key_.emplace(structural_key(out.trees[i]), static_cast<Val>(i));
  }
  const std::size_t n = out.trees.size();
  std::vector<std::uint8_t> rel(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      rel[i * n + j] = per_rec(b, out.trees[i], out.trees[j]) ? 1 : 0;
  out.setoid = Setoid::from_matrix(std::move(ids), std::move(rel));
  return out;
}

Setoid ims_setoid(const SetoidFamily& b, const Tree& w) {
  if (!is_extensional(b, w))
    throw SemanticError("ims_setoid: tree is not extensional");
  const Setoid& fib = b.fiber(w.name);
  const std::size_t n = fib.size();
  std::vector<std::uint8_t> rel(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      rel[i * n + j] = per_rec(b, w.children[i], w.children[j]) ? 1 : 0;
  return Setoid::from_matrix(fib.ids(), std::move(rel));
}

ExtFun ims_transport(const SetoidFamily& b, const Tree& w, const Tree& w2) {
  if (!per(b, w, w2))
    throw SemanticError("ims_transport: trees are not related");
  return ExtFun{ims_setoid(b, w), ims_setoid(b, w2),
                b.transport(w.name, w2.name)};
}

std::pair<ExtFun, ExtFun> image_factorization(const SetoidFamily& b,
                                              const Tree& w,
                                              const TruncatedWSetoid& trunc) {
  if (!(trunc.family == b))
    throw SemanticError("image_factorization: truncation over a different "
                        "family");
  if (depth(w) > trunc.depth)
    throw SemanticError("image_factorization: tree deeper than the "
                        "truncation");
  if (!is_extensional(b, w))
    throw SemanticError("image_factorization: tree is not extensional");
  Setoid ims = ims_setoid(b, w);
  ExtFun e{b.fiber(w.name), ims, {}};
  e.table.resize(w.children.size());
  for (std::size_t i = 0; i < e.table.size(); ++i)
    e.table[i] = static_cast<Val>(i);
  ExtFun m{std::move(ims), trunc.setoid, {}};
  m.table.reserve(w.children.size());
  for (const Tree& c : w.children) {
    auto idx = trunc.index_of(c);
    if (!idx)
      throw SemanticError("image_factorization: subtree missing from the "
                          "truncation");
    m.table.push_back(*idx);
  }
  return {std::move(e), std::move(m)};
}

}  // namespace wtree
