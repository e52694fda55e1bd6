#include "wtree/dwtypes.hpp"

#include <algorithm>
#include <memory>

#include "util.hpp"

namespace wtree {

namespace {

std::string pair_key(const SetoidFamily& b, const TreePair& p) {
  return "(" + display_key(b, p.first) + ", " + display_key(b, p.second) + ")";
}

void ensure_valid_pair(const SetoidFamily& b, const TreePair& p) {
  Report r = well_formed(b, p.first);
  Report r2 = well_formed(b, p.second);
  if (!r.empty() || !r2.empty())
    throw SemanticError("ill-formed tree in index pair");
}

std::size_t branch_position(const std::vector<std::pair<Val, Val>>& branches,
                            Val b1, Val b2) {
  auto it = std::find(branches.begin(), branches.end(), std::make_pair(b1, b2));
  if (it == branches.end())
    throw SemanticError("expected branch missing; family laws do not hold");
  return static_cast<std::size_t>(it - branches.begin());
}

}  // namespace

std::vector<std::pair<Val, Val>> wper_branches(const SetoidFamily& b,
                                               const Tree& w, const Tree& w2) {
  ensure_valid_pair(b, {w, w2});
  if (!b.base().eq(w.name, w2.name))
    throw SemanticError("wper_branches: root names are not related");
  const auto& t = b.transport(w.name, w2.name);
  const Setoid& f2 = b.fiber(w2.name);
  std::vector<std::pair<Val, Val>> out;
  for (std::size_t i = 0; i < w.children.size(); ++i)
    for (std::size_t j = 0; j < w2.children.size(); ++j)
      if (f2.eq(t[i], static_cast<Val>(j)))
        out.emplace_back(static_cast<Val>(i), static_cast<Val>(j));
  return out;
}

WperSignature wper_signature(const SetoidFamily& b) {
  auto fam = std::make_shared<SetoidFamily>(b);
  WperSignature sig;
  sig.index_eq = [](const TreePair& x, const TreePair& y) { return x == y; };
  sig.name_eq = [](const std::monostate&, const std::monostate&) {
    return true;
  };
  sig.names = [fam](const TreePair& p) -> std::vector<std::monostate> {
    ensure_valid_pair(*fam, p);
    if (fam->base().eq(p.first.name, p.second.name)) return {std::monostate{}};
    return {};
  };
  sig.arity = [fam](const TreePair& p, const std::monostate&) {
    return wper_branches(*fam, p.first, p.second).size();
  };
  sig.next_index = [fam](const TreePair& p, const std::monostate&,
                         std::size_t k) -> TreePair {
    auto branches = wper_branches(*fam, p.first, p.second);
    if (k >= branches.size())
      throw SemanticError("branch position out of range");
    const auto& [b1, b2] = branches[k];
    return {p.first.children[static_cast<std::size_t>(b1)],
            p.second.children[static_cast<std::size_t>(b2)]};
  };
  sig.show_index = [fam](const TreePair& p) { return pair_key(*fam, p); };
  sig.show_name = [](const std::monostate&) { return std::string("related"); };
  return sig;
}

namespace {

std::optional<WperWitness> per_witness_rec(const SetoidFamily& b,
                                           const Tree& w, const Tree& w2) {
  if (!b.base().eq(w.name, w2.name)) return std::nullopt;
  std::vector<WperWitness> kids;
  for (const auto& [b1, b2] : wper_branches(b, w, w2)) {
    auto c = per_witness_rec(b, w.children[static_cast<std::size_t>(b1)],
                             w2.children[static_cast<std::size_t>(b2)]);
    if (!c) return std::nullopt;
    kids.push_back(std::move(*c));
  }
  return WperWitness{{w, w2}, {}, std::move(kids)};
}

WperWitness sym_rec(const SetoidFamily& b, const WperWitness& t) {
  const Tree& w = t.index.first;
  const Tree& w2 = t.index.second;
  auto fwd = wper_branches(b, w, w2);
  std::vector<WperWitness> kids;
  for (const auto& [b2, b1] : wper_branches(b, w2, w)) {
    // (b1, b2) is a forward branch: relatedness survives the inverse
    // transport, so the original witness has a child for it.
    const std::size_t pos = branch_position(fwd, b1, b2);
    kids.push_back(sym_rec(b, t.children[pos]));
  }
  return WperWitness{{w2, w}, {}, std::move(kids)};
}

WperWitness trans_rec(const SetoidFamily& b, const WperWitness& t1,
                      const WperWitness& t2) {
  const Tree& w = t1.index.first;
  const Tree& mid = t1.index.second;
  const Tree& w3 = t2.index.second;
  auto br1 = wper_branches(b, w, mid);
  auto br2 = wper_branches(b, mid, w3);
  const auto& t = b.transport(w.name, mid.name);
  std::vector<WperWitness> kids;
  for (const auto& [b1, b3] : wper_branches(b, w, w3)) {
    // Route through the transported middle position: (b1, t b1) is a branch
    // by fiber reflexivity, (t b1, b3) by the composition law.
    const Val b2 = t[static_cast<std::size_t>(b1)];
    const std::size_t p1 = branch_position(br1, b1, b2);
    const std::size_t p2 = branch_position(br2, b2, b3);
    kids.push_back(trans_rec(b, t1.children[p1], t2.children[p2]));
  }
  return WperWitness{{w, w3}, {}, std::move(kids)};
}

}  // namespace

std::optional<WperWitness> per_witness(const SetoidFamily& b, const Tree& w,
                                       const Tree& w2) {
  ensure_valid_pair(b, {w, w2});
  return per_witness_rec(b, w, w2);
}

WperWitness witness_sym(const SetoidFamily& b, const WperWitness& t) {
  WperSignature sig = wper_signature(b);
  Report r = validate_dtree(sig, t.index, t);
  if (!r.empty())
    throw SemanticError("witness_sym: witness does not validate: " +
                        r.front().detail);
  return sym_rec(b, t);
}

WperWitness witness_trans(const SetoidFamily& b, const WperWitness& t1,
                          const WperWitness& t2) {
  WperSignature sig = wper_signature(b);
  Report r1 = validate_dtree(sig, t1.index, t1);
  if (!r1.empty())
    throw SemanticError("witness_trans: first witness does not validate: " +
                        r1.front().detail);
  Report r2 = validate_dtree(sig, t2.index, t2);
  if (!r2.empty())
    throw SemanticError("witness_trans: second witness does not validate: " +
                        r2.front().detail);
  if (!(t1.index.second == t2.index.first))
    throw SemanticError("witness_trans: witnesses do not share the middle "
                        "tree");
  return trans_rec(b, t1, t2);
}

namespace {

struct RecDefState {
  SetoidFamily family;
  Algebra alg;
};

std::string show_vals(const Setoid& target, const std::vector<Val>& vs) {
  std::vector<std::string> parts;
  parts.reserve(vs.size());
  for (Val v : vs) parts.push_back(target.id_of(v));
  return "[" + detail::join(parts, ",") + "]";
}

// The family assembled from fold on each grandchild; the only candidate
// name checked for built-in targets.
CoherentFamily fold_family(const RecDefState& st, const Tree& w) {
  CoherentFamily f(w.children.size());
  for (std::size_t s = 0; s < f.size(); ++s) {
    const Tree& sub = w.children[s];
    f[s].reserve(sub.children.size());
    for (const Tree& g : sub.children)
      f[s].push_back(fold(st.family, st.alg, g));
  }
  return f;
}

bool matches(const Setoid& target, const std::vector<Val>& got,
             const std::vector<Val>& want) {
  if (got.size() != want.size()) return false;
  for (std::size_t i = 0; i < got.size(); ++i)
    if (!target.eq(got[i], want[i])) return false;
  return true;
}

std::vector<CoherentFamily> recdef_names(const RecDefState& st,
                                         const RecDefIndex& idx) {
  const SetoidFamily& b = st.family;
  const Tree& w = idx.tree;
  if (!is_extensional(b, w))
    throw SemanticError("recursively defined assignments require an "
                        "extensional tree");
  if (idx.table.size() != b.fiber(w.name).size()) return {};
  const Setoid& target = st.alg.target();

  if (st.alg.is_builtin()) {
    CoherentFamily cand = fold_family(st, w);
    if (!check_coherent(b, target, w, cand).empty()) return {};
    if (matches(target, recursive_step(b, st.alg, w, cand), idx.table))
      return {std::move(cand)};
    return {};
  }

  // Enumerate per-slot tables lexicographically; keep the coherent families
  // whose recursion step matches the indexed assignment.
  const std::size_t tsize = target.size();
  std::vector<std::size_t> slot_card;
  double budget = 1;
  for (const Tree& sub : w.children) {
    std::size_t card = 1;
    for (std::size_t i = 0; i < b.fiber(sub.name).size(); ++i) {
      card *= tsize;
      budget *= static_cast<double>(tsize);
      if (budget > static_cast<double>(kMaxCandidates))
        throw LimitError("family enumeration exceeds the candidate budget");
    }
    slot_card.push_back(card);
  }
  std::vector<CoherentFamily> out;
  std::vector<std::size_t> pick(w.children.size(), 0);
  bool more = true;
  while (more) {
    CoherentFamily f(w.children.size());
    for (std::size_t s = 0; s < f.size(); ++s) {
      const std::size_t k = b.fiber(w.children[s].name).size();
      f[s].resize(k);
      std::size_t code = pick[s];
      for (std::size_t i = k; i-- > 0;) {
        f[s][i] = static_cast<Val>(code % tsize);
        code /= tsize;
      }
    }
    if (check_coherent(b, target, w, f).empty() &&
        matches(target, recursive_step(b, st.alg, w, f), idx.table))
      out.push_back(std::move(f));
    // Mixed-radix step with per-slot cardinalities.
    more = false;
    for (std::size_t s = pick.size(); s-- > 0;) {
      if (++pick[s] < slot_card[s]) {
        more = true;
        break;
      }
      pick[s] = 0;
    }
  }
  return out;
}

}  // namespace

RecDefSignature recdef_signature(const SetoidFamily& b, const Algebra& alg) {
  auto st = std::make_shared<RecDefState>(RecDefState{b, alg});
  RecDefSignature sig;
  sig.index_eq = [](const RecDefIndex& x, const RecDefIndex& y) {
    return x == y;
  };
  sig.name_eq = [](const CoherentFamily& x, const CoherentFamily& y) {
    return x == y;
  };
  sig.names = [st](const RecDefIndex& idx) { return recdef_names(*st, idx); };
  sig.arity = [st](const RecDefIndex& idx, const CoherentFamily&) {
    return st->family.fiber(idx.tree.name).size();
  };
  sig.next_index = [st](const RecDefIndex& idx, const CoherentFamily& f,
                        std::size_t s) -> RecDefIndex {
    if (s >= idx.tree.children.size() || s >= f.size())
      throw SemanticError("branch position out of range");
    return RecDefIndex{idx.tree.children[s], f[s]};
  };
  sig.show_index = [st](const RecDefIndex& idx) {
    return display_key(st->family, idx.tree) + " with " +
           show_vals(st->alg.target(), idx.table);
  };
  sig.show_name = [st](const CoherentFamily& f) {
    std::vector<std::string> parts;
    parts.reserve(f.size());
    for (const auto& t : f) parts.push_back(show_vals(st->alg.target(), t));
    return "family " + detail::join(parts, " ");
  };
  return sig;
}

namespace {

std::pair<std::vector<Val>, RecDefWitness> recdef_rec(const SetoidFamily& b,
                                                      const Algebra& alg,
                                                      const Tree& w) {
  CoherentFamily f(w.children.size());
  std::vector<RecDefWitness> kids;
  kids.reserve(w.children.size());
  std::vector<Val> k(w.children.size());
  for (std::size_t s = 0; s < w.children.size(); ++s) {
    auto [ksub, wit] = recdef_rec(b, alg, w.children[s]);
    k[s] = alg.apply(w.children[s].name, ksub);
    f[s] = std::move(ksub);
    kids.push_back(std::move(wit));
  }
  return {k, RecDefWitness{RecDefIndex{w, k}, std::move(f), std::move(kids)}};
}

}  // namespace

std::pair<std::vector<Val>, RecDefWitness> recdef_witness(
    const SetoidFamily& b, const Algebra& alg, const Tree& w) {
  if (!is_extensional(b, w))
    throw SemanticError("recdef_witness: tree is not extensional");
  return recdef_rec(b, alg, w);
}

}  // namespace wtree
