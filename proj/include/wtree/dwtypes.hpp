#pragma once

#include <functional>
#include <optional>
#include <variant>

#include "wtree/algebra.hpp"

namespace wtree {

// An indexed tree signature: for each index, a finite ordered collection of
// names; for each name, a branch count; for each branch, the index the
// child must carry. All maps are computable; index and name equality is raw
// data equality for the instances below.
template <class IndexT, class NameT>
struct DwSignature {
  std::function<bool(const IndexT&, const IndexT&)> index_eq;
  std::function<bool(const NameT&, const NameT&)> name_eq;
  std::function<std::vector<NameT>(const IndexT&)> names;
  std::function<std::size_t(const IndexT&, const NameT&)> arity;
  std::function<IndexT(const IndexT&, const NameT&, std::size_t)> next_index;
  std::function<std::string(const IndexT&)> show_index;
  std::function<std::string(const NameT&)> show_name;
};

// A node of an indexed tree: the index it claims to sit at, the name it
// picks, and one child per branch.
template <class IndexT, class NameT>
struct DTree {
  IndexT index;
  NameT name;
  std::vector<DTree<IndexT, NameT>> children;
};

namespace detail_dw {

template <class IndexT, class NameT>
void validate_rec(const DwSignature<IndexT, NameT>& sig, const IndexT& at,
                  const DTree<IndexT, NameT>& t, const std::string& path,
                  Report& out) {
  const std::string where = path.empty() ? "/" : path;
  if (!sig.index_eq(t.index, at)) {
    out.push_back({"index-mismatch",
                   "at " + where + ": expected index " + sig.show_index(at) +
                       ", found " + sig.show_index(t.index)});
    return;
  }
  bool known = false;
  for (const NameT& n : sig.names(t.index))
    if (sig.name_eq(n, t.name)) {
      known = true;
      break;
    }
  if (!known) {
    out.push_back({"name", "at " + where + ": name " + sig.show_name(t.name) +
                               " is not available at index " +
                               sig.show_index(t.index)});
    return;
  }
  const std::size_t k = sig.arity(t.index, t.name);
  if (t.children.size() != k) {
    out.push_back({"arity", "at " + where + ": expected " + std::to_string(k) +
                                " children, found " +
                                std::to_string(t.children.size())});
    return;
  }
  for (std::size_t i = 0; i < k; ++i)
    validate_rec(sig, sig.next_index(t.index, t.name, i), t.children[i],
                 path + "/" + std::to_string(i), out);
}

template <class IndexT, class NameT, class R, class Step>
R dfold_rec(const DwSignature<IndexT, NameT>& sig,
            const DTree<IndexT, NameT>& t, Step&& step) {
  std::vector<R> kids;
  kids.reserve(t.children.size());
  for (const auto& c : t.children)
    kids.push_back(dfold_rec<IndexT, NameT, R>(sig, c, step));
  return step(t.index, t.name, kids);
}

}  // namespace detail_dw

// Checks the index discipline: the node's index matches the expected one,
// its name is available there, and every child sits at the prescribed next
// index. Violations carry the tree path ("/", "/0/1", ...).
template <class IndexT, class NameT>
Report validate_dtree(const DwSignature<IndexT, NameT>& sig, const IndexT& at,
                      const DTree<IndexT, NameT>& t) {
  Report out;
  detail_dw::validate_rec(sig, at, t, "", out);
  return out;
}

// Eliminator: combines each node's index, name, and child results bottom-up.
// The tree must validate at the given index.
template <class IndexT, class NameT, class R, class Step>
R dfold(const DwSignature<IndexT, NameT>& sig, const IndexT& at,
        const DTree<IndexT, NameT>& t, Step&& step) {
  Report r = validate_dtree(sig, at, t);
  if (!r.empty())
    throw SemanticError("dfold: tree does not validate: " + r.front().detail);
  return detail_dw::dfold_rec<IndexT, NameT, R>(sig, t,
                                                std::forward<Step>(step));
}

// Backtracking inhabitation search: tries every name at the index and
// recursively fills the branches. `fuel` bounds the recursion depth.
template <class IndexT, class NameT>
std::optional<DTree<IndexT, NameT>> find_witness(
    const DwSignature<IndexT, NameT>& sig, const IndexT& at, int fuel = 64) {
  if (fuel <= 0) throw LimitError("witness search exceeded its depth budget");
  for (const NameT& n : sig.names(at)) {
    const std::size_t k = sig.arity(at, n);
    std::vector<DTree<IndexT, NameT>> kids;
    kids.reserve(k);
    bool ok = true;
    for (std::size_t i = 0; i < k && ok; ++i) {
      auto c = find_witness(sig, sig.next_index(at, n, i), fuel - 1);
      if (!c)
        ok = false;
      else
        kids.push_back(std::move(*c));
    }
    if (ok) return DTree<IndexT, NameT>{at, n, std::move(kids)};
  }
  return std::nullopt;
}

// ---- Relation witnesses ----------------------------------------------

// Indexed trees over pairs of trees: the one name at a pair is available
// when the root names are related, and there is one branch per
// transport-related fiber pair, leading to the corresponding subtrees. A
// tree of this signature at (w, w2) is exactly a proof that per(w, w2).
using TreePair = std::pair<Tree, Tree>;
using WperSignature = DwSignature<TreePair, std::monostate>;
using WperWitness = DTree<TreePair, std::monostate>;

WperSignature wper_signature(const SetoidFamily& b);

// The ordered branch list at a pair: fiber pairs (b, b2) with the transport
// of b related to b2, first component major.
std::vector<std::pair<Val, Val>> wper_branches(const SetoidFamily& b,
                                               const Tree& w, const Tree& w2);

// Builds the witness when the trees are related, bottom-up; absent exactly
// when per is false.
std::optional<WperWitness> per_witness(const SetoidFamily& b, const Tree& w,
                                       const Tree& w2);

// Witness at the swapped pair, built by reindexing branches through the
// inverse transport.
WperWitness witness_sym(const SetoidFamily& b, const WperWitness& t);

// Witness at the outer pair of two witnesses sharing a middle tree (as raw
// data), routed through the composed transports.
WperWitness witness_trans(const SetoidFamily& b, const WperWitness& t1,
                          const WperWitness& t2);

// ---- Recursive definitions --------------------------------------------

// Index: a tree together with a tabulated assignment on its immediate
// subtrees. A name at (w, k) is a coherent family whose recursion step
// reproduces k; each branch s leads to (subtree s, family at s), so a tree
// of this signature certifies that k is recursively defined from alg.
struct RecDefIndex {
  Tree tree;
  std::vector<Val> table;

  bool operator==(const RecDefIndex& other) const = default;
};

using RecDefSignature = DwSignature<RecDefIndex, CoherentFamily>;
using RecDefWitness = DTree<RecDefIndex, CoherentFamily>;

// For table-backed targets, names enumerate every coherent family matching
// k. For the built-in integer target the single candidate assembled from
// fold is checked against k instead.
RecDefSignature recdef_signature(const SetoidFamily& b, const Algebra& alg);

// The canonical recursively-defined assignment at w (fold on each immediate
// subtree) together with its witness.
std::pair<std::vector<Val>, RecDefWitness> recdef_witness(
    const SetoidFamily& b, const Algebra& alg, const Tree& w);

}  // namespace wtree
