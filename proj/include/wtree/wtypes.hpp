#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wtree/setoid.hpp"

namespace wtree {

// A well-founded tree over a family: each node carries a base element and
// one child per element of that element's fiber, stored positionally in
// fiber carrier order. Plain data; operator== is raw structural identity.
struct Tree {
  Val name = 0;
  std::vector<Tree> children;

  bool operator==(const Tree& other) const = default;
};

// Leaves have depth 0; an inner node is one more than its deepest child.
int depth(const Tree& w);

// Carrier-independent structural key ("1(0,0)"); stable and injective.
std::string structural_key(const Tree& w);

// Readable key using the family's identifiers ("node(leaf,leaf)").
std::string display_key(const SetoidFamily& b, const Tree& w);

// Checks names are in range and each node has exactly one child per fiber
// element, reporting the offending subtree by display key.
Report well_formed(const SetoidFamily& b, const Tree& w);

// The decidable partial equivalence: names related in the base, and the
// subtrees under every transport-related fiber pair related in turn.
// Total on well-formed trees.
bool per(const SetoidFamily& b, const Tree& w, const Tree& w2);

// One-sided variant that follows the transport only: names related and
// each subtree related to the subtree at its transported position. Agrees
// with per on extensional inputs and requires them.
bool per_via_transport(const SetoidFamily& b, const Tree& w, const Tree& w2);

// A tree related to itself.
bool is_extensional(const SetoidFamily& b, const Tree& w);

// Checked constructor: every child extensional and related children under
// every related fiber pair. Raises with the offending position or pair.
Tree sup(const SetoidFamily& b, Val a, std::vector<Tree> children);

// Inverse of sup on extensional trees: the root name and the branching.
std::pair<Val, std::vector<Tree>> unsup(const SetoidFamily& b, const Tree& w);

// All extensional trees of depth <= depth, enumerated deterministically:
// stratum by exact depth, names in base order, child tuples lexicographic
// over the previous strata. The carrier setoid has one element per tree
// (named by display key) with the partial equivalence as its relation.
struct TruncatedWSetoid {
  SetoidFamily family;
  int depth = 0;
  std::vector<Tree> trees;
  Setoid setoid;

  std::optional<Val> index_of(const Tree& w) const;

 private:
  friend TruncatedWSetoid enumerate_extensional(const SetoidFamily&, int,
                                                std::size_t);
  std::map<std::string, Val> by_key_;
};

TruncatedWSetoid enumerate_extensional(const SetoidFamily& b, int depth,
                                       std::size_t limit = kDefaultTreeLimit);

// The immediate subtrees of an extensional tree as a setoid: carrier is the
// fiber of the root name, equality is relatedness of the subtrees.
Setoid ims_setoid(const SetoidFamily& b, const Tree& w);

// For related trees, the family transport at the root names, viewed as a
// function between the immediate-subtree setoids.
ExtFun ims_transport(const SetoidFamily& b, const Tree& w, const Tree& w2);

// Factorisation of the branching through the immediate-subtree setoid:
// first the identity-on-carrier map from the root fiber, then the injection
// sending each position to its subtree inside a truncation that contains
// the tree. Requires trunc to be over the same family with depth(w) <=
// trunc.depth.
std::pair<ExtFun, ExtFun> image_factorization(const SetoidFamily& b,
                                              const Tree& w,
                                              const TruncatedWSetoid& trunc);

}  // namespace wtree
