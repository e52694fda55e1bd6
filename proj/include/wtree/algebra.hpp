#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wtree/wtypes.hpp"

namespace wtree {

// Integer expression over child slots: literals, child references, and
// the operators +, *, max, min (each folded left over >= 1 arguments).
struct IntExpr {
  enum class Op { kLit, kChild, kAdd, kMul, kMax, kMin };

  Op op = Op::kLit;
  std::int64_t lit = 0;
  std::size_t child = 0;
  std::vector<IntExpr> args;

  std::int64_t eval(std::span<const Val> kids) const;
};

// A structure map over a family's names: for each base element, a map from
// assignments of target values (one per fiber element, positional) to a
// target value. Table-backed for finite targets, expression-backed for the
// built-in integer target.
class Algebra {
 public:
  Algebra() = default;

  // One table per base element, flat over assignments in mixed-radix order
  // (child slot 0 most significant, target elements in carrier order).
  static Algebra from_tables(const SetoidFamily& b, Setoid target,
                             std::vector<std::vector<Val>> tables);
  static Algebra from_exprs(const SetoidFamily& b, std::vector<IntExpr> exprs);

  const Setoid& target() const { return target_; }
  bool is_builtin() const { return builtin_; }
  std::size_t names() const { return arity_.size(); }
  std::size_t arity(Val name) const;
  const std::vector<std::vector<Val>>& tables() const { return tables_; }
  const std::vector<IntExpr>& exprs() const { return exprs_; }

  Val apply(Val name, std::span<const Val> assignment) const;

 private:
  Setoid target_;
  std::vector<std::size_t> arity_;
  std::vector<std::vector<Val>> tables_;
  std::vector<IntExpr> exprs_;
  bool builtin_ = false;
};

// Extensionality of the structure map: related names with transport-matching
// extensional assignments give related outputs. Exhaustive for table-backed
// targets; for the built-in integer target, checked on assignments constant
// on fiber equality classes with values from a fixed window.
Report validate_algebra(const SetoidFamily& b, const Algebra& alg);

// An element of the functor applied to a setoid: a name plus one value of
// that setoid per fiber element.
struct PolyElem {
  Val name = 0;
  std::vector<Val> assign;

  bool operator==(const PolyElem& other) const = default;
};

// The applied-functor setoid: all extensional assignments, under equality
// "names related and values matching across the transport".
struct PolyAppliedSetoid {
  SetoidFamily family;
  Setoid target;
  std::vector<PolyElem> elems;
  Setoid setoid;

  std::optional<Val> index_of(const PolyElem& e) const;
};

PolyAppliedSetoid poly_apply(const SetoidFamily& b, const Setoid& x);

// The displayed equality of the applied-functor setoid; works for any
// target of the assignments, including the built-in integers.
bool poly_eq(const SetoidFamily& b, const Setoid& x, const PolyElem& u,
             const PolyElem& v);

// Post-composition: apply h to every value of the assignment.
PolyElem poly_map(const SetoidFamily& b, const ExtFun& h, const PolyElem& u);

// Structural recursion: fold(sup a k) = alg(a, fold . k). Requires an
// extensional tree.
Val fold(const SetoidFamily& b, const Algebra& alg, const Tree& w);

// A family of target assignments, one table per immediate subtree of a
// tree: entry [s][b] is the value at fiber position b of subtree s.
using CoherentFamily = std::vector<std::vector<Val>>;

// Coherence: related immediate subtrees carry tables matching across the
// transport at their root names.
Report check_coherent(const SetoidFamily& b, const Setoid& target,
                      const Tree& w, const CoherentFamily& f);

// One recursion step: the value at each immediate subtree is the structure
// map applied to that subtree's name and its table. Raises on an
// incoherent family.
std::vector<Val> recursive_step(const SetoidFamily& b, const Algebra& alg,
                                const Tree& w, const CoherentFamily& f);

// Moves a coherent family at w to one at a related tree w2 by reading the
// original through the transports (base level for the slot, fiber level
// inside each table).
CoherentFamily transport_cohfamily(const SetoidFamily& b, const Algebra& alg,
                                   const Tree& w, const Tree& w2,
                                   const CoherentFamily& f);

// Restriction of a map on a truncation to the immediate subtrees of w.
std::vector<Val> restrict_map(const SetoidFamily& b, const ExtFun& h,
                              const TruncatedWSetoid& trunc, const Tree& w);

// Per-tree family of immediate-subtree tables, given as a function.
using ImsFamily = std::function<std::vector<Val>(const Tree&)>;

// Packages the family's value at w as an applied-functor element over the
// algebra's target. Raises if that value does not respect immediate-subtree
// equality at w.
PolyElem comprehend(const SetoidFamily& b, const Algebra& alg,
                    const ImsFamily& fam, const Tree& w);

struct MorphismResult {
  bool ok = false;
  std::string reason;                 // "not extensional" or "square"
  std::optional<Tree> counterexample;
};

// Whether the tabulated map h over the truncation is an algebra morphism:
// extensional, and h(w) equal to the structure map applied to the root name
// and the children's values, for every enumerated tree.
MorphismResult is_algebra_morphism(const SetoidFamily& b, const Algebra& alg,
                                   const std::vector<Val>& h,
                                   const TruncatedWSetoid& trunc);

// For a morphism h, whether h agrees with fold on every enumerated tree.
// Raises if h is not a morphism.
bool uniqueness_check(const SetoidFamily& b, const Algebra& alg,
                      const std::vector<Val>& h,
                      const TruncatedWSetoid& trunc);

}  // namespace wtree
