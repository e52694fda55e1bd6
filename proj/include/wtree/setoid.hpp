#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wtree/common.hpp"

namespace wtree {

// A setoid: a carrier together with an equivalence relation given as data.
// Table-backed setoids enumerate a finite carrier of named elements and
// store the relation as a matrix. Nothing forces the matrix to be an
// equivalence relation; validate_setoid reports which laws fail. The
// built-in integer setoid is the 64-bit integers under exact equality; it
// has no finite enumeration and is accepted only where one is not needed
// (notably as a fold target).
class Setoid {
 public:
  enum class Kind { kTable, kBuiltinInt };

  Setoid() = default;

  static Setoid discrete(std::vector<std::string> ids);
  static Setoid codiscrete(std::vector<std::string> ids);
  // Relation = exactly the listed pairs. Closure is not taken; a
  // non-closed list shows up in validate_setoid.
  static Setoid from_pairs(
      std::vector<std::string> ids,
      const std::vector<std::pair<std::string, std::string>>& pairs);
  static Setoid from_matrix(std::vector<std::string> ids,
                            std::vector<std::uint8_t> matrix);
  static Setoid integers();

  Kind kind() const { return kind_; }
  bool is_table() const { return kind_ == Kind::kTable; }

  std::size_t size() const;
  const std::vector<std::string>& ids() const;
  std::string id_of(Val x) const;
  std::optional<Val> find(const std::string& id) const;

  bool eq(Val x, Val y) const;

  bool operator==(const Setoid& other) const = default;

 private:
  Kind kind_ = Kind::kTable;
  std::vector<std::string> ids_;
  std::vector<std::uint8_t> rel_;  // size x size, row-major
};

// A function between setoids, carried as a table over the domain carrier.
// Extensionality is a law checked by validate_extfun, not a constructor
// guarantee. The codomain may be the built-in integer setoid; the domain
// must be table-backed.
struct ExtFun {
  Setoid dom;
  Setoid cod;
  std::vector<Val> table;

  Val operator()(Val x) const;
};

// A proof-irrelevant family of setoids over a base: one fiber per base
// element plus one transport per related ordered pair of base elements.
// Transports are keyed on the pair itself, so any two witnesses of
// relatedness act identically. Missing diagonal transports are filled
// with the identity at construction (always lawful).
class SetoidFamily {
 public:
  SetoidFamily() = default;
  SetoidFamily(Setoid base, std::vector<Setoid> fibers,
               std::map<std::pair<Val, Val>, std::vector<Val>> transports);

  const Setoid& base() const { return base_; }
  const Setoid& fiber(Val a) const;
  bool has_transport(Val a, Val a2) const;
  const std::vector<Val>& transport(Val a, Val a2) const;
  Val transport_at(Val a, Val a2, Val b) const;
  const std::map<std::pair<Val, Val>, std::vector<Val>>& transports() const {
    return transports_;
  }

  bool operator==(const SetoidFamily& other) const = default;

 private:
  Setoid base_;
  std::vector<Setoid> fibers_;
  std::map<std::pair<Val, Val>, std::vector<Val>> transports_;
};

// Scans are exhaustive over the carrier; the built-in integer setoid is
// spot-checked on a fixed window instead.
Report validate_setoid(const Setoid& s);

// Checks shape (totality, range) and extensionality: related inputs map
// to related outputs. Each unordered pair is reported once.
Report validate_extfun(const ExtFun& f);

ExtFun identity_fun(const Setoid& x);

// g after f; requires cod(f) == dom(g) as data.
ExtFun compose(const ExtFun& g, const ExtFun& f);

// All extensional tables x -> y, in lexicographic order (slot 0 most
// significant, codomain elements in carrier order).
std::vector<std::vector<Val>> enumerate_ext_tables(const Setoid& x,
                                                   const Setoid& y);

// The setoid of extensional functions x -> y under pointwise equality.
Setoid function_setoid(const Setoid& x, const Setoid& y);

// Sub-setoid of dom(f) over the elements sent to something equal to a.
Setoid fiber_setoid(const ExtFun& f, Val a);

// Checks fiber setoids, fiber validity, transport presence/shape, and the
// identity / composition / inverse laws plus transport extensionality.
// Composition is checked over pairwise-distinct base triples and inverse
// over distinct pairs; the omitted instances follow from the identity law
// plus extensionality, so nothing is lost on valid input.
Report validate_family(const SetoidFamily& f);

// The family of fibers of f over its codomain; transports match up the
// shared carrier elements of equal fibers.
SetoidFamily function_to_family(const ExtFun& f);

// The first projection out of the total setoid of a family. Pair elements
// are named "base:fiber"; two pairs are equal when the bases are and the
// transported fiber components are.
ExtFun family_to_function(const SetoidFamily& f);

}  // namespace wtree
