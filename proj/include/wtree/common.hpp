#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace wtree {

// Element of a setoid: a position into a table-backed carrier, or the raw
// value itself when the setoid is the built-in integer setoid.
using Val = std::int64_t;

// One broken law, reported as data. `law` is a stable slug ("symmetry",
// "transport-identity", ...); `detail` names the offending instance.
struct Violation {
  std::string law;
  std::string detail;
};

using Report = std::vector<Violation>;

// Precondition failures: mismatched objects, non-extensional input,
// unknown identifiers, malformed in-memory data.
struct SemanticError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed external input: JSON syntax, schema shape, unresolved ids.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An enumeration would exceed its configured cap.
struct LimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Caps. Parsed carriers stay small enough for exhaustive validation;
// internal enumerations (candidate tables, trees) get a wider budget.
inline constexpr std::size_t kMaxParsedCarrier = 64;
inline constexpr std::size_t kMaxCandidates = 1'000'000;
inline constexpr std::size_t kDefaultTreeLimit = 100'000;

// Window used when spot-checking laws that range over the built-in
// integer setoid, where exhaustive checks are impossible.
inline constexpr std::int64_t kIntSampleLo = -8;
inline constexpr std::int64_t kIntSampleHi = 8;

}  // namespace wtree
