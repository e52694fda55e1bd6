#pragma once

#include "wtree/setoid.hpp"

namespace wtree {

// Natural numbers as trees: a nullary "zero" and a unary "succ" over a
// discrete base.
SetoidFamily nat_signature();

// Binary trees: nullary "leaf" and binary "node", all discrete.
SetoidFamily bintree_signature();

// A signature whose trees can fail to be extensional: "branch" has a
// codiscrete two-element fiber, so both children must stay related.
SetoidFamily nonext_signature();

// Lists over a table-backed element setoid: "nil" plus one unary cons name
// per element, cons names related exactly when the elements are.
SetoidFamily list_signature(const Setoid& elems);

}  // namespace wtree
