#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>
#include <vector>

#include "test_util.hpp"
#include "wtree/dwtypes.hpp"

using namespace wtree;
using namespace testutil;

namespace {

// Countdown signature over integer indices: a nullary stop at 0, a unary
// step everywhere above, nothing below. Inhabited exactly at n >= 0.
DwSignature<int, int> countdown() {
  DwSignature<int, int> sig;
  sig.index_eq = [](int a, int b) { return a == b; };
  sig.name_eq = [](int a, int b) { return a == b; };
  sig.names = [](int n) -> std::vector<int> {
    if (n == 0) return {0};
    if (n > 0) return {1};
    return {};
  };
  sig.arity = [](int, int name) -> std::size_t { return name == 1 ? 1 : 0; };
  sig.next_index = [](int n, int, std::size_t) { return n - 1; };
  sig.show_index = [](int n) { return std::to_string(n); };
  sig.show_name = [](int name) { return std::to_string(name); };
  return sig;
}

std::size_t nodes(const WperWitness& t) {
  std::size_t n = 1;
  for (const auto& c : t.children) n += nodes(c);
  return n;
}

}  // namespace

TEST_CASE("indexed trees validate their index discipline") {
  auto sig = countdown();
  auto w = find_witness(sig, 3);
  REQUIRE(w.has_value());
  CHECK(validate_dtree(sig, 3, *w).empty());

  int count = dfold<int, int, int>(
      sig, 3, *w, [](int, int, const std::vector<int>& kids) {
        int n = 1;
        for (int k : kids) n += k;
        return n;
      });
  CHECK(count == 4);

  CHECK_FALSE(find_witness(sig, -2).has_value());

  Report wrong_at = validate_dtree(sig, 2, *w);
  REQUIRE(!wrong_at.empty());
  CHECK(wrong_at[0].law == "index-mismatch");

  DTree<int, int> bad_name{3, 7, {}};
  CHECK(validate_dtree(sig, 3, bad_name)[0].law == "name");

  DTree<int, int> bad_arity{3, 1, {}};
  CHECK(validate_dtree(sig, 3, bad_arity)[0].law == "arity");

  DTree<int, int> deep{3, 1, {DTree<int, int>{1, 1, {DTree<int, int>{1, 0, {}}}}}};
  Report path = validate_dtree(sig, 3, deep);
  REQUIRE(!path.empty());
  CHECK(path[0].detail.find("/0") != std::string::npos);
  CHECK_THROWS_AS((dfold<int, int, int>(
                      sig, 3, deep,
                      [](int, int, const std::vector<int>&) { return 0; })),
                  SemanticError);

  // A signature with no terminal name exhausts the search budget.
  DwSignature<int, int> endless = countdown();
  endless.names = [](int) -> std::vector<int> { return {1}; };
  endless.next_index = [](int n, int, std::size_t) { return n + 1; };
  CHECK_THROWS_AS(find_witness(endless, 0, 16), LimitError);
}

TEST_CASE("branch lists pair transport-related fiber positions") {
  SetoidFamily ne = nonext_signature();
  Tree s1 = branch(tip(), tip());
  auto br = wper_branches(ne, s1, s1);
  CHECK(br == std::vector<std::pair<Val, Val>>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});

  SetoidFamily l2 = list_signature(Setoid::codiscrete({"a", "b"}));
  CHECK(wper_branches(l2, cons(1, nil()), cons(2, nil())) ==
        std::vector<std::pair<Val, Val>>{{0, 0}});
  CHECK_THROWS_AS(wper_branches(l2, nil(), cons(1, nil())), SemanticError);
}

TEST_CASE("witnesses exist exactly where the relation holds") {
  SetoidFamily ne = nonext_signature();
  auto pool = all_well_formed(ne, 2);
  REQUIRE(pool.size() == 5);
  WperSignature sig = wper_signature(ne);
  for (const Tree& u : pool)
    for (const Tree& v : pool) {
      auto w = per_witness(ne, u, v);
      CHECK(w.has_value() == per(ne, u, v));
      if (w) CHECK(validate_dtree(sig, {u, v}, *w).empty());
    }

  Tree s1 = branch(tip(), tip());
  Tree s2 = branch(s1, s1);
  auto w1 = per_witness(ne, s1, s1);
  REQUIRE(w1.has_value());
  CHECK(nodes(*w1) == 5);
  auto w2 = per_witness(ne, s2, s2);
  REQUIRE(w2.has_value());
  CHECK(nodes(*w2) == 21);

  // The search agrees with the bottom-up construction.
  auto found = find_witness(sig, TreePair{s2, s2});
  REQUIRE(found.has_value());
  CHECK(validate_dtree(sig, {s2, s2}, *found).empty());
  CHECK_FALSE(
      find_witness(sig, TreePair{s1, branch(tip(), s1)}).has_value());
}

TEST_CASE("witnesses invert and compose") {
  SetoidFamily l2 = list_signature(Setoid::codiscrete({"a", "b"}));
  WperSignature lsig = wper_signature(l2);
  Tree la = cons(1, nil());
  Tree lb = cons(2, nil());

  auto fwd = per_witness(l2, la, lb);
  REQUIRE(fwd.has_value());
  WperWitness back = witness_sym(l2, *fwd);
  CHECK(validate_dtree(lsig, {lb, la}, back).empty());
  CHECK(nodes(back) == nodes(*fwd));

  WperWitness round = witness_trans(l2, *fwd, back);
  CHECK(validate_dtree(lsig, {la, la}, round).empty());

  SetoidFamily ne = nonext_signature();
  WperSignature nsig = wper_signature(ne);
  Tree s2 = branch(branch(tip(), tip()), branch(tip(), tip()));
  auto w = per_witness(ne, s2, s2);
  REQUIRE(w.has_value());
  WperWitness sym = witness_sym(ne, *w);
  CHECK(validate_dtree(nsig, {s2, s2}, sym).empty());
  CHECK(nodes(sym) == 21);
  WperWitness joined = witness_trans(ne, *w, sym);
  CHECK(validate_dtree(nsig, {s2, s2}, joined).empty());

  // Transitivity requires the two witnesses to share the middle tree as
  // raw data.
  CHECK_THROWS_AS(witness_trans(l2, *fwd, *fwd), SemanticError);

  WperWitness corrupt = *fwd;
  corrupt.children.clear();
  CHECK_THROWS_AS(witness_sym(l2, corrupt), SemanticError);
  CHECK_THROWS_AS(witness_trans(l2, corrupt, back), SemanticError);
}

TEST_CASE("recursive definitions carry their defining families") {
  SetoidFamily nat = nat_signature();
  Algebra count = Algebra::from_exprs(
      nat, {IntExpr{}, [] {
              IntExpr e;
              e.op = IntExpr::Op::kAdd;
              IntExpr c;
              c.op = IntExpr::Op::kChild;
              IntExpr one;
              one.lit = 1;
              e.args = {c, one};
              return e;
            }()});
  auto [k, wit] = recdef_witness(nat, count, numeral(3));
  CHECK(k == std::vector<Val>{2});
  RecDefSignature sig = recdef_signature(nat, count);
  CHECK(validate_dtree(sig, RecDefIndex{numeral(3), k}, wit).empty());

  CHECK(sig.names(RecDefIndex{numeral(3), {2}}).size() == 1);
  CHECK(sig.names(RecDefIndex{numeral(3), {5}}).empty());
  CHECK(sig.names(RecDefIndex{numeral(3), {}}).empty());
  CHECK(sig.show_index(RecDefIndex{numeral(1), {0}}) ==
        "succ(zero) with [0]");
}

TEST_CASE("table-backed search finds only the fold assignment") {
  SetoidFamily bt = bintree_signature();
  Algebra alg = Algebra::from_tables(bt, Setoid::discrete({"c0", "c1", "c2"}),
                                     {{1}, {1, 2, 0, 2, 0, 1, 0, 1, 2}});
  RecDefSignature sig = recdef_signature(bt, alg);

  Tree even = perfect(2);
  std::vector<Val> fold_table{0, 0};  // both subtrees fold to 1 + 1 + 1
  for (Val x = 0; x < 3; ++x)
    for (Val y = 0; y < 3; ++y) {
      RecDefIndex idx{even, {x, y}};
      auto found = find_witness(sig, idx);
      const bool expect = (x == fold_table[0] && y == fold_table[1]);
      CHECK(found.has_value() == expect);
      if (found) CHECK(validate_dtree(sig, idx, *found).empty());
    }

  // At the top index three coherent families match, but only the one built
  // from fold survives the descent; the search must backtrack to find it.
  auto names = sig.names(RecDefIndex{even, fold_table});
  CHECK(names.size() == 3);
  auto wit = find_witness(sig, RecDefIndex{even, fold_table});
  REQUIRE(wit.has_value());
  CHECK(wit->name == CoherentFamily{{1, 1}, {1, 1}});

  auto [k, built] = recdef_witness(bt, alg, even);
  CHECK(k == fold_table);
  CHECK(validate_dtree(sig, RecDefIndex{even, k}, built).empty());

  Tree bad = Tree{1, {leaf()}};
  CHECK_THROWS_AS(sig.names(RecDefIndex{bad, {0}}), SemanticError);
}

TEST_CASE("recursively defined assignments move along the relation") {
  SetoidFamily l2 = list_signature(Setoid::codiscrete({"a", "b"}));
  Algebra alg = Algebra::from_tables(l2, Setoid::discrete({"c0", "c1", "c2"}),
                                     {{0}, {1, 2, 0}, {1, 2, 0}});
  RecDefSignature sig = recdef_signature(l2, alg);

  Tree w = cons(1, cons(2, nil()));
  Tree w2 = cons(2, cons(1, nil()));
  auto [k, wit] = recdef_witness(l2, alg, w);
  CHECK(k == std::vector<Val>{1});
  CHECK(validate_dtree(sig, RecDefIndex{w, k}, wit).empty());

  // Reading the assignment through the base transport gives a recursively
  // defined assignment at the related tree.
  const auto& back = l2.transport(w2.name, w.name);
  std::vector<Val> moved(k.size());
  for (std::size_t s = 0; s < moved.size(); ++s)
    moved[s] = k[static_cast<std::size_t>(back[s])];
  CHECK(find_witness(sig, RecDefIndex{w2, moved}).has_value());
  CHECK_FALSE(find_witness(sig, RecDefIndex{w2, {2}}).has_value());

  SetoidFamily ne = nonext_signature();
  Algebra tips = Algebra::from_tables(ne, Setoid::discrete({"c0", "c1"}),
                                      {{1}, {0, 1, 1, 0}});
  CHECK_THROWS_AS(
      recdef_witness(ne, tips, branch(tip(), branch(tip(), tip()))),
      SemanticError);
}
