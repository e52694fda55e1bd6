#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "test_util.hpp"
#include "wtree/setoid.hpp"

using namespace wtree;

namespace {

std::set<std::string> laws(const Report& r) {
  std::set<std::string> out;
  for (const auto& v : r) out.insert(v.law);
  return out;
}

}  // namespace

TEST_CASE("constructors and lookups") {
  Setoid d = Setoid::discrete({"x", "y"});
  CHECK(d.size() == 2);
  CHECK(d.eq(0, 0));
  CHECK_FALSE(d.eq(0, 1));
  CHECK(d.find("y") == Val{1});
  CHECK_FALSE(d.find("z").has_value());
  CHECK(d.id_of(0) == "x");

  Setoid c = Setoid::codiscrete({"x", "y"});
  CHECK(c.eq(0, 1));

  Setoid p = Setoid::from_pairs({"a", "b"}, {{"a", "a"}});
  CHECK(p.eq(0, 0));
  CHECK_FALSE(p.eq(1, 1));
  CHECK_THROWS_AS(Setoid::from_pairs({"a"}, {{"a", "z"}}), SemanticError);

  Setoid z = Setoid::integers();
  CHECK(z.eq(5, 5));
  CHECK_FALSE(z.eq(5, 6));
  CHECK_FALSE(z.is_table());
  CHECK_THROWS_AS(z.size(), SemanticError);
  CHECK_FALSE(z.find("5").has_value());
  CHECK(z.id_of(-3) == "-3");
}

TEST_CASE("setoid validation isolates each law") {
  CHECK(validate_setoid(Setoid::discrete({"a", "b"})).empty());
  CHECK(validate_setoid(Setoid::codiscrete({"a", "b", "c"})).empty());
  CHECK(validate_setoid(Setoid::integers()).empty());

  Report refl = validate_setoid(Setoid::from_pairs({"a", "b"}, {{"a", "a"}}));
  REQUIRE(refl.size() == 1);
  CHECK(refl[0].law == "reflexivity");
  CHECK(refl[0].detail == "b");

  Report sym = validate_setoid(
      Setoid::from_pairs({"a", "b"}, {{"a", "a"}, {"b", "b"}, {"a", "b"}}));
  CHECK(laws(sym) == std::set<std::string>{"symmetry"});

  Report trans = validate_setoid(Setoid::from_pairs(
      {"a", "b", "c"}, {{"a", "a"}, {"b", "b"}, {"c", "c"},
                        {"a", "b"}, {"b", "a"}, {"b", "c"}, {"c", "b"}}));
  CHECK(laws(trans) == std::set<std::string>{"transitivity"});
  CHECK(trans.size() == 2);

  Report dup = validate_setoid(Setoid::discrete({"u", "u"}));
  REQUIRE(dup.size() == 1);
  CHECK(dup[0].law == "duplicate-id");
}

TEST_CASE("extensional function validation") {
  Setoid d2 = Setoid::discrete({"x", "y"});
  Setoid c2 = Setoid::codiscrete({"p", "q"});

  CHECK(validate_extfun(identity_fun(c2)).empty());

  ExtFun bad{c2, d2, {0, 1}};
  Report r = validate_extfun(bad);
  REQUIRE(r.size() == 1);
  CHECK(r[0].law == "extensionality");
  CHECK(r[0].detail == "(p, q)");

  ExtFun short_table{d2, d2, {0}};
  CHECK(laws(validate_extfun(short_table)) == std::set<std::string>{"shape"});
  ExtFun ranged{d2, d2, {0, 5}};
  CHECK(laws(validate_extfun(ranged)) == std::set<std::string>{"shape"});

  // Built-in codomain skips the range check and compares values exactly.
  ExtFun into_ints{c2, Setoid::integers(), {7, 7}};
  CHECK(validate_extfun(into_ints).empty());
  ExtFun bad_ints{c2, Setoid::integers(), {7, 8}};
  CHECK(!validate_extfun(bad_ints).empty());
}

TEST_CASE("composition follows tables") {
  Setoid d3 = Setoid::discrete({"a", "b", "c"});
  Setoid d2 = Setoid::discrete({"x", "y"});
  ExtFun f{d3, d2, {0, 1, 0}};
  ExtFun g{d2, d2, {1, 0}};
  ExtFun h = compose(g, f);
  CHECK(h.table == std::vector<Val>{1, 0, 1});
  CHECK(h.dom == d3);
  CHECK(h.cod == d2);
  CHECK_THROWS_AS(compose(f, f), SemanticError);
  CHECK(f(1) == 1);
  CHECK_THROWS_AS(f(9), SemanticError);
}

TEST_CASE("function space enumeration is ordered and extensional") {
  Setoid d1 = Setoid::discrete({"o"});
  Setoid d2 = Setoid::discrete({"x", "y"});
  Setoid c2 = Setoid::codiscrete({"p", "q"});

  auto t1 = enumerate_ext_tables(d1, d2);
  CHECK(t1 == std::vector<std::vector<Val>>{{0}, {1}});

  // A codiscrete domain into a discrete codomain admits only constants.
  auto t2 = enumerate_ext_tables(c2, d2);
  CHECK(t2 == std::vector<std::vector<Val>>{{0, 0}, {1, 1}});

  auto t3 = enumerate_ext_tables(d2, c2);
  CHECK(t3.size() == 4);

  Setoid fs = function_setoid(c2, d2);
  CHECK(fs.size() == 2);
  CHECK(fs.ids() == std::vector<std::string>{"[x,x]", "[y,y]"});
  CHECK_FALSE(fs.eq(0, 1));

  Setoid fs2 = function_setoid(d2, c2);
  CHECK(fs2.size() == 4);
  CHECK(fs2.eq(0, 3));

  Setoid d0 = Setoid::discrete({});
  CHECK(enumerate_ext_tables(d0, d2).size() == 1);
  CHECK(enumerate_ext_tables(d2, d0).empty());
}

TEST_CASE("fiber setoids restrict the domain") {
  Setoid d3 = Setoid::discrete({"n0", "n1", "n2"});
  Setoid d2 = Setoid::discrete({"even", "odd"});
  ExtFun f{d3, d2, {0, 1, 0}};
  Setoid fib = fiber_setoid(f, 0);
  CHECK(fib.ids() == std::vector<std::string>{"n0", "n2"});
  CHECK(fib.eq(0, 0));
  CHECK_FALSE(fib.eq(0, 1));
  CHECK(fiber_setoid(f, 1).size() == 1);
  CHECK_THROWS_AS(fiber_setoid(f, 9), SemanticError);
}

TEST_CASE("family validation accepts the example signatures") {
  CHECK(validate_family(nat_signature()).empty());
  CHECK(validate_family(bintree_signature()).empty());
  CHECK(validate_family(nonext_signature()).empty());
  CHECK(validate_family(list_signature(Setoid::codiscrete({"a", "b"})))
            .empty());
  CHECK(validate_family(list_signature(Setoid::discrete({"a", "b"}))).empty());
}

TEST_CASE("family validation isolates the transport laws") {
  Setoid single = Setoid::discrete({"u"});

  SetoidFamily missing(Setoid::codiscrete({"a", "b"}), {single, single},
                       {{{0, 1}, {0}}});
  Report r1 = validate_family(missing);
  REQUIRE(r1.size() == 1);
  CHECK(r1[0].law == "transport-missing");
  CHECK(r1[0].detail == "(b -> a)");

  // A diagonal transport that permutes equality classes: extensional and
  // involutive, so only the identity law can object.
  Setoid four = Setoid::from_pairs(
      {"u", "v", "x", "y"},
      {{"u", "u"}, {"v", "v"}, {"x", "x"}, {"y", "y"},
       {"u", "v"}, {"v", "u"}, {"x", "y"}, {"y", "x"}});
  SetoidFamily swapped(Setoid::discrete({"a"}), {four},
                       {{{0, 0}, {2, 3, 0, 1}}});
  Report r2 = validate_family(swapped);
  CHECK(laws(r2) == std::set<std::string>{"transport-identity"});
  CHECK(r2.size() == 4);

  // Collapsing two discrete points loses information: the round trip
  // cannot return to where it started.
  SetoidFamily collapsed(Setoid::codiscrete({"a", "b"}),
                         {Setoid::discrete({"u", "v"}), Setoid::discrete({"x"})},
                         {{{0, 1}, {0, 0}}, {{1, 0}, {0}}});
  Report r3 = validate_family(collapsed);
  REQUIRE(r3.size() == 1);
  CHECK(r3[0].law == "transport-inverse");

  SetoidFamily unrelated_images(
      Setoid::codiscrete({"a", "b"}),
      {Setoid::codiscrete({"u", "v"}), Setoid::discrete({"x", "y"})},
      {{{0, 1}, {0, 1}}, {{1, 0}, {0, 1}}});
  Report r4 = validate_family(unrelated_images);
  REQUIRE(r4.size() == 1);
  CHECK(r4[0].law == "transport-extensionality");

  Setoid pair = Setoid::discrete({"u", "v"});
  std::map<std::pair<Val, Val>, std::vector<Val>> ts;
  std::vector<Val> id{0, 1}, swap{1, 0};
  ts[{0, 1}] = id;
  ts[{1, 0}] = id;
  ts[{1, 2}] = id;
  ts[{2, 1}] = id;
  ts[{0, 2}] = swap;
  ts[{2, 0}] = swap;
  SetoidFamily skewed(Setoid::codiscrete({"a", "b", "c"}), {pair, pair, pair},
                      ts);
  Report r5 = validate_family(skewed);
  CHECK(laws(r5) == std::set<std::string>{"transport-composition"});
  CHECK(r5.size() == 12);

  SetoidFamily dup_fiber(Setoid::discrete({"a", "b"}),
                         {Setoid::codiscrete({"u", "u"}), Setoid::discrete({})},
                         {});
  Report r6 = validate_family(dup_fiber);
  REQUIRE(r6.size() == 1);
  CHECK(r6[0].law == "duplicate-id");
  CHECK(r6[0].detail.starts_with("fiber 'a': "));

  SetoidFamily bad_shape(Setoid::codiscrete({"a", "b"}), {single, single},
                         {{{0, 1}, {0, 0}}, {{1, 0}, {0}}});
  CHECK(laws(validate_family(bad_shape)) ==
        std::set<std::string>{"transport-shape"});
}

TEST_CASE("family constructor demands one table-backed fiber per point") {
  CHECK_THROWS_AS(SetoidFamily(Setoid::discrete({"a"}), {}, {}),
                  SemanticError);
  CHECK_THROWS_AS(SetoidFamily(Setoid::integers(), {}, {}), SemanticError);
  CHECK_THROWS_AS(
      SetoidFamily(Setoid::discrete({"a"}), {Setoid::integers()}, {}),
      SemanticError);

  // Diagonal transports are filled with the identity when absent.
  SetoidFamily f(Setoid::discrete({"a"}), {Setoid::discrete({"u", "v"})}, {});
  CHECK(f.has_transport(0, 0));
  CHECK(f.transport(0, 0) == std::vector<Val>{0, 1});
  CHECK(f.transport_at(0, 0, 1) == 1);
  CHECK_THROWS_AS(f.transport(0, 1), SemanticError);
}

TEST_CASE("functions and families convert both ways") {
  Setoid d3 = Setoid::discrete({"n0", "n1", "n2"});
  Setoid d2 = Setoid::discrete({"even", "odd"});
  ExtFun f{d3, d2, {0, 1, 0}};

  SetoidFamily fam = function_to_family(f);
  CHECK(validate_family(fam).empty());
  CHECK(fam.fiber(0).ids() == std::vector<std::string>{"n0", "n2"});
  CHECK(fam.fiber(1).ids() == std::vector<std::string>{"n1"});

  ExtFun g = family_to_function(fam);
  CHECK(g.dom.ids() ==
        std::vector<std::string>{"even:n0", "even:n2", "odd:n1"});
  CHECK(g.table == std::vector<Val>{0, 0, 1});
  CHECK(validate_extfun(g).empty());

  // A codiscrete codomain makes every fiber the whole domain.
  Setoid c2 = Setoid::codiscrete({"p", "q"});
  ExtFun h{d3, c2, {0, 1, 0}};
  SetoidFamily fam2 = function_to_family(h);
  CHECK(validate_family(fam2).empty());
  CHECK(fam2.fiber(0).size() == 3);
  CHECK(fam2.fiber(1).size() == 3);
  ExtFun g2 = family_to_function(fam2);
  CHECK(g2.dom.size() == 6);
  CHECK(validate_extfun(g2).empty());

  SetoidFamily lists = list_signature(Setoid::codiscrete({"a", "b"}));
  ExtFun g3 = family_to_function(lists);
  CHECK(g3.dom.ids() == std::vector<std::string>{"cons_a:tl", "cons_b:tl"});
  CHECK(g3.table == std::vector<Val>{1, 2});
  CHECK(g3.dom.eq(0, 1));
  CHECK(validate_extfun(g3).empty());
}
