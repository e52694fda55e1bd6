#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "wtree/signatures.hpp"

using namespace wtree;

TEST_CASE("the numeral signature is a discrete zero/succ family") {
  SetoidFamily b = nat_signature();
  REQUIRE(b.base().size() == 2);
  CHECK(b.base().id_of(0) == "zero");
  CHECK(b.base().id_of(1) == "succ");
  CHECK_FALSE(b.base().eq(0, 1));
  CHECK(b.fiber(0).size() == 0);
  REQUIRE(b.fiber(1).size() == 1);
  CHECK(b.fiber(1).id_of(0) == "p");
  CHECK(validate_family(b).empty());
}

TEST_CASE("the binary-tree signature has a two-position node fiber") {
  SetoidFamily b = bintree_signature();
  REQUIRE(b.base().size() == 2);
  CHECK(b.base().id_of(1) == "node");
  CHECK(b.fiber(0).size() == 0);
  REQUIRE(b.fiber(1).size() == 2);
  CHECK(b.fiber(1).id_of(0) == "l");
  CHECK(b.fiber(1).id_of(1) == "r");
  CHECK_FALSE(b.fiber(1).eq(0, 1));
  CHECK(validate_family(b).empty());
}

TEST_CASE("the collapsing signature identifies its two branch positions") {
  SetoidFamily b = nonext_signature();
  CHECK(b.base().id_of(0) == "tip");
  CHECK(b.base().id_of(1) == "branch");
  CHECK_FALSE(b.base().eq(0, 1));
  REQUIRE(b.fiber(1).size() == 2);
  CHECK(b.fiber(1).eq(0, 1));
  CHECK(validate_family(b).empty());
}

TEST_CASE("list signatures inherit relatedness from the element setoid") {
  SetoidFamily same = list_signature(Setoid::codiscrete({"a", "b"}));
  REQUIRE(same.base().size() == 3);
  CHECK(same.base().id_of(0) == "nil");
  CHECK(same.base().id_of(1) == "cons_a");
  CHECK(same.base().id_of(2) == "cons_b");
  CHECK(same.base().eq(1, 2));
  CHECK_FALSE(same.base().eq(0, 1));
  CHECK(same.fiber(0).size() == 0);
  CHECK(same.fiber(1).size() == 1);
  CHECK(same.fiber(2).id_of(0) == "tl");
  REQUIRE(same.has_transport(1, 2));
  CHECK(same.transport(1, 2) == std::vector<Val>{0});
  CHECK(same.has_transport(1, 1));
  CHECK(validate_family(same).empty());

  SetoidFamily apart = list_signature(Setoid::discrete({"a", "b"}));
  CHECK_FALSE(apart.base().eq(1, 2));
  CHECK_FALSE(apart.has_transport(1, 2));
  CHECK(validate_family(apart).empty());

  CHECK_THROWS_AS(list_signature(Setoid::integers()), SemanticError);
}
