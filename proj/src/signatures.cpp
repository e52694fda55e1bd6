#include "wtree/signatures.hpp"

namespace wtree {

SetoidFamily nat_signature() {
  Setoid base = Setoid::discrete({"zero", "succ"});
  std::vector<Setoid> fibers{Setoid::discrete({}), Setoid::discrete({"p"})};
  return SetoidFamily(std::move(base), std::move(fibers), {});
}

SetoidFamily bintree_signature() {
  Setoid base = Setoid::discrete({"leaf", "node"});
  std::vector<Setoid> fibers{Setoid::discrete({}),
                             Setoid::discrete({"l", "r"})};
  return SetoidFamily(std::move(base), std::move(fibers), {});
}

SetoidFamily nonext_signature() {
  Setoid base = Setoid::discrete({"tip", "branch"});
  std::vector<Setoid> fibers{Setoid::discrete({}),
                             Setoid::codiscrete({"b0", "b1"})};
  return SetoidFamily(std::move(base), std::move(fibers), {});
}

SetoidFamily list_signature(const Setoid& elems) {
  if (!elems.is_table())
    throw SemanticError("list_signature needs a table-backed element setoid");
  const std::size_t n = elems.size();
  std::vector<std::string> ids{"nil"};
  for (std::size_t i = 0; i < n; ++i)
    ids.push_back("cons_" + elems.id_of(static_cast<Val>(i)));
  const std::size_t m = ids.size();
  std::vector<std::uint8_t> rel(m * m, 0);
  rel[0] = 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      rel[(i + 1) * m + (j + 1)] =
          elems.eq(static_cast<Val>(i), static_cast<Val>(j)) ? 1 : 0;
  Setoid base = Setoid::from_matrix(std::move(ids), std::move(rel));
  std::vector<Setoid> fibers{Setoid::discrete({})};
  for (std::size_t i = 0; i < n; ++i)
    fibers.push_back(Setoid::discrete({"tl"}));
  std::map<std::pair<Val, Val>, std::vector<Val>> transports;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || !elems.eq(static_cast<Val>(i), static_cast<Val>(j)))
        continue;
      transports.emplace(
          std::make_pair(static_cast<Val>(i + 1), static_cast<Val>(j + 1)),
          std::vector<Val>{0});
    }
  return SetoidFamily(std::move(base), std::move(fibers),
                      std::move(transports));
}

}  // namespace wtree
