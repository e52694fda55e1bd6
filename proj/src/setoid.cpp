#include "wtree/setoid.hpp"

#include <algorithm>
#include <set>

#include "util.hpp"

namespace wtree {

namespace {

std::string pair_str(const Setoid& s, Val x, Val y) {
  return "(" + s.id_of(x) + ", " + s.id_of(y) + ")";
}

}  // namespace

Setoid Setoid::discrete(std::vector<std::string> ids) {
  Setoid s;
  const std::size_t n = ids.size();
  s.ids_ = std::move(ids);
  s.rel_.assign(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) s.rel_[i * n + i] = 1;
  return s;
}

Setoid Setoid::codiscrete(std::vector<std::string> ids) {
  Setoid s;
  const std::size_t n = ids.size();
  s.ids_ = std::move(ids);
  s.rel_.assign(n * n, 1);
  return s;
}

Setoid Setoid::from_pairs(
    std::vector<std::string> ids,
    const std::vector<std::pair<std::string, std::string>>& pairs) {
  Setoid s;
  const std::size_t n = ids.size();
  s.ids_ = std::move(ids);
  s.rel_.assign(n * n, 0);
  for (const auto& [a, b] : pairs) {
    auto x = s.find(a);
    auto y = s.find(b);
    if (!x || !y)
      throw SemanticError("relation pair (" + a + ", " + b +
                          ") references an element outside the carrier");
    s.rel_[static_cast<std::size_t>(*x) * n + static_cast<std::size_t>(*y)] = 1;
  }
  return s;
}

Setoid Setoid::from_matrix(std::vector<std::string> ids,
                           std::vector<std::uint8_t> matrix) {
  Setoid s;
  if (matrix.size() != ids.size() * ids.size())
    throw SemanticError("relation matrix does not match carrier size");
  s.ids_ = std::move(ids);
  s.rel_ = std::move(matrix);
  return s;
}

Setoid Setoid::integers() {
  Setoid s;
  s.kind_ = Kind::kBuiltinInt;
  return s;
}

std::size_t Setoid::size() const {
  if (!is_table())
    throw SemanticError("the built-in integer setoid has no finite carrier");
  return ids_.size();
}

const std::vector<std::string>& Setoid::ids() const {
  if (!is_table())
    throw SemanticError("the built-in integer setoid has no finite carrier");
  return ids_;
}

std::string Setoid::id_of(Val x) const {
  if (!is_table()) return std::to_string(x);
  if (x < 0 || static_cast<std::size_t>(x) >= ids_.size())
    throw SemanticError("element position " + std::to_string(x) +
                        " outside carrier of size " +
                        std::to_string(ids_.size()));
  return ids_[static_cast<std::size_t>(x)];
}

std::optional<Val> Setoid::find(const std::string& id) const {
  if (!is_table()) return std::nullopt;
  for (std::size_t i = 0; i < ids_.size(); ++i)
    if (ids_[i] == id) return static_cast<Val>(i);
  return std::nullopt;
}

bool Setoid::eq(Val x, Val y) const {
  if (!is_table()) return x == y;
  const std::size_t n = ids_.size();
  if (x < 0 || y < 0 || static_cast<std::size_t>(x) >= n ||
      static_cast<std::size_t>(y) >= n)
    throw SemanticError("equality query outside carrier");
  return rel_[static_cast<std::size_t>(x) * n + static_cast<std::size_t>(y)] !=
         0;
}

Val ExtFun::operator()(Val x) const {
  if (x < 0 || static_cast<std::size_t>(x) >= table.size())
    throw SemanticError("function applied outside its domain carrier");
  return table[static_cast<std::size_t>(x)];
}

SetoidFamily::SetoidFamily(
    Setoid base, std::vector<Setoid> fibers,
    std::map<std::pair<Val, Val>, std::vector<Val>> transports)
    : base_(std::move(base)),
      fibers_(std::move(fibers)),
      transports_(std::move(transports)) {
  if (!base_.is_table())
    throw SemanticError("a family base must be table-backed");
  if (fibers_.size() != base_.size())
    throw SemanticError("family needs exactly one fiber per base element");
  for (const Setoid& f : fibers_)
    if (!f.is_table())
      throw SemanticError("family fibers must be table-backed");
  // Identity is always a lawful diagonal transport; fill the ones not given.
  for (std::size_t a = 0; a < base_.size(); ++a) {
    const Val v = static_cast<Val>(a);
    if (!base_.eq(v, v) || transports_.count({v, v})) continue;
    std::vector<Val> id(fibers_[a].size());
    for (std::size_t i = 0; i < id.size(); ++i) id[i] = static_cast<Val>(i);
    transports_.emplace(std::make_pair(v, v), std::move(id));
  }
}

const Setoid& SetoidFamily::fiber(Val a) const {
  if (a < 0 || static_cast<std::size_t>(a) >= fibers_.size())
    throw SemanticError("fiber query outside the base carrier");
  return fibers_[static_cast<std::size_t>(a)];
}

bool SetoidFamily::has_transport(Val a, Val a2) const {
  return transports_.count({a, a2}) != 0;
}

const std::vector<Val>& SetoidFamily::transport(Val a, Val a2) const {
  auto it = transports_.find({a, a2});
  if (it == transports_.end())
    throw SemanticError("no transport from '" + base_.id_of(a) + "' to '" +
                        base_.id_of(a2) + "'");
  return it->second;
}

Val SetoidFamily::transport_at(Val a, Val a2, Val b) const {
  const auto& t = transport(a, a2);
  if (b < 0 || static_cast<std::size_t>(b) >= t.size())
    throw SemanticError("transport applied outside its fiber carrier");
  return t[static_cast<std::size_t>(b)];
}

Report validate_setoid(const Setoid& s) {
  Report out;
  if (!s.is_table()) {
    // Exact integer equality on a sample window; the laws cannot fail, but
    // the walk keeps the built-in setoid on the same validation path.
    for (Val x = kIntSampleLo; x <= kIntSampleHi; ++x) {
      if (!s.eq(x, x))
        out.push_back({"reflexivity", std::to_string(x)});
      for (Val y = kIntSampleLo; y <= kIntSampleHi; ++y) {
        if (s.eq(x, y) && !s.eq(y, x))
          out.push_back({"symmetry", pair_str(s, x, y)});
      }
    }
    return out;
  }
  const std::size_t n = s.size();
  std::set<std::string> seen;
  for (const std::string& id : s.ids()) {
    if (!seen.insert(id).second)
      out.push_back({"duplicate-id", "'" + id + "' appears more than once"});
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Val x = static_cast<Val>(i);
    if (!s.eq(x, x)) out.push_back({"reflexivity", s.id_of(x)});
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Val x = static_cast<Val>(i), y = static_cast<Val>(j);
      if (s.eq(x, y) && !s.eq(y, x))
        out.push_back({"symmetry", pair_str(s, x, y)});
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Val x = static_cast<Val>(i), y = static_cast<Val>(j);
      if (!s.eq(x, y)) continue;
      for (std::size_t k = 0; k < n; ++k) {
        const Val z = static_cast<Val>(k);
        if (s.eq(y, z) && !s.eq(x, z))
          out.push_back({"transitivity", "(" + s.id_of(x) + ", " + s.id_of(y) +
                                             ", " + s.id_of(z) + ")"});
      }
    }
  return out;
}

Report validate_extfun(const ExtFun& f) {
  Report out;
  if (!f.dom.is_table())
    throw SemanticError("validate_extfun needs a table-backed domain");
  const std::size_t n = f.dom.size();
  if (f.table.size() != n) {
    out.push_back({"shape", "table has " + std::to_string(f.table.size()) +
                                " entries for a carrier of " +
                                std::to_string(n)});
    return out;
  }
  if (f.cod.is_table()) {
    for (std::size_t i = 0; i < n; ++i) {
      if (f.table[i] < 0 ||
          static_cast<std::size_t>(f.table[i]) >= f.cod.size()) {
        out.push_back({"shape", "value at '" +
                                    f.dom.id_of(static_cast<Val>(i)) +
                                    "' lies outside the codomain carrier"});
        return out;
      }
    }
  }
  // One report per unordered pair; both orientations are inspected so an
  // asymmetric (invalid) domain relation still gets caught.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const Val x = static_cast<Val>(i), y = static_cast<Val>(j);
      const bool bad =
          (f.dom.eq(x, y) && !f.cod.eq(f.table[i], f.table[j])) ||
          (f.dom.eq(y, x) && !f.cod.eq(f.table[j], f.table[i]));
      if (bad) out.push_back({"extensionality", pair_str(f.dom, x, y)});
    }
  return out;
}

ExtFun identity_fun(const Setoid& x) {
  if (!x.is_table())
    throw SemanticError("identity_fun needs a table-backed setoid");
  ExtFun f{x, x, {}};
  f.table.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) f.table[i] = static_cast<Val>(i);
  return f;
}

ExtFun compose(const ExtFun& g, const ExtFun& f) {
  if (!(f.cod == g.dom))
    throw SemanticError("compose: codomain of the inner function is not the "
                        "domain of the outer one");
  ExtFun h{f.dom, g.cod, {}};
  h.table.reserve(f.table.size());
  for (Val v : f.table) h.table.push_back(g(v));
  return h;
}

std::vector<std::vector<Val>> enumerate_ext_tables(const Setoid& x,
                                                   const Setoid& y) {
  if (!x.is_table() || !y.is_table())
    throw SemanticError("function enumeration needs table-backed setoids");
  const std::size_t nx = x.size(), ny = y.size();
  std::vector<std::vector<Val>> out;
  if (nx == 0) {
    out.push_back({});
    return out;
  }
  if (ny == 0) return out;
  double budget = 1;
  for (std::size_t i = 0; i < nx; ++i) {
    budget *= static_cast<double>(ny);
    if (budget > static_cast<double>(kMaxCandidates))
      throw LimitError("function space exceeds the candidate budget");
  }
  std::vector<std::size_t> digits(nx, 0);
  do {
    bool ext = true;
    for (std::size_t i = 0; i < nx && ext; ++i)
      for (std::size_t j = i; j < nx && ext; ++j) {
        const Val xi = static_cast<Val>(i), xj = static_cast<Val>(j);
        const Val yi = static_cast<Val>(digits[i]),
                  yj = static_cast<Val>(digits[j]);
        if ((x.eq(xi, xj) && !y.eq(yi, yj)) || (x.eq(xj, xi) && !y.eq(yj, yi)))
          ext = false;
      }
    if (ext) {
      std::vector<Val> t(nx);
      for (std::size_t i = 0; i < nx; ++i) t[i] = static_cast<Val>(digits[i]);
      out.push_back(std::move(t));
    }
  } while (detail::next_tuple(digits, ny));
  return out;
}

Setoid function_setoid(const Setoid& x, const Setoid& y) {
  auto tables = enumerate_ext_tables(x, y);
  std::vector<std::string> ids;
  ids.reserve(tables.size());
  for (const auto& t : tables) {
    std::vector<std::string> parts;
    parts.reserve(t.size());
    for (Val v : t) parts.push_back(y.id_of(v));
    ids.push_back("[" + detail::join(parts, ",") + "]");
  }
  const std::size_t n = tables.size();
  std::vector<std::uint8_t> rel(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      bool same = true;
      for (std::size_t k = 0; k < tables[i].size() && same; ++k)
        if (!y.eq(tables[i][k], tables[j][k])) same = false;
      rel[i * n + j] = same ? 1 : 0;
    }
  return Setoid::from_matrix(std::move(ids), std::move(rel));
}

Setoid fiber_setoid(const ExtFun& f, Val a) {
  if (!f.dom.is_table() || !f.cod.is_table())
    throw SemanticError("fiber_setoid needs table-backed setoids");
  if (a < 0 || static_cast<std::size_t>(a) >= f.cod.size())
    throw SemanticError("fiber point outside the codomain carrier");
  std::vector<std::size_t> members;
  for (std::size_t i = 0; i < f.dom.size(); ++i)
    if (f.cod.eq(f.table[i], a)) members.push_back(i);
  std::vector<std::string> ids;
  ids.reserve(members.size());
  for (std::size_t m : members) ids.push_back(f.dom.id_of(static_cast<Val>(m)));
  const std::size_t n = members.size();
  std::vector<std::uint8_t> rel(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      rel[i * n + j] = f.dom.eq(static_cast<Val>(members[i]),
                                static_cast<Val>(members[j]))
                           ? 1
                           : 0;
  return Setoid::from_matrix(std::move(ids), std::move(rel));
}

namespace {

void validate_into(const Setoid& s, const std::string& prefix, Report& out) {
  for (Violation v : validate_setoid(s)) {
    v.detail = prefix + v.detail;
    out.push_back(std::move(v));
  }
}

}  // namespace

Report validate_family(const SetoidFamily& f) {
  Report out;
  const Setoid& base = f.base();
  validate_into(base, "base: ", out);
  const std::size_t n = base.size();
  for (std::size_t a = 0; a < n; ++a)
    validate_into(f.fiber(static_cast<Val>(a)),
                  "fiber '" + base.id_of(static_cast<Val>(a)) + "': ", out);

  // A transport is usable for law checks only if present and well-shaped.
  auto usable = [&](Val a, Val a2) {
    if (!f.has_transport(a, a2)) return false;
    const auto& t = f.transport(a, a2);
    if (t.size() != f.fiber(a).size()) return false;
    for (Val v : t)
      if (v < 0 || static_cast<std::size_t>(v) >= f.fiber(a2).size())
        return false;
    return true;
  };

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Val a = static_cast<Val>(i), a2 = static_cast<Val>(j);
      if (!base.eq(a, a2)) continue;
      const std::string pair = "(" + base.id_of(a) + " -> " + base.id_of(a2) + ")";
      if (!f.has_transport(a, a2)) {
        out.push_back({"transport-missing", pair});
        continue;
      }
      const auto& t = f.transport(a, a2);
      if (t.size() != f.fiber(a).size()) {
        out.push_back({"transport-shape",
                       pair + " has " + std::to_string(t.size()) +
                           " entries for a fiber of " +
                           std::to_string(f.fiber(a).size())});
        continue;
      }
      bool ranged = true;
      for (Val v : t)
        if (v < 0 || static_cast<std::size_t>(v) >= f.fiber(a2).size()) {
          out.push_back({"transport-shape",
                         pair + " maps outside the target fiber"});
          ranged = false;
          break;
        }
      if (!ranged) continue;
      // Extensionality of the transport itself.
      const Setoid& fa = f.fiber(a);
      const Setoid& fa2 = f.fiber(a2);
      for (std::size_t b = 0; b < fa.size(); ++b)
        for (std::size_t b2 = b; b2 < fa.size(); ++b2) {
          const Val u = static_cast<Val>(b), v = static_cast<Val>(b2);
          const bool bad =
              (fa.eq(u, v) && !fa2.eq(t[b], t[b2])) ||
              (fa.eq(v, u) && !fa2.eq(t[b2], t[b]));
          if (bad)
            out.push_back({"transport-extensionality",
                           pair + " at " + pair_str(fa, u, v)});
        }
    }

  // Identity law on the diagonal.
  for (std::size_t i = 0; i < n; ++i) {
    const Val a = static_cast<Val>(i);
    if (!base.eq(a, a) || !usable(a, a)) continue;
    const auto& t = f.transport(a, a);
    const Setoid& fa = f.fiber(a);
    for (std::size_t b = 0; b < fa.size(); ++b)
      if (!fa.eq(t[b], static_cast<Val>(b)))
        out.push_back({"transport-identity",
                       "at '" + base.id_of(a) + "', element '" +
                           fa.id_of(static_cast<Val>(b)) + "'"});
  }

  // Inverse over distinct related pairs; the diagonal instance is the
  // identity law twice.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const Val a = static_cast<Val>(i), a2 = static_cast<Val>(j);
      if (!base.eq(a, a2) || !base.eq(a2, a)) continue;
      if (!usable(a, a2) || !usable(a2, a)) continue;
      const auto& to = f.transport(a, a2);
      const auto& back = f.transport(a2, a);
      const Setoid& fa = f.fiber(a);
      for (std::size_t b = 0; b < fa.size(); ++b)
        if (!fa.eq(back[static_cast<std::size_t>(to[b])],
                   static_cast<Val>(b)))
          out.push_back({"transport-inverse",
                         "(" + base.id_of(a) + " -> " + base.id_of(a2) +
                             " -> " + base.id_of(a) + ") at '" +
                             fa.id_of(static_cast<Val>(b)) + "'"});
    }

  // Composition over pairwise-distinct triples; instances with a repeated
  // element follow from the identity/inverse laws plus extensionality.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        if (i == j || j == k || i == k) continue;
        const Val a = static_cast<Val>(i), a2 = static_cast<Val>(j),
                  a3 = static_cast<Val>(k);
        if (!base.eq(a, a2) || !base.eq(a2, a3) || !base.eq(a, a3)) continue;
        if (!usable(a, a2) || !usable(a2, a3) || !usable(a, a3)) continue;
        const auto& t12 = f.transport(a, a2);
        const auto& t23 = f.transport(a2, a3);
        const auto& t13 = f.transport(a, a3);
        const Setoid& fa3 = f.fiber(a3);
        for (std::size_t b = 0; b < t12.size(); ++b)
          if (!fa3.eq(t23[static_cast<std::size_t>(t12[b])], t13[b]))
            out.push_back(
                {"transport-composition",
                 "(" + base.id_of(a) + " -> " + base.id_of(a2) + " -> " +
                     base.id_of(a3) + ") at '" +
                     f.fiber(a).id_of(static_cast<Val>(b)) + "'"});
      }

  return out;
}

SetoidFamily function_to_family(const ExtFun& f) {
  if (!f.dom.is_table() || !f.cod.is_table())
    throw SemanticError("function_to_family needs table-backed setoids");
  const std::size_t n = f.cod.size();
  std::vector<Setoid> fibers;
  std::vector<std::vector<std::size_t>> members(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t i = 0; i < f.dom.size(); ++i)
      if (f.cod.eq(f.table[i], static_cast<Val>(a)))
        members[a].push_back(i);
    fibers.push_back(fiber_setoid(f, static_cast<Val>(a)));
  }
  // Fibers of related base points are the same subset of the domain (the
  // relation being transitively closed), so the transport matches up the
  // shared elements by identity.
  std::map<std::pair<Val, Val>, std::vector<Val>> transports;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t a2 = 0; a2 < n; ++a2) {
      if (!f.cod.eq(static_cast<Val>(a), static_cast<Val>(a2))) continue;
      std::vector<Val> t;
      t.reserve(members[a].size());
      for (std::size_t m : members[a]) {
        auto it =
            std::find(members[a2].begin(), members[a2].end(), m);
        if (it == members[a2].end())
          throw SemanticError(
              "fibers of related points differ; the function's codomain "
              "relation is not transitively closed");
        t.push_back(static_cast<Val>(it - members[a2].begin()));
      }
      transports.emplace(std::make_pair(static_cast<Val>(a),
                                        static_cast<Val>(a2)),
                         std::move(t));
    }
  return SetoidFamily(f.cod, std::move(fibers), std::move(transports));
}

ExtFun family_to_function(const SetoidFamily& f) {
  const Setoid& base = f.base();
  std::vector<std::string> ids;
  std::vector<std::pair<Val, Val>> elems;  // (base element, fiber element)
  for (std::size_t a = 0; a < base.size(); ++a) {
    const Setoid& fib = f.fiber(static_cast<Val>(a));
    for (std::size_t b = 0; b < fib.size(); ++b) {
      elems.emplace_back(static_cast<Val>(a), static_cast<Val>(b));
      ids.push_back(base.id_of(static_cast<Val>(a)) + ":" +
                    fib.id_of(static_cast<Val>(b)));
      if (elems.size() > kMaxCandidates)
        throw LimitError("total setoid exceeds the candidate budget");
    }
  }
  const std::size_t n = elems.size();
  std::vector<std::uint8_t> rel(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const auto& [a, b] = elems[i];
      const auto& [a2, b2] = elems[j];
      if (!base.eq(a, a2) || !f.has_transport(a, a2)) continue;
      rel[i * n + j] =
          f.fiber(a2).eq(f.transport_at(a, a2, b), b2) ? 1 : 0;
    }
  ExtFun out{Setoid::from_matrix(std::move(ids), std::move(rel)), base, {}};
  out.table.reserve(n);
  for (const auto& [a, b] : elems) out.table.push_back(a);
  return out;
}

}  // namespace wtree
