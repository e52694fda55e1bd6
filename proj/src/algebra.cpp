#include "wtree/algebra.hpp"

#include <algorithm>

#include "util.hpp"

namespace wtree {

std::int64_t IntExpr::eval(std::span<const Val> kids) const {
  switch (op) {
    case Op::kLit:
      return lit;
    case Op::kChild:
      if (child >= kids.size())
        throw SemanticError("expression references child slot " +
                            std::to_string(child) + " of " +
                            std::to_string(kids.size()));
      return kids[child];
    default:
      break;
  }
  if (args.empty())
    throw SemanticError("operator expression with no arguments");
  std::int64_t acc = args.front().eval(kids);
  for (std::size_t i = 1; i < args.size(); ++i) {
    const std::int64_t v = args[i].eval(kids);
    switch (op) {
      case Op::kAdd: acc += v; break;
      case Op::kMul: acc *= v; break;
      case Op::kMax: acc = std::max(acc, v); break;
      case Op::kMin: acc = std::min(acc, v); break;
      default: break;
    }
  }
  return acc;
}

namespace {

std::size_t table_size_for(std::size_t target, std::size_t arity) {
  std::size_t n = 1;
  for (std::size_t i = 0; i < arity; ++i) {
    if (target != 0 && n > kMaxCandidates / target)
      throw LimitError("structure table exceeds the candidate budget");
    n *= target;
  }
  return n;
}

void check_expr(const IntExpr& e, std::size_t arity) {
  if (e.op == IntExpr::Op::kChild) {
    if (e.child >= arity)
      throw SemanticError("expression references child slot " +
                          std::to_string(e.child) +
                          " but the name has arity " + std::to_string(arity));
    return;
  }
  if (e.op == IntExpr::Op::kLit) return;
  if (e.args.empty())
    throw SemanticError("operator expression with no arguments");
  for (const IntExpr& a : e.args) check_expr(a, arity);
}

}  // namespace

Algebra Algebra::from_tables(const SetoidFamily& b, Setoid target,
                             std::vector<std::vector<Val>> tables) {
  if (!target.is_table())
    throw SemanticError("table algebras need a table-backed target");
  if (tables.size() != b.base().size())
    throw SemanticError("need exactly one table per base element");
  Algebra alg;
  alg.target_ = std::move(target);
  for (std::size_t a = 0; a < tables.size(); ++a) {
    const std::size_t arity = b.fiber(static_cast<Val>(a)).size();
    alg.arity_.push_back(arity);
    const std::size_t want = table_size_for(alg.target_.size(), arity);
    if (tables[a].size() != want)
      throw SemanticError("table for '" +
                          b.base().id_of(static_cast<Val>(a)) + "' has " +
                          std::to_string(tables[a].size()) +
                          " entries, expected " + std::to_string(want));
    for (Val v : tables[a])
      if (v < 0 || static_cast<std::size_t>(v) >= alg.target_.size())
        throw SemanticError("table value outside the target carrier");
  }
  alg.tables_ = std::move(tables);
  return alg;
}

Algebra Algebra::from_exprs(const SetoidFamily& b, std::vector<IntExpr> exprs) {
  if (exprs.size() != b.base().size())
    throw SemanticError("need exactly one expression per base element");
  Algebra alg;
  alg.target_ = Setoid::integers();
  alg.builtin_ = true;
  for (std::size_t a = 0; a < exprs.size(); ++a) {
    const std::size_t arity = b.fiber(static_cast<Val>(a)).size();
    alg.arity_.push_back(arity);
    check_expr(exprs[a], arity);
  }
  alg.exprs_ = std::move(exprs);
  return alg;
}

std::size_t Algebra::arity(Val name) const {
  if (name < 0 || static_cast<std::size_t>(name) >= arity_.size())
    throw SemanticError("structure map applied to an unknown name");
  return arity_[static_cast<std::size_t>(name)];
}

Val Algebra::apply(Val name, std::span<const Val> assignment) const {
  const std::size_t k = arity(name);
  if (assignment.size() != k)
    throw SemanticError("assignment size does not match the name's arity");
  if (builtin_) return exprs_[static_cast<std::size_t>(name)].eval(assignment);
  const std::size_t tsize = target_.size();
  std::size_t idx = 0;
  for (Val v : assignment) {
    if (v < 0 || static_cast<std::size_t>(v) >= tsize)
      throw SemanticError("assignment value outside the target carrier");
    idx = idx * tsize + static_cast<std::size_t>(v);
  }
  return tables_[static_cast<std::size_t>(name)][idx];
}

namespace {

void ensure_same_shape(const SetoidFamily& b, const Algebra& alg) {
  if (alg.names() != b.base().size())
    throw SemanticError("algebra built over a different signature");
  for (std::size_t a = 0; a < alg.names(); ++a)
    if (alg.arity(static_cast<Val>(a)) != b.fiber(static_cast<Val>(a)).size())
      throw SemanticError("algebra built over a different signature");
}

// Equality classes of a table-backed setoid, by first related member.
std::vector<std::size_t> eq_classes(const Setoid& s) {
  std::vector<std::size_t> cls(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    cls[i] = i;
    for (std::size_t j = 0; j < i; ++j)
      if (s.eq(static_cast<Val>(j), static_cast<Val>(i)) &&
          s.eq(static_cast<Val>(i), static_cast<Val>(j))) {
        cls[i] = cls[j];
        break;
      }
  }
  return cls;
}

}  // namespace

Report validate_algebra(const SetoidFamily& b, const Algebra& alg) {
  ensure_same_shape(b, alg);
  Report out;
  const Setoid& base = b.base();
  const Setoid& target = alg.target();
  for (std::size_t i = 0; i < base.size(); ++i)
    for (std::size_t j = 0; j < base.size(); ++j) {
      const Val a = static_cast<Val>(i), a2 = static_cast<Val>(j);
      if (!base.eq(a, a2) || !b.has_transport(a, a2)) continue;
      const auto& t = b.transport(a, a2);
      const Setoid& fa = b.fiber(a);
      if (!alg.is_builtin()) {
        auto ks = enumerate_ext_tables(fa, target);
        auto k2s = enumerate_ext_tables(b.fiber(a2), target);
        for (const auto& k : ks)
          for (const auto& k2 : k2s) {
            bool match = true;
            for (std::size_t s = 0; s < k.size() && match; ++s)
              if (!target.eq(k[s], k2[static_cast<std::size_t>(t[s])]))
                match = false;
            if (!match) continue;
            if (!target.eq(alg.apply(a, k), alg.apply(a2, k2)))
              out.push_back({"algebra-extensionality",
                             "names (" + base.id_of(a) + ", " +
                                 base.id_of(a2) + ") on matching assignments"});
          }
      } else {
        // Sample assignments constant on fiber equality classes; the
        // matching partner reads the same values back through the inverse
        // transport.
        const auto cls = eq_classes(fa);
        std::vector<std::size_t> reps;
        for (std::size_t s = 0; s < cls.size(); ++s)
          if (cls[s] == s) reps.push_back(s);
        const std::size_t window =
            static_cast<std::size_t>(kIntSampleHi - kIntSampleLo + 1);
        std::vector<std::size_t> digits(reps.size(), 0);
        std::size_t combos = 0;
        if (!b.has_transport(a2, a)) continue;
        const auto& back = b.transport(a2, a);
        do {
          if (++combos > 1000) break;
          std::vector<Val> k(fa.size());
          for (std::size_t s = 0; s < fa.size(); ++s) {
            const std::size_t rep =
                static_cast<std::size_t>(
                    std::find(reps.begin(), reps.end(), cls[s]) -
                    reps.begin());
            k[s] = kIntSampleLo + static_cast<Val>(digits[rep]);
          }
          std::vector<Val> k2(b.fiber(a2).size());
          for (std::size_t s2 = 0; s2 < k2.size(); ++s2)
            k2[s2] = k[static_cast<std::size_t>(back[s2])];
          bool match = true;
          for (std::size_t s = 0; s < k.size() && match; ++s)
            if (k[s] != k2[static_cast<std::size_t>(t[s])]) match = false;
          if (!match) continue;
          if (alg.apply(a, k) != alg.apply(a2, k2))
            out.push_back({"algebra-extensionality",
                           "names (" + base.id_of(a) + ", " + base.id_of(a2) +
                               ") on a sampled matching assignment"});
        } while (detail::next_tuple(digits, window));
      }
    }
  return out;
}

std::optional<Val> PolyAppliedSetoid::index_of(const PolyElem& e) const {
  for (std::size_t i = 0; i < elems.size(); ++i)
    if (elems[i] == e) return static_cast<Val>(i);
  return std::nullopt;
}

PolyAppliedSetoid poly_apply(const SetoidFamily& b, const Setoid& x) {
  if (!x.is_table())
    throw SemanticError("poly_apply needs a table-backed setoid");
  PolyAppliedSetoid out;
  out.family = b;
  out.target = x;
  std::vector<std::string> ids;
  for (std::size_t a = 0; a < b.base().size(); ++a) {
    for (auto& t : enumerate_ext_tables(b.fiber(static_cast<Val>(a)), x)) {
      std::vector<std::string> parts;
      parts.reserve(t.size());
      for (Val v : t) parts.push_back(x.id_of(v));
      ids.push_back(b.base().id_of(static_cast<Val>(a)) + "[" +
                    detail::join(parts, ",") + "]");
      out.elems.push_back(PolyElem{static_cast<Val>(a), std::move(t)});
      if (out.elems.size() > kMaxCandidates)
        throw LimitError("applied functor exceeds the candidate budget");
    }
  }
  const std::size_t n = out.elems.size();
  std::vector<std::uint8_t> rel(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      rel[i * n + j] = poly_eq(b, x, out.elems[i], out.elems[j]) ? 1 : 0;
  out.setoid = Setoid::from_matrix(std::move(ids), std::move(rel));
  return out;
}

bool poly_eq(const SetoidFamily& b, const Setoid& x, const PolyElem& u,
             const PolyElem& v) {
  if (u.name < 0 || static_cast<std::size_t>(u.name) >= b.base().size() ||
      v.name < 0 || static_cast<std::size_t>(v.name) >= b.base().size())
    throw SemanticError("applied-functor element names an unknown base "
                        "element");
  if (u.assign.size() != b.fiber(u.name).size() ||
      v.assign.size() != b.fiber(v.name).size())
    throw SemanticError("applied-functor element has the wrong arity");
  if (!b.base().eq(u.name, v.name)) return false;
  const auto& t = b.transport(u.name, v.name);
  for (std::size_t i = 0; i < u.assign.size(); ++i)
    if (!x.eq(u.assign[i], v.assign[static_cast<std::size_t>(t[i])]))
      return false;
  return true;
}

PolyElem poly_map(const SetoidFamily& b, const ExtFun& h, const PolyElem& u) {
  if (u.name < 0 || static_cast<std::size_t>(u.name) >= b.base().size())
    throw SemanticError("applied-functor element names an unknown base "
                        "element");
  PolyElem out{u.name, {}};
  out.assign.reserve(u.assign.size());
  for (Val v : u.assign) out.assign.push_back(h(v));
  return out;
}

namespace {

Val fold_rec(const SetoidFamily& b, const Algebra& alg, const Tree& w) {
  std::vector<Val> kids(w.children.size());
  for (std::size_t i = 0; i < kids.size(); ++i)
    kids[i] = fold_rec(b, alg, w.children[i]);
  return alg.apply(w.name, kids);
}

}  // namespace

Val fold(const SetoidFamily& b, const Algebra& alg, const Tree& w) {
  ensure_same_shape(b, alg);
  if (!is_extensional(b, w))
    throw SemanticError("fold: tree is not extensional");
  return fold_rec(b, alg, w);
}

Report check_coherent(const SetoidFamily& b, const Setoid& target,
                      const Tree& w, const CoherentFamily& f) {
  if (!is_extensional(b, w))
    throw SemanticError("check_coherent: tree is not extensional");
  Report out;
  const Setoid& fib = b.fiber(w.name);
  if (f.size() != fib.size()) {
    out.push_back({"shape", "family has " + std::to_string(f.size()) +
                                " slots for a fiber of " +
                                std::to_string(fib.size())});
    return out;
  }
  for (std::size_t s = 0; s < f.size(); ++s) {
    const std::size_t want = b.fiber(w.children[s].name).size();
    if (f[s].size() != want) {
      out.push_back({"shape", "slot '" + fib.id_of(static_cast<Val>(s)) +
                                  "' has " + std::to_string(f[s].size()) +
                                  " entries for a fiber of " +
                                  std::to_string(want)});
      return out;
    }
    if (target.is_table())
      for (Val v : f[s])
        if (v < 0 || static_cast<std::size_t>(v) >= target.size()) {
          out.push_back({"shape", "slot '" + fib.id_of(static_cast<Val>(s)) +
                                      "' maps outside the target carrier"});
          return out;
        }
  }
  Setoid ims = ims_setoid(b, w);
  for (std::size_t s = 0; s < f.size(); ++s)
    for (std::size_t s2 = 0; s2 < f.size(); ++s2) {
      if (!ims.eq(static_cast<Val>(s), static_cast<Val>(s2))) continue;
      const Tree& sub = w.children[s];
      const Tree& sub2 = w.children[s2];
      const auto& t = b.transport(sub.name, sub2.name);
      for (std::size_t bb = 0; bb < f[s].size(); ++bb)
        if (!target.eq(f[s][bb], f[s2][static_cast<std::size_t>(t[bb])]))
          out.push_back(
              {"coherence", "slots ('" + ims.id_of(static_cast<Val>(s)) +
                                "', '" + ims.id_of(static_cast<Val>(s2)) +
                                "') differ at fiber position '" +
                                b.fiber(sub.name).id_of(static_cast<Val>(bb)) +
                                "'"});
    }
  return out;
}

std::vector<Val> recursive_step(const SetoidFamily& b, const Algebra& alg,
                                const Tree& w, const CoherentFamily& f) {
  ensure_same_shape(b, alg);
  Report r = check_coherent(b, alg.target(), w, f);
  if (!r.empty())
    throw SemanticError("recursive_step: family is not coherent: " +
                        r.front().detail);
  std::vector<Val> out(f.size());
  for (std::size_t s = 0; s < f.size(); ++s)
    out[s] = alg.apply(w.children[s].name, f[s]);
  return out;
}

CoherentFamily transport_cohfamily(const SetoidFamily& b, const Algebra& alg,
                                   const Tree& w, const Tree& w2,
                                   const CoherentFamily& f) {
  if (!per(b, w, w2) || !per(b, w2, w))
    throw SemanticError("transport_cohfamily: trees are not related");
  Report r = check_coherent(b, alg.target(), w, f);
  if (!r.empty())
    throw SemanticError("transport_cohfamily: family is not coherent: " +
                        r.front().detail);
  const auto& back = b.transport(w2.name, w.name);
  CoherentFamily out(w2.children.size());
  for (std::size_t s2 = 0; s2 < out.size(); ++s2) {
    const std::size_t s = static_cast<std::size_t>(back[s2]);
    const Tree& sub2 = w2.children[s2];
    const Tree& sub = w.children[s];
    const auto& tf = b.transport(sub2.name, sub.name);
    out[s2].resize(b.fiber(sub2.name).size());
    for (std::size_t bb = 0; bb < out[s2].size(); ++bb)
      out[s2][bb] = f[s][static_cast<std::size_t>(tf[bb])];
  }
  return out;
}

std::vector<Val> restrict_map(const SetoidFamily& b, const ExtFun& h,
                              const TruncatedWSetoid& trunc, const Tree& w) {
  if (!(trunc.family == b))
    throw SemanticError("restrict_map: truncation over a different family");
  if (!(h.dom == trunc.setoid))
    throw SemanticError("restrict_map: map not defined on the truncation");
  if (depth(w) > trunc.depth)
    throw SemanticError("restrict_map: tree deeper than the truncation");
  if (!is_extensional(b, w))
    throw SemanticError("restrict_map: tree is not extensional");
  std::vector<Val> out;
  out.reserve(w.children.size());
  for (const Tree& c : w.children) {
    auto idx = trunc.index_of(c);
    if (!idx)
      throw SemanticError("restrict_map: subtree missing from the truncation");
    out.push_back(h.table[static_cast<std::size_t>(*idx)]);
  }
  return out;
}

PolyElem comprehend(const SetoidFamily& b, const Algebra& alg,
                    const ImsFamily& fam, const Tree& w) {
  ensure_same_shape(b, alg);
  if (!is_extensional(b, w))
    throw SemanticError("comprehend: tree is not extensional");
  std::vector<Val> fw = fam(w);
  const Setoid& fib = b.fiber(w.name);
  if (fw.size() != fib.size())
    throw SemanticError("comprehend: family value has the wrong arity at " +
                        display_key(b, w));
  Setoid ims = ims_setoid(b, w);
  for (std::size_t s = 0; s < fw.size(); ++s)
    for (std::size_t s2 = s + 1; s2 < fw.size(); ++s2) {
      const bool related = ims.eq(static_cast<Val>(s), static_cast<Val>(s2)) ||
                           ims.eq(static_cast<Val>(s2), static_cast<Val>(s));
      if (related && !alg.target().eq(fw[s], fw[s2]))
        throw SemanticError(
            "comprehend: family at " + display_key(b, w) +
            " does not respect subtree equality at positions ('" +
            fib.id_of(static_cast<Val>(s)) + "', '" +
            fib.id_of(static_cast<Val>(s2)) + "')");
    }
  return PolyElem{w.name, std::move(fw)};
}

MorphismResult is_algebra_morphism(const SetoidFamily& b, const Algebra& alg,
                                   const std::vector<Val>& h,
                                   const TruncatedWSetoid& trunc) {
  ensure_same_shape(b, alg);
  if (!(trunc.family == b))
    throw SemanticError("is_algebra_morphism: truncation over a different "
                        "family");
  if (h.size() != trunc.trees.size())
    throw SemanticError("is_algebra_morphism: map not total on the "
                        "truncation");
  if (alg.target().is_table())
    for (Val v : h)
      if (v < 0 || static_cast<std::size_t>(v) >= alg.target().size())
        throw SemanticError("is_algebra_morphism: value outside the target "
                            "carrier");
  const std::size_t n = h.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool related =
          trunc.setoid.eq(static_cast<Val>(i), static_cast<Val>(j)) ||
          trunc.setoid.eq(static_cast<Val>(j), static_cast<Val>(i));
      if (related && !alg.target().eq(h[i], h[j]))
        return {false, "not extensional", trunc.trees[i]};
    }
  for (std::size_t i = 0; i < n; ++i) {
    const Tree& w = trunc.trees[i];
    std::vector<Val> kids(w.children.size());
    for (std::size_t c = 0; c < kids.size(); ++c) {
      auto idx = trunc.index_of(w.children[c]);
      if (!idx)
        throw SemanticError("is_algebra_morphism: subtree missing from the "
                            "truncation");
      kids[c] = h[static_cast<std::size_t>(*idx)];
    }
    if (!alg.target().eq(h[i], alg.apply(w.name, kids)))
      return {false, "square", w};
  }
  return {true, "", std::nullopt};
}

bool uniqueness_check(const SetoidFamily& b, const Algebra& alg,
                      const std::vector<Val>& h,
                      const TruncatedWSetoid& trunc) {
  MorphismResult m = is_algebra_morphism(b, alg, h, trunc);
  if (!m.ok)
    throw SemanticError("uniqueness_check: map is not an algebra morphism (" +
                        m.reason + ")");
  for (std::size_t i = 0; i < h.size(); ++i)
    if (!alg.target().eq(h[i], fold(b, alg, trunc.trees[i]))) return false;
  return true;
}

}  // namespace wtree
