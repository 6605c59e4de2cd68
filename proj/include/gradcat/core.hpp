#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace gradcat {

using Id = std::string;
using Index = int;
inline constexpr Index kNone = -1;

// Malformed input: unknown ids, tables that are not total, duplicate ids.
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when an enumeration would exceed the configured budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Misuse of an operation, e.g. composing morphisms whose endpoints disagree.
class OperationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Budget {
  std::size_t max_objects = 64;
  std::size_t max_hom = 4096;
};

struct LawViolation {
  std::string law;
  std::vector<Id> witness;
};

struct CheckReport {
  std::vector<LawViolation> violations;
  std::size_t checked = 0;

  bool ok() const { return violations.empty(); }

  // Records one instance of a law; keeps at most `cap` violations per report.
  void expect(bool holds, const std::string& law, std::vector<Id> witness) {
    ++checked;
    if (!holds && violations.size() < cap) violations.push_back({law, std::move(witness)});
  }

  void merge(const CheckReport& other) {
    checked += other.checked;
    for (const auto& v : other.violations)
      if (violations.size() < cap) violations.push_back(v);
  }

  bool has(const std::string& law) const {
    return std::any_of(violations.begin(), violations.end(),
                       [&](const LawViolation& v) { return v.law == law; });
  }

  std::size_t cap = 64;
};

namespace detail {

inline CheckReport prefixed(CheckReport r, const std::string& prefix) {
  for (auto& v : r.violations) v.law = prefix + v.law;
  return r;
}

}  // namespace detail

inline std::string join(const std::vector<Id>& parts, const std::string& sep = ",") {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

inline void hash_combine(std::size_t& seed, std::size_t v) {
  seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

struct VectorHash {
  std::size_t operator()(const std::vector<Index>& v) const {
    std::size_t h = v.size();
    for (Index x : v) hash_combine(h, static_cast<std::size_t>(x));
    return h;
  }
};

// A finite category given by explicit tables. Morphism composition is stored
// densely as compose[g * m + f] = g.f, kNone where undefined.
struct FinCat {
  std::vector<Id> objects;
  std::vector<Id> morphisms;
  std::vector<Index> src, tgt;
  std::vector<Index> identity;
  std::vector<Index> compose_table;

  std::size_t num_objects() const { return objects.size(); }
  std::size_t num_morphisms() const { return morphisms.size(); }

  Index add_object(Id id) {
    objects.push_back(std::move(id));
    identity.push_back(kNone);
    return static_cast<Index>(objects.size() - 1);
  }

  Index add_morphism(Id id, Index s, Index t) {
    morphisms.push_back(std::move(id));
    src.push_back(s);
    tgt.push_back(t);
    return static_cast<Index>(morphisms.size() - 1);
  }

  // Allocates the composition table; call after all morphisms exist.
  void allocate() {
    compose_table.assign(morphisms.size() * morphisms.size(), kNone);
  }

  void set_compose(Index g, Index f, Index gf) {
    compose_table[static_cast<std::size_t>(g) * morphisms.size() + f] = gf;
  }

  Index compose(Index g, Index f) const {
    return compose_table[static_cast<std::size_t>(g) * morphisms.size() + f];
  }

  Index id(Index obj) const { return identity[obj]; }

  // Builds hom lists, inverses and id lookups. Throws on dangling ids.
  void finalize() {
    const auto n = static_cast<Index>(objects.size());
    const auto m = static_cast<Index>(morphisms.size());
    object_by_id.clear();
    morphism_by_id.clear();
    for (Index i = 0; i < n; ++i)
      if (!object_by_id.emplace(objects[i], i).second)
        throw StructuralError("duplicate object id '" + objects[i] + "'");
    for (Index i = 0; i < m; ++i)
      if (!morphism_by_id.emplace(morphisms[i], i).second)
        throw StructuralError("duplicate morphism id '" + morphisms[i] + "'");
    homs.assign(static_cast<std::size_t>(n) * n, {});
    into.assign(n, {});
    pos_into.assign(m, kNone);
    for (Index f = 0; f < m; ++f) {
      if (src[f] < 0 || src[f] >= n || tgt[f] < 0 || tgt[f] >= n)
        throw StructuralError("morphism '" + morphisms[f] + "' has a dangling endpoint");
      homs[static_cast<std::size_t>(src[f]) * n + tgt[f]].push_back(f);
      pos_into[f] = static_cast<Index>(into[tgt[f]].size());
      into[tgt[f]].push_back(f);
    }
    for (Index a = 0; a < n; ++a)
      if (identity[a] < 0 || identity[a] >= m)
        throw StructuralError("object '" + objects[a] + "' has no identity");
    if (compose_table.size() != static_cast<std::size_t>(m) * m)
      throw StructuralError("composition table has the wrong size");
    for (Index v : compose_table)
      if (v < kNone || v >= m) throw StructuralError("composition table has a dangling id");
    inverses.assign(m, kNone);
    for (Index f = 0; f < m; ++f)
      for (Index g : hom(tgt[f], src[f]))
        if (compose(g, f) == identity[src[f]] && compose(f, g) == identity[tgt[f]]) {
          inverses[f] = g;
          break;
        }
  }

  std::span<const Index> hom(Index a, Index b) const {
    return homs[static_cast<std::size_t>(a) * objects.size() + b];
  }

  Index inverse(Index f) const { return inverses[f]; }

  Index object_index(const Id& id) const {
    auto it = object_by_id.find(id);
    if (it == object_by_id.end()) throw StructuralError("unknown object id '" + id + "'");
    return it->second;
  }

  Index morphism_index(const Id& id) const {
    auto it = morphism_by_id.find(id);
    if (it == morphism_by_id.end()) throw StructuralError("unknown morphism id '" + id + "'");
    return it->second;
  }

  // Composes a path given in diagrammatic order: first(path[0]) then path[1] ...
  Index then(std::initializer_list<Index> path) const {
    Index acc = kNone;
    for (Index f : path) {
      if (acc == kNone) {
        acc = f;
        continue;
      }
      Index next = compose(f, acc);
      if (next == kNone)
        throw OperationError("cannot compose '" + morphisms[f] + "' after '" + morphisms[acc] + "'");
      acc = next;
    }
    return acc;
  }

  bool same_tables(const FinCat& o) const {
    return objects == o.objects && morphisms == o.morphisms && src == o.src && tgt == o.tgt &&
           identity == o.identity && compose_table == o.compose_table;
  }

  std::vector<std::vector<Index>> homs;
  std::vector<std::vector<Index>> into;
  std::vector<Index> pos_into;
  std::vector<Index> inverses;
  std::unordered_map<Id, Index> object_by_id, morphism_by_id;
};

// Category laws: typing of composites, identity, associativity. Composable
// pairs with no table entry are reported as "total".
inline CheckReport check_fincat(const FinCat& c) {
  CheckReport rep;
  const auto m = static_cast<Index>(c.num_morphisms());
  for (Index a = 0; a < static_cast<Index>(c.num_objects()); ++a) {
    Index i = c.identity[a];
    rep.expect(c.src[i] == a && c.tgt[i] == a, "identity-type", {c.objects[a], c.morphisms[i]});
  }
  for (Index g = 0; g < m; ++g)
    for (Index f = 0; f < m; ++f) {
      Index gf = c.compose(g, f);
      if (c.tgt[f] != c.src[g]) {
        if (gf != kNone) rep.expect(false, "src/tgt", {c.morphisms[g], c.morphisms[f]});
        continue;
      }
      if (gf == kNone) {
        rep.expect(false, "total", {c.morphisms[g], c.morphisms[f]});
        continue;
      }
      rep.expect(c.src[gf] == c.src[f] && c.tgt[gf] == c.tgt[g], "src/tgt",
                 {c.morphisms[g], c.morphisms[f]});
    }
  if (!rep.ok()) return rep;
  for (Index f = 0; f < m; ++f) {
    rep.expect(c.compose(f, c.identity[c.src[f]]) == f, "unit-right", {c.morphisms[f]});
    rep.expect(c.compose(c.identity[c.tgt[f]], f) == f, "unit-left", {c.morphisms[f]});
  }
  for (Index h = 0; h < m; ++h)
    for (Index g = 0; g < m; ++g) {
      if (c.tgt[g] != c.src[h]) continue;
      Index hg = c.compose(h, g);
      for (Index f = 0; f < m; ++f) {
        if (c.tgt[f] != c.src[g]) continue;
        rep.expect(c.compose(hg, f) == c.compose(h, c.compose(g, f)), "assoc",
                   {c.morphisms[h], c.morphisms[g], c.morphisms[f]});
      }
    }
  return rep;
}

// A functor between finite categories, as object and morphism maps.
struct FinFunctor {
  const FinCat* dom = nullptr;
  const FinCat* cod = nullptr;
  std::vector<Index> obj_map;
  std::vector<Index> mor_map;
};

inline CheckReport check_finfunctor(const FinFunctor& f) {
  CheckReport rep;
  const FinCat& d = *f.dom;
  const FinCat& c = *f.cod;
  for (Index m = 0; m < static_cast<Index>(d.num_morphisms()); ++m) {
    Index fm = f.mor_map[m];
    rep.expect(c.src[fm] == f.obj_map[d.src[m]] && c.tgt[fm] == f.obj_map[d.tgt[m]],
               "functor-type", {d.morphisms[m]});
  }
  for (Index a = 0; a < static_cast<Index>(d.num_objects()); ++a)
    rep.expect(f.mor_map[d.identity[a]] == c.identity[f.obj_map[a]], "functor-identity",
               {d.objects[a]});
  for (Index g = 0; g < static_cast<Index>(d.num_morphisms()); ++g)
    for (Index h = 0; h < static_cast<Index>(d.num_morphisms()); ++h) {
      Index gh = d.compose(g, h);
      if (gh == kNone) continue;
      rep.expect(f.mor_map[gh] == c.compose(f.mor_map[g], f.mor_map[h]), "functor-compose",
                 {d.morphisms[g], d.morphisms[h]});
    }
  return rep;
}

// A presheaf on a finite category: finite sets per object, elements are
// 0..size-1, and action[alpha][x] = alpha^*(x) for alpha: Y -> X, x in P(X).
struct FinPresheaf {
  std::vector<Index> sizes;
  std::vector<std::vector<Index>> action;

  std::size_t total() const {
    std::size_t t = 0;
    for (Index s : sizes) t += static_cast<std::size_t>(s);
    return t;
  }

  // Offsets for flattening (object, element) pairs.
  std::vector<std::size_t> offsets() const {
    std::vector<std::size_t> off(sizes.size() + 1, 0);
    for (std::size_t i = 0; i < sizes.size(); ++i) off[i + 1] = off[i] + sizes[i];
    return off;
  }

  bool operator==(const FinPresheaf& o) const { return sizes == o.sizes && action == o.action; }
};

// Contravariant functoriality: 1^* = id and (b.a)^* = a^* b^*.
inline CheckReport check_presheaf(const FinCat& c, const FinPresheaf& p) {
  CheckReport rep;
  if (p.sizes.size() != c.num_objects() || p.action.size() != c.num_morphisms())
    throw StructuralError("presheaf tables do not match the base category");
  for (Index a = 0; a < static_cast<Index>(c.num_morphisms()); ++a) {
    if (p.action[a].size() != static_cast<std::size_t>(p.sizes[c.tgt[a]]))
      throw StructuralError("presheaf action along '" + c.morphisms[a] + "' has the wrong domain");
    for (Index v : p.action[a]) {
      rep.expect(v >= 0 && v < p.sizes[c.src[a]], "presheaf-type", {c.morphisms[a]});
    }
  }
  if (!rep.ok()) return rep;
  for (Index x = 0; x < static_cast<Index>(c.num_objects()); ++x)
    for (Index e = 0; e < p.sizes[x]; ++e)
      rep.expect(p.action[c.identity[x]][e] == e, "presheaf-identity",
                 {c.objects[x], std::to_string(e)});
  for (Index b = 0; b < static_cast<Index>(c.num_morphisms()); ++b)
    for (Index a : c.into[c.src[b]]) {
      Index ba = c.compose(b, a);
      for (Index e = 0; e < p.sizes[c.tgt[b]]; ++e)
        rep.expect(p.action[ba][e] == p.action[a][p.action[b][e]], "presheaf-compose",
                   {c.morphisms[b], c.morphisms[a], std::to_string(e)});
    }
  return rep;
}

// Representable presheaf c(-, x); element k of y(x)(z) is c.hom(z, x)[k].
inline FinPresheaf representable(const FinCat& c, Index x) {
  FinPresheaf p;
  const auto n = static_cast<Index>(c.num_objects());
  p.sizes.resize(n);
  std::vector<std::unordered_map<Index, Index>> pos(n);
  for (Index z = 0; z < n; ++z) {
    auto h = c.hom(z, x);
    p.sizes[z] = static_cast<Index>(h.size());
    for (Index k = 0; k < static_cast<Index>(h.size()); ++k) pos[z][h[k]] = k;
  }
  p.action.resize(c.num_morphisms());
  for (Index a = 0; a < static_cast<Index>(c.num_morphisms()); ++a) {
    auto h = c.hom(c.tgt[a], x);
    for (Index f : h) p.action[a].push_back(pos[c.src[a]].at(c.compose(f, a)));
  }
  return p;
}

// Pulls a presheaf back along an endofunctor-like map on objects/morphisms:
// (q o F)(z) = q(F z), action along a is q(F a).
inline FinPresheaf pullback(const FinPresheaf& q, const std::vector<Index>& obj,
                            const std::vector<Index>& mor) {
  FinPresheaf p;
  p.sizes.resize(obj.size());
  for (std::size_t z = 0; z < obj.size(); ++z) p.sizes[z] = q.sizes[obj[z]];
  p.action.resize(mor.size());
  for (std::size_t a = 0; a < mor.size(); ++a) p.action[a] = q.action[mor[a]];
  return p;
}

// A natural transformation as one component map per object.
using NatTrans = std::vector<std::vector<Index>>;

inline std::vector<Index> flatten(const NatTrans& t) {
  std::vector<Index> out;
  for (const auto& comp : t) out.insert(out.end(), comp.begin(), comp.end());
  return out;
}

// Enumerates Nat(p, q) by backtracking over (object, element) slots, checking
// each naturality constraint as soon as both of its slots are assigned.
inline std::vector<NatTrans> nat_transformations(const FinCat& c, const FinPresheaf& p,
                                                 const FinPresheaf& q,
                                                 std::size_t limit = SIZE_MAX) {
  const auto n = static_cast<Index>(c.num_objects());
  auto off = p.offsets();
  const std::size_t slots = off.back();
  std::vector<Index> slot_obj(slots);
  for (Index x = 0; x < n; ++x)
    for (std::size_t s = off[x]; s < off[x + 1]; ++s) slot_obj[s] = x;
  for (Index x = 0; x < n; ++x)
    if (p.sizes[x] > 0 && q.sizes[x] == 0) return {};

  // Constraint: q(a)(eta_X(x)) == eta_Y(p(a)(x)) for a: Y -> X, checked at the
  // later of the two slots.
  struct Constraint {
    std::size_t other;
    Index alpha;
    bool this_is_source;  // true when this slot is x in P(X)
  };
  std::vector<std::vector<Constraint>> at(slots);
  for (Index a = 0; a < static_cast<Index>(c.num_morphisms()); ++a) {
    Index y = c.src[a], x = c.tgt[a];
    for (Index e = 0; e < p.sizes[x]; ++e) {
      std::size_t sx = off[x] + e;
      std::size_t sy = off[y] + p.action[a][e];
      if (sx >= sy)
        at[sx].push_back({sy, a, true});
      else
        at[sy].push_back({sx, a, false});
    }
  }

  std::vector<NatTrans> out;
  std::vector<Index> val(slots, kNone);
  std::function<void(std::size_t)> go = [&](std::size_t s) {
    if (out.size() >= limit) return;
    if (s == slots) {
      NatTrans t(n);
      for (Index x = 0; x < n; ++x) t[x].assign(val.begin() + off[x], val.begin() + off[x + 1]);
      out.push_back(std::move(t));
      return;
    }
    Index x = slot_obj[s];
    for (Index v = 0; v < q.sizes[x]; ++v) {
      val[s] = v;
      bool good = true;
      for (const auto& con : at[s]) {
        Index vx = con.this_is_source ? v : val[con.other];
        Index vy = con.this_is_source ? val[con.other] : v;
        if (q.action[con.alpha][vx] != vy) {
          good = false;
          break;
        }
      }
      if (good) go(s + 1);
    }
    val[s] = kNone;
  };
  go(0);
  return out;
}

inline bool is_natural(const FinCat& c, const FinPresheaf& p, const FinPresheaf& q,
                       const NatTrans& t) {
  for (Index a = 0; a < static_cast<Index>(c.num_morphisms()); ++a) {
    Index y = c.src[a], x = c.tgt[a];
    for (Index e = 0; e < p.sizes[x]; ++e)
      if (q.action[a][t[x][e]] != t[y][p.action[a][e]]) return false;
  }
  return true;
}

}  // namespace gradcat
