#pragma once

#include <map>
#include <tuple>

#include "gradcat/constructions.hpp"

namespace gradcat {

// The base of a V-W-bigraded category: V x reverse(W).
struct BigradedBase {
  MonCatPtr left;       // V
  MonCatPtr right;      // W
  MonCatPtr right_rev;  // reverse(W)
  MonCatPtr product;    // V x reverse(W)

  Index grade(Index x, Index xr) const { return x * static_cast<Index>(right->n()) + xr; }
  Index mor(Index a, Index b) const { return a * static_cast<Index>(right->m()) + b; }
  Index left_part(Index g) const { return g / static_cast<Index>(right->n()); }
  Index right_part(Index g) const { return g % static_cast<Index>(right->n()); }
};

inline BigradedBase bigraded_base(const MonCatPtr& v, const MonCatPtr& w) {
  auto wr = make_ptr(reverse(*w));
  return {v, w, wr, make_ptr(product(*v, *wr))};
}

// A V-W-bigraded category: left graded over V x W^rev, with its left view
// (grades (X, I)) and right view (grades (I, X')) obtained by change of base.
// Square components and diagonals are element indices of `cat`.
struct BigradedCat {
  BigradedBase base;
  GradedPtr cat;
  GradedPtr left_view, right_view;
  std::vector<Index> to_left, to_right;  // cat element -> view element or kNone

  const GradedCat& c() const { return *cat; }

  Index left_grade(Index e) const { return base.left_part(cat->elems[e].grade); }
  Index right_grade(Index e) const { return base.right_part(cat->elems[e].grade); }
  bool in_left(Index e) const { return to_left[e] != kNone; }
  bool in_right(Index e) const { return to_right[e] != kNone; }

  // Composition in the left view: g o f for f, g at grades (X, I), (Y, I).
  Index compose_left(Index g, Index f) const {
    if (!in_left(g) || !in_left(f)) throw OperationError("left composition needs left-view elements");
    return left_view->origin[left_view->compose(to_left[g], to_left[f])];
  }
  // Composition in the right view: g o f at grade X' @ Y' for f at X', g at Y'.
  Index compose_right(Index g, Index f) const {
    if (!in_right(g) || !in_right(f)) throw OperationError("right composition needs right-view elements");
    return right_view->origin[right_view->compose(to_right[g], to_right[f])];
  }
};

inline BigradedCat make_bigraded(const BigradedBase& base, GradedPtr c) {
  if (!c->base->same_tables(*base.product))
    throw StructuralError("bigraded category '" + c->name + "' is not graded over V x W^rev");
  BigradedCat b;
  b.base = base;
  b.cat = c;
  b.left_view = make_ptr(change_base(inclusion_left(base.left, base.right_rev, base.product), *c));
  b.right_view = make_ptr(change_base(inclusion_right(base.left, base.right_rev, base.product), *c));
  b.to_left.assign(c->num_elems(), kNone);
  b.to_right.assign(c->num_elems(), kNone);
  for (Index e = 0; e < static_cast<Index>(b.left_view->num_elems()); ++e) b.to_left[b.left_view->origin[e]] = e;
  for (Index e = 0; e < static_cast<Index>(b.right_view->num_elems()); ++e)
    b.to_right[b.right_view->origin[e]] = e;
  return b;
}

// Projections V x W -> V and V x W -> W; strict monoidal.
inline OpmonFunctor projection_left(const MonCatPtr& v, const MonCatPtr& w, const MonCatPtr& p) {
  OpmonFunctor f{p, v, {}, {}, {}, v->id(v->unit)};
  const auto nw = static_cast<Index>(w->n()), mw = static_cast<Index>(w->m());
  for (Index s = 0; s < static_cast<Index>(p->n()); ++s) f.obj_map.push_back(s / nw);
  for (Index a = 0; a < static_cast<Index>(p->m()); ++a) f.mor_map.push_back(a / mw);
  for (Index y = 0; y < static_cast<Index>(p->n()); ++y)
    for (Index x = 0; x < static_cast<Index>(p->n()); ++x)
      f.delta.push_back(v->id(v->tensor(y / nw, x / nw)));
  return f;
}

inline OpmonFunctor projection_right(const MonCatPtr& v, const MonCatPtr& w, const MonCatPtr& p) {
  OpmonFunctor f{p, w, {}, {}, {}, w->id(w->unit)};
  const auto nw = static_cast<Index>(w->n()), mw = static_cast<Index>(w->m());
  for (Index s = 0; s < static_cast<Index>(p->n()); ++s) f.obj_map.push_back(s % nw);
  for (Index a = 0; a < static_cast<Index>(p->m()); ++a) f.mor_map.push_back(a % mw);
  for (Index y = 0; y < static_cast<Index>(p->n()); ++y)
    for (Index x = 0; x < static_cast<Index>(p->n()); ++x)
      f.delta.push_back(w->id(w->tensor(y % nw, x % nw)));
  return f;
}

// A left V-graded category as a V-1-bigraded category.
inline BigradedCat as_left_bigraded(const GradedPtr& c) {
  BigradedBase base = bigraded_base(c->base, make_ptr(terminal_base()));
  return make_bigraded(base, make_ptr(change_base(projection_left(base.left, base.right_rev, base.product), *c)));
}

// A right W-graded category (stored over W^rev) as a 1-W-bigraded category.
inline BigradedCat as_right_bigraded(const GradedPtr& c, const MonCatPtr& w) {
  if (!c->base->same_tables(reverse(*w))) throw StructuralError("right graded category is not over W^rev");
  BigradedBase base = bigraded_base(make_ptr(terminal_base()), w);
  return make_bigraded(base,
                       make_ptr(change_base(projection_right(base.left, base.right_rev, base.product), *c)));
}

// (f, g, phi, phi2) with f : X'A -> A', g : X'B -> B' in the left view and
// phi : A'X' -> B, phi2 : A''X' -> B' in the right view.
struct Square {
  Index f = kNone, g = kNone, phi = kNone, phi2 = kNone;
  bool operator==(const Square&) const = default;
};

inline bool square_shape_ok(const BigradedCat& b, const Square& s) {
  const GradedCat& c = b.c();
  if (!b.in_left(s.f) || !b.in_left(s.g) || !b.in_right(s.phi) || !b.in_right(s.phi2)) return false;
  const auto &f = c.elems[s.f], &g = c.elems[s.g], &p = c.elems[s.phi], &q = c.elems[s.phi2];
  return f.grade == g.grade && p.grade == q.grade && p.src == f.src && p.tgt == g.src &&
         q.src == f.tgt && q.tgt == g.tgt;
}

namespace detail {
inline void require_shape(const BigradedCat& b, const Square& s) {
  if (!square_shape_ok(b, s)) throw StructuralError("quadruple does not have the shape of a square");
}
}  // namespace detail

// The two sides of the square equation at grade (X, X'):
// (r_X^-1, r_X'^-1)^*(g o phi) and (l_X^-1, l_X'^-1)^*(phi2 o f), with the
// unitors of V and W.
inline std::pair<Index, Index> square_sides(const BigradedCat& b, const Square& s) {
  detail::require_shape(b, s);
  const GradedCat& c = b.c();
  const FinMonCat& v = *b.base.left;
  const FinMonCat& w = *b.base.right;
  Index x = b.left_grade(s.f), xr = b.right_grade(s.phi);
  Index lhs = c.reindex(b.base.mor(v.inv(v.r(x)), w.inv(w.r(xr))), c.compose(s.g, s.phi));
  Index rhs = c.reindex(b.base.mor(v.inv(v.l(x)), w.inv(w.l(xr))), c.compose(s.phi2, s.f));
  return {lhs, rhs};
}

// The diagonal of s if s is a bigraded square.
inline std::optional<Index> is_bigraded_square(const BigradedCat& b, const Square& s) {
  auto [lhs, rhs] = square_sides(b, s);
  if (lhs != rhs) return std::nullopt;
  return lhs;
}

// The same condition for a category graded over a product V1 x V2, written
// with the unitors of the factors: (r^1, l^2)^-1 on g o phi, (l^1, r^2)^-1 on
// phi2 o f. Grades are split by the product layout of `product`.
inline bool is_product_graded_square(const GradedCat& c, const FinMonCat& v1, const FinMonCat& v2,
                                     const Square& s) {
  const auto n2 = static_cast<Index>(v2.n()), m2 = static_cast<Index>(v2.m());
  Index x = c.elems[s.f].grade / n2, xr = c.elems[s.phi].grade % n2;
  Index lhs = c.reindex(v1.inv(v1.r(x)) * m2 + v2.inv(v2.l(xr)), c.compose(s.g, s.phi));
  Index rhs = c.reindex(v1.inv(v1.l(x)) * m2 + v2.inv(v2.r(xr)), c.compose(s.phi2, s.f));
  return lhs == rhs;
}

inline Index square_diagonal(const BigradedCat& b, const Square& s) {
  auto d = is_bigraded_square(b, s);
  if (!d) throw OperationError("not a bigraded square");
  return *d;
}

// Componentwise reindexing along alpha : Y -> X in V and beta : Y' -> X' in W.
inline Square reindex_square(const BigradedCat& b, const Square& s, Index alpha, Index beta) {
  const GradedCat& c = b.c();
  Index ia = b.base.mor(alpha, b.base.right->id(b.base.right->unit));
  Index ib = b.base.mor(b.base.left->id(b.base.left->unit), beta);
  return {c.reindex(ia, s.f), c.reindex(ia, s.g), c.reindex(ib, s.phi), c.reindex(ib, s.phi2)};
}

// s = (f, g, phi, phi2) and t = (g, h, psi, psi2) -> (f, h, psi o phi, psi2 o phi2).
inline Square paste_horizontal(const BigradedCat& b, const Square& s, const Square& t) {
  if (s.g != t.f) throw OperationError("horizontal pasting needs a shared edge");
  return {s.f, t.g, b.compose_right(t.phi, s.phi), b.compose_right(t.phi2, s.phi2)};
}

// s = (f, g, phi, phi2) and t = (f2, g2, phi2, phi3) -> (f2 o f, g2 o g, phi, phi3).
inline Square paste_vertical(const BigradedCat& b, const Square& s, const Square& t) {
  if (s.phi2 != t.phi) throw OperationError("vertical pasting needs a shared edge");
  return {b.compose_left(t.f, s.f), b.compose_left(t.g, s.g), s.phi, t.phi2};
}

// The 2x2 grid s | t over s2 | t2 pasted in both directions:
// (f2 o f, h2 o h, psi o phi, psi3 o phi3).
inline Square paste_both(const BigradedCat& b, const Square& s, const Square& t, const Square& s2,
                         const Square& t2) {
  return paste_horizontal(b, paste_vertical(b, s, s2), paste_vertical(b, t, t2));
}

enum class PasteMode { horizontal, vertical, both };

// Images of a square under a graded functor between bigraded categories.
inline Square map_square(const GradedFunctor& F, const Square& s) {
  return {F.elem_map[s.f], F.elem_map[s.g], F.elem_map[s.phi], F.elem_map[s.phi2]};
}

// C*: the W^rev-V^rev-bigraded category obtained by swapping the factors.
// Element indices and ids agree with those of c.
inline BigradedCat swap_bigraded(const BigradedCat& b) {
  auto vr = make_ptr(reverse(*b.base.left));
  BigradedBase sb = bigraded_base(b.base.right_rev, vr);
  OpmonFunctor sw = swap_factors(sb.left, sb.right_rev, sb.product, b.base.product);
  GradedCat s = change_base(sw, b.c());
  s.name = toggle_suffix(b.c().name, "*");
  return make_bigraded(sb, make_ptr(std::move(s)));
}

inline Square flip(const Square& s) { return {s.phi, s.phi2, s.f, s.g}; }

// All squares of b, grouped by nothing in particular; intended for small
// categories only.
inline std::vector<Square> all_squares(const BigradedCat& b) {
  const GradedCat& c = b.c();
  std::vector<Square> out;
  std::vector<Index> lefts, rights;
  for (Index e = 0; e < static_cast<Index>(c.num_elems()); ++e) {
    if (b.in_left(e)) lefts.push_back(e);
    if (b.in_right(e)) rights.push_back(e);
  }
  for (Index f : lefts)
    for (Index phi : rights) {
      if (c.elems[phi].src != c.elems[f].src) continue;
      for (Index g : lefts) {
        if (c.elems[g].grade != c.elems[f].grade || c.elems[g].src != c.elems[phi].tgt) continue;
        for (Index phi2 : rights) {
          if (c.elems[phi2].grade != c.elems[phi].grade || c.elems[phi2].src != c.elems[f].tgt ||
              c.elems[phi2].tgt != c.elems[g].tgt)
            continue;
          Square s{f, g, phi, phi2};
          if (is_bigraded_square(b, s).has_value()) out.push_back(s);
        }
      }
    }
  return out;
}

// V as a V-V-bigraded category: hom((X, X'), A, B) = V((X@A)@X', B).
inline BigradedCat self_bigraded(const MonCatPtr& vp) {
  const FinMonCat& v = *vp;
  BigradedBase base = bigraded_base(vp, vp);
  GradedCat c;
  c.name = "self2(" + v.name + ")";
  c.base = base.product;
  const auto n = static_cast<Index>(v.n()), m = static_cast<Index>(v.m());
  for (Index a = 0; a < n; ++a) c.add_object(v.cat.objects[a]);
  using W = Word;
  std::map<std::tuple<Index, Index, Index>, Index> at;  // (grade, A, morphism)
  std::vector<Index> payload;
  for (Index x = 0; x < n; ++x)
    for (Index xr = 0; xr < n; ++xr)
      for (Index a = 0; a < n; ++a) {
        Index s = v.tensor(v.tensor(x, a), xr);
        for (Index mor = 0; mor < m; ++mor)
          if (v.src(mor) == s) {
            Index g = base.grade(x, xr);
            at[{g, a, mor}] = c.add_elem("(" + v.cat.objects[x] + "," + v.cat.objects[xr] + ")'" +
                                             v.cat.objects[a] + ":" + v.cat.morphisms[mor],
                                         g, a, v.tgt(mor));
            payload.push_back(mor);
          }
      }
  c.index();
  c.allocate();
  for (Index a = 0; a < n; ++a) {
    Index k = canonical_iso(v, W::of(W::of(W::unit(), W::leaf(a)), W::unit()), W::leaf(a));
    c.identity[a] = at.at({base.grade(v.unit, v.unit), a, k});
  }
  const FinMonCat& p = *base.product;
  for (Index f = 0; f < static_cast<Index>(c.num_elems()); ++f) {
    const auto& ef = c.elems[f];
    for (Index ab : p.cat.into[ef.grade]) {
      Index alpha = ab / m, beta = ab % m;
      Index mor = v.comp(payload[f], v.tensor_m(v.tensor_m(alpha, v.id(ef.src)), beta));
      c.set_reindex(ab, f, at.at({p.src(ab), ef.src, mor}));
    }
  }
  for (Index g = 0; g < static_cast<Index>(c.num_elems()); ++g)
    for (Index f : c.into_obj[c.elems[g].src]) {
      Index y = base.left_part(c.elems[g].grade), yr = base.right_part(c.elems[g].grade);
      Index x = base.left_part(c.elems[f].grade), xr = base.right_part(c.elems[f].grade);
      Index a = c.elems[f].src;
      Index kappa = canonical_iso(
          v, W::of(W::of(W::of(W::leaf(y), W::leaf(x)), W::leaf(a)), W::of(W::leaf(xr), W::leaf(yr))),
          W::of(W::of(W::leaf(y), W::of(W::of(W::leaf(x), W::leaf(a)), W::leaf(xr))), W::leaf(yr)));
      Index mor = v.comp(payload[g],
                         v.comp(v.tensor_m(v.tensor_m(v.id(y), payload[f]), v.id(yr)), kappa));
      c.set_compose(g, f, at.at({base.grade(v.tensor(y, x), v.tensor(xr, yr)), a, mor}));
    }
  c.finalize();
  return make_bigraded(base, make_ptr(std::move(c)));
}

// A finite, named family of presheaves on V. For every declared grade (X, Y)
// the family must contain P((X @ -) @ Y) for each of its members P.
struct PresheafObjects {
  MonCatPtr base;
  std::vector<Id> names;
  std::vector<FinPresheaf> values;
  std::vector<std::pair<Index, Index>> declared_grades;

  Index find(const FinPresheaf& p) const {
    for (std::size_t i = 0; i < values.size(); ++i)
      if (values[i] == p) return static_cast<Index>(i);
    return kNone;
  }

  Index require(const FinPresheaf& p, const std::string& what) const {
    Index i = find(p);
    if (i == kNone) throw StructuralError("presheaf " + what + " is not among the chosen presheaf objects");
    return i;
  }

  Index add(Id name, FinPresheaf p) {
    Index i = find(p);
    if (i != kNone) return i;
    names.push_back(std::move(name));
    values.push_back(std::move(p));
    return static_cast<Index>(values.size() - 1);
  }
};

// Presheaf bigraded category: elements of hom((X, Y), P, Q) are natural
// transformations P => Q((X @ -) @ Y). `flat[e]` lists the components of
// element e object by object.
struct PresheafBigraded {
  BigradedCat bigraded;
  PresheafObjects objects;
  std::vector<std::vector<Index>> flat;

  // phi_Z(p) for element e.
  Index component(Index e, Index z, Index p) const {
    const auto& src = objects.values[bigraded.c().elems[e].src];
    std::size_t off = 0;
    for (Index k = 0; k < z; ++k) off += static_cast<std::size_t>(src.sizes[k]);
    return flat[e][off + p];
  }
};

// Q((X @ -) @ Y) as a presheaf on V.
inline FinPresheaf shifted(const FinMonCat& v, const FinPresheaf& q, Index x, Index y) {
  std::vector<Index> obj, mor;
  for (Index z = 0; z < static_cast<Index>(v.n()); ++z) obj.push_back(v.tensor(v.tensor(x, z), y));
  for (Index g = 0; g < static_cast<Index>(v.m()); ++g)
    mor.push_back(v.tensor_m(v.tensor_m(v.id(x), g), v.id(y)));
  return pullback(q, obj, mor);
}

inline PresheafBigraded presheaf_bigraded(const PresheafObjects& objs, const Budget& budget = {}) {
  const MonCatPtr& vp = objs.base;
  const FinMonCat& v = *vp;
  BigradedBase base = bigraded_base(vp, vp);
  const FinMonCat& p = *base.product;
  const auto n = static_cast<Index>(v.n()), m = static_cast<Index>(v.m());
  const auto np = static_cast<Index>(objs.values.size());
  for (const auto& q : objs.values) {
    auto rep = check_presheaf(v.cat, q);
    if (!rep.ok()) throw StructuralError("presheaf object violates " + rep.violations.front().law);
  }
  for (auto [x, y] : objs.declared_grades)
    for (std::size_t i = 0; i < objs.values.size(); ++i)
      objs.require(shifted(v, objs.values[i], x, y),
                   objs.names[i] + "((" + v.cat.objects[x] + " @ -) @ " + v.cat.objects[y] + ")");
  PresheafBigraded out;
  out.objects = objs;
  GradedCat c;
  c.name = "presheaves(" + v.name + ")";
  c.base = base.product;
  for (const auto& name : objs.names) c.add_object(name);
  std::vector<std::unordered_map<std::vector<Index>, Index, VectorHash>> lookup(
      static_cast<std::size_t>(n) * n * np * np);
  auto slot = [&](Index grade, Index a, Index b) { return (static_cast<std::size_t>(grade) * np + a) * np + b; };
  for (Index x = 0; x < n; ++x)
    for (Index y = 0; y < n; ++y) {
      Index grade = base.grade(x, y);
      std::size_t at_grade = 0;
      for (Index b = 0; b < np; ++b) {
        FinPresheaf target = shifted(v, objs.values[b], x, y);
        for (Index a = 0; a < np; ++a) {
          auto ts = nat_transformations(v.cat, objs.values[a], target, budget.max_hom + 1 - at_grade);
          at_grade += ts.size();
          if (at_grade > budget.max_hom)
            throw BudgetExceeded("presheaf hom at grade (" + v.cat.objects[x] + "," + v.cat.objects[y] +
                                 ") exceeds " + std::to_string(budget.max_hom));
          for (std::size_t k = 0; k < ts.size(); ++k) {
            auto fl = flatten(ts[k]);
            Index e = c.add_elem(objs.names[a] + "=>" + objs.names[b] + "@(" + v.cat.objects[x] + "," +
                                     v.cat.objects[y] + ")#" + std::to_string(k),
                                 grade, a, b);
            lookup[slot(grade, a, b)].emplace(fl, e);
            out.flat.push_back(std::move(fl));
          }
        }
      }
    }
  c.index();
  c.allocate();
  std::vector<std::vector<std::size_t>> offs;
  for (const auto& q : objs.values) offs.push_back(q.offsets());
  auto find = [&](Index grade, Index a, Index b, const std::vector<Index>& fl) {
    auto it = lookup[slot(grade, a, b)].find(fl);
    if (it == lookup[slot(grade, a, b)].end())
      throw std::logic_error("presheaf composite is not natural");
    return it->second;
  };
  using W = Word;
  for (Index a = 0; a < np; ++a) {
    const auto& q = objs.values[a];
    std::vector<Index> fl;
    for (Index z = 0; z < n; ++z) {
      Index k = canonical_iso(v, W::of(W::of(W::unit(), W::leaf(z)), W::unit()), W::leaf(z));
      for (Index e = 0; e < q.sizes[z]; ++e) fl.push_back(q.action[k][e]);
    }
    c.identity[a] = find(base.grade(v.unit, v.unit), a, a, fl);
  }
  for (Index e = 0; e < static_cast<Index>(c.num_elems()); ++e) {
    const auto& el = c.elems[e];
    const auto& src = objs.values[el.src];
    const auto& tgt = objs.values[el.tgt];
    for (Index ab : p.cat.into[el.grade]) {
      Index alpha = ab / m, beta = ab % m;
      std::vector<Index> fl(out.flat[e].size());
      for (Index z = 0; z < n; ++z) {
        Index mor = v.tensor_m(v.tensor_m(alpha, v.id(z)), beta);
        for (Index k = 0; k < src.sizes[z]; ++k) {
          std::size_t i = offs[el.src][z] + k;
          fl[i] = tgt.action[mor][out.flat[e][i]];
        }
      }
      c.set_reindex(ab, e, find(p.src(ab), el.src, el.tgt, fl));
    }
  }
  std::map<std::tuple<Index, Index, Index, Index, Index>, Index> kappa_cache;
  auto kappa = [&](Index x2, Index x, Index z, Index y, Index y2) {
    auto key = std::make_tuple(x2, x, z, y, y2);
    auto it = kappa_cache.find(key);
    if (it != kappa_cache.end()) return it->second;
    Index k = canonical_iso(
        v, W::of(W::of(W::of(W::leaf(x2), W::leaf(x)), W::leaf(z)), W::of(W::leaf(y), W::leaf(y2))),
        W::of(W::of(W::leaf(x2), W::of(W::of(W::leaf(x), W::leaf(z)), W::leaf(y))), W::leaf(y2)));
    kappa_cache.emplace(key, k);
    return k;
  };
  for (Index g = 0; g < static_cast<Index>(c.num_elems()); ++g)
    for (Index f : c.into_obj[c.elems[g].src]) {
      const auto& ef = c.elems[f];
      const auto& eg = c.elems[g];
      Index x = base.left_part(ef.grade), y = base.right_part(ef.grade);
      Index x2 = base.left_part(eg.grade), y2 = base.right_part(eg.grade);
      const auto& src = objs.values[ef.src];
      const auto& last = objs.values[eg.tgt];
      std::vector<Index> fl(out.flat[f].size());
      for (Index z = 0; z < n; ++z) {
        Index w = v.tensor(v.tensor(x, z), y);
        Index k = kappa(x2, x, z, y, y2);
        for (Index e = 0; e < src.sizes[z]; ++e) {
          std::size_t i = offs[ef.src][z] + e;
          Index q = out.flat[f][i];
          Index r = out.flat[g][offs[eg.src][w] + q];
          fl[i] = last.action[k][r];
        }
      }
      c.set_compose(g, f, find(p.tensor(eg.grade, ef.grade), ef.src, eg.tgt, fl));
    }
  c.finalize();
  out.bigraded = make_bigraded(base, make_ptr(std::move(c)));
  return out;
}

}  // namespace gradcat
