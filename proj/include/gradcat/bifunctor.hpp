#pragma once

#include "gradcat/funcat.hpp"

namespace gradcat {

// A graded sesquifunctor F : A, B -> C with A left V-graded, B right W-graded
// (stored over W^rev) and C V-W-bigraded. Element values are indices into
// c.cat.
struct Sesquifunctor {
  GradedPtr a, b;
  BigradedCat c;
  std::vector<Index> obj;    // A * |ob B| + B
  std::vector<Index> left;   // F(f, B) at f * |ob B| + B
  std::vector<Index> right;  // F(A, g) at A * |B| + g

  Index nb() const { return static_cast<Index>(b->num_objects()); }
  Index eb() const { return static_cast<Index>(b->num_elems()); }
  Index at(Index x, Index y) const { return obj[x * nb() + y]; }
  Index on_left(Index f, Index y) const { return left[f * nb() + y]; }
  Index on_right(Index x, Index g) const { return right[x * eb() + g]; }

  bool same_data(const Sesquifunctor& o) const { return obj == o.obj && left == o.left && right == o.right; }
};

namespace detail {

inline GradedPtr rebased(const GradedCat& view, const MonCatPtr& base) {
  GradedCat c = view;
  c.base = base;
  return make_ptr(std::move(c));
}

}  // namespace detail

// F(-, B) as a functor into the left view and F(A, -) into the right view.
inline GradedFunctor left_partial(const Sesquifunctor& F, Index y, const GradedPtr& left_view) {
  GradedFunctor g{F.a, left_view, {}, {}};
  for (Index x = 0; x < static_cast<Index>(F.a->num_objects()); ++x) g.obj_map.push_back(F.at(x, y));
  for (Index f = 0; f < static_cast<Index>(F.a->num_elems()); ++f) g.elem_map.push_back(F.c.to_left[F.on_left(f, y)]);
  return g;
}

inline GradedFunctor right_partial(const Sesquifunctor& F, Index x, const GradedPtr& right_view) {
  GradedFunctor g{F.b, right_view, {}, {}};
  for (Index y = 0; y < F.nb(); ++y) g.obj_map.push_back(F.at(x, y));
  for (Index e = 0; e < F.eb(); ++e) g.elem_map.push_back(F.c.to_right[F.on_right(x, e)]);
  return g;
}

inline CheckReport check_sesquifunctor(const Sesquifunctor& F) {
  CheckReport rep;
  const auto na = static_cast<Index>(F.a->num_objects());
  for (Index v : F.left) rep.expect(v >= 0 && F.c.in_left(v), "partial-left-shape", {});
  for (Index v : F.right) rep.expect(v >= 0 && F.c.in_right(v), "partial-right-shape", {});
  if (!rep.ok()) return rep;
  auto lv = detail::rebased(*F.c.left_view, F.a->base);
  auto rv = detail::rebased(*F.c.right_view, F.b->base);
  auto tag = [](CheckReport r, const std::string& side, const Id& at) {
    for (auto& v : r.violations) {
      v.law = side + ":" + v.law;
      v.witness.insert(v.witness.begin(), at);
    }
    return r;
  };
  for (Index y = 0; y < F.nb(); ++y)
    rep.merge(tag(check_graded_functor(left_partial(F, y, lv)), "partial-left", F.b->objects[y]));
  for (Index x = 0; x < na; ++x)
    rep.merge(tag(check_graded_functor(right_partial(F, x, rv)), "partial-right", F.a->objects[x]));
  return rep;
}

// F_fg = (F(f,B), F(f,B'), F(A,g), F(A',g)) and its diagonal when it is a
// bigraded square.
inline Square sesqui_square(const Sesquifunctor& F, Index f, Index g) {
  const auto& ef = F.a->elems[f];
  const auto& eg = F.b->elems[g];
  return {F.on_left(f, eg.src), F.on_left(f, eg.tgt), F.on_right(ef.src, g), F.on_right(ef.tgt, g)};
}

inline std::optional<Index> commutes_under(const Sesquifunctor& F, Index f, Index g) {
  return is_bigraded_square(F.c, sesqui_square(F, f, g));
}

inline CheckReport check_bifunctor(const Sesquifunctor& F, bool use_generators = true) {
  CheckReport rep = check_sesquifunctor(F);
  if (!rep.ok()) return rep;
  std::vector<Index> fs, gs;
  if (use_generators) {
    fs = generating_set(*F.a);
    gs = generating_set(*F.b);
  } else {
    fs.resize(F.a->num_elems());
    std::iota(fs.begin(), fs.end(), 0);
    gs.resize(F.b->num_elems());
    std::iota(gs.begin(), gs.end(), 0);
  }
  for (Index f : fs)
    for (Index g : gs)
      rep.expect(commutes_under(F, f, g).has_value(), "bifunctor-commute", {F.a->elem_ids[f], F.b->elem_ids[g]});
  return rep;
}

// A box B: objects (A, B), elements (f, g), everything componentwise.
struct BigradedProduct {
  GradedPtr a, b;
  BigradedCat cat;

  Index obj(Index x, Index y) const { return x * static_cast<Index>(b->num_objects()) + y; }
  Index elem(Index f, Index g) const { return f * static_cast<Index>(b->num_elems()) + g; }
};

inline BigradedProduct bigraded_product(const GradedPtr& a, const GradedPtr& b) {
  BigradedBase base = bigraded_base(a->base, make_ptr(reverse(*b->base)));
  const auto nb = static_cast<Index>(b->num_objects()), eb = static_cast<Index>(b->num_elems());
  const auto ng = static_cast<Index>(b->base->n()), mg = static_cast<Index>(b->base->m());
  GradedCat c;
  c.name = a->name + "[x]" + b->name;
  c.base = base.product;
  for (const auto& x : a->objects)
    for (const auto& y : b->objects) c.add_object("(" + x + "," + y + ")");
  for (Index f = 0; f < static_cast<Index>(a->num_elems()); ++f)
    for (Index g = 0; g < eb; ++g) {
      const auto &ef = a->elems[f], &eg = b->elems[g];
      c.add_elem("(" + a->elem_ids[f] + "," + b->elem_ids[g] + ")", ef.grade * ng + eg.grade,
                 ef.src * nb + eg.src, ef.tgt * nb + eg.tgt);
    }
  c.index();
  c.allocate();
  for (Index x = 0; x < static_cast<Index>(a->num_objects()); ++x)
    for (Index y = 0; y < nb; ++y) c.identity[x * nb + y] = a->identity[x] * eb + b->identity[y];
  const FinMonCat& p = *base.product;
  for (Index e = 0; e < static_cast<Index>(c.num_elems()); ++e) {
    Index f = e / eb, g = e % eb;
    for (Index ab : p.cat.into[c.elems[e].grade])
      c.set_reindex(ab, e, a->reindex(ab / mg, f) * eb + b->reindex(ab % mg, g));
  }
  for (Index e2 = 0; e2 < static_cast<Index>(c.num_elems()); ++e2)
    for (Index e : c.into_obj[c.elems[e2].src])
      c.set_compose(e2, e, a->compose(e2 / eb, e / eb) * eb + b->compose(e2 % eb, e % eb));
  c.finalize();
  return {a, b, make_bigraded(base, make_ptr(std::move(c)))};
}

// Pair : A, B -> A box B with Pair(f, B) = (f, i_B) and Pair(A, g) = (i_A, g).
inline Sesquifunctor pair_bifunctor(const BigradedProduct& p) {
  Sesquifunctor F{p.a, p.b, p.cat, {}, {}, {}};
  const auto na = static_cast<Index>(p.a->num_objects()), nb = static_cast<Index>(p.b->num_objects());
  for (Index x = 0; x < na; ++x)
    for (Index y = 0; y < nb; ++y) F.obj.push_back(p.obj(x, y));
  for (Index f = 0; f < static_cast<Index>(p.a->num_elems()); ++f)
    for (Index y = 0; y < nb; ++y) F.left.push_back(p.elem(f, p.b->identity[y]));
  for (Index x = 0; x < na; ++x)
    for (Index g = 0; g < static_cast<Index>(p.b->num_elems()); ++g) F.right.push_back(p.elem(p.a->identity[x], g));
  return F;
}

// G(f, g) = diagonal of F_fg.
inline GradedFunctor to_product(const Sesquifunctor& F, const BigradedProduct& p) {
  GradedFunctor G{p.cat.cat, F.c.cat, F.obj, {}};
  for (Index f = 0; f < static_cast<Index>(F.a->num_elems()); ++f)
    for (Index g = 0; g < F.eb(); ++g) {
      auto d = commutes_under(F, f, g);
      if (!d) throw OperationError("not a bifunctor: '" + F.a->elem_ids[f] + "' does not commute with '" +
                                   F.b->elem_ids[g] + "'");
      G.elem_map.push_back(*d);
    }
  return G;
}

inline Sesquifunctor from_product(const GradedFunctor& G, const BigradedProduct& p, const BigradedCat& c) {
  Sesquifunctor F{p.a, p.b, c, G.obj_map, {}, {}};
  const auto na = static_cast<Index>(p.a->num_objects()), nb = static_cast<Index>(p.b->num_objects());
  for (Index f = 0; f < static_cast<Index>(p.a->num_elems()); ++f)
    for (Index y = 0; y < nb; ++y) F.left.push_back(G.elem_map[p.elem(f, p.b->identity[y])]);
  for (Index x = 0; x < na; ++x)
    for (Index g = 0; g < static_cast<Index>(p.b->num_elems()); ++g)
      F.right.push_back(G.elem_map[p.elem(p.a->identity[x], g)]);
  return F;
}

namespace detail {

inline Index find_functor(const FunctorCategory& fc, const std::vector<Index>& elem_map) {
  for (Index i = 0; i < static_cast<Index>(fc.functors.size()); ++i)
    if (fc.functors[i].elem_map == elem_map) return i;
  throw OperationError("functor is not an object of the functor category");
}

inline Index find_family(const FunctorCategory& fc, Index grade, Index src, Index tgt,
                         const std::vector<Index>& fam) {
  for (Index e : fc.cat->hom(grade, src, tgt))
    if (fc.components[e] == fam) return e;
  throw OperationError("family is not a morphism of the functor category");
}

}  // namespace detail

// F# : A -> [B, C], A |-> F(A, -), f |-> (F(f, B))_B. `bc` is the right-source
// category [B, C].
inline GradedFunctor to_left(const Sesquifunctor& F, const FunctorCategory& bc) {
  GradedFunctor H{F.a, bc.cat, {}, {}};
  for (Index x = 0; x < static_cast<Index>(F.a->num_objects()); ++x) {
    std::vector<Index> em(F.right.begin() + x * F.eb(), F.right.begin() + (x + 1) * F.eb());
    H.obj_map.push_back(detail::find_functor(bc, em));
  }
  for (Index f = 0; f < static_cast<Index>(F.a->num_elems()); ++f) {
    std::vector<Index> fam(F.left.begin() + f * F.nb(), F.left.begin() + (f + 1) * F.nb());
    const auto& el = F.a->elems[f];
    H.elem_map.push_back(detail::find_family(bc, el.grade, H.obj_map[el.src], H.obj_map[el.tgt], fam));
  }
  return H;
}

inline Sesquifunctor from_left(const GradedFunctor& H, const FunctorCategory& bc) {
  Sesquifunctor F{H.dom, bc.spec.source, bc.spec.target, {}, {}, {}};
  for (Index x : H.obj_map) F.obj.insert(F.obj.end(), bc.functors[x].obj_map.begin(), bc.functors[x].obj_map.end());
  for (Index e : H.elem_map) F.left.insert(F.left.end(), bc.components[e].begin(), bc.components[e].end());
  for (Index x : H.obj_map)
    F.right.insert(F.right.end(), bc.functors[x].elem_map.begin(), bc.functors[x].elem_map.end());
  return F;
}

// F_flat : B -> [A, C], B |-> F(-, B), g |-> (F(A, g))_A. `ac` is the
// left-source category [A, C].
inline GradedFunctor to_right(const Sesquifunctor& F, const FunctorCategory& ac) {
  GradedFunctor K{F.b, ac.cat, {}, {}};
  const auto na = static_cast<Index>(F.a->num_objects()), ea = static_cast<Index>(F.a->num_elems());
  for (Index y = 0; y < F.nb(); ++y) {
    std::vector<Index> em;
    for (Index f = 0; f < ea; ++f) em.push_back(F.on_left(f, y));
    K.obj_map.push_back(detail::find_functor(ac, em));
  }
  for (Index g = 0; g < F.eb(); ++g) {
    std::vector<Index> fam;
    for (Index x = 0; x < na; ++x) fam.push_back(F.on_right(x, g));
    const auto& el = F.b->elems[g];
    K.elem_map.push_back(detail::find_family(ac, el.grade, K.obj_map[el.src], K.obj_map[el.tgt], fam));
  }
  return K;
}

inline Sesquifunctor from_right(const GradedFunctor& K, const FunctorCategory& ac) {
  Sesquifunctor F{ac.spec.source, K.dom, ac.spec.target, {}, {}, {}};
  const auto na = static_cast<Index>(F.a->num_objects()), ea = static_cast<Index>(F.a->num_elems());
  const auto nb = static_cast<Index>(K.obj_map.size());
  F.obj.resize(static_cast<std::size_t>(na) * nb);
  F.left.resize(static_cast<std::size_t>(ea) * nb);
  F.right.resize(static_cast<std::size_t>(na) * K.elem_map.size());
  for (Index y = 0; y < nb; ++y) {
    const auto& G = ac.functors[K.obj_map[y]];
    for (Index x = 0; x < na; ++x) F.obj[x * nb + y] = G.obj_map[x];
    for (Index f = 0; f < ea; ++f) F.left[f * nb + y] = G.elem_map[f];
  }
  const auto eb = static_cast<Index>(K.elem_map.size());
  for (Index g = 0; g < eb; ++g)
    for (Index x = 0; x < na; ++x) F.right[x * eb + g] = ac.components[K.elem_map[g]][x];
  return F;
}

// F^swap : B, A -> C* with F^swap(-, A) = F(A, -) and F^swap(B, -) = F(-, B).
inline Sesquifunctor swap(const Sesquifunctor& F, const BigradedCat& star) {
  Sesquifunctor S{F.b, F.a, star, {}, {}, {}};
  const auto na = static_cast<Index>(F.a->num_objects()), ea = static_cast<Index>(F.a->num_elems());
  for (Index y = 0; y < F.nb(); ++y)
    for (Index x = 0; x < na; ++x) S.obj.push_back(F.at(x, y));
  for (Index g = 0; g < F.eb(); ++g)
    for (Index x = 0; x < na; ++x) S.left.push_back(F.on_right(x, g));
  for (Index y = 0; y < F.nb(); ++y)
    for (Index f = 0; f < ea; ++f) S.right.push_back(F.on_left(f, y));
  return S;
}

inline Sesquifunctor swap(const Sesquifunctor& F) { return swap(F, swap_bigraded(F.c)); }

// Ev : [B, C], B -> C with Ev(F, B) = FB.
inline Sesquifunctor evaluation(const FunctorCategory& bc) {
  if (bc.spec.side != Side::right_source) throw OperationError("evaluation needs a right-source functor category");
  Sesquifunctor F{bc.cat, bc.spec.source, bc.spec.target, {}, {}, {}};
  for (const auto& G : bc.functors) F.obj.insert(F.obj.end(), G.obj_map.begin(), G.obj_map.end());
  for (const auto& fam : bc.components) F.left.insert(F.left.end(), fam.begin(), fam.end());
  for (const auto& G : bc.functors) F.right.insert(F.right.end(), G.elem_map.begin(), G.elem_map.end());
  return F;
}

// All sesquifunctors A, B -> C, optionally only the bifunctors. Partial
// functors are enumerated separately and matched on objects.
inline std::vector<Sesquifunctor> enumerate_sesquifunctors(const GradedPtr& a, const GradedPtr& b,
                                                           const BigradedCat& c, bool bifunctors_only,
                                                           const Budget& budget = {}) {
  auto lefts = enumerate_functors(a, detail::rebased(*c.left_view, a->base), budget);
  auto rights = enumerate_functors(b, detail::rebased(*c.right_view, b->base), budget);
  const auto na = static_cast<Index>(a->num_objects()), nb = static_cast<Index>(b->num_objects());
  std::vector<Sesquifunctor> out;
  std::vector<Index> lc(nb), rc(na);
  std::function<void(Index)> pick_right;
  auto emit = [&] {
    Sesquifunctor F{a, b, c, {}, {}, {}};
    for (Index x = 0; x < na; ++x)
      for (Index y = 0; y < nb; ++y) F.obj.push_back(lefts[lc[y]].obj_map[x]);
    for (Index f = 0; f < static_cast<Index>(a->num_elems()); ++f)
      for (Index y = 0; y < nb; ++y) F.left.push_back(c.left_view->origin[lefts[lc[y]].elem_map[f]]);
    for (Index x = 0; x < na; ++x)
      for (Index g = 0; g < static_cast<Index>(b->num_elems()); ++g)
        F.right.push_back(c.right_view->origin[rights[rc[x]].elem_map[g]]);
    if (bifunctors_only && !check_bifunctor(F).ok()) return;
    if (out.size() >= budget.max_objects)
      throw BudgetExceeded("more than " + std::to_string(budget.max_objects) + " sesquifunctors");
    out.push_back(std::move(F));
  };
  pick_right = [&](Index x) {
    if (x == na) {
      emit();
      return;
    }
    for (Index r = 0; r < static_cast<Index>(rights.size()); ++r) {
      bool ok = true;
      for (Index y = 0; y < nb && ok; ++y) ok = rights[r].obj_map[y] == lefts[lc[y]].obj_map[x];
      if (!ok) continue;
      rc[x] = r;
      pick_right(x + 1);
    }
  };
  std::function<void(Index)> pick_left = [&](Index y) {
    if (y == nb) {
      pick_right(0);
      return;
    }
    for (Index l = 0; l < static_cast<Index>(lefts.size()); ++l) {
      lc[y] = l;
      pick_left(y + 1);
    }
  };
  pick_left(0);
  return out;
}

// Transformations theta : F => G of sesquifunctors: unit-grade components
// theta_AB natural in each variable.
inline std::vector<std::vector<Index>> bifunctor_transformations(const Sesquifunctor& F, const Sesquifunctor& G) {
  const BigradedCat& c = F.c;
  const FinMonCat& v = *c.base.left;
  const FinMonCat& w = *c.base.right_rev;
  const GradedCat& lv = *c.left_view;
  const GradedCat& rv = *c.right_view;
  const auto na = static_cast<Index>(F.a->num_objects()), nb = F.nb();
  const Index unit = c.base.grade(v.unit, c.base.right->unit);
  std::vector<std::vector<Index>> out;
  std::vector<Index> theta(static_cast<std::size_t>(na) * nb, kNone);
  auto natural = [&](Index slot) {
    Index x = slot / nb, y = slot % nb;
    // in A, for f with both endpoints assigned at this B
    for (Index f = 0; f < static_cast<Index>(F.a->num_elems()); ++f) {
      const auto& el = F.a->elems[f];
      if (el.src * nb + y > slot || el.tgt * nb + y > slot || (el.src != x && el.tgt != x)) continue;
      Index lhs = lv.reindex(v.inv(v.l(el.grade)),
                             lv.compose(c.to_left[theta[el.tgt * nb + y]], c.to_left[F.on_left(f, y)]));
      Index rhs = lv.reindex(v.inv(v.r(el.grade)),
                             lv.compose(c.to_left[G.on_left(f, y)], c.to_left[theta[el.src * nb + y]]));
      if (lhs != rhs) return false;
    }
    for (Index g = 0; g < F.eb(); ++g) {
      const auto& el = F.b->elems[g];
      if (x * nb + el.src > slot || x * nb + el.tgt > slot || (el.src != y && el.tgt != y)) continue;
      Index lhs = rv.reindex(w.inv(w.l(el.grade)),
                             rv.compose(c.to_right[theta[x * nb + el.tgt]], c.to_right[F.on_right(x, g)]));
      Index rhs = rv.reindex(w.inv(w.r(el.grade)),
                             rv.compose(c.to_right[G.on_right(x, g)], c.to_right[theta[x * nb + el.src]]));
      if (lhs != rhs) return false;
    }
    return true;
  };
  std::function<void(Index)> go = [&](Index slot) {
    if (slot == na * nb) {
      out.push_back(theta);
      return;
    }
    for (Index e : c.c().hom(unit, F.obj[slot], G.obj[slot])) {
      theta[slot] = e;
      if (natural(slot)) go(slot + 1);
    }
    theta[slot] = kNone;
  };
  go(0);
  return out;
}

}  // namespace gradcat
