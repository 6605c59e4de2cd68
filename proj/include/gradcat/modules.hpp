#pragma once

#include "gradcat/bifunctor.hpp"

namespace gradcat {

// A V-graded module M : A -|-> B between right V-graded categories (both
// stored over V^rev). Action tables are indexed by flattened presheaf
// elements of the acted-on value.
struct GradedModule {
  GradedPtr a, b;
  MonCatPtr v;
  std::vector<FinPresheaf> values;  // M(B, A) at B * |ob A| + A
  // lambda[f * |ob A| + A][(Z, mu)] = lambda(f, mu) in M(B', A)(X @ Z) for
  // f : B''X -> B and mu in M(B, A)(Z).
  std::vector<std::vector<Index>> lambda;
  // rho[B * |A| + g][(Z, mu)] = rho(mu, g) in M(B, A')(Z @ X') for
  // g : A''X' -> A' and mu in M(B, A)(Z).
  std::vector<std::vector<Index>> rho;

  Index na() const { return static_cast<Index>(a->num_objects()); }
  Index ea() const { return static_cast<Index>(a->num_elems()); }
  const FinPresheaf& value(Index y, Index x) const { return values[y * na() + x]; }

  static std::size_t slot(const FinPresheaf& p, Index z, Index mu) {
    std::size_t off = 0;
    for (Index k = 0; k < z; ++k) off += static_cast<std::size_t>(p.sizes[k]);
    return off + static_cast<std::size_t>(mu);
  }
  Index lam(Index f, Index x, Index z, Index mu) const {
    return lambda[f * na() + x][slot(value(b->elems[f].tgt, x), z, mu)];
  }
  Index rh(Index y, Index g, Index z, Index mu) const {
    return rho[y * ea() + g][slot(value(y, a->elems[g].src), z, mu)];
  }

  bool same_data(const GradedModule& o) const {
    return values == o.values && lambda == o.lambda && rho == o.rho;
  }
};

// pos[e] = position of e in its hom list.
inline std::vector<Index> hom_positions(const GradedCat& c) {
  std::vector<Index> pos(c.num_elems(), kNone);
  for (Index e = 0; e < static_cast<Index>(c.num_elems()); ++e) {
    const auto& el = c.elems[e];
    auto h = c.hom(el.grade, el.src, el.tgt);
    pos[e] = static_cast<Index>(std::find(h.begin(), h.end(), e) - h.begin());
  }
  return pos;
}

// Z |-> c(a'Z; b) with reindexing as the action.
inline FinPresheaf hom_presheaf(const GradedCat& c, Index a, Index b) {
  const FinCat& base = c.base->cat;
  const auto pos = hom_positions(c);
  FinPresheaf p;
  for (Index z = 0; z < static_cast<Index>(base.num_objects()); ++z)
    p.sizes.push_back(static_cast<Index>(c.hom(z, a, b).size()));
  for (Index alpha = 0; alpha < static_cast<Index>(base.num_morphisms()); ++alpha) {
    std::vector<Index> row;
    for (Index e : c.hom(base.tgt[alpha], a, b)) row.push_back(pos[c.reindex(alpha, e)]);
    p.action.push_back(std::move(row));
  }
  return p;
}

// The identity module B : B -|-> B, both actions by composition.
inline GradedModule identity_module(const GradedPtr& b) {
  GradedModule M{b, b, make_ptr(reverse(*b->base)), {}, {}, {}};
  const auto n = static_cast<Index>(b->num_objects());
  const auto nz = static_cast<Index>(b->base->n());
  const auto pos = hom_positions(*b);
  for (Index y = 0; y < n; ++y)
    for (Index x = 0; x < n; ++x) M.values.push_back(hom_presheaf(*b, y, x));
  for (Index f = 0; f < static_cast<Index>(b->num_elems()); ++f)
    for (Index x = 0; x < n; ++x) {
      std::vector<Index> row;
      for (Index z = 0; z < nz; ++z)
        for (Index mu : b->hom(z, b->elems[f].tgt, x)) row.push_back(pos[b->compose(mu, f)]);
      M.lambda.push_back(std::move(row));
    }
  for (Index y = 0; y < n; ++y)
    for (Index g = 0; g < static_cast<Index>(b->num_elems()); ++g) {
      std::vector<Index> row;
      for (Index z = 0; z < nz; ++z)
        for (Index mu : b->hom(z, y, b->elems[g].src)) row.push_back(pos[b->compose(g, mu)]);
      M.rho.push_back(std::move(row));
    }
  return M;
}

namespace detail {

inline Id module_elem(const FinMonCat& v, Index z, Index mu) { return v.cat.objects[z] + "#" + std::to_string(mu); }

inline bool module_shape_ok(const GradedModule& M) {
  const FinMonCat& v = *M.v;
  const auto nb = static_cast<Index>(M.b->num_objects());
  if (!M.a->base->same_tables(reverse(v)) || !M.b->base->same_tables(reverse(v))) return false;
  if (M.values.size() != static_cast<std::size_t>(nb) * M.na()) return false;
  if (M.lambda.size() != M.b->num_elems() * static_cast<std::size_t>(M.na())) return false;
  if (M.rho.size() != static_cast<std::size_t>(nb) * M.a->num_elems()) return false;
  for (const auto& p : M.values)
    if (p.sizes.size() != v.n() || p.action.size() != v.m()) return false;
  auto in_range = [&](const std::vector<Index>& row, const FinPresheaf& from, const FinPresheaf& to, Index grade,
                      bool grade_left) {
    if (row.size() != from.total()) return false;
    std::size_t i = 0;
    for (Index z = 0; z < static_cast<Index>(v.n()); ++z) {
      Index w = grade_left ? v.tensor(grade, z) : v.tensor(z, grade);
      for (Index mu = 0; mu < from.sizes[z]; ++mu, ++i)
        if (row[i] < 0 || row[i] >= to.sizes[w]) return false;
    }
    return true;
  };
  for (Index f = 0; f < static_cast<Index>(M.b->num_elems()); ++f)
    for (Index x = 0; x < M.na(); ++x) {
      const auto& el = M.b->elems[f];
      if (!in_range(M.lambda[f * M.na() + x], M.value(el.tgt, x), M.value(el.src, x), el.grade, true))
        return false;
    }
  for (Index y = 0; y < nb; ++y)
    for (Index g = 0; g < M.ea(); ++g) {
      const auto& el = M.a->elems[g];
      if (!in_range(M.rho[y * M.ea() + g], M.value(y, el.src), M.value(y, el.tgt), el.grade, false)) return false;
    }
  return true;
}

}  // namespace detail

// lambda(f, rho(mu, g)) and rho(lambda(f, mu), g) agree up to the associator,
// for every mu. Returns the first mu where they differ.
inline std::optional<Id> actions_commute(const GradedModule& M, Index f, Index g) {
  const FinMonCat& v = *M.v;
  const auto& ef = M.b->elems[f];
  const auto& eg = M.a->elems[g];
  const FinPresheaf& p = M.value(ef.tgt, eg.src);
  const FinPresheaf& last = M.value(ef.src, eg.tgt);
  const Index x = ef.grade, x2 = eg.grade;
  for (Index z = 0; z < static_cast<Index>(v.n()); ++z)
    for (Index mu = 0; mu < p.sizes[z]; ++mu) {
      Index lhs = M.lam(f, eg.tgt, v.tensor(z, x2), M.rh(ef.tgt, g, z, mu));
      Index rhs = M.rh(ef.src, g, v.tensor(x, z), M.lam(f, eg.src, z, mu));
      if (last.action[v.a(x, z, x2)][lhs] != rhs) return detail::module_elem(v, z, mu);
    }
  return std::nullopt;
}

inline CheckReport check_module(const GradedModule& M) {
  CheckReport rep;
  rep.expect(detail::module_shape_ok(M), "module-shape", {M.a->name, M.b->name});
  if (!rep.ok()) return rep;
  for (const auto& p : M.values) rep.merge(check_presheaf(M.v->cat, p));
  if (!rep.ok()) return rep;
  const FinMonCat& v = *M.v;
  const GradedCat& A = *M.a;
  const GradedCat& B = *M.b;
  const auto nz = static_cast<Index>(v.n()), nb = static_cast<Index>(B.num_objects());
  const auto& ida = A.elem_ids;
  const auto& idb = B.elem_ids;
  auto mu_id = [&](Index z, Index mu) { return detail::module_elem(v, z, mu); };

  // units
  for (Index y = 0; y < nb; ++y)
    for (Index x = 0; x < M.na(); ++x) {
      const auto& p = M.value(y, x);
      for (Index z = 0; z < nz; ++z)
        for (Index mu = 0; mu < p.sizes[z]; ++mu) {
          rep.expect(M.lam(B.identity[y], x, z, mu) == p.action[v.l(z)][mu], "lambda-unit",
                     {B.objects[y], A.objects[x], mu_id(z, mu)});
          rep.expect(M.rh(y, A.identity[x], z, mu) == p.action[v.r(z)][mu], "rho-unit",
                     {B.objects[y], A.objects[x], mu_id(z, mu)});
        }
    }
  // lambda(f', lambda(f, mu)) = lambda(f . f', mu)
  for (Index f = 0; f < static_cast<Index>(B.num_elems()); ++f)
    for (Index f2 : B.into_obj[B.elems[f].src]) {
      const Index x = B.elems[f].grade, x2 = B.elems[f2].grade;
      const Index ff = B.compose(f, f2);
      for (Index a = 0; a < M.na(); ++a) {
        const auto& p = M.value(B.elems[f].tgt, a);
        const auto& last = M.value(B.elems[f2].src, a);
        for (Index z = 0; z < nz; ++z)
          for (Index mu = 0; mu < p.sizes[z]; ++mu) {
            Index outer = M.lam(f2, a, v.tensor(x, z), M.lam(f, a, z, mu));
            rep.expect(last.action[v.a(x2, x, z)][outer] == M.lam(ff, a, z, mu), "lambda-assoc",
                       {idb[f], idb[f2], A.objects[a], mu_id(z, mu)});
          }
      }
    }
  // rho(rho(mu, g), g') = rho(mu, g' . g)
  for (Index g2 = 0; g2 < static_cast<Index>(A.num_elems()); ++g2)
    for (Index g : A.into_obj[A.elems[g2].src]) {
      const Index x = A.elems[g].grade, x2 = A.elems[g2].grade;
      const Index gg = A.compose(g2, g);
      for (Index y = 0; y < nb; ++y) {
        const auto& p = M.value(y, A.elems[g].src);
        const auto& last = M.value(y, A.elems[g2].tgt);
        for (Index z = 0; z < nz; ++z)
          for (Index mu = 0; mu < p.sizes[z]; ++mu) {
            Index outer = M.rh(y, g2, v.tensor(z, x), M.rh(y, g, z, mu));
            rep.expect(last.action[v.a(z, x, x2)][M.rh(y, gg, z, mu)] == outer, "rho-assoc",
                       {B.objects[y], ida[g], ida[g2], mu_id(z, mu)});
          }
      }
    }
  // the two actions commute
  for (Index f = 0; f < static_cast<Index>(B.num_elems()); ++f)
    for (Index g = 0; g < static_cast<Index>(A.num_elems()); ++g) {
      auto bad = actions_commute(M, f, g);
      rep.expect(!bad, "module-commute", {idb[f], bad.value_or("-"), ida[g]});
    }
  // naturality in the presheaf argument and in the grade of f or g
  for (Index f = 0; f < static_cast<Index>(B.num_elems()); ++f) {
    const auto& el = B.elems[f];
    for (Index a = 0; a < M.na(); ++a) {
      const auto& p = M.value(el.tgt, a);
      const auto& q = M.value(el.src, a);
      for (Index alpha = 0; alpha < static_cast<Index>(v.m()); ++alpha) {
        Index z = v.cat.tgt[alpha], z2 = v.cat.src[alpha];
        for (Index mu = 0; mu < p.sizes[z]; ++mu)
          rep.expect(M.lam(f, a, z2, p.action[alpha][mu]) ==
                         q.action[v.tensor_m(v.id(el.grade), alpha)][M.lam(f, a, z, mu)],
                     "lambda-natural", {idb[f], A.objects[a], v.cat.morphisms[alpha], std::to_string(mu)});
      }
      for (Index beta : B.base->cat.into[el.grade]) {
        Index fb = B.reindex(beta, f);
        for (Index z = 0; z < nz; ++z)
          for (Index mu = 0; mu < p.sizes[z]; ++mu)
            rep.expect(M.lam(fb, a, z, mu) == q.action[v.tensor_m(beta, v.id(z))][M.lam(f, a, z, mu)],
                       "lambda-natural", {idb[f], A.objects[a], v.cat.morphisms[beta], mu_id(z, mu)});
      }
    }
  }
  for (Index g = 0; g < static_cast<Index>(A.num_elems()); ++g) {
    const auto& el = A.elems[g];
    for (Index y = 0; y < nb; ++y) {
      const auto& p = M.value(y, el.src);
      const auto& q = M.value(y, el.tgt);
      for (Index alpha = 0; alpha < static_cast<Index>(v.m()); ++alpha) {
        Index z = v.cat.tgt[alpha], z2 = v.cat.src[alpha];
        for (Index mu = 0; mu < p.sizes[z]; ++mu)
          rep.expect(M.rh(y, g, z2, p.action[alpha][mu]) ==
                         q.action[v.tensor_m(alpha, v.id(el.grade))][M.rh(y, g, z, mu)],
                     "rho-natural", {B.objects[y], ida[g], v.cat.morphisms[alpha], std::to_string(mu)});
      }
      for (Index beta : A.base->cat.into[el.grade]) {
        Index gb = A.reindex(beta, g);
        for (Index z = 0; z < nz; ++z)
          for (Index mu = 0; mu < p.sizes[z]; ++mu)
            rep.expect(M.rh(y, gb, z, mu) == q.action[v.tensor_m(v.id(z), beta)][M.rh(y, g, z, mu)],
                       "rho-natural", {B.objects[y], ida[g], v.cat.morphisms[beta], mu_id(z, mu)});
      }
    }
  }
  return rep;
}

// Presheaf objects holding every value of M, named "M(B,A)".
inline PresheafObjects module_presheaves(const GradedModule& M) {
  PresheafObjects objs{M.v, {}, {}, {}};
  for (Index y = 0; y < static_cast<Index>(M.b->num_objects()); ++y)
    for (Index x = 0; x < M.na(); ++x)
      objs.add("M(" + M.b->objects[y] + "," + M.a->objects[x] + ")", M.value(y, x));
  return objs;
}

namespace detail {

inline Index find_presheaf_elem(const PresheafBigraded& pb, Index grade, Index p, Index q,
                                const std::vector<Index>& fl) {
  for (Index e : pb.bigraded.c().hom(grade, p, q))
    if (pb.flat[e] == fl) return e;
  throw OperationError("action components do not form a natural transformation");
}

}  // namespace detail

// M as a sesquifunctor B-op, A -> presheaves with M(f, A) = lambda(f, -) and
// M(B, g) = rho(-, g), each adjusted by a unitor. `b_op` is opposite(B).
inline Sesquifunctor module_to_bifunctor(const GradedModule& M, const PresheafBigraded& pb, const GradedPtr& b_op) {
  const FinMonCat& v = *M.v;
  const BigradedBase& base = pb.bigraded.base;
  const auto nb = static_cast<Index>(M.b->num_objects()), nz = static_cast<Index>(v.n());
  Sesquifunctor F{b_op, M.a, pb.bigraded, {}, {}, {}};
  std::vector<Index> obj;
  for (Index y = 0; y < nb; ++y)
    for (Index x = 0; x < M.na(); ++x)
      F.obj.push_back(pb.objects.require(M.value(y, x), "M(" + M.b->objects[y] + "," + M.a->objects[x] + ")"));
  for (Index f = 0; f < static_cast<Index>(M.b->num_elems()); ++f) {
    const auto& el = M.b->elems[f];
    for (Index x = 0; x < M.na(); ++x) {
      const auto& p = M.value(el.tgt, x);
      const auto& q = M.value(el.src, x);
      std::vector<Index> fl;
      for (Index z = 0; z < nz; ++z)
        for (Index mu = 0; mu < p.sizes[z]; ++mu)
          fl.push_back(q.action[v.r(v.tensor(el.grade, z))][M.lam(f, x, z, mu)]);
      F.left.push_back(detail::find_presheaf_elem(pb, base.grade(el.grade, v.unit), F.at(el.tgt, x),
                                                  F.at(el.src, x), fl));
    }
  }
  for (Index y = 0; y < nb; ++y)
    for (Index g = 0; g < M.ea(); ++g) {
      const auto& el = M.a->elems[g];
      const auto& p = M.value(y, el.src);
      const auto& q = M.value(y, el.tgt);
      std::vector<Index> fl;
      for (Index z = 0; z < nz; ++z)
        for (Index mu = 0; mu < p.sizes[z]; ++mu)
          fl.push_back(q.action[v.tensor_m(v.l(z), v.id(el.grade))][M.rh(y, g, z, mu)]);
      F.right.push_back(detail::find_presheaf_elem(pb, base.grade(v.unit, el.grade), F.at(y, el.src),
                                                   F.at(y, el.tgt), fl));
    }
  return F;
}

// Inverse of module_to_bifunctor; `b` is the category whose opposite is F.a.
inline GradedModule bifunctor_to_module(const Sesquifunctor& F, const PresheafBigraded& pb, const GradedPtr& b) {
  const MonCatPtr& vp = pb.objects.base;
  const FinMonCat& v = *vp;
  const BigradedBase& base = pb.bigraded.base;
  const GradedCat& c = pb.bigraded.c();
  if (b->num_objects() != F.a->num_objects() || b->num_elems() != F.a->num_elems())
    throw StructuralError("'" + b->name + "' is not the opposite of '" + F.a->name + "'");
  GradedModule M{F.b, b, vp, {}, {}, {}};
  const auto nb = static_cast<Index>(b->num_objects()), nz = static_cast<Index>(v.n());
  for (Index y = 0; y < nb; ++y)
    for (Index x = 0; x < M.na(); ++x) M.values.push_back(pb.objects.values[F.at(y, x)]);
  for (Index f = 0; f < static_cast<Index>(b->num_elems()); ++f) {
    const auto& el = b->elems[f];
    for (Index x = 0; x < M.na(); ++x) {
      Index e = F.on_left(f, x);
      if (c.elems[e].grade != base.grade(el.grade, v.unit))
        throw StructuralError("F(" + b->elem_ids[f] + ", " + M.a->objects[x] + ") has the wrong grade");
      const auto& p = M.value(el.tgt, x);
      const auto& q = M.value(el.src, x);
      std::vector<Index> row;
      for (Index z = 0; z < nz; ++z)
        for (Index mu = 0; mu < p.sizes[z]; ++mu)
          row.push_back(q.action[v.inv(v.r(v.tensor(el.grade, z)))][pb.component(e, z, mu)]);
      M.lambda.push_back(std::move(row));
    }
  }
  for (Index y = 0; y < nb; ++y)
    for (Index g = 0; g < M.ea(); ++g) {
      const auto& el = M.a->elems[g];
      Index e = F.on_right(y, g);
      if (c.elems[e].grade != base.grade(v.unit, el.grade))
        throw StructuralError("F(" + b->objects[y] + ", " + M.a->elem_ids[g] + ") has the wrong grade");
      const auto& p = M.value(y, el.src);
      const auto& q = M.value(y, el.tgt);
      std::vector<Index> row;
      for (Index z = 0; z < nz; ++z)
        for (Index mu = 0; mu < p.sizes[z]; ++mu)
          row.push_back(q.action[v.inv(v.tensor_m(v.l(z), v.id(el.grade)))][pb.component(e, z, mu)]);
      M.rho.push_back(std::move(row));
    }
  return M;
}

// Bijective on every hom(X, A, B).
inline CheckReport check_fully_faithful(const GradedFunctor& F) {
  CheckReport rep;
  const GradedCat& d = *F.dom;
  const GradedCat& c = *F.cod;
  const auto nd = static_cast<Index>(d.num_objects());
  for (Index x = 0; x < static_cast<Index>(d.base->n()); ++x)
    for (Index a = 0; a < nd; ++a)
      for (Index b = 0; b < nd; ++b) {
        std::vector<Index> image;
        for (Index e : d.hom(x, a, b)) image.push_back(F.elem_map[e]);
        std::sort(image.begin(), image.end());
        const std::vector<Id> w{d.base->cat.objects[x], d.objects[a], d.objects[b]};
        rep.expect(std::adjacent_find(image.begin(), image.end()) == image.end(), "faithful", w);
        rep.expect(image.size() == c.hom(x, F.obj_map[a], F.obj_map[b]).size(), "full", w);
      }
  return rep;
}

// y : B -> [B-op, presheaves] together with everything it is built from.
struct Yoneda {
  GradedPtr b, b_op;
  GradedModule hom;
  PresheafBigraded pb;
  FunctorCategory fc;
  Sesquifunctor hom_bifunctor;
  GradedFunctor y;
};

// Presheaf objects are the hom presheaves of B plus `extra`.
inline Yoneda yoneda_embedding(const GradedPtr& b, const std::vector<std::pair<Id, FinPresheaf>>& extra = {},
                               const Budget& budget = {}) {
  Yoneda out;
  out.b = b;
  out.b_op = make_ptr(opposite(*b));
  out.hom = identity_module(b);
  PresheafObjects objs{out.hom.v, {}, {}, {}};
  for (Index y = 0; y < static_cast<Index>(b->num_objects()); ++y)
    for (Index x = 0; x < static_cast<Index>(b->num_objects()); ++x)
      objs.add(b->name + "(" + b->objects[y] + "," + b->objects[x] + ")", out.hom.value(y, x));
  for (const auto& [name, p] : extra) objs.add(name, p);
  out.pb = presheaf_bigraded(objs, budget);
  out.hom_bifunctor = module_to_bifunctor(out.hom, out.pb, out.b_op);
  out.fc = build_functor_category({Side::left_source, out.b_op, out.pb.bigraded, std::nullopt}, budget);
  out.y = to_right(out.hom_bifunctor, out.fc);
  return out;
}

// theta : yB => F at grade X' |-> theta_B(i_B) in F(B)(X'), reindexed along
// X' -> (I @ I) @ X'.
inline Index yoneda_element(const Yoneda& Y, Index theta, Index b_obj) {
  const FinMonCat& v = *Y.hom.v;
  const GradedCat& fc = *Y.fc.cat;
  const auto& el = fc.elems[theta];
  const Index e = Y.fc.components[theta][b_obj];
  const auto ib = Y.b->hom(v.unit, b_obj, b_obj);
  const Index pos = static_cast<Index>(std::find(ib.begin(), ib.end(), Y.b->identity[b_obj]) - ib.begin());
  const FinPresheaf& fb = Y.pb.objects.values[Y.fc.functors[el.tgt].obj_map[b_obj]];
  using W = Word;
  const Index k = canonical_iso(v, W::leaf(el.grade), W::of(W::of(W::unit(), W::unit()), W::leaf(el.grade)));
  return fb.action[k][Y.pb.component(e, v.unit, pos)];
}

struct YonedaWitness {
  std::vector<Index> transformations;  // fc elements yB => F at the grade
  std::vector<Index> images;           // their elements of F(B)(X')
  Index fiber = 0;                     // |F(B)(X')|
  bool bijective = false;
};

// Both sides are enumerated exhaustively: the transformations through the
// functor category hom, the elements through the presheaf.
inline YonedaWitness yoneda_check(const Yoneda& Y, Index functor, Index b_obj, Index grade) {
  const auto nf = static_cast<Index>(Y.fc.functors.size());
  if (functor < 0 || functor >= nf) throw StructuralError("functor index out of range");
  if (b_obj < 0 || b_obj >= static_cast<Index>(Y.b->num_objects()))
    throw StructuralError("object index out of range");
  if (grade < 0 || grade >= static_cast<Index>(Y.hom.v->n())) throw StructuralError("grade out of range");
  YonedaWitness w;
  for (Index t : Y.fc.cat->hom(grade, Y.y.obj_map[b_obj], functor)) {
    w.transformations.push_back(t);
    w.images.push_back(yoneda_element(Y, t, b_obj));
  }
  w.fiber = Y.pb.objects.values[Y.fc.functors[functor].obj_map[b_obj]].sizes[grade];
  auto sorted = w.images;
  std::sort(sorted.begin(), sorted.end());
  w.bijective = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end() &&
                static_cast<Index>(sorted.size()) == w.fiber;
  return w;
}

}  // namespace gradcat
