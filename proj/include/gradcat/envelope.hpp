#pragma once

#include <array>
#include <map>
#include <numeric>

#include "gradcat/modules.hpp"

namespace gradcat {

// A generator (alpha : x -> y @ z, p in P(y), q in Q(z)) of (P @ Q)(x).
struct DayGenerator {
  Index x = kNone, alpha = kNone, y = kNone, p = kNone, z = kNone, q = kNone;
};

// Day convolution computed as a quotient of the disjoint union of generators.
// Elements of result(x) are numbered by their canonical representative
// (least generator id), which `representative` records.
struct DayProduct {
  MonCatPtr base;
  FinPresheaf p, q, result;
  std::vector<DayGenerator> generators;
  std::vector<Id> generator_ids;
  std::vector<Index> class_of;                    // generator -> element of result(x)
  std::vector<std::vector<Index>> representative;  // [x][k] -> generator
  std::map<std::array<Index, 5>, Index> lookup;    // (alpha, y, p, z, q) -> generator

  Index generator(Index alpha, Index y, Index pe, Index z, Index qe) const {
    auto it = lookup.find({alpha, y, pe, z, qe});
    if (it == lookup.end()) throw OperationError("not a generator of the Day convolution");
    return it->second;
  }
  Index element(Index alpha, Index y, Index pe, Index z, Index qe) const {
    return class_of[generator(alpha, y, pe, z, qe)];
  }
};

namespace detail {

struct UnionFind {
  std::vector<Index> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  Index find(Index a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(Index a, Index b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace detail

inline DayProduct day_convolution(const MonCatPtr& vp, const FinPresheaf& p, const FinPresheaf& q) {
  const FinMonCat& v = *vp;
  const FinCat& c = v.cat;
  if (!check_presheaf(c, p).ok() || !check_presheaf(c, q).ok())
    throw StructuralError("Day convolution operands are not presheaves on " + v.name);
  const auto n = static_cast<Index>(v.n());
  DayProduct d{vp, p, q, {}, {}, {}, {}, {}, {}};
  for (Index x = 0; x < n; ++x)
    for (Index y = 0; y < n; ++y)
      for (Index z = 0; z < n; ++z)
        for (Index alpha : c.hom(x, v.tensor(y, z)))
          for (Index pe = 0; pe < p.sizes[y]; ++pe)
            for (Index qe = 0; qe < q.sizes[z]; ++qe) {
              d.lookup[{alpha, y, pe, z, qe}] = static_cast<Index>(d.generators.size());
              d.generators.push_back({x, alpha, y, pe, z, qe});
              d.generator_ids.push_back(c.morphisms[alpha] + "|" + c.objects[y] + "#" + std::to_string(pe) + "|" +
                                        c.objects[z] + "#" + std::to_string(qe));
            }
  detail::UnionFind uf(d.generators.size());
  // (beta @ 1) . alpha with p ~ alpha with beta^* p, and likewise on the right
  for (Index g = 0; g < static_cast<Index>(d.generators.size()); ++g) {
    const auto gen = d.generators[g];
    for (Index y2 = 0; y2 < n; ++y2)
      for (Index beta : c.hom(gen.y, y2))
        for (Index p2 = 0; p2 < p.sizes[y2]; ++p2) {
          if (p.action[beta][p2] != gen.p) continue;
          Index moved = v.comp(v.tensor_m(beta, v.id(gen.z)), gen.alpha);
          uf.unite(g, d.generator(moved, y2, p2, gen.z, gen.q));
        }
    for (Index z2 = 0; z2 < n; ++z2)
      for (Index gamma : c.hom(gen.z, z2))
        for (Index q2 = 0; q2 < q.sizes[z2]; ++q2) {
          if (q.action[gamma][q2] != gen.q) continue;
          Index moved = v.comp(v.tensor_m(v.id(gen.y), gamma), gen.alpha);
          uf.unite(g, d.generator(moved, gen.y, gen.p, z2, q2));
        }
  }
  // canonical representatives: least id within each class
  std::map<Index, Index> best;
  for (Index g = 0; g < static_cast<Index>(d.generators.size()); ++g) {
    Index root = uf.find(g);
    auto it = best.find(root);
    if (it == best.end() || d.generator_ids[g] < d.generator_ids[it->second]) best[root] = g;
  }
  d.representative.assign(n, {});
  for (const auto& [root, g] : best) d.representative[d.generators[g].x].push_back(g);
  for (auto& reps : d.representative)
    std::sort(reps.begin(), reps.end(), [&](Index a, Index b) { return d.generator_ids[a] < d.generator_ids[b]; });
  std::map<Index, Index> local;
  for (Index x = 0; x < n; ++x)
    for (Index k = 0; k < static_cast<Index>(d.representative[x].size()); ++k)
      local[uf.find(d.representative[x][k])] = k;
  d.class_of.resize(d.generators.size());
  for (Index g = 0; g < static_cast<Index>(d.generators.size()); ++g) d.class_of[g] = local.at(uf.find(g));
  for (Index x = 0; x < n; ++x) d.result.sizes.push_back(static_cast<Index>(d.representative[x].size()));
  for (Index delta = 0; delta < static_cast<Index>(c.num_morphisms()); ++delta) {
    std::vector<Index> row;
    for (Index g : d.representative[c.tgt[delta]]) {
      const auto& gen = d.generators[g];
      row.push_back(d.element(v.comp(gen.alpha, delta), gen.y, gen.p, gen.z, gen.q));
    }
    d.result.action.push_back(std::move(row));
  }
  return d;
}

// The action on every generator agrees with the action on its class, and the
// result is a presheaf.
inline CheckReport check_day(const DayProduct& d) {
  const FinMonCat& v = *d.base;
  const FinCat& c = v.cat;
  CheckReport rep = check_presheaf(c, d.result);
  for (Index g = 0; g < static_cast<Index>(d.generators.size()); ++g) {
    const auto& gen = d.generators[g];
    for (Index delta : c.into[gen.x])
      rep.expect(d.result.action[delta][d.class_of[g]] ==
                     d.element(v.comp(gen.alpha, delta), gen.y, gen.p, gen.z, gen.q),
                 "day-action-welldefined", {d.generator_ids[g], c.morphisms[delta]});
  }
  return rep;
}

// Checks that maps[x] : P(x) -> Q(x) is a natural bijection.
inline CheckReport check_presheaf_iso(const FinCat& c, const FinPresheaf& p, const FinPresheaf& q,
                                      const NatTrans& maps) {
  CheckReport rep;
  for (Index x = 0; x < static_cast<Index>(c.num_objects()); ++x) {
    std::vector<Index> image = maps[x];
    std::sort(image.begin(), image.end());
    rep.expect(p.sizes[x] == q.sizes[x] && std::adjacent_find(image.begin(), image.end()) == image.end(),
               "presheaf-iso-bijective", {c.objects[x]});
  }
  if (!rep.ok()) return rep;
  for (Index a = 0; a < static_cast<Index>(c.num_morphisms()); ++a)
    for (Index e = 0; e < p.sizes[c.tgt[a]]; ++e)
      rep.expect(maps[c.src[a]][p.action[a][e]] == q.action[a][maps[c.tgt[a]][e]], "presheaf-iso-natural",
                 {c.morphisms[a], std::to_string(e)});
  return rep;
}

// The free V-actegory on C. Objects (X, A) at X * |ob C| + A stand for X'A;
// a grade-Z element from (X, A) to (Y, B) is an element of
// (y(Y) @ C(A, B))(Z @ X), normalized as alpha : Z @ X -> Y @ Z1 with
// f : Z1'A -> B.
struct EnvelopeActegory {
  GradedPtr source;
  GradedPtr cat;
  std::vector<DayProduct> homs;  // (Y * |ob C| + A) * |ob C| + B
  struct Normal {
    Index alpha = kNone, z1 = kNone, f = kNone;  // f is a source element
  };
  std::vector<Normal> normal;  // per element
  std::vector<Index> e_obj, e_elem;
  std::map<std::array<Index, 4>, Index> at;  // (grade, src, tgt, Day class) -> element

  Index na() const { return static_cast<Index>(source->num_objects()); }
  Index obj(Index x, Index a) const { return x * na() + a; }
  Index obj_grade(Index o) const { return o / na(); }
  Index obj_source(Index o) const { return o % na(); }
  const DayProduct& hom(Index y, Index a, Index b) const { return homs[(y * na() + a) * na() + b]; }
  // Z'(X, A) = (Z @ X, A)
  Index act(Index z, Index o) const {
    return obj(source->base->tensor(z, obj_grade(o)), obj_source(o));
  }
};

namespace detail {

inline Index position(std::span<const Index> list, Index e) {
  auto it = std::find(list.begin(), list.end(), e);
  if (it == list.end()) throw std::logic_error("element missing from its hom list");
  return static_cast<Index>(it - list.begin());
}

}  // namespace detail

// The element of grade Z from s = (X, A) to t = (Y, B) represented by
// alpha : Z @ X -> Y @ Z1 and f in C(Z1'A; B).
inline Index envelope_class(const EnvelopeActegory& env, Index z, Index s, Index t, Index alpha, Index z1, Index f) {
  const GradedCat& C = *env.source;
  const FinMonCat& v = *C.base;
  Index y = env.obj_grade(t), a = env.obj_source(s), b = env.obj_source(t);
  const DayProduct& d = env.hom(y, a, b);
  Index k = d.element(alpha, y, detail::position(v.cat.hom(y, y), v.id(y)), z1, detail::position(C.hom(z1, a, b), f));
  auto it = env.at.find({z, s, t, k});
  if (it == env.at.end()) throw std::logic_error("envelope element out of range");
  return it->second;
}

inline EnvelopeActegory build_envelope(const GradedPtr& cp, const Budget& budget = {}) {
  const GradedCat& C = *cp;
  const FinMonCat& v = *C.base;
  const auto n = static_cast<Index>(v.n());
  const auto na = static_cast<Index>(C.num_objects());
  if (static_cast<std::size_t>(n * na) > budget.max_objects)
    throw BudgetExceeded("envelope of '" + C.name + "' has " + std::to_string(n * na) + " objects");
  EnvelopeActegory env;
  env.source = cp;
  for (Index y = 0; y < n; ++y)
    for (Index a = 0; a < na; ++a)
      for (Index b = 0; b < na; ++b)
        env.homs.push_back(day_convolution(C.base, representable(v.cat, y), hom_presheaf(C, a, b)));
  GradedCat e;
  e.name = "env(" + C.name + ")";
  e.base = C.base;
  for (Index x = 0; x < n; ++x)
    for (Index a = 0; a < na; ++a) e.add_object("(" + v.cat.objects[x] + "," + C.objects[a] + ")");
  for (Index z = 0; z < n; ++z) {
    std::size_t at_grade = 0;
    for (Index s = 0; s < n * na; ++s)
      for (Index t = 0; t < n * na; ++t) {
        const DayProduct& d = env.hom(env.obj_grade(t), env.obj_source(s), env.obj_source(t));
        Index w = v.tensor(z, env.obj_grade(s));
        at_grade += static_cast<std::size_t>(d.result.sizes[w]);
        if (at_grade > budget.max_hom)
          throw BudgetExceeded("envelope hom at grade '" + v.cat.objects[z] + "' exceeds " +
                               std::to_string(budget.max_hom));
        for (Index k = 0; k < d.result.sizes[w]; ++k) {
          Index g = d.representative[w][k];
          const auto& gen = d.generators[g];
          Index el = e.add_elem(e.objects[s] + ">" + e.objects[t] + "@" + v.cat.objects[z] + ":" + d.generator_ids[g],
                                z, s, t);
          env.at[{z, s, t, k}] = el;
          // normalize: (beta @ 1) . alpha with f
          Index beta = v.cat.hom(gen.y, env.obj_grade(t))[gen.p];
          Index f = C.hom(gen.z, env.obj_source(s), env.obj_source(t))[gen.q];
          env.normal.push_back({v.comp(v.tensor_m(beta, v.id(gen.z)), gen.alpha), gen.z, f});
        }
      }
  }
  e.index();
  e.allocate();
  auto cls = [&](Index z, Index s, Index t, Index alpha, Index z1, Index f) {
    return envelope_class(env, z, s, t, alpha, z1, f);
  };
  for (Index s = 0; s < n * na; ++s) {
    Index x = env.obj_grade(s);
    e.identity[s] = cls(v.unit, s, s, v.comp(v.inv(v.r(x)), v.l(x)), v.unit, C.identity[env.obj_source(s)]);
  }
  for (Index el = 0; el < static_cast<Index>(e.num_elems()); ++el) {
    const auto& ee = e.elems[el];
    Index x = env.obj_grade(ee.src);
    const auto& nm = env.normal[el];
    for (Index gamma : v.cat.into[ee.grade])
      e.set_reindex(gamma, el,
                    cls(v.src(gamma), ee.src, ee.tgt, v.comp(nm.alpha, v.tensor_m(gamma, v.id(x))), nm.z1, nm.f));
  }
  for (Index g = 0; g < static_cast<Index>(e.num_elems()); ++g)
    for (Index f : e.into_obj[e.elems[g].src]) {
      const auto& eg = e.elems[g];
      const auto& ef = e.elems[f];
      const auto& ng = env.normal[g];
      const auto& nf = env.normal[f];
      Index w = eg.grade, z = ef.grade, x = env.obj_grade(ef.src), y = env.obj_grade(eg.src),
            u = env.obj_grade(eg.tgt);
      // (W @ Z) @ X -> W @ (Z @ X) -> W @ (Y @ Z1) -> (W @ Y) @ Z1 -> (U @ W1) @ Z1 -> U @ (W1 @ Z1)
      Index k = v.a(w, z, x);
      k = v.comp(v.tensor_m(v.id(w), nf.alpha), k);
      k = v.comp(v.inv(v.a(w, y, nf.z1)), k);
      k = v.comp(v.tensor_m(ng.alpha, v.id(nf.z1)), k);
      k = v.comp(v.a(u, ng.z1, nf.z1), k);
      e.set_compose(g, f, cls(v.tensor(w, z), ef.src, eg.tgt, k, v.tensor(ng.z1, nf.z1), C.compose(ng.f, nf.f)));
    }
  e.finalize();
  for (Index a = 0; a < na; ++a) env.e_obj.push_back(env.obj(v.unit, a));
  for (Index f = 0; f < static_cast<Index>(C.num_elems()); ++f) {
    const auto& el = C.elems[f];
    env.e_elem.push_back(cls(el.grade, env.obj(v.unit, el.src), env.obj(v.unit, el.tgt),
                             v.comp(v.inv(v.l(el.grade)), v.r(el.grade)), el.grade, f));
  }
  env.cat = make_ptr(std::move(e));
  return env;
}

inline GradedFunctor envelope_embedding(const EnvelopeActegory& env) {
  return {env.source, env.cat, env.e_obj, env.e_elem};
}

// The copower unit u : Z'(X, A) at grade Z from (X, A) to (Z @ X, A).
inline Index copower_unit(const EnvelopeActegory& env, Index z, Index o) {
  const FinMonCat& v = *env.source->base;
  Index zx = v.tensor(z, env.obj_grade(o));
  return envelope_class(env, z, o, env.act(z, o), v.inv(v.r(zx)), v.unit, env.source->identity[env.obj_source(o)]);
}

// Graded category laws, E a fully faithful graded functor, strict action on
// objects, the copower bijection hom(W; Z'(X,A), D) -> hom(W @ Z; (X,A), D)
// given by precomposition with the unit, and hom(Z; (X,A), EB) = C(Z @ X; A, B).
inline CheckReport check_envelope(const EnvelopeActegory& env) {
  CheckReport rep;
  const GradedCat& e = *env.cat;
  const GradedCat& C = *env.source;
  const FinMonCat& v = *C.base;
  const auto n = static_cast<Index>(v.n());
  const auto no = static_cast<Index>(e.num_objects());
  auto tag = detail::prefixed;
  rep.merge(tag(check_graded(e), "envelope-graded:"));
  auto E = envelope_embedding(env);
  rep.merge(tag(check_graded_functor(E), "embedding-functor:"));
  rep.merge(tag(check_fully_faithful(E), "embedding-"));
  if (!rep.ok()) return rep;
  for (Index z = 0; z < n; ++z)
    for (Index z2 = 0; z2 < n; ++z2)
      for (Index o = 0; o < no; ++o)
        rep.expect(env.act(v.tensor(z, z2), o) == env.act(z, env.act(z2, o)), "action-strict-objects",
                   {v.cat.objects[z], v.cat.objects[z2], e.objects[o]});
  for (Index o = 0; o < no; ++o)
    rep.expect(o == env.act(env.obj_grade(o), env.obj(v.unit, env.obj_source(o))), "every-object-copower",
               {e.objects[o]});
  for (Index z = 0; z < n; ++z)
    for (Index o = 0; o < no; ++o) {
      Index u = copower_unit(env, z, o);
      Index t = env.act(z, o);
      for (Index w = 0; w < n; ++w)
        for (Index dobj = 0; dobj < no; ++dobj) {
          std::vector<Index> image;
          for (Index g : e.hom(w, t, dobj)) image.push_back(e.compose(g, u));
          std::sort(image.begin(), image.end());
          bool injective = std::adjacent_find(image.begin(), image.end()) == image.end();
          rep.expect(injective && image.size() == e.hom(v.tensor(w, z), o, dobj).size(), "copower-unit",
                     {v.cat.objects[w], v.cat.objects[z], e.objects[o], e.objects[dobj]});
        }
    }
  // hom(Z; (X, A), (I, B)) against C(Z @ X; A, B) via f |-> [l^{-1}, f]
  for (Index z = 0; z < n; ++z)
    for (Index o = 0; o < no; ++o)
      for (Index b = 0; b < static_cast<Index>(C.num_objects()); ++b) {
        Index zx = v.tensor(z, env.obj_grade(o));
        Index a = env.obj_source(o);
        const DayProduct& d = env.hom(v.unit, a, b);
        Index pe = detail::position(v.cat.hom(v.unit, v.unit), v.id(v.unit));
        std::vector<Index> image;
        auto fs = C.hom(zx, a, b);
        for (Index k = 0; k < static_cast<Index>(fs.size()); ++k)
          image.push_back(d.element(v.inv(v.l(zx)), v.unit, pe, zx, k));
        std::sort(image.begin(), image.end());
        bool injective = std::adjacent_find(image.begin(), image.end()) == image.end();
        rep.expect(injective && static_cast<Index>(image.size()) == d.result.sizes[zx] &&
                       e.hom(z, o, env.obj(v.unit, b)).size() == image.size(),
                   "copower-embedding",
                   {v.cat.objects[z], e.objects[o], C.objects[b]});
      }
  return rep;
}

// The grade-I transpose of a grade-Z element h : Z'(X, A) -> D, i.e. the unique
// g : (Z @ X, A) -> D with l_Z^{-1*}(g o u) = h.
inline Index envelope_transpose(const EnvelopeActegory& env, Index h) {
  const GradedCat& e = *env.cat;
  const FinMonCat& v = *env.source->base;
  const auto& el = e.elems[h];
  Index u = copower_unit(env, el.grade, el.src);
  for (Index g : e.hom(v.unit, env.act(el.grade, el.src), el.tgt))
    if (e.reindex(v.inv(v.l(el.grade)), e.compose(g, u)) == h) return g;
  throw OperationError("no transpose for '" + e.elem_ids[h] + "'");
}

// Y'h : Y'D1 -> Y'D2 for a grade-I element h : D1 -> D2.
inline Index envelope_whisker(const EnvelopeActegory& env, Index y, Index h) {
  const GradedCat& e = *env.cat;
  const GradedCat& C = *env.source;
  const FinMonCat& v = *C.base;
  const auto& el = e.elems[h];
  if (el.grade != v.unit) throw OperationError("whiskering needs a grade-I element");
  const auto& nm = env.normal[h];
  Index x = env.obj_grade(el.src), x2 = env.obj_grade(el.tgt);
  // I @ (Y @ X) -> Y @ X -> Y @ (I @ X) -> Y @ (X2 @ Z1) -> (Y @ X2) @ Z1
  Index k = v.l(v.tensor(y, x));
  k = v.comp(v.tensor_m(v.id(y), v.inv(v.l(x))), k);
  k = v.comp(v.tensor_m(v.id(y), nm.alpha), k);
  k = v.comp(v.inv(v.a(y, x2, nm.z1)), k);
  return envelope_class(env, v.unit, env.act(y, el.src), env.act(y, el.tgt), k, nm.z1, nm.f);
}

}  // namespace gradcat
