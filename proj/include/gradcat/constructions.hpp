#pragma once

#include <array>

#include "gradcat/graded.hpp"

namespace gradcat {

// V as a left V-graded category: hom(X, A, B) = V(X@A, B).
inline GradedCat self_graded(const MonCatPtr& vp) {
  const FinMonCat& v = *vp;
  GradedCat c;
  c.name = "self(" + v.name + ")";
  c.base = vp;
  const auto n = static_cast<Index>(v.n()), m = static_cast<Index>(v.m());
  for (Index a = 0; a < n; ++a) c.add_object(v.cat.objects[a]);
  std::vector<Index> at(static_cast<std::size_t>(n) * n * m, kNone);
  auto key = [&](Index x, Index a, Index mor) { return (static_cast<std::size_t>(x) * n + a) * m + mor; };
  for (Index x = 0; x < n; ++x)
    for (Index a = 0; a < n; ++a) {
      Index xa = v.tensor(x, a);
      for (Index b = 0; b < n; ++b)
        for (Index mor : v.cat.hom(xa, b))
          at[key(x, a, mor)] = c.add_elem(v.cat.objects[x] + "'" + v.cat.objects[a] + ":" + v.cat.morphisms[mor], x, a, b);
    }
  std::vector<Index> payload(c.num_elems());
  for (std::size_t k = 0; k < at.size(); ++k)
    if (at[k] != kNone) payload[at[k]] = static_cast<Index>(k % m);
  c.index();
  c.allocate();
  for (Index a = 0; a < n; ++a) c.identity[a] = at[key(v.unit, a, v.l(a))];
  for (Index f = 0; f < static_cast<Index>(c.num_elems()); ++f) {
    const auto& ef = c.elems[f];
    for (Index alpha : v.cat.into[ef.grade])
      c.set_reindex(alpha, f,
                    at[key(v.src(alpha), ef.src, v.comp(payload[f], v.tensor_m(alpha, v.id(ef.src))))]);
  }
  for (Index g = 0; g < static_cast<Index>(c.num_elems()); ++g) {
    const auto& eg = c.elems[g];
    for (Index f : c.into_obj[eg.src]) {
      const auto& ef = c.elems[f];
      Index mor = v.comp(payload[g], v.comp(v.tensor_m(v.id(eg.grade), payload[f]),
                                            v.a(eg.grade, ef.grade, ef.src)));
      c.set_compose(g, f, at[key(v.tensor(eg.grade, ef.grade), ef.src, mor)]);
    }
  }
  c.finalize();
  return c;
}

// V as a right V-graded category, stored as left graded over reverse(V).
inline GradedCat self_graded_right(const MonCatPtr& vp) {
  GradedCat c = self_graded(make_ptr(reverse(*vp)));
  c.name = "self_r(" + vp->name + ")";
  return c;
}

// The two-object category generated by a single graded morphism u : X'0 -> 1:
// hom(Z,0,0) = hom(Z,1,1) = V(Z,I), hom(Z,0,1) = V(Z,X), hom(Z,1,0) empty.
inline GradedCat two_object(const MonCatPtr& vp, Index x) {
  const FinMonCat& v = *vp;
  GradedCat c;
  c.name = "two(" + v.cat.objects[x] + ")";
  c.base = vp;
  c.add_object("0");
  c.add_object("1");
  const auto m = static_cast<Index>(v.m());
  // kind 0: 0->0, 1: 1->1, 2: 0->1
  std::vector<Index> at(3 * static_cast<std::size_t>(m), kNone);
  std::vector<Index> kind_of, payload;
  const std::array<const char*, 3> tag = {"00:", "11:", "01:"};
  const std::array<Index, 3> s = {0, 1, 0}, t = {0, 1, 1};
  for (Index k = 0; k < 3; ++k) {
    Index target = k == 2 ? x : v.unit;
    for (Index mor = 0; mor < m; ++mor)
      if (v.tgt(mor) == target) {
        at[k * m + mor] = c.add_elem(tag[k] + v.cat.morphisms[mor], v.src(mor), s[k], t[k]);
        kind_of.push_back(k);
        payload.push_back(mor);
      }
  }
  c.index();
  c.allocate();
  c.identity[0] = at[0 * m + v.id(v.unit)];
  c.identity[1] = at[1 * m + v.id(v.unit)];
  for (Index f = 0; f < static_cast<Index>(c.num_elems()); ++f)
    for (Index alpha : v.cat.into[c.elems[f].grade])
      c.set_reindex(alpha, f, at[kind_of[f] * m + v.comp(payload[f], alpha)]);
  for (Index g = 0; g < static_cast<Index>(c.num_elems()); ++g)
    for (Index f : c.into_obj[c.elems[g].src]) {
      Index kg = kind_of[g], kf = kind_of[f];
      Index kind = kf == 2 || kg == 2 ? 2 : kf;
      Index collapse = kf == 2 ? v.l(v.tgt(payload[f])) : v.r(v.tgt(payload[g]));
      Index mor = v.comp(collapse, v.tensor_m(payload[g], payload[f]));
      c.set_compose(g, f, at[kind * m + mor]);
    }
  c.finalize();
  return c;
}

// The generating morphism u of two_object(v, x).
inline Index two_object_generator(const GradedCat& c, const FinMonCat& v, Index x) {
  return c.elem_index("01:" + v.cat.morphisms[v.id(x)]);
}

// A finite V-category: hom objects, composition D(b,c)@D(a,b) -> D(a,c) and
// identities I -> D(a,a).
struct VCategory {
  std::vector<Id> objects;
  std::vector<Index> hom_obj;    // a * n + b
  std::vector<Index> comp_mor;   // (a * n + b) * n + c
  std::vector<Index> unit_mor;   // a

  Index hom(Index a, Index b) const { return hom_obj[a * static_cast<Index>(objects.size()) + b]; }
  Index comp(Index a, Index b, Index c) const {
    const auto n = static_cast<Index>(objects.size());
    return comp_mor[(a * n + b) * n + c];
  }
};

inline CheckReport check_vcategory(const FinMonCat& v, const VCategory& d) {
  CheckReport rep;
  const auto n = static_cast<Index>(d.objects.size());
  for (Index a = 0; a < n; ++a) {
    rep.expect(v.src(d.unit_mor[a]) == v.unit && v.tgt(d.unit_mor[a]) == d.hom(a, a), "vcat-type",
               {d.objects[a]});
    for (Index b = 0; b < n; ++b)
      for (Index c = 0; c < n; ++c) {
        Index mm = d.comp(a, b, c);
        rep.expect(v.src(mm) == v.tensor(d.hom(b, c), d.hom(a, b)) && v.tgt(mm) == d.hom(a, c),
                   "vcat-type", {d.objects[a], d.objects[b], d.objects[c]});
      }
  }
  if (!rep.ok()) return rep;
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b) {
      rep.expect(v.comp(d.comp(a, a, b), v.tensor_m(v.id(d.hom(a, b)), d.unit_mor[a])) == v.r(d.hom(a, b)),
                 "vcat-unit-right", {d.objects[a], d.objects[b]});
      rep.expect(v.comp(d.comp(a, b, b), v.tensor_m(d.unit_mor[b], v.id(d.hom(a, b)))) == v.l(d.hom(a, b)),
                 "vcat-unit-left", {d.objects[a], d.objects[b]});
      for (Index c = 0; c < n; ++c)
        for (Index e = 0; e < n; ++e) {
          Index lhs = v.comp(d.comp(a, b, e), v.tensor_m(d.comp(b, c, e), v.id(d.hom(a, b))));
          Index rhs = v.comp(d.comp(a, c, e),
                             v.comp(v.tensor_m(v.id(d.hom(c, e)), d.comp(a, b, c)),
                                    v.a(d.hom(c, e), d.hom(b, c), d.hom(a, b))));
          rep.expect(lhs == rhs, "vcat-assoc", {d.objects[a], d.objects[b], d.objects[c], d.objects[e]});
        }
    }
  return rep;
}

// hom(X, A, B) = V(X, D(A,B)) with g o f = m . (g @ f).
inline GradedCat enriched(const MonCatPtr& vp, const VCategory& d) {
  const FinMonCat& v = *vp;
  auto rep = check_vcategory(v, d);
  if (!rep.ok())
    throw StructuralError("not a V-category: " + rep.violations.front().law + " at " +
                          join(rep.violations.front().witness));
  GradedCat c;
  c.name = "enriched";
  c.base = vp;
  const auto n = static_cast<Index>(d.objects.size()), m = static_cast<Index>(v.m());
  for (const auto& o : d.objects) c.add_object(o);
  std::vector<Index> at(static_cast<std::size_t>(n) * n * m, kNone);
  std::vector<Index> payload;
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b)
      for (Index mor : v.cat.into[d.hom(a, b)]) {
        at[(a * n + b) * m + mor] =
            c.add_elem(d.objects[a] + ">" + d.objects[b] + ":" + v.cat.morphisms[mor], v.src(mor), a, b);
        payload.push_back(mor);
      }
  c.index();
  c.allocate();
  for (Index a = 0; a < n; ++a) c.identity[a] = at[(a * n + a) * m + d.unit_mor[a]];
  for (Index f = 0; f < static_cast<Index>(c.num_elems()); ++f) {
    const auto& ef = c.elems[f];
    for (Index alpha : v.cat.into[ef.grade])
      c.set_reindex(alpha, f, at[(ef.src * n + ef.tgt) * m + v.comp(payload[f], alpha)]);
  }
  for (Index g = 0; g < static_cast<Index>(c.num_elems()); ++g)
    for (Index f : c.into_obj[c.elems[g].src]) {
      Index a = c.elems[f].src, b = c.elems[f].tgt, e = c.elems[g].tgt;
      Index mor = v.comp(d.comp(a, b, e), v.tensor_m(payload[g], payload[f]));
      c.set_compose(g, f, at[(a * n + e) * m + mor]);
    }
  c.finalize();
  return c;
}

// Counits u_{AB} = 1_{D(A,B)}; they generate the enriched graded category.
inline std::vector<Index> enriched_counits(const GradedCat& c, const FinMonCat& v, const VCategory& d) {
  std::vector<Index> out;
  for (std::size_t a = 0; a < d.objects.size(); ++a)
    for (std::size_t b = 0; b < d.objects.size(); ++b) {
      Index h = d.hom(static_cast<Index>(a), static_cast<Index>(b));
      out.push_back(c.elem_index(d.objects[a] + ">" + d.objects[b] + ":" + v.cat.morphisms[v.id(h)]));
    }
  return out;
}

// For a strict base whose objects form a group under tensor: D(a,b) is the
// unique d with d@a = b, composition and units are identities.
inline VCategory translation_vcategory(const FinMonCat& v) {
  VCategory d;
  const auto n = static_cast<Index>(v.n());
  d.objects = v.cat.objects;
  d.hom_obj.assign(static_cast<std::size_t>(n) * n, kNone);
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b)
      for (Index x = 0; x < n; ++x)
        if (v.tensor(x, a) == b) d.hom_obj[a * n + b] = x;
  for (Index h : d.hom_obj)
    if (h == kNone) throw StructuralError("objects of '" + v.name + "' do not form a group");
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b)
      for (Index c = 0; c < n; ++c) d.comp_mor.push_back(v.id(d.hom(a, c)));
  for (Index a = 0; a < n; ++a) d.unit_mor.push_back(v.id(v.unit));
  return d;
}

// Over the chain {0 <= 1} with meet: two objects, D(p,p) = D(q,q) = 1 and
// D(p,q) = D(q,p) = 0.
inline VCategory chain_vcategory(const FinMonCat& v) {
  VCategory d;
  d.objects = {"p", "q"};
  Index zero = v.cat.object_index("0"), one = v.cat.object_index("1");
  d.hom_obj = {one, zero, zero, one};
  auto between = [&](Index s, Index t) { return v.cat.hom(s, t).front(); };
  for (Index a = 0; a < 2; ++a)
    for (Index b = 0; b < 2; ++b)
      for (Index c = 0; c < 2; ++c)
        d.comp_mor.push_back(between(v.tensor(d.hom(b, c), d.hom(a, b)), d.hom(a, c)));
  d.unit_mor = {between(one, one), between(one, one)};
  return d;
}

// A strong action of V on a finite category D.
struct Action {
  FinCat cat;
  std::vector<Index> act_obj;  // x * |D| + a
  std::vector<Index> act_mor;  // f * |D_mor| + h
  std::vector<Index> mu;       // (x * |V| + y) * |D| + a : (x@y).a -> x.(y.a)
  std::vector<Index> eta;      // a : I.a -> a

  Index obj(Index x, Index a) const { return act_obj[x * static_cast<Index>(cat.num_objects()) + a]; }
  Index mor(Index f, Index h) const {
    return act_mor[static_cast<std::size_t>(f) * cat.num_morphisms() + h];
  }
  Index mu_at(std::size_t nv, Index x, Index y, Index a) const {
    return mu[(x * nv + y) * cat.num_objects() + a];
  }
};

inline CheckReport check_action(const FinMonCat& v, const Action& act) {
  CheckReport rep;
  const FinCat& d = act.cat;
  const auto nv = static_cast<Index>(v.n()), nd = static_cast<Index>(d.num_objects());
  for (Index f = 0; f < static_cast<Index>(v.m()); ++f)
    for (Index h = 0; h < static_cast<Index>(d.num_morphisms()); ++h) {
      Index fh = act.mor(f, h);
      rep.expect(d.src[fh] == act.obj(v.src(f), d.src[h]) && d.tgt[fh] == act.obj(v.tgt(f), d.tgt[h]),
                 "action-type", {v.cat.morphisms[f], d.morphisms[h]});
    }
  if (!rep.ok()) return rep;
  for (Index f2 = 0; f2 < static_cast<Index>(v.m()); ++f2)
    for (Index f : v.cat.into[v.src(f2)])
      for (Index h2 = 0; h2 < static_cast<Index>(d.num_morphisms()); ++h2)
        for (Index h : d.into[d.src[h2]])
          rep.expect(d.compose(act.mor(f2, h2), act.mor(f, h)) == act.mor(v.comp(f2, f), d.compose(h2, h)),
                     "action-functor", {v.cat.morphisms[f2], v.cat.morphisms[f], d.morphisms[h2], d.morphisms[h]});
  for (Index x = 0; x < nv; ++x)
    for (Index a = 0; a < nd; ++a)
      rep.expect(act.mor(v.id(x), d.identity[a]) == d.identity[act.obj(x, a)], "action-functor",
                 {v.cat.objects[x], d.objects[a]});
  for (Index a = 0; a < nd; ++a) {
    rep.expect(d.inverse(act.eta[a]) != kNone && d.src[act.eta[a]] == act.obj(v.unit, a) &&
                   d.tgt[act.eta[a]] == a,
               "action-unit-iso", {d.objects[a]});
    for (Index x = 0; x < nv; ++x)
      for (Index y = 0; y < nv; ++y) {
        Index mm = act.mu_at(nv, x, y, a);
        rep.expect(d.inverse(mm) != kNone && d.src[mm] == act.obj(v.tensor(x, y), a) &&
                       d.tgt[mm] == act.obj(x, act.obj(y, a)),
                   "action-assoc-iso", {v.cat.objects[x], v.cat.objects[y], d.objects[a]});
      }
  }
  if (!rep.ok()) return rep;
  for (Index f = 0; f < static_cast<Index>(v.m()); ++f)
    for (Index g = 0; g < static_cast<Index>(v.m()); ++g)
      for (Index h = 0; h < static_cast<Index>(d.num_morphisms()); ++h) {
        Index lhs = d.compose(act.mu_at(nv, v.tgt(f), v.tgt(g), d.tgt[h]), act.mor(v.tensor_m(f, g), h));
        Index rhs = d.compose(act.mor(f, act.mor(g, h)), act.mu_at(nv, v.src(f), v.src(g), d.src[h]));
        rep.expect(lhs == rhs, "action-assoc-natural", {v.cat.morphisms[f], v.cat.morphisms[g], d.morphisms[h]});
      }
  for (Index h = 0; h < static_cast<Index>(d.num_morphisms()); ++h)
    rep.expect(d.compose(act.eta[d.tgt[h]], act.mor(v.id(v.unit), h)) == d.compose(h, act.eta[d.src[h]]),
               "action-unit-natural", {d.morphisms[h]});
  for (Index x = 0; x < nv; ++x)
    for (Index y = 0; y < nv; ++y)
      for (Index z = 0; z < nv; ++z)
        for (Index a = 0; a < nd; ++a) {
          Index lhs = d.then({act.mor(v.a(x, y, z), d.identity[a]), act.mu_at(nv, x, v.tensor(y, z), a),
                              act.mor(v.id(x), act.mu_at(nv, y, z, a))});
          Index rhs = d.then({act.mu_at(nv, v.tensor(x, y), z, a), act.mu_at(nv, x, y, act.obj(z, a))});
          rep.expect(lhs == rhs, "action-pentagon",
                     {v.cat.objects[x], v.cat.objects[y], v.cat.objects[z], d.objects[a]});
        }
  for (Index x = 0; x < nv; ++x)
    for (Index a = 0; a < nd; ++a) {
      Index lhs = d.compose(act.mor(v.id(x), act.eta[a]), act.mu_at(nv, x, v.unit, a));
      rep.expect(lhs == act.mor(v.r(x), d.identity[a]), "action-triangle-right", {v.cat.objects[x], d.objects[a]});
      Index lhs2 = d.compose(act.eta[act.obj(x, a)], act.mu_at(nv, v.unit, x, a));
      rep.expect(lhs2 == act.mor(v.l(x), d.identity[a]), "action-triangle-left", {v.cat.objects[x], d.objects[a]});
    }
  return rep;
}

// hom(X, A, B) = D(X.A, B); g o f = g . (Y.f) . mu_{Y,X,A}; i_A = eta_A.
inline GradedCat actegory(const MonCatPtr& vp, const Action& act) {
  const FinMonCat& v = *vp;
  auto rep = check_action(v, act);
  if (!rep.ok())
    throw StructuralError("action is not strong monoidal: " + rep.violations.front().law + " at " +
                          join(rep.violations.front().witness));
  const FinCat& d = act.cat;
  const auto nv = static_cast<Index>(v.n()), nd = static_cast<Index>(d.num_objects());
  const auto md = static_cast<Index>(d.num_morphisms());
  GradedCat c;
  c.name = "actegory";
  c.base = vp;
  for (const auto& o : d.objects) c.add_object(o);
  std::vector<Index> at(static_cast<std::size_t>(nv) * nd * md, kNone);
  auto key = [&](Index x, Index a, Index h) { return (static_cast<std::size_t>(x) * nd + a) * md + h; };
  std::vector<Index> payload;
  for (Index x = 0; x < nv; ++x)
    for (Index a = 0; a < nd; ++a)
      for (Index b = 0; b < nd; ++b)
        for (Index h : d.hom(act.obj(x, a), b)) {
          at[key(x, a, h)] = c.add_elem(v.cat.objects[x] + "'" + d.objects[a] + ":" + d.morphisms[h], x, a, b);
          payload.push_back(h);
        }
  c.index();
  c.allocate();
  for (Index a = 0; a < nd; ++a) c.identity[a] = at[key(v.unit, a, act.eta[a])];
  for (Index f = 0; f < static_cast<Index>(c.num_elems()); ++f) {
    const auto& ef = c.elems[f];
    for (Index alpha : v.cat.into[ef.grade])
      c.set_reindex(alpha, f, at[key(v.src(alpha), ef.src, d.compose(payload[f], act.mor(alpha, d.identity[ef.src])))]);
  }
  for (Index g = 0; g < static_cast<Index>(c.num_elems()); ++g)
    for (Index f : c.into_obj[c.elems[g].src]) {
      Index y = c.elems[g].grade, x = c.elems[f].grade, a = c.elems[f].src;
      Index h = d.then({act.mu_at(nv, y, x, a), act.mor(v.id(y), payload[f]), payload[g]});
      c.set_compose(g, f, at[key(v.tensor(y, x), a, h)]);
    }
  c.finalize();
  return c;
}

// Z/2 acting on the walking isomorphism a <-> b by swapping its two objects.
inline Action swap_action(const FinMonCat& z2) {
  Action act;
  FinCat& d = act.cat;
  d.add_object("a");
  d.add_object("b");
  d.add_morphism("1a", 0, 0);
  d.add_morphism("1b", 1, 1);
  d.add_morphism("s", 0, 1);
  d.add_morphism("t", 1, 0);
  d.allocate();
  d.identity = {0, 1};
  const Index table[4][4] = {{0, -1, -1, 3}, {-1, 1, 2, -1}, {2, -1, -1, 1}, {-1, 3, 0, -1}};
  for (Index g = 0; g < 4; ++g)
    for (Index f = 0; f < 4; ++f) d.set_compose(g, f, table[g][f]);
  d.finalize();
  const auto nv = static_cast<Index>(z2.n());
  const Index swap_obj[2] = {1, 0}, swap_mor[4] = {1, 0, 3, 2};
  Index one = z2.cat.object_index("1");
  for (Index x = 0; x < nv; ++x)
    for (Index a = 0; a < 2; ++a) act.act_obj.push_back(x == one ? swap_obj[a] : a);
  for (Index f = 0; f < static_cast<Index>(z2.m()); ++f)
    for (Index h = 0; h < 4; ++h) act.act_mor.push_back(z2.src(f) == one ? swap_mor[h] : h);
  for (Index x = 0; x < nv; ++x)
    for (Index y = 0; y < nv; ++y)
      for (Index a = 0; a < 2; ++a) act.mu.push_back(d.identity[act.obj(z2.tensor(x, y), a)]);
  act.eta = {0, 1};
  return act;
}

// A monoid (R, m, e) in V as a one-object V-graded category.
inline GradedCat monoid_category(const MonCatPtr& vp, Index r, Index mult, Index unit) {
  VCategory d;
  d.objects = {"*"};
  d.hom_obj = {r};
  d.comp_mor = {mult};
  d.unit_mor = {unit};
  GradedCat c = enriched(vp, d);
  c.name = "monoid(" + vp->cat.objects[r] + ")";
  return c;
}

// The unit V-category: one object with hom object I.
inline GradedCat unit_category(const MonCatPtr& vp) {
  GradedCat c = monoid_category(vp, vp->unit, vp->l(vp->unit), vp->id(vp->unit));
  c.name = "unit";
  return c;
}

// One object and exactly one morphism at every grade.
inline GradedCat terminal_graded(const MonCatPtr& vp) {
  const FinMonCat& v = *vp;
  GradedCat c;
  c.name = "terminal";
  c.base = vp;
  c.add_object("*");
  for (Index x = 0; x < static_cast<Index>(v.n()); ++x) c.add_elem("*:" + v.cat.objects[x], x, 0, 0);
  c.index();
  c.allocate();
  c.identity[0] = v.unit;
  for (Index f = 0; f < static_cast<Index>(v.n()); ++f) {
    for (Index alpha : v.cat.into[f]) c.set_reindex(alpha, f, v.src(alpha));
    for (Index g = 0; g < static_cast<Index>(v.n()); ++g) c.set_compose(g, f, v.tensor(g, f));
  }
  c.finalize();
  return c;
}

// Formal opposite: a right graded category (left graded over the reverse
// base) with the same elements, endpoints swapped and composition reversed.
inline GradedCat opposite(const GradedCat& c) {
  GradedCat o;
  o.name = toggle_suffix(c.name, "^op");
  o.base = make_ptr(reverse(*c.base));
  o.objects = c.objects;
  o.identity = c.identity;
  for (Index e = 0; e < static_cast<Index>(c.num_elems()); ++e)
    o.add_elem(c.elem_ids[e], c.elems[e].grade, c.elems[e].tgt, c.elems[e].src);
  o.index();
  o.allocate();
  o.reindex_rows = c.reindex_rows;
  for (Index g = 0; g < static_cast<Index>(o.num_elems()); ++g)
    for (Index f : o.into_obj[o.elems[g].src]) o.set_compose(g, f, c.compose(f, g));
  o.finalize();
  return o;
}

// Left R-module structures in c for a monoid (R, m, e): pairs (A, a) with
// a : R'A -> A, m^*(a) = a o a and e^*(a) = i_A.
inline std::vector<std::pair<Index, Index>> monoid_actions(const GradedCat& c, Index r, Index mult,
                                                           Index unit) {
  std::vector<std::pair<Index, Index>> out;
  for (Index a = 0; a < static_cast<Index>(c.num_objects()); ++a)
    for (Index act : c.hom(r, a, a))
      if (c.reindex(mult, act) == c.compose(act, act) && c.reindex(unit, act) == c.identity[a])
        out.emplace_back(a, act);
  return out;
}

}  // namespace gradcat
