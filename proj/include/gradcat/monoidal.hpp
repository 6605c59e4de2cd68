#pragma once

#include <numeric>

#include "gradcat/core.hpp"

namespace gradcat {

// A finite monoidal category. Coherence data is stored per object tuple:
// assoc[(x*n+y)*n+z] : (x@y)@z -> x@(y@z), lunit[x] : I@x -> x,
// runit[x] : x@I -> x. braiding is empty or holds c_{x,y} : x@y -> y@x.
struct FinMonCat {
  Id name;
  FinCat cat;
  std::vector<Index> tensor_obj;
  std::vector<Index> tensor_mor;
  Index unit = kNone;
  std::vector<Index> assoc;
  std::vector<Index> lunit, runit;
  bool strict = false;
  std::vector<Index> braiding;

  std::size_t n() const { return cat.num_objects(); }
  std::size_t m() const { return cat.num_morphisms(); }

  Index tensor(Index x, Index y) const { return tensor_obj[static_cast<std::size_t>(x) * n() + y]; }
  Index tensor_m(Index f, Index g) const {
    return tensor_mor[static_cast<std::size_t>(f) * m() + g];
  }
  Index a(Index x, Index y, Index z) const {
    return assoc[(static_cast<std::size_t>(x) * n() + y) * n() + z];
  }
  Index l(Index x) const { return lunit[x]; }
  Index r(Index x) const { return runit[x]; }
  Index c(Index x, Index y) const { return braiding[static_cast<std::size_t>(x) * n() + y]; }
  bool braided() const { return !braiding.empty(); }

  Index id(Index x) const { return cat.identity[x]; }
  Index inv(Index f) const {
    Index g = cat.inverse(f);
    if (g == kNone) throw OperationError("morphism '" + cat.morphisms[f] + "' is not invertible");
    return g;
  }
  // g . f
  Index comp(Index g, Index f) const {
    Index gf = cat.compose(g, f);
    if (gf == kNone)
      throw OperationError("cannot compose '" + cat.morphisms[g] + "' after '" +
                           cat.morphisms[f] + "'");
    return gf;
  }
  Index src(Index f) const { return cat.src[f]; }
  Index tgt(Index f) const { return cat.tgt[f]; }

  void allocate() {
    cat.allocate();
    tensor_obj.assign(n() * n(), kNone);
    tensor_mor.assign(m() * m(), kNone);
    assoc.assign(n() * n() * n(), kNone);
    lunit.assign(n(), kNone);
    runit.assign(n(), kNone);
  }

  void finalize() {
    cat.finalize();
    if (unit < 0 || unit >= static_cast<Index>(n())) throw StructuralError("monoidal unit is missing");
    auto in_range = [](const std::vector<Index>& t, std::size_t size, std::size_t bound,
                       const char* what) {
      if (t.size() != size) throw StructuralError(std::string(what) + " table has the wrong size");
      for (Index v : t)
        if (v < 0 || static_cast<std::size_t>(v) >= bound)
          throw StructuralError(std::string(what) + " table is not total");
    };
    in_range(tensor_obj, n() * n(), n(), "tensor_obj");
    in_range(tensor_mor, m() * m(), m(), "tensor_mor");
    in_range(assoc, n() * n() * n(), m(), "assoc");
    in_range(lunit, n(), m(), "lunit");
    in_range(runit, n(), m(), "runit");
    if (!braiding.empty()) in_range(braiding, n() * n(), m(), "braiding");
  }

  bool same_tables(const FinMonCat& o) const {
    return cat.same_tables(o.cat) && tensor_obj == o.tensor_obj && tensor_mor == o.tensor_mor &&
           unit == o.unit && assoc == o.assoc && lunit == o.lunit && runit == o.runit &&
           braiding == o.braiding;
  }
};

using MonCatPtr = std::shared_ptr<const FinMonCat>;

inline CheckReport check_monoidal(const FinMonCat& v) {
  CheckReport rep = check_fincat(v.cat);
  if (!rep.ok()) return rep;
  const FinCat& c = v.cat;
  const auto n = static_cast<Index>(v.n());
  const auto m = static_cast<Index>(v.m());
  const auto& on = c.objects;
  const auto& mn = c.morphisms;

  for (Index f = 0; f < m; ++f)
    for (Index g = 0; g < m; ++g) {
      Index fg = v.tensor_m(f, g);
      rep.expect(c.src[fg] == v.tensor(c.src[f], c.src[g]) &&
                     c.tgt[fg] == v.tensor(c.tgt[f], c.tgt[g]),
                 "tensor-type", {mn[f], mn[g]});
    }
  if (!rep.ok()) return rep;
  for (Index x = 0; x < n; ++x)
    for (Index y = 0; y < n; ++y)
      rep.expect(v.tensor_m(v.id(x), v.id(y)) == v.id(v.tensor(x, y)), "tensor-identity",
                 {on[x], on[y]});
  for (Index f2 = 0; f2 < m; ++f2)
    for (Index f : c.into[c.src[f2]])
      for (Index g2 = 0; g2 < m; ++g2)
        for (Index g : c.into[c.src[g2]])
          rep.expect(v.comp(v.tensor_m(f2, g2), v.tensor_m(f, g)) ==
                         v.tensor_m(v.comp(f2, f), v.comp(g2, g)),
                     "tensor-interchange", {mn[f2], mn[f], mn[g2], mn[g]});

  for (Index x = 0; x < n; ++x) {
    Index lx = v.l(x), rx = v.r(x);
    rep.expect(c.src[lx] == v.tensor(v.unit, x) && c.tgt[lx] == x, "lunit-type", {on[x]});
    rep.expect(c.src[rx] == v.tensor(x, v.unit) && c.tgt[rx] == x, "runit-type", {on[x]});
    rep.expect(c.inverse(lx) != kNone, "lunit-iso", {on[x]});
    rep.expect(c.inverse(rx) != kNone, "runit-iso", {on[x]});
    for (Index y = 0; y < n; ++y)
      for (Index z = 0; z < n; ++z) {
        Index axyz = v.a(x, y, z);
        rep.expect(c.src[axyz] == v.tensor(v.tensor(x, y), z) &&
                       c.tgt[axyz] == v.tensor(x, v.tensor(y, z)),
                   "assoc-type", {on[x], on[y], on[z]});
        rep.expect(c.inverse(axyz) != kNone, "assoc-iso", {on[x], on[y], on[z]});
      }
  }
  if (!rep.ok()) return rep;

  for (Index f = 0; f < m; ++f) {
    rep.expect(v.comp(v.l(c.tgt[f]), v.tensor_m(v.id(v.unit), f)) == v.comp(f, v.l(c.src[f])),
               "lunit-natural", {mn[f]});
    rep.expect(v.comp(v.r(c.tgt[f]), v.tensor_m(f, v.id(v.unit))) == v.comp(f, v.r(c.src[f])),
               "runit-natural", {mn[f]});
  }
  for (Index f = 0; f < m; ++f)
    for (Index g = 0; g < m; ++g) {
      Index fg = v.tensor_m(f, g);
      for (Index h = 0; h < m; ++h) {
        Index lhs = v.comp(v.a(c.tgt[f], c.tgt[g], c.tgt[h]), v.tensor_m(fg, h));
        Index rhs = v.comp(v.tensor_m(f, v.tensor_m(g, h)), v.a(c.src[f], c.src[g], c.src[h]));
        rep.expect(lhs == rhs, "assoc-natural", {mn[f], mn[g], mn[h]});
      }
    }
  for (Index w = 0; w < n; ++w)
    for (Index x = 0; x < n; ++x)
      for (Index y = 0; y < n; ++y)
        for (Index z = 0; z < n; ++z) {
          // a_{w,x,y@z} . a_{w@x,y,z} = (1_w@a_{x,y,z}) . a_{w,x@y,z} . (a_{w,x,y}@1_z)
          Index lhs = v.comp(v.a(w, x, v.tensor(y, z)), v.a(v.tensor(w, x), y, z));
          Index rhs = v.comp(v.tensor_m(v.id(w), v.a(x, y, z)),
                             v.comp(v.a(w, v.tensor(x, y), z), v.tensor_m(v.a(w, x, y), v.id(z))));
          rep.expect(lhs == rhs, "pentagon", {on[w], on[x], on[y], on[z]});
        }
  for (Index x = 0; x < n; ++x)
    for (Index y = 0; y < n; ++y) {
      // (1_x@l_y) . a_{x,I,y} = r_x@1_y
      Index lhs = v.comp(v.tensor_m(v.id(x), v.l(y)), v.a(x, v.unit, y));
      rep.expect(lhs == v.tensor_m(v.r(x), v.id(y)), "triangle", {on[x], on[y]});
    }
  if (v.strict) {
    for (Index x = 0; x < n; ++x) {
      rep.expect(v.l(x) == v.id(x) && v.r(x) == v.id(x), "strict", {on[x]});
      for (Index y = 0; y < n; ++y)
        for (Index z = 0; z < n; ++z)
          rep.expect(v.a(x, y, z) == v.id(v.tensor(x, v.tensor(y, z))), "strict",
                     {on[x], on[y], on[z]});
    }
  }
  return rep;
}

// Braiding laws: typing, invertibility, naturality and both hexagons.
inline CheckReport check_braiding(const FinMonCat& v) {
  CheckReport rep;
  if (!v.braided()) {
    rep.expect(false, "braiding-present", {v.name});
    return rep;
  }
  const FinCat& c = v.cat;
  const auto n = static_cast<Index>(v.n());
  const auto m = static_cast<Index>(v.m());
  const auto& on = c.objects;
  for (Index x = 0; x < n; ++x)
    for (Index y = 0; y < n; ++y) {
      Index cxy = v.c(x, y);
      rep.expect(c.src[cxy] == v.tensor(x, y) && c.tgt[cxy] == v.tensor(y, x), "braiding-type",
                 {on[x], on[y]});
      rep.expect(c.inverse(cxy) != kNone, "braiding-iso", {on[x], on[y]});
    }
  if (!rep.ok()) return rep;
  for (Index f = 0; f < m; ++f)
    for (Index g = 0; g < m; ++g)
      rep.expect(v.comp(v.c(c.tgt[f], c.tgt[g]), v.tensor_m(f, g)) ==
                     v.comp(v.tensor_m(g, f), v.c(c.src[f], c.src[g])),
                 "braiding-natural", {c.morphisms[f], c.morphisms[g]});
  for (Index x = 0; x < n; ++x)
    for (Index y = 0; y < n; ++y)
      for (Index z = 0; z < n; ++z) {
        Index lhs = v.comp(v.a(y, z, x), v.comp(v.c(x, v.tensor(y, z)), v.a(x, y, z)));
        Index rhs = v.comp(v.tensor_m(v.id(y), v.c(x, z)),
                           v.comp(v.a(y, x, z), v.tensor_m(v.c(x, y), v.id(z))));
        rep.expect(lhs == rhs, "hexagon-1", {on[x], on[y], on[z]});
        Index lhs2 = v.comp(v.inv(v.a(z, x, y)),
                            v.comp(v.c(v.tensor(x, y), z), v.inv(v.a(x, y, z))));
        Index rhs2 = v.comp(v.tensor_m(v.c(x, z), v.id(y)),
                            v.comp(v.inv(v.a(x, z, y)), v.tensor_m(v.id(x), v.c(y, z))));
        rep.expect(lhs2 == rhs2, "hexagon-2", {on[x], on[y], on[z]});
      }
  return rep;
}

inline bool is_symmetric(const FinMonCat& v) {
  if (!v.braided()) return false;
  for (Index x = 0; x < static_cast<Index>(v.n()); ++x)
    for (Index y = 0; y < static_cast<Index>(v.n()); ++y)
      if (v.comp(v.c(y, x), v.c(x, y)) != v.id(v.tensor(x, y))) return false;
  return true;
}

// Product of monoidal categories. Object (x, y) sits at x * |W| + y and
// morphism (f, g) at f * |W_mor| + g; other code relies on this layout.
inline FinMonCat product(const FinMonCat& v, const FinMonCat& w) {
  FinMonCat p;
  p.name = v.name + "x" + w.name;
  const auto nv = static_cast<Index>(v.n()), nw = static_cast<Index>(w.n());
  const auto mv = static_cast<Index>(v.m()), mw = static_cast<Index>(w.m());
  auto ob = [&](Index x, Index y) { return x * nw + y; };
  auto mo = [&](Index f, Index g) { return f * mw + g; };
  for (Index x = 0; x < nv; ++x)
    for (Index y = 0; y < nw; ++y)
      p.cat.add_object("(" + v.cat.objects[x] + "," + w.cat.objects[y] + ")");
  for (Index f = 0; f < mv; ++f)
    for (Index g = 0; g < mw; ++g)
      p.cat.add_morphism("(" + v.cat.morphisms[f] + "," + w.cat.morphisms[g] + ")",
                         ob(v.src(f), w.src(g)), ob(v.tgt(f), w.tgt(g)));
  p.allocate();
  for (Index x = 0; x < nv; ++x)
    for (Index y = 0; y < nw; ++y) p.cat.identity[ob(x, y)] = mo(v.id(x), w.id(y));
  for (Index f2 = 0; f2 < mv; ++f2)
    for (Index f : v.cat.into[v.src(f2)])
      for (Index g2 = 0; g2 < mw; ++g2)
        for (Index g : w.cat.into[w.src(g2)])
          p.cat.set_compose(mo(f2, g2), mo(f, g), mo(v.comp(f2, f), w.comp(g2, g)));
  for (Index x = 0; x < nv; ++x)
    for (Index y = 0; y < nw; ++y)
      for (Index x2 = 0; x2 < nv; ++x2)
        for (Index y2 = 0; y2 < nw; ++y2)
          p.tensor_obj[ob(x, y) * (nv * nw) + ob(x2, y2)] = ob(v.tensor(x, x2), w.tensor(y, y2));
  const Index pm = mv * mw;
  for (Index f = 0; f < mv; ++f)
    for (Index g = 0; g < mw; ++g)
      for (Index f2 = 0; f2 < mv; ++f2)
        for (Index g2 = 0; g2 < mw; ++g2)
          p.tensor_mor[static_cast<std::size_t>(mo(f, g)) * pm + mo(f2, g2)] =
              mo(v.tensor_m(f, f2), w.tensor_m(g, g2));
  p.unit = ob(v.unit, w.unit);
  const Index pn = nv * nw;
  for (Index x = 0; x < nv; ++x)
    for (Index y = 0; y < nw; ++y) {
      p.lunit[ob(x, y)] = mo(v.l(x), w.l(y));
      p.runit[ob(x, y)] = mo(v.r(x), w.r(y));
      for (Index x2 = 0; x2 < nv; ++x2)
        for (Index y2 = 0; y2 < nw; ++y2)
          for (Index x3 = 0; x3 < nv; ++x3)
            for (Index y3 = 0; y3 < nw; ++y3)
              p.assoc[(static_cast<std::size_t>(ob(x, y)) * pn + ob(x2, y2)) * pn + ob(x3, y3)] =
                  mo(v.a(x, x2, x3), w.a(y, y2, y3));
    }
  if (v.braided() && w.braided()) {
    p.braiding.assign(static_cast<std::size_t>(pn) * pn, kNone);
    for (Index x = 0; x < nv; ++x)
      for (Index y = 0; y < nw; ++y)
        for (Index x2 = 0; x2 < nv; ++x2)
          for (Index y2 = 0; y2 < nw; ++y2)
            p.braiding[static_cast<std::size_t>(ob(x, y)) * pn + ob(x2, y2)] =
                mo(v.c(x, x2), w.c(y, y2));
  }
  p.strict = v.strict && w.strict;
  p.finalize();
  return p;
}

inline Id toggle_suffix(const Id& name, const std::string& suffix) {
  if (name.size() > suffix.size() && name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0)
    return name.substr(0, name.size() - suffix.size());
  return name + suffix;
}

inline Id reversed_name(const Id& name) { return toggle_suffix(name, "^rev"); }

// The reverse monoidal category: x @rev y = y @ x, a^rev_{x,y,z} = a_{z,y,x}^-1,
// l^rev = r and r^rev = l. Braiding c^rev_{x,y} = c_{y,x}.
inline FinMonCat reverse(const FinMonCat& v) {
  FinMonCat p;
  p.name = reversed_name(v.name);
  p.cat = v.cat;
  const auto n = static_cast<Index>(v.n()), m = static_cast<Index>(v.m());
  p.tensor_obj.assign(v.tensor_obj.size(), kNone);
  p.tensor_mor.assign(v.tensor_mor.size(), kNone);
  p.assoc.assign(v.assoc.size(), kNone);
  for (Index x = 0; x < n; ++x)
    for (Index y = 0; y < n; ++y) p.tensor_obj[x * n + y] = v.tensor(y, x);
  for (Index f = 0; f < m; ++f)
    for (Index g = 0; g < m; ++g) p.tensor_mor[static_cast<std::size_t>(f) * m + g] = v.tensor_m(g, f);
  for (Index x = 0; x < n; ++x)
    for (Index y = 0; y < n; ++y)
      for (Index z = 0; z < n; ++z) p.assoc[(x * n + y) * n + z] = v.inv(v.a(z, y, x));
  p.unit = v.unit;
  p.lunit = v.runit;
  p.runit = v.lunit;
  p.strict = v.strict;
  if (v.braided()) {
    p.braiding.assign(v.braiding.size(), kNone);
    for (Index x = 0; x < n; ++x)
      for (Index y = 0; y < n; ++y) p.braiding[x * n + y] = v.c(y, x);
  }
  p.finalize();
  return p;
}

// Formal tensor words for computing canonical coherence isomorphisms.
struct Word {
  Index obj = kNone;   // leaf object
  bool is_unit = false;
  std::vector<Word> kids;  // empty for leaves, two entries for a tensor

  static Word leaf(Index x) { return Word{x, false, {}}; }
  static Word unit() { return Word{kNone, true, {}}; }
  static Word of(Word a, Word b) {
    Word w;
    w.kids.push_back(std::move(a));
    w.kids.push_back(std::move(b));
    return w;
  }
};

inline Index word_object(const FinMonCat& v, const Word& w) {
  if (w.is_unit) return v.unit;
  if (w.kids.empty()) return w.obj;
  return v.tensor(word_object(v, w.kids[0]), word_object(v, w.kids[1]));
}

namespace detail {

inline Index normal_object(const FinMonCat& v, const std::vector<Index>& leaves, std::size_t from = 0) {
  if (from >= leaves.size()) return v.unit;
  if (from + 1 == leaves.size()) return leaves[from];
  return v.tensor(leaves[from], normal_object(v, leaves, from + 1));
}

// Morphism nf(a) @ nf(b) -> nf(a ++ b).
inline Index merge_normal(const FinMonCat& v, const std::vector<Index>& a, std::size_t from,
                          const std::vector<Index>& b) {
  Index nb = normal_object(v, b);
  if (from >= a.size()) return v.l(nb);
  if (b.empty()) return v.r(normal_object(v, a, from));
  if (from + 1 == a.size()) return v.id(v.tensor(a[from], nb));
  Index x = a[from];
  Index rest = normal_object(v, a, from + 1);
  Index step = v.a(x, rest, nb);
  return v.comp(v.tensor_m(v.id(x), merge_normal(v, a, from + 1, b)), step);
}

inline Index normalize(const FinMonCat& v, const Word& w, std::vector<Index>& leaves) {
  if (w.is_unit) return v.id(v.unit);
  if (w.kids.empty()) {
    leaves.push_back(w.obj);
    return v.id(w.obj);
  }
  std::vector<Index> la, lb;
  Index ma = normalize(v, w.kids[0], la);
  Index mb = normalize(v, w.kids[1], lb);
  Index step = merge_normal(v, la, 0, lb);
  leaves.insert(leaves.end(), la.begin(), la.end());
  leaves.insert(leaves.end(), lb.begin(), lb.end());
  return v.comp(step, v.tensor_m(ma, mb));
}

}  // namespace detail

// The unique coherence isomorphism between two bracketings of the same leaves.
inline Index canonical_iso(const FinMonCat& v, const Word& from, const Word& to) {
  std::vector<Index> lf, lt;
  Index mf = detail::normalize(v, from, lf);
  Index mt = detail::normalize(v, to, lt);
  if (lf != lt) throw OperationError("words have different leaves");
  return v.comp(v.inv(mt), mf);
}

// Opmonoidal functor F: V -> W with delta_{y,x} : F(y@x) -> Fy @ Fx and
// eps : F(I) -> I.
struct OpmonFunctor {
  MonCatPtr dom, cod;
  std::vector<Index> obj_map, mor_map;
  std::vector<Index> delta;
  Index eps = kNone;

  Index d(Index y, Index x) const { return delta[static_cast<std::size_t>(y) * dom->n() + x]; }
};

inline CheckReport check_opmonoidal(const OpmonFunctor& f) {
  const FinMonCat& v = *f.dom;
  const FinMonCat& w = *f.cod;
  FinFunctor plain{&v.cat, &w.cat, f.obj_map, f.mor_map};
  CheckReport rep = check_finfunctor(plain);
  if (!rep.ok()) return rep;
  const auto n = static_cast<Index>(v.n());
  const auto& on = v.cat.objects;
  auto F = [&](Index x) { return f.obj_map[x]; };
  auto Fm = [&](Index a) { return f.mor_map[a]; };
  for (Index y = 0; y < n; ++y)
    for (Index x = 0; x < n; ++x) {
      Index dyx = f.d(y, x);
      rep.expect(w.src(dyx) == F(v.tensor(y, x)) && w.tgt(dyx) == w.tensor(F(y), F(x)),
                 "delta-type", {on[y], on[x]});
    }
  rep.expect(w.src(f.eps) == F(v.unit) && w.tgt(f.eps) == w.unit, "eps-type", {});
  if (!rep.ok()) return rep;
  for (Index g = 0; g < static_cast<Index>(v.m()); ++g)
    for (Index h = 0; h < static_cast<Index>(v.m()); ++h) {
      Index lhs = w.comp(w.tensor_m(Fm(g), Fm(h)), f.d(v.src(g), v.src(h)));
      Index rhs = w.comp(f.d(v.tgt(g), v.tgt(h)), Fm(v.tensor_m(g, h)));
      rep.expect(lhs == rhs, "delta-natural", {v.cat.morphisms[g], v.cat.morphisms[h]});
    }
  for (Index z = 0; z < n; ++z)
    for (Index y = 0; y < n; ++y)
      for (Index x = 0; x < n; ++x) {
        Index lhs = w.comp(w.a(F(z), F(y), F(x)),
                           w.comp(w.tensor_m(f.d(z, y), w.id(F(x))), f.d(v.tensor(z, y), x)));
        Index rhs = w.comp(w.tensor_m(w.id(F(z)), f.d(y, x)),
                           w.comp(f.d(z, v.tensor(y, x)), Fm(v.a(z, y, x))));
        rep.expect(lhs == rhs, "coassociative", {on[z], on[y], on[x]});
      }
  for (Index x = 0; x < n; ++x) {
    Index lhs = w.comp(w.l(F(x)), w.comp(w.tensor_m(f.eps, w.id(F(x))), f.d(v.unit, x)));
    rep.expect(lhs == Fm(v.l(x)), "counit-left", {on[x]});
    Index rhs = w.comp(w.r(F(x)), w.comp(w.tensor_m(w.id(F(x)), f.eps), f.d(x, v.unit)));
    rep.expect(rhs == Fm(v.r(x)), "counit-right", {on[x]});
  }
  return rep;
}

inline bool is_normal(const OpmonFunctor& f) { return f.cod->cat.inverse(f.eps) != kNone; }
inline bool is_strictly_normal(const OpmonFunctor& f) {
  return f.obj_map[f.dom->unit] == f.cod->unit && f.eps == f.cod->id(f.cod->unit);
}

inline OpmonFunctor identity_opmon(const MonCatPtr& v) {
  OpmonFunctor f{v, v, {}, {}, {}, v->id(v->unit)};
  f.obj_map.resize(v->n());
  std::iota(f.obj_map.begin(), f.obj_map.end(), 0);
  f.mor_map.resize(v->m());
  std::iota(f.mor_map.begin(), f.mor_map.end(), 0);
  for (Index y = 0; y < static_cast<Index>(v->n()); ++y)
    for (Index x = 0; x < static_cast<Index>(v->n()); ++x) f.delta.push_back(v->id(v->tensor(y, x)));
  return f;
}

// Inclusions V -> V x W, x |-> (x, I), and W -> V x W, y |-> (I, y); `p` must be
// product(v, w). delta uses the unitor on the unit component, eps is 1.
inline OpmonFunctor inclusion_left(const MonCatPtr& v, const MonCatPtr& w, const MonCatPtr& p) {
  OpmonFunctor f{v, p, {}, {}, {}, p->id(p->unit)};
  const auto nw = static_cast<Index>(w->n()), mw = static_cast<Index>(w->m());
  for (Index x = 0; x < static_cast<Index>(v->n()); ++x) f.obj_map.push_back(x * nw + w->unit);
  for (Index a = 0; a < static_cast<Index>(v->m()); ++a)
    f.mor_map.push_back(a * mw + w->id(w->unit));
  Index unit_fix = w->inv(w->l(w->unit));
  for (Index y = 0; y < static_cast<Index>(v->n()); ++y)
    for (Index x = 0; x < static_cast<Index>(v->n()); ++x)
      f.delta.push_back(v->id(v->tensor(y, x)) * mw + unit_fix);
  return f;
}

inline OpmonFunctor inclusion_right(const MonCatPtr& v, const MonCatPtr& w, const MonCatPtr& p) {
  OpmonFunctor f{w, p, {}, {}, {}, p->id(p->unit)};
  const auto nw = static_cast<Index>(w->n()), mw = static_cast<Index>(w->m());
  for (Index y = 0; y < nw; ++y) f.obj_map.push_back(v->unit * nw + y);
  for (Index b = 0; b < mw; ++b) f.mor_map.push_back(v->id(v->unit) * mw + b);
  Index unit_fix = v->inv(v->l(v->unit));
  for (Index y = 0; y < nw; ++y)
    for (Index x = 0; x < nw; ++x) f.delta.push_back(unit_fix * mw + w->id(w->tensor(y, x)));
  return f;
}

// Strict monoidal swap product(v, w) -> product(w, v); `from` and `to` must be
// those products.
inline OpmonFunctor swap_factors(const MonCatPtr& v, const MonCatPtr& w, const MonCatPtr& from,
                                 const MonCatPtr& to) {
  OpmonFunctor f{from, to, {}, {}, {}, to->id(to->unit)};
  const auto nv = static_cast<Index>(v->n()), nw = static_cast<Index>(w->n());
  const auto mv = static_cast<Index>(v->m()), mw = static_cast<Index>(w->m());
  for (Index x = 0; x < nv; ++x)
    for (Index y = 0; y < nw; ++y) f.obj_map.push_back(y * nv + x);
  for (Index a = 0; a < mv; ++a)
    for (Index b = 0; b < mw; ++b) f.mor_map.push_back(b * mv + a);
  for (Index s = 0; s < nv * nw; ++s)
    for (Index t = 0; t < nv * nw; ++t)
      f.delta.push_back(to->id(to->tensor(f.obj_map[s], f.obj_map[t])));
  return f;
}

inline MonCatPtr make_ptr(FinMonCat v) { return std::make_shared<const FinMonCat>(std::move(v)); }

// Single-object, single-morphism monoidal category.
inline FinMonCat terminal_base() {
  FinMonCat v;
  v.name = "1";
  v.cat.add_object("*");
  v.cat.add_morphism("1*", 0, 0);
  v.allocate();
  v.cat.identity[0] = 0;
  v.cat.set_compose(0, 0, 0);
  v.tensor_obj = {0};
  v.tensor_mor = {0};
  v.unit = 0;
  v.assoc = {0};
  v.lunit = {0};
  v.runit = {0};
  v.strict = true;
  v.braiding = {0};
  v.finalize();
  return v;
}

// Discrete monoidal category on a finite monoid given by its table.
inline FinMonCat discrete_monoid(const Id& name, const std::vector<Id>& elems,
                                 const std::vector<Index>& mult, Index unit, bool commutative) {
  FinMonCat v;
  v.name = name;
  const auto n = static_cast<Index>(elems.size());
  for (Index x = 0; x < n; ++x) v.cat.add_object(elems[x]);
  for (Index x = 0; x < n; ++x) v.cat.add_morphism("1_" + elems[x], x, x);
  v.allocate();
  for (Index x = 0; x < n; ++x) {
    v.cat.identity[x] = x;
    v.cat.set_compose(x, x, x);
    v.lunit[x] = x;
    v.runit[x] = x;
  }
  v.tensor_obj = mult;
  v.tensor_mor = mult;
  for (Index x = 0; x < n; ++x)
    for (Index y = 0; y < n; ++y)
      for (Index z = 0; z < n; ++z)
        v.assoc[(x * n + y) * n + z] = mult[x * n + mult[y * n + z]];
  v.unit = unit;
  v.strict = true;
  if (commutative) v.braiding = mult;
  v.finalize();
  return v;
}

inline FinMonCat discrete_cyclic(int order) {
  std::vector<Id> elems;
  std::vector<Index> mult;
  for (int i = 0; i < order; ++i) elems.push_back(std::to_string(i));
  for (int i = 0; i < order; ++i)
    for (int j = 0; j < order; ++j) mult.push_back((i + j) % order);
  return discrete_monoid("disc(Z/" + std::to_string(order) + ")", elems, mult, 0, true);
}

// The two-element chain 0 <= 1 with meet as tensor and 1 as unit.
inline FinMonCat poset_meet() {
  FinMonCat v;
  v.name = "({0<1},min)";
  v.cat.add_object("0");
  v.cat.add_object("1");
  v.cat.add_morphism("1_0", 0, 0);
  v.cat.add_morphism("1_1", 1, 1);
  v.cat.add_morphism("0<1", 0, 1);
  v.allocate();
  v.cat.identity = {0, 1};
  v.cat.set_compose(0, 0, 0);
  v.cat.set_compose(1, 1, 1);
  v.cat.set_compose(2, 0, 2);
  v.cat.set_compose(1, 2, 2);
  auto mor_between = [](Index s, Index t) { return s == t ? s : 2; };
  for (Index x = 0; x < 2; ++x)
    for (Index y = 0; y < 2; ++y) v.tensor_obj[x * 2 + y] = std::min(x, y);
  const std::vector<Index> msrc = {0, 1, 0}, mtgt = {0, 1, 1};
  for (Index f = 0; f < 3; ++f)
    for (Index g = 0; g < 3; ++g)
      v.tensor_mor[f * 3 + g] =
          mor_between(std::min(msrc[f], msrc[g]), std::min(mtgt[f], mtgt[g]));
  for (Index x = 0; x < 2; ++x) {
    v.lunit[x] = x;
    v.runit[x] = x;
    for (Index y = 0; y < 2; ++y)
      for (Index z = 0; z < 2; ++z) v.assoc[(x * 2 + y) * 2 + z] = std::min({x, y, z});
  }
  v.unit = 1;
  v.strict = true;
  v.braiding = v.tensor_obj;
  v.finalize();
  return v;
}

// Skeletal category with objects Z/n and automorphisms a subgroup of Z/N,
// tensor adding objects and adding exponents; the braiding is
// c_{a,b} = zeta_N^{beta(a,b)}. Morphism "a:k" is zeta_N^k on a.
inline FinMonCat bicharacter(int n, int big_n, const std::function<int(int, int)>& beta_exp) {
  int d = big_n;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) d = std::gcd(d, ((beta_exp(a, b) % big_n) + big_n) % big_n);
  if (d == 0) d = big_n;
  const int k = big_n / d;  // number of automorphisms per object
  FinMonCat v;
  v.name = "B(Z/" + std::to_string(n) + ",N=" + std::to_string(big_n) + ")";
  for (int a = 0; a < n; ++a) v.cat.add_object(std::to_string(a));
  auto mor = [&](int a, int e) { return a * k + (((e % big_n) + big_n) % big_n) / d; };
  for (int a = 0; a < n; ++a)
    for (int j = 0; j < k; ++j) v.cat.add_morphism(std::to_string(a) + ":" + std::to_string(j * d), a, a);
  v.allocate();
  for (int a = 0; a < n; ++a) {
    v.cat.identity[a] = mor(a, 0);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) v.cat.set_compose(mor(a, i * d), mor(a, j * d), mor(a, (i + j) * d));
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) v.tensor_obj[a * n + b] = (a + b) % n;
  for (int a = 0; a < n; ++a)
    for (int i = 0; i < k; ++i)
      for (int b = 0; b < n; ++b)
        for (int j = 0; j < k; ++j)
          v.tensor_mor[static_cast<std::size_t>(mor(a, i * d)) * v.m() + mor(b, j * d)] =
              mor((a + b) % n, (i + j) * d);
  for (int a = 0; a < n; ++a) {
    v.lunit[a] = mor(a, 0);
    v.runit[a] = mor(a, 0);
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) v.assoc[(a * n + b) * n + c] = mor((a + b + c) % n, 0);
  }
  v.unit = 0;
  v.strict = true;
  v.braiding.assign(static_cast<std::size_t>(n) * n, kNone);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) v.braiding[a * n + b] = mor((a + b) % n, beta_exp(a, b));
  v.finalize();
  return v;
}

// B(Z/4, i^{xy}): braided, not symmetric.
inline FinMonCat bicharacter_z4() {
  FinMonCat v = bicharacter(4, 4, [](int a, int b) { return a * b; });
  v.name = "B(Z/4,i^xy)";
  return v;
}

// Objects Z/2, automorphisms {+,-}, associator (-1)^{xyz}: a skeletal
// monoidal category that is not strict.
inline FinMonCat twisted_z2() {
  FinMonCat v;
  v.name = "Z/2^omega";
  for (int a = 0; a < 2; ++a) v.cat.add_object(std::to_string(a));
  auto mor = [](int a, int s) { return a * 2 + s; };  // s = 0 for +1, 1 for -1
  for (int a = 0; a < 2; ++a) {
    v.cat.add_morphism(std::to_string(a) + ":+", a, a);
    v.cat.add_morphism(std::to_string(a) + ":-", a, a);
  }
  v.allocate();
  for (int a = 0; a < 2; ++a) {
    v.cat.identity[a] = mor(a, 0);
    for (int s = 0; s < 2; ++s)
      for (int t = 0; t < 2; ++t) v.cat.set_compose(mor(a, s), mor(a, t), mor(a, s ^ t));
  }
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      v.tensor_obj[a * 2 + b] = a ^ b;
      for (int s = 0; s < 2; ++s)
        for (int t = 0; t < 2; ++t) v.tensor_mor[mor(a, s) * 4 + mor(b, t)] = mor(a ^ b, s ^ t);
    }
  for (int a = 0; a < 2; ++a) {
    v.lunit[a] = mor(a, 0);
    v.runit[a] = mor(a, 0);
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) v.assoc[(a * 2 + b) * 2 + c] = mor(a ^ b ^ c, a & b & c);
  }
  v.unit = 0;
  v.strict = false;
  v.finalize();
  return v;
}

}  // namespace gradcat
