#pragma once

#include <map>
#include <numeric>
#include <random>

#include "gradcat/bifunctor.hpp"

namespace gradcat {

// A normal duoidal structure on `base` (the @ structure). `star` shares the
// underlying category and holds the second product with its coherence
// isomorphisms alpha, lambda, rho; its unit is the unit of `base` and nu = 1.
// xi[((p * n + p') * n + q) * n + q'] : (p @ q) * (p' @ q') -> (p * p') @ (q * q').
struct DuoidalData {
  Id name;
  MonCatPtr base;
  FinMonCat star;
  std::vector<Index> xi;
  Index mu = kNone;     // I * I -> I
  Index gamma = kNone;  // I -> I @ I

  Index n() const { return static_cast<Index>(base->n()); }
  Index s(Index x, Index y) const { return star.tensor(x, y); }
  Index s_m(Index f, Index g) const { return star.tensor_m(f, g); }
  Index x(Index p, Index p2, Index q, Index q2) const {
    const auto k = static_cast<std::size_t>(n());
    return xi[((p * k + p2) * k + q) * k + q2];
  }
};

// sigma : X * X' -> X @ X' and tau : X * X' -> X' @ X at x * n + x'.
struct SigmaTau {
  std::vector<Index> sigma, tau;
  Index n = 0;
  Index sig(Index x, Index x2) const { return sigma[x * n + x2]; }
  Index ta(Index x, Index x2) const { return tau[x * n + x2]; }
};

// The duoidal structure of a braided V: * = @ and xi is the middle-four
// interchange built from c_{q, p'} and associators.
inline DuoidalData braided_duoidal(const MonCatPtr& vp) {
  const FinMonCat& v = *vp;
  if (!v.braided()) throw StructuralError("'" + v.name + "' carries no braiding");
  DuoidalData d;
  d.name = "braided(" + v.name + ")";
  d.base = vp;
  d.star = v;
  d.star.name = v.name + "*";
  const Index n = d.n();
  for (Index p = 0; p < n; ++p)
    for (Index p2 = 0; p2 < n; ++p2)
      for (Index q = 0; q < n; ++q)
        for (Index q2 = 0; q2 < n; ++q2) {
          Index k = v.a(p, q, v.tensor(p2, q2));
          k = v.comp(v.tensor_m(v.id(p), v.inv(v.a(q, p2, q2))), k);
          k = v.comp(v.tensor_m(v.id(p), v.tensor_m(v.c(q, p2), v.id(q2))), k);
          k = v.comp(v.tensor_m(v.id(p), v.a(p2, q, q2)), k);
          k = v.comp(v.inv(v.a(p, p2, v.tensor(q, q2))), k);
          d.xi.push_back(k);
        }
  d.mu = v.l(v.unit);
  d.gamma = v.inv(v.l(v.unit));
  return d;
}

// B(Z/n, zeta_N^beta) for an exponent table beta[a][b]; beta must be additive
// in each variable modulo N.
inline DuoidalData braided_from_bicharacter(int n, int big_n, const std::vector<std::vector<int>>& beta) {
  if (n <= 0 || big_n <= 0 || beta.size() != static_cast<std::size_t>(n))
    throw StructuralError("bicharacter table has the wrong size");
  for (const auto& row : beta)
    if (row.size() != static_cast<std::size_t>(n)) throw StructuralError("bicharacter table has the wrong size");
  auto md = [&](int k) { return ((k % big_n) + big_n) % big_n; };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        if (md(beta[(a + b) % n][c]) != md(beta[a][c] + beta[b][c]) ||
            md(beta[c][(a + b) % n]) != md(beta[c][a] + beta[c][b]))
          throw StructuralError("beta is not a bicharacter at (" + std::to_string(a) + "," + std::to_string(b) +
                                "," + std::to_string(c) + ")");
      }
  FinMonCat v = bicharacter(n, big_n, [&](int a, int b) { return beta[a][b]; });
  return braided_duoidal(make_ptr(std::move(v)));
}

inline SigmaTau compute_sigma_tau(const DuoidalData& d) {
  const FinMonCat& v = *d.base;
  const FinMonCat& s = d.star;
  SigmaTau st;
  st.n = d.n();
  const Index i = v.unit;
  for (Index x = 0; x < st.n; ++x)
    for (Index x2 = 0; x2 < st.n; ++x2) {
      Index k = d.s_m(v.inv(v.r(x)), v.inv(v.l(x2)));
      k = v.comp(d.x(x, i, i, x2), k);
      st.sigma.push_back(v.comp(v.tensor_m(s.r(x), s.l(x2)), k));
      Index t = d.s_m(v.inv(v.l(x)), v.inv(v.r(x2)));
      t = v.comp(d.x(i, x2, x, i), t);
      st.tau.push_back(v.comp(v.tensor_m(s.l(x2), s.r(x)), t));
    }
  return st;
}

namespace detail {

// * as an opmonoidal functor V x V -> V with delta = xi and eps = mu.
inline OpmonFunctor star_functor(const DuoidalData& d, const MonCatPtr& vv) {
  const FinMonCat& v = *d.base;
  const Index n = d.n(), m = static_cast<Index>(v.m());
  OpmonFunctor f{vv, d.base, {}, {}, {}, d.mu};
  for (Index x = 0; x < n; ++x)
    for (Index y = 0; y < n; ++y) f.obj_map.push_back(d.s(x, y));
  for (Index a = 0; a < m; ++a)
    for (Index b = 0; b < m; ++b) f.mor_map.push_back(d.s_m(a, b));
  for (Index p = 0; p < n; ++p)
    for (Index p2 = 0; p2 < n; ++p2)
      for (Index q = 0; q < n; ++q)
        for (Index q2 = 0; q2 < n; ++q2) f.delta.push_back(d.x(p, p2, q, q2));
  return f;
}

}  // namespace detail

// Coherence of the pseudomonoid (V, *, I) in opmonoidal functors: * and J are
// opmonoidal, alpha, lambda, rho are opmonoidal transformations, and * is a
// monoidal structure on the same category.
inline CheckReport check_duoidal(const DuoidalData& d) {
  CheckReport rep;
  const FinMonCat& v = *d.base;
  const FinMonCat& s = d.star;
  const Index n = d.n();
  rep.expect(s.cat.same_tables(v.cat), "star-shape", {d.name});
  rep.expect(s.unit == v.unit, "normal", {d.name});
  rep.expect(d.xi.size() == static_cast<std::size_t>(n) * n * n * n, "star-shape", {"xi"});
  if (!rep.ok()) return rep;
  rep.merge(detail::prefixed(check_monoidal(s), "star-monoidal:"));
  auto vv = make_ptr(product(v, v));
  rep.merge(detail::prefixed(check_opmonoidal(detail::star_functor(d, vv)), "star-opmonoidal:"));
  auto one = make_ptr(terminal_base());
  OpmonFunctor j{one, d.base, {v.unit}, {v.id(v.unit)}, {d.gamma}, v.id(v.unit)};
  rep.merge(detail::prefixed(check_opmonoidal(j), "unit-opmonoidal:"));
  if (!rep.ok()) return rep;
  const auto& on = v.cat.objects;
  const Index i = v.unit;
  // alpha : (x * y) * z -> x * (y * z) against delta of both sides
  for (Index x = 0; x < n; ++x)
    for (Index y = 0; y < n; ++y)
      for (Index z = 0; z < n; ++z)
        for (Index x2 = 0; x2 < n; ++x2)
          for (Index y2 = 0; y2 < n; ++y2)
            for (Index z2 = 0; z2 < n; ++z2) {
              Index X = v.tensor(x, x2), Y = v.tensor(y, y2), Z = v.tensor(z, z2);
              Index df = v.comp(d.x(d.s(x, y), z, d.s(x2, y2), z2), d.s_m(d.x(x, y, x2, y2), v.id(Z)));
              Index dg = v.comp(d.x(x, d.s(y, z), x2, d.s(y2, z2)), d.s_m(v.id(X), d.x(y, z, y2, z2)));
              Index lhs = v.comp(dg, s.a(X, Y, Z));
              Index rhs = v.comp(v.tensor_m(s.a(x, y, z), s.a(x2, y2, z2)), df);
              rep.expect(lhs == rhs, "alpha-opmonoidal", {on[x], on[y], on[z], on[x2], on[y2], on[z2]});
            }
  rep.expect(v.comp(d.mu, d.s_m(v.id(i), d.mu)) == v.comp(v.comp(d.mu, d.s_m(d.mu, v.id(i))), s.inv(s.a(i, i, i))),
             "alpha-opmonoidal", {"counit"});
  for (Index x = 0; x < n; ++x)
    for (Index x2 = 0; x2 < n; ++x2) {
      Index dl = v.comp(d.x(i, x, i, x2), d.s_m(d.gamma, v.id(v.tensor(x, x2))));
      rep.expect(v.comp(v.tensor_m(s.l(x), s.l(x2)), dl) == s.l(v.tensor(x, x2)), "lambda-opmonoidal",
                 {on[x], on[x2]});
      Index dr = v.comp(d.x(x, i, x2, i), d.s_m(v.id(v.tensor(x, x2)), d.gamma));
      rep.expect(v.comp(v.tensor_m(s.r(x), s.r(x2)), dr) == s.r(v.tensor(x, x2)), "rho-opmonoidal",
                 {on[x], on[x2]});
    }
  rep.expect(s.l(i) == d.mu, "lambda-opmonoidal", {"counit"});
  rep.expect(s.r(i) == d.mu, "rho-opmonoidal", {"counit"});
  return rep;
}

// C_* : hom((X, X'), A, B) = C(X * X'; A, B), graded over V x V and presented
// as a V-V^rev-bigraded category. f_left[e] = rho^*(e) at (X, I) and
// f_right[e] = lambda^*(e) at (I, X).
struct StarCategory {
  GradedPtr source;
  BigradedCat bigraded;
  std::vector<Index> f_left, f_right;
  std::vector<Index> payload;  // C_* element -> C element
};

inline StarCategory c_star(const DuoidalData& d, const GradedPtr& cp) {
  const GradedCat& C = *cp;
  const FinMonCat& v = *d.base;
  if (!C.base->same_tables(v)) throw StructuralError("'" + C.name + "' is not graded over " + v.name);
  BigradedBase base = bigraded_base(d.base, make_ptr(reverse(v)));
  const Index n = d.n(), m = static_cast<Index>(v.m());
  const auto ne = static_cast<Index>(C.num_elems());
  GradedCat c;
  c.name = C.name + "_*";
  c.base = base.product;
  for (const auto& o : C.objects) c.add_object(o);
  StarCategory out;
  out.source = cp;
  std::vector<Index> at(static_cast<std::size_t>(n) * n * ne, kNone);
  auto key = [&](Index x, Index x2, Index e) { return (static_cast<std::size_t>(x) * n + x2) * ne + e; };
  for (Index x = 0; x < n; ++x)
    for (Index x2 = 0; x2 < n; ++x2)
      for (Index e = 0; e < ne; ++e) {
        if (C.elems[e].grade != d.s(x, x2)) continue;
        at[key(x, x2, e)] = c.add_elem(C.elem_ids[e] + "@(" + v.cat.objects[x] + "," + v.cat.objects[x2] + ")",
                                       base.grade(x, x2), C.elems[e].src, C.elems[e].tgt);
        out.payload.push_back(e);
      }
  c.index();
  c.allocate();
  const FinMonCat& p = *base.product;
  for (Index a = 0; a < static_cast<Index>(C.num_objects()); ++a)
    c.identity[a] = at[key(v.unit, v.unit, C.reindex(d.mu, C.identity[a]))];
  for (Index e = 0; e < static_cast<Index>(c.num_elems()); ++e)
    for (Index ab : p.cat.into[c.elems[e].grade]) {
      Index al = ab / m, al2 = ab % m;
      c.set_reindex(ab, e, at[key(v.src(al), v.src(al2), C.reindex(d.s_m(al, al2), out.payload[e]))]);
    }
  for (Index g = 0; g < static_cast<Index>(c.num_elems()); ++g)
    for (Index f : c.into_obj[c.elems[g].src]) {
      Index y = base.left_part(c.elems[g].grade), y2 = base.right_part(c.elems[g].grade);
      Index x = base.left_part(c.elems[f].grade), x2 = base.right_part(c.elems[f].grade);
      Index comp = C.reindex(d.x(y, y2, x, x2), C.compose(out.payload[g], out.payload[f]));
      c.set_compose(g, f, at[key(v.tensor(y, x), v.tensor(y2, x2), comp)]);
    }
  c.finalize();
  for (Index e = 0; e < ne; ++e) {
    Index x = C.elems[e].grade;
    out.f_left.push_back(at[key(x, v.unit, C.reindex(d.star.r(x), e))]);
    out.f_right.push_back(at[key(v.unit, x, C.reindex(d.star.l(x), e))]);
  }
  out.bigraded = make_bigraded(base, make_ptr(std::move(c)));
  return out;
}

// The identity-on-objects maps C -> U_l^* C_* and C -> U_r^* C_* as graded
// functors into the two views; both should be isomorphisms.
inline GradedFunctor left_view_iso(const StarCategory& s) {
  GradedFunctor F{s.source, s.bigraded.left_view, {}, {}};
  F.obj_map.resize(s.source->num_objects());
  std::iota(F.obj_map.begin(), F.obj_map.end(), 0);
  for (Index e : s.f_left) F.elem_map.push_back(s.bigraded.to_left[e]);
  return F;
}

inline GradedFunctor right_view_iso(const StarCategory& s) {
  GradedCat view = *s.bigraded.right_view;
  view.base = s.source->base;
  GradedFunctor F{s.source, make_ptr(std::move(view)), {}, {}};
  F.obj_map.resize(s.source->num_objects());
  std::iota(F.obj_map.begin(), F.obj_map.end(), 0);
  for (Index e : s.f_right) F.elem_map.push_back(s.bigraded.to_right[e]);
  return F;
}

inline bool vgraded_shape_ok(const GradedCat& c, const Square& s) {
  const auto ne = static_cast<Index>(c.num_elems());
  for (Index e : {s.f, s.g, s.phi, s.phi2})
    if (e < 0 || e >= ne) return false;
  const auto &f = c.elems[s.f], &g = c.elems[s.g], &p = c.elems[s.phi], &q = c.elems[s.phi2];
  return f.grade == g.grade && p.grade == q.grade && p.src == f.src && p.tgt == g.src && q.src == f.tgt &&
         q.tgt == g.tgt;
}

// sigma^*(g o phi) = tau^*(phi2 o f).
inline bool is_vgraded_square(const GradedCat& c, const SigmaTau& st, const Square& s) {
  if (!vgraded_shape_ok(c, s)) throw StructuralError("quadruple does not have the shape of a square");
  Index x = c.elems[s.f].grade, x2 = c.elems[s.phi].grade;
  return c.reindex(st.sig(x, x2), c.compose(s.g, s.phi)) == c.reindex(st.ta(x, x2), c.compose(s.phi2, s.f));
}

namespace detail {

// Calls visit(Square) for every well-shaped quadruple; false stops early.
template <class Visit>
void for_each_quadruple(const GradedCat& c, Visit&& visit) {
  const auto ne = static_cast<Index>(c.num_elems());
  const auto ng = static_cast<Index>(c.base->n());
  for (Index f = 0; f < ne; ++f)
    for (Index g = 0; g < ne; ++g) {
      if (c.elems[g].grade != c.elems[f].grade) continue;
      for (Index x2 = 0; x2 < ng; ++x2)
        for (Index phi : c.hom(x2, c.elems[f].src, c.elems[g].src))
          for (Index phi2 : c.hom(x2, c.elems[f].tgt, c.elems[g].tgt))
            if (!visit(Square{f, g, phi, phi2})) return;
    }
}

inline std::size_t count_quadruples(const GradedCat& c, std::size_t cap) {
  std::size_t k = 0;
  for_each_quadruple(c, [&](const Square&) { return ++k <= cap; });
  return k;
}

}  // namespace detail

// (f, g, phi, phi2) is a V-graded square iff (f_l, g_l, phi_r, phi2_r) is a
// bigraded square in C_*; checked on every quadruple.
inline CheckReport equivalence_check(const DuoidalData& d, const GradedPtr& c, const Budget& budget = {}) {
  const std::size_t cap = budget.max_hom * budget.max_objects;
  if (detail::count_quadruples(*c, cap) > cap)
    throw BudgetExceeded("more than " + std::to_string(cap) + " quadruples in '" + c->name + "'");
  const auto st = compute_sigma_tau(d);
  const auto cs = c_star(d, c);
  CheckReport rep;
  detail::for_each_quadruple(*c, [&](const Square& s) {
    bool a = is_vgraded_square(*c, st, s);
    Square t{cs.f_left[s.f], cs.f_left[s.g], cs.f_right[s.phi], cs.f_right[s.phi2]};
    bool b = is_bigraded_square(cs.bigraded, t).has_value();
    const auto& ids = c->elem_ids;
    rep.expect(a == b, "square-correspondence", {ids[s.f], ids[s.g], ids[s.phi], ids[s.phi2]});
    return true;
  });
  return rep;
}

// Enriched square in a V-category D for morphisms f : X -> D(A, A'),
// g : X -> D(B, B'), phi : X' -> D(A, B), phi2 : X' -> D(A', B') of V:
// m . (g @ phi) . sigma = m . (phi2 @ f) . tau.
inline bool is_enriched_square(const FinMonCat& v, const SigmaTau& st, const VCategory& dc, Index a, Index a2,
                               Index b, Index b2, Index f, Index g, Index phi, Index phi2) {
  const FinCat& c = v.cat;
  if (c.tgt[f] != dc.hom(a, a2) || c.tgt[g] != dc.hom(b, b2) || c.tgt[phi] != dc.hom(a, b) ||
      c.tgt[phi2] != dc.hom(a2, b2) || c.src[f] != c.src[g] || c.src[phi] != c.src[phi2])
    throw StructuralError("morphisms do not have the shape of an enriched square");
  Index x = c.src[f], x2 = c.src[phi];
  Index lhs = v.comp(dc.comp(a, b, b2), v.comp(v.tensor_m(g, phi), st.sig(x, x2)));
  Index rhs = v.comp(dc.comp(a, a2, b2), v.comp(v.tensor_m(phi2, f), st.ta(x, x2)));
  return lhs == rhs;
}

struct FlipCounterexample {
  Id category;
  Square square;  // a V-graded square whose flip (phi, phi2, f, g) is not one
};

struct FlipVerdict {
  // the proof-shaped square when one fails, else the first one found by search
  std::optional<FlipCounterexample> counterexample;
  std::optional<FlipCounterexample> found_by_search;
  // pairs (X, X') at which the square (r_X, c_{X X'}, r_X', 1) in V fails to flip
  std::vector<std::pair<Index, Index>> proof_failures;
  std::size_t squares_tested = 0;
  bool symmetric_consistent() const { return !counterexample && proof_failures.empty(); }
  bool shape_matches_proof() const { return counterexample && !proof_failures.empty(); }
};

// The square (r_X, c_{X X'}, r_X', 1_{X' @ X}) in V as a left V-graded category.
inline Square proof_square(const FinMonCat& v, const GradedCat& self, Index x, Index x2) {
  auto elem = [&](Index grade, Index a, Index mor) {
    return self.elem_index(v.cat.objects[grade] + "'" + v.cat.objects[a] + ":" + v.cat.morphisms[mor]);
  };
  return {elem(x, v.unit, v.r(x)), elem(x, x2, v.c(x, x2)), elem(x2, v.unit, v.r(x2)),
          elem(x2, x, v.id(v.tensor(x2, x)))};
}

// Searches for a V-graded square that cannot be flipped: exhaustively in small
// built-in categories over the base, by seeded sampling once a category has
// more than `exhaustive_limit` quadruples.
inline FlipVerdict flip_test(const DuoidalData& d, std::uint64_t seed = 1, std::size_t exhaustive_limit = 200000,
                             std::size_t samples = 20000) {
  const auto st = compute_sigma_tau(d);
  const FinMonCat& v = *d.base;
  FlipVerdict out;
  auto self = make_ptr(self_graded(d.base));
  if (v.braided())
    for (Index x = 0; x < d.n(); ++x)
      for (Index x2 = 0; x2 < d.n(); ++x2) {
        Square s = proof_square(v, *self, x, x2);
        if (is_vgraded_square(*self, st, s) && !is_vgraded_square(*self, st, {s.phi, s.phi2, s.f, s.g})) {
          out.proof_failures.emplace_back(x, x2);
          if (!out.counterexample) out.counterexample = FlipCounterexample{self->name, s};
        }
      }
  std::vector<GradedPtr> cats{self};
  try {
    cats.push_back(make_ptr(enriched(d.base, translation_vcategory(v))));
  } catch (const StructuralError&) {
    // objects do not form a group
  }
  for (Index x = 0; x < d.n(); ++x) cats.push_back(make_ptr(two_object(d.base, x)));
  std::mt19937_64 rng(seed);
  for (const auto& c : cats) {
    auto test = [&](const Square& s) {
      ++out.squares_tested;
      if (is_vgraded_square(*c, st, s) && !is_vgraded_square(*c, st, {s.phi, s.phi2, s.f, s.g})) {
        out.found_by_search = FlipCounterexample{c->name, s};
        return false;
      }
      return true;
    };
    if (detail::count_quadruples(*c, exhaustive_limit) <= exhaustive_limit) {
      detail::for_each_quadruple(*c, test);
    } else {
      const auto ne = static_cast<Index>(c->num_elems());
      std::uniform_int_distribution<Index> pick(0, ne - 1);
      for (std::size_t k = 0; k < samples && !out.found_by_search; ++k) {
        Index f = pick(rng), phi = pick(rng);
        if (c->elems[phi].src != c->elems[f].src) continue;
        std::vector<Index> g_choices, p_choices;
        for (Index b2 = 0; b2 < static_cast<Index>(c->num_objects()); ++b2)
          for (Index g : c->hom(c->elems[f].grade, c->elems[phi].tgt, b2))
            for (Index phi2 : c->hom(c->elems[phi].grade, c->elems[f].tgt, b2)) {
              g_choices.push_back(g);
              p_choices.push_back(phi2);
            }
        if (g_choices.empty()) continue;
        std::uniform_int_distribution<std::size_t> which(0, g_choices.size() - 1);
        std::size_t w = which(rng);
        test(Square{f, g_choices[w], phi, p_choices[w]});
      }
    }
    if (out.found_by_search) break;
  }
  if (!out.counterexample) out.counterexample = out.found_by_search;
  return out;
}

enum class DuoSide { r, l };

// [A, C]_r or [A, C]_l over a normal duoidal base: objects are graded functors
// A -> C, grade-X' morphisms are families phi_A in C(X'; FA, GA) such that
// (Ff, Gf, phi_A, phi_B) (side r) or (phi_A, phi_B, Ff, Gf) (side l) is a
// V-graded square for every f. Operations are pointwise in C.
struct VFunctorCategory {
  DuoSide side = DuoSide::r;
  GradedPtr source, target;
  std::vector<GradedFunctor> functors;
  GradedPtr cat;
  std::vector<std::vector<Index>> components;  // C elements
};

inline std::vector<std::vector<Index>> vgraded_families(const GradedCat& a, const GradedCat& c, const SigmaTau& st,
                                                        DuoSide side, const GradedFunctor& F,
                                                        const GradedFunctor& G, Index grade,
                                                        std::size_t limit = SIZE_MAX) {
  const auto n = static_cast<Index>(a.num_objects());
  std::vector<std::vector<Index>> due(n);
  for (Index f = 0; f < static_cast<Index>(a.num_elems()); ++f)
    due[std::max(a.elems[f].src, a.elems[f].tgt)].push_back(f);
  std::vector<std::vector<Index>> out;
  std::vector<Index> phi(n, kNone);
  std::function<void(Index)> go = [&](Index k) {
    if (out.size() >= limit) return;
    if (k == n) {
      out.push_back(phi);
      return;
    }
    for (Index e : c.hom(grade, F.obj_map[k], G.obj_map[k])) {
      phi[k] = e;
      bool ok = true;
      for (Index f : due[k]) {
        const auto& el = a.elems[f];
        Square s = side == DuoSide::r ? Square{F.elem_map[f], G.elem_map[f], phi[el.src], phi[el.tgt]}
                                      : Square{phi[el.src], phi[el.tgt], F.elem_map[f], G.elem_map[f]};
        if (!is_vgraded_square(c, st, s)) {
          ok = false;
          break;
        }
      }
      if (ok) go(k + 1);
    }
    phi[k] = kNone;
  };
  go(0);
  return out;
}

inline VFunctorCategory duoidal_functor_category(const DuoidalData& d, const GradedPtr& a, const GradedPtr& c,
                                                 DuoSide side, const Budget& budget = {}) {
  const FinMonCat& v = *d.base;
  if (!a->base->same_tables(v) || !c->base->same_tables(v))
    throw StructuralError("functor category inputs must be graded over " + v.name);
  const auto st = compute_sigma_tau(d);
  VFunctorCategory out;
  out.side = side;
  out.source = a;
  out.target = c;
  out.functors = enumerate_functors(a, c, budget);
  const auto nf = static_cast<Index>(out.functors.size());
  const auto na = static_cast<Index>(a->num_objects());
  const auto gens = generating_set(*a);
  GradedCat r;
  r.name = std::string("[") + a->name + "," + c->name + "]_" + (side == DuoSide::r ? "r" : "l");
  r.base = c->base;
  for (const auto& F : out.functors) {
    std::vector<Id> objs, elems;
    for (Index b : F.obj_map) objs.push_back(c->objects[b]);
    for (Index g : gens) elems.push_back(c->elem_ids[F.elem_map[g]]);
    r.add_object("<" + join(objs) + ";" + join(elems) + ">");
  }
  std::map<std::tuple<Index, Index, Index>, std::map<std::vector<Index>, Index>> lookup;
  for (Index x = 0; x < d.n(); ++x) {
    std::size_t at_grade = 0;
    for (Index i = 0; i < nf; ++i)
      for (Index j = 0; j < nf; ++j) {
        auto fams = vgraded_families(*a, *c, st, side, out.functors[i], out.functors[j], x,
                                     budget.max_hom + 1 - at_grade);
        at_grade += fams.size();
        if (at_grade > budget.max_hom)
          throw BudgetExceeded("functor category hom at grade '" + v.cat.objects[x] + "' exceeds " +
                               std::to_string(budget.max_hom));
        for (std::size_t k = 0; k < fams.size(); ++k) {
          Index e = r.add_elem(r.objects[i] + "=>" + r.objects[j] + "@" + v.cat.objects[x] + "#" + std::to_string(k),
                               x, i, j);
          lookup[{x, i, j}].emplace(fams[k], e);
          out.components.push_back(std::move(fams[k]));
        }
      }
  }
  r.index();
  r.allocate();
  auto find = [&](Index x, Index i, Index j, const std::vector<Index>& fam) {
    auto it = lookup.find({x, i, j});
    if (it == lookup.end() || !it->second.count(fam))
      throw std::logic_error("pointwise operation left the functor category");
    return it->second.at(fam);
  };
  for (Index i = 0; i < nf; ++i) {
    std::vector<Index> fam;
    for (Index k = 0; k < na; ++k) fam.push_back(c->identity[out.functors[i].obj_map[k]]);
    r.identity[i] = find(v.unit, i, i, fam);
  }
  for (Index e = 0; e < static_cast<Index>(r.num_elems()); ++e) {
    const auto& el = r.elems[e];
    for (Index beta : v.cat.into[el.grade]) {
      std::vector<Index> fam;
      for (Index k = 0; k < na; ++k) fam.push_back(c->reindex(beta, out.components[e][k]));
      r.set_reindex(beta, e, find(v.src(beta), el.src, el.tgt, fam));
    }
  }
  for (Index g = 0; g < static_cast<Index>(r.num_elems()); ++g)
    for (Index f : r.into_obj[r.elems[g].src]) {
      std::vector<Index> fam;
      for (Index k = 0; k < na; ++k) fam.push_back(c->compose(out.components[g][k], out.components[f][k]));
      r.set_compose(g, f, find(v.tensor(r.elems[g].grade, r.elems[f].grade), r.elems[f].src, r.elems[g].tgt, fam));
    }
  r.finalize();
  out.cat = make_ptr(std::move(r));
  return out;
}

// The same category built as [A, C_*] over the bigraded C_*: side r uses A as
// a left source, side l as a right source.
inline FunctorCategory star_functor_category(const StarCategory& cs, const GradedPtr& a, DuoSide side,
                                             const Budget& budget = {}) {
  return build_functor_category(
      {side == DuoSide::r ? Side::left_source : Side::right_source, a, cs.bigraded, std::nullopt}, budget);
}

// Translates the direct construction into C_* terms (f |-> f_l on functors and
// phi |-> phi_r on components for side r, the other way round for side l) and
// matches it against the C_* construction.
inline std::optional<std::vector<Index>> match_star_functor_category(const VFunctorCategory& direct,
                                                                     const StarCategory& cs,
                                                                     const FunctorCategory& via_star) {
  const auto& fmap = direct.side == DuoSide::r ? cs.f_left : cs.f_right;
  const auto& cmap = direct.side == DuoSide::r ? cs.f_right : cs.f_left;
  FunctorCategory t;
  t.spec = via_star.spec;
  t.cat = direct.cat;
  for (const auto& F : direct.functors) {
    ViewFunctor vf{F.obj_map, {}};
    for (Index e : F.elem_map) vf.elem_map.push_back(fmap[e]);
    t.functors.push_back(std::move(vf));
  }
  for (const auto& fam : direct.components) {
    std::vector<Index> tf;
    for (Index e : fam) tf.push_back(cmap[e]);
    t.components.push_back(std::move(tf));
  }
  return match_functor_categories(t, via_star);
}

// A V-graded bifunctor candidate F : A, B -> C with all three left V-graded.
struct VBifunctor {
  GradedPtr a, b, c;
  std::vector<Index> obj;    // A * |ob B| + B
  std::vector<Index> left;   // F(f, B) at f * |ob B| + B
  std::vector<Index> right;  // F(A, g) at A * |B| + g

  Index nb() const { return static_cast<Index>(b->num_objects()); }
  Index eb() const { return static_cast<Index>(b->num_elems()); }
  Index at(Index x, Index y) const { return obj[x * nb() + y]; }
  Index on_left(Index f, Index y) const { return left[f * nb() + y]; }
  Index on_right(Index x, Index g) const { return right[x * eb() + g]; }
};

inline Square vbifunctor_square(const VBifunctor& F, Index f, Index g) {
  const auto& ef = F.a->elems[f];
  const auto& eg = F.b->elems[g];
  return {F.on_left(f, eg.src), F.on_left(f, eg.tgt), F.on_right(ef.src, g), F.on_right(ef.tgt, g)};
}

inline CheckReport check_vgraded_bifunctor(const DuoidalData& d, const VBifunctor& F) {
  CheckReport rep;
  const auto na = static_cast<Index>(F.a->num_objects());
  for (Index y = 0; y < F.nb(); ++y) {
    GradedFunctor G{F.a, F.c, {}, {}};
    for (Index x = 0; x < na; ++x) G.obj_map.push_back(F.at(x, y));
    for (Index f = 0; f < static_cast<Index>(F.a->num_elems()); ++f) G.elem_map.push_back(F.on_left(f, y));
    rep.merge(detail::prefixed(check_graded_functor(G), "partial-left:"));
  }
  for (Index x = 0; x < na; ++x) {
    GradedFunctor G{F.b, F.c, {}, {}};
    for (Index y = 0; y < F.nb(); ++y) G.obj_map.push_back(F.at(x, y));
    for (Index g = 0; g < F.eb(); ++g) G.elem_map.push_back(F.on_right(x, g));
    rep.merge(detail::prefixed(check_graded_functor(G), "partial-right:"));
  }
  if (!rep.ok()) return rep;
  const auto st = compute_sigma_tau(d);
  for (Index f = 0; f < static_cast<Index>(F.a->num_elems()); ++f)
    for (Index g = 0; g < F.eb(); ++g)
      rep.expect(is_vgraded_square(*F.c, st, vbifunctor_square(F, f, g)), "vgraded-bifunctor-commute",
                 {F.a->elem_ids[f], F.b->elem_ids[g]});
  return rep;
}

// F(-, B) through C -> U_l^* C_* and F(A, -) through C -> U_r^* C_*.
inline Sesquifunctor to_star(const VBifunctor& F, const StarCategory& cs) {
  Sesquifunctor S{F.a, F.b, cs.bigraded, F.obj, {}, {}};
  for (Index e : F.left) S.left.push_back(cs.f_left[e]);
  for (Index e : F.right) S.right.push_back(cs.f_right[e]);
  return S;
}

inline VBifunctor from_star(const Sesquifunctor& S, const StarCategory& cs) {
  std::vector<Index> inv_l(cs.bigraded.c().num_elems(), kNone), inv_r(cs.bigraded.c().num_elems(), kNone);
  for (Index e = 0; e < static_cast<Index>(cs.f_left.size()); ++e) {
    inv_l[cs.f_left[e]] = e;
    inv_r[cs.f_right[e]] = e;
  }
  VBifunctor F{S.a, S.b, cs.source, S.obj, {}, {}};
  for (Index e : S.left) {
    if (inv_l[e] == kNone) throw StructuralError("F(f, B) is not in the left view of C_*");
    F.left.push_back(inv_l[e]);
  }
  for (Index e : S.right) {
    if (inv_r[e] == kNone) throw StructuralError("F(A, g) is not in the right view of C_*");
    F.right.push_back(inv_r[e]);
  }
  return F;
}

}  // namespace gradcat
