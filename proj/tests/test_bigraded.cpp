#include "gradcat/bigraded.hpp"

#include "helpers.hpp"

using namespace gradcat;
using namespace gradcat::testing;

namespace {

std::vector<BigradedCat> samples() {
  std::vector<BigradedCat> out;
  for (FinMonCat v : {discrete_cyclic(2), bicharacter_z4(), poset_meet(), twisted_z2()})
    out.push_back(self_bigraded(make_ptr(std::move(v))));
  return out;
}

std::vector<Index> left_elems(const BigradedCat& b) {
  std::vector<Index> out;
  for (Index e = 0; e < static_cast<Index>(b.c().num_elems()); ++e)
    if (b.in_left(e)) out.push_back(e);
  return out;
}

std::vector<Index> right_elems(const BigradedCat& b) {
  std::vector<Index> out;
  for (Index e = 0; e < static_cast<Index>(b.c().num_elems()); ++e)
    if (b.in_right(e)) out.push_back(e);
  return out;
}

// Every quadruple with the shape of a square.
std::vector<Square> shaped(const BigradedCat& b) {
  const GradedCat& c = b.c();
  std::vector<Square> out;
  for (Index f : left_elems(b))
    for (Index phi : right_elems(b)) {
      if (c.elems[phi].src != c.elems[f].src) continue;
      for (Index g : left_elems(b)) {
        if (c.elems[g].grade != c.elems[f].grade || c.elems[g].src != c.elems[phi].tgt) continue;
        for (Index phi2 : c.hom(c.elems[phi].grade, c.elems[f].tgt, c.elems[g].tgt)) out.push_back({f, g, phi, phi2});
      }
    }
  return out;
}

}  // namespace

TEST(Bigraded, SelfBigradedAndViewsAreGraded) {
  for (const auto& b : samples()) {
    EXPECT_LAWS_HOLD(check_graded(b.c()));
    EXPECT_LAWS_HOLD(check_graded(*b.left_view));
    EXPECT_LAWS_HOLD(check_graded(*b.right_view));
    for (Index e = 0; e < static_cast<Index>(b.left_view->num_elems()); ++e)
      EXPECT_EQ(b.left_view->elem_ids[e], b.c().elem_ids[b.left_view->origin[e]]);
    for (Index e = 0; e < static_cast<Index>(b.right_view->num_elems()); ++e)
      EXPECT_EQ(b.right_view->elem_ids[e], b.c().elem_ids[b.right_view->origin[e]]);
  }
}

TEST(Bigraded, LeftViewOfSelfBigradedMatchesSelfGraded) {
  // hom((X, I), A, B) = V((X@A)@I, B) has the size of hom(X, A, B) = V(X@A, B).
  for (FinMonCat v0 : {bicharacter_z4(), twisted_z2(), poset_meet()}) {
    auto v = make_ptr(std::move(v0));
    auto b = self_bigraded(v);
    auto s = self_graded(v);
    const auto n = static_cast<Index>(v->n());
    for (Index x = 0; x < n; ++x)
      for (Index a = 0; a < n; ++a)
        for (Index c = 0; c < n; ++c) {
          EXPECT_EQ(b.left_view->hom(x, a, c).size(), s.hom(x, a, c).size());
          EXPECT_EQ(b.right_view->hom(x, a, c).size(), s.hom(x, a, c).size());
        }
  }
}

TEST(Bigraded, IdentitySquares) {
  for (const auto& b : samples()) {
    const GradedCat& c = b.c();
    for (Index f : left_elems(b)) {
      Square s{f, f, c.identity[c.elems[f].src], c.identity[c.elems[f].tgt]};
      auto d = is_bigraded_square(b, s);
      ASSERT_TRUE(d.has_value()) << c.elem_ids[f];
      EXPECT_EQ(*d, f);
    }
    for (Index phi : right_elems(b)) {
      Square s{c.identity[c.elems[phi].src], c.identity[c.elems[phi].tgt], phi, phi};
      auto d = is_bigraded_square(b, s);
      ASSERT_TRUE(d.has_value()) << c.elem_ids[phi];
      EXPECT_EQ(*d, phi);
    }
  }
}

TEST(Bigraded, TwistedEdgeBreaksTheSquare) {
  auto b = self_bigraded(make_ptr(bicharacter_z4()));
  const GradedCat& c = b.c();
  const Index unit = b.base.grade(b.base.left->unit, b.base.right->unit);
  std::size_t tried = 0;
  for (Index f : left_elems(b)) {
    Index a = c.elems[f].src, a2 = c.elems[f].tgt;
    for (Index phi2 : c.hom(unit, a2, a2)) {
      if (phi2 == c.identity[a2]) continue;
      ++tried;
      EXPECT_FALSE(is_bigraded_square(b, {f, f, c.identity[a], phi2}).has_value());
    }
  }
  EXPECT_GT(tried, 0u);
}

TEST(Bigraded, ShapeMismatchIsStructural) {
  auto b = self_bigraded(make_ptr(discrete_cyclic(2)));
  const GradedCat& c = b.c();
  auto lefts = left_elems(b);
  Index f = kNone;
  for (Index e : lefts)
    if (b.left_grade(e) != b.base.left->unit) f = e;
  ASSERT_NE(f, kNone);
  // f sits at a non-unit left grade, so it cannot serve as phi.
  EXPECT_THROW(is_bigraded_square(b, {f, f, f, f}), StructuralError);
  EXPECT_THROW(is_bigraded_square(b, {f, f, c.identity[0], c.identity[0]}), StructuralError);
}

TEST(Bigraded, ProductGradedPredicateAgrees) {
  std::size_t squares = 0, quads = 0;
  for (const auto& b : samples()) {
    for (const Square& s : shaped(b)) {
      ++quads;
      bool direct = is_bigraded_square(b, s).has_value();
      squares += direct;
      EXPECT_EQ(direct, is_product_graded_square(b.c(), *b.base.left, *b.base.right_rev, s));
    }
  }
  EXPECT_GT(squares, 0u);
  EXPECT_GT(quads, squares);
}

TEST(Bigraded, AllSquaresMatchesShapedFilter) {
  for (const auto& b : samples()) {
    std::size_t expected = 0;
    for (const Square& s : shaped(b)) expected += is_bigraded_square(b, s).has_value();
    EXPECT_EQ(all_squares(b).size(), expected);
  }
}

TEST(Bigraded, ReindexSquareDiagonalLaw) {
  for (const auto& b : samples()) {
    const FinMonCat& v = *b.base.left;
    const FinMonCat& w = *b.base.right;
    const GradedCat& c = b.c();
    for (const Square& s : all_squares(b)) {
      Index x = b.left_grade(s.f), xr = b.right_grade(s.phi);
      Index d = square_diagonal(b, s);
      EXPECT_EQ(reindex_square(b, s, v.id(x), w.id(xr)), s);
      for (Index alpha : v.cat.into[x])
        for (Index beta : w.cat.into[xr]) {
          Square t = reindex_square(b, s, alpha, beta);
          auto dt = is_bigraded_square(b, t);
          ASSERT_TRUE(dt.has_value());
          EXPECT_EQ(*dt, c.reindex(b.base.mor(alpha, beta), d));
          // reindexing twice is reindexing along the composite
          for (Index alpha2 : v.cat.into[v.src(alpha)])
            for (Index beta2 : w.cat.into[w.src(beta)])
              EXPECT_EQ(reindex_square(b, t, alpha2, beta2),
                        reindex_square(b, s, v.comp(alpha, alpha2), w.comp(beta, beta2)));
        }
    }
  }
}

TEST(Bigraded, PastingAndInterchange) {
  std::mt19937 rng(5);
  for (const auto& b : samples()) {
    const GradedCat& c = b.c();
    auto squares = all_squares(b);
    std::map<Index, std::vector<Square>> by_f, by_phi;
    for (const auto& s : squares) {
      by_f[s.f].push_back(s);
      by_phi[s.phi].push_back(s);
    }
    std::size_t grids = 0;
    for (int trial = 0; trial < 400; ++trial) {
      const Square& s = squares[rng() % squares.size()];
      const auto& ts = by_f[s.g];
      const auto& s2s = by_phi[s.phi2];
      if (ts.empty() || s2s.empty()) continue;
      const Square& t = ts[rng() % ts.size()];
      const Square& s2 = s2s[rng() % s2s.size()];
      std::vector<Square> t2s;
      for (const auto& u : by_f[s2.g])
        if (u.phi == t.phi2) t2s.push_back(u);
      if (t2s.empty()) continue;
      const Square& t2 = t2s[rng() % t2s.size()];
      ++grids;
      Square h = paste_horizontal(b, s, t);
      Square vt = paste_vertical(b, s, s2);
      EXPECT_TRUE(is_bigraded_square(b, h).has_value());
      EXPECT_TRUE(is_bigraded_square(b, vt).has_value());
      Square both = paste_both(b, s, t, s2, t2);
      Square other = paste_vertical(b, paste_horizontal(b, s, t), paste_horizontal(b, s2, t2));
      EXPECT_EQ(both, other);
      auto d = is_bigraded_square(b, both);
      ASSERT_TRUE(d.has_value());
      EXPECT_EQ(*d, c.compose(square_diagonal(b, t2), square_diagonal(b, s)));
    }
    EXPECT_GT(grids, 20u) << c.name;
  }
}

TEST(Bigraded, PastingWithIdentitySquaresOnStrictBase) {
  auto b = self_bigraded(make_ptr(bicharacter_z4()));
  ASSERT_TRUE(b.base.left->strict);
  const GradedCat& c = b.c();
  for (const Square& s : all_squares(b)) {
    Square idg{s.g, s.g, c.identity[c.elems[s.g].src], c.identity[c.elems[s.g].tgt]};
    EXPECT_EQ(paste_horizontal(b, s, idg), s);
    Square idp{c.identity[c.elems[s.phi2].src], c.identity[c.elems[s.phi2].tgt], s.phi2, s.phi2};
    EXPECT_EQ(paste_vertical(b, s, idp), s);
  }
}

TEST(Bigraded, BoundaryMismatchIsAnOperationError) {
  auto b = self_bigraded(make_ptr(bicharacter_z4()));
  auto squares = all_squares(b);
  for (const auto& s : squares)
    for (const auto& t : squares)
      if (t.f != s.g) {
        EXPECT_THROW(paste_horizontal(b, s, t), OperationError);
        return;
      }
}

TEST(Bigraded, FlipIntoSwappedCategory) {
  for (const auto& b : samples()) {
    BigradedCat star = swap_bigraded(b);
    EXPECT_LAWS_HOLD(check_graded(star.c()));
    EXPECT_EQ(star.c().elem_ids, b.c().elem_ids);
    for (const Square& s : shaped(b)) {
      auto d = is_bigraded_square(b, s);
      auto ds = is_bigraded_square(star, flip(s));
      ASSERT_EQ(d.has_value(), ds.has_value());
      if (d) EXPECT_EQ(*d, *ds);
    }
  }
}

TEST(Bigraded, FunctorsPreserveSquares) {
  for (FinMonCat v0 : {discrete_cyclic(2), twisted_z2()}) {
    auto b = self_bigraded(make_ptr(std::move(v0)));
    auto functors = enumerate_functors(b.cat, b.cat, {512, 4096});
    ASSERT_GT(functors.size(), 1u);
    bool saw_identity = false;
    auto squares = all_squares(b);
    for (const auto& F : functors) {
      ASSERT_TRUE(check_graded_functor(F).ok());
      bool identity = true;
      for (Index e = 0; e < static_cast<Index>(F.elem_map.size()); ++e) identity &= F.elem_map[e] == e;
      saw_identity |= identity;
      for (const Square& s : squares) {
        Square fs = map_square(F, s);
        if (identity) EXPECT_EQ(fs, s);
        auto d = is_bigraded_square(b, fs);
        ASSERT_TRUE(d.has_value());
        EXPECT_EQ(*d, F.elem_map[square_diagonal(b, s)]);
      }
    }
    EXPECT_TRUE(saw_identity);
  }
}

TEST(Bigraded, DegenerateCoercions) {
  auto v = make_ptr(bicharacter_z4());
  auto left = make_ptr(self_graded(v));
  auto lb = as_left_bigraded(left);
  EXPECT_LAWS_HOLD(check_graded(lb.c()));
  EXPECT_EQ(lb.left_view->num_elems(), left->num_elems());
  EXPECT_EQ(lb.c().elem_ids, left->elem_ids);
  auto right = make_ptr(self_graded_right(v));
  auto rb = as_right_bigraded(right, v);
  EXPECT_LAWS_HOLD(check_graded(rb.c()));
  EXPECT_EQ(rb.right_view->num_elems(), right->num_elems());
  EXPECT_THROW(as_right_bigraded(left, make_ptr(poset_meet())), StructuralError);
}

namespace {

PresheafObjects random_objects(const MonCatPtr& v, std::mt19937& rng, int count) {
  PresheafObjects objs{v, {}, {}, {}};
  for (Index x = 0; x < static_cast<Index>(v->n()); ++x)
    objs.add("y" + v->cat.objects[x], representable(v->cat, x));
  for (int k = 0; k < count; ++k) objs.add("P" + std::to_string(k), random_presheaf(v->cat, rng, 2));
  return objs;
}

// Element of q at z moved along the coherence iso between two words for z.
Index relabel(const FinMonCat& v, const FinPresheaf& q, const Word& from, const Word& to, Index elem) {
  // q is contravariant: an iso k : to -> from acts q(from) -> q(to)
  return q.action[canonical_iso(v, to, from)][elem];
}

}  // namespace

TEST(PresheafBigraded, IsGradedWithIdentityTransformations) {
  std::mt19937 rng(3);
  for (FinMonCat v0 : {discrete_cyclic(2), twisted_z2()}) {
    auto v = make_ptr(std::move(v0));
    auto pb = presheaf_bigraded(random_objects(v, rng, 2));
    const GradedCat& c = pb.bigraded.c();
    EXPECT_LAWS_HOLD(check_graded(c));
    EXPECT_LAWS_HOLD(check_graded(*pb.bigraded.left_view));
    EXPECT_LAWS_HOLD(check_graded(*pb.bigraded.right_view));
    if (v->strict)
      for (Index a = 0; a < static_cast<Index>(c.num_objects()); ++a) {
        const auto& fl = pb.flat[c.identity[a]];
        for (std::size_t i = 0; i < fl.size(); ++i) {
          Index z = 0;
          auto off = pb.objects.values[a].offsets();
          while (off[z + 1] <= i) ++z;
          EXPECT_EQ(fl[i], static_cast<Index>(i - off[z]));
        }
      }
  }
}

TEST(PresheafBigraded, HomCountsMatchNatEnumeration) {
  std::mt19937 rng(9);
  for (FinMonCat v0 : {discrete_cyclic(2), twisted_z2()}) {
    auto v = make_ptr(std::move(v0));
    auto objs = random_objects(v, rng, 3);
    auto pb = presheaf_bigraded(objs);
    const GradedCat& c = pb.bigraded.c();
    const auto n = static_cast<Index>(v->n());
    for (Index x = 0; x < n; ++x)
      for (Index y = 0; y < n; ++y)
        for (Index p = 0; p < static_cast<Index>(objs.values.size()); ++p)
          for (Index q = 0; q < static_cast<Index>(objs.values.size()); ++q)
            EXPECT_EQ(c.hom(pb.bigraded.base.grade(x, y), p, q).size(),
                      brute_force_nat_count(v->cat, objs.values[p], shifted(*v, objs.values[q], x, y)));
  }
}

TEST(PresheafBigraded, RepresentableHomsFollowYoneda) {
  auto v = make_ptr(discrete_cyclic(2));
  PresheafObjects objs{v, {}, {}, {}};
  objs.add("y0", representable(v->cat, 0));
  objs.add("y1", representable(v->cat, 1));
  auto pb = presheaf_bigraded(objs);
  for (Index x = 0; x < 2; ++x)
    for (Index y = 0; y < 2; ++y)
      for (Index a = 0; a < 2; ++a)
        for (Index b = 0; b < 2; ++b)
          EXPECT_EQ(pb.bigraded.c().hom(pb.bigraded.base.grade(x, y), a, b).size(),
                    static_cast<std::size_t>(((x + a + y) % 2) == b ? 1 : 0));
}

TEST(PresheafBigraded, SquaresAreCommutingRectangles) {
  // Independent formulation: whisker, then compare in Q((X @ Z) @ X') after
  // moving both paths along coherence isomorphisms.
  std::mt19937 rng(21);
  using W = Word;
  for (FinMonCat v0 : {discrete_cyclic(2), twisted_z2()}) {
    auto v = make_ptr(std::move(v0));
    auto pb = presheaf_bigraded(random_objects(v, rng, 2));
    const BigradedCat& b = pb.bigraded;
    const GradedCat& c = b.c();
    const auto& vals = pb.objects.values;
    std::size_t yes = 0, total = 0;
    for (const Square& s : shaped(b)) {
      Index x = b.left_grade(s.f), xr = b.right_grade(s.phi);
      Index a = c.elems[s.f].src, bb = c.elems[s.phi].tgt, a2 = c.elems[s.f].tgt, b2 = c.elems[s.g].tgt;
      bool commutes = true;
      for (Index z = 0; z < static_cast<Index>(v->n()) && commutes; ++z)
        for (Index p = 0; p < vals[a].sizes[z] && commutes; ++p) {
          const W X = W::leaf(x), Z = W::leaf(z), XR = W::leaf(xr);
          // phi then g
          Index u = pb.component(s.phi, z, p);  // in B((I@Z)@X')
          u = relabel(*v, vals[bb], W::of(W::of(W::unit(), Z), XR), W::of(Z, XR), u);
          Index zx = v->tensor(z, xr);
          u = pb.component(s.g, zx, u);  // in B'((X@(Z@X'))@I)
          u = relabel(*v, vals[b2], W::of(W::of(X, W::of(Z, XR)), W::unit()), W::of(W::of(X, Z), XR), u);
          // f then phi2
          Index w = pb.component(s.f, z, p);  // in A'((X@Z)@I)
          w = relabel(*v, vals[a2], W::of(W::of(X, Z), W::unit()), W::of(X, Z), w);
          w = pb.component(s.phi2, v->tensor(x, z), w);  // in B'((I@(X@Z))@X')
          w = relabel(*v, vals[b2], W::of(W::of(W::unit(), W::of(X, Z)), XR), W::of(W::of(X, Z), XR), w);
          commutes = u == w;
        }
      ++total;
      yes += commutes;
      EXPECT_EQ(commutes, is_bigraded_square(b, s).has_value());
    }
    EXPECT_GT(yes, 0u);
    EXPECT_GT(total, yes);
  }
}

TEST(PresheafBigraded, ClosureViolationNamesTheMissingPresheaf) {
  auto v = make_ptr(discrete_cyclic(2));
  PresheafObjects objs{v, {}, {}, {{1, 0}}};
  objs.add("y0", representable(v->cat, 0));
  try {
    presheaf_bigraded(objs);
    FAIL() << "expected a closure violation";
  } catch (const StructuralError& e) {
    EXPECT_NE(std::string(e.what()).find("y0((1 @ -) @ 0)"), std::string::npos) << e.what();
  }
  objs.add("y1", representable(v->cat, 1));
  EXPECT_NO_THROW(presheaf_bigraded(objs));
}

TEST(PresheafBigraded, BudgetBoundsHomSizes) {
  auto v = make_ptr(discrete_cyclic(2));
  PresheafObjects objs{v, {}, {}, {}};
  objs.add("P", FinPresheaf{{3, 3}, {{0, 1, 2}, {0, 1, 2}}});
  EXPECT_THROW(presheaf_bigraded(objs, {64, 8}), BudgetExceeded);
  EXPECT_NO_THROW(presheaf_bigraded(objs, {64, 729}));
}
