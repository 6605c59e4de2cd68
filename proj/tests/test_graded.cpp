#include "gradcat/constructions.hpp"

#include "helpers.hpp"

using namespace gradcat;

namespace {

MonCatPtr z2() { return make_ptr(discrete_cyclic(2)); }
MonCatPtr z4b() { return make_ptr(bicharacter_z4()); }
MonCatPtr chain() { return make_ptr(poset_meet()); }
MonCatPtr twisted() { return make_ptr(twisted_z2()); }

std::vector<GradedCat> sample_categories() {
  std::vector<GradedCat> out;
  for (const auto& v : {z2(), z4b(), chain(), twisted()}) {
    out.push_back(self_graded(v));
    out.push_back(self_graded_right(v));
    out.push_back(terminal_graded(v));
    out.push_back(unit_category(v));
    for (Index x = 0; x < static_cast<Index>(v->n()); ++x) out.push_back(two_object(v, x));
  }
  out.push_back(enriched(z2(), translation_vcategory(*z2())));
  out.push_back(enriched(z4b(), translation_vcategory(*z4b())));
  out.push_back(enriched(chain(), chain_vcategory(*chain())));
  out.push_back(actegory(z2(), swap_action(*z2())));
  auto b = z4b();
  Index zero = b->cat.object_index("0");
  for (int k = 0; k < 4; ++k)
    out.push_back(monoid_category(b, zero, b->cat.morphism_index("0:" + std::to_string(k)),
                                  b->cat.morphism_index("0:" + std::to_string((4 - k) % 4))));
  std::size_t n = out.size();
  for (std::size_t i = 0; i < n; ++i) out.push_back(opposite(out[i]));
  return out;
}

}  // namespace

TEST(Graded, ConstructionsSatisfyTheAxioms) {
  for (const auto& c : sample_categories()) {
    SCOPED_TRACE(c.name + " over " + c.base->name);
    EXPECT_LAWS_HOLD(check_graded(c));
  }
}

TEST(Graded, SelfGradedHomSizes) {
  GradedCat c = self_graded(z4b());
  // |hom(X, A, B)| = 4 when X + A = B, else 0
  for (Index x = 0; x < 4; ++x)
    for (Index a = 0; a < 4; ++a)
      for (Index b = 0; b < 4; ++b)
        EXPECT_EQ(c.hom(x, a, b).size(), (x + a) % 4 == b ? 4u : 0u);
}

TEST(Graded, TwistedSelfCompositionPicksUpTheAssociator) {
  auto v = twisted();
  GradedCat c = self_graded(v);
  // f = 1'1 -> 0 via identity, g = 1'0 -> 1 via identity; g o f has grade 0
  // and equals 1_1 . (1_1 @ 1_0) . a_{1,1,1}, the sign -1 on object 1.
  Index f = c.elem_index("1'1:0:+");
  Index g = c.elem_index("1'0:1:+");
  Index h = c.elem_index("1'1:0:+");
  Index gf = c.compose(g, f);
  EXPECT_EQ(c.elem_ids[gf], "0'1:1:-");
  // (h o g) o f vs h o (g o f) differ by a_{1,1,1}
  Index lhs = c.compose(c.compose(h, g), f);
  Index rhs = c.compose(h, c.compose(g, f));
  EXPECT_NE(lhs, rhs);
  EXPECT_EQ(lhs, c.reindex(v->a(1, 1, 1), rhs));
}

TEST(Graded, MismatchedOperationsThrow) {
  GradedCat c = two_object(z2(), 1);
  Index u = two_object_generator(c, *z2(), 1);
  EXPECT_THROW(c.compose(u, u), OperationError);
  EXPECT_THROW(c.reindex(z2()->id(0), u), OperationError);
  EXPECT_EQ(c.reindex(z2()->id(1), u), u);
}

TEST(Graded, UnderlyingOrdinaryCategory) {
  for (const auto& c : sample_categories()) {
    SCOPED_TRACE(c.name);
    FinCat u = underlying_ordinary(c);
    EXPECT_LAWS_HOLD(check_fincat(u));
  }
  // over the chain with X = 0 there is no grade-1 morphism 0 -> 1
  auto v = chain();
  FinCat u = underlying_ordinary(two_object(v, v->cat.object_index("0")));
  EXPECT_EQ(u.num_morphisms(), 2u);
  FinCat w = underlying_ordinary(two_object(v, v->cat.object_index("1")));
  EXPECT_EQ(w.num_morphisms(), 3u);
}

TEST(Graded, TwoObjectIsGeneratedByItsUniversalElement) {
  for (const auto& v : {z2(), z4b(), chain(), twisted()})
    for (Index x = 0; x < static_cast<Index>(v->n()); ++x) {
      GradedCat c = two_object(v, x);
      Index u = two_object_generator(c, *v, x);
      EXPECT_TRUE(is_generating(c, {u}));
      // every element is a unique reindexing of u, i_0 or i_1
      for (Index e = 0; e < static_cast<Index>(c.num_elems()); ++e) {
        int hits = 0;
        for (Index base_elem : {u, c.identity[0], c.identity[1]})
          for (Index alpha : v->cat.hom(c.elems[e].grade, c.elems[base_elem].grade))
            hits += c.reindex(alpha, base_elem) == e;
        EXPECT_EQ(hits, 1) << c.elem_ids[e];
      }
    }
}

TEST(Graded, CounitsGenerateEnrichedCategories) {
  auto v = z4b();
  VCategory d = translation_vcategory(*v);
  GradedCat c = enriched(v, d);
  EXPECT_TRUE(is_generating(c, enriched_counits(c, *v, d)));
  auto ch = chain();
  VCategory dc = chain_vcategory(*ch);
  GradedCat cc = enriched(ch, dc);
  EXPECT_TRUE(is_generating(cc, enriched_counits(cc, *ch, dc)));
}

TEST(Graded, GreedyGeneratingSetsGenerate) {
  for (const auto& c : sample_categories()) {
    auto gens = generating_set(c);
    EXPECT_TRUE(is_generating(c, gens)) << c.name;
  }
  EXPECT_FALSE(is_generating(two_object(z2(), 1), {}));
}

TEST(Graded, InvalidVCategoryAndActionAreStructural) {
  auto v = z2();
  VCategory d = translation_vcategory(*v);
  d.unit_mor[0] = v->id(1);
  EXPECT_THROW(enriched(v, d), StructuralError);
  Action act = swap_action(*v);
  act.act_obj[1 * 2 + 0] = 0;  // 1 no longer swaps on a
  EXPECT_THROW(actegory(v, act), StructuralError);
}

TEST(Graded, ChangeOfBaseAlongIdentity) {
  for (const auto& c : sample_categories()) {
    GradedCat d = change_base(identity_opmon(c.base), c);
    EXPECT_TRUE(d.same_tables(c)) << c.name;
  }
}

TEST(Graded, OppositeIsAnInvolution) {
  for (const auto& c : sample_categories()) {
    GradedCat oo = opposite(opposite(c));
    EXPECT_TRUE(oo.same_tables(c)) << c.name;
    EXPECT_EQ(oo.name, c.name);
  }
}

TEST(Graded, FunctorsFromTwoObjectCountGradedMorphisms) {
  // functors from two(X) into C correspond to graded morphisms X'A -> B
  for (const auto& v : {z2(), z4b(), chain()}) {
    std::vector<GradedPtr> targets = {make_ptr(self_graded(v)), make_ptr(terminal_graded(v)),
                                      make_ptr(two_object(v, v->unit))};
    for (Index x = 0; x < static_cast<Index>(v->n()); ++x) {
      auto src = make_ptr(two_object(v, x));
      for (const auto& t : targets) {
        std::size_t expected = 0;
        for (Index a = 0; a < static_cast<Index>(t->num_objects()); ++a)
          for (Index b = 0; b < static_cast<Index>(t->num_objects()); ++b) expected += t->hom(x, a, b).size();
        auto fs = enumerate_functors(src, t, Budget{1000, 4096});
        EXPECT_EQ(fs.size(), expected) << v->name << " " << t->name;
        for (const auto& f : fs) EXPECT_TRUE(check_graded_functor(f).ok());
      }
    }
  }
}

TEST(Graded, GeneratorExtensionAgreesWithFullCheck) {
  // every shape-correct generator image either extends to a lawful functor or
  // is rejected, and a lawful extension passes the full-table check
  auto v = z4b();
  auto src = make_ptr(two_object(v, 1));
  auto tgt = make_ptr(self_graded(v));
  Index u = two_object_generator(*src, *v, 1);
  std::size_t extended = 0;
  for (Index a = 0; a < 4; ++a)
    for (Index b = 0; b < 4; ++b)
      for (Index img : tgt->hom(1, a, b)) {
        auto full = extend_from_generators(*src, *tgt, {a, b}, {u}, {img});
        ASSERT_TRUE(full.has_value());
        EXPECT_TRUE(check_graded_functor({src, tgt, {a, b}, *full}).ok());
        ++extended;
      }
  EXPECT_EQ(extended, 16u);
}

TEST(Graded, BudgetIsEnforced) {
  auto v = z4b();
  EXPECT_THROW(enumerate_functors(make_ptr(two_object(v, 1)), make_ptr(self_graded(v)), Budget{3, 4096}),
               BudgetExceeded);
}

TEST(Graded, MonoidModulesMatchFunctors) {
  // left R-modules in C are functors from the one-object category of R
  auto b = z4b();
  Index zero = b->cat.object_index("0");
  for (int k = 0; k < 4; ++k) {
    Index mult = b->cat.morphism_index("0:" + std::to_string(k));
    Index unit = b->cat.morphism_index("0:" + std::to_string((4 - k) % 4));
    auto r = make_ptr(monoid_category(b, zero, mult, unit));
    for (const auto& c : {make_ptr(self_graded(b)), make_ptr(two_object(b, 2)), make_ptr(terminal_graded(b))}) {
      auto mods = monoid_actions(*c, zero, mult, unit);
      EXPECT_EQ(mods.size(), enumerate_functors(r, c, Budget{1000, 4096}).size()) << k << " " << c->name;
    }
  }
  auto d = z2();
  auto mods = monoid_actions(terminal_graded(d), d->unit, d->l(d->unit), d->id(d->unit));
  EXPECT_EQ(mods.size(), 1u);
}

TEST(Graded, TransformationsIdentityIsNatural) {
  auto v = z4b();
  auto src = make_ptr(two_object(v, 1));
  auto tgt = make_ptr(self_graded(v));
  for (const auto& f : enumerate_functors(src, tgt, Budget{1000, 4096})) {
    GradedTransformation t{f, f, {tgt->identity[f.obj_map[0]], tgt->identity[f.obj_map[1]]}};
    EXPECT_TRUE(check_graded_transformation(t).ok());
  }
}
