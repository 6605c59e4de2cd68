#pragma once

#include "gradcat/envelope.hpp"
#include "gradcat/io.hpp"

namespace gradcat::examples {

struct Example {
  std::string name;
  std::string kind;
  std::string summary;
  std::function<io::json()> make;
};

namespace detail {

inline MonCatPtr z2() { return make_ptr(discrete_cyclic(2)); }
inline MonCatPtr z3() { return make_ptr(discrete_cyclic(3)); }
inline MonCatPtr z4b() { return make_ptr(bicharacter_z4()); }
inline MonCatPtr chain() { return make_ptr(poset_meet()); }

inline io::json graded(GradedCat c) { return io::to_json(c); }

}  // namespace detail

inline const std::vector<Example>& all() {
  using namespace detail;
  static const std::vector<Example> list{
      {"terminal", "monoidal", "the one-object base", [] { return io::to_json(terminal_base()); }},
      {"disc-Z2", "monoidal", "discrete Z/2", [] { return io::to_json(*z2()); }},
      {"disc-Z3", "monoidal", "discrete Z/3", [] { return io::to_json(*z3()); }},
      {"twisted-Z2", "monoidal", "Z/2 with associator (-1)^xyz", [] { return io::to_json(twisted_z2()); }},
      {"chain", "monoidal", "the chain 0 < 1 under meet", [] { return io::to_json(*chain()); }},
      {"bichar-Z4", "monoidal", "Z/4 braided by i^xy", [] { return io::to_json(*z4b()); }},

      {"self-disc-Z2", "graded", "discrete Z/2 graded over itself", [] { return graded(self_graded(z2())); }},
      {"self-bichar-Z4", "graded", "B(Z/4) graded over itself", [] { return graded(self_graded(z4b())); }},
      {"self-chain", "graded", "the chain graded over itself", [] { return graded(self_graded(chain())); }},
      {"self-right-disc-Z2", "graded", "discrete Z/2 as a right graded category",
       [] { return graded(self_graded_right(z2())); }},
      {"self-right-bichar-Z4", "graded", "B(Z/4) as a right graded category",
       [] { return graded(self_graded_right(z4b())); }},
      {"two-object-Z2", "graded", "walking graded arrow of grade 1 over Z/2",
       [] { return graded(two_object(z2(), 1)); }},
      {"two-object-Z4", "graded", "walking graded arrow of grade 1 over B(Z/4)",
       [] { return graded(two_object(z4b(), 1)); }},
      {"opposite-two-object-Z2", "graded", "formal opposite of two-object-Z2",
       [] { return graded(opposite(two_object(z2(), 1))); }},
      {"unit-disc-Z2", "graded", "the unit category over Z/2", [] { return graded(unit_category(z2())); }},
      {"terminal-disc-Z2", "graded", "one morphism per grade over Z/2", [] { return graded(terminal_graded(z2())); }},
      {"enriched-disc-Z3", "graded", "translation category of Z/3 as a graded category",
       [] { return graded(enriched(z3(), translation_vcategory(*z3()))); }},
      {"enriched-chain", "graded", "the chain enriched over itself",
       [] { return graded(enriched(chain(), chain_vcategory(*chain()))); }},
      {"actegory-swap", "graded", "Z/2 acting by swapping two objects",
       [] { return graded(actegory(z2(), swap_action(*z2()))); }},
      {"monoid-bichar-Z4", "graded", "the monoid 0 in B(Z/4) with multiplication 0:1",
       [] {
         auto b = z4b();
         return graded(monoid_category(b, b->cat.object_index("0"), b->cat.morphism_index("0:1"),
                                       b->cat.morphism_index("0:3")));
       }},
      {"envelope-two-object-Z2", "graded", "enveloping actegory of two-object-Z2",
       [] { return graded(*build_envelope(make_ptr(two_object(z2(), 1))).cat); }},
      {"functor-cat-two-object-Z2", "graded", "[two-object-Z2, self-bigraded-Z2] with left source",
       [] {
         auto fc = build_functor_category(
             {Side::left_source, make_ptr(two_object(z2(), 1)), self_bigraded(z2()), std::nullopt});
         return graded(*fc.cat);
       }},

      {"self-bigraded-Z2", "bigraded", "discrete Z/2 bigraded over itself on both sides",
       [] { return io::to_json(self_bigraded(z2())); }},
      {"product-two-object-Z2", "bigraded", "two-object-Z2 box its opposite",
       [] {
         auto a = make_ptr(two_object(z2(), 1));
         return io::to_json(bigraded_product(a, make_ptr(opposite(*a))).cat);
       }},
      {"cstar-two-object-Z4", "bigraded", "C_* of two-object-Z4 for the braided duoidal structure",
       [] { return io::to_json(c_star(braided_duoidal(z4b()), make_ptr(two_object(z4b(), 1))).bigraded); }},

      {"identity-two-object-Z2", "functor", "identity functor of two-object-Z2",
       [] {
         auto c = make_ptr(two_object(z2(), 1));
         GradedFunctor F{c, c, {}, {}};
         for (Index a = 0; a < static_cast<Index>(c->num_objects()); ++a) F.obj_map.push_back(a);
         for (Index e = 0; e < static_cast<Index>(c->num_elems()); ++e) F.elem_map.push_back(e);
         return io::functor_to_json(F);
       }},
      {"pair-two-object-Z2", "functor", "identity of two-object-Z2 box terminal, as a curried bifunctor",
       [] {
         auto a = make_ptr(two_object(z2(), 1));
         auto b = make_ptr(terminal_graded(make_ptr(reverse(*z2()))));
         auto p = bigraded_product(a, b);
         GradedFunctor G{p.cat.cat, p.cat.cat, {}, {}};
         for (Index x = 0; x < static_cast<Index>(p.cat.cat->num_objects()); ++x) G.obj_map.push_back(x);
         for (Index e = 0; e < static_cast<Index>(p.cat.cat->num_elems()); ++e) G.elem_map.push_back(e);
         return io::functor_to_json(G, io::CurryContext{"product", a, b, p.cat});
       }},

      {"identity-module-disc-Z2", "module", "hom module of self-right-disc-Z2",
       [] { return io::to_json(identity_module(make_ptr(self_graded_right(z2())))); }},
      {"identity-module-two-object-Z2", "module", "hom module of opposite-two-object-Z2",
       [] { return io::to_json(identity_module(make_ptr(opposite(two_object(z2(), 1))))); }},

      {"duoidal-disc-Z2", "duoidal", "discrete Z/2 with both tensors equal",
       [] { return io::to_json(braided_duoidal(z2())); }},
      {"duoidal-chain", "duoidal", "the chain with both tensors meet", [] { return io::to_json(braided_duoidal(chain())); }},
      {"duoidal-bichar-Z4", "duoidal", "B(Z/4) with interchange from the braiding",
       [] { return io::to_json(braided_duoidal(z4b())); }},
  };
  return list;
}

inline const Example& find(const std::string& name) {
  for (const auto& e : all())
    if (e.name == name) return e;
  throw StructuralError("unknown example '" + name + "'");
}

}  // namespace gradcat::examples
