#pragma once

#include <map>

#include "gradcat/bigraded.hpp"

namespace gradcat {

// left_source: A is left V-graded and functors land in the left view; the
// result is right W-graded (stored over W^rev). right_source: B is right
// W-graded (stored over W^rev) and functors land in the right view; the result
// is left V-graded.
enum class Side { left_source, right_source };

struct FunctorCatSpec {
  Side side = Side::left_source;
  GradedPtr source;
  BigradedCat target;
  // Naturality is tested on these when present; they must generate.
  std::optional<std::vector<Index>> generators;
};

// A functor into the relevant view, recorded with parent element indices.
struct ViewFunctor {
  std::vector<Index> obj_map;
  std::vector<Index> elem_map;  // source element -> target.cat element
};

struct FunctorCategory {
  FunctorCatSpec spec;
  std::vector<ViewFunctor> functors;
  GradedPtr cat;
  // components[e][A] = target.cat element of the family e at source object A.
  std::vector<std::vector<Index>> components;
};

namespace detail {

inline const GradedCat& source_view(const FunctorCatSpec& s) {
  return s.side == Side::left_source ? *s.target.left_view : *s.target.right_view;
}
inline const GradedCat& component_view(const FunctorCatSpec& s) {
  return s.side == Side::left_source ? *s.target.right_view : *s.target.left_view;
}
inline const MonCatPtr& result_base(const FunctorCatSpec& s) {
  return s.side == Side::left_source ? s.target.base.right_rev : s.target.base.left;
}

inline void validate_spec(const FunctorCatSpec& s) {
  const GradedCat& view = source_view(s);
  if (!s.source->base->same_tables(*view.base))
    throw StructuralError("source '" + s.source->name + "' is not graded over the base of the target view");
  if (s.generators && !is_generating(*s.source, *s.generators))
    throw StructuralError("declared generators do not generate '" + s.source->name + "'");
}

// Naturality of a family at f: its square in the target.
inline bool natural_at(const FunctorCatSpec& s, const ViewFunctor& F, const ViewFunctor& G,
                       const std::vector<Index>& phi, Index f) {
  const auto& el = s.source->elems[f];
  Square sq = s.side == Side::left_source
                  ? Square{F.elem_map[f], G.elem_map[f], phi[el.src], phi[el.tgt]}
                  : Square{phi[el.src], phi[el.tgt], F.elem_map[f], G.elem_map[f]};
  return is_bigraded_square(s.target, sq).has_value();
}

}  // namespace detail

inline std::vector<ViewFunctor> enumerate_view_functors(const FunctorCatSpec& s, const Budget& budget = {}) {
  detail::validate_spec(s);
  const GradedCat& view = detail::source_view(s);
  // The view is re-based on the source's base pointer so functor checks see
  // one base.
  GradedCat rebased = view;
  rebased.base = s.source->base;
  auto fs = enumerate_functors(s.source, make_ptr(std::move(rebased)), budget);
  std::vector<ViewFunctor> out;
  for (const auto& F : fs) {
    ViewFunctor v{F.obj_map, {}};
    for (Index e : F.elem_map) v.elem_map.push_back(view.origin[e]);
    out.push_back(std::move(v));
  }
  return out;
}

// The families F => G at `grade` (an object of W for left sources, of V for
// right sources) that are natural at every generator, or at every element
// when `use_generators` is false or no generators were declared.
inline std::vector<std::vector<Index>> hom_at_grade(const FunctorCatSpec& s, const ViewFunctor& F,
                                                    const ViewFunctor& G, Index grade,
                                                    bool use_generators = true,
                                                    std::size_t limit = SIZE_MAX) {
  const GradedCat& src = *s.source;
  const GradedCat& comp = detail::component_view(s);
  if (grade < 0 || grade >= static_cast<Index>(comp.base->n()))
    throw StructuralError("grade " + std::to_string(grade) + " is not an object of the base");
  std::vector<Index> tests;
  if (use_generators && s.generators) {
    tests = *s.generators;
  } else {
    tests.resize(src.num_elems());
    std::iota(tests.begin(), tests.end(), 0);
  }
  const auto n = static_cast<Index>(src.num_objects());
  // constraints checked once both endpoints are assigned
  std::vector<std::vector<Index>> due(n);
  for (Index f : tests) due[std::max(src.elems[f].src, src.elems[f].tgt)].push_back(f);
  std::vector<std::vector<Index>> out;
  std::vector<Index> phi(n, kNone);
  std::function<void(Index)> go = [&](Index a) {
    if (out.size() >= limit) return;
    if (a == n) {
      out.push_back(phi);
      return;
    }
    for (Index e : comp.hom(grade, F.obj_map[a], G.obj_map[a])) {
      phi[a] = comp.origin[e];
      bool ok = true;
      for (Index f : due[a])
        if (!detail::natural_at(s, F, G, phi, f)) {
          ok = false;
          break;
        }
      if (ok) go(a + 1);
    }
    phi[a] = kNone;
  };
  go(0);
  return out;
}

namespace detail {

inline std::string functor_id(const FunctorCatSpec& s, const std::vector<Index>& gens, const ViewFunctor& F) {
  std::vector<Id> objs, elems;
  for (Index b : F.obj_map) objs.push_back(s.target.c().objects[b]);
  for (Index g : gens) elems.push_back(s.target.c().elem_ids[F.elem_map[g]]);
  return "<" + join(objs) + ";" + join(elems) + ">";
}

}  // namespace detail

inline FunctorCategory build_functor_category(FunctorCatSpec s, const Budget& budget = {}) {
  FunctorCategory out;
  out.functors = enumerate_view_functors(s, budget);
  const GradedCat& src = *s.source;
  const GradedCat& comp = detail::component_view(s);
  const MonCatPtr& base = detail::result_base(s);
  const FinMonCat& w = *base;
  const BigradedCat& t = s.target;
  const auto nf = static_cast<Index>(out.functors.size());
  const auto na = static_cast<Index>(src.num_objects());
  const auto gens = s.generators ? *s.generators : generating_set(src);

  GradedCat c;
  c.name = "[" + src.name + "," + t.c().name + "]";
  c.base = base;
  for (const auto& F : out.functors) c.add_object(detail::functor_id(s, gens, F));
  std::map<std::tuple<Index, Index, Index>, std::unordered_map<std::vector<Index>, Index, VectorHash>> lookup;
  for (Index x = 0; x < static_cast<Index>(w.n()); ++x) {
    std::size_t at_grade = 0;
    for (Index i = 0; i < nf; ++i)
      for (Index j = 0; j < nf; ++j) {
        auto fams = hom_at_grade(s, out.functors[i], out.functors[j], x, true, budget.max_hom + 1 - at_grade);
        at_grade += fams.size();
        if (at_grade > budget.max_hom)
          throw BudgetExceeded("functor category hom at grade '" + w.cat.objects[x] + "' exceeds " +
                               std::to_string(budget.max_hom));
        for (std::size_t k = 0; k < fams.size(); ++k) {
          Index e = c.add_elem(c.objects[i] + "=>" + c.objects[j] + "@" + w.cat.objects[x] + "#" +
                                   std::to_string(k),
                               x, i, j);
          lookup[{x, i, j}].emplace(fams[k], e);
          out.components.push_back(std::move(fams[k]));
        }
      }
  }
  c.index();
  c.allocate();
  auto find = [&](Index x, Index i, Index j, const std::vector<Index>& fam) {
    auto it = lookup.find({x, i, j});
    if (it == lookup.end() || !it->second.count(fam))
      throw std::logic_error("pointwise operation left the functor category");
    return it->second.at(fam);
  };
  auto to_view = [&](Index parent) {
    return s.side == Side::left_source ? t.to_right[parent] : t.to_left[parent];
  };
  for (Index i = 0; i < nf; ++i) {
    std::vector<Index> fam;
    for (Index a = 0; a < na; ++a) fam.push_back(comp.origin[comp.identity[out.functors[i].obj_map[a]]]);
    c.identity[i] = find(w.unit, i, i, fam);
  }
  for (Index e = 0; e < static_cast<Index>(c.num_elems()); ++e) {
    const auto& el = c.elems[e];
    for (Index beta : w.cat.into[el.grade]) {
      std::vector<Index> fam;
      for (Index a = 0; a < na; ++a) fam.push_back(comp.origin[comp.reindex(beta, to_view(out.components[e][a]))]);
      c.set_reindex(beta, e, find(w.src(beta), el.src, el.tgt, fam));
    }
  }
  for (Index g = 0; g < static_cast<Index>(c.num_elems()); ++g)
    for (Index f : c.into_obj[c.elems[g].src]) {
      std::vector<Index> fam;
      for (Index a = 0; a < na; ++a)
        fam.push_back(comp.origin[comp.compose(to_view(out.components[g][a]), to_view(out.components[f][a]))]);
      c.set_compose(g, f, find(w.tensor(c.elems[g].grade, c.elems[f].grade), c.elems[f].src, c.elems[g].tgt, fam));
    }
  c.finalize();
  out.cat = make_ptr(std::move(c));
  out.spec = std::move(s);
  return out;
}

// [B, C] for a right source B computed as [B, C*] with a left source.
inline FunctorCategory functor_category_via_swap(const GradedPtr& source, const BigradedCat& target,
                                                 const Budget& budget = {}) {
  return build_functor_category({Side::left_source, source, swap_bigraded(target), std::nullopt}, budget);
}

// Relabeling between two presentations of the same functor category whose
// components live in target categories with shared element indices (as for
// C and C*). Returns the element map a -> b, or nullopt.
inline std::optional<std::vector<Index>> match_functor_categories(const FunctorCategory& a,
                                                                  const FunctorCategory& b) {
  if (a.functors.size() != b.functors.size() || a.cat->num_elems() != b.cat->num_elems()) return std::nullopt;
  if (!a.cat->base->same_tables(*b.cat->base)) return std::nullopt;
  std::map<std::vector<Index>, Index> fb;
  for (Index i = 0; i < static_cast<Index>(b.functors.size()); ++i) fb[b.functors[i].elem_map] = i;
  std::vector<Index> obj;
  for (const auto& F : a.functors) {
    auto it = fb.find(F.elem_map);
    if (it == fb.end()) return std::nullopt;
    obj.push_back(it->second);
  }
  std::map<std::tuple<Index, Index, Index, std::vector<Index>>, Index> eb;
  for (Index e = 0; e < static_cast<Index>(b.cat->num_elems()); ++e) {
    const auto& el = b.cat->elems[e];
    eb[{el.grade, el.src, el.tgt, b.components[e]}] = e;
  }
  std::vector<Index> elem;
  for (Index e = 0; e < static_cast<Index>(a.cat->num_elems()); ++e) {
    const auto& el = a.cat->elems[e];
    auto it = eb.find({el.grade, obj[el.src], obj[el.tgt], a.components[e]});
    if (it == eb.end()) return std::nullopt;
    elem.push_back(it->second);
  }
  const GradedCat& ca = *a.cat;
  const GradedCat& cb = *b.cat;
  for (Index x = 0; x < static_cast<Index>(ca.num_objects()); ++x)
    if (elem[ca.identity[x]] != cb.identity[obj[x]]) return std::nullopt;
  for (Index e = 0; e < static_cast<Index>(ca.num_elems()); ++e) {
    for (Index beta : ca.base->cat.into[ca.elems[e].grade])
      if (elem[ca.reindex(beta, e)] != cb.reindex(beta, elem[e])) return std::nullopt;
    for (Index f : ca.into_obj[ca.elems[e].src])
      if (elem[ca.compose(e, f)] != cb.compose(elem[e], elem[f])) return std::nullopt;
  }
  return elem;
}

}  // namespace gradcat
