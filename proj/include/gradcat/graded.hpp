#pragma once

#include <deque>

#include "gradcat/monoidal.hpp"

namespace gradcat {

struct GradedElem {
  Index grade = kNone;
  Index src = kNone;
  Index tgt = kNone;
};

// A left V-graded category presented by explicit tables. Element f in
// hom(X, A, B) is a graded morphism f : X'A -> B. Right graded categories are
// stored as left graded over reverse(V).
//
// reindex_rows[f][k] = alpha^*(f) where alpha = base.cat.into[grade f][k].
// compose_rows[g][k] = g o f where f = into_obj[src g][k].
struct GradedCat {
  Id name;
  MonCatPtr base;
  std::vector<Id> objects;
  std::vector<Id> elem_ids;
  std::vector<GradedElem> elems;
  std::vector<Index> identity;
  std::vector<std::vector<Index>> reindex_rows;
  std::vector<std::vector<Index>> compose_rows;
  // Element of the category this one was derived from, when meaningful.
  std::vector<Index> origin;

  std::size_t num_objects() const { return objects.size(); }
  std::size_t num_elems() const { return elems.size(); }

  Index add_object(Id id) {
    objects.push_back(std::move(id));
    identity.push_back(kNone);
    return static_cast<Index>(objects.size() - 1);
  }

  Index add_elem(Id id, Index grade, Index src, Index tgt) {
    elem_ids.push_back(std::move(id));
    elems.push_back({grade, src, tgt});
    return static_cast<Index>(elems.size() - 1);
  }

  // Builds the lookup structures; tables are left untouched.
  void index() {
    const auto no = static_cast<Index>(objects.size());
    const auto ne = static_cast<Index>(elems.size());
    const auto ng = static_cast<Index>(base->n());
    object_by_id.clear();
    elem_by_id.clear();
    for (Index i = 0; i < no; ++i)
      if (!object_by_id.emplace(objects[i], i).second)
        throw StructuralError("duplicate object id '" + objects[i] + "'");
    for (Index i = 0; i < ne; ++i)
      if (!elem_by_id.emplace(elem_ids[i], i).second)
        throw StructuralError("duplicate element id '" + elem_ids[i] + "'");
    into_obj.assign(no, {});
    pos_into_obj.assign(ne, kNone);
    hom_lists.assign(static_cast<std::size_t>(ng) * no * no, {});
    for (Index e = 0; e < ne; ++e) {
      const auto& el = elems[e];
      if (el.grade < 0 || el.grade >= ng || el.src < 0 || el.src >= no || el.tgt < 0 || el.tgt >= no)
        throw StructuralError("element '" + elem_ids[e] + "' has a dangling grade or endpoint");
      pos_into_obj[e] = static_cast<Index>(into_obj[el.tgt].size());
      into_obj[el.tgt].push_back(e);
      hom_lists[(static_cast<std::size_t>(el.grade) * no + el.src) * no + el.tgt].push_back(e);
    }
  }

  // Sizes every table row, filled with kNone.
  void allocate() {
    reindex_rows.assign(elems.size(), {});
    compose_rows.assign(elems.size(), {});
    for (std::size_t e = 0; e < elems.size(); ++e) {
      reindex_rows[e].assign(base->cat.into[elems[e].grade].size(), kNone);
      compose_rows[e].assign(into_obj[elems[e].src].size(), kNone);
    }
  }

  void finalize() {
    index();
    const auto ne = static_cast<Index>(elems.size());
    if (identity.size() != objects.size()) throw StructuralError("identity table has the wrong size");
    for (std::size_t a = 0; a < identity.size(); ++a)
      if (identity[a] < 0 || identity[a] >= ne)
        throw StructuralError("object '" + objects[a] + "' has no identity element");
    if (reindex_rows.size() != elems.size() || compose_rows.size() != elems.size())
      throw StructuralError("graded tables have the wrong size");
    for (Index e = 0; e < ne; ++e) {
      if (reindex_rows[e].size() != base->cat.into[elems[e].grade].size())
        throw StructuralError("reindex table for '" + elem_ids[e] + "' is not total");
      if (compose_rows[e].size() != into_obj[elems[e].src].size())
        throw StructuralError("compose table for '" + elem_ids[e] + "' is not total");
      for (Index v : reindex_rows[e])
        if (v < 0 || v >= ne) throw StructuralError("reindex table for '" + elem_ids[e] + "' has a dangling id");
      for (Index v : compose_rows[e])
        if (v < 0 || v >= ne) throw StructuralError("compose table for '" + elem_ids[e] + "' has a dangling id");
    }
  }

  std::span<const Index> hom(Index grade, Index a, Index b) const {
    const auto no = objects.size();
    return hom_lists[(static_cast<std::size_t>(grade) * no + a) * no + b];
  }

  void set_reindex(Index alpha, Index f, Index result) {
    reindex_rows[f][base->cat.pos_into[alpha]] = result;
  }
  void set_compose(Index g, Index f, Index result) { compose_rows[g][pos_into_obj[f]] = result; }

  // alpha^*(f) for alpha : Y -> grade(f).
  Index reindex(Index alpha, Index f) const {
    if (base->tgt(alpha) != elems[f].grade)
      throw OperationError("cannot reindex '" + elem_ids[f] + "' along '" +
                           base->cat.morphisms[alpha] + "': target is not its grade");
    return reindex_rows[f][base->cat.pos_into[alpha]];
  }

  // g o f for f : X'A -> B and g : Y'B -> C, at grade Y@X.
  Index compose(Index g, Index f) const {
    if (elems[f].tgt != elems[g].src)
      throw OperationError("cannot compose '" + elem_ids[g] + "' after '" + elem_ids[f] +
                           "': endpoints differ");
    return compose_rows[g][pos_into_obj[f]];
  }

  Index object_index(const Id& id) const {
    auto it = object_by_id.find(id);
    if (it == object_by_id.end()) throw StructuralError("unknown object id '" + id + "'");
    return it->second;
  }
  Index elem_index(const Id& id) const {
    auto it = elem_by_id.find(id);
    if (it == elem_by_id.end()) throw StructuralError("unknown element id '" + id + "'");
    return it->second;
  }

  bool same_tables(const GradedCat& o) const {
    return base->same_tables(*o.base) && objects == o.objects && elem_ids == o.elem_ids &&
           identity == o.identity && reindex_rows == o.reindex_rows &&
           compose_rows == o.compose_rows &&
           std::equal(elems.begin(), elems.end(), o.elems.begin(), o.elems.end(),
                      [](const GradedElem& x, const GradedElem& y) {
                        return x.grade == y.grade && x.src == y.src && x.tgt == y.tgt;
                      });
  }

  std::vector<std::vector<Index>> into_obj;
  std::vector<Index> pos_into_obj;
  std::vector<std::vector<Index>> hom_lists;
  std::unordered_map<Id, Index> object_by_id, elem_by_id;
};

using GradedPtr = std::shared_ptr<const GradedCat>;

inline GradedPtr make_ptr(GradedCat c) { return std::make_shared<const GradedCat>(std::move(c)); }

// Shape of every table entry, then axioms (I)-(IV).
inline CheckReport check_graded(const GradedCat& c) {
  CheckReport rep;
  const FinMonCat& v = *c.base;
  const auto ne = static_cast<Index>(c.num_elems());
  const auto& ids = c.elem_ids;
  const auto& mn = v.cat.morphisms;
  for (Index a = 0; a < static_cast<Index>(c.num_objects()); ++a) {
    const auto& el = c.elems[c.identity[a]];
    rep.expect(el.grade == v.unit && el.src == a && el.tgt == a, "shape", {"identity", c.objects[a]});
  }
  for (Index f = 0; f < ne; ++f) {
    const auto& ef = c.elems[f];
    for (Index alpha : v.cat.into[ef.grade]) {
      const auto& er = c.elems[c.reindex(alpha, f)];
      rep.expect(er.grade == v.src(alpha) && er.src == ef.src && er.tgt == ef.tgt, "shape",
                 {"reindex", mn[alpha], ids[f]});
    }
  }
  for (Index g = 0; g < ne; ++g) {
    const auto& eg = c.elems[g];
    for (Index f : c.into_obj[eg.src]) {
      const auto& ef = c.elems[f];
      const auto& gf = c.elems[c.compose(g, f)];
      rep.expect(gf.grade == v.tensor(eg.grade, ef.grade) && gf.src == ef.src && gf.tgt == eg.tgt,
                 "shape", {"compose", ids[g], ids[f]});
    }
  }
  if (!rep.ok()) return rep;

  for (Index f = 0; f < ne; ++f) {
    Index x = c.elems[f].grade;
    rep.expect(c.reindex(v.id(x), f) == f, "reindex-identity", {ids[f]});
    for (Index beta : v.cat.into[x])
      for (Index alpha : v.cat.into[v.src(beta)])
        rep.expect(c.reindex(v.comp(beta, alpha), f) == c.reindex(alpha, c.reindex(beta, f)),
                   "reindex-compose", {mn[beta], mn[alpha], ids[f]});
  }
  for (Index g = 0; g < ne; ++g) {
    Index y = c.elems[g].grade;
    for (Index f : c.into_obj[c.elems[g].src]) {
      Index x = c.elems[f].grade;
      Index gf = c.compose(g, f);
      for (Index beta : v.cat.into[y])
        for (Index alpha : v.cat.into[x])
          rep.expect(c.compose(c.reindex(beta, g), c.reindex(alpha, f)) ==
                         c.reindex(v.tensor_m(beta, alpha), gf),
                     "naturality", {mn[beta], mn[alpha], ids[g], ids[f]});
    }
  }
  for (Index h = 0; h < ne; ++h) {
    Index z = c.elems[h].grade;
    for (Index g : c.into_obj[c.elems[h].src]) {
      Index y = c.elems[g].grade;
      Index hg = c.compose(h, g);
      for (Index f : c.into_obj[c.elems[g].src]) {
        Index x = c.elems[f].grade;
        Index lhs = c.compose(hg, f);
        Index rhs = c.reindex(v.a(z, y, x), c.compose(h, c.compose(g, f)));
        rep.expect(lhs == rhs, "associativity", {ids[h], ids[g], ids[f]});
      }
    }
  }
  for (Index f = 0; f < ne; ++f) {
    const auto& ef = c.elems[f];
    rep.expect(c.compose(f, c.identity[ef.src]) == c.reindex(v.r(ef.grade), f), "unit-right", {ids[f]});
    rep.expect(c.compose(c.identity[ef.tgt], f) == c.reindex(v.l(ef.grade), f), "unit-left", {ids[f]});
  }
  return rep;
}

// Grade-I morphisms with composition g.f = (l_I^-1)^*(g o f).
inline FinCat underlying_ordinary(const GradedCat& c) {
  const FinMonCat& v = *c.base;
  FinCat u;
  for (const auto& o : c.objects) u.add_object(o);
  std::vector<Index> local(c.num_elems(), kNone);
  std::vector<Index> global;
  for (Index e = 0; e < static_cast<Index>(c.num_elems()); ++e)
    if (c.elems[e].grade == v.unit) {
      local[e] = u.add_morphism(c.elem_ids[e], c.elems[e].src, c.elems[e].tgt);
      global.push_back(e);
    }
  u.allocate();
  for (std::size_t a = 0; a < c.num_objects(); ++a) u.identity[a] = local[c.identity[a]];
  Index back = v.inv(v.l(v.unit));
  for (Index g : global)
    for (Index f : global) {
      if (c.elems[f].tgt != c.elems[g].src) continue;
      u.set_compose(local[g], local[f], local[c.reindex(back, c.compose(g, f))]);
    }
  u.finalize();
  return u;
}

// Closure of a set of elements under identities, reindexing and composition;
// supports adding generators incrementally.
class Closure {
 public:
  explicit Closure(const GradedCat& c)
      : c_(c), elem_in_(c.num_elems(), 0), obj_in_(c.num_objects(), 0),
        by_src_(c.num_objects()), by_tgt_(c.num_objects()) {}

  void add(Index e) {
    push(e);
    run();
  }

  bool contains(Index e) const { return elem_in_[e] != 0; }
  bool has_object(Index a) const { return obj_in_[a] != 0; }
  const std::vector<char>& elems() const { return elem_in_; }
  const std::vector<char>& objects() const { return obj_in_; }
  std::size_t size() const { return count_; }

 private:
  void touch(Index a) {
    if (obj_in_[a]) return;
    obj_in_[a] = 1;
    push(c_.identity[a]);
  }

  void push(Index e) {
    if (elem_in_[e]) return;
    elem_in_[e] = 1;
    ++count_;
    by_src_[c_.elems[e].src].push_back(e);
    by_tgt_[c_.elems[e].tgt].push_back(e);
    work_.push_back(e);
    touch(c_.elems[e].src);
    touch(c_.elems[e].tgt);
  }

  void run() {
    const FinMonCat& v = *c_.base;
    while (!work_.empty()) {
      Index e = work_.front();
      work_.pop_front();
      for (Index alpha : v.cat.into[c_.elems[e].grade]) push(c_.reindex(alpha, e));
      for (std::size_t i = 0; i < by_src_[c_.elems[e].tgt].size(); ++i)
        push(c_.compose(by_src_[c_.elems[e].tgt][i], e));
      for (std::size_t i = 0; i < by_tgt_[c_.elems[e].src].size(); ++i)
        push(c_.compose(e, by_tgt_[c_.elems[e].src][i]));
    }
  }

  const GradedCat& c_;
  std::vector<char> elem_in_, obj_in_;
  std::vector<std::vector<Index>> by_src_, by_tgt_;
  std::deque<Index> work_;
  std::size_t count_ = 0;
};

struct GradedSub {
  std::vector<char> elems;
  std::vector<char> objects;
};

inline GradedSub generated_subcategory(const GradedCat& c, const std::vector<Index>& gens) {
  Closure cl(c);
  for (Index g : gens) cl.add(g);
  return {cl.elems(), cl.objects()};
}

// A set generates when its closure is all of c.
inline bool is_generating(const GradedCat& c, const std::vector<Index>& gens) {
  auto sub = generated_subcategory(c, gens);
  return std::all_of(sub.elems.begin(), sub.elems.end(), [](char x) { return x != 0; }) &&
         std::all_of(sub.objects.begin(), sub.objects.end(), [](char x) { return x != 0; });
}

// Greedy generating set: scans elements in order, keeping those not yet
// reachable. Identities are never chosen since objects contribute them.
inline std::vector<Index> generating_set(const GradedCat& c) {
  Closure cl(c);
  std::vector<char> is_identity(c.num_elems(), 0);
  for (Index i : c.identity) is_identity[i] = 1;
  std::vector<Index> gens;
  for (Index e = 0; e < static_cast<Index>(c.num_elems()); ++e)
    if (!is_identity[e] && !cl.contains(e)) {
      gens.push_back(e);
      cl.add(e);
    }
  for (Index a = 0; a < static_cast<Index>(c.num_objects()); ++a)
    if (!cl.has_object(a)) {
      gens.push_back(c.identity[a]);
      cl.add(c.identity[a]);
    }
  return gens;
}

// Change of base along an opmonoidal F : V -> W, turning a W-graded category
// into a V-graded one with hom(X, A, B) = c.hom(FX, A, B).
inline GradedCat change_base(const OpmonFunctor& f, const GradedCat& c) {
  const FinMonCat& v = *f.dom;
  GradedCat out;
  out.base = f.dom;
  out.name = c.name;
  out.objects = c.objects;
  out.identity.assign(c.num_objects(), kNone);
  const auto nv = static_cast<Index>(v.n());
  std::vector<char> seen(c.base->n(), 0);
  bool injective = true;
  for (Index x = 0; x < nv; ++x) {
    if (seen[f.obj_map[x]]) injective = false;
    seen[f.obj_map[x]] = 1;
  }
  // lift[x][e] = element (x, e); elements follow the order of c
  std::vector<std::unordered_map<Index, Index>> lift(nv);
  std::vector<std::vector<Index>> preimage(c.base->n());
  for (Index x = 0; x < nv; ++x) preimage[f.obj_map[x]].push_back(x);
  for (Index e = 0; e < static_cast<Index>(c.num_elems()); ++e)
    for (Index x : preimage[c.elems[e].grade]) {
      Id id = injective ? c.elem_ids[e] : v.cat.objects[x] + "/" + c.elem_ids[e];
      lift[x][e] = out.add_elem(id, x, c.elems[e].src, c.elems[e].tgt);
      out.origin.push_back(e);
    }
  out.index();
  out.allocate();
  for (Index a = 0; a < static_cast<Index>(c.num_objects()); ++a)
    out.identity[a] = lift[v.unit].at(c.reindex(f.eps, c.identity[a]));
  for (Index e = 0; e < static_cast<Index>(out.num_elems()); ++e) {
    Index x = out.elems[e].grade;
    for (Index alpha : v.cat.into[x])
      out.set_reindex(alpha, e, lift[v.src(alpha)].at(c.reindex(f.mor_map[alpha], out.origin[e])));
  }
  for (Index g = 0; g < static_cast<Index>(out.num_elems()); ++g)
    for (Index e : out.into_obj[out.elems[g].src]) {
      Index y = out.elems[g].grade, x = out.elems[e].grade;
      Index gf = c.compose(out.origin[g], out.origin[e]);
      out.set_compose(g, e, lift[v.tensor(y, x)].at(c.reindex(f.d(y, x), gf)));
    }
  out.finalize();
  return out;
}

// A graded functor between categories graded over the same base.
struct GradedFunctor {
  GradedPtr dom, cod;
  std::vector<Index> obj_map;
  std::vector<Index> elem_map;

  // Canonical key: object images followed by element images.
  std::vector<Index> key() const {
    std::vector<Index> k = obj_map;
    k.insert(k.end(), elem_map.begin(), elem_map.end());
    return k;
  }
};

inline CheckReport check_graded_functor(const GradedFunctor& F) {
  CheckReport rep;
  const GradedCat& d = *F.dom;
  const GradedCat& c = *F.cod;
  const FinMonCat& v = *d.base;
  const auto& ids = d.elem_ids;
  for (Index e = 0; e < static_cast<Index>(d.num_elems()); ++e) {
    const auto& de = d.elems[e];
    const auto& ce = c.elems[F.elem_map[e]];
    rep.expect(ce.grade == de.grade && ce.src == F.obj_map[de.src] && ce.tgt == F.obj_map[de.tgt],
               "functor-shape", {ids[e]});
  }
  if (!rep.ok()) return rep;
  for (Index a = 0; a < static_cast<Index>(d.num_objects()); ++a)
    rep.expect(F.elem_map[d.identity[a]] == c.identity[F.obj_map[a]], "functor-identity",
               {d.objects[a]});
  for (Index e = 0; e < static_cast<Index>(d.num_elems()); ++e)
    for (Index alpha : v.cat.into[d.elems[e].grade])
      rep.expect(F.elem_map[d.reindex(alpha, e)] == c.reindex(alpha, F.elem_map[e]),
                 "functor-reindex", {v.cat.morphisms[alpha], ids[e]});
  for (Index g = 0; g < static_cast<Index>(d.num_elems()); ++g)
    for (Index f : d.into_obj[d.elems[g].src])
      rep.expect(F.elem_map[d.compose(g, f)] == c.compose(F.elem_map[g], F.elem_map[f]),
                 "functor-compose", {ids[g], ids[f]});
  return rep;
}

// Extends generator images to a full element map, or returns nullopt if two
// derivations of some element disagree. gens[i] maps to images[i].
inline std::optional<std::vector<Index>> extend_from_generators(
    const GradedCat& d, const GradedCat& c, const std::vector<Index>& obj_map,
    const std::vector<Index>& gens, const std::vector<Index>& images) {
  const FinMonCat& v = *d.base;
  std::vector<Index> img(d.num_elems(), kNone);
  std::vector<std::vector<Index>> by_src(d.num_objects()), by_tgt(d.num_objects());
  std::deque<Index> work;
  bool conflict = false;
  auto assign = [&](Index e, Index target) {
    if (img[e] != kNone) {
      if (img[e] != target) conflict = true;
      return;
    }
    img[e] = target;
    by_src[d.elems[e].src].push_back(e);
    by_tgt[d.elems[e].tgt].push_back(e);
    work.push_back(e);
  };
  for (Index a = 0; a < static_cast<Index>(d.num_objects()); ++a)
    assign(d.identity[a], c.identity[obj_map[a]]);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const auto& de = d.elems[gens[i]];
    const auto& ce = c.elems[images[i]];
    if (ce.grade != de.grade || ce.src != obj_map[de.src] || ce.tgt != obj_map[de.tgt]) return std::nullopt;
    assign(gens[i], images[i]);
  }
  while (!work.empty() && !conflict) {
    Index e = work.front();
    work.pop_front();
    for (Index alpha : v.cat.into[d.elems[e].grade]) assign(d.reindex(alpha, e), c.reindex(alpha, img[e]));
    for (std::size_t i = 0; i < by_src[d.elems[e].tgt].size() && !conflict; ++i) {
      Index g = by_src[d.elems[e].tgt][i];
      assign(d.compose(g, e), c.compose(img[g], img[e]));
    }
    for (std::size_t i = 0; i < by_tgt[d.elems[e].src].size() && !conflict; ++i) {
      Index f = by_tgt[d.elems[e].src][i];
      assign(d.compose(e, f), c.compose(img[e], img[f]));
    }
  }
  if (conflict) return std::nullopt;
  return img;
}

// All graded functors d -> c. Candidate maps are fixed on a generating set
// and extended; the budget bounds the number of functors returned.
inline std::vector<GradedFunctor> enumerate_functors(const GradedPtr& d, const GradedPtr& c,
                                                     const Budget& budget = {}) {
  const auto gens = generating_set(*d);
  const auto nd = static_cast<Index>(d->num_objects());
  const auto nc = static_cast<Index>(c->num_objects());
  std::vector<GradedFunctor> out;
  std::vector<Index> obj(nd, kNone);
  std::vector<Index> images;

  std::function<void(std::size_t)> choose_gen = [&](std::size_t k) {
    if (k == gens.size()) {
      auto full = extend_from_generators(*d, *c, obj, gens, images);
      if (!full) return;
      if (out.size() >= budget.max_objects)
        throw BudgetExceeded("more than " + std::to_string(budget.max_objects) + " functors from '" +
                             d->name + "' to '" + c->name + "'");
      out.push_back({d, c, obj, *full});
      return;
    }
    const auto& ge = d->elems[gens[k]];
    for (Index cand : c->hom(ge.grade, obj[ge.src], obj[ge.tgt])) {
      images.push_back(cand);
      std::vector<Index> prefix(gens.begin(), gens.begin() + static_cast<long>(k + 1));
      if (extend_from_generators(*d, *c, obj, prefix, images)) choose_gen(k + 1);
      images.pop_back();
    }
  };

  std::function<void(Index)> choose_obj = [&](Index a) {
    if (a == nd) {
      choose_gen(0);
      return;
    }
    for (Index b = 0; b < nc; ++b) {
      obj[a] = b;
      bool viable = true;
      for (Index g : gens) {
        const auto& ge = d->elems[g];
        if (ge.src <= a && ge.tgt <= a && c->hom(ge.grade, obj[ge.src], obj[ge.tgt]).empty()) {
          viable = false;
          break;
        }
      }
      if (viable) choose_obj(a + 1);
    }
    obj[a] = kNone;
  };
  choose_obj(0);
  return out;
}

// A graded natural transformation: components at grade I.
struct GradedTransformation {
  GradedFunctor from, to;
  std::vector<Index> components;
};

inline CheckReport check_graded_transformation(const GradedTransformation& t) {
  CheckReport rep;
  const GradedCat& d = *t.from.dom;
  const GradedCat& c = *t.from.cod;
  const FinMonCat& v = *d.base;
  for (Index a = 0; a < static_cast<Index>(d.num_objects()); ++a) {
    const auto& e = c.elems[t.components[a]];
    rep.expect(e.grade == v.unit && e.src == t.from.obj_map[a] && e.tgt == t.to.obj_map[a],
               "component-shape", {d.objects[a]});
  }
  if (!rep.ok()) return rep;
  for (Index f = 0; f < static_cast<Index>(d.num_elems()); ++f) {
    const auto& ef = d.elems[f];
    Index lhs = c.reindex(v.inv(v.l(ef.grade)), c.compose(t.components[ef.tgt], t.from.elem_map[f]));
    Index rhs = c.reindex(v.inv(v.r(ef.grade)), c.compose(t.to.elem_map[f], t.components[ef.src]));
    rep.expect(lhs == rhs, "transformation-natural", {d.elem_ids[f]});
  }
  return rep;
}

}  // namespace gradcat
