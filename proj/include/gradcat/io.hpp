#pragma once

#include <fstream>
#include <map>
#include <sstream>

#include "gradcat/duoidal.hpp"
#include "gradcat/modules.hpp"
#include "json.hpp"

namespace gradcat::io {

using json = nlohmann::json;

// Malformed file contents. The message starts with the JSON path.
class ParseError : public StructuralError {
 public:
  using StructuralError::StructuralError;
};

inline const std::vector<std::string>& kinds() {
  static const std::vector<std::string> k{"fincat", "monoidal", "graded", "bigraded", "functor", "module", "duoidal"};
  return k;
}

namespace detail {

[[noreturn]] inline void fail(const std::string& path, const std::string& msg) {
  throw ParseError(path + ": " + msg);
}

inline const json& field(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path, "missing field '" + key + "'");
  return *it;
}

inline const json& array(const json& j, const std::string& key, const std::string& path) {
  const json& a = field(j, key, path);
  if (!a.is_array()) fail(path + "." + key, "expected an array");
  return a;
}

inline std::string str(const json& j, const std::string& key, const std::string& path) {
  const json& s = field(j, key, path);
  if (!s.is_string()) fail(path + "." + key, "expected a string");
  return s.get<std::string>();
}

inline Index integer(const json& j, const std::string& key, const std::string& path) {
  const json& s = field(j, key, path);
  if (!s.is_number_integer()) fail(path + "." + key, "expected an integer");
  return s.get<Index>();
}

inline std::string at(const std::string& path, const std::string& key, std::size_t i) {
  return path + "." + key + "[" + std::to_string(i) + "]";
}

// Id -> index table that reports unknown ids with their path.
class Names {
 public:
  Names() = default;
  explicit Names(const std::vector<Id>& ids, const std::string& path = "$") {
    for (std::size_t i = 0; i < ids.size(); ++i)
      if (!map_.emplace(ids[i], static_cast<Index>(i)).second) fail(path, "duplicate id '" + ids[i] + "'");
  }
  Index operator()(const json& j, const std::string& key, const std::string& path) const {
    return find(str(j, key, path), path + "." + key);
  }
  Index find(const std::string& id, const std::string& path) const {
    auto it = map_.find(id);
    if (it == map_.end()) fail(path, "id '" + id + "' is out of range");
    return it->second;
  }

 private:
  std::unordered_map<Id, Index> map_;
};

inline void set_once(Index& slot, Index value, const std::string& path) {
  if (slot != kNone) fail(path, "duplicate entry");
  slot = value;
}

// Sorts records by the listed fields, in that order.
inline json canonical(json arr, const std::vector<std::string>& keys) {
  std::sort(arr.begin(), arr.end(), [&](const json& x, const json& y) {
    for (const auto& k : keys) {
      if (x[k] < y[k]) return true;
      if (y[k] < x[k]) return false;
    }
    return false;
  });
  return arr;
}

inline json sorted_strings(std::vector<Id> ids) {
  std::sort(ids.begin(), ids.end());
  return json(ids);
}

template <class Fn>
auto rethrow_at(const std::string& path, Fn&& fn) {
  try {
    return fn();
  } catch (const ParseError&) {
    throw;
  } catch (const StructuralError& e) {
    fail(path, e.what());
  }
}

inline void expect_kind(const json& j, const std::string& kind, const std::string& path) {
  const std::string k = str(j, "kind", path);
  if (k != kind) fail(path + ".kind", "expected '" + kind + "', found '" + k + "'");
}

}  // namespace detail

// ---- fincat --------------------------------------------------------------

inline void write_fincat_body(json& out, const FinCat& c) {
  out["objects"] = detail::sorted_strings(c.objects);
  json mors = json::array(), ids = json::array(), comp = json::array();
  for (Index f = 0; f < static_cast<Index>(c.num_morphisms()); ++f)
    mors.push_back({{"id", c.morphisms[f]}, {"src", c.objects[c.src[f]]}, {"tgt", c.objects[c.tgt[f]]}});
  for (Index a = 0; a < static_cast<Index>(c.num_objects()); ++a)
    ids.push_back({{"object", c.objects[a]}, {"morphism", c.morphisms[c.identity[a]]}});
  for (Index g = 0; g < static_cast<Index>(c.num_morphisms()); ++g)
    for (Index f : c.into[c.src[g]])
      if (c.compose(g, f) != kNone)
        comp.push_back({{"g", c.morphisms[g]}, {"f", c.morphisms[f]}, {"gf", c.morphisms[c.compose(g, f)]}});
  out["morphisms"] = detail::canonical(mors, {"id"});
  out["identities"] = detail::canonical(ids, {"object"});
  out["compose"] = detail::canonical(comp, {"g", "f"});
}

inline FinCat read_fincat_body(const json& j, const std::string& path) {
  using namespace detail;
  FinCat c;
  const json& objs = array(j, "objects", path);
  for (std::size_t i = 0; i < objs.size(); ++i) {
    if (!objs[i].is_string()) fail(at(path, "objects", i), "expected a string");
    c.add_object(objs[i].get<std::string>());
  }
  Names on(c.objects, path + ".objects");
  const json& mors = array(j, "morphisms", path);
  for (std::size_t i = 0; i < mors.size(); ++i) {
    const auto p = at(path, "morphisms", i);
    c.add_morphism(str(mors[i], "id", p), on(mors[i], "src", p), on(mors[i], "tgt", p));
  }
  Names mn(c.morphisms, path + ".morphisms");
  c.allocate();
  const json& ids = array(j, "identities", path);
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const auto p = at(path, "identities", i);
    set_once(c.identity[on(ids[i], "object", p)], mn(ids[i], "morphism", p), p);
  }
  const json& comp = array(j, "compose", path);
  for (std::size_t i = 0; i < comp.size(); ++i) {
    const auto p = at(path, "compose", i);
    Index g = mn(comp[i], "g", p), f = mn(comp[i], "f", p), gf = mn(comp[i], "gf", p);
    if (c.tgt[f] != c.src[g]) fail(p, "'" + c.morphisms[g] + "' and '" + c.morphisms[f] + "' are not composable");
    Index& slot = c.compose_table[static_cast<std::size_t>(g) * c.num_morphisms() + f];
    set_once(slot, gf, p);
  }
  rethrow_at(path, [&] {
    c.finalize();
    return 0;
  });
  return c;
}

inline json to_json(const FinCat& c, const Id& name = "") {
  json out{{"kind", "fincat"}, {"name", name}};
  write_fincat_body(out, c);
  return out;
}

inline FinCat fincat_from_json(const json& j, const std::string& path = "$") {
  detail::expect_kind(j, "fincat", path);
  return read_fincat_body(j, path);
}

// ---- monoidal ------------------------------------------------------------

namespace detail {

// Tensor, associator and unitor tables of `v` over the category `c`.
inline void write_structure(json& out, const FinMonCat& v) {
  const FinCat& c = v.cat;
  const auto n = static_cast<Index>(v.n()), m = static_cast<Index>(v.m());
  json to = json::array(), tm = json::array(), as = json::array(), lu = json::array(), ru = json::array();
  for (Index x = 0; x < n; ++x)
    for (Index y = 0; y < n; ++y)
      to.push_back({{"x", c.objects[x]}, {"y", c.objects[y]}, {"xy", c.objects[v.tensor(x, y)]}});
  for (Index f = 0; f < m; ++f)
    for (Index g = 0; g < m; ++g)
      tm.push_back({{"f", c.morphisms[f]}, {"g", c.morphisms[g]}, {"fg", c.morphisms[v.tensor_m(f, g)]}});
  for (Index x = 0; x < n; ++x)
    for (Index y = 0; y < n; ++y)
      for (Index z = 0; z < n; ++z)
        as.push_back({{"x", c.objects[x]},
                      {"y", c.objects[y]},
                      {"z", c.objects[z]},
                      {"morphism", c.morphisms[v.a(x, y, z)]}});
  for (Index x = 0; x < n; ++x) {
    lu.push_back({{"object", c.objects[x]}, {"morphism", c.morphisms[v.l(x)]}});
    ru.push_back({{"object", c.objects[x]}, {"morphism", c.morphisms[v.r(x)]}});
  }
  out["unit"] = c.objects[v.unit];
  out["strict"] = v.strict;
  out["tensor_objects"] = canonical(to, {"x", "y"});
  out["tensor_morphisms"] = canonical(tm, {"f", "g"});
  out["associator"] = canonical(as, {"x", "y", "z"});
  out["left_unitor"] = canonical(lu, {"object"});
  out["right_unitor"] = canonical(ru, {"object"});
}

inline void read_structure(const json& j, const std::string& path, FinMonCat& v) {
  const FinCat& c = v.cat;
  Names on(c.objects), mn(c.morphisms);
  const auto n = v.n(), m = v.m();
  v.unit = rethrow_at(path + ".unit", [&] { return c.object_index(str(j, "unit", path)); });
  const json& strict = field(j, "strict", path);
  if (!strict.is_boolean()) fail(path + ".strict", "expected a boolean");
  v.strict = strict.get<bool>();
  const json& to = array(j, "tensor_objects", path);
  for (std::size_t i = 0; i < to.size(); ++i) {
    const auto p = at(path, "tensor_objects", i);
    set_once(v.tensor_obj[on(to[i], "x", p) * n + on(to[i], "y", p)], on(to[i], "xy", p), p);
  }
  const json& tm = array(j, "tensor_morphisms", path);
  for (std::size_t i = 0; i < tm.size(); ++i) {
    const auto p = at(path, "tensor_morphisms", i);
    set_once(v.tensor_mor[static_cast<std::size_t>(mn(tm[i], "f", p)) * m + mn(tm[i], "g", p)],
             mn(tm[i], "fg", p), p);
  }
  const json& as = array(j, "associator", path);
  for (std::size_t i = 0; i < as.size(); ++i) {
    const auto p = at(path, "associator", i);
    set_once(v.assoc[(on(as[i], "x", p) * n + on(as[i], "y", p)) * n + on(as[i], "z", p)],
             mn(as[i], "morphism", p), p);
  }
  for (const auto& [key, table] : {std::pair{"left_unitor", &v.lunit}, std::pair{"right_unitor", &v.runit}}) {
    const json& u = array(j, key, path);
    for (std::size_t i = 0; i < u.size(); ++i) {
      const auto p = at(path, key, i);
      set_once((*table)[on(u[i], "object", p)], mn(u[i], "morphism", p), p);
    }
  }
}

}  // namespace detail

inline json to_json(const FinMonCat& v) {
  json out{{"kind", "monoidal"}, {"name", v.name}};
  write_fincat_body(out, v.cat);
  detail::write_structure(out, v);
  if (v.braided()) {
    json br = json::array();
    for (Index x = 0; x < static_cast<Index>(v.n()); ++x)
      for (Index y = 0; y < static_cast<Index>(v.n()); ++y)
        br.push_back({{"x", v.cat.objects[x]}, {"y", v.cat.objects[y]}, {"morphism", v.cat.morphisms[v.c(x, y)]}});
    out["braiding"] = detail::canonical(br, {"x", "y"});
  }
  return out;
}

inline FinMonCat monoidal_from_json(const json& j, const std::string& path = "$") {
  using namespace detail;
  expect_kind(j, "monoidal", path);
  FinMonCat v;
  v.name = str(j, "name", path);
  v.cat = read_fincat_body(j, path);
  FinCat keep = v.cat;
  v.allocate();
  v.cat = std::move(keep);  // allocate() clears the composition table
  read_structure(j, path, v);
  if (j.contains("braiding")) {
    Names on(v.cat.objects), mn(v.cat.morphisms);
    v.braiding.assign(v.n() * v.n(), kNone);
    const json& br = array(j, "braiding", path);
    for (std::size_t i = 0; i < br.size(); ++i) {
      const auto p = at(path, "braiding", i);
      set_once(v.braiding[on(br[i], "x", p) * v.n() + on(br[i], "y", p)], mn(br[i], "morphism", p), p);
    }
  }
  rethrow_at(path, [&] {
    v.finalize();
    return 0;
  });
  return v;
}

// ---- graded and bigraded -------------------------------------------------

namespace detail {

using GradeName = std::function<json(Index)>;
using MorName = std::function<json(Index)>;

inline void write_graded_body(json& out, const GradedCat& c, const GradeName& grade, const MorName& mor) {
  const auto& ids = c.elem_ids;
  out["name"] = c.name;
  out["objects"] = sorted_strings(c.objects);
  json elems = json::array(), idt = json::array(), re = json::array(), comp = json::array();
  for (Index e = 0; e < static_cast<Index>(c.num_elems()); ++e) {
    const auto& el = c.elems[e];
    elems.push_back({{"id", ids[e]}, {"grade", grade(el.grade)}, {"src", c.objects[el.src]}, {"tgt", c.objects[el.tgt]}});
    for (Index alpha : c.base->cat.into[el.grade])
      re.push_back({{"alpha", mor(alpha)}, {"element", ids[e]}, {"result", ids[c.reindex(alpha, e)]}});
    for (Index f : c.into_obj[el.src]) comp.push_back({{"g", ids[e]}, {"f", ids[f]}, {"gf", ids[c.compose(e, f)]}});
  }
  for (Index a = 0; a < static_cast<Index>(c.num_objects()); ++a)
    idt.push_back({{"object", c.objects[a]}, {"element", ids[c.identity[a]]}});
  out["elements"] = canonical(elems, {"id"});
  out["identities"] = canonical(idt, {"object"});
  out["reindex"] = canonical(re, {"element", "alpha"});
  out["compose"] = canonical(comp, {"g", "f"});
}

using GradeOf = std::function<Index(const json&, const std::string&)>;

inline GradedCat read_graded_body(const json& j, const std::string& path, MonCatPtr base, const GradeOf& grade,
                                  const GradeOf& mor) {
  GradedCat c;
  c.name = str(j, "name", path);
  c.base = std::move(base);
  const json& objs = array(j, "objects", path);
  for (std::size_t i = 0; i < objs.size(); ++i) {
    if (!objs[i].is_string()) fail(at(path, "objects", i), "expected a string");
    c.add_object(objs[i].get<std::string>());
  }
  Names on(c.objects, path + ".objects");
  const json& elems = array(j, "elements", path);
  for (std::size_t i = 0; i < elems.size(); ++i) {
    const auto p = at(path, "elements", i);
    c.add_elem(str(elems[i], "id", p), grade(field(elems[i], "grade", p), p + ".grade"), on(elems[i], "src", p),
               on(elems[i], "tgt", p));
  }
  rethrow_at(path + ".elements", [&] {
    c.index();
    return 0;
  });
  Names en(c.elem_ids);
  c.allocate();
  const json& idt = array(j, "identities", path);
  for (std::size_t i = 0; i < idt.size(); ++i) {
    const auto p = at(path, "identities", i);
    set_once(c.identity[on(idt[i], "object", p)], en(idt[i], "element", p), p);
  }
  const json& re = array(j, "reindex", path);
  for (std::size_t i = 0; i < re.size(); ++i) {
    const auto p = at(path, "reindex", i);
    Index alpha = mor(field(re[i], "alpha", p), p + ".alpha"), e = en(re[i], "element", p);
    if (c.base->tgt(alpha) != c.elems[e].grade) fail(p, "alpha does not end at the grade of the element");
    set_once(c.reindex_rows[e][c.base->cat.pos_into[alpha]], en(re[i], "result", p), p);
  }
  const json& comp = array(j, "compose", path);
  for (std::size_t i = 0; i < comp.size(); ++i) {
    const auto p = at(path, "compose", i);
    Index g = en(comp[i], "g", p), f = en(comp[i], "f", p);
    if (c.elems[f].tgt != c.elems[g].src) fail(p, "'" + c.elem_ids[g] + "' and '" + c.elem_ids[f] + "' are not composable");
    set_once(c.compose_rows[g][c.pos_into_obj[f]], en(comp[i], "gf", p), p);
  }
  rethrow_at(path, [&] {
    c.finalize();
    return 0;
  });
  return c;
}

}  // namespace detail

inline json to_json(const GradedCat& c) {
  const FinCat& b = c.base->cat;
  json out{{"kind", "graded"}, {"base", to_json(*c.base)}};
  detail::write_graded_body(
      out, c, [&](Index x) { return json(b.objects[x]); }, [&](Index a) { return json(b.morphisms[a]); });
  return out;
}

inline GradedCat graded_from_json(const json& j, const std::string& path = "$") {
  using namespace detail;
  expect_kind(j, "graded", path);
  auto base = make_ptr(monoidal_from_json(field(j, "base", path), path + ".base"));
  Names on(base->cat.objects), mn(base->cat.morphisms);
  auto by_id = [](const Names& names) {
    return [&names](const json& g, const std::string& p) {
      if (!g.is_string()) fail(p, "expected a string");
      return names.find(g.get<std::string>(), p);
    };
  };
  return read_graded_body(j, path, base, by_id(on), by_id(mn));
}

inline json to_json(const BigradedCat& b) {
  const FinCat &v = b.base.left->cat, &w = b.base.right->cat;
  const auto nw = static_cast<Index>(w.num_objects()), mw = static_cast<Index>(w.num_morphisms());
  json out{{"kind", "bigraded"}, {"left", to_json(*b.base.left)}, {"right", to_json(*b.base.right)}};
  detail::write_graded_body(
      out, *b.cat, [&](Index g) { return json::array({v.objects[g / nw], w.objects[g % nw]}); },
      [&](Index a) { return json::array({v.morphisms[a / mw], w.morphisms[a % mw]}); });
  return out;
}

inline BigradedCat bigraded_from_json(const json& j, const std::string& path = "$") {
  using namespace detail;
  expect_kind(j, "bigraded", path);
  auto left = make_ptr(monoidal_from_json(field(j, "left", path), path + ".left"));
  auto right = make_ptr(monoidal_from_json(field(j, "right", path), path + ".right"));
  BigradedBase base = bigraded_base(left, right);
  auto pair_of = [](const FinCat& v, const FinCat& w, bool objects, Index wsize) {
    return [&v, &w, objects, wsize](const json& g, const std::string& p) {
      if (!g.is_array() || g.size() != 2 || !g[0].is_string() || !g[1].is_string())
        fail(p, "expected a two-element array of ids");
      auto find = [&](const std::vector<Id>& ids, const json& id, const std::string& q) {
        auto it = std::find(ids.begin(), ids.end(), id.get<std::string>());
        if (it == ids.end()) fail(q, "id '" + id.get<std::string>() + "' is out of range");
        return static_cast<Index>(it - ids.begin());
      };
      Index a = find(objects ? v.objects : v.morphisms, g[0], p + "[0]");
      Index b = find(objects ? w.objects : w.morphisms, g[1], p + "[1]");
      return a * wsize + b;
    };
  };
  const FinCat &v = left->cat, &w = base.right_rev->cat;
  GradedCat c = read_graded_body(j, path, base.product,
                                 pair_of(v, w, true, static_cast<Index>(w.num_objects())),
                                 pair_of(v, w, false, static_cast<Index>(w.num_morphisms())));
  return rethrow_at(path, [&] { return make_bigraded(base, make_ptr(std::move(c))); });
}

// ---- functors ------------------------------------------------------------

// A graded functor, optionally tagged with the bifunctor it curries: corner
// is "product" (A box B -> C), "left" (A -> [B, C]) or "right" (B -> [A, C]).
struct CurryContext {
  std::string corner;
  GradedPtr a, b;
  BigradedCat c;
};

struct FunctorFile {
  GradedFunctor functor;
  std::optional<CurryContext> context;
  // Raw id maps, resolved against a context-built domain and codomain.
  std::vector<std::pair<Id, Id>> objects, elements;
};

inline json functor_to_json(const GradedFunctor& F, const std::optional<CurryContext>& ctx = std::nullopt) {
  json out{{"kind", "functor"}, {"source", to_json(*F.dom)}, {"target", to_json(*F.cod)}};
  json objs = json::array(), elems = json::array();
  for (Index a = 0; a < static_cast<Index>(F.obj_map.size()); ++a)
    objs.push_back({{"from", F.dom->objects[a]}, {"to", F.cod->objects[F.obj_map[a]]}});
  for (Index e = 0; e < static_cast<Index>(F.elem_map.size()); ++e)
    elems.push_back({{"from", F.dom->elem_ids[e]}, {"to", F.cod->elem_ids[F.elem_map[e]]}});
  out["objects"] = detail::canonical(objs, {"from"});
  out["elements"] = detail::canonical(elems, {"from"});
  if (ctx)
    out["curry"] = {{"corner", ctx->corner}, {"a", to_json(*ctx->a)}, {"b", to_json(*ctx->b)}, {"c", to_json(ctx->c)}};
  return out;
}

// Resolves id pairs against the given domain and codomain.
inline GradedFunctor resolve_functor(const GradedPtr& dom, const GradedPtr& cod,
                                     const std::vector<std::pair<Id, Id>>& objects,
                                     const std::vector<std::pair<Id, Id>>& elements, const std::string& path = "$") {
  using namespace detail;
  GradedFunctor F{dom, cod, std::vector<Index>(dom->num_objects(), kNone), std::vector<Index>(dom->num_elems(), kNone)};
  Names dob(dom->objects), del(dom->elem_ids), cob(cod->objects), cel(cod->elem_ids);
  for (std::size_t i = 0; i < objects.size(); ++i) {
    const auto p = at(path, "objects", i);
    set_once(F.obj_map[dob.find(objects[i].first, p + ".from")], cob.find(objects[i].second, p + ".to"), p);
  }
  for (std::size_t i = 0; i < elements.size(); ++i) {
    const auto p = at(path, "elements", i);
    set_once(F.elem_map[del.find(elements[i].first, p + ".from")], cel.find(elements[i].second, p + ".to"), p);
  }
  for (std::size_t a = 0; a < F.obj_map.size(); ++a)
    if (F.obj_map[a] == kNone) fail(path + ".objects", "no image for object '" + dom->objects[a] + "'");
  for (std::size_t e = 0; e < F.elem_map.size(); ++e)
    if (F.elem_map[e] == kNone) fail(path + ".elements", "no image for element '" + dom->elem_ids[e] + "'");
  return F;
}

inline FunctorFile functor_from_json(const json& j, const std::string& path = "$") {
  using namespace detail;
  expect_kind(j, "functor", path);
  FunctorFile out;
  for (const auto& [key, list] : {std::pair{"objects", &out.objects}, std::pair{"elements", &out.elements}}) {
    const json& a = array(j, key, path);
    for (std::size_t i = 0; i < a.size(); ++i) {
      const auto p = at(path, key, i);
      list->emplace_back(str(a[i], "from", p), str(a[i], "to", p));
    }
  }
  auto dom = make_ptr(graded_from_json(field(j, "source", path), path + ".source"));
  auto cod = make_ptr(graded_from_json(field(j, "target", path), path + ".target"));
  out.functor = resolve_functor(dom, cod, out.objects, out.elements, path);
  if (j.contains("curry")) {
    const json& c = j["curry"];
    const std::string p = path + ".curry";
    CurryContext ctx;
    ctx.corner = str(c, "corner", p);
    if (ctx.corner != "product" && ctx.corner != "left" && ctx.corner != "right")
      fail(p + ".corner", "unknown corner '" + ctx.corner + "'");
    ctx.a = make_ptr(graded_from_json(field(c, "a", p), p + ".a"));
    ctx.b = make_ptr(graded_from_json(field(c, "b", p), p + ".b"));
    ctx.c = bigraded_from_json(field(c, "c", p), p + ".c");
    out.context = std::move(ctx);
  }
  return out;
}

// ---- modules -------------------------------------------------------------

inline json to_json(const GradedModule& M) {
  const FinCat& v = M.v->cat;
  const auto na = M.na(), nb = static_cast<Index>(M.b->num_objects());
  json vals = json::array(), lam = json::array(), rho = json::array();
  auto slots = [&](const FinPresheaf& p, auto&& fn) {
    for (Index z = 0; z < static_cast<Index>(p.sizes.size()); ++z)
      for (Index mu = 0; mu < p.sizes[z]; ++mu) fn(z, mu, GradedModule::slot(p, z, mu));
  };
  for (Index y = 0; y < nb; ++y)
    for (Index x = 0; x < na; ++x) {
      const FinPresheaf& p = M.value(y, x);
      json sizes = json::array(), act = json::array();
      for (Index z = 0; z < static_cast<Index>(p.sizes.size()); ++z)
        sizes.push_back({{"grade", v.objects[z]}, {"size", p.sizes[z]}});
      for (Index alpha = 0; alpha < static_cast<Index>(v.num_morphisms()); ++alpha)
        for (Index e = 0; e < static_cast<Index>(p.action[alpha].size()); ++e)
          act.push_back({{"alpha", v.morphisms[alpha]}, {"element", e}, {"result", p.action[alpha][e]}});
      vals.push_back({{"b", M.b->objects[y]},
                      {"a", M.a->objects[x]},
                      {"sizes", detail::canonical(sizes, {"grade"})},
                      {"action", detail::canonical(act, {"alpha", "element"})}});
    }
  for (Index f = 0; f < static_cast<Index>(M.b->num_elems()); ++f)
    for (Index x = 0; x < na; ++x)
      slots(M.value(M.b->elems[f].tgt, x), [&](Index z, Index mu, std::size_t) {
        lam.push_back({{"f", M.b->elem_ids[f]}, {"a", M.a->objects[x]}, {"z", v.objects[z]}, {"mu", mu},
                       {"result", M.lam(f, x, z, mu)}});
      });
  for (Index y = 0; y < nb; ++y)
    for (Index g = 0; g < M.ea(); ++g)
      slots(M.value(y, M.a->elems[g].src), [&](Index z, Index mu, std::size_t) {
        rho.push_back({{"b", M.b->objects[y]}, {"g", M.a->elem_ids[g]}, {"z", v.objects[z]}, {"mu", mu},
                       {"result", M.rh(y, g, z, mu)}});
      });
  return {{"kind", "module"},
          {"a", to_json(*M.a)},
          {"b", to_json(*M.b)},
          {"v", to_json(*M.v)},
          {"values", detail::canonical(vals, {"b", "a"})},
          {"lambda", detail::canonical(lam, {"f", "a", "z", "mu"})},
          {"rho", detail::canonical(rho, {"b", "g", "z", "mu"})}};
}

inline GradedModule module_from_json(const json& j, const std::string& path = "$") {
  using namespace detail;
  expect_kind(j, "module", path);
  GradedModule M;
  M.a = make_ptr(graded_from_json(field(j, "a", path), path + ".a"));
  M.b = make_ptr(graded_from_json(field(j, "b", path), path + ".b"));
  M.v = make_ptr(monoidal_from_json(field(j, "v", path), path + ".v"));
  const FinCat& v = M.v->cat;
  const auto na = M.na(), nb = static_cast<Index>(M.b->num_objects());
  Names aob(M.a->objects), bob(M.b->objects), ael(M.a->elem_ids), bel(M.b->elem_ids), vo(v.objects), vm(v.morphisms);
  auto integer_at = [](const json& rec, const char* key, const std::string& p, Index bound) {
    Index k = integer(rec, key, p);
    if (k < 0 || k >= bound) fail(p + "." + key, "index " + std::to_string(k) + " is out of range");
    return k;
  };
  M.values.assign(static_cast<std::size_t>(na) * nb, {});
  std::vector<bool> seen(M.values.size(), false);
  const json& vals = array(j, "values", path);
  for (std::size_t i = 0; i < vals.size(); ++i) {
    const auto p = at(path, "values", i);
    const Index y = bob(vals[i], "b", p), x = aob(vals[i], "a", p);
    if (seen[y * na + x]) fail(p, "duplicate entry");
    seen[y * na + x] = true;
    FinPresheaf& q = M.values[y * na + x];
    q.sizes.assign(v.num_objects(), kNone);
    const json& sizes = array(vals[i], "sizes", p);
    for (std::size_t k = 0; k < sizes.size(); ++k) {
      const auto pk = at(p, "sizes", k);
      Index s = integer(sizes[k], "size", pk);
      if (s < 0) fail(pk + ".size", "negative size");
      set_once(q.sizes[vo(sizes[k], "grade", pk)], s, pk);
    }
    for (Index z = 0; z < static_cast<Index>(v.num_objects()); ++z)
      if (q.sizes[z] == kNone) fail(p + ".sizes", "no size at grade '" + v.objects[z] + "'");
    q.action.resize(v.num_morphisms());
    for (Index alpha = 0; alpha < static_cast<Index>(v.num_morphisms()); ++alpha)
      q.action[alpha].assign(q.sizes[v.tgt[alpha]], kNone);
    const json& act = array(vals[i], "action", p);
    for (std::size_t k = 0; k < act.size(); ++k) {
      const auto pk = at(p, "action", k);
      Index alpha = vm(act[k], "alpha", pk);
      Index e = integer_at(act[k], "element", pk, q.sizes[v.tgt[alpha]]);
      set_once(q.action[alpha][e], integer_at(act[k], "result", pk, q.sizes[v.src[alpha]]), pk);
    }
    for (const auto& row : q.action)
      if (std::find(row.begin(), row.end(), kNone) != row.end()) fail(p + ".action", "action table is not total");
  }
  for (std::size_t k = 0; k < seen.size(); ++k)
    if (!seen[k]) fail(path + ".values", "missing value at (" + M.b->objects[k / na] + "," + M.a->objects[k % na] + ")");

  auto read_action = [&](const char* key, const char* obj_key, const Names& obj_names, const char* elem_key,
                         const Names& elem_names, bool left, std::vector<std::vector<Index>>& table) {
    const Index ne = left ? static_cast<Index>(M.b->num_elems()) : M.ea();
    const Index no = left ? na : nb;
    table.assign(static_cast<std::size_t>(ne) * no, {});
    auto acted = [&](Index o, Index e) -> const FinPresheaf& {
      return left ? M.value(M.b->elems[e].tgt, o) : M.value(o, M.a->elems[e].src);
    };
    auto target = [&](Index o, Index e) -> const FinPresheaf& {
      return left ? M.value(M.b->elems[e].src, o) : M.value(o, M.a->elems[e].tgt);
    };
    for (Index e = 0; e < ne; ++e)
      for (Index o = 0; o < no; ++o)
        table[left ? e * no + o : o * ne + e].assign(acted(o, e).total(), kNone);
    const json& arr = array(j, key, path);
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const auto p = at(path, key, i);
      Index o = obj_names(arr[i], obj_key, p), e = elem_names(arr[i], elem_key, p), z = vo(arr[i], "z", p);
      const FinPresheaf& from = acted(o, e);
      Index mu = integer_at(arr[i], "mu", p, from.sizes[z]);
      const Index grade = left ? M.b->elems[e].grade : M.a->elems[e].grade;
      const Index out_grade = left ? M.v->tensor(grade, z) : M.v->tensor(z, grade);
      Index result = integer_at(arr[i], "result", p, target(o, e).sizes[out_grade]);
      set_once(table[left ? e * no + o : o * ne + e][GradedModule::slot(from, z, mu)], result, p);
    }
    for (const auto& row : table)
      if (std::find(row.begin(), row.end(), kNone) != row.end()) fail(path + "." + key, "action table is not total");
  };
  read_action("lambda", "a", aob, "f", bel, true, M.lambda);
  read_action("rho", "b", bob, "g", ael, false, M.rho);
  return M;
}

// ---- duoidal -------------------------------------------------------------

inline json to_json(const DuoidalData& d) {
  const FinCat& c = d.base->cat;
  const auto n = d.n();
  json star{{"name", d.star.name}};
  detail::write_structure(star, d.star);
  json xi = json::array();
  for (Index p = 0; p < n; ++p)
    for (Index p2 = 0; p2 < n; ++p2)
      for (Index q = 0; q < n; ++q)
        for (Index q2 = 0; q2 < n; ++q2)
          xi.push_back({{"p", c.objects[p]},
                        {"p2", c.objects[p2]},
                        {"q", c.objects[q]},
                        {"q2", c.objects[q2]},
                        {"morphism", c.morphisms[d.x(p, p2, q, q2)]}});
  return {{"kind", "duoidal"},
          {"name", d.name},
          {"base", to_json(*d.base)},
          {"star", star},
          {"xi", detail::canonical(xi, {"p", "p2", "q", "q2"})},
          {"mu", c.morphisms[d.mu]},
          {"gamma", c.morphisms[d.gamma]}};
}

inline DuoidalData duoidal_from_json(const json& j, const std::string& path = "$") {
  using namespace detail;
  expect_kind(j, "duoidal", path);
  DuoidalData d;
  d.name = str(j, "name", path);
  d.base = make_ptr(monoidal_from_json(field(j, "base", path), path + ".base"));
  const FinCat& c = d.base->cat;
  const std::string sp = path + ".star";
  const json& star = field(j, "star", path);
  d.star.name = str(star, "name", sp);
  d.star.cat = c;
  d.star.allocate();
  d.star.cat = c;
  read_structure(star, sp, d.star);
  rethrow_at(sp, [&] {
    d.star.finalize();
    return 0;
  });
  Names on(c.objects), mn(c.morphisms);
  const auto n = static_cast<std::size_t>(d.n());
  d.xi.assign(n * n * n * n, kNone);
  const json& xi = array(j, "xi", path);
  for (std::size_t i = 0; i < xi.size(); ++i) {
    const auto p = at(path, "xi", i);
    auto k = ((on(xi[i], "p", p) * n + on(xi[i], "p2", p)) * n + on(xi[i], "q", p)) * n + on(xi[i], "q2", p);
    set_once(d.xi[k], mn(xi[i], "morphism", p), p);
  }
  if (std::find(d.xi.begin(), d.xi.end(), kNone) != d.xi.end()) fail(path + ".xi", "interchange table is not total");
  d.mu = mn(j, "mu", path);
  d.gamma = mn(j, "gamma", path);
  return d;
}

// ---- files ---------------------------------------------------------------

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

inline json parse(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("$: ") + e.what());
  }
  const std::string kind = detail::str(j, "kind", "$");
  if (std::find(kinds().begin(), kinds().end(), kind) == kinds().end())
    throw ParseError("$.kind: unknown kind '" + kind + "'");
  return j;
}

inline json read_file(const std::string& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw ParseError(file + ": cannot open");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

inline void write_file(const std::string& file, const json& j) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw StructuralError(file + ": cannot write");
  out << dump(j);
}

// Reloads and re-serializes once: the canonical form of any valid file.
inline std::string normalize(const std::string& text) {
  json j = parse(text);
  const std::string kind = j["kind"];
  if (kind == "fincat") return dump(to_json(fincat_from_json(j), j.value("name", "")));
  if (kind == "monoidal") return dump(to_json(monoidal_from_json(j)));
  if (kind == "graded") return dump(to_json(graded_from_json(j)));
  if (kind == "bigraded") return dump(to_json(bigraded_from_json(j)));
  if (kind == "functor") {
    auto f = functor_from_json(j);
    return dump(functor_to_json(f.functor, f.context));
  }
  if (kind == "module") return dump(to_json(module_from_json(j)));
  return dump(to_json(duoidal_from_json(j)));
}

}  // namespace gradcat::io
