#include <random>

#include "gradcat/examples.hpp"
#include "helpers.hpp"

using namespace gradcat;
using namespace gradcat::testing;
using io::json;

namespace {

CheckReport check_any(const json& j) {
  const std::string kind = j["kind"];
  if (kind == "monoidal") return check_monoidal(io::monoidal_from_json(j));
  if (kind == "graded") return check_graded(io::graded_from_json(j));
  if (kind == "bigraded") return check_graded(*io::bigraded_from_json(j).cat);
  if (kind == "functor") return check_graded_functor(io::functor_from_json(j).functor);
  if (kind == "module") return check_module(io::module_from_json(j));
  return check_duoidal(io::duoidal_from_json(j));
}

void shuffle_arrays(json& j, std::mt19937& rng) {
  if (j.is_array()) {
    // grades in bigraded files are ordered pairs
    const bool pair = j.size() == 2 && j[0].is_string() && j[1].is_string();
    if (!pair) std::shuffle(j.begin(), j.end(), rng);
    for (auto& x : j) shuffle_arrays(x, rng);
  } else if (j.is_object()) {
    for (auto& [k, v] : j.items()) shuffle_arrays(v, rng);
  }
}

std::string message_of(const std::string& text) {
  try {
    io::normalize(text);
  } catch (const io::ParseError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Io, RoundTripIsByteIdenticalOnEveryExample) {
  for (const auto& ex : examples::all()) {
    const std::string once = io::dump(ex.make());
    EXPECT_EQ(io::normalize(once), once) << ex.name;
  }
}

TEST(Io, ReloadedExamplesPassTheirChecks) {
  for (const auto& ex : examples::all()) {
    auto j = io::parse(io::dump(ex.make()));
    EXPECT_EQ(j["kind"], ex.kind);
    auto rep = check_any(j);
    EXPECT_TRUE(rep.ok()) << ex.name << ": " << describe(rep);
    EXPECT_GT(rep.checked, 0u) << ex.name;
  }
}

TEST(Io, NormalFormIgnoresRecordOrder) {
  std::mt19937 rng(7);
  for (const auto& ex : examples::all()) {
    const json j = ex.make();
    const std::string canonical = io::dump(j);
    if (canonical.size() > 400000) continue;
    for (int trial = 0; trial < 3; ++trial) {
      json k = j;
      shuffle_arrays(k, rng);
      EXPECT_EQ(io::normalize(k.dump()), canonical) << ex.name;
    }
  }
}

TEST(Io, UnknownKindIsAParseError) {
  json j = examples::find("disc-Z2").make();
  j["kind"] = "sheaf";
  EXPECT_THROW(io::parse(j.dump()), io::ParseError);
  EXPECT_THROW(io::parse("{\"name\": 1"), io::ParseError);
  EXPECT_THROW(io::parse("[]"), io::ParseError);
}

TEST(Io, OutOfRangeIdNamesItsPath) {
  json j = examples::find("two-object-Z2").make();
  j["compose"][2]["gf"] = "no-such-element";
  auto msg = message_of(j.dump());
  EXPECT_NE(msg.find("$.compose[2].gf"), std::string::npos) << msg;
  EXPECT_NE(msg.find("no-such-element"), std::string::npos) << msg;

  json b = examples::find("self-bigraded-Z2").make();
  b["elements"][0]["grade"][1] = "7";
  msg = message_of(b.dump());
  EXPECT_NE(msg.find("$.elements[0].grade[1]"), std::string::npos) << msg;

  json m = examples::find("identity-module-disc-Z2").make();
  m["lambda"][0]["result"] = 99;
  msg = message_of(m.dump());
  EXPECT_NE(msg.find("$.lambda[0].result"), std::string::npos) << msg;

  json d = examples::find("duoidal-disc-Z2").make();
  d["base"]["associator"][1]["x"] = "5";
  msg = message_of(d.dump());
  EXPECT_NE(msg.find("$.base.associator[1].x"), std::string::npos) << msg;
}

TEST(Io, MissingAndDuplicateEntriesAreParseErrors) {
  json j = examples::find("two-object-Z2").make();
  json missing = j;
  missing["reindex"].erase(0);
  EXPECT_THROW(io::normalize(missing.dump()), io::ParseError);
  json dup = j;
  dup["compose"].push_back(j["compose"][0]);
  EXPECT_NE(message_of(dup.dump()).find("duplicate entry"), std::string::npos);
  json ids = j;
  ids["objects"].push_back(j["objects"][0]);
  EXPECT_THROW(io::normalize(ids.dump()), io::ParseError);
  // g o g is only composable for endomorphisms; pick a record where it is not
  for (std::size_t i = 0; i < j["compose"].size(); ++i) {
    const auto& rec = j["compose"][i];
    auto g = std::find_if(j["elements"].begin(), j["elements"].end(), [&](const json& e) { return e["id"] == rec["g"]; });
    if ((*g)["src"] != (*g)["tgt"]) {
      json mismatch = j;
      mismatch["compose"][i]["f"] = rec["g"];
      EXPECT_NE(message_of(mismatch.dump()).find("not composable"), std::string::npos);
      break;
    }
  }
}

TEST(Io, WellTypedCorruptionLoadsButFailsTheLaws) {
  // A structurally valid file whose composition table breaks an axiom.
  json j = examples::find("two-object-Z2").make();
  bool corrupted = false;
  for (auto& rec : j["compose"]) {
    for (const auto& e : j["elements"]) {
      auto gf = std::find_if(j["elements"].begin(), j["elements"].end(),
                             [&](const json& x) { return x["id"] == rec["gf"]; });
      if (e["id"] != rec["gf"] && (e["src"] != (*gf)["src"] || e["tgt"] != (*gf)["tgt"])) {
        rec["gf"] = e["id"];
        corrupted = true;
        break;
      }
    }
    if (corrupted) break;
  }
  ASSERT_TRUE(corrupted);
  auto c = io::graded_from_json(io::parse(j.dump()));
  auto rep = check_graded(c);
  EXPECT_FALSE(rep.ok());
  EXPECT_TRUE(rep.has("shape"));
}

TEST(Io, FunctorCategoryOutputReloadsAndPassesTheAxioms) {
  for (const auto& v : {make_ptr(discrete_cyclic(2)), make_ptr(bicharacter_z4())}) {
    auto target = self_bigraded(v);
    for (Index x = v->n() > 2 ? 1 : 0; x < std::min<Index>(static_cast<Index>(v->n()), 3); ++x)
      for (Side side : {Side::left_source, Side::right_source}) {
        auto source = side == Side::left_source ? make_ptr(two_object(v, x)) : make_ptr(opposite(two_object(v, x)));
        auto fc = build_functor_category({side, source, target, std::nullopt});
        const std::string text = io::dump(io::to_json(*fc.cat));
        auto back = io::graded_from_json(io::parse(text));
        EXPECT_EQ(back.num_objects(), fc.cat->num_objects());
        EXPECT_EQ(back.num_elems(), fc.cat->num_elems());
        if (back.num_elems() > 0) EXPECT_LAWS_HOLD(check_graded(back));
        EXPECT_EQ(io::dump(io::to_json(back)), text);
      }
  }
}

TEST(Io, ReloadPreservesTablesUpToIdOrder) {
  // Oracle: compare every table entry by ids, independently of the writer.
  auto c = two_object(make_ptr(bicharacter_z4()), 2);
  auto back = io::graded_from_json(io::parse(io::dump(io::to_json(c))));
  ASSERT_EQ(back.num_elems(), c.num_elems());
  for (Index e = 0; e < static_cast<Index>(c.num_elems()); ++e) {
    Index b = back.elem_index(c.elem_ids[e]);
    EXPECT_EQ(back.base->cat.objects[back.elems[b].grade], c.base->cat.objects[c.elems[e].grade]);
    EXPECT_EQ(back.objects[back.elems[b].src], c.objects[c.elems[e].src]);
    for (Index alpha : c.base->cat.into[c.elems[e].grade]) {
      Index a2 = back.base->cat.morphism_index(c.base->cat.morphisms[alpha]);
      EXPECT_EQ(back.elem_ids[back.reindex(a2, b)], c.elem_ids[c.reindex(alpha, e)]);
    }
    for (Index f : c.into_obj[c.elems[e].src])
      EXPECT_EQ(back.elem_ids[back.compose(b, back.elem_index(c.elem_ids[f]))], c.elem_ids[c.compose(e, f)]);
  }
}

TEST(Io, CurryContextRoundTrips) {
  auto f = io::functor_from_json(io::parse(io::dump(examples::find("pair-two-object-Z2").make())));
  ASSERT_TRUE(f.context.has_value());
  EXPECT_EQ(f.context->corner, "product");
  auto p = bigraded_product(f.context->a, f.context->b);
  auto G = io::resolve_functor(p.cat.cat, f.context->c.cat, f.objects, f.elements);
  EXPECT_LAWS_HOLD(check_graded_functor(G));
}
