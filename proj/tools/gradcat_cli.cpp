#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "gradcat/examples.hpp"

using namespace gradcat;

namespace {

enum Exit { kOk = 0, kLaw = 1, kStructural = 2, kBudget = 3 };

std::string tuple(const std::vector<Id>& w) { return "(" + join(w) + ")"; }

int report(const CheckReport& rep) {
  for (const auto& v : rep.violations) std::cout << "LAW " << v.law << " FAIL witness=" << tuple(v.witness) << "\n";
  std::cout << "SUMMARY ok=" << (rep.ok() ? "true" : "false") << " checked=" << rep.checked << "\n";
  return rep.ok() ? kOk : kLaw;
}

void emit(const std::string& out, const io::json& j) {
  if (out.empty() || out == "-")
    std::cout << io::dump(j);
  else
    io::write_file(out, j);
}

GradedPtr load_graded(const std::string& file) { return make_ptr(io::graded_from_json(io::read_file(file))); }

// Any file that carries a graded category: graded or bigraded.
GradedPtr load_any_graded(const std::string& file) {
  auto j = io::read_file(file);
  if (j["kind"] == "bigraded") return io::bigraded_from_json(j).cat;
  return make_ptr(io::graded_from_json(j));
}

// Reserializes so ids built from the context do not depend on file order.
io::CurryContext canonical(const io::CurryContext& c) {
  auto re = [](const GradedPtr& g) { return make_ptr(io::graded_from_json(io::parse(io::dump(io::to_json(*g))))); };
  return {c.corner, re(c.a), re(c.b), io::bigraded_from_json(io::parse(io::dump(io::to_json(c.c))))};
}

// The three presentations of a bifunctor A, B -> C.
struct Corners {
  io::CurryContext ctx;
  std::optional<BigradedProduct> p;
  std::optional<FunctorCategory> bc, ac;

  Corners(io::CurryContext c, const Budget& budget) : ctx(canonical(c)) {
    p = bigraded_product(ctx.a, ctx.b);
    bc = build_functor_category({Side::right_source, ctx.b, ctx.c, std::nullopt}, budget);
    ac = build_functor_category({Side::left_source, ctx.a, ctx.c, std::nullopt}, budget);
  }

  std::pair<GradedPtr, GradedPtr> ends(const std::string& corner) const {
    if (corner == "product") return {p->cat.cat, ctx.c.cat};
    if (corner == "left") return {ctx.a, bc->cat};
    if (corner == "right") return {ctx.b, ac->cat};
    throw StructuralError("unknown corner '" + corner + "'");
  }

  Sesquifunctor from(const std::string& corner, const GradedFunctor& F) const {
    if (corner == "product") return from_product(F, *p, ctx.c);
    if (corner == "left") return from_left(F, *bc);
    return from_right(F, *ac);
  }

  GradedFunctor to(const std::string& corner, const Sesquifunctor& S) const {
    if (corner == "product") return to_product(S, *p);
    if (corner == "left") return to_left(S, *bc);
    if (corner == "right") return to_right(S, *ac);
    throw StructuralError("unknown corner '" + corner + "'");
  }
};

int cmd_check(const std::string& file, const Budget& budget) {
  auto j = io::read_file(file);
  const std::string kind = j["kind"];
  if (kind == "fincat") return report(check_fincat(io::fincat_from_json(j)));
  if (kind == "monoidal") {
    auto v = io::monoidal_from_json(j);
    auto rep = check_monoidal(v);
    if (v.braided()) rep.merge(check_braiding(v));
    return report(rep);
  }
  if (kind == "graded") return report(check_graded(io::graded_from_json(j)));
  if (kind == "bigraded") return report(check_graded(*io::bigraded_from_json(j).cat));
  if (kind == "module") return report(check_module(io::module_from_json(j)));
  if (kind == "duoidal") return report(check_duoidal(io::duoidal_from_json(j)));
  auto f = io::functor_from_json(j);
  auto rep = check_graded_functor(f.functor);
  if (f.context) {
    Corners k(*f.context, budget);
    auto [dom, cod] = k.ends(f.context->corner);
    auto G = io::resolve_functor(dom, cod, f.objects, f.elements);
    rep.merge(check_graded_functor(G));
    if (rep.ok()) rep.merge(check_bifunctor(k.from(f.context->corner, G)));
  }
  return report(rep);
}

int cmd_functor_cat(const std::string& source, const std::string& target, const std::string& side,
                    const std::string& out, const Budget& budget) {
  auto a = load_graded(source);
  auto c = io::bigraded_from_json(io::read_file(target));
  if (side != "left" && side != "right") throw StructuralError("side must be 'left' or 'right'");
  auto fc = build_functor_category({side == "left" ? Side::left_source : Side::right_source, a, c, std::nullopt}, budget);
  emit(out, io::to_json(*fc.cat));
  std::cout << "FUNCTORS " << fc.functors.size() << " ELEMENTS " << fc.cat->num_elems() << "\n";
  return report(check_graded(*fc.cat));
}

int cmd_product(const std::string& left, const std::string& right, const std::string& out) {
  auto p = bigraded_product(load_graded(left), load_graded(right));
  emit(out, io::to_json(p.cat));
  return report(check_graded(*p.cat.cat));
}

int cmd_curry(const std::string& from, const std::string& to, const std::string& in, const std::string& out,
              const Budget& budget) {
  auto f = io::functor_from_json(io::read_file(in));
  if (!f.context) throw StructuralError(in + ": functor carries no curry context");
  if (f.context->corner != from)
    throw StructuralError(in + ": functor is at corner '" + f.context->corner + "', not '" + from + "'");
  Corners k(*f.context, budget);
  auto [dom, cod] = k.ends(from);
  auto G = io::resolve_functor(dom, cod, f.objects, f.elements);
  auto rep = check_graded_functor(G);
  if (!rep.ok()) return report(rep);
  auto S = k.from(from, G);
  rep.merge(check_bifunctor(S));
  if (!rep.ok()) return report(rep);
  auto H = k.to(to, S);
  rep.merge(check_graded_functor(H));
  rep.expect(k.from(to, H).same_data(S), "curry-roundtrip", {from, to});
  auto ctx = k.ctx;
  ctx.corner = to;
  emit(out, io::functor_to_json(H, ctx));
  return report(rep);
}

int cmd_yoneda(const std::string& base_file, const std::string& category, const Budget& budget) {
  auto v = make_ptr(io::monoidal_from_json(io::read_file(base_file)));
  GradedPtr b = category.empty() ? make_ptr(self_graded_right(v)) : load_graded(category);
  if (!b->base->same_tables(reverse(*v)))
    throw StructuralError("'" + b->name + "' is not right graded over '" + v->name + "'");
  auto Y = yoneda_embedding(b, {}, budget);
  CheckReport rep = check_fully_faithful(Y.y);
  const FinCat& vc = v->cat;
  for (Index bo = 0; bo < static_cast<Index>(b->num_objects()); ++bo)
    for (Index x = 0; x < static_cast<Index>(v->n()); ++x) {
      std::size_t transformations = 0, elements = 0, matched = 0;
      for (Index fn = 0; fn < static_cast<Index>(Y.fc.functors.size()); ++fn) {
        auto w = yoneda_check(Y, fn, bo, x);
        transformations += w.transformations.size();
        elements += static_cast<std::size_t>(w.fiber);
        matched += w.bijective ? 1 : 0;
        rep.expect(w.bijective, "yoneda-bijective", {Y.fc.cat->objects[fn], b->objects[bo], vc.objects[x]});
      }
      std::cout << "YONEDA B=" << b->objects[bo] << " X'=" << vc.objects[x] << " functors=" << Y.fc.functors.size()
                << " matched=" << matched << " transformations=" << transformations << " elements=" << elements
                << "\n";
    }
  return report(rep);
}

std::vector<Index> split_ids(const GradedCat& c, const std::string& quad) {
  std::vector<Index> out;
  std::stringstream ss(quad);
  for (std::string id; std::getline(ss, id, ',');) out.push_back(c.elem_index(id));
  if (out.size() != 4) throw StructuralError("--quad takes four element ids f,g,phi,phi2");
  return out;
}

int cmd_duoidal_square(const std::string& category, const std::string& quad, const std::string& duoidal) {
  auto c = load_graded(category);
  DuoidalData d = duoidal.empty() ? braided_duoidal(c->base) : io::duoidal_from_json(io::read_file(duoidal));
  if (!d.base->same_tables(*c->base)) throw StructuralError("'" + c->name + "' is not graded over the duoidal base");
  auto q = split_ids(*c, quad);
  Square s{q[0], q[1], q[2], q[3]};
  const auto st = compute_sigma_tau(d);
  const bool direct = is_vgraded_square(*c, st, s);
  const auto cs = c_star(d, c);
  const bool via = is_bigraded_square(cs.bigraded, {cs.f_left[s.f], cs.f_left[s.g], cs.f_right[s.phi], cs.f_right[s.phi2]})
                       .has_value();
  std::cout << "SQUARE " << tuple({c->elem_ids[s.f], c->elem_ids[s.g], c->elem_ids[s.phi], c->elem_ids[s.phi2]})
            << " vgraded=" << (direct ? "true" : "false") << " cstar=" << (via ? "true" : "false") << "\n";
  CheckReport rep;
  rep.expect(direct == via, "square-correspondence", {c->elem_ids[s.f], c->elem_ids[s.g], c->elem_ids[s.phi], c->elem_ids[s.phi2]});
  return report(rep);
}

int cmd_flip_test(const std::string& file, std::uint64_t seed) {
  auto d = io::duoidal_from_json(io::read_file(file));
  auto verdict = flip_test(d, seed);
  const FinMonCat& v = *d.base;
  const bool symmetric = v.braided() && is_symmetric(v);
  std::cout << "FLIP tested=" << verdict.squares_tested << " symmetric=" << (symmetric ? "true" : "false") << "\n";
  std::vector<GradedPtr> cats{make_ptr(self_graded(d.base))};
  for (Index x = 0; x < d.n(); ++x) cats.push_back(make_ptr(two_object(d.base, x)));
  try {
    cats.push_back(make_ptr(enriched(d.base, translation_vcategory(v))));
  } catch (const StructuralError&) {
  }
  if (verdict.counterexample) {
    const auto& ce = *verdict.counterexample;
    for (const auto& c : cats)
      if (c->name == ce.category) {
        const auto& ids = c->elem_ids;
        std::cout << "COUNTEREXAMPLE category=" << ce.category << " square="
                  << tuple({ids[ce.square.f], ids[ce.square.g], ids[ce.square.phi], ids[ce.square.phi2]}) << "\n";
        break;
      }
  }
  for (auto [x, x2] : verdict.proof_failures)
    std::cout << "PROOF-SHAPE X=" << v.cat.objects[x] << " X'=" << v.cat.objects[x2] << "\n";
  CheckReport rep;
  if (v.braided())
    rep.expect(symmetric ? verdict.symmetric_consistent() : verdict.shape_matches_proof(), "flip-characterization",
               {d.name});
  else
    rep.expect(true, "flip-characterization", {d.name});
  return report(rep);
}

int cmd_envelope(const std::string& category, const std::string& out, const Budget& budget) {
  auto env = build_envelope(load_graded(category), budget);
  emit(out, io::to_json(*env.cat));
  return report(check_envelope(env));
}

int cmd_examples(const std::string& name, const std::string& out) {
  if (name.empty()) {
    for (const auto& e : examples::all()) std::cout << e.name << "\t" << e.kind << "\t" << e.summary << "\n";
    return kOk;
  }
  emit(out, examples::find(name).make());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite graded categories: constructions and law checks"};
  app.require_subcommand(1);
  app.fallthrough();
  Budget budget;
  app.add_option("--max-objects", budget.max_objects, "object budget for enumerations")->capture_default_str();
  app.add_option("--max-hom", budget.max_hom, "hom-set budget for enumerations")->capture_default_str();

  std::string file, source, target, side, out, left, right, from, to, in, base, category, quad, duoidal, name;
  std::uint64_t seed = 1;

  auto* check = app.add_subcommand("check", "check the laws of any file");
  check->add_option("file", file)->required();

  auto* fcat = app.add_subcommand("functor-cat", "build a graded functor category [A, C]");
  fcat->add_option("--source", source, "graded category A")->required();
  fcat->add_option("--target", target, "bigraded category C")->required();
  fcat->add_option("--side", side, "left or right")->required();
  fcat->add_option("--out", out);

  auto* prod = app.add_subcommand("product", "bigraded product of a left and a right graded category");
  prod->add_option("--left", left)->required();
  prod->add_option("--right", right)->required();
  prod->add_option("--out", out);

  auto* curry = app.add_subcommand("curry", "move a bifunctor between product, left and right presentations");
  curry->add_option("--from", from)->required()->check(CLI::IsMember({"product", "left", "right"}));
  curry->add_option("--to", to)->required()->check(CLI::IsMember({"product", "left", "right"}));
  curry->add_option("--in", in)->required();
  curry->add_option("--out", out);

  auto* yon = app.add_subcommand("yoneda", "census of the graded Yoneda bijections");
  yon->add_option("--base", base, "monoidal base V")->required();
  yon->add_option("--category", category, "right graded category over V; default V itself");

  auto* dsq = app.add_subcommand("duoidal-square", "decide whether a quadruple is a V-graded square");
  dsq->add_option("--category", category)->required();
  dsq->add_option("--quad", quad, "f,g,phi,phi2")->required();
  dsq->add_option("--duoidal", duoidal, "duoidal structure; default the braided one");

  auto* flip = app.add_subcommand("flip-test", "search for squares that cannot be flipped");
  flip->add_option("--duoidal", duoidal)->required();
  flip->add_option("--seed", seed)->capture_default_str();

  auto* env = app.add_subcommand("envelope", "enveloping actegory of a graded category");
  env->add_option("--category", category)->required();
  env->add_option("--out", out);

  auto* ex = app.add_subcommand("examples", "list or emit built-in examples");
  ex->add_option("name", name);
  ex->add_option("--out", out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? kOk : kStructural;
  }

  try {
    if (*check) return cmd_check(file, budget);
    if (*fcat) return cmd_functor_cat(source, target, side, out, budget);
    if (*prod) return cmd_product(left, right, out);
    if (*curry) return cmd_curry(from, to, in, out, budget);
    if (*yon) return cmd_yoneda(base, category, budget);
    if (*dsq) return cmd_duoidal_square(category, quad, duoidal);
    if (*flip) return cmd_flip_test(duoidal, seed);
    if (*env) return cmd_envelope(category, out, budget);
    if (*ex) return cmd_examples(name, out);
  } catch (const BudgetExceeded& e) {
    std::cerr << "ERROR budget: " << e.what() << "\n";
    return kBudget;
  } catch (const StructuralError& e) {
    std::cerr << "ERROR structural: " << e.what() << "\n";
    return kStructural;
  } catch (const OperationError& e) {
    std::cerr << "ERROR structural: " << e.what() << "\n";
    return kStructural;
  }
  return kStructural;
}
