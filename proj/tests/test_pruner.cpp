#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pruner.hpp"

using namespace qs;

namespace {

EdgeFormula atom(const std::string& name, std::vector<std::string> args) {
  return EdgeFormula::mk_atom(RelationAtom{name, std::move(args)});
}

ConstraintGraph touching_circles() {
  ConstraintGraph g;
  g.objects.push_back({"c1", Kind::Circle2});
  g.objects.push_back({"c2", Kind::Circle2});
  g.objects.push_back({"p", Kind::Point2});
  g.formulas.push_back(atom("touches", {"c1", "c2"}));
  g.formulas.push_back(atom("coincident", {"p", "c1"}));
  return g;
}

// equality pattern of a subcase between two constant slots
bool slots_equal(const Subcase& s, int i, int j) { return s.constants[i] == s.constants[j]; }

}  // namespace

TEST_CASE("catalog contains the grounding table and the extensions") {
  for (const char* id :
       {"a", "b", "c", "d", "e", "f", "g", "h", "i", "seg2", "j3d", "j3ds", "frame2", "frame2s"})
    CHECK(find_case(id) != nullptr);

  auto n_restr = [](const char* id) { return find_case(id)->restrictions.size(); };
  auto n_sub = [](const char* id) { return find_case(id)->subcases.size(); };
  CHECK(n_restr("a") == 1);
  CHECK(n_restr("b") == 2);
  CHECK(n_restr("c") == 2);
  CHECK(n_restr("d") == 2);
  CHECK(n_restr("e") == 3);
  CHECK(n_restr("f") == 4);
  CHECK(n_restr("g") == 3);
  CHECK(n_restr("h") == 4);
  CHECK(n_restr("i") == 5);
  CHECK(n_restr("j3d") == 6);

  CHECK(n_sub("a") == 1);
  CHECK(n_sub("b") == 1);
  CHECK(n_sub("c") == 2);
  CHECK(n_sub("d") == 1);
  CHECK(n_sub("e") == 2);
  CHECK(n_sub("f") == 2);
  CHECK(n_sub("g") == 2);
  CHECK(n_sub("h") == 4);
  CHECK(n_sub("i") == 3);
  CHECK(n_sub("j3d") == 1);
  CHECK(n_sub("seg2") == 1);
  CHECK(n_sub("frame2") == 1);

  // translation-only rows
  for (const char* id : {"a", "b", "d"}) CHECK(find_case(id)->cost == TSet{TClass::Translate});
  // rows trading one scale direction: realizable uniformly at 0/1 constants
  for (const char* id : {"c", "e", "f", "g"})
    CHECK(find_case(id)->cost == TSet{TClass::Translate, TClass::Rotate, TClass::UniformScale});
  // rows needing arbitrary scaling and the y-reflection
  for (const char* id : {"h", "i"}) CHECK(find_case(id)->cost == full_tset());

  CHECK(find_case("j3d")->dimension == 3);
  CHECK(find_case("j3ds")->grounds_radius);
  CHECK(find_case("frame2s")->grounds_width);
  CHECK(find_case("seg2")->cost == TSet{TClass::Translate, TClass::Rotate});
}

TEST_CASE("subcases split exactly on the achievable constant coincidences") {
  // two-subcase rows: one pair of restricted slots, distinct vs equal
  struct PairRow {
    const char* id;
    int i, j;
  };
  for (auto [id, i, j] : {PairRow{"c", 0, 1}, PairRow{"e", 0, 2}, PairRow{"f", 0, 2},
                          PairRow{"g", 0, 1}}) {
    const PruningCase* c = find_case(id);
    CHECK(!slots_equal(c->subcases[0], i, j));
    CHECK(slots_equal(c->subcases[1], i, j));
  }

  // h: both coincidences are independent, all four patterns occur once
  {
    const PruningCase* h = find_case("h");
    std::set<std::pair<bool, bool>> seen;
    for (const auto& s : h->subcases) seen.insert({slots_equal(s, 0, 2), slots_equal(s, 1, 3)});
    CHECK(seen.size() == 4);
  }

  // i: full rotation makes (c1=c3, c2!=c4) unreachable, so only three patterns
  {
    const PruningCase* i = find_case("i");
    std::set<std::pair<bool, bool>> seen;
    for (const auto& s : i->subcases) seen.insert({slots_equal(s, 0, 2), slots_equal(s, 1, 4)});
    CHECK(seen ==
          std::set<std::pair<bool, bool>>{{false, false}, {false, true}, {true, true}});
  }
}

TEST_CASE("applicable cases honour the remaining budget and the dimension") {
  TransformBudget full{full_tset(), {}};
  auto ids = [](const std::vector<const PruningCase*>& cs) {
    std::set<std::string> out;
    for (auto* c : cs) out.insert(c->id);
    return out;
  };

  auto all2d = ids(applicable_cases(full, 2));
  CHECK(all2d.count("a"));
  CHECK(all2d.count("i"));
  CHECK(all2d.count("frame2s"));
  CHECK(!all2d.count("j3d"));

  auto all3d = ids(applicable_cases(full, 3));
  CHECK(all3d == std::set<std::string>{"j3d", "j3ds"});

  TransformBudget no_reflect{full_tset(), {}};
  no_reflect.available.erase(TClass::Reflect);
  auto nr = ids(applicable_cases(no_reflect, 2));
  CHECK(!nr.count("h"));
  CHECK(!nr.count("i"));
  CHECK(nr.count("f"));

  TransformBudget no_nus{full_tset(), {}};
  no_nus.available.erase(TClass::NonUniformScale);
  auto nn = ids(applicable_cases(no_nus, 2));
  CHECK(!nn.count("h"));
  CHECK(!nn.count("i"));
  CHECK(nn.count("f"));
  CHECK(nn.count("g"));

  TransformBudget translate_only{{TClass::Translate}, {}};
  CHECK(ids(applicable_cases(translate_only, 2)) == std::set<std::string>{"a", "b", "d"});

  TransformBudget spent = full;
  CHECK(spent.spend(TClass::Rotate));
  CHECK(!spent.spend(TClass::Rotate));  // each class trades at most once
  auto after = ids(applicable_cases(spent, 2));
  CHECK(after == std::set<std::string>{"a", "b", "d"});
}

TEST_CASE("every catalog case verifies numerically") {
  for (const auto& c : catalog()) {
    CaseVerification v = verify_case_numeric(c, 500, 20260823);
    INFO("case ", c.id, ": ", v.counterexample);
    CHECK(v.verified);
  }
}

TEST_CASE("a corrupted case is rejected by the numeric verifier") {
  PruningCase bad = *find_case("f");
  bad.id = "f-without-rotation";
  bad.cost.erase(TClass::Rotate);
  CaseVerification v = verify_case_numeric(bad, 500, 7);
  CHECK(!v.verified);
  CHECK(v.counterexample.find("f-without-rotation") != std::string::npos);
}

TEST_CASE("target selection prefers circles sharing a boundary point") {
  ConstraintGraph g = touching_circles();
  auto targets = select_targets(g, *find_case("f"));
  REQUIRE(targets.has_value());
  CHECK((*targets)[0].object == "c1");
  CHECK((*targets)[1].object == "c2");

  // same priority through an explicit shared point
  ConstraintGraph g2;
  g2.objects.push_back({"p", Kind::Point2});
  g2.objects.push_back({"a", Kind::Circle2});
  g2.objects.push_back({"b", Kind::Circle2});
  g2.formulas.push_back(atom("coincident", {"p", "a"}));
  g2.formulas.push_back(atom("coincident", {"p", "b"}));
  auto t2 = select_targets(g2, *find_case("f"));
  REQUIRE(t2.has_value());
  CHECK((*t2)[0].object == "a");
  CHECK((*t2)[1].object == "b");
}

TEST_CASE("target selection breaks score ties by declaration order") {
  ConstraintGraph g;
  g.objects.push_back({"p", Kind::Point2});
  g.objects.push_back({"q", Kind::Point2});
  g.objects.push_back({"r", Kind::Point2});
  g.objects.push_back({"s", Kind::Point2});
  g.formulas.push_back(atom("collinear_pts", {"q", "r", "s"}));
  auto t = select_targets(g, *find_case("b"));
  REQUIRE(t.has_value());
  CHECK((*t)[0].object == "q");  // highest involvement, earliest declared
}

TEST_CASE("case d avoids point pairs constrained to coincide") {
  ConstraintGraph g;
  g.objects.push_back({"p", Kind::Point2});
  g.objects.push_back({"q", Kind::Point2});
  g.objects.push_back({"r", Kind::Point2});
  g.formulas.push_back(atom("coincident_pt", {"p", "q"}));
  auto t = select_targets(g, *find_case("d"));
  REQUIRE(t.has_value());
  CHECK((*t)[0].object == "p");
  CHECK((*t)[1].object == "r");
}

TEST_CASE("selection returns nothing once the points are grounded") {
  ConstraintGraph g;
  g.objects.push_back({"p", Kind::Point2});
  const SpatialObject& p = g.objects[0];
  g.groundings[p.var("x")] = Rat(2);
  CHECK(!select_targets(g, *find_case("a")).has_value());
}

TEST_CASE("subcase expansion grounds the restricted coordinates") {
  ConstraintGraph g = touching_circles();
  auto before = free_vars(g).size();
  auto targets = *select_targets(g, *find_case("f"));
  PruningPlan plan = expand_subcases(g, *find_case("f"), targets);
  REQUIRE(plan.subgraphs.size() == 2);

  const SpatialObject* c1 = g.find_object("c1");
  const SpatialObject* c2 = g.find_object("c2");
  CHECK(plan.subgraphs[0].groundings.at(c1->var("x")) == 0);
  CHECK(plan.subgraphs[0].groundings.at(c1->var("y")) == 0);
  CHECK(plan.subgraphs[0].groundings.at(c2->var("x")) == 1);
  CHECK(plan.subgraphs[0].groundings.at(c2->var("y")) == 0);
  CHECK(plan.subgraphs[1].groundings.at(c2->var("x")) == 0);

  for (const auto& sg : plan.subgraphs) {
    CHECK(free_vars(sg).size() == before - 4);
    CHECK(validate_graph(sg).empty());
  }
  CHECK(g.groundings.empty());  // the source graph is untouched
}

TEST_CASE("expansion refuses targets with grounded coordinates") {
  ConstraintGraph g = touching_circles();
  auto targets = *select_targets(g, *find_case("f"));
  g.groundings[targets[0].x] = Rat(3);
  CHECK_THROWS_AS(expand_subcases(g, *find_case("f"), targets), PruneError);
}

TEST_CASE("the 3D case grounds six coordinates and one radius") {
  ConstraintGraph g;
  for (const char* id : {"s1", "s2", "s3", "s4", "s5"}) g.objects.push_back({id, Kind::Sphere3});
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j)
      g.formulas.push_back(atom("touches", {g.objects[i].id, g.objects[j].id}));
  CHECK(free_vars(g).size() == 20);

  const PruningCase* j = find_case("j3ds");
  auto targets = *select_targets(g, *j);
  PruningPlan plan = expand_subcases(g, *j, targets);
  REQUIRE(plan.subgraphs.size() == 1);
  CHECK(free_vars(plan.subgraphs[0]).size() == 13);  // 20 - 6 coordinates - 1 radius
  CHECK(plan.subgraphs[0].groundings.at(g.find_object(targets[0].object)->var("r")) == 1);
}

TEST_CASE("the frame case grounds a rectangle's corner, direction, and width") {
  ConstraintGraph g;
  g.objects.push_back({"A", Kind::Rectangle2});
  g.objects.push_back({"B", Kind::Rectangle2});
  g.formulas.push_back(atom("part_of", {"A", "B"}));
  g.formulas.push_back(atom("concentric", {"A", "B"}));

  const PruningCase* fr = find_case("frame2s");
  auto targets = *select_targets(g, *fr);
  PruningPlan plan = expand_subcases(g, *fr, targets);
  REQUIRE(plan.subgraphs.size() == 1);
  const SpatialObject* tgt = g.find_object(targets[0].object);
  const auto& gr = plan.subgraphs[0].groundings;
  CHECK(gr.at(tgt->var("x")) == 0);
  CHECK(gr.at(tgt->var("y")) == 0);
  CHECK(gr.at(tgt->var("vx")) == 1);
  CHECK(gr.at(tgt->var("vy")) == 0);
  CHECK(gr.at(tgt->var("w")) == 1);
  CHECK(free_vars(plan.subgraphs[0]).size() == 12 - 5);
}
