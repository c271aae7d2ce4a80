#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "encoder.hpp"
#include "sampling.hpp"
#include "symmetry.hpp"

using namespace qs;

TEST_CASE("preservation table per relation class and kind") {
  TSet spheres = sym_of_relation(RelClass::Topology, {Kind::Sphere3, Kind::Sphere3});
  CHECK(spheres == TSet{TClass::Translate, TClass::Rotate, TClass::UniformScale, TClass::Reflect});

  TSet orient = sym_of_relation(RelClass::RelativeOrientation, {Kind::Point2, Kind::Segment2});
  CHECK_FALSE(orient.count(TClass::Reflect));
  CHECK(orient.count(TClass::NonUniformScale));

  TSet par = sym_of_relation(RelClass::Parallelism, {Kind::Segment2, Kind::Segment2});
  CHECK(par == full_tset());

  CHECK_FALSE(sym_of_relation(RelClass::Perpendicularity, {Kind::Segment2, Kind::Segment2})
                  .count(TClass::NonUniformScale));
  CHECK_FALSE(sym_of_relation(RelClass::Distance, {Kind::Segment2, Kind::Segment2})
                  .count(TClass::NonUniformScale));

  // axis-aligned boxes keep non-uniform scaling but lose rotation
  TSet boxes = sym_of_relation(RelClass::Topology, {Kind::Box3, Kind::Box3});
  CHECK(boxes.count(TClass::NonUniformScale));
  CHECK_FALSE(boxes.count(TClass::Rotate));
}

TEST_CASE("graph symmetry is the intersection over atoms") {
  ConstraintGraph g;
  CHECK(sym_of_graph(g).available == full_tset());

  g.objects.push_back({"s1", Kind::Sphere3});
  g.objects.push_back({"s2", Kind::Sphere3});
  g.formulas.push_back(EdgeFormula::mk_atom({"touches", {"s1", "s2"}}));
  TransformBudget b = sym_of_graph(g);
  CHECK(b.available ==
        TSet{TClass::Translate, TClass::Rotate, TClass::UniformScale, TClass::Reflect});

  ConstraintGraph g2;
  g2.objects.push_back({"c1", Kind::Circle2});
  g2.objects.push_back({"c2", Kind::Circle2});
  g2.objects.push_back({"p", Kind::Point2});
  g2.objects.push_back({"l", Kind::Segment2});
  g2.formulas.push_back(EdgeFormula::mk_atom({"touches", {"c1", "c2"}}));
  g2.formulas.push_back(EdgeFormula::mk_atom({"left_of", {"p", "l"}}));
  TransformBudget b2 = sym_of_graph(g2);
  CHECK(b2.available == TSet{TClass::Translate, TClass::Rotate, TClass::UniformScale});

  // intersection property: graph budget within each atom's own set
  for (const auto& f : g2.formulas) {
    auto sig = resolve_atom(g2, f.atom);
    for (TClass c : b2.available) CHECK(sym_of_relation(sig->cls, sig->args).count(c));
  }
}

TEST_CASE("budget spends each class once") {
  TransformBudget b{full_tset(), {}};
  CHECK(b.spend(TClass::Rotate));
  CHECK_FALSE(b.spend(TClass::Rotate));
  CHECK(b.spent.count(TClass::Rotate));
  CHECK_FALSE(b.available.count(TClass::Rotate));
}

TEST_CASE("transform constructors produce the expected matrices") {
  AffineTransform r = make_rotate(Rat(0), Rat(1));  // quarter turn
  CHECK(r.q11 == 0);
  CHECK(r.q12 == -1);
  CHECK(r.q21 == 1);
  CHECK(r.q22 == 0);

  AffineTransform id = make_uscale(Rat(1));
  CHECK(id.q11 == 1);
  CHECK(id.q22 == 1);

  AffineTransform m = make_reflect(0);
  CHECK(m.q11 == -1);
  CHECK(m.q22 == 1);

  CHECK_THROWS_AS(make_uscale(Rat(0)), TransformError);
  CHECK_THROWS_AS(make_uscale(Rat(-2)), TransformError);
  CHECK_THROWS_AS(make_rotate(Rat(1), Rat(1)), TransformError);
  CHECK_THROWS_AS(make_nuscale(Rat(2), Rat(0)), TransformError);
}

namespace {

ConstraintGraph sphere_chain() {
  // the four-sphere mutual-contact configuration
  ConstraintGraph g;
  for (const char* id : {"s1", "s2", "s3", "s4"}) g.objects.push_back({id, Kind::Sphere3});
  for (int i = 1; i <= 4; ++i)
    for (int j = i + 1; j <= 4; ++j)
      g.formulas.push_back(
          EdgeFormula::mk_atom({"touches", {"s" + std::to_string(i), "s" + std::to_string(j)}}));
  return g;
}

}  // namespace

TEST_CASE("translated contact configuration keeps all touch relations") {
  ConstraintGraph g = sphere_chain();
  // drop to the three mutually-touching spheres we can place rationally
  g.objects.pop_back();
  g.formulas.clear();
  g.formulas.push_back(EdgeFormula::mk_atom({"touches", {"s1", "s2"}}));
  g.formulas.push_back(EdgeFormula::mk_atom({"touches", {"s1", "s3"}}));
  g.formulas.push_back(EdgeFormula::mk_atom({"touches", {"s2", "s3"}}));

  // radii 1, 1, 1/4: centres (0,0), (2,0), (1, 3/4); mutual distances 2,
  // 5/4, 5/4 match the radius sums exactly (3-4-5 halves)
  Assignment cfg;
  auto sph = [&](const std::string& id, Rat x, Rat y, Rat r) {
    cfg["x_" + id] = x;
    cfg["y_" + id] = y;
    cfg["z_" + id] = Rat(0);
    cfg["r_" + id] = r;
  };
  sph("s1", 0, 0, 1);
  sph("s2", 2, 0, 1);
  sph("s3", 1, Rat(3, 4), Rat(1, 4));

  FreshGen fresh;
  Formula enc = encode_graph(g, fresh);
  REQUIRE(*eval_ground(enc, cfg) == true);

  Assignment moved = apply_transform(make_translate(Rat(5), Rat(0), Rat(0)), cfg, g.objects);
  CHECK(*eval_ground(enc, moved) == true);
  Assignment turned = apply_transform(make_rotate(Rat(3, 5), Rat(4, 5)), cfg, g.objects);
  CHECK(*eval_ground(enc, turned) == true);
  Assignment grown = apply_transform(make_uscale(Rat(7, 2)), cfg, g.objects);
  CHECK(*eval_ground(enc, grown) == true);
}

TEST_CASE("incompatible class and kind combinations raise errors") {
  std::vector<SpatialObject> circle{{"c", Kind::Circle2}};
  Assignment cfg{{"x_c", Rat(0)}, {"y_c", Rat(0)}, {"r_c", Rat(1)}};
  CHECK_THROWS_AS(apply_transform(make_nuscale(Rat(2), Rat(3)), cfg, circle), TransformError);

  std::vector<SpatialObject> box{{"b", Kind::Box3}};
  Assignment bcfg{{"x_b", Rat(0)}, {"y_b", Rat(0)}, {"z_b", Rat(0)},
                  {"w_b", Rat(1)}, {"d_b", Rat(1)}, {"h_b", Rat(1)}};
  CHECK_THROWS_AS(apply_transform(make_rotate(Rat(0), Rat(1)), bcfg, box), TransformError);
  CHECK_NOTHROW(apply_transform(make_nuscale(Rat(2), Rat(3), Rat(4)), bcfg, box));
}

TEST_CASE("rectangle images stay well-formed and keep membership") {
  ConstraintGraph g;
  g.objects.push_back({"p", Kind::Point2});
  g.objects.push_back({"r", Kind::Rectangle2});
  g.formulas.push_back(EdgeFormula::mk_atom({"inside", {"p", "r"}}));
  FreshGen fresh;
  Formula enc = encode_graph(g, fresh);
  Formula wf = wellformedness(g.objects[1]);

  sampling::Rng rng(7);
  for (int i = 0; i < 50; ++i) {
    Assignment cfg;
    sampling::sample_object(rng, cfg, "p", Kind::Point2);
    sampling::sample_object(rng, cfg, "r", Kind::Rectangle2);
    for (const AffineTransform& t :
         {make_reflect(0), make_reflect(1), make_rotate(Rat(5, 13), Rat(12, 13)),
          make_uscale(Rat(3, 2)), make_translate(Rat(1), Rat(-2))}) {
      Assignment img = apply_transform(t, cfg, g.objects);
      CHECK(*eval_ground(wf, img) == true);
      CHECK(*eval_ground(enc, img) == *eval_ground(enc, cfg));
    }
  }
}

TEST_CASE("same-class composition matches sequential application") {
  sampling::Rng rng(11);
  std::vector<SpatialObject> objs{{"p", Kind::Point2}, {"s", Kind::Segment2},
                                  {"c", Kind::Circle2}, {"b", Kind::Box3}};
  for (int i = 0; i < 30; ++i) {
    Assignment cfg;
    for (const auto& o : objs) sampling::sample_object(rng, cfg, o.id, o.kind);
    sampling::Vec u1 = rng.unit(), u2 = rng.unit();
    std::vector<std::pair<AffineTransform, AffineTransform>> pairs = {
        {make_translate(rng.rat(), rng.rat(), rng.rat()),
         make_translate(rng.rat(), rng.rat(), rng.rat())},
        {make_uscale(rng.pos_rat()), make_uscale(rng.pos_rat())},
    };
    for (auto& [t1, t2] : pairs) {
      auto c = compose(t2, t1);
      REQUIRE(c.has_value());
      CHECK(apply_transform(*c, cfg, objs) ==
            apply_transform(t2, apply_transform(t1, cfg, objs), objs));
    }
    // rotations act on the 2D objects only (boxes reject rotation)
    std::vector<SpatialObject> planar{objs.begin(), objs.end() - 1};
    AffineTransform r1 = make_rotate(u1.x, u1.y), r2 = make_rotate(u2.x, u2.y);
    auto rc = compose(r2, r1);
    REQUIRE(rc.has_value());
    CHECK(rc->cls == TClass::Rotate);
    CHECK(apply_transform(*rc, cfg, planar) ==
          apply_transform(r2, apply_transform(r1, cfg, planar), planar));
  }
  CHECK_FALSE(compose(make_reflect(0), make_reflect(0)).has_value());
  CHECK_FALSE(compose(make_uscale(Rat(2)), make_translate(Rat(1), Rat(1))).has_value());
}

TEST_CASE("preservation checker validates the whole table") {
  const int trials = 150;
  unsigned seed = 99;
  for (const auto& rs : sampling::relation_samplers()) {
    if (rs.quantified) continue;
    ConstraintGraph g;
    auto ids = sampling::arg_ids(rs.kinds.size());
    for (std::size_t i = 0; i < ids.size(); ++i) g.objects.push_back({ids[i], rs.kinds[i]});
    auto sig = resolve_atom(g, {rs.name, ids});
    REQUIRE(sig.has_value());
    for (TClass c : sym_of_relation(sig->cls, sig->args)) {
      PreservationResult r = check_preservation(rs.name, rs.kinds, c, trials, seed++);
      INFO("relation ", rs.name, " class ", tclass_name(c), " note ", r.note);
      CHECK(r.supported);
      CHECK(r.applicable);
      CHECK(r.preserved);
    }
  }
}

TEST_CASE("non-preserving pairs yield counterexamples") {
  PreservationResult lo =
      check_preservation("left_of", {Kind::Point2, Kind::Segment2}, TClass::Reflect, 1000, 1);
  CHECK(lo.supported);
  CHECK_FALSE(lo.preserved);

  PreservationResult perp = check_preservation(
      "perpendicular", {Kind::Segment2, Kind::Segment2}, TClass::NonUniformScale, 1000, 2);
  CHECK_FALSE(perp.preserved);

  PreservationResult len = check_preservation(
      "same_length", {Kind::Segment2, Kind::Segment2}, TClass::NonUniformScale, 1000, 3);
  CHECK_FALSE(len.preserved);

  // identity-scale sanity: nothing can flip
  PreservationResult id = check_preservation("left_of", {Kind::Point2, Kind::Segment2},
                                             TClass::Translate, 100, 4);
  CHECK(id.preserved);
}
