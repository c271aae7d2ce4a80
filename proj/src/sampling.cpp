#include "sampling.hpp"

namespace qs::sampling {

void sample_object(Rng& rng, Assignment& a, const std::string& id, Kind k) {
  switch (k) {
    case Kind::Point2:
      set_pt(a, id, {rng.rat(), rng.rat()});
      break;
    case Kind::Segment2: {
      Vec p{rng.rat(), rng.rat()};
      Vec q{rng.rat(), rng.rat()};
      if (p.x == q.x && p.y == q.y) q.x += 1;
      a["xa_" + id] = p.x;
      a["ya_" + id] = p.y;
      a["xb_" + id] = q.x;
      a["yb_" + id] = q.y;
      break;
    }
    case Kind::Rectangle2: {
      set_pt(a, id, {rng.rat(), rng.rat()});
      Vec u = rng.unit();
      a["vx_" + id] = u.x;
      a["vy_" + id] = u.y;
      a["w_" + id] = rng.pos_rat();
      a["h_" + id] = rng.pos_rat();
      break;
    }
    case Kind::Circle2:
      set_pt(a, id, {rng.rat(), rng.rat()});
      a["r_" + id] = rng.pos_rat();
      break;
    case Kind::Point3:
      set_pt(a, id, {rng.rat(), rng.rat()});
      a["z_" + id] = rng.rat();
      break;
    case Kind::Sphere3:
      set_pt(a, id, {rng.rat(), rng.rat()});
      a["z_" + id] = rng.rat();
      a["r_" + id] = rng.pos_rat();
      break;
    case Kind::Box3:
      set_pt(a, id, {rng.rat(), rng.rat()});
      a["z_" + id] = rng.rat();
      a["w_" + id] = rng.pos_rat();
      a["d_" + id] = rng.pos_rat();
      a["h_" + id] = rng.pos_rat();
      break;
  }
}

std::vector<std::string> arg_ids(std::size_t n) {
  static const std::vector<std::string> pool = {"a", "b", "c", "d"};
  return {pool.begin(), pool.begin() + n};
}

namespace {

void copy_slots(Assignment& a, const std::string& from, const std::string& to,
                std::initializer_list<const char*> slots) {
  for (const char* s : slots) a[std::string(s) + "_" + to] = a[std::string(s) + "_" + from];
}

Vec rect_center(const Assignment& a, const std::string& id) {
  auto c = rect_corners(a, id);
  return {(c[0].x + c[1].x + c[2].x + c[3].x) / 4, (c[0].y + c[1].y + c[2].y + c[3].y) / 4};
}

std::vector<RelationSampler> build_samplers() {
  std::vector<RelationSampler> cases;
  auto add = [&](std::string name, std::vector<Kind> kinds, TrueSampler s = nullptr,
                 bool quant = false) {
    cases.push_back({std::move(name), std::move(kinds), std::move(s), quant});
  };

  add("left_of", {Kind::Point2, Kind::Segment2});
  add("right_of", {Kind::Point2, Kind::Segment2});
  add("right_or_collinear", {Kind::Point2, Kind::Segment2});
  add("left_or_collinear", {Kind::Point2, Kind::Segment2});
  add("collinear", {Kind::Point2, Kind::Segment2}, [](Rng& r, Assignment& a) {
    Vec sa = get_seg_a(a, "b"), sb = get_seg_b(a, "b");
    set_pt(a, "a", sa + r.rat(-3, 3) * (sb - sa));
  });
  add("collinear_pts", {Kind::Point2, Kind::Point2, Kind::Point2}, [](Rng& r, Assignment& a) {
    Vec p = get_pt(a, "a"), q = get_pt(a, "b");
    set_pt(a, "c", p + r.rat(-3, 3) * (q - p));
  });
  add("parallel", {Kind::Segment2, Kind::Segment2}, [](Rng& r, Assignment& a) {
    Vec d = get_seg_b(a, "a") - get_seg_a(a, "a");
    Vec sa = get_seg_a(a, "b");
    Rat k = r.rat(-3, 3);
    if (k == 0) k = 1;
    a["xb_b"] = sa.x + k * d.x;
    a["yb_b"] = sa.y + k * d.y;
  });
  add("perpendicular", {Kind::Segment2, Kind::Segment2}, [](Rng& r, Assignment& a) {
    Vec d = get_seg_b(a, "a") - get_seg_a(a, "a");
    Vec sa = get_seg_a(a, "b");
    Rat k = r.rat(-3, 3);
    if (k == 0) k = 1;
    a["xb_b"] = sa.x - k * d.y;
    a["yb_b"] = sa.y + k * d.x;
  });
  add("coincident", {Kind::Point2, Kind::Segment2}, [](Rng& r, Assignment& a) {
    Vec sa = get_seg_a(a, "b"), sb = get_seg_b(a, "b");
    set_pt(a, "a", sa + r.frac01() * (sb - sa));
  });
  add("coincident", {Kind::Point2, Kind::Circle2}, [](Rng& r, Assignment& a) {
    set_pt(a, "a", get_pt(a, "b") + a.at("r_b") * r.unit());
  });
  add("coincident_pt", {Kind::Point2, Kind::Point2},
      [](Rng&, Assignment& a) { copy_slots(a, "a", "b", {"x", "y"}); });
  add("centre", {Kind::Point2, Kind::Circle2},
      [](Rng&, Assignment& a) { copy_slots(a, "a", "b", {"x", "y"}); });

  auto pt_in_rect_at = [](Assignment& a, const Rat& al, const Rat& be) {
    auto r = rect_corners(a, "b");
    set_pt(a, "a", r[0] + al * (r[1] - r[0]) + be * (r[3] - r[0]));
  };
  add("inside", {Kind::Point2, Kind::Rectangle2}, [=](Rng& r, Assignment& a) {
    pt_in_rect_at(a, Rng::canon(r.pick(1, 7), 8), Rng::canon(r.pick(1, 7), 8));
  });
  add("intersects", {Kind::Point2, Kind::Rectangle2},
      [=](Rng& r, Assignment& a) { pt_in_rect_at(a, r.frac01(), r.frac01()); });
  add("boundary", {Kind::Point2, Kind::Rectangle2}, [=](Rng& r, Assignment& a) {
    if (r.pick(0, 1))
      pt_in_rect_at(a, Rat(r.pick(0, 1)), r.frac01());
    else
      pt_in_rect_at(a, r.frac01(), Rat(r.pick(0, 1)));
  });
  add("outside", {Kind::Point2, Kind::Rectangle2});

  add("concentric", {Kind::Rectangle2, Kind::Rectangle2}, [](Rng&, Assignment& a) {
    Vec ca = rect_center(a, "a"), cb = rect_center(a, "b");
    a["x_b"] = a["x_b"] + (ca.x - cb.x);
    a["y_b"] = a["y_b"] + (ca.y - cb.y);
  });
  add("aligned", {Kind::Rectangle2, Kind::Rectangle2},
      [](Rng&, Assignment& a) { copy_slots(a, "a", "b", {"vx", "vy"}); });
  add("covertex", {Kind::Rectangle2, Kind::Rectangle2}, [](Rng& r, Assignment& a) {
    copy_slots(a, "a", "b", {"vx", "vy"});
    Vec target = rect_corners(a, "a")[static_cast<std::size_t>(r.pick(0, 3))];
    Vec shift = target - rect_corners(a, "b")[static_cast<std::size_t>(r.pick(0, 3))];
    a["x_b"] = a["x_b"] + shift.x;
    a["y_b"] = a["y_b"] + shift.y;
  });
  auto shrink_into_b = [](Rng& r, Assignment& a) {
    copy_slots(a, "b", "a", {"vx", "vy"});
    Rat al = Rng::canon(r.pick(0, 2), 4), be = Rng::canon(r.pick(0, 2), 4);
    a["w_a"] = a.at("w_b") * Rng::canon(r.pick(1, 4), 4) * (1 - al);
    a["h_a"] = a.at("h_b") * Rng::canon(r.pick(1, 4), 4) * (1 - be);
    auto rb = rect_corners(a, "b");
    set_pt(a, "a", rb[0] + al * (rb[1] - rb[0]) + be * (rb[3] - rb[0]));
  };
  add("part_of", {Kind::Rectangle2, Kind::Rectangle2}, shrink_into_b);
  add("proper_part", {Kind::Rectangle2, Kind::Rectangle2}, shrink_into_b);
  add("boundary_part_of", {Kind::Rectangle2, Kind::Rectangle2}, [](Rng&, Assignment& a) {
    copy_slots(a, "b", "a", {"x", "y", "vx", "vy", "w", "h"});
  });
  add("equals", {Kind::Rectangle2, Kind::Rectangle2}, [](Rng&, Assignment& a) {
    copy_slots(a, "b", "a", {"x", "y", "vx", "vy", "w", "h"});
  });
  add("discrete_from", {Kind::Rectangle2, Kind::Rectangle2},
      [](Rng& r, Assignment& a) { a["x_b"] = a["x_b"] + Rat(20 + r.pick(0, 10)); });
  auto overlap_sampler = [](Rng& r, Assignment& a) {
    if (r.pick(0, 2) == 0) copy_slots(a, "a", "b", {"vx", "vy"});
    Vec ca = rect_center(a, "a"), cb = rect_center(a, "b");
    Vec va = rect_corners(a, "a")[0];
    // aim b's center near one of a's corners: overlapping but not nested
    Vec target = ca + Rat(1, 2) * (va - ca);
    a["x_b"] = a["x_b"] + (target.x - cb.x);
    a["y_b"] = a["y_b"] + (target.y - cb.y);
  };
  add("partially_overlaps", {Kind::Rectangle2, Kind::Rectangle2}, overlap_sampler, true);
  add("nonsquare_intersection", {Kind::Rectangle2, Kind::Rectangle2}, overlap_sampler, true);
  add("aligned_concentric", {Kind::Rectangle2, Kind::Rectangle2}, nullptr, true);
  add("boundary_concentric", {Kind::Rectangle2, Kind::Rectangle2}, nullptr, true);

  add("touches", {Kind::Circle2, Kind::Circle2}, [](Rng& r, Assignment& a) {
    set_pt(a, "b", get_pt(a, "a") + (a.at("r_a") + a.at("r_b")) * r.unit());
  });
  add("disconnected", {Kind::Circle2, Kind::Circle2}, [](Rng& r, Assignment& a) {
    set_pt(a, "b", get_pt(a, "a") + (a.at("r_a") + a.at("r_b") + r.pos_rat()) * r.unit());
  });
  add("touches", {Kind::Sphere3, Kind::Sphere3}, [](Rng& r, Assignment& a) {
    Vec u = r.unit();
    Rat d = a.at("r_a") + a.at("r_b");
    a["x_b"] = a.at("x_a") + d * u.x;
    a["y_b"] = a.at("y_a") + d * u.y;
    a["z_b"] = a.at("z_a");
  });
  add("disconnected", {Kind::Sphere3, Kind::Sphere3}, [](Rng& r, Assignment& a) {
    Vec u = r.unit();
    Rat d = a.at("r_a") + a.at("r_b") + r.pos_rat();
    a["x_b"] = a.at("x_a") + d * u.x;
    a["y_b"] = a.at("y_a") + d * u.y;
    a["z_b"] = a.at("z_a");
  });
  add("same_radius", {Kind::Circle2, Kind::Circle2},
      [](Rng&, Assignment& a) { copy_slots(a, "a", "b", {"r"}); });
  add("same_radius", {Kind::Sphere3, Kind::Sphere3},
      [](Rng&, Assignment& a) { copy_slots(a, "a", "b", {"r"}); });
  add("same_length", {Kind::Segment2, Kind::Segment2}, [](Rng& r, Assignment& a) {
    Vec d = get_seg_b(a, "a") - get_seg_a(a, "a");
    Vec u = r.unit();  // same length, rotated
    Vec sa = get_seg_a(a, "b");
    a["xb_b"] = sa.x + u.x * d.x - u.y * d.y;
    a["yb_b"] = sa.y + u.y * d.x + u.x * d.y;
  });
  add("dist_eq", {Kind::Point2, Kind::Point2, Kind::Segment2}, [](Rng&, Assignment& a) {
    Vec d = get_seg_b(a, "c") - get_seg_a(a, "c");
    set_pt(a, "b", get_pt(a, "a") + d);
  });
  add("bisects", {Kind::Point2, Kind::Point2, Kind::Point2, Kind::Point2},
      [](Rng& r, Assignment& a) {
        Vec mid = Rat(1, 2) * (get_pt(a, "c") + get_pt(a, "d"));
        Vec p = get_pt(a, "a");
        set_pt(a, "b", p + r.rat(-3, 3) * (mid - p));
      });
  add("inside", {Kind::Box3, Kind::Box3}, [](Rng& r, Assignment& a) {
    for (auto [lo, ext] : {std::pair{"x", "w"}, {"y", "d"}, {"z", "h"}}) {
      std::string la = std::string(lo) + "_a", lb = std::string(lo) + "_b";
      std::string ea = std::string(ext) + "_a", eb = std::string(ext) + "_b";
      a[ea] = a.at(eb) * Rng::canon(r.pick(1, 3), 4);
      a[la] = a.at(lb) + (a.at(eb) - a.at(ea)) * r.frac01() / 2 + Rat(1, 100);
    }
  });
  add("disconnected", {Kind::Box3, Kind::Box3}, [](Rng& r, Assignment& a) {
    const char* axis[] = {"x", "y", "z"};
    const char* ext[] = {"w", "d", "h"};
    int i = static_cast<int>(r.pick(0, 2));
    a[std::string(axis[i]) + "_b"] =
        a.at(std::string(axis[i]) + "_a") + a.at(std::string(ext[i]) + "_a") + r.pos_rat();
  });
  return cases;
}

}  // namespace

const std::vector<RelationSampler>& relation_samplers() {
  static const std::vector<RelationSampler> cases = build_samplers();
  return cases;
}

const RelationSampler* find_sampler(const std::string& name, const std::vector<Kind>& kinds) {
  for (const auto& s : relation_samplers())
    if (s.name == name && s.kinds == kinds) return &s;
  return nullptr;
}

}  // namespace qs::sampling
