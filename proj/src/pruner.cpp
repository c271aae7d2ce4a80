#include "pruner.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace qs {

namespace {

Subcase sub(std::string guard, std::vector<int> constants) {
  Subcase s;
  s.guard = std::move(guard);
  for (int v : constants) s.constants.emplace_back(v);
  return s;
}

using R = CoordRestriction;

PruningCase row(std::string id, int arity, std::vector<R> restr, RotMode rot, TSet cost,
                std::vector<Subcase> subs) {
  PruningCase c;
  c.id = std::move(id);
  c.arity = arity;
  c.restrictions = std::move(restr);
  c.rot = rot;
  c.cost = std::move(cost);
  c.subcases = std::move(subs);
  return c;
}

std::vector<PruningCase> build_catalog() {
  const TClass T = TClass::Translate, Ro = TClass::Rotate, U = TClass::UniformScale,
               N = TClass::NonUniformScale, F = TClass::Reflect;
  std::vector<PruningCase> cat;

  cat.push_back(row("a", 1, {{0, 'x'}}, RotMode::None, {T}, {sub("", {0})}));
  cat.push_back(row("b", 1, {{0, 'x'}, {0, 'y'}}, RotMode::None, {T}, {sub("", {0, 0})}));
  cat.push_back(row("c", 2, {{0, 'x'}, {1, 'x'}}, RotMode::Pi, {T, Ro, U},
                    {sub("c1 != c2", {0, 1}), sub("c1 = c2", {0, 0})}));
  cat.push_back(row("d", 2, {{0, 'x'}, {1, 'y'}}, RotMode::None, {T}, {sub("", {0, 0})}));
  cat.push_back(row("e", 2, {{0, 'x'}, {0, 'y'}, {1, 'x'}}, RotMode::Pi, {T, Ro, U},
                    {sub("c1 != c3", {0, 0, 1}), sub("c1 = c3", {0, 0, 0})}));
  cat.push_back(row("f", 2, {{0, 'x'}, {0, 'y'}, {1, 'x'}, {1, 'y'}}, RotMode::Full, {T, Ro, U},
                    {sub("c1 != c3", {0, 0, 1, 0}), sub("c1 = c3", {0, 0, 0, 0})}));
  cat.push_back(row("g", 3, {{0, 'x'}, {1, 'x'}, {2, 'y'}}, RotMode::Pi, {T, Ro, U},
                    {sub("c1 != c2", {0, 1, 0}), sub("c1 = c2", {0, 0, 0})}));
  cat.push_back(row("h", 3, {{0, 'x'}, {0, 'y'}, {1, 'x'}, {2, 'y'}}, RotMode::Pi,
                    {T, Ro, U, N, F},
                    {sub("c1 != c3 && c2 != c4", {0, 0, 1, 1}),
                     sub("c1 = c3 && c2 != c4", {0, 0, 0, 1}),
                     sub("c1 != c3 && c2 = c4", {0, 0, 1, 0}),
                     sub("c1 = c3 && c2 = c4", {0, 0, 0, 0})}));
  cat.push_back(row("i", 3, {{0, 'x'}, {0, 'y'}, {1, 'x'}, {1, 'y'}, {2, 'y'}}, RotMode::Full,
                    {T, Ro, U, N, F},
                    {sub("c1 != c3 && c2 != c4", {0, 0, 1, 0, 1}),
                     sub("c1 != c3 && c2 = c4", {0, 0, 1, 0, 0}),
                     sub("c1 = c3 && c2 = c4", {0, 0, 0, 0, 0})}));

  // segment grounding: endpoint a at the origin, endpoint b on the x-axis;
  // keeps every scale class for length couplings
  cat.push_back(
      row("seg2", 2, {{0, 'x'}, {0, 'y'}, {1, 'y'}}, RotMode::Full, {T, Ro}, {sub("", {0, 0, 0})}));

  // 3D point-triple grounding: p1 at the origin, p2 on the x-axis, p3 in the
  // z=0 plane; one subcase because only partial coordinates are pinned
  {
    PruningCase j = row("j3d", 3,
                        {{0, 'x'}, {0, 'y'}, {0, 'z'}, {1, 'y'}, {1, 'z'}, {2, 'z'}},
                        RotMode::Full, {T, Ro}, {sub("", {0, 0, 0, 0, 0, 0})});
    j.dimension = 3;
    cat.push_back(j);
    j.id = "j3ds";  // additionally normalizes the first target's radius to 1
    j.cost.insert(U);
    j.grounds_radius = true;
    cat.push_back(j);
  }

  // rectangle frame grounding: corner at the origin, direction (1,0)
  {
    PruningCase fr = row("frame2", 1, {{0, 'x'}, {0, 'y'}}, RotMode::Full, {T, Ro},
                         {sub("", {0, 0})});
    fr.frame_target = true;
    cat.push_back(fr);
    fr.id = "frame2s";  // additionally normalizes the width to 1
    fr.cost.insert(U);
    fr.grounds_width = true;
    cat.push_back(fr);
  }
  return cat;
}

}  // namespace

const std::vector<PruningCase>& catalog() {
  static const std::vector<PruningCase> cat = build_catalog();
  return cat;
}

const PruningCase* find_case(const std::string& id) {
  for (const auto& c : catalog())
    if (c.id == id) return &c;
  return nullptr;
}

std::vector<const PruningCase*> applicable_cases(const TransformBudget& budget, int dimension) {
  std::vector<const PruningCase*> out;
  for (const auto& c : catalog()) {
    if (c.dimension != dimension) continue;
    bool ok = true;
    for (TClass t : c.cost)
      if (!budget.has(t)) ok = false;
    if (ok) out.push_back(&c);
  }
  return out;
}

namespace {

struct Candidate {
  PointRef ref;
  long score = 0;
  std::size_t order = 0;
};

bool is_round(Kind k) { return k == Kind::Circle2 || k == Kind::Sphere3; }

bool nonlinear_atom(const RelationSignature& sig) {
  if (sig.cls == RelClass::Distance || sig.cls == RelClass::Perpendicularity) return true;
  for (Kind k : sig.args)
    if (is_round(k)) return true;
  return false;
}

// object ids forced to denote the same point by a top-level positive atom
std::set<std::pair<std::string, std::string>> coincidence_links(const ConstraintGraph& g) {
  std::set<std::pair<std::string, std::string>> out;
  for (const auto& f : g.formulas) {
    if (f.kind != EdgeFormula::Kind::Atom) continue;
    const RelationAtom& a = f.atom;
    if ((a.name == "coincident_pt" || a.name == "centre") && a.args.size() == 2) {
      auto p = std::minmax(a.args[0], a.args[1]);
      out.insert({p.first, p.second});
    }
  }
  return out;
}

// first pair of distinct round objects sharing a boundary point: either an
// explicit touches atom, or two coincident atoms through a common point
std::optional<std::pair<std::string, std::string>> shared_boundary_pair(const ConstraintGraph& g) {
  std::map<std::string, std::vector<std::string>> point_to_round;
  for (const auto& f : g.formulas) {
    if (f.kind != EdgeFormula::Kind::Atom) continue;
    const RelationAtom& a = f.atom;
    if (a.args.size() != 2) continue;
    const SpatialObject* o0 = g.find_object(a.args[0]);
    const SpatialObject* o1 = g.find_object(a.args[1]);
    if (!o0 || !o1) continue;
    if (a.name == "touches" && is_round(o0->kind) && is_round(o1->kind))
      return std::make_pair(a.args[0], a.args[1]);
    if (a.name == "coincident" && o0->kind == Kind::Point2 && is_round(o1->kind)) {
      auto& v = point_to_round[a.args[0]];
      for (const auto& prev : v)
        if (prev != a.args[1]) return std::make_pair(prev, a.args[1]);
      v.push_back(a.args[1]);
    }
  }
  return std::nullopt;
}

std::vector<Candidate> point_candidates(const ConstraintGraph& g, int dimension) {
  std::map<std::string, long> obj_score;
  for (const auto& f : g.formulas) {
    std::vector<const RelationAtom*> atoms;
    f.collect_atoms(atoms);
    for (const RelationAtom* a : atoms) {
      auto sig = resolve_atom(g, *a);
      long w = sig && nonlinear_atom(*sig) ? 2 : 1;
      for (const auto& id : a->args) obj_score[id] += w;
    }
  }

  std::vector<Candidate> cands;
  auto add = [&](const SpatialObject& o, std::string x, std::string y, std::string z,
                 std::string label) {
    if (g.groundings.count(x) || g.groundings.count(y)) return;
    if (!z.empty() && g.groundings.count(z)) return;
    if ((dimension == 3) != !z.empty()) return;
    Candidate c;
    c.ref = PointRef{o.id, std::move(x), std::move(y), std::move(z), std::move(label)};
    c.score = obj_score[o.id];
    c.order = cands.size();
    cands.push_back(std::move(c));
  };
  for (const auto& o : g.objects) {
    switch (o.kind) {
      case Kind::Point2:
        add(o, o.var("x"), o.var("y"), "", "point " + o.id);
        break;
      case Kind::Point3:
        add(o, o.var("x"), o.var("y"), o.var("z"), "point " + o.id);
        break;
      case Kind::Segment2:
        add(o, o.var("xa"), o.var("ya"), "", "endpoint a of " + o.id);
        add(o, o.var("xb"), o.var("yb"), "", "endpoint b of " + o.id);
        break;
      case Kind::Circle2:
        add(o, o.var("x"), o.var("y"), "", "centre of " + o.id);
        break;
      case Kind::Sphere3:
        add(o, o.var("x"), o.var("y"), o.var("z"), "centre of " + o.id);
        break;
      case Kind::Rectangle2:
        add(o, o.var("x"), o.var("y"), "", "corner of " + o.id);
        break;
      case Kind::Box3:
        add(o, o.var("x"), o.var("y"), o.var("z"), "corner of " + o.id);
        break;
    }
  }
  std::stable_sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
    return a.score != b.score ? a.score > b.score : a.order < b.order;
  });
  return cands;
}

}  // namespace

std::optional<std::vector<PointRef>> select_targets(const ConstraintGraph& g,
                                                    const PruningCase& c) {
  if (c.frame_target) {
    std::vector<Candidate> best;
    for (const auto& cand : point_candidates(g, 2)) {
      const SpatialObject* o = g.find_object(cand.ref.object);
      if (!o || o->kind != Kind::Rectangle2) continue;
      if (g.groundings.count(o->var("vx")) || g.groundings.count(o->var("vy"))) continue;
      if (c.grounds_width && g.groundings.count(o->var("w"))) continue;
      best.push_back(cand);
    }
    if (best.empty()) return std::nullopt;
    return std::vector<PointRef>{best.front().ref};
  }

  std::vector<Candidate> cands = point_candidates(g, c.dimension);
  if ((int)cands.size() < c.arity) return std::nullopt;

  std::vector<PointRef> out;
  auto taken = [&](const PointRef& r) {
    for (const auto& t : out)
      if (t.x == r.x) return true;
    return false;
  };

  if (c.arity >= 2) {
    if (auto pair = shared_boundary_pair(g)) {
      for (const auto& id : {pair->first, pair->second})
        for (const auto& cand : cands)
          if (cand.ref.object == id && !taken(cand.ref)) {
            out.push_back(cand.ref);
            break;
          }
      if ((int)out.size() != 2) out.clear();
    }
  }
  if (c.grounds_radius && out.empty()) {
    // normalizing a radius only helps when the first target is a sphere
    for (const auto& cand : cands) {
      const SpatialObject* o = g.find_object(cand.ref.object);
      if (o && is_round(o->kind) && !g.groundings.count(o->var("r"))) {
        out.push_back(cand.ref);
        break;
      }
    }
  }

  auto links = c.id == "d" ? coincidence_links(g)
                           : std::set<std::pair<std::string, std::string>>{};
  for (const auto& cand : cands) {
    if ((int)out.size() == c.arity) break;
    if (taken(cand.ref)) continue;
    if (c.id == "d" && !out.empty()) {
      auto key = std::minmax(out.front().object, cand.ref.object);
      if (links.count({key.first, key.second})) continue;
    }
    out.push_back(cand.ref);
  }
  if ((int)out.size() != c.arity) return std::nullopt;
  return out;
}

PruningPlan expand_subcases(const ConstraintGraph& g, const PruningCase& c,
                            const std::vector<PointRef>& targets) {
  if ((int)targets.size() != c.arity)
    throw PruneError("case " + c.id + " expects " + std::to_string(c.arity) + " target points");

  PruningPlan plan;
  plan.pruning_case = &c;
  plan.targets = targets;

  const SpatialObject* first = g.find_object(targets.front().object);
  if (c.grounds_radius && (!first || !is_round(first->kind)))
    throw PruneError("case " + c.id + " needs a circle or sphere as its first target");
  if (c.frame_target && (!first || first->kind != Kind::Rectangle2))
    throw PruneError("case " + c.id + " targets a rectangle");

  for (const Subcase& sc : c.subcases) {
    ConstraintGraph g2 = g;
    auto ground = [&](const std::string& var, const Rat& value) {
      if (var.empty()) throw PruneError("case " + c.id + " needs a 3D target");
      if (g2.groundings.count(var))
        throw PruneError("target coordinate " + var + " is already grounded");
      g2.groundings[var] = value;
    };
    for (std::size_t i = 0; i < c.restrictions.size(); ++i) {
      const auto& r = c.restrictions[i];
      const PointRef& t = targets[r.point];
      ground(r.coord == 'x' ? t.x : r.coord == 'y' ? t.y : t.z, sc.constants[i]);
    }
    if (c.frame_target) {
      ground(first->var("vx"), Rat(1));
      ground(first->var("vy"), Rat(0));
      if (c.grounds_width) ground(first->var("w"), Rat(1));
    }
    if (c.grounds_radius) ground(first->var("r"), Rat(1));
    plan.subgraphs.push_back(std::move(g2));
  }
  return plan;
}

namespace {

constexpr double kTol = 1e-9;

struct D3 {
  double x = 0, y = 0, z = 0;
};

struct SampleCfg {
  std::vector<D3> pts;
  double r = 1.0;             // j3ds radius
  double vx = 1, vy = 0;      // frame direction
  double w = 1, h = 1;        // frame extents
};

struct Dice {
  std::mt19937_64 gen;
  std::uniform_real_distribution<double> uni{-5.0, 5.0};
  double operator()() { return uni(gen); }
  double apart(double from) {
    double v = (*this)();
    while (std::fabs(v - from) < 0.5) v = (*this)();
    return v;
  }
};

SampleCfg sample_sources(const PruningCase& c, std::size_t sc, Dice& d) {
  SampleCfg cfg;
  cfg.pts.resize(c.arity);
  for (auto& p : cfg.pts) {
    p.x = d();
    p.y = d();
    if (c.dimension == 3) p.z = d();
  }
  auto& p = cfg.pts;
  const std::string& id = c.id;
  if (id == "c" || id == "e" || id == "g") {
    if (sc == 0)
      p[1].x = d.apart(p[0].x);
    else
      p[1].x = p[0].x;
  } else if (id == "f") {
    if (sc == 0) {
      while (std::hypot(p[1].x - p[0].x, p[1].y - p[0].y) < 0.5) {
        p[1].x = d();
        p[1].y = d();
      }
    } else {
      p[1] = p[0];
    }
  } else if (id == "h") {
    p[1].x = (sc == 0 || sc == 2) ? d.apart(p[0].x) : p[0].x;
    p[2].y = (sc == 0 || sc == 1) ? d.apart(p[0].y) : p[0].y;
  } else if (id == "i") {
    if (sc == 2) {
      p[1] = p[0];
    } else {
      while (std::hypot(p[1].x - p[0].x, p[1].y - p[0].y) < 0.5) {
        p[1].x = d();
        p[1].y = d();
      }
      if (sc == 1) {
        double t = d();
        p[2].x = p[0].x + t * (p[1].x - p[0].x);
        p[2].y = p[0].y + t * (p[1].y - p[0].y);
      } else {
        double cross = 0;
        while (std::fabs(cross) < 0.5) {
          p[2].x = d();
          p[2].y = d();
          cross = (p[1].x - p[0].x) * (p[2].y - p[0].y) - (p[1].y - p[0].y) * (p[2].x - p[0].x);
        }
      }
    }
  } else if (id == "seg2") {
    while (std::hypot(p[1].x - p[0].x, p[1].y - p[0].y) < 0.5) {
      p[1].x = d();
      p[1].y = d();
    }
  } else if (id == "j3d" || id == "j3ds") {
    while (std::hypot(p[1].x - p[0].x, p[1].y - p[0].y) + std::fabs(p[1].z - p[0].z) < 0.5) {
      p[1].x = d();
      p[1].y = d();
      p[1].z = d();
    }
    cfg.r = 0.2 + std::fabs(d()) / 2.0;
  } else if (c.frame_target) {
    double a = d();
    cfg.vx = std::cos(a);
    cfg.vy = std::sin(a);
    cfg.w = 0.2 + std::fabs(d()) / 2.0;
    cfg.h = 0.2 + std::fabs(d()) / 2.0;
  }
  return cfg;
}

// Tries to realize the subcase constants with a transformation built only
// from the classes in c.cost.
bool solve_2d(const PruningCase& c, const Subcase& sc, const SampleCfg& cfg) {
  const bool may_translate = c.cost.count(TClass::Translate) > 0;
  const bool may_rotate = c.cost.count(TClass::Rotate) > 0;
  const bool may_reflect = c.cost.count(TClass::Reflect) > 0;
  const bool us = c.cost.count(TClass::UniformScale) > 0;
  const bool nus = c.cost.count(TClass::NonUniformScale) > 0;

  std::vector<double> thetas{0.0};
  if (may_rotate && c.rot != RotMode::None) {
    thetas.push_back(M_PI);
    if (c.rot == RotMode::Full) {
      for (std::size_t i = 0; i < cfg.pts.size(); ++i)
        for (std::size_t j = 0; j < cfg.pts.size(); ++j) {
          if (i == j) continue;
          double dx = cfg.pts[j].x - cfg.pts[i].x, dy = cfg.pts[j].y - cfg.pts[i].y;
          if (std::hypot(dx, dy) < 1e-12) continue;
          double t = -std::atan2(dy, dx);
          thetas.push_back(t);
          thetas.push_back(t + M_PI);
        }
    }
  }
  std::vector<double> rhos{1.0};
  if (may_reflect) rhos.push_back(-1.0);

  // restriction equations split by axis: (rotated coordinate, target constant)
  struct Eq {
    double q, cst;
  };
  for (double th : thetas) {
    double co = std::cos(th), si = std::sin(th);
    std::vector<Eq> ex, ey;
    for (std::size_t k = 0; k < c.restrictions.size(); ++k) {
      const auto& r = c.restrictions[k];
      const D3& p = cfg.pts[r.point];
      double qx = co * p.x - si * p.y, qy = si * p.x + co * p.y;
      double cst = sc.constants[k].get_d();
      (r.coord == 'x' ? ex : ey).push_back({r.coord == 'x' ? qx : qy, cst});
    }
    auto slope = [](const std::vector<Eq>& eqs) -> std::optional<double> {
      for (std::size_t i = 0; i < eqs.size(); ++i)
        for (std::size_t j = i + 1; j < eqs.size(); ++j)
          if (std::fabs(eqs[i].q - eqs[j].q) > 1e-7)
            return (eqs[i].cst - eqs[j].cst) / (eqs[i].q - eqs[j].q);
      return std::nullopt;
    };
    auto mx = slope(ex), my = slope(ey);

    for (double rho : rhos) {
      std::vector<std::pair<double, double>> scales;  // (sx, sy)
      if (us && nus) {
        scales.push_back({mx.value_or(1.0), my ? *my * rho : 1.0});
      } else if (us) {
        if (mx) scales.push_back({*mx, *mx});
        if (my) scales.push_back({*my * rho, *my * rho});
        scales.push_back({1.0, 1.0});
      } else {
        scales.push_back({1.0, 1.0});
      }
      for (auto [sx, sy] : scales) {
        if (sx < 1e-12 || sy < 1e-12) continue;
        double tx = 0, ty = 0;
        if (may_translate) {
          if (!ex.empty()) tx = ex[0].cst - sx * ex[0].q;
          if (!ey.empty()) ty = ey[0].cst - rho * sy * ey[0].q;
        }
        bool ok = true;
        for (const Eq& e : ex)
          if (std::fabs(sx * e.q + tx - e.cst) > kTol) ok = false;
        for (const Eq& e : ey)
          if (std::fabs(rho * sy * e.q + ty - e.cst) > kTol) ok = false;
        if (ok) return true;
      }
    }
  }
  return false;
}

bool solve_frame(const PruningCase& c, const SampleCfg& cfg) {
  double th = c.cost.count(TClass::Rotate) ? -std::atan2(cfg.vy, cfg.vx) : 0.0;
  double co = std::cos(th), si = std::sin(th);
  double vx = co * cfg.vx - si * cfg.vy, vy = si * cfg.vx + co * cfg.vy;
  double s = c.grounds_width && c.cost.count(TClass::UniformScale) ? 1.0 / cfg.w : 1.0;
  const D3& p = cfg.pts[0];
  double px = s * (co * p.x - si * p.y), py = s * (si * p.x + co * p.y);
  double tx = c.cost.count(TClass::Translate) ? -px : 0.0;
  double ty = c.cost.count(TClass::Translate) ? -py : 0.0;
  bool ok = std::fabs(px + tx) <= kTol && std::fabs(py + ty) <= kTol &&
            std::fabs(vx - 1.0) <= kTol && std::fabs(vy) <= kTol;
  if (c.grounds_width) ok = ok && std::fabs(s * cfg.w - 1.0) <= kTol;
  return ok;
}

bool solve_3d(const PruningCase& c, const SampleCfg& cfg) {
  std::vector<D3> p = cfg.pts;
  if (c.cost.count(TClass::Translate)) {
    D3 o = p[0];
    for (auto& q : p) {
      q.x -= o.x;
      q.y -= o.y;
      q.z -= o.z;
    }
  }
  if (c.cost.count(TClass::Rotate)) {
    auto rot = [&](double& a, double& b, double ang) {
      double ca = std::cos(ang), sa = std::sin(ang);
      double na = ca * a - sa * b, nb = sa * a + ca * b;
      a = na;
      b = nb;
    };
    // about z: p2 into the xz-plane
    double az = -std::atan2(p[1].y, p[1].x);
    for (auto& q : p) rot(q.x, q.y, az);
    // about y: p2 onto the +x axis
    double ay = std::atan2(p[1].z, p[1].x);
    for (auto& q : p) {
      double nx = std::cos(ay) * q.x + std::sin(ay) * q.z;
      double nz = -std::sin(ay) * q.x + std::cos(ay) * q.z;
      q.x = nx;
      q.z = nz;
    }
    // about x: p3 into the z=0 plane
    double ax = -std::atan2(p[2].z, p[2].y);
    for (auto& q : p) rot(q.y, q.z, ax);
  }
  double r = cfg.r;
  if (c.grounds_radius && c.cost.count(TClass::UniformScale)) {
    double s = 1.0 / cfg.r;
    for (auto& q : p) {
      q.x *= s;
      q.y *= s;
      q.z *= s;
    }
    r *= s;
  }
  bool ok = std::fabs(p[0].x) <= kTol && std::fabs(p[0].y) <= kTol && std::fabs(p[0].z) <= kTol &&
            std::fabs(p[1].y) <= kTol && std::fabs(p[1].z) <= kTol && std::fabs(p[2].z) <= kTol;
  if (c.grounds_radius) ok = ok && std::fabs(r - 1.0) <= kTol;
  return ok;
}

std::string describe(const SampleCfg& cfg) {
  std::ostringstream os;
  os.precision(17);
  for (const auto& p : cfg.pts) os << " (" << p.x << ", " << p.y << ", " << p.z << ")";
  return os.str();
}

}  // namespace

CaseVerification verify_case_numeric(const PruningCase& c, int trials, unsigned seed) {
  Dice dice{std::mt19937_64(seed)};
  for (std::size_t sc = 0; sc < c.subcases.size(); ++sc) {
    for (int t = 0; t < trials; ++t) {
      SampleCfg cfg = sample_sources(c, sc, dice);
      bool ok;
      if (c.frame_target)
        ok = solve_frame(c, cfg);
      else if (c.dimension == 3)
        ok = solve_3d(c, cfg);
      else
        ok = solve_2d(c, c.subcases[sc], cfg);
      if (!ok) {
        CaseVerification v;
        v.verified = false;
        v.counterexample = "case " + c.id + " subcase " + std::to_string(sc + 1) +
                           ": no traded transformation maps" + describe(cfg) +
                           " onto the restriction constants";
        return v;
      }
    }
  }
  return {};
}

}  // namespace qs
