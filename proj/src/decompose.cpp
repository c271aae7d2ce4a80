#include "decompose.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "encoder.hpp"

namespace qs {

EdgeRole separable(const ConstraintGraph&, const EdgeFormula& f) {
  if (f.kind != EdgeFormula::Kind::Atom) return EdgeRole::Binder;
  const std::string& n = f.atom.name;
  if (n == "disconnected" || n == "discrete_from" || n == "proper_part" || n == "left_of")
    return EdgeRole::Separator;
  if (n == "same_length" || n == "same_radius" || n == "dist_eq") return EdgeRole::Coupler;
  return EdgeRole::Binder;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int i) { return parent[i] == i ? i : parent[i] = find(parent[i]); }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

bool has_grounding(const ConstraintGraph& g, const SpatialObject& o) {
  for (const auto& v : o.param_vars())
    if (g.groundings.count(v)) return true;
  return false;
}

}  // namespace

int DecompositionPlan::component_of(const std::string& object_id) const {
  for (std::size_t i = 0; i < components.size(); ++i)
    if (components[i].graph.find_object(object_id)) return (int)i;
  return -1;
}

DecompositionPlan decompose(const ConstraintGraph& g) {
  const int n = (int)g.objects.size();
  std::map<std::string, int> idx;
  for (int i = 0; i < n; ++i) idx[g.objects[i].id] = i;

  std::vector<EdgeRole> roles;
  for (const auto& f : g.formulas) roles.push_back(separable(g, f));

  std::vector<int> comp_of(n, 0);
  std::vector<std::vector<int>> members;

  for (;;) {
    UnionFind uf(n);
    for (std::size_t e = 0; e < g.formulas.size(); ++e) {
      if (roles[e] != EdgeRole::Binder) continue;
      std::vector<const RelationAtom*> atoms;
      g.formulas[e].collect_atoms(atoms);
      for (const RelationAtom* a : atoms)
        for (std::size_t k = 1; k < a->args.size(); ++k)
          uf.unite(idx.at(a->args[0]), idx.at(a->args[k]));
    }
    std::map<int, int> root_to_comp;
    members.clear();
    for (int i = 0; i < n; ++i) {
      int r = uf.find(i);
      auto [it, fresh] = root_to_comp.emplace(r, (int)members.size());
      if (fresh) members.emplace_back();
      comp_of[i] = it->second;
      members[it->second].push_back(i);
    }

    // internal constraint sets drive the budgets; cross couplers additionally
    // pin the scale of everything they touch
    auto span = [&](std::size_t e) {
      std::set<int> comps;
      for (const auto& id : g.formulas[e].atom.args) comps.insert(comp_of[idx.at(id)]);
      return comps;
    };
    std::vector<ConstraintGraph> internal(members.size());
    for (std::size_t c = 0; c < members.size(); ++c)
      for (int i : members[c]) internal[c].objects.push_back(g.objects[i]);
    for (std::size_t e = 0; e < g.formulas.size(); ++e) {
      std::vector<const RelationAtom*> atoms;
      g.formulas[e].collect_atoms(atoms);
      std::set<int> comps;
      for (const RelationAtom* a : atoms)
        for (const auto& id : a->args) comps.insert(comp_of[idx.at(id)]);
      if (comps.size() == 1) internal[*comps.begin()].formulas.push_back(g.formulas[e]);
    }
    std::vector<TSet> budget(members.size());
    for (std::size_t c = 0; c < members.size(); ++c)
      budget[c] = sym_of_graph(internal[c]).available;
    std::vector<bool> coupled(members.size(), false), grounded(members.size(), false);
    for (std::size_t e = 0; e < g.formulas.size(); ++e)
      if (roles[e] == EdgeRole::Coupler && span(e).size() > 1)
        for (int c : span(e)) coupled[c] = true;
    for (int i = 0; i < n; ++i)
      if (has_grounding(g, g.objects[i])) grounded[comp_of[i]] = true;

    auto movable = [&](int c, bool needs_scale) {
      if (grounded[c]) return false;
      if (!budget[c].count(TClass::Translate)) return false;
      if (needs_scale && (coupled[c] || !budget[c].count(TClass::UniformScale))) return false;
      return true;
    };

    // demote separators and couplers that cannot be discharged across the
    // current partition; every demotion merges components, so this terminates
    bool changed = false;
    for (std::size_t e = 0; e < g.formulas.size(); ++e) {
      if (roles[e] == EdgeRole::Binder) continue;
      const RelationAtom& a = g.formulas[e].atom;
      auto comps = span(e);
      if (comps.size() == 1) continue;
      bool ok = true;
      if (roles[e] == EdgeRole::Coupler) {
        if (a.name == "dist_eq")
          ok = comp_of[idx.at(a.args[0])] == comp_of[idx.at(a.args[1])];
      } else if (a.name == "proper_part") {
        ok = movable(comp_of[idx.at(a.args[0])], true);
      } else if (a.name == "left_of") {
        ok = movable(comp_of[idx.at(a.args[0])], false);
      } else {  // disconnected, discrete_from
        ok = movable(comp_of[idx.at(a.args[0])], false) ||
             movable(comp_of[idx.at(a.args[1])], false);
      }
      if (!ok) {
        roles[e] = EdgeRole::Binder;
        changed = true;
      }
    }
    if (changed) continue;

    DecompositionPlan plan;
    for (std::size_t c = 0; c < members.size(); ++c) {
      Component comp;
      comp.graph = std::move(internal[c]);
      for (const auto& o : comp.graph.objects)
        for (const auto& v : o.param_vars()) {
          auto it = g.groundings.find(v);
          if (it != g.groundings.end()) comp.graph.groundings[v] = it->second;
        }
      TSet avail = budget[c];
      // a grounding already breaks the component's symmetry; nothing is left
      // to trade
      if (grounded[c]) avail.clear();
      if (coupled[c]) {
        avail.erase(TClass::UniformScale);
        avail.erase(TClass::NonUniformScale);
      }
      comp.budget = TransformBudget{std::move(avail), {}};
      plan.components.push_back(std::move(comp));
    }
    for (std::size_t e = 0; e < g.formulas.size(); ++e) {
      if (roles[e] == EdgeRole::Binder) continue;
      auto comps = span(e);
      if (comps.size() == 1) continue;
      CrossEdge edge{g.formulas[e], std::vector<int>(comps.begin(), comps.end())};
      (roles[e] == EdgeRole::Separator ? plan.separators : plan.couplers)
          .push_back(std::move(edge));
    }
    return plan;
  }
}

namespace {

struct Box {
  Rat lo_x, hi_x, lo_y, hi_y;
  bool init = false;
  void take(const Rat& x, const Rat& y) {
    if (!init) {
      lo_x = hi_x = x;
      lo_y = hi_y = y;
      init = true;
      return;
    }
    lo_x = std::min(lo_x, x);
    hi_x = std::max(hi_x, x);
    lo_y = std::min(lo_y, y);
    hi_y = std::max(hi_y, y);
  }
};

// xy bounding box of a component's witness (3D objects bound x and y; the
// scatter direction is x, which separates 3D objects too)
Box bounds(const ConstraintGraph& g, const Assignment& w) {
  Box b;
  auto at = [&](const std::string& v) { return w.at(v); };
  for (const auto& o : g.objects) {
    switch (o.kind) {
      case Kind::Point2:
      case Kind::Point3:
        b.take(at(o.var("x")), at(o.var("y")));
        break;
      case Kind::Segment2:
        b.take(at(o.var("xa")), at(o.var("ya")));
        b.take(at(o.var("xb")), at(o.var("yb")));
        break;
      case Kind::Circle2:
      case Kind::Sphere3: {
        Rat r = at(o.var("r"));
        b.take(at(o.var("x")) - r, at(o.var("y")) - r);
        b.take(at(o.var("x")) + r, at(o.var("y")) + r);
        break;
      }
      case Kind::Rectangle2: {
        Rat x = at(o.var("x")), y = at(o.var("y"));
        Rat vx = at(o.var("vx")), vy = at(o.var("vy"));
        Rat wd = at(o.var("w")), h = at(o.var("h"));
        b.take(x, y);
        b.take(x + wd * vx, y + wd * vy);
        b.take(x + wd * vx - h * vy, y + wd * vy + h * vx);
        b.take(x - h * vy, y + h * vx);
        break;
      }
      case Kind::Box3:
        b.take(at(o.var("x")), at(o.var("y")));
        b.take(at(o.var("x")) + at(o.var("w")), at(o.var("y")) + at(o.var("d")));
        break;
    }
  }
  return b;
}

Verdict unknown(std::string reason, int components) {
  Verdict v;
  v.kind = VerdictKind::Unknown;
  v.reason = std::move(reason);
  v.provenance.components = components;
  return v;
}

}  // namespace

Verdict recombine(const ConstraintGraph& original, const DecompositionPlan& plan,
                  const std::vector<Verdict>& verdicts) {
  const int ncomp = (int)plan.components.size();
  for (const auto& v : verdicts)
    if (v.kind == VerdictKind::Inconsistent) {
      Verdict out = v;
      out.provenance.components = ncomp;
      return out;
    }
  for (const auto& v : verdicts)
    if (v.kind == VerdictKind::Unknown) {
      Verdict out = v;
      out.provenance.components = ncomp;
      return out;
    }

  Assignment w;
  for (const auto& v : verdicts) w.insert(v.witness.begin(), v.witness.end());

  auto move = [&](int c, const AffineTransform& t) {
    w = apply_transform(t, w, plan.components[c].graph.objects);
  };
  auto movable = [&](int c) {
    return plan.components[c].budget.has(TClass::Translate) &&
           plan.components[c].graph.groundings.empty();
  };

  // scatter everything linked by a disconnection along the x-axis
  std::set<int> scatter;
  for (const auto& e : plan.separators)
    if (e.formula.atom.name == "disconnected" || e.formula.atom.name == "discrete_from")
      for (int c : e.components) scatter.insert(c);
  if (!scatter.empty()) {
    Rat cursor;
    bool have_cursor = false;
    for (int c : scatter) {
      Box b = bounds(plan.components[c].graph, w);
      if (!b.init) continue;
      if (!have_cursor || b.hi_x > cursor) cursor = b.hi_x;
      have_cursor = true;
    }
    for (int c : scatter) {
      if (!movable(c)) continue;
      Box b = bounds(plan.components[c].graph, w);
      if (!b.init) continue;
      move(c, make_translate(cursor + 1 - b.lo_x, Rat(0), Rat(0)));
      cursor += 1 + (b.hi_x - b.lo_x);
    }
  }

  for (const auto& e : plan.separators) {
    const RelationAtom& a = e.formula.atom;
    if (a.name == "proper_part") {
      // shrink the part's component until it fits in the container's inscribed
      // disc, then centre it there
      int ci = plan.component_of(a.args[0]);
      const SpatialObject* part = original.find_object(a.args[0]);
      const SpatialObject* container = original.find_object(a.args[1]);
      Box b = bounds(plan.components[ci].graph, w);
      Rat span_x = b.hi_x - b.lo_x, span_y = b.hi_y - b.lo_y;
      Rat span = span_x > span_y ? span_x : span_y;
      Rat cw = w.at(container->var("w")), ch = w.at(container->var("h"));
      Rat s = std::min(cw, ch) / (8 * span);
      move(ci, make_uscale(s));
      Rat px = w.at(part->var("x")), py = w.at(part->var("y"));
      Rat pvx = w.at(part->var("vx")), pvy = w.at(part->var("vy"));
      Rat pw = w.at(part->var("w")), ph = w.at(part->var("h"));
      Rat pcx = px + (pw * pvx - ph * pvy) / 2, pcy = py + (pw * pvy + ph * pvx) / 2;
      Rat cx = w.at(container->var("x")), cy = w.at(container->var("y"));
      Rat cvx = w.at(container->var("vx")), cvy = w.at(container->var("vy"));
      Rat ccx = cx + (cw * cvx - ch * cvy) / 2, ccy = cy + (cw * cvy + ch * cvx) / 2;
      move(ci, make_translate(ccx - pcx, ccy - pcy));
    } else if (a.name == "left_of") {
      int ci = plan.component_of(a.args[0]);
      const SpatialObject* p = original.find_object(a.args[0]);
      const SpatialObject* s = original.find_object(a.args[1]);
      Rat ax = w.at(s->var("xa")), ay = w.at(s->var("ya"));
      Rat bx = w.at(s->var("xb")), by = w.at(s->var("yb"));
      Rat dx = bx - ax, dy = by - ay;
      // midpoint plus the left normal of a->b
      Rat tx = ax + dx / 2 - dy - w.at(p->var("x"));
      Rat ty = ay + dy / 2 + dx - w.at(p->var("y"));
      move(ci, make_translate(tx, ty));
    }
  }

  FreshGen fresh;
  Formula enc = encode_graph(original, fresh);
  auto ok = eval_ground(enc, w);
  if (!ok.has_value() || !*ok) ok = eval_approx(enc, w, 1e-9);
  Verdict out;
  out.provenance.components = ncomp;
  if (!ok.has_value())
    return unknown("assembled witness not decidable against the original encoding", ncomp);
  if (!*ok) return unknown("assembled witness failed the original encoding re-check", ncomp);
  out.kind = VerdictKind::Consistent;
  out.witness = std::move(w);
  return out;
}

}  // namespace qs
