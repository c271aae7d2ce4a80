#include "model.hpp"

#include <stdexcept>
#include <utility>

namespace qs {

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::Point2: return "point";
    case Kind::Segment2: return "segment";
    case Kind::Rectangle2: return "rectangle";
    case Kind::Circle2: return "circle";
    case Kind::Point3: return "point3";
    case Kind::Sphere3: return "sphere";
    case Kind::Box3: return "box";
  }
  return "?";
}

int kind_arity(Kind k) { return static_cast<int>(kind_slots(k).size()); }

int kind_dimension(Kind k) {
  switch (k) {
    case Kind::Point3:
    case Kind::Sphere3:
    case Kind::Box3: return 3;
    default: return 2;
  }
}

const std::vector<std::string>& kind_slots(Kind k) {
  static const std::vector<std::string> point2 = {"x", "y"};
  static const std::vector<std::string> segment2 = {"xa", "ya", "xb", "yb"};
  static const std::vector<std::string> rect2 = {"x", "y", "vx", "vy", "w", "h"};
  static const std::vector<std::string> circle2 = {"x", "y", "r"};
  static const std::vector<std::string> point3 = {"x", "y", "z"};
  static const std::vector<std::string> sphere3 = {"x", "y", "z", "r"};
  static const std::vector<std::string> box3 = {"x", "y", "z", "w", "d", "h"};
  switch (k) {
    case Kind::Point2: return point2;
    case Kind::Segment2: return segment2;
    case Kind::Rectangle2: return rect2;
    case Kind::Circle2: return circle2;
    case Kind::Point3: return point3;
    case Kind::Sphere3: return sphere3;
    case Kind::Box3: return box3;
  }
  throw std::logic_error("bad kind");
}

std::string param_var(const std::string& slot, const std::string& id) { return slot + "_" + id; }

std::vector<std::string> SpatialObject::param_vars() const {
  std::vector<std::string> out;
  for (const auto& s : kind_slots(kind)) out.push_back(param_var(s, id));
  return out;
}

const char* rel_class_name(RelClass c) {
  switch (c) {
    case RelClass::Topology: return "topology";
    case RelClass::Mereology: return "mereology";
    case RelClass::Coincidence: return "coincidence";
    case RelClass::Collinearity: return "collinearity";
    case RelClass::RelativeOrientation: return "relative-orientation";
    case RelClass::Parallelism: return "parallelism";
    case RelClass::Perpendicularity: return "perpendicularity";
    case RelClass::Distance: return "distance";
  }
  return "?";
}

const std::map<std::string, std::vector<RelationSignature>>& relation_table() {
  using K = Kind;
  using C = RelClass;
  static const std::map<std::string, std::vector<RelationSignature>> table = {
      // point/segment orientation
      {"left_of", {{{K::Point2, K::Segment2}, C::RelativeOrientation}}},
      {"right_of", {{{K::Point2, K::Segment2}, C::RelativeOrientation}}},
      {"right_or_collinear", {{{K::Point2, K::Segment2}, C::RelativeOrientation}}},
      {"left_or_collinear", {{{K::Point2, K::Segment2}, C::RelativeOrientation}}},
      {"collinear", {{{K::Point2, K::Segment2}, C::Collinearity}}},
      {"collinear_pts", {{{K::Point2, K::Point2, K::Point2}, C::Collinearity}}},
      // segment/segment
      {"parallel", {{{K::Segment2, K::Segment2}, C::Parallelism}}},
      {"perpendicular", {{{K::Segment2, K::Segment2}, C::Perpendicularity}}},
      // coincidence
      {"coincident",
       {{{K::Point2, K::Segment2}, C::Coincidence}, {{K::Point2, K::Circle2}, C::Coincidence}}},
      {"coincident_pt", {{{K::Point2, K::Point2}, C::Coincidence}}},
      {"centre", {{{K::Point2, K::Circle2}, C::Coincidence}}},
      // point/rectangle
      {"inside", {{{K::Point2, K::Rectangle2}, C::Coincidence}, {{K::Box3, K::Box3}, C::Topology}}},
      {"intersects", {{{K::Point2, K::Rectangle2}, C::Coincidence}}},
      {"boundary", {{{K::Point2, K::Rectangle2}, C::Coincidence}}},
      {"outside", {{{K::Point2, K::Rectangle2}, C::Coincidence}}},
      // rectangle/rectangle
      {"concentric", {{{K::Rectangle2, K::Rectangle2}, C::Coincidence}}},
      {"aligned", {{{K::Rectangle2, K::Rectangle2}, C::Coincidence}}},
      {"covertex", {{{K::Rectangle2, K::Rectangle2}, C::Coincidence}}},
      {"part_of", {{{K::Rectangle2, K::Rectangle2}, C::Mereology}}},
      {"proper_part", {{{K::Rectangle2, K::Rectangle2}, C::Mereology}}},
      {"boundary_part_of", {{{K::Rectangle2, K::Rectangle2}, C::Mereology}}},
      {"equals", {{{K::Rectangle2, K::Rectangle2}, C::Mereology}}},
      {"discrete_from", {{{K::Rectangle2, K::Rectangle2}, C::Topology}}},
      {"partially_overlaps", {{{K::Rectangle2, K::Rectangle2}, C::Topology}}},
      {"nonsquare_intersection", {{{K::Rectangle2, K::Rectangle2}, C::Topology}}},
      {"aligned_concentric", {{{K::Rectangle2, K::Rectangle2}, C::Topology}}},
      {"boundary_concentric", {{{K::Rectangle2, K::Rectangle2}, C::Topology}}},
      // circles
      {"touches",
       {{{K::Circle2, K::Circle2}, C::Topology}, {{K::Sphere3, K::Sphere3}, C::Topology}}},
      {"disconnected",
       {{{K::Circle2, K::Circle2}, C::Topology},
        {{K::Sphere3, K::Sphere3}, C::Topology},
        {{K::Box3, K::Box3}, C::Topology}}},
      {"same_radius",
       {{{K::Circle2, K::Circle2}, C::Distance}, {{K::Sphere3, K::Sphere3}, C::Distance}}},
      // distance couplings
      {"same_length", {{{K::Segment2, K::Segment2}, C::Distance}}},
      {"dist_eq", {{{K::Point2, K::Point2, K::Segment2}, C::Distance}}},
      // angle bisection conclusion: midpoint of (a,b) collinear with (p, pc)
      {"bisects", {{{K::Point2, K::Point2, K::Point2, K::Point2}, C::Collinearity}}},
  };
  return table;
}

EdgeFormula EdgeFormula::mk_atom(RelationAtom a) {
  EdgeFormula f;
  f.kind = Kind::Atom;
  f.atom = std::move(a);
  return f;
}

EdgeFormula EdgeFormula::mk_and(std::vector<EdgeFormula> kids) {
  EdgeFormula f;
  f.kind = Kind::And;
  f.kids = std::move(kids);
  return f;
}

EdgeFormula EdgeFormula::mk_or(std::vector<EdgeFormula> kids) {
  EdgeFormula f;
  f.kind = Kind::Or;
  f.kids = std::move(kids);
  return f;
}

EdgeFormula EdgeFormula::mk_not(EdgeFormula g) {
  EdgeFormula f;
  f.kind = Kind::Not;
  f.kids.push_back(std::move(g));
  return f;
}

void EdgeFormula::collect_atoms(std::vector<const RelationAtom*>& out) const {
  if (kind == Kind::Atom) {
    out.push_back(&atom);
    return;
  }
  for (const auto& k : kids) k.collect_atoms(out);
}

const SpatialObject* ConstraintGraph::find_object(const std::string& id) const {
  for (const auto& o : objects)
    if (o.id == id) return &o;
  return nullptr;
}

int ConstraintGraph::dimension() const {
  for (const auto& o : objects)
    if (kind_dimension(o.kind) == 3) return 3;
  return 2;
}

std::optional<RelationSignature> resolve_atom(const ConstraintGraph& g, const RelationAtom& a) {
  auto it = relation_table().find(a.name);
  if (it == relation_table().end()) return std::nullopt;
  for (const auto& sig : it->second) {
    if (sig.args.size() != a.args.size()) continue;
    bool ok = true;
    for (std::size_t i = 0; i < sig.args.size(); ++i) {
      const SpatialObject* o = g.find_object(a.args[i]);
      if (!o || o->kind != sig.args[i]) {
        ok = false;
        break;
      }
    }
    if (ok) return sig;
  }
  return std::nullopt;
}

namespace {

std::string atom_to_string(const RelationAtom& a) {
  std::string s = a.name + "(";
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (i) s += ",";
    s += a.args[i];
  }
  return s + ")";
}

}  // namespace

std::vector<std::string> validate_graph(const ConstraintGraph& g) {
  std::vector<std::string> diags;
  std::set<std::string> ids;
  for (const auto& o : g.objects) {
    if (!ids.insert(o.id).second) diags.push_back("duplicate object id: " + o.id);
  }
  for (const auto& f : g.formulas) {
    std::vector<const RelationAtom*> atoms;
    f.collect_atoms(atoms);
    for (const RelationAtom* a : atoms) {
      auto it = relation_table().find(a->name);
      if (it == relation_table().end()) {
        diags.push_back("unknown relation '" + a->name + "' in " + atom_to_string(*a));
        continue;
      }
      bool missing = false;
      for (const auto& arg : a->args) {
        if (!g.find_object(arg)) {
          diags.push_back("unknown object '" + arg + "' in " + atom_to_string(*a));
          missing = true;
        }
      }
      if (missing) continue;
      if (!resolve_atom(g, *a)) {
        diags.push_back("kind mismatch: no signature of '" + a->name + "' matches " +
                        atom_to_string(*a));
      }
    }
  }
  std::set<std::string> declared;
  for (const auto& o : g.objects)
    for (const auto& v : o.param_vars()) declared.insert(v);
  for (const auto& [v, q] : g.groundings) {
    if (!declared.count(v)) diags.push_back("grounding for unknown variable: " + v);
  }
  return diags;
}

EdgeFormula to_nnf(const EdgeFormula& f) {
  struct Impl {
    static EdgeFormula run(const EdgeFormula& f, bool neg) {
      switch (f.kind) {
        case EdgeFormula::Kind::Atom:
          return neg ? EdgeFormula::mk_not(EdgeFormula::mk_atom(f.atom))
                     : EdgeFormula::mk_atom(f.atom);
        case EdgeFormula::Kind::Not:
          return run(f.kids[0], !neg);
        case EdgeFormula::Kind::And:
        case EdgeFormula::Kind::Or: {
          bool is_and = (f.kind == EdgeFormula::Kind::And) != neg;
          std::vector<EdgeFormula> kids;
          for (const auto& k : f.kids) kids.push_back(run(k, neg));
          return is_and ? EdgeFormula::mk_and(std::move(kids))
                        : EdgeFormula::mk_or(std::move(kids));
        }
      }
      throw std::logic_error("bad edge formula");
    }
  };
  return Impl::run(f, false);
}

std::vector<std::string> free_vars(const ConstraintGraph& g) {
  std::vector<std::string> out;
  for (const auto& o : g.objects)
    for (const auto& v : o.param_vars())
      if (!g.groundings.count(v)) out.push_back(v);
  return out;
}

}  // namespace qs
