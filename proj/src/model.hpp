#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rational.hpp"

namespace qs {

enum class Kind { Point2, Segment2, Rectangle2, Circle2, Point3, Sphere3, Box3 };

const char* kind_name(Kind k);
int kind_arity(Kind k);
int kind_dimension(Kind k);  // 2 or 3

// Parameter slot names per kind, in declaration order. The variable bound to
// slot s of object id is "<s>_<id>".
const std::vector<std::string>& kind_slots(Kind k);
std::string param_var(const std::string& slot, const std::string& id);

struct SpatialObject {
  std::string id;
  Kind kind;
  bool square = false;  // Rectangle2 declared as a square (adds w = h)
  bool cube = false;    // Box3 declared as a cube (adds w = d = h)

  std::vector<std::string> param_vars() const;
  std::string var(const std::string& slot) const { return param_var(slot, id); }
};

enum class RelClass {
  Topology,
  Mereology,
  Coincidence,
  Collinearity,
  RelativeOrientation,
  Parallelism,
  Perpendicularity,
  Distance,
};

const char* rel_class_name(RelClass c);

struct RelationSignature {
  std::vector<Kind> args;
  RelClass cls;
};

// name -> overloads. Total map: every supported relation has a class.
const std::map<std::string, std::vector<RelationSignature>>& relation_table();

struct RelationAtom {
  std::string name;
  std::vector<std::string> args;  // object ids
};

struct EdgeFormula {
  enum class Kind { Atom, And, Or, Not };
  Kind kind = Kind::Atom;
  RelationAtom atom;
  std::vector<EdgeFormula> kids;

  static EdgeFormula mk_atom(RelationAtom a);
  static EdgeFormula mk_and(std::vector<EdgeFormula> kids);
  static EdgeFormula mk_or(std::vector<EdgeFormula> kids);
  static EdgeFormula mk_not(EdgeFormula f);

  void collect_atoms(std::vector<const RelationAtom*>& out) const;
};

// Immutable after construction; all solver-side mutation copies the graph.
struct ConstraintGraph {
  std::vector<SpatialObject> objects;  // declaration order
  std::vector<EdgeFormula> formulas;
  Assignment groundings;  // variable -> exact rational

  const SpatialObject* find_object(const std::string& id) const;
  int dimension() const;  // 3 if any 3D kind present, else 2
};

// Empty iff every atom is well-typed over declared objects.
std::vector<std::string> validate_graph(const ConstraintGraph& g);

// Resolves an atom against the relation table and the graph's objects.
// Returns the matching signature, or nullopt for ill-typed atoms.
std::optional<RelationSignature> resolve_atom(const ConstraintGraph& g, const RelationAtom& a);

// De Morgan push-down; Not survives only directly above atoms.
EdgeFormula to_nnf(const EdgeFormula& f);

// All Var params minus grounded ones, in deterministic (declaration) order.
std::vector<std::string> free_vars(const ConstraintGraph& g);

enum class VerdictKind { Consistent, Inconsistent, Unknown };

struct Provenance {
  std::string mode;          // "naive" | "pruned"
  std::string pruning_case;  // empty when none applied
  int subcases = 0;
  int components = 1;
  int vars_before = 0;
  int vars_after = 0;
  double time_s = 0.0;
};

struct Verdict {
  VerdictKind kind = VerdictKind::Unknown;
  Assignment witness;        // Consistent only; re-checked against the encoding
  std::string reason;        // Unknown: timeout | backend-unknown | backend-error detail
  Provenance provenance;
};

}  // namespace qs
