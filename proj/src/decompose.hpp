#pragma once

#include <vector>

#include "model.hpp"
#include "symmetry.hpp"

namespace qs {

// Separators relate objects that can be placed relative to each other after
// solving each side (disconnection, proper parthood, sidedness of a segment).
// Couplers relate components only through lengths or sizes and are solved
// jointly while each side keeps its own positional frame. Binders force their
// arguments into one component.
enum class EdgeRole { Separator, Coupler, Binder };

EdgeRole separable(const ConstraintGraph& g, const EdgeFormula& f);

struct Component {
  ConstraintGraph graph;
  TransformBudget budget;
};

// An edge whose arguments span several components, kept out of the component
// graphs and discharged by recombination (separators) or by conjoining the
// touched components into one query (couplers).
struct CrossEdge {
  EdgeFormula formula;
  std::vector<int> components;
};

struct DecompositionPlan {
  std::vector<Component> components;
  std::vector<CrossEdge> separators;
  std::vector<CrossEdge> couplers;  // shared length links: the coupled variables stay free

  // component index holding the given object
  int component_of(const std::string& object_id) const;
};

// Connected components of the binder-edge graph. Separator edges demand that
// their movable side's budget can realize them afterwards (translation, plus
// uniform scaling for proper parthood); when it cannot, the edge is demoted to
// a binder. Components touched by a cross coupler keep their scale variables
// free, so scale classes are removed from their budgets.
DecompositionPlan decompose(const ConstraintGraph& g);

// Joins per-component verdicts: Inconsistent dominates, then Unknown. When
// every component is consistent the witnesses are assembled and the separators
// realized post hoc (translating components apart, shrinking proper parts into
// their containers); the assembled witness is re-checked against the original
// graph's encoding and a failure downgrades to Unknown.
Verdict recombine(const ConstraintGraph& original, const DecompositionPlan& plan,
                  const std::vector<Verdict>& verdicts);

}  // namespace qs
