#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "model.hpp"
#include "symmetry.hpp"

namespace qs {

enum class RotMode { None, Pi, Full };

// A groundable position: variable names of one point's coordinates.
struct PointRef {
  std::string object;
  std::string x, y, z;  // z empty for 2D points
  std::string label;    // e.g. "centre of c1", "endpoint b of l"
};

struct Subcase {
  std::string guard;           // equality pattern among the case constants
  std::vector<Rat> constants;  // one value per coordinate restriction
};

// Which coordinate of which target point a case pins down.
struct CoordRestriction {
  int point;
  char coord;  // 'x', 'y' or 'z'
};

struct PruningCase {
  std::string id;
  int arity = 1;      // number of position points consumed
  int dimension = 2;  // 2 or 3
  RotMode rot = RotMode::None;
  TSet cost;
  std::vector<CoordRestriction> restrictions;
  std::vector<Subcase> subcases;
  bool grounds_radius = false;  // also grounds the first target's radius to 1
  bool frame_target = false;    // targets one rectangle: grounds its corner and v=(1,0)
  bool grounds_width = false;   // frame case with scale spent: also grounds w=1
};

// Table 2 rows a-i plus the extensions: seg2 (segment endpoints via
// translate+rotate, keeping scale), j3d (one 3D point triple via 3D
// translate+rotate, radius normalized by uniform scale), frame2/frame2s
// (rectangle frame grounding, without/with uniform scale).
const std::vector<PruningCase>& catalog();
const PruningCase* find_case(const std::string& id);

// Cases whose traded transformations are all still available and whose
// dimension matches.
std::vector<const PruningCase*> applicable_cases(const TransformBudget& budget, int dimension);

struct PruneError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Deterministic target choice: pairs of distinct circles sharing a boundary
// point first, then points by descending constraint involvement, declaration
// order breaking ties. nullopt when the graph lacks enough ungrounded points.
std::optional<std::vector<PointRef>> select_targets(const ConstraintGraph& g,
                                                    const PruningCase& c);

struct PruningPlan {
  const PruningCase* pruning_case = nullptr;
  std::vector<PointRef> targets;
  std::vector<ConstraintGraph> subgraphs;  // one per subcase, groundings added
};

// Steps 2-4 of the pruning algorithm: one graph copy per subcase with the
// restricted coordinates grounded. Throws PruneError when a restricted
// coordinate is already grounded.
PruningPlan expand_subcases(const ConstraintGraph& g, const PruningCase& c,
                            const std::vector<PointRef>& targets);

struct CaseVerification {
  bool verified = true;
  std::string counterexample;
};

// Randomized numeric replacement for the paper's quantifier-elimination
// verification: samples source configurations matching each subcase's
// coincidence pattern and solves for a transformation built only from the
// case's traded classes that maps them onto the subcase constants
// (tolerance 1e-9).
CaseVerification verify_case_numeric(const PruningCase& c, int trials, unsigned seed);

}  // namespace qs
