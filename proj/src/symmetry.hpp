#pragma once

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "model.hpp"
#include "rational.hpp"

namespace qs {

enum class TClass { Translate, Rotate, UniformScale, NonUniformScale, Reflect };

const char* tclass_name(TClass c);
using TSet = std::set<TClass>;
TSet full_tset();

// Each class can be traded for parameter restrictions at most once per
// subgraph; `spend` moves a class from available to spent.
struct TransformBudget {
  TSet available;
  TSet spent;

  bool has(TClass c) const { return available.count(c) > 0; }
  bool spend(TClass c) {
    if (!available.erase(c)) return false;
    spent.insert(c);
    return true;
  }
};

// Transformation classes preserving a relation of the given class over the
// given argument kinds. Class rules: relative orientation loses Reflect;
// perpendicularity and distance lose NonUniformScale. Shape closure: circles,
// spheres, and rectangles are not closed under non-uniform scaling
// (axis-aligned boxes are); axis-aligned boxes are not closed under rotation.
TSet sym_of_relation(RelClass cls, const std::vector<Kind>& kinds);

// Intersection over every atom in the graph; empty graph keeps the full set.
TransformBudget sym_of_graph(const ConstraintGraph& g);

struct TransformError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Affine map x -> Qx + t with exact rational entries. Q acts on the xy-plane;
// z is scaled by qz and shifted by tz (rotations are about the z-axis).
struct AffineTransform {
  TClass cls = TClass::Translate;
  Rat q11 = 1, q12 = 0, q21 = 0, q22 = 1;
  Rat qz = 1;
  Rat tx = 0, ty = 0, tz = 0;
};

AffineTransform make_translate(const Rat& tx, const Rat& ty, const Rat& tz = Rat(0));
// (c, s) must be a rational point on the unit circle
AffineTransform make_rotate(const Rat& c, const Rat& s);
AffineTransform make_uscale(const Rat& k);  // k > 0
AffineTransform make_nuscale(const Rat& sx, const Rat& sy, const Rat& sz = Rat(1));
// axis 0: x -> -x (horizontal reflection), axis 1: y -> -y
AffineTransform make_reflect(int axis);

// Composition within one class (two translations, two rotations, two scales);
// nullopt for mixed classes or reflections.
std::optional<AffineTransform> compose(const AffineTransform& t2, const AffineTransform& t1);

// Maps every object's parameter block through T. Throws TransformError when
// the class does not keep some object's kind closed (non-uniform scaling of
// circles, spheres, or rectangles; rotation of boxes).
Assignment apply_transform(const AffineTransform& t, const Assignment& config,
                           const std::vector<SpatialObject>& objects);

struct PreservationResult {
  bool supported = true;   // false when the encoding cannot be evaluated directly
  bool applicable = true;  // false when the class is incompatible with the kinds
  bool preserved = true;
  Assignment counterexample;
  AffineTransform transform;
  std::string note;
};

// Samples random configurations (alternating with constructive satisfying
// instances) and random transforms of the class, and checks that the
// relation's truth value is invariant. Exact rational evaluation throughout.
PreservationResult check_preservation(const std::string& relation,
                                      const std::vector<Kind>& kinds, TClass cls, int trials,
                                      unsigned seed);

}  // namespace qs
