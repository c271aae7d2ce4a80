#pragma once

#include <stdexcept>
#include <string>

#include "model.hpp"
#include "poly.hpp"

namespace qs {

struct EncodeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Polarity { Positive, Negative };

// Deterministic fresh-name source for witness points and quantified helper
// objects. Names carry the running atom index so identical graphs encode to
// identical scripts.
class FreshGen {
 public:
  int next_atom() { return atom_index_++; }
  std::string var(const std::string& stem, int atom, int k) {
    return stem + "_" + std::to_string(atom) + "_" + std::to_string(k);
  }

 private:
  int atom_index_ = 0;
};

// The Table 1 / Eq. 1 compilation of one relation atom. Negative polarity
// emits the complement (universal quantifiers replace witness existentials).
Formula encode_atom(const ConstraintGraph& g, const RelationAtom& a, Polarity pol, FreshGen& fresh);

// Conjunction of all encoded edge formulas (after NNF) plus per-object
// well-formedness constraints plus grounding equalities.
Formula encode_graph(const ConstraintGraph& g, FreshGen& fresh);

// Encodes an arbitrary edge formula against g's objects (used for entailment
// conclusions; shares the fresh generator with the premise encoding).
Formula encode_edge_formula(const ConstraintGraph& g, const EdgeFormula& f, FreshGen& fresh);

// Well-formedness side conditions of a single object (0<r, 0<w,h, unit
// direction, distinct endpoints, square/cube ties).
Formula wellformedness(const SpatialObject& o);

// The section-4.1 non-square intersection condition for two square-constrained
// rectangles (partially_overlaps plus misalignment-or-unequal-extent).
Formula encode_nonsquare_intersection(const ConstraintGraph& g, const std::string& a,
                                      const std::string& b, FreshGen& fresh);

}  // namespace qs
