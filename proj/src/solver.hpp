#pragma once

#include <map>
#include <string>

#include "decompose.hpp"
#include "model.hpp"
#include "pruner.hpp"
#include "smt.hpp"

namespace qs {

enum class SolveMode { Naive, Pruned };

// Union-find over the top-level equality conjuncts of an encoding
// (x = y and x = c patterns, which groundings and same-size couplings
// produce). The reduced formula mentions only class representatives; the
// substitution maps reconstruct full witnesses from backend models.
struct EqProp {
  Formula reduced;
  std::map<std::string, std::string> renamed;  // var -> representative
  Assignment constants;                        // var -> pinned value
};

EqProp propagate_equalities(const Formula& f);

// Completes a backend model into an assignment over the original encoding's
// variables using the recorded substitutions.
Assignment reconstruct_witness(const Assignment& model, const EqProp& eq);

// Step 5a: consistency of the graph. Naive mode discharges the direct
// encoding; pruned mode decomposes, trades each component's symmetries for
// one pruning case, expands the subcases, and recombines. Every Sat model is
// re-checked against the encoding before a Consistent verdict is issued.
Verdict decide_consistency(const ConstraintGraph& g, SolveMode mode, const BackendConfig& cfg);

// Step 5b: entailment of the conclusion from the graph. Entailed iff every
// subcase of (premises and not conclusion) is unsatisfiable; reported as
// Consistent. A satisfiable subcase reports Inconsistent with the
// countermodel. Pruning budgets intersect the conclusion's symmetries, and no
// decomposition is applied.
Verdict decide_sufficiency(const ConstraintGraph& g, const EdgeFormula& conclusion,
                           SolveMode mode, const BackendConfig& cfg);

}  // namespace qs
