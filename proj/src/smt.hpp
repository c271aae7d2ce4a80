#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "poly.hpp"

namespace qs {

struct SmtError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BackendConfig {
  std::string solver_path;              // falls back to $QS_SOLVER_PATH
  std::vector<std::string> extra_args;
  double timeout_s = 600;
  std::string keep_dir;                 // retain scripts here when nonempty
};

enum class OutcomeKind { Sat, Unsat, Unknown, Timeout, ProcessError };

struct SolverOutcome {
  OutcomeKind kind = OutcomeKind::Unknown;
  Assignment model;    // Sat only; decimal approximations parsed exactly
  std::string detail;  // unknown reason / error excerpt
  double duration_s = 0;
};

std::string default_solver_path();

// Deterministic SMT-LIB2 script: set-logic (NRA when `quantified`, else
// QF_NRA), sorted declare-const lines, one assert with exact rational
// literals. Throws SmtError for a quantified formula under QF_NRA.
std::string emit_smtlib(const Formula& f, bool quantified);

// Runs the script through the backend subprocess, enforcing the timeout by
// killing the process group. Stdout is parsed for the verdict and, on sat,
// the model values (integers, decimals with an optional trailing '?',
// unary minus, and division).
SolverOutcome run_backend(const std::string& script, const BackendConfig& cfg);

struct WitnessCheck {
  bool verified = true;
  std::vector<std::string> violations;
};

// Exact evaluation first, floating-point with absolute tolerance as the
// fallback for approximated algebraic values; every failing conjunct is
// reported.
WitnessCheck check_witness(const Assignment& model, const Formula& f, double tol = 1e-9);

}  // namespace qs
