#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>

#include "encoder.hpp"
#include "smt.hpp"

using namespace qs;

namespace {

Formula var_gt0(const std::string& v) {
  return Formula::mk_atom(-Poly::var(v), Cmp::Lt);  // v > 0  as  -v < 0
}

// squared distance of (x,y,z) to a fixed centre equals rhs
Formula sphere_eq(Rat cx, Rat cy, Rat cz, Rat rhs) {
  Poly x = Poly::var("x") - Poly::constant(cx);
  Poly y = Poly::var("y") - Poly::constant(cy);
  Poly z = Poly::var("z") - Poly::constant(cz);
  return Formula::mk_atom(x * x + y * y + z * z - Poly::constant(rhs), Cmp::Eq);
}

BackendConfig config(double timeout = 60) {
  BackendConfig cfg;
  cfg.timeout_s = timeout;
  return cfg;
}

}  // namespace

TEST_CASE("script emission is deterministic and sorted") {
  Formula f = Formula::mk_and({var_gt0("b"), var_gt0("a")});
  std::string s1 = emit_smtlib(f, false);
  std::string s2 = emit_smtlib(f, false);
  CHECK(s1 == s2);
  CHECK(s1.find("(set-logic QF_NRA)") != std::string::npos);
  CHECK(s1.find("(declare-const a Real)") < s1.find("(declare-const b Real)"));
  CHECK(s1.find("(check-sat)") != std::string::npos);
}

TEST_CASE("exact rational literals") {
  Poly p = Poly::var("x") * Poly::constant(Rat(-3, 7)) + Poly::constant(Rat(5, 2));
  std::string s = emit_smtlib(Formula::mk_atom(p, Cmp::Le), false);
  CHECK(s.find("(- (/ 3 7))") != std::string::npos);
  CHECK(s.find("(/ 5 2)") != std::string::npos);
}

TEST_CASE("quantifiers demand the quantified logic") {
  Formula q = Formula::mk_forall({"y"}, var_gt0("y"));
  CHECK_THROWS_AS(emit_smtlib(q, false), SmtError);
  std::string s = emit_smtlib(q, true);
  CHECK(s.find("(set-logic NRA)") != std::string::npos);
  CHECK(s.find("(forall ((y Real))") != std::string::npos);
}

TEST_CASE("satisfiable atom round-trips through the backend") {
  SolverOutcome out = run_backend(emit_smtlib(var_gt0("x"), false), config());
  REQUIRE(out.kind == OutcomeKind::Sat);
  REQUIRE(out.model.count("x"));
  CHECK(out.model.at("x") > 0);
}

TEST_CASE("empty conjunction is trivially satisfiable") {
  SolverOutcome out = run_backend(emit_smtlib(Formula::top(), false), config());
  CHECK(out.kind == OutcomeKind::Sat);
}

TEST_CASE("four sphere constraints on three coordinates are unsatisfiable") {
  // unit spheres around four non-cospherical centres; a fifth touching all
  // of them would need dist^2 = 4 to each centre
  Formula f = Formula::mk_and({
      sphere_eq(0, 0, 0, 4),
      sphere_eq(2, 0, 0, 4),
      sphere_eq(1, 2, 0, 4),
      sphere_eq(1, 1, 2, 4),
  });
  CHECK(free_vars(f).size() == 3);
  SolverOutcome out = run_backend(emit_smtlib(f, false), config());
  CHECK(out.kind == OutcomeKind::Unsat);
}

TEST_CASE("irrational model values parse as close approximations") {
  Poly x = Poly::var("x");
  Formula f = Formula::mk_and({
      Formula::mk_atom(x * x - Poly::constant(2), Cmp::Eq),
      var_gt0("x"),
  });
  SolverOutcome out = run_backend(emit_smtlib(f, false), config());
  REQUIRE(out.kind == OutcomeKind::Sat);
  REQUIRE(out.model.count("x"));
  double v = out.model.at("x").get_d();
  CHECK(std::abs(v - 1.4142135623730951) < 1e-9);

  WitnessCheck wc = check_witness(out.model, f, 1e-9);
  CHECK(wc.verified);
}

TEST_CASE("negative rational model values parse exactly") {
  Poly x = Poly::var("x");
  Formula f = Formula::mk_and({
      Formula::mk_atom(x + x + Poly::constant(1), Cmp::Eq),  // x = -1/2
  });
  SolverOutcome out = run_backend(emit_smtlib(f, false), config());
  REQUIRE(out.kind == OutcomeKind::Sat);
  CHECK(out.model.at("x") == Rat(-1, 2));
}

TEST_CASE("timeouts kill the backend process") {
  std::string slow = "/tmp/qs_slow_solver.sh";
  {
    std::ofstream f(slow);
    f << "#!/bin/sh\nsleep 30\n";
  }
  CHECK(system(("chmod +x " + slow).c_str()) == 0);
  BackendConfig cfg = config(1);
  cfg.solver_path = slow;
  SolverOutcome out = run_backend("(check-sat)\n", cfg);
  CHECK(out.kind == OutcomeKind::Timeout);
  CHECK(out.duration_s < 10);
}

TEST_CASE("a solver that produces no verdict is a process error") {
  BackendConfig cfg = config();
  cfg.solver_path = "/bin/false";
  SolverOutcome out = run_backend("(check-sat)\n", cfg);
  CHECK(out.kind == OutcomeKind::ProcessError);

  BackendConfig none = config();
  none.solver_path = "";
  setenv("QS_SOLVER_PATH_SAVED", getenv("QS_SOLVER_PATH") ? getenv("QS_SOLVER_PATH") : "", 1);
  unsetenv("QS_SOLVER_PATH");
  SolverOutcome missing = run_backend("(check-sat)\n", none);
  CHECK(missing.kind == OutcomeKind::ProcessError);
  setenv("QS_SOLVER_PATH", getenv("QS_SOLVER_PATH_SAVED"), 1);
}

TEST_CASE("witness checking flags perturbed models") {
  ConstraintGraph g;
  g.objects.push_back({"a", Kind::Circle2});
  g.objects.push_back({"b", Kind::Circle2});
  g.formulas.push_back(EdgeFormula::mk_atom({"touches", {"a", "b"}}));
  FreshGen fresh;
  Formula enc = encode_graph(g, fresh);

  Assignment w;
  const SpatialObject *a = g.find_object("a"), *b = g.find_object("b");
  w[a->var("x")] = 0;
  w[a->var("y")] = 0;
  w[a->var("r")] = 1;
  w[b->var("x")] = 2;
  w[b->var("y")] = 0;
  w[b->var("r")] = 1;
  CHECK(check_witness(w, enc).verified);

  w[b->var("r")] = Rat(11, 10);
  WitnessCheck bad = check_witness(w, enc);
  CHECK(!bad.verified);
  CHECK(!bad.violations.empty());

  CHECK(check_witness({}, Formula::top()).verified);
}
