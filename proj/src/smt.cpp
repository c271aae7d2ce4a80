#include "smt.hpp"

#include <poll.h>
#include <signal.h>
#include <stdlib.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>
#include <sstream>

namespace qs {

std::string default_solver_path() {
  const char* p = getenv("QS_SOLVER_PATH");
  return p ? p : "";
}

namespace {

std::string int_lit(const mpz_class& n) {
  if (n < 0) return "(- " + mpz_class(-n).get_str() + ")";
  return n.get_str();
}

std::string rat_lit(const Rat& r) {
  mpz_class num = r.get_num(), den = r.get_den();
  if (den == 1) return int_lit(num);
  std::string frac = "(/ " + mpz_class(abs(num)).get_str() + " " + den.get_str() + ")";
  return num < 0 ? "(- " + frac + ")" : frac;
}

std::string poly_smt(const Poly& p) {
  if (p.is_zero()) return "0";
  std::vector<std::string> terms;
  for (const auto& [mono, coeff] : p.terms()) {
    std::vector<std::string> factors;
    if (coeff != 1 || mono.exps.empty()) factors.push_back(rat_lit(coeff));
    for (const auto& [var, exp] : mono.exps)
      for (unsigned k = 0; k < exp; ++k) factors.push_back(var);
    if (factors.size() == 1) {
      terms.push_back(factors[0]);
    } else {
      std::string t = "(*";
      for (const auto& f : factors) t += " " + f;
      terms.push_back(t + ")");
    }
  }
  if (terms.size() == 1) return terms[0];
  std::string s = "(+";
  for (const auto& t : terms) s += " " + t;
  return s + ")";
}

std::string formula_smt(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::Atom: {
      std::string p = poly_smt(f.atom.lhs);
      switch (f.atom.rel) {
        case Cmp::Eq: return "(= " + p + " 0)";
        case Cmp::Ne: return "(not (= " + p + " 0))";
        case Cmp::Lt: return "(< " + p + " 0)";
        case Cmp::Le: return "(<= " + p + " 0)";
      }
      return "";
    }
    case Formula::Kind::Not:
      return "(not " + formula_smt(f.kids[0]) + ")";
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      if (f.kids.empty()) return f.kind == Formula::Kind::And ? "true" : "false";
      if (f.kids.size() == 1) return formula_smt(f.kids[0]);
      std::string s = f.kind == Formula::Kind::And ? "(and" : "(or";
      for (const auto& k : f.kids) s += " " + formula_smt(k);
      return s + ")";
    }
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
      std::string s = f.kind == Formula::Kind::Exists ? "(exists (" : "(forall (";
      for (std::size_t i = 0; i < f.bound.size(); ++i)
        s += std::string(i ? " " : "") + "(" + f.bound[i] + " Real)";
      return s + ") " + formula_smt(f.kids[0]) + ")";
    }
  }
  return "";
}

}  // namespace

std::string emit_smtlib(const Formula& f, bool quantified) {
  if (!quantified && has_quantifier(f))
    throw SmtError("quantified formula requires the NRA logic");
  std::ostringstream os;
  os << "(set-logic " << (quantified ? "NRA" : "QF_NRA") << ")\n";
  os << "(set-option :pp.decimal true)\n";
  os << "(set-option :pp.decimal_precision 20)\n";
  for (const auto& v : free_vars(f)) os << "(declare-const " << v << " Real)\n";
  os << "(assert " << formula_smt(f) << ")\n";
  os << "(check-sat)\n(get-model)\n";
  return os.str();
}

namespace {

std::vector<std::string> tokenize(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == '(' || c == ')') {
      if (!cur.empty()) out.push_back(std::move(cur)), cur.clear();
      out.push_back(std::string(1, c));
    } else if (isspace((unsigned char)c)) {
      if (!cur.empty()) out.push_back(std::move(cur)), cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::optional<Rat> parse_value(const std::vector<std::string>& t, std::size_t& i) {
  if (i >= t.size()) return std::nullopt;
  if (t[i] == "(") {
    std::string op = t[i + 1];
    i += 2;
    if (op == "-") {
      auto v = parse_value(t, i);
      if (!v || i >= t.size() || t[i] != ")") return std::nullopt;
      ++i;
      return Rat(-*v);
    }
    if (op == "/") {
      auto a = parse_value(t, i);
      auto b = parse_value(t, i);
      if (!a || !b || *b == 0 || i >= t.size() || t[i] != ")") return std::nullopt;
      ++i;
      return Rat(*a / *b);
    }
    return std::nullopt;  // root-obj or other algebraic forms
  }
  std::string lit = t[i++];
  if (!lit.empty() && lit.back() == '?') lit.pop_back();
  try {
    return parse_rational(lit);
  } catch (...) {
    return std::nullopt;
  }
}

Assignment parse_model(const std::string& out) {
  Assignment model;
  auto t = tokenize(out);
  for (std::size_t i = 0; i + 4 < t.size(); ++i) {
    if (t[i] != "define-fun") continue;
    std::string name = t[i + 1];
    std::size_t j = i + 2;
    // skip the argument list "( )" and the sort
    if (j + 2 < t.size() && t[j] == "(" && t[j + 1] == ")") j += 2;
    if (j < t.size() && t[j] == "Real") ++j;
    auto v = parse_value(t, j);
    if (v) model[name] = *v;
  }
  return model;
}

}  // namespace

SolverOutcome run_backend(const std::string& script, const BackendConfig& cfg) {
  SolverOutcome out;
  std::string solver = cfg.solver_path.empty() ? default_solver_path() : cfg.solver_path;
  if (solver.empty()) {
    out.kind = OutcomeKind::ProcessError;
    out.detail = "no solver configured (set --solver or QS_SOLVER_PATH)";
    return out;
  }

  std::string dir = cfg.keep_dir.empty() ? "/tmp" : cfg.keep_dir;
  std::string tmpl = dir + "/qs_XXXXXX.smt2";
  std::vector<char> path(tmpl.begin(), tmpl.end());
  path.push_back('\0');
  int sfd = mkstemps(path.data(), 5);
  if (sfd < 0) {
    out.kind = OutcomeKind::ProcessError;
    out.detail = std::string("cannot create script file: ") + strerror(errno);
    return out;
  }
  std::string script_path(path.data());
  if (write(sfd, script.data(), script.size()) != (ssize_t)script.size()) {
    close(sfd);
    out.kind = OutcomeKind::ProcessError;
    out.detail = "short write to script file";
    return out;
  }
  close(sfd);

  int fds[2];
  if (pipe(fds) != 0) {
    out.kind = OutcomeKind::ProcessError;
    out.detail = "pipe failed";
    return out;
  }
  auto start = std::chrono::steady_clock::now();
  pid_t pid = fork();
  if (pid == 0) {
    setpgid(0, 0);
    dup2(fds[1], 1);
    dup2(fds[1], 2);
    close(fds[0]);
    close(fds[1]);
    std::vector<char*> argv;
    argv.push_back(const_cast<char*>(solver.c_str()));
    for (const auto& a : cfg.extra_args) argv.push_back(const_cast<char*>(a.c_str()));
    argv.push_back(const_cast<char*>(script_path.c_str()));
    argv.push_back(nullptr);
    execv(solver.c_str(), argv.data());
    execvp(solver.c_str(), argv.data());
    _exit(127);
  }
  close(fds[1]);

  std::string output;
  bool timed_out = false;
  char buf[4096];
  for (;;) {
    double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!timed_out && elapsed > cfg.timeout_s) {
      kill(-pid, SIGKILL);
      kill(pid, SIGKILL);
      timed_out = true;
    }
    struct pollfd pfd{fds[0], POLLIN, 0};
    int pr = poll(&pfd, 1, 200);
    if (pr > 0) {
      ssize_t n = read(fds[0], buf, sizeof buf);
      if (n <= 0) break;
      output.append(buf, n);
    } else if (pr == 0) {
      continue;
    } else if (errno != EINTR) {
      break;
    }
  }
  close(fds[0]);
  int status = 0;
  waitpid(pid, &status, 0);
  out.duration_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (cfg.keep_dir.empty()) unlink(script_path.c_str());

  std::istringstream lines(output);
  std::string line, verdict;
  bool error_first = false;
  while (std::getline(lines, line)) {
    while (!line.empty() && isspace((unsigned char)line.back())) line.pop_back();
    if (line == "sat" || line == "unsat" || line == "unknown") {
      verdict = line;
      break;
    }
    if (line.rfind("(error", 0) == 0) {
      error_first = true;
      out.detail = line;
      break;
    }
  }

  if (error_first) {
    out.kind = OutcomeKind::ProcessError;
  } else if (verdict == "sat") {
    out.kind = OutcomeKind::Sat;
    out.model = parse_model(output);
  } else if (verdict == "unsat") {
    out.kind = OutcomeKind::Unsat;
  } else if (verdict == "unknown") {
    out.kind = OutcomeKind::Unknown;
    out.detail = "backend-unknown";
  } else if (timed_out) {
    out.kind = OutcomeKind::Timeout;
    out.detail = "timeout";
  } else {
    out.kind = OutcomeKind::ProcessError;
    out.detail = "no verdict; exit status " + std::to_string(status) +
                 (output.empty() ? "" : ("; output: " + output.substr(0, 300)));
  }
  return out;
}

namespace {

const char* cmp_str(Cmp c) {
  switch (c) {
    case Cmp::Eq: return "=";
    case Cmp::Ne: return "!=";
    case Cmp::Lt: return "<";
    case Cmp::Le: return "<=";
  }
  return "?";
}

void collect_conjuncts(const Formula& f, std::vector<const Formula*>& out) {
  if (f.kind == Formula::Kind::And) {
    for (const auto& k : f.kids) collect_conjuncts(k, out);
    return;
  }
  out.push_back(&f);
}

}  // namespace

WitnessCheck check_witness(const Assignment& model, const Formula& f, double tol) {
  WitnessCheck res;
  std::vector<const Formula*> leaves;
  collect_conjuncts(f, leaves);
  for (const Formula* leaf : leaves) {
    auto exact = eval_ground(*leaf, model);
    if (exact == true) continue;
    auto approx = eval_approx(*leaf, model, tol);
    if (approx == true) continue;
    if (leaf->kind == Formula::Kind::Atom)
      res.violations.push_back(leaf->atom.lhs.to_string() + " " + cmp_str(leaf->atom.rel) + " 0");
    else
      res.violations.push_back("compound or quantified subformula not satisfied");
  }
  res.verified = res.violations.empty();
  return res;
}

}  // namespace qs
