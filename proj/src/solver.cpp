#include "solver.hpp"

#include <chrono>
#include <functional>
#include <numeric>

#include "encoder.hpp"

namespace qs {

namespace {

void collect_conjuncts(const Formula& f, std::vector<const Formula*>& out) {
  if (f.kind == Formula::Kind::And) {
    for (const auto& k : f.kids) collect_conjuncts(k, out);
    return;
  }
  out.push_back(&f);
}

// matches x - y = 0 and k*x + c = 0 equality conjuncts
struct EqLink {
  std::string a, b;  // b empty: a pinned to value
  Rat value;
};

std::optional<EqLink> match_equality(const PolyAtom& at) {
  if (at.rel != Cmp::Eq) return std::nullopt;
  std::string v1, v2;
  Rat k1, k2, c0;
  for (const auto& [mono, coeff] : at.lhs.terms()) {
    if (mono.exps.empty()) {
      c0 = coeff;
      continue;
    }
    if (mono.exps.size() != 1 || mono.exps.begin()->second != 1) return std::nullopt;
    if (v1.empty()) {
      v1 = mono.exps.begin()->first;
      k1 = coeff;
    } else if (v2.empty()) {
      v2 = mono.exps.begin()->first;
      k2 = coeff;
    } else {
      return std::nullopt;
    }
  }
  if (v1.empty()) return std::nullopt;
  if (v2.empty()) return EqLink{v1, "", Rat(-c0 / k1)};
  if (c0 == 0 && k1 == -k2) return EqLink{v1, v2, Rat(0)};
  return std::nullopt;
}

struct VarUf {
  std::map<std::string, std::string> parent;
  std::string find(std::string v) {
    if (!parent.count(v)) parent[v] = v;
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  }
  void unite(const std::string& a, const std::string& b) {
    std::string ra = find(a), rb = find(b);
    if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
  }
};

}  // namespace

EqProp propagate_equalities(const Formula& f) {
  std::vector<const Formula*> conj;
  collect_conjuncts(f, conj);

  VarUf uf;
  std::map<std::string, Rat> pinned;  // root -> value (first wins)
  std::vector<EqLink> pins;
  for (const Formula* c : conj) {
    if (c->kind != Formula::Kind::Atom) continue;
    auto link = match_equality(c->atom);
    if (!link) continue;
    if (link->b.empty())
      pins.push_back(*link);
    else
      uf.unite(link->a, link->b);
  }
  for (const auto& p : pins) pinned.emplace(uf.find(p.a), p.value);

  EqProp eq;
  for (const auto& [v, _] : uf.parent) {
    std::string r = uf.find(v);
    auto pin = pinned.find(r);
    if (pin != pinned.end())
      eq.constants[v] = pin->second;
    else if (v != r)
      eq.renamed[v] = r;
  }
  eq.reduced = rename_vars(substitute(f, eq.constants), eq.renamed);
  return eq;
}

Assignment reconstruct_witness(const Assignment& model, const EqProp& eq) {
  Assignment w = model;
  for (const auto& [v, c] : eq.constants) w[v] = c;
  for (const auto& [v, r] : eq.renamed) {
    auto it = model.find(r);
    if (it != model.end()) w[v] = it->second;
  }
  return w;
}

namespace {

Formula quantifier_free_part(const Formula& f) {
  std::vector<const Formula*> conj;
  collect_conjuncts(f, conj);
  std::vector<Formula> kids;
  for (const Formula* c : conj)
    if (!has_quantifier(*c)) kids.push_back(*c);
  return Formula::mk_and(std::move(kids));
}

struct Discharge {
  OutcomeKind kind = OutcomeKind::Unknown;
  Assignment witness;
  std::string detail;
  int vars = 0;
};

Discharge discharge(const Formula& enc, const BackendConfig& cfg, bool prune_equalities) {
  Formula sk = skolemize(to_nnf(enc));
  EqProp eq;
  if (prune_equalities)
    eq = propagate_equalities(sk);
  else
    eq.reduced = sk;

  Discharge d;
  d.vars = (int)free_vars(eq.reduced).size();
  if (prune_equalities && has_quantifier(eq.reduced)) {
    // unsat relaxation: dropping the quantified conjuncts only weakens the
    // system, so their removal preserves unsat answers while keeping the
    // backend in the quantifier-free fragment where it is complete. Sat
    // answers prove nothing and fall through to the full query.
    Formula relaxed = quantifier_free_part(eq.reduced);
    if (!relaxed.kids.empty() || relaxed.kind == Formula::Kind::Atom) {
      SolverOutcome relaxed_out = run_backend(emit_smtlib(relaxed, false), cfg);
      if (relaxed_out.kind == OutcomeKind::Unsat) {
        d.kind = OutcomeKind::Unsat;
        return d;
      }
    }
  }
  std::string script = emit_smtlib(eq.reduced, has_quantifier(eq.reduced));
  SolverOutcome out = run_backend(script, cfg);
  d.kind = out.kind;
  d.detail = out.detail;
  if (out.kind != OutcomeKind::Sat) return d;

  d.witness = reconstruct_witness(out.model, eq);
  // variables can drop out of the script entirely when substitution cancels
  // their coefficients; any value extends the model, and the re-check below
  // still validates the completed witness
  for (const auto& v : free_vars(sk))
    d.witness.emplace(v, Rat(0));
  WitnessCheck wc = check_witness(d.witness, quantifier_free_part(sk));
  if (!wc.verified) {
    d.kind = OutcomeKind::Unknown;
    d.detail = "model failed the witness re-check: " + wc.violations.front();
  }
  return d;
}

Verdict from_discharge(const Discharge& d) {
  Verdict v;
  switch (d.kind) {
    case OutcomeKind::Sat:
      v.kind = VerdictKind::Consistent;
      v.witness = d.witness;
      break;
    case OutcomeKind::Unsat:
      v.kind = VerdictKind::Inconsistent;
      break;
    case OutcomeKind::Timeout:
      v.kind = VerdictKind::Unknown;
      v.reason = "timeout";
      break;
    case OutcomeKind::Unknown:
      v.kind = VerdictKind::Unknown;
      v.reason = d.detail.empty() ? "backend-unknown" : d.detail;
      break;
    case OutcomeKind::ProcessError:
      v.kind = VerdictKind::Unknown;
      v.reason = "backend-error: " + d.detail;
      break;
  }
  return v;
}

struct CasePick {
  const PruningCase* pruning_case;
  std::vector<PointRef> targets;
};

int grounded_count(const PruningCase& c) {
  int n = (int)c.restrictions.size();
  if (c.frame_target) n += 2;
  if (c.grounds_width) n += 1;
  if (c.grounds_radius) n += 1;
  return n;
}

std::optional<CasePick> pick_case(const ConstraintGraph& g, const TransformBudget& budget) {
  std::optional<CasePick> best;
  int best_score = -1;
  for (const PruningCase* c : applicable_cases(budget, g.dimension())) {
    auto targets = select_targets(g, *c);
    if (!targets) continue;
    int score = grounded_count(*c);
    if (score > best_score) {
      best = CasePick{c, std::move(*targets)};
      best_score = score;
    }
  }
  return best;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void append_case(std::string& acc, const std::string& id) {
  if (!acc.empty()) acc += "+";
  acc += id;
}

// one pruning case per component, subcases expanded as a cross product
std::vector<ConstraintGraph> prune_group(const ConstraintGraph& group,
                                         const std::vector<const Component*>& comps,
                                         std::string& cases_used) {
  std::vector<ConstraintGraph> expansions{group};
  for (const Component* comp : comps) {
    auto pick = pick_case(comp->graph, comp->budget);
    if (!pick || expansions.size() * pick->pruning_case->subcases.size() > 64) continue;
    append_case(cases_used, pick->pruning_case->id);
    std::vector<ConstraintGraph> next;
    for (const ConstraintGraph& gexp : expansions) {
      PruningPlan plan = expand_subcases(gexp, *pick->pruning_case, pick->targets);
      for (auto& sub : plan.subgraphs) next.push_back(std::move(sub));
    }
    expansions = std::move(next);
  }
  return expansions;
}

}  // namespace

Verdict decide_consistency(const ConstraintGraph& g, SolveMode mode, const BackendConfig& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  Provenance prov;
  prov.mode = mode == SolveMode::Naive ? "naive" : "pruned";
  prov.vars_before = (int)free_vars(g).size();

  if (mode == SolveMode::Naive) {
    FreshGen fresh;
    Discharge d = discharge(encode_graph(g, fresh), cfg, false);
    Verdict v = from_discharge(d);
    prov.vars_after = d.vars;
    prov.subcases = 1;
    prov.time_s = seconds_since(t0);
    v.provenance = prov;
    return v;
  }

  DecompositionPlan plan = decompose(g);
  prov.components = (int)plan.components.size();

  // components sharing a length coupling go into one query
  const int n = (int)plan.components.size();
  std::vector<int> group_of(n);
  std::iota(group_of.begin(), group_of.end(), 0);
  std::function<int(int)> root = [&](int i) {
    return group_of[i] == i ? i : group_of[i] = root(group_of[i]);
  };
  for (const auto& e : plan.couplers)
    for (std::size_t k = 1; k < e.components.size(); ++k)
      group_of[root(e.components[0])] = root(e.components[k]);

  std::map<int, std::vector<int>> groups;
  for (int i = 0; i < n; ++i) groups[root(i)].push_back(i);

  std::vector<Verdict> comp_verdicts(n);
  std::string cases_used;
  int total_subcases = 0, vars_after = 0;

  for (const auto& [_, members] : groups) {
    ConstraintGraph group;
    std::set<std::string> ids;
    for (int c : members)
      for (const auto& o : plan.components[c].graph.objects) ids.insert(o.id);
    for (const auto& o : g.objects)
      if (ids.count(o.id)) group.objects.push_back(o);
    for (int c : members) {
      const auto& cg = plan.components[c].graph;
      group.formulas.insert(group.formulas.end(), cg.formulas.begin(), cg.formulas.end());
      group.groundings.insert(cg.groundings.begin(), cg.groundings.end());
    }
    for (const auto& e : plan.couplers) {
      bool inside = true;
      for (int c : e.components)
        if (root(c) != root(members[0])) inside = false;
      if (inside) group.formulas.push_back(e.formula);
    }

    std::vector<const Component*> comps;
    for (int c : members) comps.push_back(&plan.components[c]);
    std::vector<ConstraintGraph> expansions = prune_group(group, comps, cases_used);
    total_subcases += (int)expansions.size();

    Verdict gv;
    gv.kind = VerdictKind::Inconsistent;
    bool first = true;
    for (const ConstraintGraph& sub : expansions) {
      FreshGen fresh;
      Discharge d = discharge(encode_graph(sub, fresh), cfg, true);
      if (first) {
        vars_after += d.vars;
        first = false;
      }
      if (d.kind == OutcomeKind::Sat) {
        gv = Verdict{};
        gv.kind = VerdictKind::Consistent;
        gv.witness = d.witness;
        break;
      }
      if (d.kind != OutcomeKind::Unsat && gv.kind != VerdictKind::Unknown)
        gv = from_discharge(d);
    }
    for (int c : members) comp_verdicts[c] = gv;
  }

  Verdict v = recombine(g, plan, comp_verdicts);
  prov.pruning_case = cases_used;
  prov.subcases = total_subcases;
  prov.vars_after = vars_after;
  prov.time_s = seconds_since(t0);
  v.provenance = prov;
  return v;
}

Verdict decide_sufficiency(const ConstraintGraph& g, const EdgeFormula& conclusion,
                           SolveMode mode, const BackendConfig& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  Provenance prov;
  prov.mode = mode == SolveMode::Naive ? "naive" : "pruned";
  prov.vars_before = (int)free_vars(g).size();

  std::vector<ConstraintGraph> subcases;
  std::string case_used;
  if (mode == SolveMode::Pruned && g.groundings.empty()) {
    // spent transformations must also preserve the conclusion (Condition 1);
    // an explicit grounding already breaks the symmetry, so nothing is left
    // to trade there
    ConstraintGraph with_conclusion = g;
    with_conclusion.formulas.push_back(conclusion);
    TransformBudget budget = sym_of_graph(with_conclusion);
    auto pick = pick_case(g, budget);
    if (pick) {
      case_used = pick->pruning_case->id;
      PruningPlan plan = expand_subcases(g, *pick->pruning_case, pick->targets);
      subcases = std::move(plan.subgraphs);
    }
  }
  if (subcases.empty()) subcases.push_back(g);
  prov.subcases = (int)subcases.size();
  prov.pruning_case = case_used;

  Verdict v;
  v.kind = VerdictKind::Consistent;  // entailed unless a subcase is satisfiable
  bool first = true;
  for (const ConstraintGraph& sub : subcases) {
    FreshGen fresh;
    Formula premise = encode_graph(sub, fresh);
    Formula negated = encode_edge_formula(sub, EdgeFormula::mk_not(conclusion), fresh);
    Discharge d =
        discharge(Formula::mk_and({premise, negated}), cfg, mode == SolveMode::Pruned);
    if (first) {
      prov.vars_after = d.vars;
      first = false;
    }
    if (d.kind == OutcomeKind::Sat) {
      v = Verdict{};
      v.kind = VerdictKind::Inconsistent;  // countermodel: not entailed
      v.witness = d.witness;
      break;
    }
    if (d.kind != OutcomeKind::Unsat && v.kind != VerdictKind::Unknown) {
      Verdict u = from_discharge(d);
      v.kind = VerdictKind::Unknown;
      v.reason = u.reason;
    }
  }
  prov.time_s = seconds_since(t0);
  v.provenance = prov;
  return v;
}

}  // namespace qs
