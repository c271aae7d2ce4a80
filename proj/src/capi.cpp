#include "qsolve/qsolve.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include <json.hpp>

#include "dsl.hpp"
#include "model.hpp"
#include "render.hpp"
#include "solver.hpp"

using nlohmann::json;
using namespace qs;

struct qs_problem {
  ProblemFile file;
};

struct qs_result {
  Verdict verdict;
  QueryKind query = QueryKind::Consistency;
};

namespace {

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(malloc(s.size() + 1));
  if (out) memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void set_error(char** error_msg, const std::string& s) {
  if (error_msg) *error_msg = dup_string(s);
}

}  // namespace

extern "C" {

void qs_options_init(qs_options* opts) {
  if (!opts) return;
  opts->mode = QS_MODE_PRUNED;
  opts->solver_path = nullptr;
  opts->timeout_s = 0;
  opts->emit_smt_dir = nullptr;
}

qs_status qs_problem_parse(const char* text, qs_problem** out, char** error_msg) {
  if (!text || !out) {
    set_error(error_msg, "null argument");
    return QS_ERR_ARGUMENT;
  }
  *out = nullptr;
  ParseResult res = parse_problem(text);
  if (auto* err = std::get_if<ParseError>(&res)) {
    set_error(error_msg, err->to_string());
    return QS_ERR_PARSE;
  }
  auto file = std::get<ProblemFile>(std::move(res));
  auto diags = validate_graph(file.graph);
  if (!diags.empty()) {
    std::string all;
    for (const auto& d : diags) all += (all.empty() ? "" : "\n") + d;
    set_error(error_msg, all);
    return QS_ERR_VALIDATE;
  }
  *out = new qs_problem{std::move(file)};
  return QS_OK;
}

void qs_problem_free(qs_problem* p) { delete p; }

int qs_problem_is_sufficiency(const qs_problem* p) {
  return p && p->file.query.kind == QueryKind::Sufficiency ? 1 : 0;
}

int qs_problem_free_var_count(const qs_problem* p) {
  return p ? static_cast<int>(free_vars(p->file.graph).size()) : 0;
}

char* qs_problem_format(const qs_problem* p) {
  return p ? dup_string(format_problem(p->file)) : nullptr;
}

qs_status qs_solve(const qs_problem* p, const qs_options* opts, qs_result** out,
                   char** error_msg) {
  if (!p || !out) {
    set_error(error_msg, "null argument");
    return QS_ERR_ARGUMENT;
  }
  *out = nullptr;
  qs_options defaults;
  qs_options_init(&defaults);
  if (!opts) opts = &defaults;

  BackendConfig cfg;
  if (opts->solver_path) cfg.solver_path = opts->solver_path;
  if (opts->timeout_s > 0) cfg.timeout_s = opts->timeout_s;
  if (opts->emit_smt_dir) cfg.keep_dir = opts->emit_smt_dir;
  SolveMode mode = opts->mode == QS_MODE_NAIVE ? SolveMode::Naive : SolveMode::Pruned;

  try {
    Verdict v;
    if (p->file.query.kind == QueryKind::Sufficiency)
      v = decide_sufficiency(p->file.graph, *p->file.query.conclusion, mode, cfg);
    else
      v = decide_consistency(p->file.graph, mode, cfg);
    if (v.kind == VerdictKind::Unknown && v.reason.rfind("backend-error", 0) == 0) {
      set_error(error_msg, v.reason);
      return QS_ERR_BACKEND;
    }
    *out = new qs_result{std::move(v), p->file.query.kind};
    return QS_OK;
  } catch (const std::exception& e) {
    set_error(error_msg, e.what());
    return QS_ERR_INTERNAL;
  }
}

void qs_result_free(qs_result* r) { delete r; }

qs_verdict qs_result_verdict(const qs_result* r) {
  if (!r) return QS_UNKNOWN;
  switch (r->verdict.kind) {
    case VerdictKind::Consistent: return QS_CONSISTENT;
    case VerdictKind::Inconsistent: return QS_INCONSISTENT;
    case VerdictKind::Unknown: return QS_UNKNOWN;
  }
  return QS_UNKNOWN;
}

const char* qs_result_reason(const qs_result* r) {
  return r ? r->verdict.reason.c_str() : "";
}

double qs_result_time_s(const qs_result* r) { return r ? r->verdict.provenance.time_s : 0; }

char* qs_result_json(const qs_result* r) {
  if (!r) return nullptr;
  const Verdict& v = r->verdict;
  json j;
  j["query"] = r->query == QueryKind::Sufficiency ? "sufficiency" : "consistency";
  switch (v.kind) {
    case VerdictKind::Consistent: j["verdict"] = "consistent"; break;
    case VerdictKind::Inconsistent: j["verdict"] = "inconsistent"; break;
    case VerdictKind::Unknown: j["verdict"] = "unknown"; break;
  }
  if (!v.reason.empty()) j["reason"] = v.reason;
  if (!v.witness.empty()) {
    json w = json::object(), wa = json::object();
    for (const auto& [var, val] : v.witness) {
      w[var] = rat_to_string(val);
      wa[var] = rat_to_double(val);
    }
    j["witness"] = w;
    j["witness_approx"] = wa;
  }
  const Provenance& pr = v.provenance;
  j["provenance"] = {{"mode", pr.mode},
                     {"case", pr.pruning_case},
                     {"subcases", pr.subcases},
                     {"components", pr.components},
                     {"vars_before", pr.vars_before},
                     {"vars_after", pr.vars_after},
                     {"time_s", pr.time_s}};
  return dup_string(j.dump(2));
}

qs_status qs_render_svg(const qs_problem* p, const qs_result* r, const char* path,
                        char** error_msg) {
  if (!p || !r || !path) {
    set_error(error_msg, "null argument");
    return QS_ERR_ARGUMENT;
  }
  if (r->verdict.kind != VerdictKind::Consistent) {
    set_error(error_msg, "no witness to render (result is not consistent)");
    return QS_ERR_RENDER;
  }
  try {
    render_svg_file(p->file.graph, r->verdict.witness, path);
    return QS_OK;
  } catch (const std::exception& e) {
    set_error(error_msg, e.what());
    return QS_ERR_RENDER;
  }
}

void qs_string_free(char* s) { free(s); }

const char* qs_version(void) { return "0.1.0"; }

}  // extern "C"
