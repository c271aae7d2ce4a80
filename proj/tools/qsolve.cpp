// Command-line front end: solve one problem file, or benchmark a corpus
// directory in both naive and pruned modes.
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>
#include <qsolve/qsolve.h>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitUsage = 3;
constexpr int kExitBackend = 4;

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot read " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

struct ProblemHandle {
  qs_problem* p = nullptr;
  ~ProblemHandle() { qs_problem_free(p); }
};

struct ResultHandle {
  qs_result* r = nullptr;
  ~ResultHandle() { qs_result_free(r); }
};

int load_problem(const std::string& path, ProblemHandle& out) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  char* err = nullptr;
  qs_status st = qs_problem_parse(text.c_str(), &out.p, &err);
  if (st != QS_OK) {
    std::cerr << "error: " << path << ": " << (err ? err : "parse failed") << "\n";
    qs_string_free(err);
    return kExitUsage;
  }
  return 0;
}

struct SolveFlags {
  std::string mode = "pruned";
  std::string solver;
  double timeout = 600;
  std::string emit_smt;
};

qs_options make_options(const SolveFlags& f) {
  qs_options o;
  qs_options_init(&o);
  o.mode = f.mode == "naive" ? QS_MODE_NAIVE : QS_MODE_PRUNED;
  if (!f.solver.empty()) o.solver_path = f.solver.c_str();
  o.timeout_s = f.timeout;
  if (!f.emit_smt.empty()) o.emit_smt_dir = f.emit_smt.c_str();
  return o;
}

int cmd_solve(const std::string& path, const SolveFlags& flags, const std::string& render,
              bool as_json) {
  ProblemHandle pr;
  if (int rc = load_problem(path, pr)) return rc;
  if (!flags.emit_smt.empty()) {
    std::error_code ec;
    fs::create_directories(flags.emit_smt, ec);
  }

  qs_options opts = make_options(flags);
  ResultHandle res;
  char* err = nullptr;
  if (qs_solve(pr.p, &opts, &res.r, &err) != QS_OK) {
    std::cerr << "error: " << (err ? err : "solve failed") << "\n";
    qs_string_free(err);
    return kExitBackend;
  }

  if (as_json) {
    char* js = qs_result_json(res.r);
    std::cout << js << "\n";
    qs_string_free(js);
  } else {
    bool entail = qs_problem_is_sufficiency(pr.p);
    switch (qs_result_verdict(res.r)) {
      case QS_CONSISTENT: std::cout << (entail ? "entailed" : "consistent") << "\n"; break;
      case QS_INCONSISTENT:
        std::cout << (entail ? "not entailed" : "inconsistent") << "\n";
        break;
      case QS_UNKNOWN: std::cout << "unknown (" << qs_result_reason(res.r) << ")\n"; break;
    }
  }

  if (!render.empty()) {
    if (qs_result_verdict(res.r) == QS_CONSISTENT) {
      if (qs_render_svg(pr.p, res.r, render.c_str(), &err) != QS_OK) {
        std::cerr << "error: " << (err ? err : "render failed") << "\n";
        qs_string_free(err);
        return kExitUsage;
      }
    } else {
      std::cerr << "note: no witness to render\n";
    }
  }

  switch (qs_result_verdict(res.r)) {
    case QS_CONSISTENT: return 0;
    case QS_INCONSISTENT: return 1;
    default: return 2;
  }
}

struct BenchRow {
  std::string problem, mode, verdict, time;
  std::string pruning_case;
  int subcases = 0, vars_before = 0, vars_after = 0;
};

BenchRow bench_one(const fs::path& file, const std::string& mode, const SolveFlags& base,
                   int repeat, bool no_time) {
  BenchRow row;
  row.problem = file.stem().string();
  row.mode = mode;

  ProblemHandle pr;
  if (load_problem(file.string(), pr)) {
    row.verdict = "error";
    row.time = "0";
    return row;
  }

  SolveFlags flags = base;
  flags.mode = mode;
  qs_options opts = make_options(flags);

  std::vector<double> times;
  for (int i = 0; i < repeat; ++i) {
    ResultHandle res;
    char* err = nullptr;
    if (qs_solve(pr.p, &opts, &res.r, &err) != QS_OK) {
      qs_string_free(err);
      row.verdict = "error";
      row.time = "0";
      return row;
    }
    char* js = qs_result_json(res.r);
    json j = json::parse(js);
    qs_string_free(js);

    if (i == 0) {
      bool entail = qs_problem_is_sufficiency(pr.p);
      std::string v = j["verdict"];
      if (v == "consistent") row.verdict = entail ? "entailed" : "consistent";
      else if (v == "inconsistent") row.verdict = entail ? "not-entailed" : "inconsistent";
      else row.verdict = "unknown";
      row.pruning_case = j["provenance"]["case"];
      row.subcases = j["provenance"]["subcases"];
      row.vars_before = j["provenance"]["vars_before"];
      row.vars_after = j["provenance"]["vars_after"];
      if (j.contains("reason") && j["reason"] == "timeout") {
        std::ostringstream os;
        os << "> " << flags.timeout;
        row.time = os.str();
        return row;  // no point repeating a timeout
      }
    }
    times.push_back(j["provenance"]["time_s"].get<double>());
  }
  std::sort(times.begin(), times.end());
  double median = times[times.size() / 2];
  if (times.size() % 2 == 0) median = (median + times[times.size() / 2 - 1]) / 2;
  std::ostringstream os;
  os.precision(4);
  os << std::fixed << (no_time ? 0.0 : median);
  row.time = os.str();
  return row;
}

int cmd_bench(const std::string& corpus, const SolveFlags& base, int repeat,
              const std::string& csv_path, bool no_time, bool parallel) {
  std::vector<fs::path> files;
  std::error_code ec;
  for (const auto& e : fs::directory_iterator(corpus, ec))
    if (e.path().extension() == ".qsp") files.push_back(e.path());
  if (ec || files.empty()) {
    std::cerr << "error: no .qsp problems under " << corpus << "\n";
    return kExitUsage;
  }
  std::sort(files.begin(), files.end());

  std::vector<std::pair<fs::path, std::string>> tasks;
  for (const auto& f : files)
    for (const char* mode : {"naive", "pruned"}) tasks.push_back({f, mode});

  std::vector<BenchRow> rows(tasks.size());
  if (parallel) {
    std::vector<std::future<BenchRow>> futs;
    for (const auto& [f, mode] : tasks)
      futs.push_back(std::async(std::launch::async, bench_one, f, mode, base, repeat, no_time));
    for (size_t i = 0; i < futs.size(); ++i) rows[i] = futs[i].get();
  } else {
    for (size_t i = 0; i < tasks.size(); ++i) {
      std::cerr << "bench: " << tasks[i].first.stem().string() << " [" << tasks[i].second
                << "]\n";
      rows[i] = bench_one(tasks[i].first, tasks[i].second, base, repeat, no_time);
    }
  }

  std::ostringstream csv;
  csv << "problem,mode,verdict,time_s,case,subcases,vars_before,vars_after\n";
  for (const auto& r : rows)
    csv << r.problem << "," << r.mode << "," << r.verdict << "," << r.time << ","
        << r.pruning_case << "," << r.subcases << "," << r.vars_before << "," << r.vars_after
        << "\n";

  if (csv_path.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream out(csv_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write " << csv_path << "\n";
      return kExitUsage;
    }
    out << csv.str();
    std::cout << csv.str();
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qualitative spatial constraint solver"};
  app.require_subcommand(1);

  SolveFlags flags;
  std::string path, render, corpus, csv_path;
  bool as_json = false, no_time = false, parallel = false;
  int repeat = 1;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--solver", flags.solver, "SMT solver executable (default $QS_SOLVER_PATH)");
    cmd->add_option("--timeout", flags.timeout, "per-query backend timeout in seconds")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--emit-smt", flags.emit_smt, "keep SMT-LIB scripts in this directory");
  };

  CLI::App* solve = app.add_subcommand("solve", "decide one problem file");
  solve->add_option("file", path, "problem file (.qsp)")->required();
  solve->add_option("--mode", flags.mode, "naive or pruned (default pruned)")
      ->check(CLI::IsMember({"naive", "pruned"}));
  solve->add_option("--render", render, "write an SVG of the witness");
  solve->add_flag("--json", as_json, "machine-readable verdict with witness and provenance");
  add_common(solve);

  CLI::App* bench = app.add_subcommand("bench", "run a corpus in both modes");
  bench->add_option("corpus", corpus, "directory of .qsp files")->required();
  bench->add_option("--repeat", repeat, "repeats per problem; median reported")
      ->check(CLI::PositiveNumber);
  bench->add_option("--csv", csv_path, "also write the report to this file");
  bench->add_flag("--no-time", no_time, "zero the time column (stable output for diffing)");
  bench->add_flag("--parallel", parallel, "run problems concurrently");
  add_common(bench);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : kExitUsage;
  }

  try {
    if (solve->parsed()) return cmd_solve(path, flags, render, as_json);
    return cmd_bench(corpus, flags, repeat, csv_path, no_time, parallel);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
