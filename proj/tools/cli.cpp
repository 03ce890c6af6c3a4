// Copyright 2026 The mfista Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mfista/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>
#include <utility>

#include <CLI11.hpp>
#include <json.hpp>

#include "mfista/analysis.hpp"
#include "mfista/errors.hpp"
#include "mfista/io.hpp"

#ifndef MFISTA_VERSION
#define MFISTA_VERSION "0.0.0"
#endif

namespace mfista::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Slope fits need at least 1.5 decades above the first grid point.
constexpr double kFitDecades = 1.5;
constexpr std::size_t kFitPoints = 8;

std::string describe(const ProblemSource& s) {
  if (!s.instance_file.empty()) return s.instance_file.stem().string();
  std::ostringstream os;
  os << s.kind << "-n" << s.n << "-s" << s.seed;
  return os.str();
}

double instance_L(const Instance& inst) {
  return std::visit([](const auto& i) { return i.L; }, inst);
}

json instance_json(const Instance& inst) {
  return std::visit(
      [](const auto& i) -> json {
        using T = std::decay_t<decltype(i)>;
        json j;
        j["n"] = i.dim();
        j["seed"] = i.seed;
        j["L"] = i.L;
        if constexpr (std::is_same_v<T, QuadraticInstance>) {
          j["kind"] = i.kind;
          j["known_m"] = i.known_m;
          j["convex"] = i.convex;
          j["omega"] = std::string(to_string(i.omega));
        } else {
          j["kind"] = "lasso";
          j["known_m"] = 0.0;
          j["convex"] = true;
          j["lambda"] = i.lambda;
          j["radius"] = i.radius;
        }
        return j;
      },
      inst);
}

json config_json(const RunConfig& c) {
  json j;
  j["problem"] = c.source.kind;
  if (!c.source.instance_file.empty()) j["instance"] = c.source.instance_file.string();
  j["n"] = c.source.n;
  j["seed"] = c.source.seed;
  j["negfrac"] = c.source.negfrac;
  j["rows"] = c.source.rows;
  j["lambda"] = c.source.lambda;
  j["column_decay"] = c.source.column_decay;
  j["omega"] = std::string(to_string(c.source.omega));
  j["solver"] = to_string(c.solver);
  j["step_mode"] = to_string(c.step_mode);
  j["epsilon"] = c.epsilon;
  j["max_iters"] = c.max_iters;
  j["trace"] = c.trace == TraceLevel::kFull ? "full" : "norms";
  j["out"] = c.out_dir.string();
  return j;
}

double final_vnorm(const SolveResult& r) { return norm2(r.v); }

// Writes trace, optional vectors, instance and manifest into dir.
void persist_run(const fs::path& dir, const RunConfig& config, const Instance& inst,
                 const RunOutcome& outcome) {
  fs::create_directories(dir);
  const Trace& trace = *outcome.result.trace;
  write_trace_csv(dir / "trace.csv", trace);
  if (config.trace == TraceLevel::kFull) write_vectors_csv(dir / "vectors.csv", trace);
  write_instance(dir / "instance.txt", inst);

  const auto& r = outcome.result;
  json m;
  m["tool"] = "mfista";
  m["version"] = MFISTA_VERSION;
  m["config"] = config_json(config);
  m["instance"] = instance_json(inst);
  m["L"] = outcome.L;
  m["status"] = std::string(to_string(r.status));
  m["iterations"] = r.iterations;
  m["final_vnorm"] = final_vnorm(r);
  m["wall_seconds"] = outcome.wall_seconds;
  m["counters"] = {{"grad_evals", r.counters.grad_evals},
                   {"prox_evals", r.counters.prox_evals},
                   {"proj_evals", r.counters.proj_evals},
                   {"f_evals", r.counters.f_evals}};
  write_file_atomically(dir / "manifest.json", m.dump(2) + "\n");
}

int severity(int exit_code) {
  if (exit_code == kExitError) return 2;
  return exit_code == kExitNotConverged ? 1 : 0;
}

int status_exit(SolveStatus s) {
  return s == SolveStatus::kConverged ? kExitOk : kExitNotConverged;
}

void add_source_options(CLI::App& app, ProblemSource& s) {
  app.add_option("--problem", s.kind, "Instance family")
      ->check(CLI::IsMember({"convex-qp", "nonconvex-qp", "lasso"}));
  app.add_option("--instance", s.instance_file, "Instance file (overrides --problem)")
      ->check(CLI::ExistingFile);
  app.add_option("--n", s.n, "Dimension")->check(CLI::Range(1, 64));
  app.add_option("--seed", s.seed, "Generator seed");
  app.add_option("--negfrac", s.negfrac, "Fraction of negative eigenvalues");
  app.add_option("--rows", s.rows, "LASSO design rows (0 means 2n)");
  app.add_option("--lambda", s.lambda, "LASSO l1 weight");
  app.add_option("--column-decay", s.column_decay, "LASSO column scaling decay");
  app.add_option_function<std::string>(
         "--omega", [&s](const std::string& v) { s.omega = parse_omega(v); },
         "Extrapolation set: whole or box")
      ->check(CLI::IsMember({"whole", "box"}));
}

void add_solver_options(CLI::App& app, RunConfig& c) {
  app.add_option_function<std::string>(
         "--step-mode", [&c](const std::string& v) { c.step_mode = parse_step_mode(v); },
         "FISTA step: L (1/L) or quarter-L (1/(4L), projected extrapolation)")
      ->check(CLI::IsMember({"L", "quarter-L"}));
  app.add_option("--max-iters", c.max_iters, "Iteration cap")->check(CLI::PositiveNumber);
}

TraceCheckReport not_applicable(std::string name, std::string note) {
  TraceCheckReport r;
  r.name = std::move(name);
  r.status = CheckStatus::kNotApplicable;
  r.note = std::move(note);
  return r;
}

// ---------------------------------------------------------------- run

int cmd_run(const RunConfig& config, std::ostream& out) {
  config.validate();
  const Instance inst = build_instance(config.source);
  const RunOutcome outcome = execute(config, inst);
  const fs::path dir = resolve_output(config.out_dir);
  persist_run(dir, config, inst, outcome);
  out << "status=" << to_string(outcome.result.status)
      << " iterations=" << outcome.result.iterations
      << " vnorm=" << format_double(final_vnorm(outcome.result))
      << " trace=" << (dir / "trace.csv").string() << '\n';
  return status_exit(outcome.result.status);
}

// -------------------------------------------------------------- check

struct CheckOptions {
  fs::path trace;
  fs::path oracle;
  std::optional<double> L;
  std::vector<std::string> checks;
};

double lipschitz_from_manifest(const fs::path& trace_path) {
  const fs::path manifest = trace_path.parent_path() / "manifest.json";
  std::ifstream in(manifest);
  if (!in) throw InvalidArgument("no --L given and no manifest.json next to the trace");
  const json m = json::parse(in);
  return m.at("L").get<double>();
}

int cmd_check(const CheckOptions& opt, std::ostream& out) {
  Trace trace = read_trace_csv(opt.trace);
  const fs::path vectors = opt.trace.parent_path() / "vectors.csv";
  if (fs::exists(vectors)) read_vectors_csv(vectors, trace);
  const double L = opt.L ? *opt.L : lipschitz_from_manifest(opt.trace);
  if (!(L > 0.0)) throw InvalidArgument("L must be positive");

  std::optional<OracleCertificate> oracle;
  if (!opt.oracle.empty()) oracle = read_certificate(opt.oracle);

  std::vector<std::string> checks = opt.checks;
  if (checks.empty()) {
    checks = {"residual"};
    if (oracle) {
      checks.emplace_back("lyapunov");
      checks.emplace_back("function-value");
    }
  }

  bool any_fail = false;
  for (const auto& c : checks) {
    TraceCheckReport r;
    if (c == "residual") {
      r = check_residual_bound(trace, L);
    } else if (c == "lyapunov" || c == "function-value") {
      const std::string name = c == "lyapunov" ? "check_lyapunov_monotone"
                                               : "check_function_value_bound";
      if (!oracle) {
        r = not_applicable(name, "requires --oracle");
      } else if (!trace.has_vectors()) {
        r = not_applicable(name, "requires iterate vectors (--trace full)");
      } else if (c == "lyapunov") {
        r = check_lyapunov_monotone(trace, *oracle, L);
      } else {
        r = check_function_value_bound(trace, *oracle, L);
      }
    }
    out << format_check_line(r) << '\n';
    any_fail = any_fail || r.failed();
  }
  return any_fail ? kExitError : kExitOk;
}

// -------------------------------------------------------------- sweep

struct SweepOptions {
  RunConfig base;
  std::vector<std::string> problems{"convex-qp"};
  std::vector<std::uint64_t> seeds{1};
  std::vector<std::string> solvers{"mfista"};
  std::vector<double> epsilons{1e-6};
  std::size_t fit_lo = 100;
  unsigned jobs = 0;
};

struct CellResult {
  std::string instance;
  std::string solver;
  double epsilon = 0.0;
  std::size_t iterations = 0;
  double final_residual = kNaN;
  double slope = kNaN;
  std::string status = "error";
  std::string residual_bound = "N/A";
  std::string error;
  int exit_code = kExitError;
};

double fitted_slope(const Trace& trace, std::size_t fit_lo) {
  const auto n = trace.rows.size();
  if (fit_lo < 1 || static_cast<double>(n) < static_cast<double>(fit_lo) *
                                                  std::pow(10.0, kFitDecades)) {
    return kNaN;
  }
  try {
    const auto grid = log_grid(fit_lo, n, kFitPoints);
    return fit_rate(trace, grid).slope;
  } catch (const InvalidArgument&) {
    return kNaN;
  }
}

CellResult run_cell(const RunConfig& config, std::size_t fit_lo) {
  CellResult cell;
  cell.instance = describe(config.source);
  cell.solver = to_string(config.solver);
  cell.epsilon = config.epsilon;
  try {
    const Instance inst = build_instance(config.source);
    const RunOutcome outcome = execute(config, inst);
    persist_run(resolve_output(config.out_dir), config, inst, outcome);
    const Trace& trace = *outcome.result.trace;
    cell.iterations = outcome.result.iterations;
    cell.final_residual = final_vnorm(outcome.result);
    cell.slope = fitted_slope(trace, fit_lo);
    cell.status = std::string(to_string(outcome.result.status));
    cell.exit_code = status_exit(outcome.result.status);
    if (config.solver == SolverKind::kMfista) {
      const auto report = check_residual_bound(trace, outcome.L);
      cell.residual_bound = std::string(to_string(report.status));
      if (report.failed()) cell.exit_code = kExitError;
    }
  } catch (const std::exception& e) {
    cell.error = e.what();
    cell.exit_code = kExitError;
  }
  return cell;
}

int cmd_sweep(const SweepOptions& opt, std::ostream& out, std::ostream& err) {
  opt.base.validate();
  std::vector<RunConfig> cells;
  for (const auto& problem : opt.problems) {
    for (const auto seed : opt.seeds) {
      for (const auto& solver : opt.solvers) {
        for (std::size_t e = 0; e < opt.epsilons.size(); ++e) {
          RunConfig c = opt.base;
          c.source.kind = problem;
          c.source.seed = seed;
          c.solver = parse_solver(solver);
          c.epsilon = opt.epsilons[e];
          c.validate();
          std::ostringstream name;
          name << describe(c.source) << '-' << solver << "-e" << e;
          c.out_dir = opt.base.out_dir / "cells" / name.str();
          cells.push_back(std::move(c));
        }
      }
    }
  }

  std::vector<CellResult> results(cells.size());
  std::atomic<std::size_t> next{0};
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned workers = static_cast<unsigned>(
      std::min<std::size_t>(opt.jobs > 0 ? opt.jobs : hw, std::max<std::size_t>(cells.size(), 1)));
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < cells.size(); i = next++) {
          results[i] = run_cell(cells[i], opt.fit_lo);
        }
      });
    }
  }

  std::ostringstream csv;
  csv << "instance,solver,epsilon,iterations,final_residual,slope,status,residual_bound\n";
  int worst = kExitOk;
  for (const auto& r : results) {
    csv << r.instance << ',' << r.solver << ',' << format_double(r.epsilon) << ','
        << r.iterations << ',' << format_double(r.final_residual) << ','
        << format_double(r.slope) << ',' << r.status << ',' << r.residual_bound << '\n';
    if (!r.error.empty()) err << "cell " << r.instance << '/' << r.solver << ": " << r.error << '\n';
    if (severity(r.exit_code) > severity(worst)) worst = r.exit_code;
  }
  const fs::path root = resolve_output(opt.base.out_dir);
  fs::create_directories(root);
  write_file_atomically(root / "summary.csv", csv.str());
  out << "cells=" << results.size() << " summary=" << (root / "summary.csv").string() << '\n';
  return worst;
}

// ---------------------------------------------------------------- gen

struct GenOptions {
  ProblemSource source;
  fs::path out = "instance.txt";
  fs::path certificate;
};

int cmd_gen(const GenOptions& opt, std::ostream& out) {
  const Instance inst = build_instance(opt.source);
  const fs::path path = resolve_output(opt.out);
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  write_instance(path, inst);
  out << "instance=" << path.string() << '\n';
  if (opt.certificate.empty()) return kExitOk;

  const ProblemSpec p = make_problem(inst);
  OracleCertificate cert;
  const auto* qp = std::get_if<QuadraticInstance>(&inst);
  if (qp != nullptr && qp->dim() <= 4) {
    cert = brute_force_optimum(p, *qp);
  } else if (p.known_convex()) {
    cert = reference_optimum(p, Vector(p.dim));
  } else {
    throw UnsupportedConfiguration(
        "no certificate method for a nonconvex instance with n > 4");
  }
  const fs::path cpath = resolve_output(opt.certificate);
  if (cpath.has_parent_path()) fs::create_directories(cpath.parent_path());
  write_certificate(cpath, cert);
  out << "certificate=" << cpath.string() << " method=" << to_string(cert.method)
      << " kkt=" << format_double(cert.kkt_residual) << '\n';
  return cert.accepted() ? kExitOk : kExitError;
}

}  // namespace

std::string to_string(SolverKind kind) {
  switch (kind) {
    case SolverKind::kMfista:
      return "mfista";
    case SolverKind::kFista:
      return "fista";
    case SolverKind::kProxGrad:
      return "proxgrad";
  }
  return "unknown";
}

SolverKind parse_solver(const std::string& text) {
  if (text == "mfista") return SolverKind::kMfista;
  if (text == "fista") return SolverKind::kFista;
  if (text == "proxgrad") return SolverKind::kProxGrad;
  throw InvalidArgument("unknown solver: " + text);
}

std::string to_string(StepMode mode) {
  return mode == StepMode::kL ? "L" : "quarter-L";
}

StepMode parse_step_mode(const std::string& text) {
  if (text == "L") return StepMode::kL;
  if (text == "quarter-L") return StepMode::kQuarterL;
  throw InvalidArgument("unknown step mode: " + text);
}

void RunConfig::validate() const {
  SolverConfig cfg;
  cfg.epsilon = epsilon;
  cfg.max_iters = max_iters;
  cfg.validate();
  if (source.instance_file.empty()) {
    if (source.kind != "convex-qp" && source.kind != "nonconvex-qp" &&
        source.kind != "lasso") {
      throw InvalidArgument("unknown problem kind: " + source.kind);
    }
    if (source.n < 1 || source.n > 64) throw InvalidArgument("n must lie in [1, 64]");
  } else if (!fs::exists(source.instance_file)) {
    throw InvalidArgument("instance file not found: " + source.instance_file.string());
  }
}

Instance build_instance(const ProblemSource& s) {
  if (!s.instance_file.empty()) {
    Instance inst = read_instance(s.instance_file);
    if (auto* qp = std::get_if<QuadraticInstance>(&inst)) qp->omega = s.omega;
    return inst;
  }
  if (s.kind == "convex-qp") return make_convex_qp(s.n, s.seed, s.omega).second;
  if (s.kind == "nonconvex-qp") return make_nonconvex_qp(s.n, s.seed, s.negfrac, s.omega).second;
  if (s.kind == "lasso") {
    const std::size_t rows = s.rows > 0 ? s.rows : 2 * s.n;
    return make_lasso_on_ball(rows, s.n, s.seed, s.lambda, s.column_decay).second;
  }
  throw InvalidArgument("unknown problem kind: " + s.kind);
}

RunOutcome execute(const RunConfig& config, const Instance& instance) {
  const ProblemSpec p = make_problem(instance);
  SolverConfig cfg;
  cfg.epsilon = config.epsilon;
  cfg.max_iters = config.max_iters;
  cfg.record_trace = true;
  cfg.record_vectors = config.trace == TraceLevel::kFull;
  const Vector y0(p.dim);

  const auto start = std::chrono::steady_clock::now();
  auto solve = [&]() -> SolveResult {
    switch (config.solver) {
      case SolverKind::kFista: {
        FistaOptions options;
        const bool quarter = config.step_mode == StepMode::kQuarterL;
        options.step = quarter ? 1.0 / (4.0 * p.lipschitz_L) : 1.0 / p.lipschitz_L;
        options.project_extrapolation = quarter;
        return run_fista_baseline(p, cfg, y0, options);
      }
      case SolverKind::kProxGrad:
        return run_proxgrad_baseline(p, cfg, y0);
      case SolverKind::kMfista:
        break;
    }
    return run_mfista(p, cfg, y0);
  };
  SolveResult result = solve();
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return RunOutcome{std::move(result), instance_L(instance), seconds};
}

fs::path resolve_output(const fs::path& path) {
  if (path.is_absolute()) return path;
  const char* root = std::getenv(kOutputRootEnv);
  if (root == nullptr || *root == '\0') return path;
  return fs::path(root) / path;
}

int main_with_args(const std::vector<std::string>& args, std::ostream& out,
                   std::ostream& err) {
  CLI::App app{"Modified FISTA experiment runner"};
  app.set_config("--config", "", "TOML/INI config file; flags override it");
  app.set_version_flag("--version", std::string(MFISTA_VERSION));
  app.require_subcommand(1);

  RunConfig run_cfg;
  std::string run_solver = "mfista";
  std::string run_trace = "norms";
  auto* run = app.add_subcommand("run", "Solve one instance and write its trace");
  add_source_options(*run, run_cfg.source);
  add_solver_options(*run, run_cfg);
  run->add_option("--solver", run_solver, "mfista, fista or proxgrad")
      ->check(CLI::IsMember({"mfista", "fista", "proxgrad"}));
  run->add_option("--eps", run_cfg.epsilon, "Residual tolerance");
  run->add_option("--trace", run_trace, "norms or full")
      ->check(CLI::IsMember({"norms", "full"}));
  run->add_option("--out", run_cfg.out_dir, "Output directory");

  CheckOptions check_opt;
  double check_L = 0.0;
  auto* check = app.add_subcommand("check", "Run trace checks");
  check->add_option("trace", check_opt.trace, "Trace CSV")->required();
  check->add_option("--oracle", check_opt.oracle, "Certificate file");
  auto* check_L_opt = check->add_option("--L", check_L, "Lipschitz constant");
  check->add_option("--checks", check_opt.checks, "residual, lyapunov, function-value")
      ->check(CLI::IsMember({"residual", "lyapunov", "function-value"}))
      ->delimiter(',');

  SweepOptions sweep_opt;
  std::string sweep_trace = "norms";
  auto* sweep = app.add_subcommand("sweep", "Run an instance x solver x epsilon matrix");
  add_source_options(*sweep, sweep_opt.base.source);
  add_solver_options(*sweep, sweep_opt.base);
  sweep->add_option("--problems", sweep_opt.problems, "Instance families")
      ->check(CLI::IsMember({"convex-qp", "nonconvex-qp", "lasso"}))
      ->delimiter(',');
  sweep->add_option("--seeds", sweep_opt.seeds, "Seeds")->delimiter(',');
  sweep->add_option("--solvers", sweep_opt.solvers, "Solvers")
      ->check(CLI::IsMember({"mfista", "fista", "proxgrad"}))
      ->delimiter(',');
  sweep->add_option("--eps", sweep_opt.epsilons, "Residual tolerances")->delimiter(',');
  sweep->add_option("--fit-from", sweep_opt.fit_lo, "First iteration of the slope fit");
  sweep->add_option("--jobs", sweep_opt.jobs, "Worker threads (0 means all cores)");
  sweep->add_option("--trace", sweep_trace, "norms or full")
      ->check(CLI::IsMember({"norms", "full"}));
  sweep->add_option("--out", sweep_opt.base.out_dir, "Output directory");

  GenOptions gen_opt;
  auto* gen = app.add_subcommand("gen", "Write a generated instance to a file");
  add_source_options(*gen, gen_opt.source);
  gen->add_option("--out", gen_opt.out, "Instance file");
  gen->add_option("--certificate", gen_opt.certificate, "Also write an optimum certificate");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*run) {
      run_cfg.solver = parse_solver(run_solver);
      run_cfg.trace = run_trace == "full" ? TraceLevel::kFull : TraceLevel::kNorms;
      return cmd_run(run_cfg, out);
    }
    if (*check) {
      if (check_L_opt->count() > 0) check_opt.L = check_L;
      return cmd_check(check_opt, out);
    }
    if (*sweep) {
      sweep_opt.base.trace = sweep_trace == "full" ? TraceLevel::kFull : TraceLevel::kNorms;
      return cmd_sweep(sweep_opt, out, err);
    }
    if (*gen) return cmd_gen(gen_opt, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace mfista::cli
