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

#include "mfista/solver.hpp"

#include <cmath>
#include <exception>
#include <string>
#include <utility>

#include "mfista/errors.hpp"

namespace mfista {
namespace {

void require_start_in_domain(const ProblemSpec& p, const Vector& y0) {
  if (y0.size() != p.dim) {
    throw InvalidStart("starting point has dimension " +
                       std::to_string(y0.size()) + ", problem has " +
                       std::to_string(p.dim));
  }
  if (!std::isfinite(p.h_value(y0))) {
    throw InvalidStart("starting point is outside dom h");
  }
}

// Runs `body`, converting anything but our own oracle errors into an
// OracleFailure tagged with the iteration index.
template <typename Body>
auto with_iteration(std::size_t k, Body&& body) -> decltype(body()) {
  try {
    return body();
  } catch (const OracleFailure&) {
    throw;
  } catch (const std::exception& e) {
    throw OracleFailure(k, e.what());
  }
}

double checked_h(const CountingProblem& p, const Vector& y) {
  const double h = p.h(y);
  if (!std::isfinite(h)) throw NonFiniteValue("prox returned a point outside dom h");
  return h;
}

void append_vectors(Trace& trace, const Vector& y, const Vector& x,
                    const Vector& v) {
  trace.y.push_back(y);
  trace.x.push_back(x);
  trace.v.push_back(v);
}

SolveResult make_result(const Vector& y0) {
  return SolveResult{SolveStatus::kMaxItersReached, y0, Vector(y0.size()), 0,
                     EvalCounters{}, std::nullopt};
}

void fill_counts(IterateRecord& row, const EvalCounters& c) {
  row.grad_evals = c.grad_evals;
  row.prox_evals = c.prox_evals;
  row.proj_evals = c.proj_evals;
}

}  // namespace

void SolverConfig::validate() const {
  if (!(epsilon > 0.0)) throw InvalidArgument("epsilon must be positive");
  if (max_iters < 1) throw InvalidArgument("max_iters must be at least 1");
  if (lk_clamp_tol && !(*lk_clamp_tol >= 0.0)) {
    throw InvalidArgument("lk_clamp_tol must be nonnegative");
  }
}

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kConverged:
      return "converged";
    case SolveStatus::kMaxItersReached:
      return "max_iters_reached";
  }
  return "unknown";
}

double next_a(double a_prev) {
  if (!(a_prev >= 1.0) || !std::isfinite(a_prev)) {
    throw InvalidArgument("next_a: a_prev must be >= 1");
  }
  return 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * a_prev * a_prev));
}

Vector solve_subproblem(CountingProblem& p, const Vector& x_k,
                        const Vector& grad_fk_at_x) {
  const double step = 1.0 / (4.0 * p.spec().lipschitz_L);
  return p.prox(axpy(-step, grad_fk_at_x, x_k), step);
}

Vector compute_vk(const Vector& grad_y, const Vector& grad_x, const Vector& y_k,
                  const Vector& x_k, const Vector& y_prev, double L_k, double L) {
  require_same_size(grad_y, grad_x, "compute_vk");
  require_same_size(y_k, x_k, "compute_vk");
  require_same_size(y_k, y_prev, "compute_vk");
  require_same_size(y_k, grad_y, "compute_vk");
  const double four_L = 4.0 * L;
  std::vector<double> v(y_k.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = grad_y[i] - grad_x[i] + L_k * (y_prev[i] - x_k[i]) +
           four_L * (x_k[i] - y_k[i]);
  }
  return Vector(std::move(v));
}

Vector compute_vk(CountingProblem& p, const Vector& y_k, const Vector& x_k,
                  const Vector& y_prev, double L_k) {
  return compute_vk(p.grad(y_k), p.grad(x_k), y_k, x_k, y_prev, L_k,
                    p.spec().lipschitz_L);
}

Vector extrapolate_project(CountingProblem& p, const Vector& y_k,
                           const Vector& y_prev, double a_prev, double a_cur) {
  const double beta = (a_prev - 1.0) / a_cur;
  return p.project(axpy(beta, sub(y_k, y_prev), y_k));
}

CurvatureEstimate estimate_Ak(CountingProblem& p, const Vector& y_k,
                              const Vector& x_next, std::optional<double> f_y_k) {
  Vector grad_next = p.grad(x_next);
  const double d2 = norm2_squared(sub(y_k, x_next));
  const double floor = 1e-14 * (1.0 + norm2(y_k));
  if (d2 <= floor * floor) return {0.0, std::move(grad_next)};
  const double f_y = f_y_k ? *f_y_k : p.f(y_k);
  // l_f(y_k; x_next) - f(y_k) = -(f(y_k) - l_f(y_k; x_next))
  const double gap = p.linearization_gap(y_k, f_y, x_next, grad_next);
  return {-2.0 * gap / d2, std::move(grad_next)};
}

MfistaSolver::MfistaSolver(const ProblemSpec& problem, const SolverConfig& config,
                           const Vector& y0)
    : problem_(problem),
      L_(problem.lipschitz_L),
      clamp_tol_(config.lk_clamp_tol.value_or(1e-12 * problem.lipschitz_L)),
      state_{0, y0, y0, y0, 1.0, 1.0, 0.0, Vector(y0.size()), Vector(y0.size())},
      y_last_(y0),
      x_next_(y0) {
  config.validate();
  require_start_in_domain(problem, y0);
}

IterateRecord MfistaSolver::step() {
  const std::size_t k = completed_ + 1;
  return with_iteration(k, [&] {
    // Curvature update for the previous iteration; x_1 = y_0 and L_1 = 0.
    Vector grad_x(y_last_.size());
    double L_k = 0.0;
    if (k == 1) {
      grad_x = problem_.grad(x_next_);
    } else {
      CurvatureEstimate est = estimate_Ak(problem_, y_last_, x_next_, f_y_last_);
      L_k = est.A > clamp_tol_ ? est.A : 0.0;
      grad_x = std::move(est.grad_at_x_next);
    }
    const Vector& y_prev = y_last_;
    const Vector& x_k = x_next_;

    // Gradient of f_k at x_k, then one prox.
    Vector grad_fk = L_k == 0.0 ? grad_x : axpy(L_k, sub(x_k, y_prev), grad_x);
    Vector y_k = solve_subproblem(problem_, x_k, grad_fk);
    const double h_y = checked_h(problem_, y_k);
    const double f_y = problem_.f(y_k);

    // Momentum.
    const double a_k = next_a(a_last_);

    // Residual and next extrapolation point.
    Vector grad_y = problem_.grad(y_k);
    Vector v_k = compute_vk(grad_y, grad_x, y_k, x_k, y_prev, L_k, L_);
    Vector x_next = extrapolate_project(problem_, y_k, y_prev, a_last_, a_k);

    IterateRecord row;
    row.k = k;
    row.a_k = a_k;
    row.L_k = L_k;
    row.vnorm = norm2(v_k);
    row.phi = f_y + h_y;
    row.dxy = distance(y_k, x_k);
    row.dyy = distance(y_k, y_prev);
    fill_counts(row, problem_.counters());

    state_ = SolverState{k,       y_prev, y_k, x_k, a_last_, a_k, L_k,
                         std::move(v_k), std::move(grad_x)};
    y_last_ = std::move(y_k);
    x_next_ = std::move(x_next);
    f_y_last_ = f_y;
    a_last_ = a_k;
    completed_ = k;
    return row;
  });
}

SolveResult run_mfista(const ProblemSpec& p, const SolverConfig& cfg,
                       const Vector& y0) {
  MfistaSolver solver(p, cfg, y0);
  SolveResult result = make_result(y0);
  if (cfg.record_trace) {
    result.trace.emplace();
    if (cfg.record_vectors) result.trace->y.push_back(y0);
  }
  for (std::size_t k = 1; k <= cfg.max_iters; ++k) {
    IterateRecord row = solver.step();
    const SolverState& s = solver.state();
    if (result.trace) {
      result.trace->rows.push_back(row);
      if (cfg.record_vectors) append_vectors(*result.trace, s.y_cur, s.x_cur, s.v_cur);
    }
    result.iterations = k;
    result.y = s.y_cur;
    result.v = s.v_cur;
    if (row.vnorm <= cfg.epsilon) {
      result.status = SolveStatus::kConverged;
      break;
    }
  }
  result.counters = solver.counters();
  return result;
}

SolveResult run_fista_baseline(const ProblemSpec& p, const SolverConfig& cfg,
                               const Vector& y0, const FistaOptions& options) {
  cfg.validate();
  if (!(options.step > 0.0) || !std::isfinite(options.step)) {
    throw InvalidArgument("FISTA step must be positive");
  }
  require_start_in_domain(p, y0);
  CountingProblem problem(p);
  const double s = options.step;
  const double inv_s = 1.0 / s;

  SolveResult result = make_result(y0);
  if (cfg.record_trace) {
    result.trace.emplace();
    if (cfg.record_vectors) result.trace->y.push_back(y0);
  }
  Vector y_prev = y0;
  Vector x = y0;
  double a_prev = 1.0;
  for (std::size_t k = 1; k <= cfg.max_iters; ++k) {
    const bool done = with_iteration(k, [&] {
      Vector grad_x = problem.grad(x);
      Vector y = problem.prox(axpy(-s, grad_x, x), s);
      const double h_y = checked_h(problem, y);
      const double a = next_a(a_prev);
      Vector grad_y = problem.grad(y);
      std::vector<double> v_raw(y.size());
      for (std::size_t i = 0; i < y.size(); ++i) {
        v_raw[i] = grad_y[i] - grad_x[i] + inv_s * (x[i] - y[i]);
      }
      Vector v(std::move(v_raw));
      const double beta = (a_prev - 1.0) / a;
      Vector x_next = axpy(beta, sub(y, y_prev), y);
      if (options.project_extrapolation) x_next = problem.project(x_next);

      IterateRecord row;
      row.k = k;
      row.a_k = a;
      row.L_k = 0.0;
      row.vnorm = norm2(v);
      row.phi = problem.f(y) + h_y;
      row.dxy = distance(y, x);
      row.dyy = distance(y, y_prev);
      fill_counts(row, problem.counters());
      if (result.trace) {
        result.trace->rows.push_back(row);
        if (cfg.record_vectors) append_vectors(*result.trace, y, x, v);
      }
      result.iterations = k;
      result.y = y;
      result.v = v;
      y_prev = std::move(y);
      x = std::move(x_next);
      a_prev = a;
      return row.vnorm <= cfg.epsilon;
    });
    if (done) {
      result.status = SolveStatus::kConverged;
      break;
    }
  }
  result.counters = problem.counters();
  return result;
}

SolveResult run_proxgrad_baseline(const ProblemSpec& p, const SolverConfig& cfg,
                                  const Vector& y0) {
  cfg.validate();
  require_start_in_domain(p, y0);
  CountingProblem problem(p);
  const double L = p.lipschitz_L;
  const double s = 1.0 / L;

  SolveResult result = make_result(y0);
  if (cfg.record_trace) {
    result.trace.emplace();
    if (cfg.record_vectors) result.trace->y.push_back(y0);
  }
  Vector y_prev = y0;
  Vector grad_prev = with_iteration(1, [&] { return problem.grad(y0); });
  for (std::size_t k = 1; k <= cfg.max_iters; ++k) {
    const bool done = with_iteration(k, [&] {
      Vector y = problem.prox(axpy(-s, grad_prev, y_prev), s);
      const double h_y = checked_h(problem, y);
      Vector grad_y = problem.grad(y);
      std::vector<double> v_raw(y.size());
      for (std::size_t i = 0; i < y.size(); ++i) {
        v_raw[i] = L * (y_prev[i] - y[i]) + grad_y[i] - grad_prev[i];
      }
      Vector v(std::move(v_raw));

      IterateRecord row;
      row.k = k;
      row.a_k = 1.0;
      row.L_k = 0.0;
      row.vnorm = norm2(v);
      row.phi = problem.f(y) + h_y;
      row.dxy = distance(y, y_prev);
      row.dyy = row.dxy;
      fill_counts(row, problem.counters());
      if (result.trace) {
        result.trace->rows.push_back(row);
        if (cfg.record_vectors) append_vectors(*result.trace, y, y_prev, v);
      }
      result.iterations = k;
      result.y = y;
      result.v = v;
      y_prev = std::move(y);
      grad_prev = std::move(grad_y);
      return row.vnorm <= cfg.epsilon;
    });
    if (done) {
      result.status = SolveStatus::kConverged;
      break;
    }
  }
  result.counters = problem.counters();
  return result;
}

}  // namespace mfista
