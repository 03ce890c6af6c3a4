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

#ifndef MFISTA_SOLVER_HPP
#define MFISTA_SOLVER_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "mfista/problem.hpp"
#include "mfista/vector.hpp"

namespace mfista {

struct SolverConfig {
  double epsilon = 1e-6;
  std::size_t max_iters = 10000;
  bool record_trace = true;
  // Keep y_k, x_k and v_k for every iteration (memory O(n * iters)).
  bool record_vectors = false;
  // Curvature estimates in (0, tol] are treated as zero. Defaults to 1e-12 * L.
  std::optional<double> lk_clamp_tol;

  void validate() const;
};

// One trace row per completed iteration.
struct IterateRecord {
  std::size_t k = 0;
  double a_k = 0.0;
  double L_k = 0.0;
  double vnorm = 0.0;
  double phi = 0.0;
  double dxy = 0.0;  // ||y_k - x_k||
  double dyy = 0.0;  // ||y_k - y_{k-1}||
  std::uint64_t grad_evals = 0;
  std::uint64_t prox_evals = 0;
  std::uint64_t proj_evals = 0;
};

struct Trace {
  std::vector<IterateRecord> rows;
  // Only filled when vectors are recorded: y[0] = y_0 and y[k] = y_k;
  // x[k-1] = x_k and v[k-1] = v_k.
  std::vector<Vector> y;
  std::vector<Vector> x;
  std::vector<Vector> v;

  bool has_vectors() const noexcept {
    return !rows.empty() && y.size() == rows.size() + 1;
  }
};

enum class SolveStatus { kConverged, kMaxItersReached };

std::string_view to_string(SolveStatus status);

struct SolveResult {
  SolveStatus status = SolveStatus::kMaxItersReached;
  Vector y;
  Vector v;
  std::size_t iterations = 0;
  EvalCounters counters;
  std::optional<Trace> trace;
};

// Live variables of the iteration that just completed.
struct SolverState {
  std::size_t k = 0;
  Vector y_prev;  // y_{k-1}
  Vector y_cur;   // y_k
  Vector x_cur;   // x_k
  double a_prev = 1.0;
  double a_cur = 1.0;
  double L_k = 0.0;
  Vector v_cur;
  Vector grad_at_x;  // grad f(x_k)
};

// a_k = (1 + sqrt(1 + 4 a_{k-1}^2)) / 2, the positive root of
// a (a - 1) = a_{k-1}^2. Requires a_prev >= 1.
double next_a(double a_prev);

// Minimizer of l_{f_k}(y; x_k) + h(y) + 2L ||y - x_k||^2, obtained from a
// single prox call at x_k - grad_fk / (4L) with step 1 / (4L).
Vector solve_subproblem(CountingProblem& p, const Vector& x_k,
                        const Vector& grad_fk_at_x);

// v_k = grad f(y_k) - grad f(x_k) + L_k (y_{k-1} - x_k) + 4L (x_k - y_k)
Vector compute_vk(const Vector& grad_y, const Vector& grad_x, const Vector& y_k,
                  const Vector& x_k, const Vector& y_prev, double L_k, double L);
// Same, evaluating both gradients through the problem.
Vector compute_vk(CountingProblem& p, const Vector& y_k, const Vector& x_k,
                  const Vector& y_prev, double L_k);

// P_Omega(y_k + (a_prev - 1) / a_cur * (y_k - y_prev))
Vector extrapolate_project(CountingProblem& p, const Vector& y_k,
                           const Vector& y_prev, double a_prev, double a_cur);

struct CurvatureEstimate {
  double A = 0.0;
  Vector grad_at_x_next;
};

// A_k = 2 (l_f(y_k; x_next) - f(y_k)) / ||y_k - x_next||^2, or 0 when the two
// points coincide (to within 1e-14 (1 + ||y_k||)). Also returns
// grad f(x_next) for reuse by the next iteration. f_y_k may be supplied when
// already known.
CurvatureEstimate estimate_Ak(CountingProblem& p, const Vector& y_k,
                              const Vector& x_next,
                              std::optional<double> f_y_k = std::nullopt);

// Stepwise driver for the modified FISTA iteration. Each call to step()
// performs the curvature update left over from the previous iteration
// (skipped for k = 1, where L_1 = 0), then Steps 1-4 of iteration k.
class MfistaSolver {
 public:
  MfistaSolver(const ProblemSpec& problem, const SolverConfig& config,
               const Vector& y0);

  IterateRecord step();

  // Valid after the first step().
  const SolverState& state() const noexcept { return state_; }
  const EvalCounters& counters() const noexcept { return problem_.counters(); }
  double clamp_tol() const noexcept { return clamp_tol_; }

 private:
  CountingProblem problem_;
  double L_;
  double clamp_tol_;

  SolverState state_;
  // Carried into the next step().
  Vector y_last_;
  Vector x_next_;
  double f_y_last_ = 0.0;
  double a_last_ = 1.0;
  std::size_t completed_ = 0;
};

SolveResult run_mfista(const ProblemSpec& p, const SolverConfig& cfg,
                       const Vector& y0);

struct FistaOptions {
  double step = 0.0;
  // Apply P_Omega to the extrapolated point.
  bool project_extrapolation = false;
};

// Classic FISTA: y_k = prox(x_k - s grad f(x_k), s), same a_k sequence.
// Residual reported as grad f(y_k) - grad f(x_k) + (x_k - y_k) / s.
SolveResult run_fista_baseline(const ProblemSpec& p, const SolverConfig& cfg,
                               const Vector& y0, const FistaOptions& options);

// y_{k} = prox(y_{k-1} - grad f(y_{k-1}) / L, 1 / L), residual
// L (y_{k-1} - y_k) + grad f(y_k) - grad f(y_{k-1}).
SolveResult run_proxgrad_baseline(const ProblemSpec& p, const SolverConfig& cfg,
                                  const Vector& y0);

}  // namespace mfista

#endif  // MFISTA_SOLVER_HPP
