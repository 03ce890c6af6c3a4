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

#ifndef MFISTA_PROBLEM_HPP
#define MFISTA_PROBLEM_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "mfista/vector.hpp"

namespace mfista {

struct KnownOptimum {
  Vector y_star;
  double phi_star;
};

// Composite instance min f(y) + h(y), f smooth (possibly nonconvex) with
// L-Lipschitz gradient on Omega, h convex with bounded domain inside Omega.
//
// Oracles must be defined on all of R^n; only their restriction to Omega is
// assumed to satisfy the Lipschitz bound. They must be safe to call
// concurrently (pure functions of their arguments).
struct ProblemSpec {
  std::size_t dim = 0;

  std::function<double(const Vector&)> smooth_value;
  std::function<Vector(const Vector&)> smooth_grad;
  // +infinity outside dom h.
  std::function<double(const Vector&)> h_value;
  // argmin_y { h(y) + ||y - z||^2 / (2t) }
  std::function<Vector(const Vector& z, double t)> h_prox;
  // Projection onto Omega. Empty means Omega = R^n (no projection).
  std::function<Vector(const Vector&)> omega_project;
  // Optional: f(u1) - l_f(u1; u2) computed without subtracting function
  // values. When absent the gap is formed from f and grad evaluations.
  std::function<double(const Vector& u1, const Vector& u2)> linearization_gap;

  double lipschitz_L = 0.0;
  double domain_bound_C = 0.0;
  // Analysis-only metadata: weak-convexity modulus and a certified optimum.
  std::optional<double> known_m;
  std::optional<KnownOptimum> known_opt;

  std::string name;

  // Throws InvalidArgument when an invariant is violated.
  void validate() const;
  bool omega_is_whole_space() const noexcept { return !omega_project; }
  // known_m == 0. Unknown modulus counts as not convex.
  bool known_convex() const noexcept { return known_m && *known_m == 0.0; }
};

struct EvalCounters {
  std::uint64_t grad_evals = 0;
  std::uint64_t prox_evals = 0;
  std::uint64_t proj_evals = 0;
  std::uint64_t f_evals = 0;
};

// Per-run wrapper that routes every oracle call through a counter and checks
// returned dimensions. Not shared between threads; one instance per run.
class CountingProblem {
 public:
  explicit CountingProblem(const ProblemSpec& spec);

  const ProblemSpec& spec() const noexcept { return spec_; }
  const EvalCounters& counters() const noexcept { return counters_; }

  double f(const Vector& y);
  Vector grad(const Vector& y);
  double h(const Vector& y) const;
  Vector prox(const Vector& z, double t);
  // Identity (and uncounted) when Omega = R^n.
  Vector project(const Vector& z);
  // f(u1) - l_f(u1; u2) given grad_u2 = grad f(u2) and f(u1) already known.
  double linearization_gap(const Vector& u1, double f_u1, const Vector& u2,
                           const Vector& grad_u2);

 private:
  void check_dim(const Vector& v, const char* what) const;

  const ProblemSpec& spec_;
  EvalCounters counters_;
};

// l_f(u1; u2) = f(u2) + <grad f(u2), u1 - u2>
double linearize_f(const ProblemSpec& p, const Vector& u1, const Vector& u2);

// f(y) + h(y); +infinity outside dom h.
double phi_value(const ProblemSpec& p, const Vector& y);

}  // namespace mfista

#endif  // MFISTA_PROBLEM_HPP
