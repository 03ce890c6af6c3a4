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

#include "mfista/problem.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "mfista/errors.hpp"

namespace mfista {

void ProblemSpec::validate() const {
  if (dim == 0) throw InvalidArgument("problem dimension must be positive");
  if (!smooth_value || !smooth_grad || !h_value || !h_prox) {
    throw InvalidArgument("problem is missing a required oracle");
  }
  if (!(lipschitz_L > 0.0) || !std::isfinite(lipschitz_L)) {
    throw InvalidArgument("Lipschitz constant L must be positive and finite");
  }
  if (!(domain_bound_C > 0.0) || !std::isfinite(domain_bound_C)) {
    throw InvalidArgument("domain bound C must be positive and finite");
  }
  if (known_m && !(*known_m >= 0.0 && *known_m <= lipschitz_L)) {
    throw InvalidArgument("known weak-convexity modulus must lie in [0, L]");
  }
  if (known_opt && known_opt->y_star.size() != dim) {
    throw InvalidArgument("known optimum has wrong dimension");
  }
}

CountingProblem::CountingProblem(const ProblemSpec& spec) : spec_(spec) {
  spec_.validate();
}

void CountingProblem::check_dim(const Vector& v, const char* what) const {
  if (v.size() != spec_.dim) {
    throw InvalidArgument(std::string(what) + ": expected dimension " +
                          std::to_string(spec_.dim) + ", got " +
                          std::to_string(v.size()));
  }
}

double CountingProblem::f(const Vector& y) {
  check_dim(y, "f");
  ++counters_.f_evals;
  const double value = spec_.smooth_value(y);
  if (!std::isfinite(value)) throw NonFiniteValue("f returned a non-finite value");
  return value;
}

Vector CountingProblem::grad(const Vector& y) {
  check_dim(y, "grad");
  ++counters_.grad_evals;
  Vector g = spec_.smooth_grad(y);
  check_dim(g, "grad result");
  return g;
}

double CountingProblem::h(const Vector& y) const {
  check_dim(y, "h");
  return spec_.h_value(y);
}

Vector CountingProblem::prox(const Vector& z, double t) {
  check_dim(z, "prox");
  ++counters_.prox_evals;
  Vector y = spec_.h_prox(z, t);
  check_dim(y, "prox result");
  return y;
}

Vector CountingProblem::project(const Vector& z) {
  check_dim(z, "project");
  if (spec_.omega_is_whole_space()) return z;
  ++counters_.proj_evals;
  Vector x = spec_.omega_project(z);
  check_dim(x, "project result");
  return x;
}

double CountingProblem::linearization_gap(const Vector& u1, double f_u1,
                                          const Vector& u2,
                                          const Vector& grad_u2) {
  if (spec_.linearization_gap) return spec_.linearization_gap(u1, u2);
  const double f_u2 = f(u2);
  return f_u1 - (f_u2 + dot(grad_u2, sub(u1, u2)));
}

double linearize_f(const ProblemSpec& p, const Vector& u1, const Vector& u2) {
  if (u1.size() != p.dim || u2.size() != p.dim) {
    throw InvalidArgument("linearize_f: dimension mismatch");
  }
  return p.smooth_value(u2) + dot(p.smooth_grad(u2), sub(u1, u2));
}

double phi_value(const ProblemSpec& p, const Vector& y) {
  if (y.size() != p.dim) throw InvalidArgument("phi_value: dimension mismatch");
  const double h = p.h_value(y);
  if (h == std::numeric_limits<double>::infinity()) return h;
  return p.smooth_value(y) + h;
}

}  // namespace mfista
