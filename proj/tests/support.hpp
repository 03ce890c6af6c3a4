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

#ifndef MFISTA_TESTS_SUPPORT_HPP
#define MFISTA_TESTS_SUPPORT_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "mfista/problem.hpp"
#include "mfista/problems.hpp"
#include "mfista/prox.hpp"
#include "mfista/vector.hpp"

namespace mfista::testing {

// Seeded generator for hand-rolled property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed), seed_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }
  double uniform(double lo, double hi);
  double log_uniform(double lo, double hi);
  std::size_t index(std::size_t lo, std::size_t hi);  // inclusive
  Vector vector(std::size_t n, double lo, double hi);
  Vector in_box(const BoxSet& box);
  Vector in_ball(const BallSet& ball);
  BoxSet box(std::size_t n);
  std::mt19937_64& engine() noexcept { return rng_; }

 private:
  std::mt19937_64 rng_;
  std::uint64_t seed_;
};

// Calls body(gen) for `cases` generators with distinct derived seeds.
void for_all(std::size_t cases, std::uint64_t base_seed,
             const std::function<void(Gen&)>& body);

// f = 0.5 q y^2 + b y on [lo, hi].
ProblemSpec scalar_qp(double q, double b, double lo = -1.0, double hi = 1.0);

// Minimizer of a unimodal function on [lo, hi] by repeated grid refinement.
double grid_argmin_1d(const std::function<double(double)>& fn, double lo, double hi);

// Minimizer of lambda ||y||_1 + ||y - z||^2 / (2t) over the origin ball of
// radius r by projected subgradient steps t / (k + 1).
Vector projected_subgradient_l1_ball(double lambda, double r, const Vector& z,
                                     double t, std::size_t iters);

// min over samples w of h(w) - h(y) - <xi, w - y>; nonnegative when xi is a
// subgradient of h at y (up to rounding).
double subgradient_slack(const std::function<double(const Vector&)>& h,
                         const Vector& y, const Vector& xi,
                         const std::vector<Vector>& samples);

// Samples from dom h for the generated families: uniform points, vertices
// and coordinate faces for boxes; uniform points and boundary points for
// balls.
std::vector<Vector> box_samples(Gen& g, const BoxSet& box, std::size_t count);
std::vector<Vector> ball_samples(Gen& g, const BallSet& ball, std::size_t count);

// Straightforward mFISTA on a box QP written directly against Eigen, with
// A_k formed from function values. Returns y_1..y_iters and L_1..L_iters.
struct ReferenceRun {
  std::vector<Eigen::VectorXd> y;
  std::vector<double> L_k;
};
ReferenceRun reference_mfista_qp(const QuadraticInstance& inst,
                                 const Eigen::VectorXd& y0, std::size_t iters);

// Global minimum of a box QP with n <= 2 by exhaustive grid search.
double grid_min_box_qp(const QuadraticInstance& inst, std::size_t points_per_axis,
                       Eigen::VectorXd* argmin);

}  // namespace mfista::testing

#endif  // MFISTA_TESTS_SUPPORT_HPP
