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

#ifndef MFISTA_PROBLEMS_HPP
#define MFISTA_PROBLEMS_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

#include <Eigen/Dense>

#include "mfista/problem.hpp"
#include "mfista/prox.hpp"
#include "mfista/vector.hpp"

namespace mfista {

enum class OmegaKind { kWholeSpace, kBox };

std::string_view to_string(OmegaKind omega);
OmegaKind parse_omega(std::string_view text);

// f(y) = 0.5 y'Qy + b'y on a box, h = box indicator.
struct QuadraticInstance {
  std::string kind;  // "convex-qp", "nonconvex-qp" or "qp"
  std::uint64_t seed = 0;
  Eigen::MatrixXd Q;
  Vector b;
  BoxSet box;
  OmegaKind omega = OmegaKind::kWholeSpace;
  double L = 0.0;        // spectral radius of Q
  double known_m = 0.0;  // max(0, -lambda_min(Q))
  bool convex = true;

  std::size_t dim() const noexcept { return b.size(); }
};

// f(y) = 0.5 ||Ay - target||^2, h = lambda ||y||_1 + indicator of the
// origin-centered ball of the given radius.
struct LassoOnBallInstance {
  std::uint64_t seed = 0;
  Eigen::MatrixXd A;
  Vector target;
  double lambda = 0.0;
  double radius = 0.0;
  double L = 0.0;  // largest eigenvalue of A'A

  std::size_t dim() const noexcept { return static_cast<std::size_t>(A.cols()); }
};

using Instance = std::variant<QuadraticInstance, LassoOnBallInstance>;

// Builds an instance from explicit data; L, known_m and the convex flag come
// from the spectrum of Q. Eigenvalues above -1e-12 * L count as nonnegative.
QuadraticInstance make_quadratic_instance(const Eigen::MatrixXd& Q, Vector b,
                                          BoxSet box,
                                          OmegaKind omega = OmegaKind::kWholeSpace,
                                          std::string kind = "qp",
                                          std::uint64_t seed = 0);

ProblemSpec make_problem(const QuadraticInstance& inst);
ProblemSpec make_problem(const LassoOnBallInstance& inst);
ProblemSpec make_problem(const Instance& inst);

// Q = M'M / n with Gaussian M, box [-1, 1]^n. b = -Q c with c uniform in
// [-0.5, 0.5]^n, so the minimizer lies inside the box. Treated as convex.
std::pair<ProblemSpec, QuadraticInstance> make_convex_qp(
    std::size_t n, std::uint64_t seed, OmegaKind omega = OmegaKind::kWholeSpace);

// Block-diagonal Q on box [-1, 1]^n. The leading block is -W diag(mu) W' with
// random orthogonal W and mu uniform in [0.1, 1]; it holds a fraction negfrac
// of the coordinates (at least one, and at least one fewer than n for n > 1).
// The trailing block is M'M / n_p. b drives the concave block toward a vertex
// and places the minimizer of the convex block inside the box.
std::pair<ProblemSpec, QuadraticInstance> make_nonconvex_qp(
    std::size_t n, std::uint64_t seed, double negfrac,
    OmegaKind omega = OmegaKind::kWholeSpace);

// rows x n Gaussian design, sparse planted signal plus noise. Column j is
// scaled by column_decay^(j / (n - 1)), so column_decay < 1 gives an
// ill-conditioned design. The ball radius is ten times the norm of the ridge
// solution with the same lambda.
std::pair<ProblemSpec, LassoOnBallInstance> make_lasso_on_ball(
    std::size_t rows, std::size_t n, std::uint64_t seed, double lambda,
    double column_decay = 1.0);

enum class CertificateMethod {
  kActiveSetEnumeration,
  kFineGrid,
  kProjectedGradientHighAcc,
};

std::string_view to_string(CertificateMethod method);
CertificateMethod parse_certificate_method(std::string_view text);

struct OracleCertificate {
  Vector y_star = Vector(1);
  double phi_star = 0.0;
  // ||prox_h(y* - grad f(y*), 1) - y*||
  double kkt_residual = 0.0;
  CertificateMethod method = CertificateMethod::kActiveSetEnumeration;
  std::size_t skipped_singular = 0;

  bool accepted() const noexcept { return kkt_residual <= 1e-10; }
  KnownOptimum as_known_optimum() const { return {y_star, phi_star}; }
};

// Global minimizer of a box QP by enumerating all 3^n active sets (n <= 4).
// Falls back to a fine grid plus projected-gradient polish when n <= 2 and
// the enumeration had to skip singular reduced systems.
OracleCertificate brute_force_optimum(const ProblemSpec& p,
                                      const QuadraticInstance& inst);

// Minimizer of a convex problem by restarted accelerated proximal gradient,
// run until the fixed-point residual stops improving. Throws
// InvalidArgument when the problem is not known to be convex.
OracleCertificate reference_optimum(const ProblemSpec& p, const Vector& y0);

// ||prox_h(y - grad f(y), 1) - y||
double kkt_residual(const ProblemSpec& p, const Vector& y);

// Power-iteration estimate of the spectral radius of symmetric Q, inflated
// by 1.01 so it can serve as an upper-bound surrogate for L.
double estimate_L_power(const Eigen::MatrixXd& Q, int iters);

}  // namespace mfista

#endif  // MFISTA_PROBLEMS_HPP
