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

#include "mfista/problems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "mfista/errors.hpp"
#include "mfista/solver.hpp"

namespace mfista {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr double kInf = std::numeric_limits<double>::infinity();

Eigen::Map<const VectorXd> as_eigen(const Vector& v) {
  return Eigen::Map<const VectorXd>(v.raw().data(),
                                    static_cast<Eigen::Index>(v.size()));
}

Vector from_eigen(const VectorXd& v) {
  return Vector(std::vector<double>(v.data(), v.data() + v.size()));
}

void require_dim(std::size_t n) {
  if (n < 1 || n > 64) throw InvalidArgument("instance dimension must be in [1, 64]");
}

void require_symmetric(const MatrixXd& Q) {
  if (Q.rows() != Q.cols()) throw InvalidArgument("matrix must be square");
  const double scale = std::max(1.0, Q.cwiseAbs().maxCoeff());
  if ((Q - Q.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw InvalidArgument("matrix must be symmetric");
  }
}

MatrixXd gaussian_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  std::normal_distribution<double> normal(0.0, 1.0);
  MatrixXd M(rows, cols);
  for (Eigen::Index j = 0; j < M.cols(); ++j) {
    for (Eigen::Index i = 0; i < M.rows(); ++i) M(i, j) = normal(rng);
  }
  return M;
}

Vector uniform_vector(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
  std::uniform_real_distribution<double> uni(lo, hi);
  std::vector<double> out(n);
  for (double& x : out) x = uni(rng);
  return Vector(std::move(out));
}

double quadratic_value(const MatrixXd& Q, const Vector& b, const Vector& y) {
  const auto ye = as_eigen(y);
  return 0.5 * ye.dot(Q * ye) + as_eigen(b).dot(ye);
}

// Projected gradient from y with step 1/L; used to polish grid candidates.
Vector polish_box_qp(const QuadraticInstance& inst, Vector y, int iters) {
  const double step = 1.0 / inst.L;
  for (int it = 0; it < iters; ++it) {
    const VectorXd g = inst.Q * as_eigen(y) + as_eigen(inst.b);
    Vector next = project_box(inst.box, axpy(-step, from_eigen(g), y));
    if (next == y) break;
    y = std::move(next);
  }
  return y;
}

}  // namespace

std::string_view to_string(OmegaKind omega) {
  return omega == OmegaKind::kBox ? "box" : "whole";
}

OmegaKind parse_omega(std::string_view text) {
  if (text == "box") return OmegaKind::kBox;
  if (text == "whole") return OmegaKind::kWholeSpace;
  throw InvalidArgument("unknown omega kind '" + std::string(text) + "'");
}

QuadraticInstance make_quadratic_instance(const MatrixXd& Q, Vector b, BoxSet box,
                                          OmegaKind omega, std::string kind,
                                          std::uint64_t seed) {
  require_symmetric(Q);
  const auto n = static_cast<std::size_t>(Q.rows());
  if (b.size() != n || box.size() != n) {
    throw InvalidArgument("quadratic instance: dimension mismatch");
  }
  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(Q, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  const double L = std::max(std::abs(lo), std::abs(hi));
  if (!(L > 0.0)) throw InvalidArgument("quadratic instance: Q must be nonzero");

  QuadraticInstance inst{std::move(kind), seed, Q, std::move(b), std::move(box),
                         omega, L, 0.0, true};
  if (lo < -1e-12 * L) {
    inst.known_m = std::min(-lo, L);
    inst.convex = false;
  }
  return inst;
}

ProblemSpec make_problem(const QuadraticInstance& inst) {
  auto data = std::make_shared<const QuadraticInstance>(inst);
  ProblemSpec p;
  p.dim = inst.dim();
  p.smooth_value = [data](const Vector& y) {
    return quadratic_value(data->Q, data->b, y);
  };
  p.smooth_grad = [data](const Vector& y) {
    return from_eigen(data->Q * as_eigen(y) + as_eigen(data->b));
  };
  p.linearization_gap = [data](const Vector& u1, const Vector& u2) {
    const VectorXd d = as_eigen(u1) - as_eigen(u2);
    return 0.5 * d.dot(data->Q * d);
  };
  p.h_value = [data](const Vector& y) { return box_indicator(data->box, y); };
  p.h_prox = [data](const Vector& z, double t) {
    return prox_box_indicator(data->box, z, t);
  };
  if (inst.omega == OmegaKind::kBox) {
    p.omega_project = [data](const Vector& z) { return project_box(data->box, z); };
  }
  p.lipschitz_L = inst.L;
  p.domain_bound_C = std::max(inst.box.max_norm(), 1e-300);
  p.known_m = inst.known_m;
  p.name = inst.kind;
  return p;
}

ProblemSpec make_problem(const LassoOnBallInstance& inst) {
  auto data = std::make_shared<const LassoOnBallInstance>(inst);
  const auto n = inst.dim();
  auto h = std::make_shared<const L1OnBall>(inst.lambda, BallSet(Vector(n), inst.radius));
  ProblemSpec p;
  p.dim = n;
  p.smooth_value = [data](const Vector& y) {
    return 0.5 * (data->A * as_eigen(y) - as_eigen(data->target)).squaredNorm();
  };
  p.smooth_grad = [data](const Vector& y) {
    const VectorXd r = data->A * as_eigen(y) - as_eigen(data->target);
    return from_eigen(data->A.transpose() * r);
  };
  p.linearization_gap = [data](const Vector& u1, const Vector& u2) {
    return 0.5 * (data->A * (as_eigen(u1) - as_eigen(u2))).squaredNorm();
  };
  p.h_value = [h](const Vector& y) { return l1_on_ball_value(*h, y); };
  p.h_prox = [h](const Vector& z, double t) { return prox_l1_on_ball(*h, z, t); };
  p.lipschitz_L = inst.L;
  p.domain_bound_C = inst.radius;
  p.known_m = 0.0;
  p.name = "lasso";
  return p;
}

ProblemSpec make_problem(const Instance& inst) {
  return std::visit([](const auto& i) { return make_problem(i); }, inst);
}

std::pair<ProblemSpec, QuadraticInstance> make_convex_qp(std::size_t n,
                                                         std::uint64_t seed,
                                                         OmegaKind omega) {
  require_dim(n);
  std::mt19937_64 rng(seed);
  const MatrixXd M = gaussian_matrix(rng, n, n);
  MatrixXd Q = (M.transpose() * M) / static_cast<double>(n);
  Q = (0.5 * (Q + Q.transpose())).eval();
  const Vector interior = uniform_vector(rng, n, -0.5, 0.5);
  Vector b = from_eigen(-(Q * as_eigen(interior)));
  QuadraticInstance inst = make_quadratic_instance(
      Q, std::move(b), BoxSet::uniform(n, -1.0, 1.0), omega, "convex-qp", seed);
  // PSD by construction; rounding in the eigensolver must not say otherwise.
  inst.known_m = 0.0;
  inst.convex = true;
  ProblemSpec p = make_problem(inst);
  return {std::move(p), std::move(inst)};
}

std::pair<ProblemSpec, QuadraticInstance> make_nonconvex_qp(std::size_t n,
                                                            std::uint64_t seed,
                                                            double negfrac,
                                                            OmegaKind omega) {
  require_dim(n);
  if (!(negfrac > 0.0 && negfrac < 1.0)) {
    throw InvalidArgument("negfrac must lie in (0, 1)");
  }
  std::mt19937_64 rng(seed);
  auto negatives = static_cast<std::size_t>(std::lround(negfrac * static_cast<double>(n)));
  negatives = std::clamp<std::size_t>(negatives, 1, n > 1 ? n - 1 : 1);
  const std::size_t positives = n - negatives;
  const auto nn = static_cast<Eigen::Index>(negatives);
  const auto np = static_cast<Eigen::Index>(positives);

  // Concave block: -W diag(mag) W' with magnitudes in [0.1, 1].
  const MatrixXd W = Eigen::HouseholderQR<MatrixXd>(gaussian_matrix(rng, negatives, negatives))
                         .householderQ();
  std::uniform_real_distribution<double> mag(0.1, 1.0);
  VectorXd neg(nn);
  for (Eigen::Index i = 0; i < nn; ++i) neg(i) = -mag(rng);
  MatrixXd Q = MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  Q.topLeftCorner(nn, nn) = W * neg.asDiagonal() * W.transpose();
  // Convex block: Wishart M'M / n_p.
  if (positives > 0) {
    const MatrixXd M = gaussian_matrix(rng, positives, positives);
    Q.bottomRightCorner(np, np) = (M.transpose() * M) / static_cast<double>(positives);
  }
  Q = (0.5 * (Q + Q.transpose())).eval();

  // The concave block is driven to a vertex; the convex block has its
  // unconstrained minimizer inside the box.
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  VectorXd target(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < target.size(); ++i) target(i) = 0.5 * uni(rng);
  VectorXd be = -(Q * target);
  for (Eigen::Index i = 0; i < nn; ++i) be(i) = uni(rng);
  Vector b = from_eigen(be);
  QuadraticInstance inst = make_quadratic_instance(
      Q, std::move(b), BoxSet::uniform(n, -1.0, 1.0), omega, "nonconvex-qp", seed);
  ProblemSpec p = make_problem(inst);
  return {std::move(p), std::move(inst)};
}

std::pair<ProblemSpec, LassoOnBallInstance> make_lasso_on_ball(std::size_t rows,
                                                               std::size_t n,
                                                               std::uint64_t seed,
                                                               double lambda,
                                                               double column_decay) {
  require_dim(n);
  if (rows < 1) throw InvalidArgument("lasso: rows must be positive");
  if (!(lambda > 0.0)) throw InvalidArgument("lasso: lambda must be positive");
  if (!(column_decay > 0.0 && column_decay <= 1.0)) {
    throw InvalidArgument("lasso: column_decay must be in (0, 1]");
  }
  std::mt19937_64 rng(seed);
  MatrixXd A = gaussian_matrix(rng, rows, n) / std::sqrt(static_cast<double>(rows));
  if (n > 1) {
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
      A.col(j) *= std::pow(column_decay, static_cast<double>(j) / static_cast<double>(n - 1));
    }
  }
  VectorXd planted = VectorXd::Zero(static_cast<Eigen::Index>(n));
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (Eigen::Index i = 0; i < planted.size(); i += 3) planted(i) = 2.0 * uni(rng);
  std::normal_distribution<double> noise(0.0, 0.05);
  VectorXd target = A * planted;
  for (Eigen::Index i = 0; i < target.size(); ++i) target(i) += noise(rng);

  const MatrixXd AtA = A.transpose() * A;
  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(AtA, Eigen::EigenvaluesOnly);
  const MatrixXd ridge_system =
      AtA + lambda * MatrixXd::Identity(static_cast<Eigen::Index>(n),
                                        static_cast<Eigen::Index>(n));
  const VectorXd ridge = ridge_system.ldlt().solve(A.transpose() * target);

  LassoOnBallInstance inst{seed,
                           A,
                           from_eigen(target),
                           lambda,
                           10.0 * std::max(ridge.norm(), 1e-3),
                           eig.eigenvalues().maxCoeff()};
  ProblemSpec p = make_problem(inst);
  return {std::move(p), std::move(inst)};
}

std::string_view to_string(CertificateMethod method) {
  switch (method) {
    case CertificateMethod::kActiveSetEnumeration:
      return "active-set-enumeration";
    case CertificateMethod::kFineGrid:
      return "fine-grid";
    case CertificateMethod::kProjectedGradientHighAcc:
      return "projected-gradient-highacc";
  }
  return "unknown";
}

CertificateMethod parse_certificate_method(std::string_view text) {
  if (text == "active-set-enumeration") return CertificateMethod::kActiveSetEnumeration;
  if (text == "fine-grid") return CertificateMethod::kFineGrid;
  if (text == "projected-gradient-highacc") {
    return CertificateMethod::kProjectedGradientHighAcc;
  }
  throw InvalidArgument("unknown certificate method '" + std::string(text) + "'");
}

double kkt_residual(const ProblemSpec& p, const Vector& y) {
  return distance(p.h_prox(sub(y, p.smooth_grad(y)), 1.0), y);
}

OracleCertificate brute_force_optimum(const ProblemSpec& p,
                                      const QuadraticInstance& inst) {
  const std::size_t n = inst.dim();
  if (n > 4) throw InvalidArgument("brute_force_optimum: enumeration needs n <= 4");
  const MatrixXd& Q = inst.Q;
  const VectorXd b = as_eigen(inst.b);
  const VectorXd lo = as_eigen(inst.box.lower());
  const VectorXd hi = as_eigen(inst.box.upper());
  const double sign_tol = 1e-9 * (1.0 + inst.L + b.norm());

  std::size_t cases = 1;
  for (std::size_t i = 0; i < n; ++i) cases *= 3;

  double best_phi = kInf;
  VectorXd best;
  std::size_t skipped = 0;
  std::vector<int> state(n);
  for (std::size_t code = 0; code < cases; ++code) {
    std::size_t c = code;
    std::vector<Eigen::Index> free_idx;
    VectorXd y = VectorXd::Zero(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
      state[i] = static_cast<int>(c % 3);
      c /= 3;
      const auto ii = static_cast<Eigen::Index>(i);
      if (state[i] == 0) free_idx.push_back(ii);
      if (state[i] == 1) y(ii) = lo(ii);
      if (state[i] == 2) y(ii) = hi(ii);
    }
    if (!free_idx.empty()) {
      const auto nf = static_cast<Eigen::Index>(free_idx.size());
      MatrixXd Qff(nf, nf);
      VectorXd rhs(nf);
      const VectorXd Qy = Q * y;  // free coordinates of y are still zero
      for (Eigen::Index r = 0; r < nf; ++r) {
        rhs(r) = -(b(free_idx[r]) + Qy(free_idx[r]));
        for (Eigen::Index s = 0; s < nf; ++s) Qff(r, s) = Q(free_idx[r], free_idx[s]);
      }
      Eigen::FullPivLU<MatrixXd> lu(Qff);
      lu.setThreshold(1e-12);
      if (!lu.isInvertible()) {
        ++skipped;
        continue;
      }
      const VectorXd yf = lu.solve(rhs);
      bool feasible = true;
      for (Eigen::Index r = 0; r < nf; ++r) {
        const Eigen::Index i = free_idx[r];
        if (yf(r) < lo(i) - 1e-12 || yf(r) > hi(i) + 1e-12) feasible = false;
        y(i) = std::clamp(yf(r), lo(i), hi(i));
      }
      if (!feasible) continue;
    }
    const VectorXd g = Q * y + b;
    bool kkt = true;
    for (std::size_t i = 0; i < n; ++i) {
      const auto ii = static_cast<Eigen::Index>(i);
      if (state[i] == 1 && g(ii) < -sign_tol) kkt = false;
      if (state[i] == 2 && g(ii) > sign_tol) kkt = false;
    }
    if (!kkt) continue;
    const double phi = 0.5 * y.dot(Q * y) + b.dot(y);
    if (phi < best_phi) {
      best_phi = phi;
      best = y;
    }
  }

  CertificateMethod method = CertificateMethod::kActiveSetEnumeration;
  if (skipped > 0 && n <= 2) {
    // Grid over the box, then polish the best grid point.
    constexpr int kGrid = 401;
    Vector best_grid(n);
    double best_grid_phi = kInf;
    const std::size_t total = n == 1 ? kGrid : kGrid * kGrid;
    for (std::size_t g = 0; g < total; ++g) {
      std::vector<double> pt(n);
      std::size_t rem = g;
      for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(rem % kGrid) / (kGrid - 1);
        rem /= kGrid;
        pt[i] = inst.box.lower()[i] + t * (inst.box.upper()[i] - inst.box.lower()[i]);
      }
      Vector candidate(std::move(pt));
      const double phi = quadratic_value(Q, inst.b, candidate);
      if (phi < best_grid_phi) {
        best_grid_phi = phi;
        best_grid = std::move(candidate);
      }
    }
    const Vector polished = polish_box_qp(inst, best_grid, 100000);
    const double phi = quadratic_value(Q, inst.b, polished);
    if (phi < best_phi) {
      best_phi = phi;
      best = as_eigen(polished);
      method = CertificateMethod::kFineGrid;
    }
  }
  if (!std::isfinite(best_phi)) {
    throw std::logic_error("brute_force_optimum: no feasible KKT candidate");
  }

  OracleCertificate cert;
  cert.y_star = from_eigen(best);
  cert.phi_star = phi_value(p, cert.y_star);
  cert.kkt_residual = kkt_residual(p, cert.y_star);
  cert.method = method;
  cert.skipped_singular = skipped;
  return cert;
}

OracleCertificate reference_optimum(const ProblemSpec& p, const Vector& y0) {
  p.validate();
  if (!p.known_convex()) {
    throw InvalidArgument("reference_optimum: problem is not known to be convex");
  }
  if (!std::isfinite(p.h_value(y0))) throw InvalidStart("reference_optimum: y0 outside dom h");
  const double step = 1.0 / p.lipschitz_L;

  // Accelerated proximal gradient with gradient-based restart.
  Vector y = y0;
  Vector x = y0;
  double a = 1.0;
  Vector best = y;
  double best_res = kkt_residual(p, y);
  int stalled = 0;
  for (int it = 1; it <= 500000 && stalled < 100; ++it) {
    Vector y_new = p.h_prox(axpy(-step, p.smooth_grad(x), x), step);
    if (dot(sub(x, y_new), sub(y_new, y)) > 0.0) {
      a = 1.0;
      x = y_new;
    } else {
      const double a_new = next_a(a);
      x = axpy((a - 1.0) / a_new, sub(y_new, y), y_new);
      a = a_new;
    }
    y = std::move(y_new);
    if (it % 50 == 0) {
      const double res = kkt_residual(p, y);
      if (res < best_res) {
        best_res = res;
        best = y;
        stalled = 0;
      } else {
        ++stalled;
      }
      if (res == 0.0) break;
    }
  }
  // Monotone proximal-gradient polish.
  Vector z = best;
  for (int it = 0; it < 2000; ++it) {
    z = p.h_prox(axpy(-step, p.smooth_grad(z), z), step);
    const double res = kkt_residual(p, z);
    if (res < best_res) {
      best_res = res;
      best = z;
    }
  }

  OracleCertificate cert;
  cert.y_star = best;
  cert.phi_star = phi_value(p, best);
  cert.kkt_residual = best_res;
  cert.method = CertificateMethod::kProjectedGradientHighAcc;
  return cert;
}

double estimate_L_power(const MatrixXd& Q, int iters) {
  require_symmetric(Q);
  if (iters < 1) throw InvalidArgument("estimate_L_power: iters must be positive");
  const Eigen::Index n = Q.rows();
  VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    v(i) = 1.0 + 0.5 * static_cast<double>(i + 1) / static_cast<double>(n + 1);
  }
  v.normalize();
  double estimate = 0.0;
  for (int it = 0; it < iters; ++it) {
    const VectorXd w = Q * v;
    estimate = w.norm();
    if (estimate == 0.0) return 0.0;
    v = w / estimate;
  }
  return 1.01 * (Q * v).norm();
}

}  // namespace mfista
