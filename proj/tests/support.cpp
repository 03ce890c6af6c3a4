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

#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace mfista::testing {

double Gen::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng_);
}

double Gen::log_uniform(double lo, double hi) {
  return std::exp(uniform(std::log(lo), std::log(hi)));
}

std::size_t Gen::index(std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
}

Vector Gen::vector(std::size_t n, double lo, double hi) {
  std::vector<double> v(n);
  for (auto& x : v) x = uniform(lo, hi);
  return Vector(std::move(v));
}

Vector Gen::in_box(const BoxSet& box) {
  std::vector<double> v(box.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = uniform(box.lower()[i], box.upper()[i]);
  return Vector(std::move(v));
}

Vector Gen::in_ball(const BallSet& ball) {
  const std::size_t n = ball.center().size();
  std::normal_distribution<double> normal;
  std::vector<double> dir(n);
  double norm = 0.0;
  while (norm == 0.0) {
    for (auto& x : dir) x = normal(rng_);
    norm = std::sqrt(std::inner_product(dir.begin(), dir.end(), dir.begin(), 0.0));
  }
  const double r = ball.radius() * std::pow(uniform(0.0, 1.0), 1.0 / static_cast<double>(n));
  for (std::size_t i = 0; i < n; ++i) dir[i] = ball.center()[i] + r * dir[i] / norm;
  return project_ball(ball, Vector(std::move(dir)));
}

BoxSet Gen::box(std::size_t n) {
  std::vector<double> lo(n), hi(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = uniform(-2.0, 2.0);
    lo[i] = a;
    hi[i] = a + uniform(0.1, 2.0);
  }
  return BoxSet(Vector(std::move(lo)), Vector(std::move(hi)));
}

ProblemSpec scalar_qp(double q, double b, double lo, double hi) {
  Eigen::MatrixXd Q(1, 1);
  Q(0, 0) = q;
  const QuadraticInstance inst =
      make_quadratic_instance(Q, Vector{b}, BoxSet(Vector{lo}, Vector{hi}));
  return make_problem(inst);
}

double grid_argmin_1d(const std::function<double(double)>& fn, double lo, double hi) {
  constexpr int kPoints = 2001;
  for (int round = 0; round < 12; ++round) {
    const double h = (hi - lo) / (kPoints - 1);
    double best_x = lo;
    double best_f = std::numeric_limits<double>::infinity();
    for (int i = 0; i < kPoints; ++i) {
      const double x = lo + h * i;
      const double f = fn(x);
      if (f < best_f) {
        best_f = f;
        best_x = x;
      }
    }
    lo = std::max(lo, best_x - 2 * h);
    hi = std::min(hi, best_x + 2 * h);
  }
  return 0.5 * (lo + hi);
}

Vector projected_subgradient_l1_ball(double lambda, double r, const Vector& z,
                                     double t, std::size_t iters) {
  const BallSet ball(Vector(z.size()), r);
  Vector y(z.size());
  for (std::size_t k = 1; k <= iters; ++k) {
    std::vector<double> g(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
      const double s = y[i] > 0.0 ? 1.0 : (y[i] < 0.0 ? -1.0 : 0.0);
      g[i] = lambda * s + (y[i] - z[i]) / t;
    }
    y = project_ball(ball, axpy(-t / static_cast<double>(k + 1), Vector(std::move(g)), y));
  }
  return y;
}

double subgradient_slack(const std::function<double(const Vector&)>& h,
                         const Vector& y, const Vector& xi,
                         const std::vector<Vector>& samples) {
  const double hy = h(y);
  double worst = std::numeric_limits<double>::infinity();
  for (const auto& w : samples) {
    worst = std::min(worst, h(w) - hy - dot(xi, sub(w, y)));
  }
  return worst;
}

std::vector<Vector> box_samples(Gen& g, const BoxSet& box, std::size_t count) {
  std::vector<Vector> out;
  const std::size_t n = box.size();
  for (std::size_t s = 0; s < count; ++s) {
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double lo = box.lower()[i];
      const double hi = box.upper()[i];
      switch (s % 3) {
        case 0:
          w[i] = g.uniform(lo, hi);
          break;
        case 1:
          w[i] = g.uniform(0.0, 1.0) < 0.5 ? lo : hi;
          break;
        default:
          w[i] = g.uniform(0.0, 1.0) < 0.3 ? lo : (g.uniform(0.0, 1.0) < 0.5 ? hi : g.uniform(lo, hi));
          break;
      }
    }
    out.emplace_back(std::move(w));
  }
  return out;
}

std::vector<Vector> ball_samples(Gen& g, const BallSet& ball, std::size_t count) {
  std::vector<Vector> out;
  for (std::size_t s = 0; s < count; ++s) {
    Vector w = g.in_ball(ball);
    if (s % 2 == 1) {
      const Vector d = sub(w, ball.center());
      const double nd = norm2(d);
      if (nd > 0.0) w = axpy(ball.radius() / nd, d, ball.center());
      w = project_ball(ball, w);
    }
    out.push_back(std::move(w));
  }
  return out;
}

ReferenceRun reference_mfista_qp(const QuadraticInstance& inst,
                                 const Eigen::VectorXd& y0, std::size_t iters) {
  using Eigen::VectorXd;
  const Eigen::MatrixXd& Q = inst.Q;
  VectorXd b(static_cast<Eigen::Index>(inst.dim()));
  VectorXd lo(b.size()), hi(b.size());
  for (Eigen::Index i = 0; i < b.size(); ++i) {
    const auto u = static_cast<std::size_t>(i);
    b(i) = inst.b[u];
    lo(i) = inst.box.lower()[u];
    hi(i) = inst.box.upper()[u];
  }
  const double L = inst.L;
  auto f = [&](const VectorXd& y) { return 0.5 * y.dot(Q * y) + b.dot(y); };
  auto grad = [&](const VectorXd& y) -> VectorXd { return Q * y + b; };
  auto clamp = [&](const VectorXd& z) -> VectorXd { return z.cwiseMax(lo).cwiseMin(hi); };
  auto project_omega = [&](const VectorXd& z) -> VectorXd {
    return inst.omega == OmegaKind::kBox ? clamp(z) : z;
  };

  ReferenceRun out;
  VectorXd x = y0;
  VectorXd y_prev = y0;
  double a_prev = 1.0;
  double Lk = 0.0;
  for (std::size_t k = 1; k <= iters; ++k) {
    const VectorXd gk = grad(x) + Lk * (x - y_prev);
    const VectorXd y = clamp(x - gk / (4.0 * L));
    const double a = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * a_prev * a_prev));
    const VectorXd x_next = project_omega(y + ((a_prev - 1.0) / a) * (y - y_prev));
    out.y.push_back(y);
    out.L_k.push_back(Lk);
    const VectorXd d = y - x_next;
    const double dd = d.squaredNorm();
    double A = 0.0;
    if (dd > 0.0) {
      const double lin = f(x_next) + grad(x_next).dot(y - x_next);
      A = 2.0 * (lin - f(y)) / dd;
    }
    Lk = std::max(0.0, A);
    y_prev = y;
    x = x_next;
    a_prev = a;
  }
  return out;
}

double grid_min_box_qp(const QuadraticInstance& inst, std::size_t points,
                       Eigen::VectorXd* argmin) {
  const auto n = inst.dim();
  if (n > 2) throw std::invalid_argument("grid_min_box_qp: n must be <= 2");
  Eigen::VectorXd b(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) b(static_cast<Eigen::Index>(i)) = inst.b[i];
  auto coord = [&](std::size_t axis, std::size_t j) {
    const double lo = inst.box.lower()[axis];
    const double hi = inst.box.upper()[axis];
    return lo + (hi - lo) * static_cast<double>(j) / static_cast<double>(points - 1);
  };
  double best = std::numeric_limits<double>::infinity();
  Eigen::VectorXd y(static_cast<Eigen::Index>(n));
  const std::size_t outer = n == 2 ? points : 1;
  for (std::size_t i = 0; i < points; ++i) {
    for (std::size_t j = 0; j < outer; ++j) {
      y(0) = coord(0, i);
      if (n == 2) y(1) = coord(1, j);
      const double v = 0.5 * y.dot(inst.Q * y) + b.dot(y);
      if (v < best) {
        best = v;
        if (argmin != nullptr) *argmin = y;
      }
    }
  }
  return best;
}

}  // namespace mfista::testing
