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

#include "mfista/prox.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "mfista/errors.hpp"

namespace mfista {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kBallSlack = 1e-12;

void require_positive_step(double t, const char* what) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw InvalidArgument(std::string(what) + ": step t must be positive");
  }
}

}  // namespace

BoxSet::BoxSet(Vector lower, Vector upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  require_same_size(lower_, upper_, "BoxSet");
  for (std::size_t i = 0; i < lower_.size(); ++i) {
    if (lower_[i] > upper_[i]) throw InvalidArgument("BoxSet: lower > upper");
  }
}

BoxSet BoxSet::uniform(std::size_t n, double lower, double upper) {
  return BoxSet(Vector(n, lower), Vector(n, upper));
}

bool BoxSet::contains(const Vector& y) const {
  require_same_size(lower_, y, "BoxSet::contains");
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] < lower_[i] || y[i] > upper_[i]) return false;
  }
  return true;
}

double BoxSet::max_norm() const {
  double s = 0.0;
  for (std::size_t i = 0; i < size(); ++i) {
    const double m = std::max(std::abs(lower_[i]), std::abs(upper_[i]));
    s += m * m;
  }
  return std::sqrt(s);
}

BallSet::BallSet(Vector center, double radius)
    : center_(std::move(center)), radius_(radius) {
  if (!(radius_ > 0.0) || !std::isfinite(radius_)) {
    throw InvalidArgument("BallSet: radius must be positive");
  }
}

bool BallSet::contains(const Vector& y) const {
  return distance(y, center_) <= radius_ * (1.0 + kBallSlack);
}

bool BallSet::centered_at_origin() const {
  return std::all_of(center_.values().begin(), center_.values().end(),
                     [](double c) { return c == 0.0; });
}

L1OnBall::L1OnBall(double lambda, BallSet ball)
    : lambda_(lambda), ball_(std::move(ball)) {
  if (!(lambda_ > 0.0) || !std::isfinite(lambda_)) {
    throw InvalidArgument("L1OnBall: lambda must be positive");
  }
}

Vector project_box(const BoxSet& box, const Vector& z) {
  require_same_size(box.lower(), z, "project_box");
  std::vector<double> out(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    out[i] = std::clamp(z[i], box.lower()[i], box.upper()[i]);
  }
  return Vector(std::move(out));
}

Vector project_ball(const BallSet& ball, const Vector& z) {
  require_same_size(ball.center(), z, "project_ball");
  const double d = distance(z, ball.center());
  if (d <= ball.radius()) return z;
  return axpy(ball.radius() / d, sub(z, ball.center()), ball.center());
}

Vector prox_box_indicator(const BoxSet& box, const Vector& z, double t) {
  require_positive_step(t, "prox_box_indicator");
  return project_box(box, z);
}

Vector soft_threshold(const Vector& z, double tau) {
  if (!(tau >= 0.0)) throw InvalidArgument("soft_threshold: tau must be >= 0");
  std::vector<double> out(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double mag = std::max(std::abs(z[i]) - tau, 0.0);
    out[i] = std::copysign(mag, z[i]);
  }
  return Vector(std::move(out));
}

Vector prox_l1_on_ball(const L1OnBall& h, const Vector& z, double t) {
  require_positive_step(t, "prox_l1_on_ball");
  if (!h.ball().centered_at_origin()) {
    throw UnsupportedConfiguration(
        "prox_l1_on_ball: soft-threshold-then-project is exact only for a "
        "ball centered at the origin");
  }
  return project_ball(h.ball(), soft_threshold(z, t * h.lambda()));
}

double box_indicator(const BoxSet& box, const Vector& y) {
  return box.contains(y) ? 0.0 : kInf;
}

double ball_indicator(const BallSet& ball, const Vector& y) {
  return ball.contains(y) ? 0.0 : kInf;
}

double l1_on_ball_value(const L1OnBall& h, const Vector& y) {
  if (!h.ball().contains(y)) return kInf;
  return h.lambda() * norm1(y);
}

}  // namespace mfista
