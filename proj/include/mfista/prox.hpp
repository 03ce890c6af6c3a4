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

#ifndef MFISTA_PROX_HPP
#define MFISTA_PROX_HPP

#include <cstddef>

#include "mfista/vector.hpp"

namespace mfista {

// Closed bounded box {y : lower <= y <= upper}.
class BoxSet {
 public:
  BoxSet(Vector lower, Vector upper);
  static BoxSet uniform(std::size_t n, double lower, double upper);

  const Vector& lower() const noexcept { return lower_; }
  const Vector& upper() const noexcept { return upper_; }
  std::size_t size() const noexcept { return lower_.size(); }
  bool contains(const Vector& y) const;
  // Largest Euclidean norm over the box.
  double max_norm() const;

 private:
  Vector lower_;
  Vector upper_;
};

// Closed Euclidean ball. Membership allows a relative slack of 1e-12 on the
// radius so that projected points always test as members.
class BallSet {
 public:
  BallSet(Vector center, double radius);

  const Vector& center() const noexcept { return center_; }
  double radius() const noexcept { return radius_; }
  std::size_t size() const noexcept { return center_.size(); }
  bool contains(const Vector& y) const;
  bool centered_at_origin() const;

 private:
  Vector center_;
  double radius_;
};

// h(y) = lambda * ||y||_1 + indicator of a ball.
class L1OnBall {
 public:
  L1OnBall(double lambda, BallSet ball);

  double lambda() const noexcept { return lambda_; }
  const BallSet& ball() const noexcept { return ball_; }

 private:
  double lambda_;
  BallSet ball_;
};

Vector project_box(const BoxSet& box, const Vector& z);
Vector project_ball(const BallSet& ball, const Vector& z);

// Prox of the box indicator; equals the projection for every t > 0.
Vector prox_box_indicator(const BoxSet& box, const Vector& z, double t);

// sign(z_i) * max(|z_i| - tau, 0)
Vector soft_threshold(const Vector& z, double tau);

// project_ball(soft_threshold(z, t * lambda)). Exact only for balls centered
// at the origin; other centers throw UnsupportedConfiguration.
Vector prox_l1_on_ball(const L1OnBall& h, const Vector& z, double t);

// Extended-real values: 0 / lambda*||y||_1 inside, +infinity outside.
double box_indicator(const BoxSet& box, const Vector& y);
double ball_indicator(const BallSet& ball, const Vector& y);
double l1_on_ball_value(const L1OnBall& h, const Vector& y);

}  // namespace mfista

#endif  // MFISTA_PROX_HPP
