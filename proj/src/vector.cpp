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

#include "mfista/vector.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mfista/errors.hpp"

namespace mfista {
namespace {

void require_finite(const std::vector<double>& values, const char* what) {
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw NonFiniteValue(std::string(what) + ": non-finite entry");
    }
  }
}

void require_nonempty(std::size_t n) {
  if (n == 0) throw InvalidArgument("vector dimension must be at least 1");
}

}  // namespace

Vector::Vector(std::size_t n) : data_(n, 0.0) { require_nonempty(n); }

Vector::Vector(std::size_t n, double fill) : data_(n, fill) {
  require_nonempty(n);
  require_finite(data_, "Vector");
}

Vector::Vector(std::initializer_list<double> values) : data_(values) {
  require_nonempty(data_.size());
  require_finite(data_, "Vector");
}

Vector::Vector(std::vector<double> values) : data_(std::move(values)) {
  require_nonempty(data_.size());
  require_finite(data_, "Vector");
}

double Vector::at(std::size_t i) const {
  if (i >= data_.size()) throw InvalidArgument("Vector::at: index out of range");
  return data_[i];
}

void Vector::set(std::size_t i, double value) {
  if (i >= data_.size()) throw InvalidArgument("Vector::set: index out of range");
  if (!std::isfinite(value)) throw NonFiniteValue("Vector::set: non-finite value");
  data_[i] = value;
}

void require_same_size(const Vector& a, const Vector& b, const char* what) {
  if (a.size() != b.size()) {
    throw InvalidArgument(std::string(what) + ": dimension mismatch (" +
                          std::to_string(a.size()) + " vs " +
                          std::to_string(b.size()) + ")");
  }
}

Vector add(const Vector& a, const Vector& b) {
  require_same_size(a, b, "add");
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] + b[i];
  return Vector(std::move(out));
}

Vector sub(const Vector& a, const Vector& b) {
  require_same_size(a, b, "sub");
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] - b[i];
  return Vector(std::move(out));
}

Vector scale(double alpha, const Vector& x) {
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = alpha * x[i];
  return Vector(std::move(out));
}

Vector axpy(double alpha, const Vector& x, const Vector& y) {
  require_same_size(x, y, "axpy");
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = y[i] + alpha * x[i];
  return Vector(std::move(out));
}

double dot(const Vector& a, const Vector& b) {
  require_same_size(a, b, "dot");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2_squared(const Vector& v) {
  double s = 0.0;
  for (double x : v.values()) s += x * x;
  return s;
}

double norm2(const Vector& v) { return std::sqrt(norm2_squared(v)); }

double norm1(const Vector& v) {
  double s = 0.0;
  for (double x : v.values()) s += std::abs(x);
  return s;
}

double distance(const Vector& a, const Vector& b) {
  require_same_size(a, b, "distance");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

double max_abs_diff(const Vector& a, const Vector& b) {
  require_same_size(a, b, "max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace mfista
