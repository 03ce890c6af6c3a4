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

#ifndef MFISTA_VECTOR_HPP
#define MFISTA_VECTOR_HPP

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace mfista {

// Dense real vector of fixed dimension n >= 1. Every stored entry is finite;
// any operation that would produce NaN or Inf throws NonFiniteValue instead.
class Vector {
 public:
  // n zeros.
  explicit Vector(std::size_t n);
  Vector(std::size_t n, double fill);
  Vector(std::initializer_list<double> values);
  explicit Vector(std::vector<double> values);

  std::size_t size() const noexcept { return data_.size(); }

  double operator[](std::size_t i) const noexcept { return data_[i]; }
  double at(std::size_t i) const;
  void set(std::size_t i, double value);

  std::span<const double> values() const noexcept { return data_; }
  const std::vector<double>& raw() const noexcept { return data_; }

  friend bool operator==(const Vector&, const Vector&) = default;

 private:
  std::vector<double> data_;
};

// Throws InvalidArgument unless a and b have the same dimension.
void require_same_size(const Vector& a, const Vector& b, const char* what);

Vector add(const Vector& a, const Vector& b);
Vector sub(const Vector& a, const Vector& b);
Vector scale(double alpha, const Vector& x);
// y + alpha * x
Vector axpy(double alpha, const Vector& x, const Vector& y);
double dot(const Vector& a, const Vector& b);
double norm2(const Vector& v);
double norm2_squared(const Vector& v);
double norm1(const Vector& v);
// ||a - b||
double distance(const Vector& a, const Vector& b);
double max_abs_diff(const Vector& a, const Vector& b);

inline Vector operator+(const Vector& a, const Vector& b) { return add(a, b); }
inline Vector operator-(const Vector& a, const Vector& b) { return sub(a, b); }
inline Vector operator*(double alpha, const Vector& x) { return scale(alpha, x); }

}  // namespace mfista

#endif  // MFISTA_VECTOR_HPP
