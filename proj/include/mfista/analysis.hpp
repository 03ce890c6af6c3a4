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

#ifndef MFISTA_ANALYSIS_HPP
#define MFISTA_ANALYSIS_HPP

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mfista/problems.hpp"
#include "mfista/solver.hpp"

namespace mfista {

enum class CheckStatus { kPass, kFail, kNotApplicable };

std::string_view to_string(CheckStatus status);

// Outcome of one check over a trace. `worst` is the largest value of
// (left side - right side) seen, so it is <= tolerance on a pass; `at_k` is
// the iteration where it occurred.
struct TraceCheckReport {
  std::string name;
  CheckStatus status = CheckStatus::kNotApplicable;
  double worst = 0.0;
  std::size_t at_k = 0;
  std::string note;

  bool failed() const noexcept { return status == CheckStatus::kFail; }
};

// `CHECK <name> <PASS|FAIL|N/A> worst=<float> at_k=<int>`
std::string format_check_line(const TraceCheckReport& report);

struct LyapunovRow {
  std::size_t k = 0;
  double energy = 0.0;
};

// E_k = a_{k-1}^2 (phi(y_k) - phi*) + 2L ||a_{k-1}(y_k - y_{k-1}) + y_{k-1} - y*||^2
// for k = 1..N. Throws UnsupportedTrace without iterate vectors.
std::vector<LyapunovRow> lyapunov_sequence(const Trace& trace,
                                           const OracleCertificate& oracle,
                                           double L);

// E_{k+1} <= E_k + 1e-8 (1 + |E_2|) for k >= 2. Not applicable when any
// L_k > 0 (convexity not observed) or the trace has fewer than 3 rows.
TraceCheckReport check_lyapunov_monotone(const Trace& trace,
                                         const OracleCertificate& oracle,
                                         double L);

// min_{k<=n} ||v_k|| <= 2 sqrt(L) (min_{2<=k<=n} (36L dxy_k^2 + L_k dyy_k^2))^{1/2}
// + 1e-9 for every n >= 2.
TraceCheckReport check_residual_bound(const Trace& trace, double L);

// phi(y_1) - phi* + 2L ||y_1 - y*||^2, the right side of the summed key
// inequality with m = L_k = 0 (a_0 = 1).
double function_value_constant(const Trace& trace, const OracleCertificate& oracle,
                               double L);

// a_{n-1}^2 (phi(y_n) - phi*) <= function_value_constant + 1e-8 for every n.
TraceCheckReport check_function_value_bound(const Trace& trace,
                                            const OracleCertificate& oracle,
                                            double L);

struct RateFit {
  std::vector<std::size_t> n_grid;
  std::vector<double> best_residual;
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

// Roughly log-spaced distinct integers in [lo, hi].
std::vector<std::size_t> log_grid(std::size_t lo, std::size_t hi, std::size_t points);

// Least-squares line through (log n, log min_{k<=n} ||v_k||). The grid must
// lie inside the trace, have >= 4 points and span >= 1.5 decades. A zero
// residual truncates the grid at its first occurrence; >= 4 points must
// survive.
RateFit fit_rate(const Trace& trace, std::span<const std::size_t> n_grid);
// Same over a raw residual sequence (vnorm[k-1] = ||v_k||).
RateFit fit_rate(std::span<const double> vnorm, std::span<const std::size_t> n_grid);

// n^power * best_residual(n) over the last half of the grid must not grow by
// more than `slack` between consecutive grid points.
TraceCheckReport check_scaled_trend(const RateFit& fit, double power,
                                    double slack = 0.10);

// Max ||y_k - y_{k-1}|| over the final `tail_fraction` of the trace is <= tol.
bool iterates_settle(const Trace& trace, double tol, double tail_fraction = 0.1);

// Every row with L_k == 0.
bool convexity_observed(const Trace& trace);

}  // namespace mfista

#endif  // MFISTA_ANALYSIS_HPP
