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

#include "mfista/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "mfista/errors.hpp"
#include "mfista/io.hpp"

namespace mfista {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void require_vectors(const Trace& trace, const char* what) {
  if (!trace.has_vectors()) {
    throw UnsupportedTrace(std::string(what) + ": trace has no iterate vectors");
  }
}

TraceCheckReport not_applicable(std::string name, std::string note) {
  TraceCheckReport r;
  r.name = std::move(name);
  r.status = CheckStatus::kNotApplicable;
  r.note = std::move(note);
  return r;
}

// Tracks the largest (lhs - rhs) and where it happened.
struct WorstTracker {
  double worst = kNegInf;
  std::size_t at_k = 0;

  void observe(double violation, std::size_t k) {
    if (violation > worst) {
      worst = violation;
      at_k = k;
    }
  }
};

TraceCheckReport finish(std::string name, const WorstTracker& w, double tol) {
  TraceCheckReport r;
  r.name = std::move(name);
  r.worst = w.worst;
  r.at_k = w.at_k;
  r.status = w.worst <= tol ? CheckStatus::kPass : CheckStatus::kFail;
  return r;
}

}  // namespace

std::string_view to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::kPass:
      return "PASS";
    case CheckStatus::kFail:
      return "FAIL";
    case CheckStatus::kNotApplicable:
      return "N/A";
  }
  return "N/A";
}

std::string format_check_line(const TraceCheckReport& report) {
  std::ostringstream out;
  out << "CHECK " << report.name << ' ' << to_string(report.status)
      << " worst=" << format_double(report.worst) << " at_k=" << report.at_k;
  return out.str();
}

bool convexity_observed(const Trace& trace) {
  return std::all_of(trace.rows.begin(), trace.rows.end(),
                     [](const IterateRecord& r) { return r.L_k == 0.0; });
}

std::vector<LyapunovRow> lyapunov_sequence(const Trace& trace,
                                           const OracleCertificate& oracle,
                                           double L) {
  require_vectors(trace, "lyapunov_sequence");
  std::vector<LyapunovRow> out;
  out.reserve(trace.rows.size());
  double a_prev = 1.0;  // a_0
  for (std::size_t k = 1; k <= trace.rows.size(); ++k) {
    const IterateRecord& row = trace.rows[k - 1];
    const Vector& y_k = trace.y[k];
    const Vector& y_km1 = trace.y[k - 1];
    const Vector u = sub(axpy(a_prev, sub(y_k, y_km1), y_km1), oracle.y_star);
    const double energy =
        a_prev * a_prev * (row.phi - oracle.phi_star) + 2.0 * L * norm2_squared(u);
    out.push_back({k, energy});
    a_prev = row.a_k;
  }
  return out;
}

TraceCheckReport check_lyapunov_monotone(const Trace& trace,
                                         const OracleCertificate& oracle, double L) {
  const std::string name = "check_lyapunov_monotone";
  require_vectors(trace, name.c_str());
  if (!convexity_observed(trace)) {
    return not_applicable(name, "curvature estimate became positive");
  }
  if (trace.rows.size() < 3) return not_applicable(name, "trace shorter than 3");
  const std::vector<LyapunovRow> e = lyapunov_sequence(trace, oracle, L);
  const double tol = 1e-8 * (1.0 + std::abs(e[1].energy));
  WorstTracker w;
  for (std::size_t i = 1; i + 1 < e.size(); ++i) {
    w.observe(e[i + 1].energy - e[i].energy, e[i + 1].k);
  }
  return finish(name, w, tol);
}

TraceCheckReport check_residual_bound(const Trace& trace, double L) {
  const std::string name = "check_residual_bound";
  if (trace.rows.size() < 2) return not_applicable(name, "trace shorter than 2");
  WorstTracker w;
  double min_v = trace.rows[0].vnorm;
  double min_model = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < trace.rows.size(); ++i) {
    const IterateRecord& r = trace.rows[i];
    min_v = std::min(min_v, r.vnorm);
    min_model = std::min(min_model, 36.0 * L * r.dxy * r.dxy + r.L_k * r.dyy * r.dyy);
    const double rhs = 2.0 * std::sqrt(L) * std::sqrt(min_model) + 1e-9;
    w.observe(min_v - rhs, r.k);
  }
  return finish(name, w, 0.0);
}

double function_value_constant(const Trace& trace, const OracleCertificate& oracle,
                               double L) {
  require_vectors(trace, "function_value_constant");
  return (trace.rows[0].phi - oracle.phi_star) +
         2.0 * L * norm2_squared(sub(trace.y[1], oracle.y_star));
}

TraceCheckReport check_function_value_bound(const Trace& trace,
                                            const OracleCertificate& oracle,
                                            double L) {
  const std::string name = "check_function_value_bound";
  require_vectors(trace, name.c_str());
  if (!convexity_observed(trace)) {
    return not_applicable(name, "curvature estimate became positive");
  }
  const double bound = function_value_constant(trace, oracle, L);
  WorstTracker w;
  double a_prev = 1.0;
  for (const IterateRecord& r : trace.rows) {
    w.observe(a_prev * a_prev * (r.phi - oracle.phi_star) - bound, r.k);
    a_prev = r.a_k;
  }
  return finish(name, w, 1e-8);
}

std::vector<std::size_t> log_grid(std::size_t lo, std::size_t hi, std::size_t points) {
  if (lo < 1 || hi < lo || points < 2) {
    throw InvalidArgument("log_grid: need 1 <= lo <= hi and points >= 2");
  }
  std::vector<std::size_t> grid;
  const double llo = std::log(static_cast<double>(lo));
  const double lhi = std::log(static_cast<double>(hi));
  for (std::size_t i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(points - 1);
    const auto n = static_cast<std::size_t>(std::llround(std::exp(llo + t * (lhi - llo))));
    if (grid.empty() || n > grid.back()) grid.push_back(std::clamp(n, lo, hi));
  }
  return grid;
}

RateFit fit_rate(std::span<const double> vnorm, std::span<const std::size_t> n_grid) {
  if (n_grid.size() < 4) throw InvalidArgument("fit_rate: need at least 4 grid points");
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    if (n_grid[i] < 1 || n_grid[i] > vnorm.size()) {
      throw InvalidArgument("fit_rate: grid point outside the trace");
    }
    if (i > 0 && n_grid[i] <= n_grid[i - 1]) {
      throw InvalidArgument("fit_rate: grid must be strictly increasing");
    }
  }
  if (std::log10(static_cast<double>(n_grid.back()) / static_cast<double>(n_grid.front())) <
      1.5 - 1e-12) {
    throw InvalidArgument("fit_rate: grid must span at least 1.5 decades");
  }

  RateFit fit;
  double best = std::numeric_limits<double>::infinity();
  std::size_t k = 0;
  for (std::size_t n : n_grid) {
    for (; k < n; ++k) best = std::min(best, vnorm[k]);
    if (best == 0.0) break;
    fit.n_grid.push_back(n);
    fit.best_residual.push_back(best);
  }
  if (fit.n_grid.size() < 4) {
    throw InvalidArgument("fit_rate: fewer than 4 grid points before the residual hit zero");
  }

  const auto m = static_cast<double>(fit.n_grid.size());
  double sx = 0, sy = 0;
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < fit.n_grid.size(); ++i) {
    xs.push_back(std::log(static_cast<double>(fit.n_grid[i])));
    ys.push_back(std::log(fit.best_residual[i]));
    sx += xs.back();
    sy += ys.back();
  }
  const double mx = sx / m, my = sy / m;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return fit;
}

RateFit fit_rate(const Trace& trace, std::span<const std::size_t> n_grid) {
  std::vector<double> vnorm;
  vnorm.reserve(trace.rows.size());
  for (const IterateRecord& r : trace.rows) vnorm.push_back(r.vnorm);
  return fit_rate(std::span<const double>(vnorm), n_grid);
}

TraceCheckReport check_scaled_trend(const RateFit& fit, double power, double slack) {
  const std::string name = "check_scaled_trend";
  if (fit.n_grid.size() < 2) return not_applicable(name, "grid too short");
  const std::size_t start = fit.n_grid.size() / 2;
  WorstTracker w;
  for (std::size_t i = start; i + 1 < fit.n_grid.size(); ++i) {
    const double s0 = std::pow(static_cast<double>(fit.n_grid[i]), power) * fit.best_residual[i];
    const double s1 =
        std::pow(static_cast<double>(fit.n_grid[i + 1]), power) * fit.best_residual[i + 1];
    // Relative growth beyond the allowed slack.
    w.observe(s1 / s0 - (1.0 + slack), fit.n_grid[i + 1]);
  }
  if (w.at_k == 0) return not_applicable(name, "grid too short");
  return finish(name, w, 0.0);
}

bool iterates_settle(const Trace& trace, double tol, double tail_fraction) {
  if (trace.rows.empty()) return false;
  const auto n = trace.rows.size();
  const auto tail = std::max<std::size_t>(
      1, static_cast<std::size_t>(tail_fraction * static_cast<double>(n)));
  for (std::size_t i = n - tail; i < n; ++i) {
    if (trace.rows[i].dyy > tol) return false;
  }
  return true;
}

}  // namespace mfista
