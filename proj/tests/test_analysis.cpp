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

#include <algorithm>
#include <cmath>
#include <limits>

#include <doctest.h>

#include "mfista/analysis.hpp"
#include "mfista/errors.hpp"
#include "mfista/problems.hpp"
#include "mfista/solver.hpp"
#include "support.hpp"

namespace mfista {
namespace {

using testing::Gen;

Trace run_trace(const ProblemSpec& p, const Vector& y0, std::size_t iters, bool vectors) {
  SolverConfig cfg;
  cfg.epsilon = 1e-300;
  cfg.max_iters = iters;
  cfg.record_vectors = vectors;
  return *run_mfista(p, cfg, y0).trace;
}

Trace synthetic_trace(const std::vector<double>& vnorm) {
  Trace t;
  double a = 1.0;
  for (std::size_t k = 1; k <= vnorm.size(); ++k) {
    a = next_a(a);
    IterateRecord r;
    r.k = k;
    r.a_k = a;
    r.vnorm = vnorm[k - 1];
    r.dxy = 1.0;
    r.dyy = 1.0;
    t.rows.push_back(r);
  }
  return t;
}

// Largest (lhs - rhs) of the residual aggregation inequality, recomputed
// from the trace rows.
double residual_bound_worst(const Trace& t, double L) {
  double worst = -std::numeric_limits<double>::infinity();
  double min_v = t.rows[0].vnorm;
  double min_q = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < t.rows.size(); ++i) {
    const auto& r = t.rows[i];
    min_v = std::min(min_v, r.vnorm);
    min_q = std::min(min_q, 36.0 * L * r.dxy * r.dxy + r.L_k * r.dyy * r.dyy);
    worst = std::max(worst, min_v - 2.0 * std::sqrt(L) * std::sqrt(min_q));
  }
  return worst;
}

TEST_CASE("residual bound holds on genuine traces and matches a recomputation") {
  testing::for_all(12, 51, [](Gen& g) {
    const std::size_t n = g.index(1, 10);
    const bool convex = g.index(0, 1) == 0;
    const auto [p, inst] = convex ? make_convex_qp(n, g.seed())
                                  : make_nonconvex_qp(n, g.seed(), 0.4);
    const Trace t = run_trace(p, g.in_box(inst.box), 400, false);
    const auto report = check_residual_bound(t, p.lipschitz_L);
    CHECK(report.status == CheckStatus::kPass);
    CHECK(report.worst == doctest::Approx(residual_bound_worst(t, p.lipschitz_L)));
  });
}

TEST_CASE("residual bound flags a corrupted trace at the corrupted row") {
  const auto [p, inst] = make_convex_qp(6, 2);
  Trace t = run_trace(p, Vector(6), 300, false);
  for (auto& r : t.rows) r.vnorm *= 1e3;
  const auto report = check_residual_bound(t, p.lipschitz_L);
  CHECK(report.status == CheckStatus::kFail);
  CHECK(report.at_k >= 2);
  CHECK(report.worst > 0.0);
  CHECK(format_check_line(report).rfind("CHECK check_residual_bound FAIL worst=", 0) == 0);

  Trace single = run_trace(p, Vector(6), 1, false);
  CHECK(check_residual_bound(single, p.lipschitz_L).status == CheckStatus::kNotApplicable);
}

TEST_CASE("Lyapunov sequence matches a direct evaluation") {
  const auto [p, inst] = make_convex_qp(3, 4);
  const auto cert = brute_force_optimum(p, inst);
  const Trace t = run_trace(p, Vector(3), 50, true);
  const auto rows = lyapunov_sequence(t, cert, p.lipschitz_L);
  REQUIRE(rows.size() == t.rows.size());
  double a_prev = 1.0;
  for (std::size_t k = 1; k <= t.rows.size(); ++k) {
    const Vector& y = t.y[k];
    const Vector& yp = t.y[k - 1];
    const Vector w = add(scale(a_prev, sub(y, yp)), sub(yp, cert.y_star));
    const double e = a_prev * a_prev * (phi_value(p, y) - cert.phi_star) +
                     2.0 * p.lipschitz_L * norm2_squared(w);
    CHECK(rows[k - 1].k == k);
    CHECK(rows[k - 1].energy == doctest::Approx(e).epsilon(1e-12));
    a_prev = t.rows[k - 1].a_k;
  }
}

TEST_CASE("Lyapunov monotonicity") {
  SUBCASE("1-D convex QP over 200 iterations") {
    const auto p = testing::scalar_qp(1.0, -0.3);
    Eigen::MatrixXd Q(1, 1);
    Q(0, 0) = 1.0;
    const auto inst = make_quadratic_instance(Q, Vector{-0.3}, BoxSet::uniform(1, -1, 1));
    const auto cert = brute_force_optimum(p, inst);
    const Trace t = run_trace(p, Vector{-1.0}, 200, true);
    CHECK(check_lyapunov_monotone(t, cert, p.lipschitz_L).status == CheckStatus::kPass);
  }
  SUBCASE("nonconvex trace is not applicable") {
    const auto [p, inst] = make_nonconvex_qp(3, 5, 0.5);
    const auto cert = brute_force_optimum(p, inst);
    const Trace t = run_trace(p, Vector(3), 100, true);
    REQUIRE_FALSE(convexity_observed(t));
    CHECK(check_lyapunov_monotone(t, cert, p.lipschitz_L).status == CheckStatus::kNotApplicable);
  }
  SUBCASE("constant trace at the optimum") {
    const auto p = testing::scalar_qp(1.0, -0.3);
    OracleCertificate cert;
    cert.y_star = Vector{0.3};
    cert.phi_star = phi_value(p, cert.y_star);
    Trace t = synthetic_trace(std::vector<double>(10, 0.0));
    for (std::size_t k = 0; k <= t.rows.size(); ++k) t.y.push_back(cert.y_star);
    for (auto& r : t.rows) r.phi = cert.phi_star;
    const auto report = check_lyapunov_monotone(t, cert, p.lipschitz_L);
    CHECK(report.status == CheckStatus::kPass);
    for (const auto& row : lyapunov_sequence(t, cert, p.lipschitz_L)) CHECK(row.energy == 0.0);
  }
  SUBCASE("norms-only trace") {
    const auto p = testing::scalar_qp(1.0, -0.3);
    OracleCertificate cert;
    cert.y_star = Vector{0.3};
    const Trace t = run_trace(p, Vector{0.0}, 20, false);
    CHECK_THROWS_AS(lyapunov_sequence(t, cert, 1.0), UnsupportedTrace);
  }
}

TEST_CASE("function-value bound") {
  const auto [p, inst] = make_convex_qp(2, 6);
  const auto cert = brute_force_optimum(p, inst);
  const Trace t = run_trace(p, Vector(2), 500, true);
  CHECK(check_function_value_bound(t, cert, p.lipschitz_L).status == CheckStatus::kPass);
  const double c0 = function_value_constant(t, cert, p.lipschitz_L);
  const double direct = phi_value(p, t.y[1]) - cert.phi_star +
                        2.0 * p.lipschitz_L * norm2_squared(sub(t.y[1], cert.y_star));
  CHECK(c0 == doctest::Approx(direct));
  // a_{n-1} >= n / 4 turns the bound into 16 c0 / n^2.
  for (std::size_t n : {100, 400}) {
    const double gap = t.rows[n - 1].phi - cert.phi_star;
    CHECK(gap <= 16.0 * c0 / static_cast<double>(n * n) + 1e-8);
  }

  SUBCASE("started at the optimum") {
    const auto q = testing::scalar_qp(1.0, -0.3);
    OracleCertificate c;
    c.y_star = Vector{0.3};
    c.phi_star = phi_value(q, c.y_star);
    Trace s = synthetic_trace(std::vector<double>(5, 0.0));
    for (std::size_t k = 0; k <= s.rows.size(); ++k) s.y.push_back(c.y_star);
    for (auto& r : s.rows) r.phi = c.phi_star;
    const auto report = check_function_value_bound(s, c, 1.0);
    CHECK(report.status == CheckStatus::kPass);
    CHECK(report.worst <= 1e-9);
  }
}

TEST_CASE("fit_rate recovers exact power laws") {
  testing::for_all(30, 52, [](Gen& g) {
    const double c = g.log_uniform(1e-3, 1e3);
    const double power = g.uniform(0.2, 3.0);
    std::vector<double> v(5000);
    for (std::size_t k = 1; k <= v.size(); ++k) v[k - 1] = c * std::pow(double(k), -power);
    const auto grid = log_grid(10, 5000, 9);
    const RateFit fit = fit_rate(v, grid);
    CHECK(fit.slope == doctest::Approx(-power).epsilon(1e-6));
    CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::exp(fit.intercept) == doctest::Approx(c).epsilon(1e-6));
  });
  std::vector<double> v(10000);
  for (std::size_t k = 1; k <= v.size(); ++k) v[k - 1] = 2.0 / double(k);
  CHECK(fit_rate(v, log_grid(100, 10000, 20)).slope == doctest::Approx(-1.0).epsilon(1e-6));
}

TEST_CASE("fit_rate uses the running minimum and truncates at zero") {
  std::vector<double> v(2000);
  for (std::size_t k = 1; k <= v.size(); ++k) {
    v[k - 1] = (k % 2 == 0 ? 10.0 : 1.0) / double(k * k);
  }
  const RateFit fit = fit_rate(v, log_grid(10, 1999, 6));
  for (std::size_t i = 1; i < fit.best_residual.size(); ++i) {
    CHECK(fit.best_residual[i] <= fit.best_residual[i - 1]);
  }

  std::vector<double> z(3000);
  for (std::size_t k = 1; k <= z.size(); ++k) z[k - 1] = k >= 2500 ? 0.0 : 1.0 / double(k);
  const RateFit cut = fit_rate(z, log_grid(10, 3000, 10));
  CHECK(cut.n_grid.back() < 2500);
  CHECK(cut.slope == doctest::Approx(-1.0).epsilon(1e-6));

  for (std::size_t k = 20; k <= z.size(); ++k) z[k - 1] = 0.0;
  CHECK_THROWS_AS(fit_rate(z, log_grid(10, 3000, 10)), InvalidArgument);
}

TEST_CASE("fit_rate rejects unusable grids") {
  std::vector<double> v(1000, 1.0);
  CHECK_THROWS_AS(fit_rate(v, log_grid(10, 5000, 8)), InvalidArgument);
  CHECK_THROWS_AS(fit_rate(v, log_grid(10, 1000, 3)), InvalidArgument);
  CHECK_THROWS_AS(fit_rate(v, log_grid(100, 1000, 8)), InvalidArgument);
}

TEST_CASE("log_grid") {
  const auto grid = log_grid(100, 10000, 20);
  CHECK(grid.front() == 100);
  CHECK(grid.back() == 10000);
  CHECK(std::is_sorted(grid.begin(), grid.end()));
  CHECK(std::adjacent_find(grid.begin(), grid.end()) == grid.end());
  CHECK(log_grid(1, 3, 10).size() == 3);
}

TEST_CASE("scaled trend check") {
  std::vector<double> fast(10000), slow(10000);
  for (std::size_t k = 1; k <= fast.size(); ++k) {
    fast[k - 1] = std::pow(double(k), -2.0);
    slow[k - 1] = std::pow(double(k), -1.0);
  }
  const auto grid = log_grid(100, 10000, 8);
  CHECK(check_scaled_trend(fit_rate(fast, grid), 1.5).status == CheckStatus::kPass);
  const auto report = check_scaled_trend(fit_rate(slow, grid), 1.5);
  CHECK(report.status == CheckStatus::kFail);
  CHECK(report.at_k > 100);
}

TEST_CASE("settling and convexity detection on traces") {
  Trace t = synthetic_trace(std::vector<double>(100, 1.0));
  for (std::size_t i = 0; i < t.rows.size(); ++i) t.rows[i].dyy = i < 80 ? 1.0 : 1e-12;
  CHECK(iterates_settle(t, 1e-10));
  CHECK_FALSE(iterates_settle(t, 1e-10, 0.3));
  CHECK(convexity_observed(t));
  t.rows[40].L_k = 0.1;
  CHECK_FALSE(convexity_observed(t));
  CHECK_FALSE(iterates_settle(Trace{}, 1.0));
}

TEST_CASE("check line format") {
  TraceCheckReport r;
  r.name = "check_residual_bound";
  r.status = CheckStatus::kNotApplicable;
  r.worst = 0.25;
  r.at_k = 7;
  CHECK(format_check_line(r) == "CHECK check_residual_bound N/A worst=0.25 at_k=7");
  r.status = CheckStatus::kPass;
  CHECK(format_check_line(r) == "CHECK check_residual_bound PASS worst=0.25 at_k=7");
}

}  // namespace
}  // namespace mfista
