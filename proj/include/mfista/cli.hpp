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

#ifndef MFISTA_CLI_HPP
#define MFISTA_CLI_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "mfista/problems.hpp"
#include "mfista/solver.hpp"

namespace mfista::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitNotConverged = 2;

// Overrides the base directory for relative output paths.
inline constexpr const char* kOutputRootEnv = "MFISTA_OUTPUT_ROOT";

enum class SolverKind { kMfista, kFista, kProxGrad };
enum class StepMode { kL, kQuarterL };
enum class TraceLevel { kNorms, kFull };

std::string to_string(SolverKind kind);
SolverKind parse_solver(const std::string& text);
std::string to_string(StepMode mode);
StepMode parse_step_mode(const std::string& text);

// Where the instance comes from: a generator or an instance file.
struct ProblemSource {
  std::string kind = "convex-qp";  // convex-qp, nonconvex-qp or lasso
  std::filesystem::path instance_file;  // takes precedence when set
  std::size_t n = 8;
  std::uint64_t seed = 1;
  double negfrac = 0.3;
  std::size_t rows = 0;  // lasso rows; 0 means 2n
  double lambda = 0.1;
  double column_decay = 1.0;
  OmegaKind omega = OmegaKind::kWholeSpace;
};

struct RunConfig {
  ProblemSource source;
  SolverKind solver = SolverKind::kMfista;
  StepMode step_mode = StepMode::kL;
  double epsilon = 1e-6;
  std::size_t max_iters = 10000;
  TraceLevel trace = TraceLevel::kNorms;
  std::filesystem::path out_dir = "run";

  // Throws InvalidArgument.
  void validate() const;
};

Instance build_instance(const ProblemSource& source);

struct RunOutcome {
  SolveResult result;
  double L = 0.0;
  double wall_seconds = 0.0;
};

// Runs one solver on the instance from y_0 = 0. The trace is always kept.
RunOutcome execute(const RunConfig& config, const Instance& instance);

// Resolves a relative path against $MFISTA_OUTPUT_ROOT when it is set.
std::filesystem::path resolve_output(const std::filesystem::path& path);

// Entry point shared by the executable and the tests. args excludes the
// program name.
int main_with_args(const std::vector<std::string>& args, std::ostream& out,
                   std::ostream& err);

}  // namespace mfista::cli

#endif  // MFISTA_CLI_HPP
