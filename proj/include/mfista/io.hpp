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

#ifndef MFISTA_IO_HPP
#define MFISTA_IO_HPP

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "mfista/problems.hpp"
#include "mfista/solver.hpp"

namespace mfista {

// Shortest decimal form that parses back to the same double.
std::string format_double(double value);
// Throws InvalidArgument on anything but a complete decimal float
// (inf/nan spellings accepted).
double parse_double(std::string_view text);

inline constexpr std::string_view kTraceHeader =
    "k,a_k,L_k,vnorm,phi,dxy,dyy,gradevals,proxevals";

// One row per iteration under kTraceHeader.
void write_trace_csv(std::ostream& out, const Trace& trace);
void write_trace_csv(const std::filesystem::path& path, const Trace& trace);
// Rows only; proj_evals is not part of the format and reads back as 0.
Trace read_trace_csv(std::istream& in);
Trace read_trace_csv(const std::filesystem::path& path);

// Iterates y_0..y_N, header `k,y0,y1,...`.
void write_vectors_csv(const std::filesystem::path& path, const Trace& trace);
// Attaches y vectors to a trace read from CSV.
void read_vectors_csv(const std::filesystem::path& path, Trace& trace);

// Header line `kind=<k> n=<n> seed=<s> L=<L> m=<m> ...` followed by
// row-major matrix rows and one vector per line.
void write_instance(std::ostream& out, const Instance& inst);
void write_instance(const std::filesystem::path& path, const Instance& inst);
Instance read_instance(std::istream& in);
Instance read_instance(const std::filesystem::path& path);

void write_certificate(const std::filesystem::path& path, const OracleCertificate& cert);
OracleCertificate read_certificate(const std::filesystem::path& path);

// Writes to a sibling temporary file, then renames over `path`.
void write_file_atomically(const std::filesystem::path& path, std::string_view contents);

}  // namespace mfista

#endif  // MFISTA_IO_HPP
