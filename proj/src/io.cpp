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

#include "mfista/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <system_error>
#include <vector>

#include "mfista/errors.hpp"

namespace mfista {
namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::vector<std::string_view> split_ws(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < text.size() && text[j] != ' ' && text[j] != '\t' && text[j] != '\r') ++j;
    if (j > i) parts.push_back(text.substr(i, j - i));
    i = j;
  }
  return parts;
}

std::uint64_t parse_u64(std::string_view text) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw InvalidArgument("expected an unsigned integer, got '" + std::string(text) + "'");
  }
  return value;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open '" + path.string() + "' for reading");
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot open '" + path.string() + "' for writing");
  return out;
}

std::string next_line(std::istream& in, const char* what) {
  std::string line;
  if (!std::getline(in, line)) {
    throw InvalidArgument(std::string("unexpected end of input reading ") + what);
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

using Header = std::map<std::string, std::string, std::less<>>;

Header parse_header(const std::string& line) {
  Header h;
  for (std::string_view tok : split_ws(line)) {
    const std::size_t eq = tok.find('=');
    if (eq == std::string_view::npos) {
      throw InvalidArgument("malformed header token '" + std::string(tok) + "'");
    }
    h.emplace(std::string(tok.substr(0, eq)), std::string(tok.substr(eq + 1)));
  }
  return h;
}

const std::string& field(const Header& h, std::string_view key) {
  const auto it = h.find(key);
  if (it == h.end()) throw InvalidArgument("header is missing '" + std::string(key) + "'");
  return it->second;
}

std::vector<double> parse_row(const std::string& line, std::size_t expected,
                              const char* what) {
  std::vector<double> row;
  for (std::string_view tok : split_ws(line)) row.push_back(parse_double(tok));
  if (row.size() != expected) {
    throw InvalidArgument(std::string(what) + ": expected " + std::to_string(expected) +
                          " entries, got " + std::to_string(row.size()));
  }
  return row;
}

void write_row(std::ostream& out, const double* data, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    if (i) out << ' ';
    out << format_double(data[i]);
  }
  out << '\n';
}

void write_matrix(std::ostream& out, const Eigen::MatrixXd& M) {
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    std::vector<double> row(static_cast<std::size_t>(M.cols()));
    for (Eigen::Index j = 0; j < M.cols(); ++j) row[static_cast<std::size_t>(j)] = M(i, j);
    write_row(out, row.data(), row.size());
  }
}

Eigen::MatrixXd read_matrix(std::istream& in, std::size_t rows, std::size_t cols) {
  Eigen::MatrixXd M(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const std::vector<double> row = parse_row(next_line(in, "matrix"), cols, "matrix row");
    for (std::size_t j = 0; j < cols; ++j) {
      M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = row[j];
    }
  }
  return M;
}

Vector read_vector(std::istream& in, std::size_t n, const char* what) {
  return Vector(parse_row(next_line(in, what), n, what));
}

void write_quadratic(std::ostream& out, const QuadraticInstance& q) {
  out << "kind=" << q.kind << " n=" << q.dim() << " seed=" << q.seed
      << " L=" << format_double(q.L) << " m=" << format_double(q.known_m)
      << " omega=" << to_string(q.omega) << " convex=" << (q.convex ? 1 : 0) << '\n';
  write_matrix(out, q.Q);
  write_row(out, q.b.raw().data(), q.dim());
  write_row(out, q.box.lower().raw().data(), q.dim());
  write_row(out, q.box.upper().raw().data(), q.dim());
}

void write_lasso(std::ostream& out, const LassoOnBallInstance& l) {
  out << "kind=lasso n=" << l.dim() << " seed=" << l.seed << " L=" << format_double(l.L)
      << " m=0 lambda=" << format_double(l.lambda) << " radius=" << format_double(l.radius)
      << " rows=" << l.A.rows() << '\n';
  write_matrix(out, l.A);
  write_row(out, l.target.raw().data(), l.target.size());
}

}  // namespace

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw std::logic_error("format_double: buffer too small");
  return std::string(buf, ptr);
}

double parse_double(std::string_view text) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw InvalidArgument("expected a number, got '" + std::string(text) + "'");
  }
  return value;
}

void write_trace_csv(std::ostream& out, const Trace& trace) {
  out << kTraceHeader << '\n';
  for (const IterateRecord& r : trace.rows) {
    out << r.k << ',' << format_double(r.a_k) << ',' << format_double(r.L_k) << ','
        << format_double(r.vnorm) << ',' << format_double(r.phi) << ','
        << format_double(r.dxy) << ',' << format_double(r.dyy) << ',' << r.grad_evals
        << ',' << r.prox_evals << '\n';
  }
}

void write_trace_csv(const std::filesystem::path& path, const Trace& trace) {
  std::ostringstream out;
  write_trace_csv(out, trace);
  write_file_atomically(path, out.str());
}

Trace read_trace_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InvalidArgument("trace: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kTraceHeader) throw InvalidArgument("trace: unexpected header '" + line + "'");
  Trace trace;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != 9) {
      throw InvalidArgument("trace: line " + std::to_string(lineno) + " has " +
                            std::to_string(cells.size()) + " fields");
    }
    IterateRecord r;
    r.k = parse_u64(cells[0]);
    r.a_k = parse_double(cells[1]);
    r.L_k = parse_double(cells[2]);
    r.vnorm = parse_double(cells[3]);
    r.phi = parse_double(cells[4]);
    r.dxy = parse_double(cells[5]);
    r.dyy = parse_double(cells[6]);
    r.grad_evals = parse_u64(cells[7]);
    r.prox_evals = parse_u64(cells[8]);
    if (r.k != trace.rows.size() + 1) {
      throw InvalidArgument("trace: rows must be numbered 1, 2, ...");
    }
    trace.rows.push_back(r);
  }
  return trace;
}

Trace read_trace_csv(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  return read_trace_csv(in);
}

void write_vectors_csv(const std::filesystem::path& path, const Trace& trace) {
  if (!trace.has_vectors()) throw UnsupportedTrace("write_vectors_csv: no vectors recorded");
  std::ostringstream out;
  const std::size_t n = trace.y.front().size();
  out << 'k';
  for (std::size_t i = 0; i < n; ++i) out << ",y" << i;
  out << '\n';
  for (std::size_t k = 0; k < trace.y.size(); ++k) {
    out << k;
    for (double v : trace.y[k].values()) out << ',' << format_double(v);
    out << '\n';
  }
  write_file_atomically(path, out.str());
}

void read_vectors_csv(const std::filesystem::path& path, Trace& trace) {
  std::ifstream in = open_in(path);
  const std::string header = next_line(in, "vectors header");
  const std::size_t n = split(header, ',').size() - 1;
  if (n == 0) throw InvalidArgument("vectors: header has no coordinates");
  std::vector<Vector> ys;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != n + 1 || parse_u64(cells[0]) != ys.size()) {
      throw InvalidArgument("vectors: malformed row " + std::to_string(ys.size()));
    }
    std::vector<double> y;
    for (std::size_t i = 1; i < cells.size(); ++i) y.push_back(parse_double(cells[i]));
    ys.emplace_back(std::move(y));
  }
  if (ys.size() != trace.rows.size() + 1) {
    throw InvalidArgument("vectors: row count does not match the trace");
  }
  trace.y = std::move(ys);
}

void write_instance(std::ostream& out, const Instance& inst) {
  std::visit(
      [&out](const auto& i) {
        using T = std::decay_t<decltype(i)>;
        if constexpr (std::is_same_v<T, QuadraticInstance>) {
          write_quadratic(out, i);
        } else {
          write_lasso(out, i);
        }
      },
      inst);
}

void write_instance(const std::filesystem::path& path, const Instance& inst) {
  std::ostringstream out;
  write_instance(out, inst);
  write_file_atomically(path, out.str());
}

Instance read_instance(std::istream& in) {
  const Header h = parse_header(next_line(in, "instance header"));
  const std::string& kind = field(h, "kind");
  const std::size_t n = parse_u64(field(h, "n"));
  if (n < 1) throw InvalidArgument("instance: n must be positive");
  const std::uint64_t seed = parse_u64(field(h, "seed"));
  const double L = parse_double(field(h, "L"));
  const double m = parse_double(field(h, "m"));
  if (kind == "lasso") {
    const std::size_t rows = parse_u64(field(h, "rows"));
    Eigen::MatrixXd A = read_matrix(in, rows, n);
    Vector target = read_vector(in, rows, "target");
    return LassoOnBallInstance{seed,
                               std::move(A),
                               std::move(target),
                               parse_double(field(h, "lambda")),
                               parse_double(field(h, "radius")),
                               L};
  }
  if (kind != "convex-qp" && kind != "nonconvex-qp" && kind != "qp") {
    throw InvalidArgument("instance: unknown kind '" + kind + "'");
  }
  Eigen::MatrixXd Q = read_matrix(in, n, n);
  Vector b = read_vector(in, n, "b");
  Vector lower = read_vector(in, n, "lower");
  Vector upper = read_vector(in, n, "upper");
  return QuadraticInstance{kind,
                           seed,
                           std::move(Q),
                           std::move(b),
                           BoxSet(std::move(lower), std::move(upper)),
                           parse_omega(field(h, "omega")),
                           L,
                           m,
                           field(h, "convex") == "1"};
}

Instance read_instance(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  return read_instance(in);
}

void write_certificate(const std::filesystem::path& path, const OracleCertificate& cert) {
  std::ostringstream out;
  out << "kind=certificate n=" << cert.y_star.size() << " method=" << to_string(cert.method)
      << " phi_star=" << format_double(cert.phi_star)
      << " kkt=" << format_double(cert.kkt_residual) << '\n';
  write_row(out, cert.y_star.raw().data(), cert.y_star.size());
  write_file_atomically(path, out.str());
}

OracleCertificate read_certificate(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  const Header h = parse_header(next_line(in, "certificate header"));
  if (field(h, "kind") != "certificate") throw InvalidArgument("not a certificate file");
  const std::size_t n = parse_u64(field(h, "n"));
  OracleCertificate cert;
  cert.y_star = read_vector(in, n, "y_star");
  cert.phi_star = parse_double(field(h, "phi_star"));
  cert.kkt_residual = parse_double(field(h, "kkt"));
  cert.method = parse_certificate_method(field(h, "method"));
  return cert;
}

void write_file_atomically(const std::filesystem::path& path, std::string_view contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out = open_out(tmp);
    out << contents;
    out.flush();
    if (!out) throw std::runtime_error("failed writing '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace mfista
