// Copyright 2026 The levelcurve Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "levelcurve/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "levelcurve/errors.hpp"

namespace levelcurve {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string solution_csv(const SupportSolution& sol) {
  std::string out = sol.axisymmetric() ? "theta,t,h,h_t,b_meridian,b_parallel\n" : "theta,t,h,h_t,b_meridian\n";
  for (std::size_t k = 0; k < sol.n_t; ++k) {
    for (std::size_t j = 0; j < sol.n_theta; ++j) {
      const std::size_t i = sol.index(j, k);
      out += format_double(sol.grid.theta(j));
      out += ',' + format_double(sol.t(k));
      out += ',' + format_double(sol.h[i]);
      out += ',' + format_double(sol.h_t[i]);
      out += ',' + format_double(sol.b_meridian[i]);
      if (sol.axisymmetric()) out += ',' + format_double(sol.b_parallel[i]);
      out += '\n';
    }
  }
  return out;
}

std::string profile_csv(const std::vector<HeightProfile>& profiles) {
  std::string out = "kind,t,f\n";
  for (const auto& p : profiles) {
    const std::string name = profile_kind_name(p.kind);
    auto row = [&](double t, double f) { out += name + ',' + format_double(t) + ',' + format_double(f) + '\n'; };
    row(0.0, p.f0);
    for (std::size_t k = 0; k < p.f.size(); ++k) row(p.t[k], p.f[k]);
    row(1.0, p.f1);
  }
  return out;
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (ch != '\r' && ch != ' ' && ch != '\t') {
      cur += ch;
    }
  }
  fields.push_back(cur);
  return fields;
}

double parse_number(const std::string& s, const std::filesystem::path& path, std::size_t line_no) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw Error(ErrorCode::InvalidConfig,
                path.string() + ":" + std::to_string(line_no) + ": not a number: '" + s + "'");
  }
  return v;
}

}  // namespace

std::vector<std::pair<double, double>> read_support_samples(const std::filesystem::path& path) {
  std::istringstream in(read_text_file(path));
  std::string line;
  std::size_t line_no = 0;
  int col_theta = -1, col_h = -1;
  std::vector<std::pair<double, double>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto fields = split_fields(line);
    if (col_theta < 0) {
      for (std::size_t i = 0; i < fields.size(); ++i) {
        if (fields[i] == "theta") col_theta = static_cast<int>(i);
        if (fields[i] == "h") col_h = static_cast<int>(i);
      }
      if (col_theta < 0 || col_h < 0) {
        throw Error(ErrorCode::InvalidConfig, path.string() + ": header must name columns theta and h");
      }
      continue;
    }
    const auto need = static_cast<std::size_t>(std::max(col_theta, col_h));
    if (fields.size() <= need) {
      throw Error(ErrorCode::InvalidConfig, path.string() + ":" + std::to_string(line_no) + ": missing columns");
    }
    rows.emplace_back(parse_number(fields[static_cast<std::size_t>(col_theta)], path, line_no),
                      parse_number(fields[static_cast<std::size_t>(col_h)], path, line_no));
  }
  if (col_theta < 0) throw Error(ErrorCode::InvalidConfig, path.string() + ": empty sample file");
  return rows;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error(ErrorCode::Io, "write failed for '" + path.string() + "'");
}

}  // namespace levelcurve
