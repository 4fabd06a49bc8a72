#include "elastica/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace elastica {

std::string format_double(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

bool parse_number(const std::string& tok, double& out) {
  const char* begin = tok.c_str();
  char* end = nullptr;
  out = std::strtod(begin, &end);
  if (end == begin) return false;
  while (*end != '\0') {
    if (!std::isspace(static_cast<unsigned char>(*end))) return false;
    ++end;
  }
  return true;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string tok;
  std::stringstream ss(line);
  while (std::getline(ss, tok, ',')) out.push_back(tok);
  return out;
}

bool comment_marks_closed(const std::string& line) {
  std::string low = line;
  std::transform(low.begin(), low.end(), low.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return low.find("closed") != std::string::npos;
}

std::vector<std::vector<double>> read_rows(const std::string& path,
                                           bool* closed) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  int lineno = 0;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    if (line[first] == '#') {
      if (closed && comment_marks_closed(line)) *closed = true;
      continue;
    }
    const auto toks = split_csv(line);
    std::vector<double> row;
    row.reserve(toks.size());
    for (const auto& tok : toks) {
      double v;
      if (!parse_number(tok, v))
        throw IoError(path + ":" + std::to_string(lineno) +
                          ": cannot parse '" + tok + "' as a number",
                      lineno);
      row.push_back(v);
    }
    if (row.empty()) continue;
    if (width == 0) width = row.size();
    if (row.size() != width)
      throw IoError(path + ":" + std::to_string(lineno) + ": expected " +
                        std::to_string(width) + " columns, got " +
                        std::to_string(row.size()),
                    lineno);
    rows.push_back(std::move(row));
  }
  return rows;
}

void append_point_row(std::string& out, const double* p, int dim) {
  for (int k = 0; k < dim; ++k) {
    if (k) out += ',';
    out += format_double(p[k]);
  }
  out += '\n';
}

}  // namespace

Curve read_curve_csv(const std::string& path) {
  Curve curve;
  bool closed = false;
  const auto rows = read_rows(path, &closed);
  curve.closed = closed;
  curve.dim = rows.empty() ? 0 : static_cast<int>(rows.front().size());
  curve.points.reserve(rows.size() * curve.dim);
  for (const auto& row : rows)
    curve.points.insert(curve.points.end(), row.begin(), row.end());
  return curve;
}

SampledFunction read_function_csv(const std::string& path) {
  const auto rows = read_rows(path, nullptr);
  SampledFunction f;
  f.values.reserve(rows.size());
  for (const auto& row : rows) {
    if (row.size() != 1)
      throw IoError(path + ": scalar functions need exactly one column");
    f.values.push_back(row.front());
  }
  return f;
}

std::string match_json(const MatchResult& result) {
  std::string out = "{\n";
  out += "  \"distance\": " + format_double(result.distance) + ",\n";
  out += "  \"score\": " + format_double(result.score) + ",\n";
  out += "  \"sigma\": " + format_double(result.sigma) + ",\n";
  out += "  \"phi\": [";
  for (std::size_t k = 0; k < result.phi.knots.size(); ++k) {
    if (k) out += ",";
    out += "[" + format_double(result.phi.knots[k][0]) + "," +
           format_double(result.phi.knots[k][1]) + "]";
  }
  out += "],\n";
  out += "  \"rotation\": ";
  if (result.rotation_angle) {
    out += format_double(*result.rotation_angle);
  } else if (result.rotation) {
    const auto& m = *result.rotation;
    const int d = static_cast<int>(std::lround(std::sqrt(double(m.size()))));
    out += "[";
    for (int r = 0; r < d; ++r) {
      if (r) out += ",";
      out += "[";
      for (int c = 0; c < d; ++c) {
        if (c) out += ",";
        out += format_double(m[static_cast<std::size_t>(r) * d + c]);
      }
      out += "]";
    }
    out += "]";
  } else {
    out += "null";
  }
  out += ",\n";
  out += "  \"offset\": ";
  out += result.offset ? format_double(*result.offset) : "null";
  out += "\n}\n";
  return out;
}

std::string path_json(const GeodesicPath& path) {
  std::string out = "{\n";
  out += "  \"times\": [";
  for (std::size_t k = 0; k < path.times.size(); ++k) {
    if (k) out += ",";
    out += format_double(path.times[k]);
  }
  out += "],\n";
  out += "  \"rho\": " + format_double(path.rho) + ",\n";
  out += "  \"curves\": [\n";
  const int N = path.grid_size;
  for (std::size_t t = 0; t < path.times.size(); ++t) {
    out += "    [";
    for (int j = 0; j <= N; ++j) {
      if (j) out += ",";
      out += "[";
      const double* p = path.curve_point(t, j);
      for (int c = 0; c < path.dim; ++c) {
        if (c) out += ",";
        out += format_double(p[c]);
      }
      out += "]";
    }
    out += t + 1 < path.times.size() ? "],\n" : "]\n";
  }
  out += "  ],\n";
  out += "  \"validity\": [";
  for (std::size_t k = 0; k < path.validity.size(); ++k) {
    if (k) out += ",";
    out += "[" + std::to_string(path.validity[k].first) + "," +
           std::to_string(path.validity[k].second) + "]";
  }
  out += "]\n}\n";
  return out;
}

std::string grassmann_json(double distance, const GramInfo& info) {
  std::string out = "{\n";
  out += "  \"distance\": " + format_double(distance) + ",\n";
  out += "  \"gram\": [[" + format_double(info.gram[0]) + "," +
         format_double(info.gram[1]) + "],[" + format_double(info.gram[2]) +
         "," + format_double(info.gram[3]) + "]],\n";
  out += "  \"singular_values\": [" + format_double(info.singular_values[0]) +
         "," + format_double(info.singular_values[1]) + "]\n";
  out += "}\n";
  return out;
}

std::string cost_field_csv(const CostField& field) {
  std::string out;
  out.reserve(static_cast<std::size_t>(field.n) * field.n * 20);
  for (int i = 0; i < field.n; ++i) {
    for (int j = 0; j < field.n; ++j) {
      if (j) out += ',';
      out += format_double(field.at(i, j));
    }
    out += '\n';
  }
  return out;
}

std::string curve_csv(const double* points, std::size_t n_pts, int dim,
                      bool closed) {
  std::string out;
  if (closed) out += "# closed\n";
  for (std::size_t i = 0; i < n_pts; ++i)
    append_point_row(out, points + i * dim, dim);
  return out;
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw IoError("write failed for " + path);
}

}  // namespace elastica
