#pragma once

#include <string>

#include "elastica/closed.hpp"
#include "elastica/kernel.hpp"
#include "elastica/path.hpp"

namespace elastica {

// CSV/JSON file error with the offending line for CLI diagnostics.
class IoError : public std::runtime_error {
 public:
  IoError(const std::string& what, int line = 0)
      : std::runtime_error(what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

// One point per row, d columns of decimal floats. A `# closed` header marks
// a closed curve; other comment lines are skipped.
Curve read_curve_csv(const std::string& path);

// Single-column CSV of scalar samples.
SampledFunction read_function_csv(const std::string& path);

// Fixed %.17g float formatting; all writers below are byte-deterministic.
std::string format_double(double x);

std::string match_json(const MatchResult& result);
std::string path_json(const GeodesicPath& path);
std::string grassmann_json(double distance, const GramInfo& info);

std::string cost_field_csv(const CostField& field);
std::string curve_csv(const double* points, std::size_t n_pts, int dim,
                      bool closed);

void write_file(const std::string& path, const std::string& contents);

}  // namespace elastica
