#pragma once

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "elastica/curve.hpp"
#include "elastica/kernel.hpp"

namespace testutil {

inline std::string fixture(const std::string& name) {
  return std::string(FIXTURES_DIR) + "/" + name;
}

inline elastica::Curve make_curve(std::vector<std::array<double, 2>> pts,
                                  bool closed = false) {
  elastica::Curve c;
  c.dim = 2;
  c.closed = closed;
  for (const auto& p : pts) {
    c.points.push_back(p[0]);
    c.points.push_back(p[1]);
  }
  return c;
}

inline elastica::TangentFunction tangents_from_angles(
    const std::vector<double>& angles) {
  elastica::TangentFunction a;
  a.dim = 2;
  a.samples.resize(angles.size() * 2);
  for (std::size_t i = 0; i < angles.size(); ++i) {
    a.samples[2 * i] = std::cos(angles[i]);
    a.samples[2 * i + 1] = std::sin(angles[i]);
  }
  return a;
}

inline elastica::TangentFunction constant_tangents(int n, double x, double y) {
  elastica::TangentFunction a;
  a.dim = 2;
  a.samples.resize(static_cast<std::size_t>(n) * 2);
  for (int i = 0; i < n; ++i) {
    a.samples[2 * i] = x;
    a.samples[2 * i + 1] = y;
  }
  return a;
}

inline elastica::TangentFunction random_tangents(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * elastica::kPi);
  std::vector<double> angles(n);
  for (auto& v : angles) v = angle(rng);
  return tangents_from_angles(angles);
}

inline elastica::CostField random_field(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  elastica::CostField f;
  f.n = n;
  f.sigma = 1.0;
  f.values.resize(static_cast<std::size_t>(n) * n);
  for (auto& v : f.values) v = unit(rng);
  return f;
}

inline elastica::CostField constant_field(int n, double value) {
  elastica::CostField f;
  f.n = n;
  f.sigma = 1.0;
  f.values.assign(static_cast<std::size_t>(n) * n, value);
  return f;
}

// Unit-speed quarter circle t -> (cos t, sin t), t in [0, pi/2], sampled at
// the given parameter values.
inline elastica::Curve quarter_circle(const std::vector<double>& params) {
  elastica::Curve c;
  c.dim = 2;
  for (double t : params) {
    c.points.push_back(std::cos(t));
    c.points.push_back(std::sin(t));
  }
  return c;
}

inline double max_angle_diff(const elastica::TangentFunction& a,
                             const elastica::TangentFunction& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double dot = 0.0;
    for (int k = 0; k < a.dim; ++k) dot += a.sample(i)[k] * b.sample(i)[k];
    worst = std::max(worst, std::acos(elastica::clamp_unit(dot)));
  }
  return worst;
}

}  // namespace testutil
