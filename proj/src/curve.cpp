#include "elastica/curve.hpp"

#include <cmath>
#include <cstddef>

namespace elastica {

namespace {

const char* error_names[] = {
    "ZeroLength",     "BadGrid",       "DimensionMismatch", "LiftJump",
    "ZeroVariation",  "BadSigma",      "GridMismatch",      "DegeneratePath",
    "DegenerateEndpoints", "AntipodalPair", "InvalidLift",  "NotClosed",
    "BadFrame",       "NoConvergence",
};

// Resamples a piecewise-constant function given by (weight, payload index)
// segments onto n midpoint cells of [0,1]. Weights must sum to `total` > 0.
std::vector<std::size_t> midpoint_cells(const std::vector<double>& weights,
                                        double total, int n) {
  std::vector<std::size_t> cells(n);
  std::size_t seg = 0;
  double cum = weights.empty() ? 0.0 : weights[0];
  for (int i = 0; i < n; ++i) {
    const double target = (i + 0.5) / n * total;
    while (seg + 1 < weights.size() && cum < target) {
      ++seg;
      cum += weights[seg];
    }
    cells[i] = seg;
  }
  return cells;
}

}  // namespace

const char* error_name(ErrorCode code) {
  return error_names[static_cast<int>(code)];
}

TangentFunction resample_arclength(const Curve& curve, int n) {
  if (n < 2) fail(ErrorCode::BadGrid, "grid size must be at least 2");
  const int d = curve.dim;
  if (d < 2)
    fail(ErrorCode::DimensionMismatch,
         "curves need dimension >= 2 (1-d inputs use SampledFunction)");
  const std::size_t m = curve.size();
  if (m < 2) fail(ErrorCode::ZeroLength, "curve needs at least 2 points");

  // Polygonal segments: unit direction + length, zero-length ones dropped.
  std::vector<double> dirs;
  std::vector<double> lens;
  dirs.reserve((m) * d);
  lens.reserve(m);
  auto add_segment = [&](const double* a, const double* b) {
    double len2 = 0.0;
    for (int k = 0; k < d; ++k) {
      const double diff = b[k] - a[k];
      len2 += diff * diff;
    }
    const double len = std::sqrt(len2);
    if (len <= 0.0) return;
    for (int k = 0; k < d; ++k) dirs.push_back((b[k] - a[k]) / len);
    lens.push_back(len);
  };
  for (std::size_t i = 0; i + 1 < m; ++i)
    add_segment(curve.point(i), curve.point(i + 1));
  if (curve.closed) add_segment(curve.point(m - 1), curve.point(0));

  double total = 0.0;
  for (double len : lens) total += len;
  if (!(total > 0.0))
    fail(ErrorCode::ZeroLength, "curve has zero total length");

  const auto cells = midpoint_cells(lens, total, n);
  TangentFunction out;
  out.dim = d;
  out.closed = curve.closed;
  out.samples.resize(static_cast<std::size_t>(n) * d);
  for (int i = 0; i < n; ++i) {
    const double* dir = dirs.data() + cells[i] * d;
    for (int k = 0; k < d; ++k) out.samples[static_cast<std::size_t>(i) * d + k] = dir[k];
  }
  return out;
}

AngleFunction angle_lift(const TangentFunction& a) {
  if (a.dim != 2)
    fail(ErrorCode::DimensionMismatch, "angle lift requires d = 2");
  const std::size_t n = a.size();
  AngleFunction out;
  out.values.resize(n);
  out.values[0] = std::atan2(a.sample(0)[1], a.sample(0)[0]);
  for (std::size_t i = 1; i < n; ++i) {
    const double* u = a.sample(i - 1);
    const double* v = a.sample(i);
    const double dot = u[0] * v[0] + u[1] * v[1];
    const double crs = u[0] * v[1] - u[1] * v[0];
    const double delta = std::atan2(crs, dot);
    if (kPi - std::fabs(delta) < 1e-9)
      fail(ErrorCode::LiftJump,
           "consecutive tangents are antipodal; angle unwrap is ambiguous");
    // Snap to the atan2 branch nearest to the predicted value so the lift
    // reproduces (cos, sin) exactly instead of accumulating drift.
    const double predicted = out.values[i - 1] + delta;
    const double raw = std::atan2(v[1], v[0]);
    out.values[i] = raw + kTwoPi * std::floor((predicted - raw) / kTwoPi + 0.5);
  }
  return out;
}

TangentFunction sign_representation(const SampledFunction& f, int n) {
  if (n < 2) fail(ErrorCode::BadGrid, "grid size must be at least 2");
  const std::size_t m = f.values.size();
  if (m < 2) fail(ErrorCode::ZeroVariation, "function needs at least 2 samples");

  std::vector<double> weights;
  std::vector<double> signs;
  weights.reserve(m);
  signs.reserve(m);
  for (std::size_t j = 0; j + 1 < m; ++j) {
    const double df = f.values[j + 1] - f.values[j];
    if (df == 0.0) continue;
    weights.push_back(std::fabs(df));
    signs.push_back(df > 0.0 ? 1.0 : -1.0);
  }
  double tv = 0.0;
  for (double w : weights) tv += w;
  if (!(tv > 0.0))
    fail(ErrorCode::ZeroVariation, "function has zero total variation");

  const auto cells = midpoint_cells(weights, tv, n);
  TangentFunction out;
  out.dim = 2;
  out.closed = false;
  out.samples.resize(static_cast<std::size_t>(n) * 2);
  for (int i = 0; i < n; ++i) {
    out.samples[2 * i] = signs[cells[i]];
    out.samples[2 * i + 1] = 0.0;
  }
  return out;
}

}  // namespace elastica
