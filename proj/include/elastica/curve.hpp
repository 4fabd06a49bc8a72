#pragma once

#include <cstddef>
#include <vector>

#include "elastica/common.hpp"

namespace elastica {

// Ordered point sequence in R^d, stored point-major. The raw input shape.
struct Curve {
  std::vector<double> points;  // n_pts * dim
  int dim = 2;
  bool closed = false;

  std::size_t size() const { return dim > 0 ? points.size() / dim : 0; }
  const double* point(std::size_t i) const { return points.data() + i * dim; }
  double* point(std::size_t i) { return points.data() + i * dim; }
};

// Unit tangent samples of the length-normalized curve at the midpoint grid
// s_i = (i + 1/2)/n of [0,1]. Every sample has Euclidean norm 1.
struct TangentFunction {
  std::vector<double> samples;  // n * dim
  int dim = 2;
  bool closed = false;

  std::size_t size() const { return dim > 0 ? samples.size() / dim : 0; }
  const double* sample(std::size_t i) const { return samples.data() + i * dim; }
  double* sample(std::size_t i) { return samples.data() + i * dim; }
};

// Continuous angle lift of a 2-d tangent function on the same midpoint grid.
// values[0] in (-pi, pi]; consecutive gaps stay below pi.
struct AngleFunction {
  std::vector<double> values;
};

// Scalar samples on a uniform grid of [0,1] including both endpoints.
struct SampledFunction {
  std::vector<double> values;
};

// Polygonal tangents of the length-normalized curve, resampled by cumulative
// arc length onto n midpoint cells. Zero-length segments are dropped; closed
// curves get the closing segment appended.
TangentFunction resample_arclength(const Curve& curve, int n);

AngleFunction angle_lift(const TangentFunction& a);

// Piecewise sign of df resampled in the normalized total-variation parameter,
// embedded into R^2 as (+-1, 0) so the planar machinery applies downstream.
// Zero-variation cells are dropped.
TangentFunction sign_representation(const SampledFunction& f, int n = 256);

}  // namespace elastica
