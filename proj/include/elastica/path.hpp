#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace elastica {

// Samples of q(t, .) in R^2 on a midpoint grid; unit discrete L^2 norm.
struct SphereFunction {
  std::vector<double> values;  // 2 * size, interleaved (x, y)

  std::size_t size() const { return values.size() / 2; }
  double x(std::size_t i) const { return values[2 * i]; }
  double y(std::size_t i) const { return values[2 * i + 1]; }
};

// Time-indexed family (psi(t,.), alpha(t,.)) plus the reconstructed curves.
// The arc-length grid may be a refinement of the matching grid so that dpsi
// and the matched tangent are constant on every cell.
struct GeodesicPath {
  std::vector<double> times;  // T+1 uniform points in [0,1]
  int grid_size = 0;          // N samples per time slice
  int dim = 2;
  double rho = 0.0;
  bool closed = false;

  std::vector<double> psi;     // (T+1) x (N+1) node values, psi(t,0)=0, psi(t,1)=1
  std::vector<double> alpha;   // (T+1) x N x dim unit vectors
  std::vector<double> curves;  // (T+1) x (N+1) x dim integrated points

  // (t_index, s_index) cells where |gamma| vanishes along the great circle.
  std::vector<std::pair<int, int>> validity;

  double max_lift_deviation = 0.0;  // max |eta~(1,s) - omega(s)/2sigma| over valid cells

  std::size_t time_steps() const { return times.empty() ? 0 : times.size() - 1; }

  const double* psi_at(std::size_t t) const {
    return psi.data() + t * (grid_size + 1);
  }
  const double* alpha_at(std::size_t t, std::size_t i) const {
    return alpha.data() + (t * grid_size + i) * dim;
  }
  const double* curve_point(std::size_t t, std::size_t j) const {
    return curves.data() + (t * (grid_size + 1) + j) * dim;
  }
};

}  // namespace elastica
