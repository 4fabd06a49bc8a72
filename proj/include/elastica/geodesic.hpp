#pragma once

#include <vector>

#include "elastica/kernel.hpp"
#include "elastica/path.hpp"

namespace elastica {

enum class LiftMode { measurable, smooth };

// q0 = (1, 0) and q1 = sqrt(dphi1) (cos(omega/2sigma), sin(omega/2sigma)) on
// a grid refined so both dphi1 and the matched tangent are cell-constant.
// rho = arccos<q0, q1> in [0, pi].
struct SphereEndpoints {
  SphereFunction q0;
  SphereFunction q1;
  double rho = 0.0;
  int refine = 1;              // grid_size = refine * n
  int dim = 2;
  std::vector<double> omega;   // per cell; continuous lift in smooth mode
  std::vector<double> dphi;    // per cell
  std::vector<double> a0;      // refined a0 samples, grid_size * dim
  std::vector<double> a1phi;   // refined a1 o phi1 samples, grid_size * dim

  std::size_t size() const { return omega.size(); }
};

SphereEndpoints sphere_endpoints(const TangentFunction& a0,
                                 const TangentFunction& a1, const Diffeo& phi1,
                                 double sigma,
                                 LiftMode mode = LiftMode::measurable);

// Great-circle point gamma(t) = [sin((1-t)rho) q0 + sin(t rho) q1] / sin(rho).
SphereFunction great_circle(const SphereFunction& q0, const SphereFunction& q1,
                            double rho, double t);

GeodesicPath reconstruct_path(const TangentFunction& a0,
                              const TangentFunction& a1, const Diffeo& phi1,
                              double sigma, int time_steps,
                              LiftMode mode = LiftMode::measurable);

// Arc of great circle between two unit vectors in R^d at fraction t.
std::vector<double> pointwise_interpolant(const std::vector<double>& a0s,
                                          const std::vector<double>& a1s,
                                          double t);

}  // namespace elastica
