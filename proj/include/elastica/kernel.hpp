#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "elastica/curve.hpp"

namespace elastica {

struct GeodesicPath;

// Grid of max(f_sigma(s_i, s~_j), 0) over the midpoint lattice,
// f_sigma = cos(arccos(a0 . a1) / (2 sigma)). Entries live in [0, 1].
struct CostField {
  int n = 0;
  double sigma = 1.0;
  bool clamped = true;
  std::vector<double> values;  // n*n row-major, [i*n + j] = cell (s_i, s~_j)

  double at(int i, int j) const {
    return values[static_cast<std::size_t>(i) * n + j];
  }
};

enum class LiftMode { measurable, smooth };

// Pointwise angular distance arccos(a0(s_i) . a1(s~_j)), clamped to [0, pi].
// Smooth-mode lifts are taken along a matched path, not over the grid; the
// geodesic module owns that step.
struct OmegaField {
  int n = 0;
  LiftMode lift_mode = LiftMode::measurable;
  std::vector<double> values;

  double at(int i, int j) const {
    return values[static_cast<std::size_t>(i) * n + j];
  }
};

// Piecewise-linear monotone reparametrization of [0,1] through knots that are
// strictly increasing in both coordinates, from (0,0) to (1,1).
struct Diffeo {
  std::vector<std::array<double, 2>> knots;

  static Diffeo identity();

  double eval(double s) const;
  double eval_inverse(double t) const;

  // Average derivative over each of n uniform cells (exact per cell when the
  // knots sit on the n-lattice, as DP outputs do).
  std::vector<double> cell_slopes(int n) const;

  void validate() const;
};

struct MatchResult {
  double distance = 0.0;          // d_sigma = 2 arccos(score)
  double score = 0.0;             // maximized integral, in [0, 1]
  double sigma = 1.0;
  Diffeo phi;
  std::optional<double> rotation_angle;          // d = 2 searches
  std::optional<std::vector<double>> rotation;   // d x d row-major, d >= 3
  std::optional<double> offset;                  // closed-curve shift in [0,1)
};

struct MatchOptions {
  int kmax = 4;  // DP step bound; admissible steps are coprime (p,q) <= kmax
};

// One DP lattice move (p columns, q rows) with its exact cell decomposition:
// a linear segment of slope q/p crosses p+q-1 cells, each fragment weighted
// by its parameter length.
struct DpFragment {
  int di = 0;
  int dj = 0;
  double len = 0.0;
};

struct DpStep {
  int p = 0;
  int q = 0;
  double root = 0.0;       // sqrt(p*q)
  double slope_dev = 0.0;  // |q/p - 1|, the tie-break key
  std::vector<DpFragment> frags;
};

std::vector<DpStep> dp_steps(int kmax);

struct DpResult {
  Diffeo phi;
  double score = 0.0;
};

CostField cost_field(const TangentFunction& a0, const TangentFunction& a1,
                     double sigma);
OmegaField omega_field(const TangentFunction& a0, const TangentFunction& a1);

// Precomputed pairwise grids for planar rotation scans:
// (R_c a0_i) . a1_j = cos(c) * dot[i,j] + sin(c) * cross[i,j].
struct PlanarGrids {
  int n = 0;
  std::vector<double> dot;
  std::vector<double> cross;
};

PlanarGrids planar_grids(const TangentFunction& a0, const TangentFunction& a1);

// Cost field of (R_angle a0 shifted by offset_cells, a1) from the grids.
CostField rotated_cost_field(const PlanarGrids& grids, double sigma,
                             double angle, int offset_cells = 0);

TangentFunction rotate_tangents(const TangentFunction& a, double angle);
TangentFunction apply_rotation(const TangentFunction& a,
                               const std::vector<double>& rot);

// Maximizes F(phi) = sum over linear pieces of f_cell * sqrt(ds ds~) among
// monotone lattice paths with the configured step set. Ties prefer the step
// closest to slope 1, then the smallest predecessor s~.
DpResult dp_match(const CostField& field, int kmax = 4);

MatchResult distance_open(const Curve& m0, const Curve& m1, double sigma,
                          int n, const MatchOptions& opt = {});
MatchResult distance_rotation_invariant(const Curve& m0, const Curve& m1,
                                        double sigma, int n,
                                        const MatchOptions& opt = {});
MatchResult distance_1d(const SampledFunction& f0, const SampledFunction& f1,
                        double sigma, int n, const MatchOptions& opt = {});

// Tangent-level entry points shared by the curve-level searches.
MatchResult match_tangents(const TangentFunction& a0,
                           const TangentFunction& a1, double sigma,
                           const MatchOptions& opt = {});
MatchResult match_tangents_rotation(const TangentFunction& a0,
                                    const TangentFunction& a1, double sigma,
                                    const MatchOptions& opt = {});

// Discretized metamorphosis energy of a reconstructed path:
// sum over (t, s) of [ (d_t dpsi)^2 / dpsi + |d_t alpha|^2 dpsi / sigma^2 ].
double energy(const GeodesicPath& path, double sigma);

}  // namespace elastica
