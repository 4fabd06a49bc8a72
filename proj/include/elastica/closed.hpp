#pragma once

#include <array>

#include "elastica/kernel.hpp"

namespace elastica {

// Orthonormal 2-frame (f, g) in discrete L^2: f = sqrt(2 dphi) cos(theta/2),
// g = sqrt(2 dphi) sin(theta/2). Built from a closed curve, ||f|| = ||g|| = 1
// and <f, g> = 0.
struct Frame2 {
  std::vector<double> f;
  std::vector<double> g;
};

struct GramInfo {
  std::array<double, 4> gram{};            // row-major [<f0,f1>, <f0,g1>; <g0,f1>, <g0,g1>]
  std::array<double, 2> singular_values{};  // lambda >= mu, clamped to [0,1]
};

struct ClosedOptions {
  int kmax = 4;
  int coarse_angles = 64;   // rotation grid per offset
  int refine_offsets = 3;   // offsets kept for golden-section refinement
};

// Joint offset/rotation search: exhaustive over the n grid shifts of a0,
// rotation by the kernel module's search. d >= 3 composes the offset scan
// with the alternating Procrustes/DP rotation scheme.
MatchResult distance_closed(const Curve& m0, const Curve& m1, double sigma,
                            int n, const ClosedOptions& opt = {});

Frame2 frame_from(const Diffeo& phi, const AngleFunction& theta);

// Residual of the orthonormal-frame invariants (0 for a perfect frame).
double frame_residual(const Frame2& frame);

// sqrt(arccos^2 lambda + arccos^2 mu) from the singular values of the 2x2
// matrix of pairwise inner products.
double grassmann_distance(const Frame2& f0, const Frame2& f1,
                          GramInfo* info = nullptr);

// Shift-and-renormalize a~ = (a - lambda)/|a - lambda| with lambda solved so
// the mean of a~ vanishes (damped Newton from lambda = mean(a)).
TangentFunction closing_projection(const TangentFunction& a);

TangentFunction shift_samples(const TangentFunction& a, int cells);

}  // namespace elastica
