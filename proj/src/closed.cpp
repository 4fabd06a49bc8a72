#include "elastica/closed.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "elastica/threading.hpp"

namespace elastica {

namespace {

double interp_midgrid(const std::vector<double>& values, double u) {
  // Linear interpolation of samples living at (i + 1/2)/n, flat at the ends.
  const int n = static_cast<int>(values.size());
  const double x = u * n - 0.5;
  if (x <= 0.0) return values.front();
  if (x >= n - 1.0) return values.back();
  const int i = static_cast<int>(x);
  const double w = x - i;
  return values[i] * (1.0 - w) + values[i + 1] * w;
}

double mean_dot(const std::vector<double>& a, const std::vector<double>& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc / static_cast<double>(a.size());
}

struct GoldenResult {
  double dist = std::numeric_limits<double>::infinity();
  double angle = 0.0;
};

template <typename Eval>
GoldenResult golden_refine(double center, double half_width, Eval eval) {
  GoldenResult best;
  best.angle = center;
  best.dist = eval(center);
  double lo = center - half_width;
  double hi = center + half_width;
  const double invgr = 0.6180339887498949;
  double x1 = hi - invgr * (hi - lo);
  double x2 = lo + invgr * (hi - lo);
  double f1 = eval(x1);
  double f2 = eval(x2);
  auto track = [&](double c, double v) {
    if (v < best.dist) {
      best.dist = v;
      best.angle = c;
    }
  };
  track(x1, f1);
  track(x2, f2);
  while (hi - lo > 1e-10) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - invgr * (hi - lo);
      f1 = eval(x1);
      track(x1, f1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + invgr * (hi - lo);
      f2 = eval(x2);
      track(x2, f2);
    }
  }
  return best;
}

}  // namespace

TangentFunction shift_samples(const TangentFunction& a, int cells) {
  const int n = static_cast<int>(a.size());
  const int d = a.dim;
  int k = cells % n;
  if (k < 0) k += n;
  TangentFunction out = a;
  for (int i = 0; i < n; ++i) {
    const double* src = a.sample((i + k) % n);
    double* dst = out.sample(i);
    for (int c = 0; c < d; ++c) dst[c] = src[c];
  }
  return out;
}

MatchResult distance_closed(const Curve& m0, const Curve& m1, double sigma,
                            int n, const ClosedOptions& opt) {
  if (!m0.closed || !m1.closed)
    fail(ErrorCode::NotClosed, "both curves must be flagged closed");
  if (2.0 * sigma < 1.0) fail(ErrorCode::BadSigma, "need 2*sigma >= 1");
  const TangentFunction a0 = resample_arclength(m0, n);
  const TangentFunction a1 = resample_arclength(m1, n);
  const MatchOptions mo{opt.kmax};

  if (a0.dim != 2) {
    // Offset scan composed with the alternating rotation search.
    MatchResult best;
    best.distance = std::numeric_limits<double>::infinity();
    int best_k = 0;
    for (int k = 0; k < n; ++k) {
      const TangentFunction shifted = shift_samples(a0, k);
      MatchResult r = match_tangents_rotation(shifted, a1, sigma, mo);
      if (r.distance < best.distance) {
        best = std::move(r);
        best_k = k;
      }
    }
    best.offset = static_cast<double>(best_k) / n;
    return best;
  }

  // Joint search: exhaustive grid shifts x coarse rotation grid, then
  // golden-section refinement of the leading offsets.
  const PlanarGrids grids = planar_grids(a0, a1);
  const int A = std::max(opt.coarse_angles, 4);
  std::vector<double> dist(static_cast<std::size_t>(n) * A);
#pragma omp parallel for num_threads(thread_count()) schedule(dynamic)
  for (int idx = 0; idx < n * A; ++idx) {
    const int k = idx / A;
    const double c = kTwoPi * (idx % A) / A;
    const CostField f = rotated_cost_field(grids, sigma, c, k);
    const DpResult dp = dp_match(f, mo.kmax);
    dist[idx] = 2.0 * std::acos(clamp_unit(dp.score));
  }

  std::vector<std::pair<double, int>> offset_best(n);  // (coarse best, angle idx)
  for (int k = 0; k < n; ++k) {
    int abest = 0;
    for (int a = 1; a < A; ++a)
      if (dist[static_cast<std::size_t>(k) * A + a] <
          dist[static_cast<std::size_t>(k) * A + abest])
        abest = a;
    offset_best[k] = {dist[static_cast<std::size_t>(k) * A + abest], abest};
  }
  std::vector<int> order(n);
  for (int k = 0; k < n; ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
    return offset_best[x].first < offset_best[y].first;
  });

  double best_dist = std::numeric_limits<double>::infinity();
  double best_angle = 0.0;
  int best_offset = 0;
  const int refine = std::min(std::max(opt.refine_offsets, 1), n);
  for (int r = 0; r < refine; ++r) {
    const int k = order[r];
    auto eval = [&](double c) {
      const CostField f = rotated_cost_field(grids, sigma, c, k);
      const DpResult dp = dp_match(f, mo.kmax);
      return 2.0 * std::acos(clamp_unit(dp.score));
    };
    const double center = kTwoPi * offset_best[k].second / A;
    const GoldenResult g = golden_refine(center, kTwoPi / A, eval);
    if (g.dist < best_dist) {
      best_dist = g.dist;
      best_angle = g.angle;
      best_offset = k;
    }
  }

  const CostField f = rotated_cost_field(grids, sigma, best_angle, best_offset);
  DpResult dp = dp_match(f, mo.kmax);
  MatchResult out;
  out.score = dp.score;
  out.distance = 2.0 * std::acos(clamp_unit(dp.score));
  out.sigma = sigma;
  out.phi = std::move(dp.phi);
  double c = std::fmod(best_angle, kTwoPi);
  if (c < 0.0) c += kTwoPi;
  out.rotation_angle = c;
  out.offset = static_cast<double>(best_offset) / n;
  return out;
}

Frame2 frame_from(const Diffeo& phi, const AngleFunction& theta) {
  const int n = static_cast<int>(theta.values.size());
  if (n < 2) fail(ErrorCode::BadGrid, "angle function needs >= 2 samples");
  phi.validate();
  const std::vector<double> slopes = phi.cell_slopes(n);
  Frame2 out;
  out.f.resize(n);
  out.g.resize(n);
  for (int i = 0; i < n; ++i) {
    const double s_mid = (i + 0.5) / n;
    const double th = interp_midgrid(theta.values, phi.eval(s_mid));
    const double root = std::sqrt(2.0 * std::max(slopes[i], 0.0));
    out.f[i] = root * std::cos(0.5 * th);
    out.g[i] = root * std::sin(0.5 * th);
  }
  return out;
}

double frame_residual(const Frame2& frame) {
  const double ff = mean_dot(frame.f, frame.f);
  const double gg = mean_dot(frame.g, frame.g);
  const double fg = mean_dot(frame.f, frame.g);
  return std::max({std::fabs(ff - 1.0), std::fabs(gg - 1.0), std::fabs(fg)});
}

double grassmann_distance(const Frame2& f0, const Frame2& f1, GramInfo* info) {
  if (f0.f.size() != f0.g.size() || f1.f.size() != f1.g.size() ||
      f0.f.size() != f1.f.size() || f0.f.empty())
    fail(ErrorCode::GridMismatch, "frames must share the grid");
  if (frame_residual(f0) > 1e-6 || frame_residual(f1) > 1e-6)
    fail(ErrorCode::BadFrame, "frame is not orthonormal within 1e-6");

  const double a = mean_dot(f0.f, f1.f);
  const double b = mean_dot(f0.f, f1.g);
  const double c = mean_dot(f0.g, f1.f);
  const double d = mean_dot(f0.g, f1.g);

  // Closed-form singular values of the 2x2 Gram matrix.
  const double e = 0.5 * (a + d);
  const double f = 0.5 * (a - d);
  const double g = 0.5 * (c + b);
  const double h = 0.5 * (c - b);
  const double qv = std::hypot(e, h);
  const double rv = std::hypot(f, g);
  // Snap singular values within rounding of 1: arccos amplifies a 1e-16
  // perturbation there to ~1e-8, so same-subspace frames would never read
  // as distance zero otherwise.
  auto snap = [](double v) { return v > 1.0 - 1e-14 ? 1.0 : v; };
  const double lambda = snap(qv + rv);
  const double mu = snap(std::fabs(qv - rv));

  if (info) {
    info->gram = {a, b, c, d};
    info->singular_values = {lambda, mu};
  }
  const double al = std::acos(lambda);
  const double am = std::acos(mu);
  return std::sqrt(al * al + am * am);
}

TangentFunction closing_projection(const TangentFunction& a) {
  if (a.dim != 2)
    fail(ErrorCode::DimensionMismatch, "closing projection requires d = 2");
  const int n = static_cast<int>(a.size());
  if (n < 2) fail(ErrorCode::BadGrid, "need >= 2 samples");

  auto residual = [&](const double lam[2], double out[2]) {
    // mean of (a - lambda)/|a - lambda|; false when some sample hits lambda
    out[0] = out[1] = 0.0;
    for (int i = 0; i < n; ++i) {
      const double dx = a.sample(i)[0] - lam[0];
      const double dy = a.sample(i)[1] - lam[1];
      const double r = std::hypot(dx, dy);
      if (r < 1e-12) return false;
      out[0] += dx / r;
      out[1] += dy / r;
    }
    out[0] /= n;
    out[1] /= n;
    return true;
  };

  double lam[2] = {0.0, 0.0};
  for (int i = 0; i < n; ++i) {
    lam[0] += a.sample(i)[0];
    lam[1] += a.sample(i)[1];
  }
  lam[0] /= n;
  lam[1] /= n;

  double g[2];
  if (!residual(lam, g))
    fail(ErrorCode::NoConvergence, "degenerate start for the closing solve");
  double gn = std::hypot(g[0], g[1]);

  for (int iter = 0; iter < 200 && gn > 1e-12; ++iter) {
    // J = -mean (I - u u^T)/r
    double j00 = 0.0, j01 = 0.0, j11 = 0.0;
    for (int i = 0; i < n; ++i) {
      const double dx = a.sample(i)[0] - lam[0];
      const double dy = a.sample(i)[1] - lam[1];
      const double r = std::hypot(dx, dy);
      const double ux = dx / r;
      const double uy = dy / r;
      j00 -= (1.0 - ux * ux) / r;
      j01 -= (-ux * uy) / r;
      j11 -= (1.0 - uy * uy) / r;
    }
    j00 /= n;
    j01 /= n;
    j11 /= n;
    const double det = j00 * j11 - j01 * j01;
    if (std::fabs(det) < 1e-300)
      fail(ErrorCode::NoConvergence, "singular Jacobian in the closing solve");
    const double sx = -(j11 * g[0] - j01 * g[1]) / det;
    const double sy = -(-j01 * g[0] + j00 * g[1]) / det;

    double step = 1.0;
    bool accepted = false;
    for (int half = 0; half < 40; ++half, step *= 0.5) {
      const double cand[2] = {lam[0] + step * sx, lam[1] + step * sy};
      double gc[2];
      if (!residual(cand, gc)) continue;
      const double gcn = std::hypot(gc[0], gc[1]);
      if (gcn < gn) {
        lam[0] = cand[0];
        lam[1] = cand[1];
        g[0] = gc[0];
        g[1] = gc[1];
        gn = gcn;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  if (gn > 1e-8)
    fail(ErrorCode::NoConvergence,
         "closing projection did not reach zero mean (degenerate tangents)");

  TangentFunction out = a;
  for (int i = 0; i < n; ++i) {
    const double dx = a.sample(i)[0] - lam[0];
    const double dy = a.sample(i)[1] - lam[1];
    const double r = std::hypot(dx, dy);
    out.sample(i)[0] = dx / r;
    out.sample(i)[1] = dy / r;
  }
  return out;
}

}  // namespace elastica
