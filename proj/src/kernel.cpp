#include "elastica/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>

#include <Eigen/Dense>

#include "elastica/path.hpp"
#include "elastica/threading.hpp"

namespace elastica {

namespace {

constexpr double kUnreached = -1.0;  // field entries are nonnegative

int cell_index(double s, int n) {
  int c = static_cast<int>(s * n);
  if (c < 0) c = 0;
  if (c >= n) c = n - 1;
  return c;
}

}  // namespace

// ---------------------------------------------------------------------------
// Diffeo

Diffeo Diffeo::identity() {
  Diffeo phi;
  phi.knots = {{0.0, 0.0}, {1.0, 1.0}};
  return phi;
}

void Diffeo::validate() const {
  if (knots.size() < 2) fail(ErrorCode::BadGrid, "diffeo needs >= 2 knots");
  if (std::fabs(knots.front()[0]) > 1e-12 || std::fabs(knots.front()[1]) > 1e-12 ||
      std::fabs(knots.back()[0] - 1.0) > 1e-12 ||
      std::fabs(knots.back()[1] - 1.0) > 1e-12)
    fail(ErrorCode::BadGrid, "diffeo must run from (0,0) to (1,1)");
  for (std::size_t k = 1; k < knots.size(); ++k)
    if (knots[k][0] <= knots[k - 1][0] || knots[k][1] <= knots[k - 1][1])
      fail(ErrorCode::BadGrid, "diffeo knots must be strictly increasing");
}

double Diffeo::eval(double s) const {
  if (s <= knots.front()[0]) return knots.front()[1];
  if (s >= knots.back()[0]) return knots.back()[1];
  auto it = std::upper_bound(
      knots.begin(), knots.end(), s,
      [](double v, const std::array<double, 2>& k) { return v < k[0]; });
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  const double w = (s - lo[0]) / (hi[0] - lo[0]);
  return lo[1] + w * (hi[1] - lo[1]);
}

double Diffeo::eval_inverse(double t) const {
  if (t <= knots.front()[1]) return knots.front()[0];
  if (t >= knots.back()[1]) return knots.back()[0];
  auto it = std::upper_bound(
      knots.begin(), knots.end(), t,
      [](double v, const std::array<double, 2>& k) { return v < k[1]; });
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  const double w = (t - lo[1]) / (hi[1] - lo[1]);
  return lo[0] + w * (hi[0] - lo[0]);
}

std::vector<double> Diffeo::cell_slopes(int n) const {
  std::vector<double> out(n, 0.0);
  bool lattice = true;
  for (const auto& k : knots) {
    if (std::fabs(k[0] * n - std::round(k[0] * n)) > 1e-9 ||
        std::fabs(k[1] * n - std::round(k[1] * n)) > 1e-9) {
      lattice = false;
      break;
    }
  }
  if (lattice) {
    for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
      const int ia = static_cast<int>(std::round(knots[k][0] * n));
      const int ib = static_cast<int>(std::round(knots[k + 1][0] * n));
      const double slope =
          (knots[k + 1][1] - knots[k][1]) / (knots[k + 1][0] - knots[k][0]);
      for (int c = ia; c < ib && c < n; ++c) out[c] = slope;
    }
  } else {
    for (int c = 0; c < n; ++c)
      out[c] = (eval((c + 1.0) / n) - eval(static_cast<double>(c) / n)) * n;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Cost and omega fields

CostField cost_field(const TangentFunction& a0, const TangentFunction& a1,
                     double sigma) {
  if (2.0 * sigma < 1.0)
    fail(ErrorCode::BadSigma, "need 2*sigma >= 1");
  if (a0.size() != a1.size() || a0.dim != a1.dim)
    fail(ErrorCode::GridMismatch, "tangent functions must share grid and dim");
  const int n = static_cast<int>(a0.size());
  const int d = a0.dim;
  CostField out;
  out.n = n;
  out.sigma = sigma;
  out.values.resize(static_cast<std::size_t>(n) * n);
  const double inv2s = 1.0 / (2.0 * sigma);
#pragma omp parallel for num_threads(thread_count()) if (n >= 64)
  for (int i = 0; i < n; ++i) {
    const double* u = a0.sample(i);
    double* row = out.values.data() + static_cast<std::size_t>(i) * n;
    for (int j = 0; j < n; ++j) {
      const double* v = a1.sample(j);
      double dot = 0.0;
      for (int k = 0; k < d; ++k) dot += u[k] * v[k];
      const double f = std::cos(std::acos(clamp_unit(dot)) * inv2s);
      row[j] = f > 0.0 ? f : 0.0;
    }
  }
  return out;
}

OmegaField omega_field(const TangentFunction& a0, const TangentFunction& a1) {
  if (a0.size() != a1.size() || a0.dim != a1.dim)
    fail(ErrorCode::GridMismatch, "tangent functions must share grid and dim");
  const int n = static_cast<int>(a0.size());
  const int d = a0.dim;
  OmegaField out;
  out.n = n;
  out.values.resize(static_cast<std::size_t>(n) * n);
#pragma omp parallel for num_threads(thread_count()) if (n >= 64)
  for (int i = 0; i < n; ++i) {
    const double* u = a0.sample(i);
    double* row = out.values.data() + static_cast<std::size_t>(i) * n;
    for (int j = 0; j < n; ++j) {
      const double* v = a1.sample(j);
      double dot = 0.0;
      for (int k = 0; k < d; ++k) dot += u[k] * v[k];
      row[j] = std::acos(clamp_unit(dot));
    }
  }
  return out;
}

PlanarGrids planar_grids(const TangentFunction& a0, const TangentFunction& a1) {
  if (a0.dim != 2 || a1.dim != 2)
    fail(ErrorCode::DimensionMismatch, "planar grids require d = 2");
  if (a0.size() != a1.size())
    fail(ErrorCode::GridMismatch, "tangent functions must share the grid");
  const int n = static_cast<int>(a0.size());
  PlanarGrids g;
  g.n = n;
  g.dot.resize(static_cast<std::size_t>(n) * n);
  g.cross.resize(static_cast<std::size_t>(n) * n);
#pragma omp parallel for num_threads(thread_count()) if (n >= 64)
  for (int i = 0; i < n; ++i) {
    const double* u = a0.sample(i);
    for (int j = 0; j < n; ++j) {
      const double* v = a1.sample(j);
      const std::size_t idx = static_cast<std::size_t>(i) * n + j;
      double dot = 0.0;
      dot += u[0] * v[0];
      dot += u[1] * v[1];
      g.dot[idx] = dot;
      g.cross[idx] = u[0] * v[1] - u[1] * v[0];
    }
  }
  return g;
}

CostField rotated_cost_field(const PlanarGrids& grids, double sigma,
                             double angle, int offset_cells) {
  if (2.0 * sigma < 1.0) fail(ErrorCode::BadSigma, "need 2*sigma >= 1");
  const int n = grids.n;
  CostField out;
  out.n = n;
  out.sigma = sigma;
  out.values.resize(static_cast<std::size_t>(n) * n);
  const double inv2s = 1.0 / (2.0 * sigma);
  const double c = std::cos(angle);
  const double s = std::sin(angle);
#pragma omp parallel for num_threads(thread_count()) if (n >= 64)
  for (int i = 0; i < n; ++i) {
    const int src = (i + offset_cells) % n;
    const double* drow = grids.dot.data() + static_cast<std::size_t>(src) * n;
    const double* xrow = grids.cross.data() + static_cast<std::size_t>(src) * n;
    double* row = out.values.data() + static_cast<std::size_t>(i) * n;
    for (int j = 0; j < n; ++j) {
      const double dot = c * drow[j] + s * xrow[j];
      const double f = std::cos(std::acos(clamp_unit(dot)) * inv2s);
      row[j] = f > 0.0 ? f : 0.0;
    }
  }
  return out;
}

TangentFunction rotate_tangents(const TangentFunction& a, double angle) {
  if (a.dim != 2) fail(ErrorCode::DimensionMismatch, "rotation angle needs d = 2");
  TangentFunction out = a;
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double x = a.sample(i)[0];
    const double y = a.sample(i)[1];
    out.sample(i)[0] = c * x - s * y;
    out.sample(i)[1] = s * x + c * y;
  }
  return out;
}

TangentFunction apply_rotation(const TangentFunction& a,
                               const std::vector<double>& rot) {
  const int d = a.dim;
  if (rot.size() != static_cast<std::size_t>(d) * d)
    fail(ErrorCode::DimensionMismatch, "rotation matrix must be d x d");
  TangentFunction out = a;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double* v = a.sample(i);
    double* w = out.sample(i);
    for (int r = 0; r < d; ++r) {
      double acc = 0.0;
      for (int k = 0; k < d; ++k) acc += rot[static_cast<std::size_t>(r) * d + k] * v[k];
      w[r] = acc;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Dynamic program

std::vector<DpStep> dp_steps(int kmax) {
  if (kmax < 1) fail(ErrorCode::BadGrid, "kmax must be >= 1");
  std::vector<DpStep> steps;
  for (int p = 1; p <= kmax; ++p) {
    for (int q = 1; q <= kmax; ++q) {
      if (std::gcd(p, q) != 1) continue;
      DpStep st;
      st.p = p;
      st.q = q;
      st.root = std::sqrt(static_cast<double>(p) * q);
      st.slope_dev = std::fabs(static_cast<double>(q) / p - 1.0);
      std::vector<double> ts;
      ts.push_back(0.0);
      for (int k = 1; k < p; ++k) ts.push_back(static_cast<double>(k) / p);
      for (int l = 1; l < q; ++l) ts.push_back(static_cast<double>(l) / q);
      ts.push_back(1.0);
      std::sort(ts.begin(), ts.end());
      for (std::size_t r = 0; r + 1 < ts.size(); ++r) {
        const double t0 = ts[r];
        const double t1 = ts[r + 1];
        if (t1 <= t0) continue;
        const double mid = 0.5 * (t0 + t1);
        DpFragment fr;
        fr.di = static_cast<int>(p * mid);
        fr.dj = static_cast<int>(q * mid);
        fr.len = t1 - t0;
        st.frags.push_back(fr);
      }
      steps.push_back(std::move(st));
    }
  }
  return steps;
}

DpResult dp_match(const CostField& field, int kmax) {
  const int n = field.n;
  if (n < 2) fail(ErrorCode::BadGrid, "cost field needs n >= 2");
  const auto steps = dp_steps(kmax);
  const int W = n + 1;
  std::vector<double> score(static_cast<std::size_t>(W) * W, kUnreached);
  std::vector<std::int16_t> from(static_cast<std::size_t>(W) * W, -1);
  score[0] = 0.0;
  const double inv_n = 1.0 / n;
  const double* values = field.values.data();

  auto relax_cell = [&](int i, int j) {
    double best = kUnreached;
    int best_step = -1;
    double best_dev = 0.0;
    int best_b = 0;
    for (std::size_t si = 0; si < steps.size(); ++si) {
      const DpStep& st = steps[si];
      const int a = i - st.p;
      const int b = j - st.q;
      if (a < 0 || b < 0) continue;
      const double s0 = score[static_cast<std::size_t>(a) * W + b];
      if (s0 < 0.0) continue;
      double w = 0.0;
      for (const DpFragment& fr : st.frags)
        w += fr.len *
             values[static_cast<std::size_t>(a + fr.di) * n + (b + fr.dj)];
      const double cand = s0 + w * st.root * inv_n;
      if (cand > best ||
          (cand == best && (st.slope_dev < best_dev ||
                            (st.slope_dev == best_dev && b < best_b)))) {
        best = cand;
        best_step = static_cast<int>(si);
        best_dev = st.slope_dev;
        best_b = b;
      }
    }
    const std::size_t idx = static_cast<std::size_t>(i) * W + j;
    score[idx] = best;
    from[idx] = static_cast<std::int16_t>(best_step);
  };

  // Blocked anti-diagonal wavefront. A cell reads at most kmax cells up/left,
  // so a B x B tile depends only on its top/left/diagonal neighbor tiles;
  // tiles on one tile-diagonal are independent. Cells inside a tile are swept
  // row-major. Results are identical to the plain sweep for any tile order.
  const int B = 64;
  if (n >= 192 && kmax <= B && thread_count() > 1) {
    const int nt = (n + B - 1) / B;
#pragma omp parallel num_threads(thread_count())
    for (int D = 0; D <= 2 * (nt - 1); ++D) {
      const int Ilo = std::max(0, D - (nt - 1));
      const int Ihi = std::min(nt - 1, D);
#pragma omp for schedule(dynamic)
      for (int I = Ilo; I <= Ihi; ++I) {
        const int J = D - I;
        const int i1 = std::min(n, (I + 1) * B);
        const int j0 = 1 + J * B;
        const int j1 = std::min(n, (J + 1) * B);
        for (int i = 1 + I * B; i <= i1; ++i)
          for (int j = j0; j <= j1; ++j) relax_cell(i, j);
      }
    }
  } else {
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) relax_cell(i, j);
  }

  DpResult out;
  out.score = std::clamp(score[static_cast<std::size_t>(n) * W + n], 0.0, 1.0);

  std::vector<std::array<double, 2>> rev;
  int i = n;
  int j = n;
  rev.push_back({1.0, 1.0});
  while (i != 0 || j != 0) {
    const int si = from[static_cast<std::size_t>(i) * W + j];
    if (si < 0) fail(ErrorCode::BadGrid, "dp backtrack left the lattice");
    i -= steps[si].p;
    j -= steps[si].q;
    rev.push_back({static_cast<double>(i) / n, static_cast<double>(j) / n});
  }
  out.phi.knots.assign(rev.rbegin(), rev.rend());
  out.phi.knots.front() = {0.0, 0.0};
  out.phi.knots.back() = {1.0, 1.0};
  return out;
}

// ---------------------------------------------------------------------------
// Distances

MatchResult match_tangents(const TangentFunction& a0, const TangentFunction& a1,
                           double sigma, const MatchOptions& opt) {
  const CostField field = cost_field(a0, a1, sigma);
  DpResult dp = dp_match(field, opt.kmax);
  MatchResult out;
  out.score = dp.score;
  out.distance = 2.0 * std::acos(clamp_unit(dp.score));
  out.sigma = sigma;
  out.phi = std::move(dp.phi);
  return out;
}

MatchResult distance_open(const Curve& m0, const Curve& m1, double sigma,
                          int n, const MatchOptions& opt) {
  const TangentFunction a0 = resample_arclength(m0, n);
  const TangentFunction a1 = resample_arclength(m1, n);
  return match_tangents(a0, a1, sigma, opt);
}

namespace {

MatchResult planar_rotation_search(const TangentFunction& a0,
                                   const TangentFunction& a1, double sigma,
                                   const MatchOptions& opt) {
  const PlanarGrids grids = planar_grids(a0, a1);
  auto eval_dist = [&](double c) {
    const CostField f = rotated_cost_field(grids, sigma, c);
    const DpResult dp = dp_match(f, opt.kmax);
    return 2.0 * std::acos(clamp_unit(dp.score));
  };

  constexpr int kCoarse = 64;
  std::vector<double> dist(kCoarse);
#pragma omp parallel for num_threads(thread_count()) schedule(dynamic)
  for (int k = 0; k < kCoarse; ++k) dist[k] = eval_dist(kTwoPi * k / kCoarse);
  int kbest = 0;
  for (int k = 1; k < kCoarse; ++k)
    if (dist[k] < dist[kbest]) kbest = k;

  double best_c = kTwoPi * kbest / kCoarse;
  double best_v = dist[kbest];
  const double h = kTwoPi / kCoarse;
  double lo = best_c - h;
  double hi = best_c + h;
  const double invgr = 0.6180339887498949;
  double x1 = hi - invgr * (hi - lo);
  double x2 = lo + invgr * (hi - lo);
  double f1 = eval_dist(x1);
  double f2 = eval_dist(x2);
  auto track = [&](double c, double v) {
    if (v < best_v) {
      best_v = v;
      best_c = c;
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
      f1 = eval_dist(x1);
      track(x1, f1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + invgr * (hi - lo);
      f2 = eval_dist(x2);
      track(x2, f2);
    }
  }

  const CostField f = rotated_cost_field(grids, sigma, best_c);
  DpResult dp = dp_match(f, opt.kmax);
  MatchResult out;
  out.score = dp.score;
  out.distance = 2.0 * std::acos(clamp_unit(dp.score));
  out.sigma = sigma;
  out.phi = std::move(dp.phi);
  double c = std::fmod(best_c, kTwoPi);
  if (c < 0.0) c += kTwoPi;
  out.rotation_angle = c;
  return out;
}

MatchResult procrustes_rotation_search(const TangentFunction& a0,
                                       const TangentFunction& a1, double sigma,
                                       const MatchOptions& opt) {
  const int d = a0.dim;
  const int n = static_cast<int>(a0.size());
  MatchResult cur = match_tangents(a0, a1, sigma, opt);
  Eigen::MatrixXd best_rot = Eigen::MatrixXd::Identity(d, d);
  MatchResult best = cur;

  Eigen::MatrixXd rot = Eigen::MatrixXd::Identity(d, d);
  for (int iter = 0; iter < 50; ++iter) {
    // Procrustes fit on matched pairs weighted by sqrt(dphi).
    const std::vector<double> slopes = cur.phi.cell_slopes(n);
    Eigen::MatrixXd cross = Eigen::MatrixXd::Zero(d, d);
    for (int i = 0; i < n; ++i) {
      const double s_mid = (i + 0.5) / n;
      const int j = cell_index(cur.phi.eval(s_mid), n);
      const double w = std::sqrt(std::max(slopes[i], 0.0));
      const double* u = a0.sample(i);
      const double* v = a1.sample(j);
      for (int r = 0; r < d; ++r)
        for (int k = 0; k < d; ++k) cross(r, k) += w * u[r] * v[k];
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(
        cross, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Eigen::MatrixXd r_new = svd.matrixV() * svd.matrixU().transpose();
    if (r_new.determinant() < 0.0) {
      Eigen::MatrixXd flip = Eigen::MatrixXd::Identity(d, d);
      flip(d - 1, d - 1) = -1.0;
      r_new = svd.matrixV() * flip * svd.matrixU().transpose();
    }

    TangentFunction a0r = a0;
    for (int i = 0; i < n; ++i) {
      const double* u = a0.sample(i);
      double* w = a0r.sample(i);
      for (int r = 0; r < d; ++r) {
        double acc = 0.0;
        for (int k = 0; k < d; ++k) acc += r_new(r, k) * u[k];
        w[r] = acc;
      }
    }
    MatchResult next = match_tangents(a0r, a1, sigma, opt);
    const double gain = cur.distance - next.distance;
    rot = r_new;
    cur = next;
    if (cur.distance < best.distance) {
      best = cur;
      best_rot = rot;
    }
    if (gain < 1e-8) break;
  }

  std::vector<double> rot_flat(static_cast<std::size_t>(d) * d);
  for (int r = 0; r < d; ++r)
    for (int k = 0; k < d; ++k)
      rot_flat[static_cast<std::size_t>(r) * d + k] = best_rot(r, k);
  best.rotation = std::move(rot_flat);
  return best;
}

}  // namespace

MatchResult match_tangents_rotation(const TangentFunction& a0,
                                    const TangentFunction& a1, double sigma,
                                    const MatchOptions& opt) {
  if (a0.dim != a1.dim || a0.size() != a1.size())
    fail(ErrorCode::GridMismatch, "tangent functions must share grid and dim");
  // Validate up front: the coarse scan runs inside a parallel region and
  // must not throw from there.
  if (2.0 * sigma < 1.0) fail(ErrorCode::BadSigma, "need 2*sigma >= 1");
  if (a0.size() < 2) fail(ErrorCode::BadGrid, "grid size must be at least 2");
  if (opt.kmax < 1) fail(ErrorCode::BadGrid, "kmax must be >= 1");
  if (a0.dim == 2) return planar_rotation_search(a0, a1, sigma, opt);
  return procrustes_rotation_search(a0, a1, sigma, opt);
}

MatchResult distance_rotation_invariant(const Curve& m0, const Curve& m1,
                                        double sigma, int n,
                                        const MatchOptions& opt) {
  const TangentFunction a0 = resample_arclength(m0, n);
  const TangentFunction a1 = resample_arclength(m1, n);
  return match_tangents_rotation(a0, a1, sigma, opt);
}

MatchResult distance_1d(const SampledFunction& f0, const SampledFunction& f1,
                        double sigma, int n, const MatchOptions& opt) {
  const TangentFunction a0 = sign_representation(f0, n);
  const TangentFunction a1 = sign_representation(f1, n);
  return match_tangents(a0, a1, sigma, opt);
}

// ---------------------------------------------------------------------------
// Energy

double energy(const GeodesicPath& path, double sigma) {
  if (sigma <= 0.0) fail(ErrorCode::BadSigma, "sigma must be positive");
  const int T = static_cast<int>(path.time_steps());
  if (T < 2) fail(ErrorCode::DegeneratePath, "time grid needs >= 2 steps");
  const int N = path.grid_size;
  const int d = path.dim;
  const double dt = 1.0 / T;
  const double ds = 1.0 / N;
  const double inv_s2 = 1.0 / (sigma * sigma);

  for (int t = 1; t < T; ++t) {
    const double* psi = path.psi_at(t);
    for (int i = 0; i < N; ++i)
      if ((psi[i + 1] - psi[i]) * N <= 0.0)
        fail(ErrorCode::DegeneratePath, "dpsi <= 0 at an interior time");
  }

  double total = 0.0;
  for (int t = 0; t < T; ++t) {
    const double* psi0 = path.psi_at(t);
    const double* psi1 = path.psi_at(t + 1);
    double acc = 0.0;
    for (int i = 0; i < N; ++i) {
      const double d0 = (psi0[i + 1] - psi0[i]) * N;
      const double d1 = (psi1[i + 1] - psi1[i]) * N;
      const double mid = 0.5 * (d0 + d1);
      if (mid <= 0.0) fail(ErrorCode::DegeneratePath, "dpsi <= 0 along the path");
      const double dd = (d1 - d0) / dt;
      const double* u = path.alpha_at(t, i);
      const double* v = path.alpha_at(t + 1, i);
      double da2 = 0.0;
      for (int k = 0; k < d; ++k) {
        const double diff = (v[k] - u[k]) / dt;
        da2 += diff * diff;
      }
      acc += dd * dd / mid + da2 * mid * inv_s2;
    }
    total += acc * dt * ds;
  }
  return total;
}

}  // namespace elastica
