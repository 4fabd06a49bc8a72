#include "elastica/geodesic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "elastica/threading.hpp"

namespace elastica {

namespace {

struct LatticePiece {
  int ia, ja, ib, jb;  // knot coordinates scaled by n
};

// DP diffeomorphisms land on the n-lattice; refining each cell by
// lcm of the per-piece row counts makes dphi and a1 o phi constant on
// every refined cell, so discrete sums reproduce the exact integrals.
bool lattice_pieces(const Diffeo& phi, int n, std::vector<LatticePiece>& out) {
  out.clear();
  for (const auto& k : phi.knots)
    if (std::fabs(k[0] * n - std::round(k[0] * n)) > 1e-9 ||
        std::fabs(k[1] * n - std::round(k[1] * n)) > 1e-9)
      return false;
  for (std::size_t k = 0; k + 1 < phi.knots.size(); ++k) {
    LatticePiece pc;
    pc.ia = static_cast<int>(std::round(phi.knots[k][0] * n));
    pc.ja = static_cast<int>(std::round(phi.knots[k][1] * n));
    pc.ib = static_cast<int>(std::round(phi.knots[k + 1][0] * n));
    pc.jb = static_cast<int>(std::round(phi.knots[k + 1][1] * n));
    out.push_back(pc);
  }
  return true;
}

int clamp_cell(double s, int n) {
  int c = static_cast<int>(s * n);
  if (c < 0) c = 0;
  if (c >= n) c = n - 1;
  return c;
}

double lift_to(double prev, double cos_value) {
  // Nearest representative of {+-arccos(cos_value) + 2 pi k}; ties keep the
  // principal (+) branch.
  const double c = std::acos(clamp_unit(cos_value));
  const double k1 = std::floor((prev - c) / kTwoPi + 0.5);
  const double v1 = c + kTwoPi * k1;
  const double k2 = std::floor((prev + c) / kTwoPi + 0.5);
  const double v2 = -c + kTwoPi * k2;
  const double d1 = std::fabs(v1 - prev);
  const double d2 = std::fabs(v2 - prev);
  if (std::min(d1, d2) >= kPi - 1e-9)
    fail(ErrorCode::LiftJump, "omega lift is ambiguous (antipodal jump)");
  return d1 <= d2 ? v1 : v2;
}

}  // namespace

SphereEndpoints sphere_endpoints(const TangentFunction& a0,
                                 const TangentFunction& a1, const Diffeo& phi1,
                                 double sigma, LiftMode mode) {
  if (2.0 * sigma < 1.0) fail(ErrorCode::BadSigma, "need 2*sigma >= 1");
  if (a0.size() != a1.size() || a0.dim != a1.dim)
    fail(ErrorCode::GridMismatch, "tangent functions must share grid and dim");
  phi1.validate();
  const int n = static_cast<int>(a0.size());
  const int d = a0.dim;

  std::vector<LatticePiece> pieces;
  const bool lattice = lattice_pieces(phi1, n, pieces);
  int refine = 1;
  if (lattice) {
    for (const auto& pc : pieces) {
      const int q = pc.jb - pc.ja;
      refine = static_cast<int>(std::lcm(refine, q));
      if (refine > 64) {
        refine = 64;  // approximation beyond this; q <= 64 covers the defaults
        break;
      }
    }
  } else {
    refine = 16;
  }
  const int N = refine * n;

  SphereEndpoints ep;
  ep.refine = refine;
  ep.dim = d;
  ep.omega.resize(N);
  ep.dphi.resize(N);
  ep.a0.resize(static_cast<std::size_t>(N) * d);
  ep.a1phi.resize(static_cast<std::size_t>(N) * d);
  ep.q0.values.assign(static_cast<std::size_t>(N) * 2, 0.0);
  ep.q1.values.resize(static_cast<std::size_t>(N) * 2);
  for (int m = 0; m < N; ++m) ep.q0.values[2 * m] = 1.0;

  // Matched cell index per refined cell, exact on the lattice.
  std::vector<int> a1cell(N);
  if (lattice) {
    for (const auto& pc : pieces) {
      const int p = pc.ib - pc.ia;
      const int q = pc.jb - pc.ja;
      const double slope = static_cast<double>(q) / p;
      for (int m = pc.ia * refine; m < pc.ib * refine; ++m) {
        const long long local = m - static_cast<long long>(pc.ia) * refine;
        const long long row =
            (static_cast<long long>(q) * (2 * local + 1)) /
            (2LL * p * refine);
        a1cell[m] = std::min(n - 1, pc.ja + static_cast<int>(row));
        ep.dphi[m] = slope;
      }
    }
  } else {
    for (int m = 0; m < N; ++m) {
      const double s_mid = (m + 0.5) / N;
      a1cell[m] = clamp_cell(phi1.eval(s_mid), n);
      ep.dphi[m] = (phi1.eval((m + 1.0) / N) -
                    phi1.eval(static_cast<double>(m) / N)) * N;
    }
  }

  const double inv2s = 1.0 / (2.0 * sigma);
  double prev = 0.0;
  for (int m = 0; m < N; ++m) {
    const double* u = a0.sample(m / refine);
    const double* v = a1.sample(a1cell[m]);
    double dot = 0.0;
    for (int k = 0; k < d; ++k) dot += u[k] * v[k];
    double w;
    if (mode == LiftMode::smooth) {
      w = (m == 0) ? std::acos(clamp_unit(dot)) : lift_to(prev, dot);
      prev = w;
    } else {
      w = std::acos(clamp_unit(dot));
    }
    ep.omega[m] = w;
    const double root = std::sqrt(ep.dphi[m]);
    ep.q1.values[2 * m] = root * std::cos(w * inv2s);
    ep.q1.values[2 * m + 1] = root * std::sin(w * inv2s);
    for (int k = 0; k < d; ++k) {
      ep.a0[static_cast<std::size_t>(m) * d + k] = u[k];
      ep.a1phi[static_cast<std::size_t>(m) * d + k] = v[k];
    }
  }

  double nrm2 = 0.0;
  for (int m = 0; m < N; ++m)
    nrm2 += ep.q1.values[2 * m] * ep.q1.values[2 * m] +
            ep.q1.values[2 * m + 1] * ep.q1.values[2 * m + 1];
  nrm2 /= N;
  if (std::fabs(nrm2 - 1.0) > 1e-12) {
    const double scale = 1.0 / std::sqrt(nrm2);
    for (double& v : ep.q1.values) v *= scale;
  }

  double inner = 0.0;
  for (int m = 0; m < N; ++m) inner += ep.q1.values[2 * m];
  inner /= N;
  ep.rho = std::acos(clamp_unit(inner));
  return ep;
}

SphereFunction great_circle(const SphereFunction& q0, const SphereFunction& q1,
                            double rho, double t) {
  if (q0.size() != q1.size())
    fail(ErrorCode::GridMismatch, "endpoint grids differ");
  if (t < 0.0 || t > 1.0) fail(ErrorCode::BadGrid, "time must lie in [0,1]");
  if (rho >= kPi - 1e-9)
    fail(ErrorCode::DegenerateEndpoints,
         "antipodal endpoints: the connecting great circle is not unique");
  const std::size_t N = q0.size();
  if (rho < 1e-12) {
    // arccos rounds inner products within ~1e-16 of 1 down to rho = 0 while
    // the endpoint samples still differ at the 1e-8 scale
    double maxdiff = 0.0;
    for (std::size_t i = 0; i < 2 * N; ++i)
      maxdiff = std::max(maxdiff, std::fabs(q0.values[i] - q1.values[i]));
    if (maxdiff < 1e-6) return q0;
    fail(ErrorCode::DegenerateEndpoints, "rho = 0 with distinct endpoints");
  }
  const double inv_sin = 1.0 / std::sin(rho);
  const double c0 = std::sin((1.0 - t) * rho) * inv_sin;
  const double c1 = std::sin(t * rho) * inv_sin;
  SphereFunction out;
  out.values.resize(2 * N);
  for (std::size_t i = 0; i < 2 * N; ++i)
    out.values[i] = c0 * q0.values[i] + c1 * q1.values[i];
  return out;
}

GeodesicPath reconstruct_path(const TangentFunction& a0,
                              const TangentFunction& a1, const Diffeo& phi1,
                              double sigma, int time_steps, LiftMode mode) {
  if (time_steps < 2) fail(ErrorCode::BadGrid, "time_steps must be >= 2");
  SphereEndpoints ep = sphere_endpoints(a0, a1, phi1, sigma, mode);
  const int N = static_cast<int>(ep.size());
  const int d = ep.dim;
  const int T = time_steps;
  const double rho = ep.rho;

  if (rho >= kPi - 1e-9)
    fail(ErrorCode::DegenerateEndpoints,
         "antipodal endpoints: omega/(2 sigma) is pi almost everywhere");
  bool constant = false;
  if (rho < 1e-12) {
    double maxdiff = 0.0;
    for (std::size_t i = 0; i < ep.q0.values.size(); ++i)
      maxdiff = std::max(maxdiff,
                         std::fabs(ep.q0.values[i] - ep.q1.values[i]));
    if (maxdiff >= 1e-6)
      fail(ErrorCode::DegenerateEndpoints, "rho = 0 with distinct endpoints");
    constant = true;
  }

  GeodesicPath path;
  path.times.resize(T + 1);
  for (int k = 0; k <= T; ++k) path.times[k] = static_cast<double>(k) / T;
  path.grid_size = N;
  path.dim = d;
  path.rho = rho;
  path.closed = a0.closed && a1.closed;
  path.psi.assign(static_cast<std::size_t>(T + 1) * (N + 1), 0.0);
  path.alpha.resize(static_cast<std::size_t>(T + 1) * N * d);
  path.curves.resize(static_cast<std::size_t>(T + 1) * (N + 1) * d);

  // gamma on the (T+1) x N grid.
  std::vector<double> gamma(static_cast<std::size_t>(T + 1) * N * 2);
  const double inv_sin = constant ? 0.0 : 1.0 / std::sin(rho);
#pragma omp parallel for num_threads(thread_count()) if (T >= 8)
  for (int k = 0; k <= T; ++k) {
    const double t = static_cast<double>(k) / T;
    const double c0 = constant ? 1.0 : std::sin((1.0 - t) * rho) * inv_sin;
    const double c1 = constant ? 0.0 : std::sin(t * rho) * inv_sin;
    double* g = gamma.data() + static_cast<std::size_t>(k) * N * 2;
    for (int m = 0; m < 2 * N; ++m)
      g[m] = c0 * ep.q0.values[m] + c1 * ep.q1.values[m];
  }

  // Validity: cells where the great circle passes through zero. Analytic
  // detection (cos(omega/2sigma) = -1) plus sampled near-zeros.
  const double inv2s = 1.0 / (2.0 * sigma);
  std::vector<char> invalid_s(N, 0);
  std::vector<std::pair<int, int>> validity;
  for (int m = 0; m < N; ++m) {
    if (std::cos(ep.omega[m] * inv2s) <= -1.0 + 1e-12) {
      invalid_s[m] = 1;
      const double root = std::sqrt(ep.dphi[m]);
      const double tstar =
          constant ? 0.5
                   : std::atan2(std::sin(rho), root + std::cos(rho)) / rho;
      int k = static_cast<int>(std::lround(tstar * T));
      k = std::clamp(k, 0, T);
      validity.emplace_back(k, m);
    }
  }
  for (int k = 0; k <= T; ++k) {
    const double* g = gamma.data() + static_cast<std::size_t>(k) * N * 2;
    for (int m = 0; m < N; ++m) {
      const double r2 = g[2 * m] * g[2 * m] + g[2 * m + 1] * g[2 * m + 1];
      if (r2 < 1e-12) {
        invalid_s[m] = 1;
        validity.emplace_back(k, m);
      }
    }
  }
  std::sort(validity.begin(), validity.end());
  validity.erase(std::unique(validity.begin(), validity.end()),
                 validity.end());
  path.validity = std::move(validity);

  // dpsi, normalized per time slice so the integral of dpsi is exactly 1.
  std::vector<double> dpsi(static_cast<std::size_t>(T + 1) * N);
  for (int k = 0; k <= T; ++k) {
    const double* g = gamma.data() + static_cast<std::size_t>(k) * N * 2;
    double* dp = dpsi.data() + static_cast<std::size_t>(k) * N;
    double mean = 0.0;
    for (int m = 0; m < N; ++m) {
      dp[m] = g[2 * m] * g[2 * m] + g[2 * m + 1] * g[2 * m + 1];
      mean += dp[m];
    }
    mean /= N;
    const double scale = 1.0 / mean;
    for (int m = 0; m < N; ++m) dp[m] *= scale;
    double* psi = path.psi.data() + static_cast<std::size_t>(k) * (N + 1);
    psi[0] = 0.0;
    for (int m = 0; m < N; ++m) psi[m + 1] = psi[m] + dp[m] / N;
    psi[N] = 1.0;
  }

  // eta~: time-continuous angle of gamma per arc-length cell, eta~(0) = 0.
  // Unwrapped on a fine time subgrid; near-zero samples keep the previous
  // angle so the lift survives sign flips at reported cells.
  const int sub = 32;
  std::vector<double> cs0(static_cast<std::size_t>(T) * sub + 1);
  std::vector<double> cs1(cs0.size());
  for (std::size_t r = 0; r < cs0.size(); ++r) {
    const double t = static_cast<double>(r) / (static_cast<double>(T) * sub);
    cs0[r] = constant ? 1.0 : std::sin((1.0 - t) * rho) * inv_sin;
    cs1[r] = constant ? 0.0 : std::sin(t * rho) * inv_sin;
  }
  std::vector<double> eta(static_cast<std::size_t>(T + 1) * N);
#pragma omp parallel for num_threads(thread_count()) if (N >= 64)
  for (int m = 0; m < N; ++m) {
    const double q0x = ep.q0.values[2 * m];
    const double q0y = ep.q0.values[2 * m + 1];
    const double q1x = ep.q1.values[2 * m];
    const double q1y = ep.q1.values[2 * m + 1];
    double prev = 0.0;
    eta[m] = 0.0;
    for (std::size_t r = 1; r < cs0.size(); ++r) {
      const double gx = cs0[r] * q0x + cs1[r] * q1x;
      const double gy = cs0[r] * q0y + cs1[r] * q1y;
      if (gx * gx + gy * gy >= 1e-12) {
        const double raw = std::atan2(gy, gx);
        prev = raw + kTwoPi * std::floor((prev - raw) / kTwoPi + 0.5);
      }
      if (r % sub == 0)
        eta[(r / sub) * static_cast<std::size_t>(N) + m] = prev;
    }
  }

  // alpha(t, s) = cos(tau) a0 + sin(tau) a0^perp with tau = 2 sigma eta~.
  std::vector<double> perp(static_cast<std::size_t>(N) * d);
  const double min_perp = 0.5 / std::sqrt(static_cast<double>(d));
  for (int m = 0; m < N; ++m) {
    const double* u = ep.a0.data() + static_cast<std::size_t>(m) * d;
    const double* v = ep.a1phi.data() + static_cast<std::size_t>(m) * d;
    double* w = perp.data() + static_cast<std::size_t>(m) * d;
    const double sw = std::sin(ep.omega[m]);
    if (std::fabs(sw) > 1e-8) {
      const double cw = std::cos(ep.omega[m]);
      double nrm2 = 0.0;
      for (int k = 0; k < d; ++k) {
        w[k] = (v[k] - cw * u[k]) / sw;
        nrm2 += w[k] * w[k];
      }
      const double inv = 1.0 / std::sqrt(nrm2);
      for (int k = 0; k < d; ++k) w[k] *= inv;
    } else if (d == 2) {
      w[0] = -u[1];
      w[1] = u[0];
    } else {
      for (int r = 0; r < d; ++r) {
        double nrm2 = 0.0;
        for (int k = 0; k < d; ++k) {
          w[k] = (k == r ? 1.0 : 0.0) - u[r] * u[k];
          nrm2 += w[k] * w[k];
        }
        if (std::sqrt(nrm2) > min_perp) {
          const double inv = 1.0 / std::sqrt(nrm2);
          for (int k = 0; k < d; ++k) w[k] *= inv;
          break;
        }
      }
    }
  }
  const double two_sigma = 2.0 * sigma;
#pragma omp parallel for num_threads(thread_count()) if (T >= 8)
  for (int k = 0; k <= T; ++k) {
    for (int m = 0; m < N; ++m) {
      const double tau = two_sigma * eta[static_cast<std::size_t>(k) * N + m];
      const double ct = std::cos(tau);
      const double st = std::sin(tau);
      const double* u = ep.a0.data() + static_cast<std::size_t>(m) * d;
      const double* w = perp.data() + static_cast<std::size_t>(m) * d;
      double* out =
          path.alpha.data() + (static_cast<std::size_t>(k) * N + m) * d;
      for (int c = 0; c < d; ++c) out[c] = ct * u[c] + st * w[c];
    }
  }

  // Curves: integrate alpha(t, psi(t)^{-1}(u)) by midpoint quadrature.
#pragma omp parallel for num_threads(thread_count()) if (T >= 8)
  for (int k = 0; k <= T; ++k) {
    const double* psi = path.psi.data() + static_cast<std::size_t>(k) * (N + 1);
    double* pts =
        path.curves.data() + static_cast<std::size_t>(k) * (N + 1) * d;
    for (int c = 0; c < d; ++c) pts[c] = 0.0;
    int seg = 0;
    for (int j = 0; j < N; ++j) {
      const double u = (j + 0.5) / N;
      while (seg + 1 < N && psi[seg + 1] <= u) ++seg;
      const double* a =
          path.alpha.data() + (static_cast<std::size_t>(k) * N + seg) * d;
      for (int c = 0; c < d; ++c)
        pts[(j + 1) * d + c] = pts[j * d + c] + a[c] / N;
    }
  }

  // eta~(1, s) must recover omega/(2 sigma) wherever the circle is valid.
  double maxdev = 0.0;
  for (int m = 0; m < N; ++m) {
    if (invalid_s[m]) continue;
    const double dev = std::fabs(eta[static_cast<std::size_t>(T) * N + m] -
                                 ep.omega[m] * inv2s);
    maxdev = std::max(maxdev, dev);
  }
  path.max_lift_deviation = maxdev;
  if (maxdev > 1e-3)
    fail(ErrorCode::InvalidLift,
         "time lift does not recover omega/(2 sigma) at the endpoint");
  return path;
}

std::vector<double> pointwise_interpolant(const std::vector<double>& a0s,
                                          const std::vector<double>& a1s,
                                          double t) {
  if (a0s.size() != a1s.size() || a0s.empty())
    fail(ErrorCode::DimensionMismatch, "vectors must share a dimension");
  double dot = 0.0;
  for (std::size_t k = 0; k < a0s.size(); ++k) dot += a0s[k] * a1s[k];
  const double w = std::acos(clamp_unit(dot));
  if (w < 1e-8) return a0s;
  if (w > kPi - 1e-8)
    fail(ErrorCode::AntipodalPair,
         "antipodal pair: the connecting plane is undefined");
  const double inv_sin = 1.0 / std::sin(w);
  const double c0 = std::sin((1.0 - t) * w) * inv_sin;
  const double c1 = std::sin(t * w) * inv_sin;
  std::vector<double> out(a0s.size());
  for (std::size_t k = 0; k < a0s.size(); ++k)
    out[k] = c0 * a0s[k] + c1 * a1s[k];
  return out;
}

}  // namespace elastica
