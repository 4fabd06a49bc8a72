#include "elastica/serial.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace elastica::serial {

CostField cost_field(const TangentFunction& a0, const TangentFunction& a1,
                     double sigma) {
  if (2.0 * sigma < 1.0) fail(ErrorCode::BadSigma, "need 2*sigma >= 1");
  if (a0.size() != a1.size() || a0.dim != a1.dim)
    fail(ErrorCode::GridMismatch, "tangent functions must share grid and dim");
  const int n = static_cast<int>(a0.size());
  const int d = a0.dim;
  CostField out;
  out.n = n;
  out.sigma = sigma;
  out.values.resize(static_cast<std::size_t>(n) * n);
  const double inv2s = 1.0 / (2.0 * sigma);
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

DpResult dp_match(const CostField& field, int kmax) {
  const int n = field.n;
  if (n < 2) fail(ErrorCode::BadGrid, "cost field needs n >= 2");
  const auto steps = dp_steps(kmax);
  const int W = n + 1;
  std::vector<double> score(static_cast<std::size_t>(W) * W, -1.0);
  std::vector<std::int16_t> from(static_cast<std::size_t>(W) * W, -1);
  score[0] = 0.0;
  const double inv_n = 1.0 / n;
  const double* values = field.values.data();

  // Row-major relaxation; predecessors have strictly smaller i and j.
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      double best = -1.0;
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
    }
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

}  // namespace elastica::serial
