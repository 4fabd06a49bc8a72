#include <doctest.h>

#include <cmath>

#include "elastica/geodesic.hpp"
#include "elastica/io.hpp"
#include "helpers.hpp"

using namespace elastica;
using namespace testutil;

namespace {

double discrete_norm(const SphereFunction& q) {
  double acc = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i)
    acc += q.x(i) * q.x(i) + q.y(i) * q.y(i);
  return std::sqrt(acc / q.size());
}

double inner(const SphereFunction& a, const SphereFunction& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    acc += a.x(i) * b.x(i) + a.y(i) * b.y(i);
  return acc / a.size();
}

SphereFunction constant_q(int n, double angle) {
  SphereFunction q;
  q.values.resize(2 * n);
  for (int i = 0; i < n; ++i) {
    q.values[2 * i] = std::cos(angle);
    q.values[2 * i + 1] = std::sin(angle);
  }
  return q;
}

}  // namespace

TEST_CASE("sphere_endpoints: identical tangents give q1 = q0 and rho = 0") {
  const TangentFunction a = random_tangents(32, 5);
  const auto ep = sphere_endpoints(a, a, Diffeo::identity(), 1.0);
  // arccos of a dot product one ulp below 1 already reads ~1.5e-8
  CHECK(ep.rho < 1e-7);
  for (std::size_t i = 0; i < ep.q1.size(); ++i) {
    CHECK(ep.q1.x(i) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::fabs(ep.q1.y(i)) < 1e-7);
  }
}

TEST_CASE("sphere_endpoints: perpendicular constants, sigma = 1") {
  const auto ep = sphere_endpoints(constant_tangents(16, 1, 0),
                                   constant_tangents(16, 0, 1),
                                   Diffeo::identity(), 1.0);
  CHECK(ep.rho == doctest::Approx(kPi / 4.0).epsilon(1e-12));
  for (std::size_t i = 0; i < ep.q1.size(); ++i) {
    CHECK(ep.q1.x(i) == doctest::Approx(std::cos(kPi / 4.0)));
    CHECK(ep.q1.y(i) == doctest::Approx(std::sin(kPi / 4.0)));
  }
}

TEST_CASE("sphere_endpoints: antipodal tangents at sigma = 1/2 hit rho = pi") {
  const auto ep = sphere_endpoints(constant_tangents(16, 1, 0),
                                   constant_tangents(16, -1, 0),
                                   Diffeo::identity(), 0.5);
  CHECK(ep.rho == doctest::Approx(kPi).epsilon(1e-12));
  CHECK_THROWS_AS(great_circle(ep.q0, ep.q1, ep.rho, 0.5), Error);
}

TEST_CASE("sphere_endpoints: unit norm and score consistency on a real match") {
  const TangentFunction a0 =
      resample_arclength(read_curve_csv(fixture("hand1.csv")), 64);
  const TangentFunction a1 =
      resample_arclength(read_curve_csv(fixture("hand2.csv")), 64);
  for (double sigma : {1.0, 2.0}) {
    const auto mr = match_tangents(a0, a1, sigma);
    const auto ep = sphere_endpoints(a0, a1, mr.phi, sigma);
    CHECK(std::fabs(discrete_norm(ep.q1) - 1.0) < 1e-9);
    CHECK(std::fabs(discrete_norm(ep.q0) - 1.0) < 1e-12);
    // the DP score is exactly the inner product <q0, q1> at the optimum
    CHECK(std::fabs(mr.distance - 2.0 * ep.rho) < 1e-9);
  }
}

TEST_CASE("great_circle: endpoints are reproduced exactly") {
  const SphereFunction q0 = constant_q(8, 0.0);
  const SphereFunction q1 = constant_q(8, kPi / 4.0);
  const double rho = std::acos(clamp_unit(inner(q0, q1)));
  const SphereFunction g0 = great_circle(q0, q1, rho, 0.0);
  const SphereFunction g1 = great_circle(q0, q1, rho, 1.0);
  CHECK(g0.values == q0.values);
  CHECK(g1.values == q1.values);
}

TEST_CASE("great_circle: bisector of two constants") {
  const SphereFunction q0 = constant_q(8, 0.0);
  const SphereFunction q1 = constant_q(8, kPi / 4.0);
  const SphereFunction mid = great_circle(q0, q1, kPi / 4.0, 0.5);
  for (std::size_t i = 0; i < mid.size(); ++i) {
    CHECK(std::atan2(mid.y(i), mid.x(i)) ==
          doctest::Approx(kPi / 8.0).epsilon(1e-12));
    CHECK(std::hypot(mid.x(i), mid.y(i)) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("great_circle: discrete energy equals 4 rho^2") {
  const TangentFunction a0 =
      resample_arclength(read_curve_csv(fixture("hand1.csv")), 64);
  const TangentFunction a1 =
      resample_arclength(read_curve_csv(fixture("hand2.csv")), 64);
  const auto mr = match_tangents(a0, a1, 1.0);
  const auto ep = sphere_endpoints(a0, a1, mr.phi, 1.0);
  const int T = 128;
  double accum = 0.0;
  SphereFunction prev = great_circle(ep.q0, ep.q1, ep.rho, 0.0);
  for (int k = 1; k <= T; ++k) {
    const SphereFunction cur =
        great_circle(ep.q0, ep.q1, ep.rho, static_cast<double>(k) / T);
    double step = 0.0;
    for (std::size_t i = 0; i < cur.values.size(); ++i) {
      const double diff = cur.values[i] - prev.values[i];
      step += diff * diff;
    }
    accum += (step / cur.size()) * T;  // ||dq||^2 * dt at dt = 1/T
    prev = cur;
  }
  CHECK(std::fabs(4.0 * accum - 4.0 * ep.rho * ep.rho) < 1e-4);
}

TEST_CASE("great_circle: degenerate inputs are rejected") {
  const SphereFunction q0 = constant_q(8, 0.0);
  const SphereFunction q1 = constant_q(8, kPi / 4.0);
  CHECK_THROWS_AS(great_circle(q0, q1, kPi, 0.5), Error);
  CHECK_THROWS_AS(great_circle(q0, q1, 1e-14, 0.5), Error);
  const SphereFunction same = great_circle(q0, q0, 0.0, 0.3);
  CHECK(same.values == q0.values);
}

TEST_CASE("reconstruct_path: identical curves stay put") {
  const TangentFunction a =
      resample_arclength(read_curve_csv(fixture("hand1.csv")), 64);
  const GeodesicPath p = reconstruct_path(a, a, Diffeo::identity(), 1.0, 4);
  const int N = p.grid_size;
  for (std::size_t t = 1; t < p.times.size(); ++t)
    for (int j = 0; j <= N; ++j)
      for (int c = 0; c < p.dim; ++c)
        CHECK(std::fabs(p.curve_point(t, j)[c] - p.curve_point(0, j)[c]) <
              1e-6);
  CHECK(p.validity.empty());
}

TEST_CASE("reconstruct_path: +x to +y is a pure rotation") {
  const Curve px = read_curve_csv(fixture("segment_plus_x.csv"));
  const Curve py = read_curve_csv(fixture("segment_plus_y.csv"));
  const TangentFunction a0 = resample_arclength(px, 16);
  const TangentFunction a1 = resample_arclength(py, 16);
  const auto mr = match_tangents(a0, a1, 1.0);
  const GeodesicPath p = reconstruct_path(a0, a1, mr.phi, 1.0, 8);
  const int N = p.grid_size;
  for (std::size_t t = 0; t < p.times.size(); ++t) {
    const double expect = p.times[t] * kPi / 2.0;
    const double* psi = p.psi_at(t);
    for (int m = 0; m < N; ++m) {
      CHECK(std::fabs(psi[m + 1] - static_cast<double>(m + 1) / N) < 1e-9);
      const double* al = p.alpha_at(t, m);
      CHECK(std::fabs(std::atan2(al[1], al[0]) - expect) < 1e-9);
    }
  }
}

TEST_CASE("reconstruct_path: endpoint recovery and invariants") {
  const int n = 64;
  const TangentFunction a0 =
      resample_arclength(read_curve_csv(fixture("hand1.csv")), n);
  const TangentFunction a1 =
      resample_arclength(read_curve_csv(fixture("hand2.csv")), n);
  const auto mr = match_tangents(a0, a1, 1.0);
  const GeodesicPath p = reconstruct_path(a0, a1, mr.phi, 1.0, 8);
  const int N = p.grid_size;
  const int refine = N / n;
  REQUIRE(refine * n == N);

  // psi(0) = identity, dpsi(1) = dphi
  const std::vector<double> slopes = mr.phi.cell_slopes(n);
  const double* psi0 = p.psi_at(0);
  const double* psiT = p.psi_at(p.time_steps());
  for (int m = 0; m < N; ++m) {
    CHECK(std::fabs(psi0[m + 1] - static_cast<double>(m + 1) / N) < 1e-9);
    const double dpsi = (psiT[m + 1] - psiT[m]) * N;
    CHECK(std::fabs(dpsi - slopes[m / refine]) < 1e-6);
  }

  // alpha(0) = a0, alpha(1) = a1 o phi, every sample unit norm
  for (int m = 0; m < N; ++m) {
    const double* start = p.alpha_at(0, m);
    CHECK(std::fabs(start[0] - a0.sample(m / refine)[0]) < 1e-6);
    CHECK(std::fabs(start[1] - a0.sample(m / refine)[1]) < 1e-6);
    const double s_mid = (m + 0.5) / N;
    const int cell = std::min(n - 1, static_cast<int>(mr.phi.eval(s_mid) * n));
    const double* end = p.alpha_at(p.time_steps(), m);
    CHECK(std::fabs(end[0] - a1.sample(cell)[0]) < 1e-6);
    CHECK(std::fabs(end[1] - a1.sample(cell)[1]) < 1e-6);
  }
  for (std::size_t t = 0; t < p.times.size(); ++t)
    for (int m = 0; m < N; ++m) {
      const double* al = p.alpha_at(t, m);
      CHECK(std::fabs(std::hypot(al[0], al[1]) - 1.0) < 1e-9);
    }

  // every frame is a unit-length polyline
  for (std::size_t t = 0; t < p.times.size(); ++t) {
    double len = 0.0;
    for (int j = 0; j < N; ++j) {
      const double* u = p.curve_point(t, j);
      const double* v = p.curve_point(t, j + 1);
      len += std::hypot(v[0] - u[0], v[1] - u[1]);
    }
    CHECK(std::fabs(len - 1.0) < 1e-9);
  }
  CHECK(p.max_lift_deviation < 1e-6);

  // metamorphosis energy of the reconstruction matches the geodesic energy
  const double u = energy(p, 1.0);
  CHECK(std::fabs(u - 4.0 * p.rho * p.rho) < 2e-2);  // coarse T = 8 run
}

TEST_CASE("reconstruct_path: validity report flags antipodal cells at sigma = 1/2") {
  const int n = 64;
  const TangentFunction a0 =
      resample_arclength(read_curve_csv(fixture("segment_plus_x.csv")), n);
  const TangentFunction a1 =
      resample_arclength(read_curve_csv(fixture("zigzag.csv")), n);

  const auto low = match_tangents(a0, a1, 0.5);
  const GeodesicPath p_low = reconstruct_path(a0, a1, low.phi, 0.5, 8);
  CHECK(!p_low.validity.empty());

  const auto high = match_tangents(a0, a1, 2.0);
  const GeodesicPath p_high = reconstruct_path(a0, a1, high.phi, 2.0, 8);
  CHECK(p_high.validity.empty());
}

TEST_CASE("reconstruct_path: hand fixtures, validity iff matched antipodes") {
  const int n = 64;
  const TangentFunction a0 =
      resample_arclength(read_curve_csv(fixture("hand1.csv")), n);
  const TangentFunction a1 =
      resample_arclength(read_curve_csv(fixture("hand2.csv")), n);
  const auto low = match_tangents(a0, a1, 0.5);
  const GeodesicPath p_low = reconstruct_path(a0, a1, low.phi, 0.5, 8);
  // at sigma = 1/2 the report is exactly the matched antipodal cells
  bool any_antipodal = false;
  const int refine = p_low.grid_size / n;
  for (int m = 0; m < p_low.grid_size; ++m) {
    const double s_mid = (m + 0.5) / p_low.grid_size;
    const int cell = std::min(n - 1, static_cast<int>(low.phi.eval(s_mid) * n));
    double dot = 0.0;
    for (int k = 0; k < 2; ++k)
      dot += a0.sample(m / refine)[k] * a1.sample(cell)[k];
    if (std::acos(clamp_unit(dot)) >= kPi - 1e-9) any_antipodal = true;
  }
  CHECK(p_low.validity.empty() == !any_antipodal);

  const auto high = match_tangents(a0, a1, 2.0);
  const GeodesicPath p_high = reconstruct_path(a0, a1, high.phi, 2.0, 8);
  CHECK(p_high.validity.empty());
}

TEST_CASE("reconstruct_path: smooth lift mode on a smooth pair") {
  const int n = 64;
  const TangentFunction a0 =
      resample_arclength(read_curve_csv(fixture("circle.csv")), n);
  const TangentFunction a1 =
      resample_arclength(read_curve_csv(fixture("horse1.csv")), n);
  const auto mr = match_tangents(a0, a1, 1.0);
  const GeodesicPath p =
      reconstruct_path(a0, a1, mr.phi, 1.0, 8, LiftMode::smooth);
  CHECK(p.grid_size >= n);
  CHECK(p.max_lift_deviation < 1e-3);
}

TEST_CASE("pointwise_interpolant: endpoints, bisector, 3-d case") {
  const std::vector<double> ex{1.0, 0.0};
  const std::vector<double> ey{0.0, 1.0};
  CHECK(pointwise_interpolant(ex, ey, 0.0) == ex);
  CHECK(pointwise_interpolant(ex, ey, 1.0) == ey);
  const auto mid = pointwise_interpolant(ex, ey, 0.5);
  CHECK(mid[0] == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
  CHECK(mid[1] == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));

  const std::vector<double> e1{1.0, 0.0, 0.0};
  const std::vector<double> e3{0.0, 0.0, 1.0};
  const auto third = pointwise_interpolant(e1, e3, 1.0 / 3.0);
  CHECK(third[0] == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-14));
  CHECK(third[1] == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(third[2] == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("pointwise_interpolant: unit norm, span, antipodal rejection") {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<double> a(3), b(3);
    double na = 0.0, nb = 0.0;
    for (int k = 0; k < 3; ++k) {
      a[k] = unit(rng);
      b[k] = unit(rng);
      na += a[k] * a[k];
      nb += b[k] * b[k];
    }
    for (int k = 0; k < 3; ++k) {
      a[k] /= std::sqrt(na);
      b[k] /= std::sqrt(nb);
    }
    const double t = 0.5 * (unit(rng) + 1.0);
    const auto v = pointwise_interpolant(a, b, t);
    double norm = 0.0;
    for (double x : v) norm += x * x;
    CHECK(std::fabs(std::sqrt(norm) - 1.0) < 1e-12);
    // v lies in span{a, b}: the component orthogonal to both vanishes
    std::vector<double> cross{a[1] * b[2] - a[2] * b[1],
                              a[2] * b[0] - a[0] * b[2],
                              a[0] * b[1] - a[1] * b[0]};
    double dot = 0.0;
    for (int k = 0; k < 3; ++k) dot += v[k] * cross[k];
    CHECK(std::fabs(dot) < 1e-12);
  }

  const std::vector<double> plus{1.0, 0.0};
  const std::vector<double> minus{-1.0, 0.0};
  CHECK_THROWS_AS(pointwise_interpolant(plus, minus, 0.5), Error);
}
