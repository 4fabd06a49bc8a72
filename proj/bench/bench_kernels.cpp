// Times the OpenMP kernels against the serial reference and checks that both
// produce identical results.
//
//   ./elastica_bench [reps]
//   ELASTICA_THREADS=1 ./elastica_bench

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>

#include "elastica/kernel.hpp"
#include "elastica/serial.hpp"
#include "elastica/threading.hpp"

using namespace elastica;
using clock_type = std::chrono::steady_clock;

namespace {

TangentFunction random_tangents(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  TangentFunction a;
  a.dim = 2;
  a.samples.resize(static_cast<std::size_t>(n) * 2);
  for (int i = 0; i < n; ++i) {
    const double t = angle(rng);
    a.samples[2 * i] = std::cos(t);
    a.samples[2 * i + 1] = std::sin(t);
  }
  return a;
}

template <typename F>
double time_ms(int reps, F&& fn) {
  const auto t0 = clock_type::now();
  for (int r = 0; r < reps; ++r) fn();
  const auto t1 = clock_type::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

bool same(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return false;
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  const int reps = argc > 1 ? std::atoi(argv[1]) : 5;
  std::printf("threads: %d, reps: %d\n", thread_count(), reps);
  std::printf("%6s | %14s | %14s | %7s | %14s | %14s | %7s | %5s\n", "n",
              "field serial", "field omp", "speedup", "dp serial", "dp omp",
              "speedup", "equal");

  bool all_equal = true;
  for (int n : {128, 256, 512}) {
    const TangentFunction a0 = random_tangents(n, 17u + n);
    const TangentFunction a1 = random_tangents(n, 91u + n);

    CostField fs, fp;
    const double t_fs =
        time_ms(reps, [&] { fs = serial::cost_field(a0, a1, 1.0); });
    const double t_fp = time_ms(reps, [&] { fp = cost_field(a0, a1, 1.0); });

    DpResult ds, dp;
    const double t_ds = time_ms(reps, [&] { ds = serial::dp_match(fs, 4); });
    const double t_dp = time_ms(reps, [&] { dp = dp_match(fp, 4); });

    const bool eq = same(fs.values, fp.values) && ds.score == dp.score &&
                    ds.phi.knots == dp.phi.knots;
    all_equal = all_equal && eq;
    std::printf("%6d | %11.3f ms | %11.3f ms | %6.2fx | %11.3f ms | %11.3f ms | %6.2fx | %5s\n",
                n, t_fs, t_fp, t_fs / t_fp, t_ds, t_dp, t_ds / t_dp,
                eq ? "yes" : "NO");
  }
  if (!all_equal) {
    std::printf("mismatch between serial and parallel kernels\n");
    return 1;
  }
  return 0;
}
