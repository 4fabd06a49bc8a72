// elastica command line: elastic distances, optimal correspondences and
// geodesic paths between curves given as CSV point lists.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <tuple>
#include <utility>

#include <CLI11.hpp>

#include "elastica/closed.hpp"
#include "elastica/geodesic.hpp"
#include "elastica/io.hpp"
#include "elastica/kernel.hpp"

namespace fs = std::filesystem;
using namespace elastica;

namespace {

struct Config {
  double sigma = 1.0;
  int n = 256;
  int kmax = 4;
  int time_steps = 16;
  std::string lift = "measurable";
  bool rotation = false;
  bool offset = false;
  bool one_dim = false;
  bool close_frames = false;
};

void add_common(CLI::App* cmd, Config& cfg) {
  cmd->add_option("--sigma", cfg.sigma, "deformation tradeoff, 2*sigma >= 1");
  cmd->add_option("--grid", cfg.n, "arc-length grid size");
  cmd->add_option("--kmax", cfg.kmax, "DP step bound (slopes 1/kmax..kmax)");
  cmd->add_option("--time-steps", cfg.time_steps, "geodesic time steps");
  cmd->add_option("--lift", cfg.lift, "omega lift mode")
      ->check(CLI::IsMember({"measurable", "smooth"}));
  cmd->add_flag("--rotation", cfg.rotation, "minimize over rotations");
  cmd->add_flag("--offset", cfg.offset,
                "minimize over starting points (closed curves)");
  cmd->add_flag("--one-dim", cfg.one_dim, "compare scalar functions");
  cmd->add_flag("--close-frames", cfg.close_frames,
                "closing projection on exported frames (display only)");
}

int validate_config(const Config& cfg) {
  if (2.0 * cfg.sigma < 1.0) {
    std::cerr << "error: need 2*sigma >= 1\n";
    return 3;
  }
  if (cfg.n < 8) {
    std::cerr << "error: --grid must be >= 8\n";
    return 3;
  }
  if (cfg.kmax < 1) {
    std::cerr << "error: --kmax must be >= 1\n";
    return 3;
  }
  if (cfg.time_steps < 2) {
    std::cerr << "error: --time-steps must be >= 2\n";
    return 3;
  }
  return 0;
}

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::DegenerateEndpoints:
    case ErrorCode::DegeneratePath:
    case ErrorCode::AntipodalPair:
    case ErrorCode::LiftJump:
    case ErrorCode::InvalidLift:
    case ErrorCode::NoConvergence:
      return 4;
    default:
      return 3;
  }
}

LiftMode lift_mode(const Config& cfg) {
  return cfg.lift == "smooth" ? LiftMode::smooth : LiftMode::measurable;
}

MatchResult run_curve_distance(const Config& cfg, const Curve& m0,
                               const Curve& m1) {
  if (cfg.offset) {
    if (!m0.closed || !m1.closed)
      fail(ErrorCode::NotClosed, "--offset requires closed inputs");
    ClosedOptions co;
    co.kmax = cfg.kmax;
    return distance_closed(m0, m1, cfg.sigma, cfg.n, co);
  }
  MatchOptions mo;
  mo.kmax = cfg.kmax;
  if (cfg.rotation)
    return distance_rotation_invariant(m0, m1, cfg.sigma, cfg.n, mo);
  return distance_open(m0, m1, cfg.sigma, cfg.n, mo);
}

// Applies the optimal offset/rotation of `mr` to a0 so downstream exports
// show the aligned pair.
TangentFunction align_a0(const TangentFunction& a0, const MatchResult& mr,
                         int n) {
  TangentFunction out = a0;
  if (mr.offset)
    out = shift_samples(out, static_cast<int>(std::lround(*mr.offset * n)));
  if (mr.rotation_angle) out = rotate_tangents(out, *mr.rotation_angle);
  if (mr.rotation) out = apply_rotation(out, *mr.rotation);
  return out;
}

std::string frame_name(int k) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "frame_%03d.csv", k);
  return buf;
}

int cmd_dist(const Config& cfg, const std::string& file_a,
             const std::string& file_b) {
  MatchResult mr;
  if (cfg.one_dim) {
    const SampledFunction f0 = read_function_csv(file_a);
    const SampledFunction f1 = read_function_csv(file_b);
    MatchOptions mo;
    mo.kmax = cfg.kmax;
    mr = distance_1d(f0, f1, cfg.sigma, cfg.n, mo);
  } else {
    mr = run_curve_distance(cfg, read_curve_csv(file_a),
                            read_curve_csv(file_b));
  }
  std::cout << match_json(mr);
  return 0;
}

// Both curve files and (with --one-dim) scalar-function files reduce to
// tangent functions; match/geodesic work on either.
std::pair<TangentFunction, TangentFunction> load_pair(const Config& cfg,
                                                      const std::string& a,
                                                      const std::string& b) {
  if (cfg.one_dim)
    return {sign_representation(read_function_csv(a), cfg.n),
            sign_representation(read_function_csv(b), cfg.n)};
  return {resample_arclength(read_curve_csv(a), cfg.n),
          resample_arclength(read_curve_csv(b), cfg.n)};
}

int cmd_geodesic(const Config& cfg, const std::string& file_a,
                 const std::string& file_b, const std::string& out_dir) {
  MatchResult mr;
  TangentFunction a0, a1;
  if (cfg.one_dim) {
    std::tie(a0, a1) = load_pair(cfg, file_a, file_b);
    MatchOptions mo;
    mo.kmax = cfg.kmax;
    mr = match_tangents(a0, a1, cfg.sigma, mo);
  } else {
    const Curve m0 = read_curve_csv(file_a);
    const Curve m1 = read_curve_csv(file_b);
    mr = run_curve_distance(cfg, m0, m1);
    a0 = resample_arclength(m0, cfg.n);
    a1 = resample_arclength(m1, cfg.n);
    a0 = align_a0(a0, mr, cfg.n);
  }

  const GeodesicPath path = reconstruct_path(a0, a1, mr.phi, cfg.sigma,
                                             cfg.time_steps, lift_mode(cfg));
  fs::create_directories(out_dir);
  write_file(out_dir + "/path.json", path_json(path));
  write_file(out_dir + "/match.json", match_json(mr));

  std::string report;
  for (const auto& [t, s] : path.validity)
    report += std::to_string(t) + "," + std::to_string(s) + "\n";
  write_file(out_dir + "/validity.csv", report);

  const int N = path.grid_size;
  for (std::size_t t = 0; t < path.times.size(); ++t) {
    std::string csv;
    if (cfg.close_frames && path.dim == 2 && path.closed) {
      // Display-only closing: project the frame tangents and reintegrate.
      TangentFunction bt;
      bt.dim = 2;
      bt.samples.resize(static_cast<std::size_t>(N) * 2);
      for (int j = 0; j < N; ++j) {
        const double* p0 = path.curve_point(t, j);
        const double* p1 = path.curve_point(t, j + 1);
        bt.samples[2 * j] = (p1[0] - p0[0]) * N;
        bt.samples[2 * j + 1] = (p1[1] - p0[1]) * N;
      }
      const TangentFunction closed_t = closing_projection(bt);
      std::vector<double> pts(static_cast<std::size_t>(N + 1) * 2, 0.0);
      for (int j = 0; j < N; ++j) {
        pts[2 * (j + 1)] = pts[2 * j] + closed_t.sample(j)[0] / N;
        pts[2 * (j + 1) + 1] = pts[2 * j + 1] + closed_t.sample(j)[1] / N;
      }
      csv = curve_csv(pts.data(), N + 1, 2, true);
    } else {
      csv = curve_csv(path.curve_point(t, 0), N + 1, path.dim, path.closed);
    }
    write_file(out_dir + "/" + frame_name(static_cast<int>(t)), csv);
  }
  return 0;
}

int cmd_match(const Config& cfg, const std::string& file_a,
              const std::string& file_b, const std::string& out_dir) {
  MatchResult mr;
  TangentFunction a0, a1;
  if (cfg.one_dim) {
    std::tie(a0, a1) = load_pair(cfg, file_a, file_b);
    MatchOptions mo;
    mo.kmax = cfg.kmax;
    mr = match_tangents(a0, a1, cfg.sigma, mo);
  } else {
    const Curve m0 = read_curve_csv(file_a);
    const Curve m1 = read_curve_csv(file_b);
    mr = run_curve_distance(cfg, m0, m1);
    a0 = resample_arclength(m0, cfg.n);
    a1 = resample_arclength(m1, cfg.n);
    a0 = align_a0(a0, mr, cfg.n);
  }
  const CostField field = cost_field(a0, a1, cfg.sigma);
  fs::create_directories(out_dir);
  write_file(out_dir + "/field.csv", cost_field_csv(field));
  write_file(out_dir + "/match.json", match_json(mr));
  return 0;
}

int cmd_grassmann(const Config& cfg, const std::string& file_a,
                  const std::string& file_b) {
  const Curve m0 = read_curve_csv(file_a);
  const Curve m1 = read_curve_csv(file_b);
  const TangentFunction a0 = resample_arclength(m0, cfg.n);
  const TangentFunction a1 = resample_arclength(m1, cfg.n);
  const Frame2 f0 = frame_from(Diffeo::identity(), angle_lift(a0));
  const Frame2 f1 = frame_from(Diffeo::identity(), angle_lift(a1));
  GramInfo info;
  const double d = grassmann_distance(f0, f1, &info);
  std::cout << grassmann_json(d, info);
  return 0;
}

int cmd_close(const Config& cfg, const std::string& file_a,
              const std::string& out_file) {
  const Curve m0 = read_curve_csv(file_a);
  const TangentFunction a = resample_arclength(m0, cfg.n);
  const TangentFunction closed_t = closing_projection(a);
  const int n = static_cast<int>(closed_t.size());
  std::vector<double> pts(static_cast<std::size_t>(n + 1) * 2, 0.0);
  for (int j = 0; j < n; ++j) {
    pts[2 * (j + 1)] = pts[2 * j] + closed_t.sample(j)[0] / n;
    pts[2 * (j + 1) + 1] = pts[2 * j + 1] + closed_t.sample(j)[1] / n;
  }
  const std::string csv = curve_csv(pts.data(), n + 1, 2, true);
  if (out_file.empty()) {
    std::cout << csv;
  } else {
    write_file(out_file, csv);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"elastic distances and geodesics between curves"};
  app.require_subcommand(1);

  Config cfg;
  std::string file_a, file_b, out_path;

  CLI::App* dist = app.add_subcommand("dist", "distance between two inputs");
  dist->add_option("curve_a", file_a)->required();
  dist->add_option("curve_b", file_b)->required();
  add_common(dist, cfg);

  CLI::App* geo = app.add_subcommand("geodesic", "reconstruct the optimal path");
  geo->add_option("curve_a", file_a)->required();
  geo->add_option("curve_b", file_b)->required();
  geo->add_option("--out", out_path, "output directory")->required();
  add_common(geo, cfg);

  CLI::App* match = app.add_subcommand("match", "export cost field and phi");
  match->add_option("curve_a", file_a)->required();
  match->add_option("curve_b", file_b)->required();
  match->add_option("--out", out_path, "output directory")->required();
  add_common(match, cfg);

  CLI::App* grass = app.add_subcommand(
      "grassmann", "subspace distance between closed plane curves");
  grass->add_option("curve_a", file_a)->required();
  grass->add_option("curve_b", file_b)->required();
  add_common(grass, cfg);

  CLI::App* close = app.add_subcommand("close", "closing projection of a curve");
  close->add_option("curve_a", file_a)->required();
  close->add_option("--out", out_path, "output file (stdout if omitted)");
  add_common(close, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (const int rc = validate_config(cfg)) return rc;

  try {
    if (dist->parsed()) return cmd_dist(cfg, file_a, file_b);
    if (geo->parsed()) return cmd_geodesic(cfg, file_a, file_b, out_path);
    if (match->parsed()) return cmd_match(cfg, file_a, file_b, out_path);
    if (grass->parsed()) return cmd_grassmann(cfg, file_a, file_b);
    if (close->parsed()) return cmd_close(cfg, file_a, out_path);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error [" << error_name(e.code()) << "]: " << e.what() << "\n";
    return exit_code_for(e);
  }
  return 0;
}
