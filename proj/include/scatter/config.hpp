#pragma once

#include <string>

#include "scatter/nearfield.hpp"

namespace scatter::config {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Flat key = value run configuration; '#' starts a comment, dotted keys
// group sections. Unknown keys are rejected.
struct RunConfig {
  // geometry
  std::string obstacle_shape = "disk";  // disk | kite | ellipse
  geometry::Vec2 obstacle_center{0.0, 0.0};
  double obstacle_radius = 1.0;   // disk
  double ellipse_a = 1.0, ellipse_b = 0.5;
  int obstacle_nodes = 128;
  geometry::Vec2 source_center{2.0, 0.0};
  double source_radius = 0.3;
  int source_nodes = 64;

  // problem
  std::string problem_kind = "dirichlet";  // dirichlet | neumann | transmission
  double index_n = 4.0;

  // sweep / detection
  double lambda_lo = 2.0, lambda_hi = 16.0, step = 0.02;
  double tau_dip = 0.2, tau_jump = 1.0, refine_width = 1e-4;
  double delta_rel = 1e-6;
  int truncation = 0;  // 0 = automatic

  // run
  std::string route = "direct";  // direct | factorized
  int parallelism = 1;
  std::string cache_dir;  // empty = no cache
  double presumed_region_radius = 4.0;

  void validate() const;  // throws ConfigError naming the offending field
  forward::ScatteringProblem problem() const;
  nearfield::DiskObstacle disk() const;  // requires obstacle_shape == disk
  geometry::DiscretizedCurve obstacle_curve() const;
  geometry::DiscretizedCurve source_curve() const;

  std::string canonical_text() const;  // sorted key = value lines
  std::string hash() const;            // FNV-1a 64 of the canonical text, hex
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

}  // namespace scatter::config
