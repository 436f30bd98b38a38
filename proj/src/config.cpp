#include "scatter/config.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace scatter::config {
namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt(int v) { return std::to_string(v); }

double to_double(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config field " + key + ": not a number: " + v);
  }
}

int to_int(const std::string& key, const std::string& v) {
  double x = to_double(key, v);
  int i = static_cast<int>(x);
  if (i != x) throw ConfigError("config field " + key + ": not an integer");
  return i;
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  size_t b = s.find_last_not_of(" \t\r");
  return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig c;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));

    if (key == "obstacle.shape") c.obstacle_shape = val;
    else if (key == "obstacle.center_x") c.obstacle_center.x = to_double(key, val);
    else if (key == "obstacle.center_y") c.obstacle_center.y = to_double(key, val);
    else if (key == "obstacle.radius") c.obstacle_radius = to_double(key, val);
    else if (key == "obstacle.ellipse_a") c.ellipse_a = to_double(key, val);
    else if (key == "obstacle.ellipse_b") c.ellipse_b = to_double(key, val);
    else if (key == "obstacle.nodes") c.obstacle_nodes = to_int(key, val);
    else if (key == "source.center_x") c.source_center.x = to_double(key, val);
    else if (key == "source.center_y") c.source_center.y = to_double(key, val);
    else if (key == "source.radius") c.source_radius = to_double(key, val);
    else if (key == "source.nodes") c.source_nodes = to_int(key, val);
    else if (key == "problem.kind") c.problem_kind = val;
    else if (key == "problem.n") c.index_n = to_double(key, val);
    else if (key == "sweep.lambda_lo") c.lambda_lo = to_double(key, val);
    else if (key == "sweep.lambda_hi") c.lambda_hi = to_double(key, val);
    else if (key == "sweep.step") c.step = to_double(key, val);
    else if (key == "detect.tau_dip") c.tau_dip = to_double(key, val);
    else if (key == "detect.tau_jump") c.tau_jump = to_double(key, val);
    else if (key == "detect.refine_width") c.refine_width = to_double(key, val);
    else if (key == "range.delta_rel") c.delta_rel = to_double(key, val);
    else if (key == "modal.truncation") c.truncation = to_int(key, val);
    else if (key == "nearfield.route") c.route = val;
    else if (key == "run.parallelism") c.parallelism = to_int(key, val);
    else if (key == "run.cache_dir") c.cache_dir = val;
    else if (key == "synthesis.presumed_region_radius")
      c.presumed_region_radius = to_double(key, val);
    else throw ConfigError("unknown config key: " + key);
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

void RunConfig::validate() const {
  auto positive = [](const char* field, double v) {
    if (!(v > 0.0)) throw ConfigError(std::string("config field ") + field +
                                      " must be positive");
  };
  if (obstacle_shape != "disk" && obstacle_shape != "kite" &&
      obstacle_shape != "ellipse")
    throw ConfigError("config field obstacle.shape: unknown shape " +
                      obstacle_shape);
  positive("obstacle.radius", obstacle_radius);
  positive("obstacle.ellipse_a", ellipse_a);
  positive("obstacle.ellipse_b", ellipse_b);
  positive("source.radius", source_radius);
  if (obstacle_nodes < 8 || obstacle_nodes % 2)
    throw ConfigError("config field obstacle.nodes must be even and >= 8");
  if (source_nodes < 8 || source_nodes % 2)
    throw ConfigError("config field source.nodes must be even and >= 8");
  if (problem_kind != "dirichlet" && problem_kind != "neumann" &&
      problem_kind != "transmission")
    throw ConfigError("config field problem.kind: unknown kind " + problem_kind);
  if (problem_kind == "transmission" && (!(index_n > 0.0) || index_n == 1.0))
    throw ConfigError("config field problem.n must be positive and != 1");
  positive("sweep.lambda_lo", lambda_lo);
  if (!(lambda_hi > lambda_lo))
    throw ConfigError("config field sweep.lambda_hi must exceed sweep.lambda_lo");
  positive("sweep.step", step);
  positive("detect.tau_dip", tau_dip);
  positive("detect.tau_jump", tau_jump);
  positive("detect.refine_width", refine_width);
  if (!(delta_rel > 0.0) || !(delta_rel < 1.0))
    throw ConfigError("config field range.delta_rel must lie in (0,1)");
  if (truncation < 0)
    throw ConfigError("config field modal.truncation must be >= 0");
  if (route != "direct" && route != "factorized")
    throw ConfigError("config field nearfield.route: unknown route " + route);
  if (parallelism < 1)
    throw ConfigError("config field run.parallelism must be >= 1");
  positive("synthesis.presumed_region_radius", presumed_region_radius);
}

forward::ScatteringProblem RunConfig::problem() const {
  forward::ScatteringProblem p;
  if (problem_kind == "dirichlet") p.kind = forward::ProblemKind::Dirichlet;
  else if (problem_kind == "neumann") p.kind = forward::ProblemKind::Neumann;
  else p.kind = forward::ProblemKind::Transmission;
  p.n = index_n;
  return p;
}

nearfield::DiskObstacle RunConfig::disk() const {
  if (obstacle_shape != "disk")
    throw ConfigError("operation requires obstacle.shape = disk");
  return {obstacle_center, obstacle_radius};
}

geometry::DiscretizedCurve RunConfig::obstacle_curve() const {
  if (obstacle_shape == "disk")
    return geometry::make_circle(obstacle_center, obstacle_radius,
                                 obstacle_nodes);
  if (obstacle_shape == "ellipse")
    return geometry::make_ellipse(obstacle_center,
                                  geometry::Vec2{ellipse_a, ellipse_b},
                                  obstacle_nodes);
  return geometry::make_kite(obstacle_nodes);
}

geometry::DiscretizedCurve RunConfig::source_curve() const {
  return geometry::make_circle(source_center, source_radius, source_nodes);
}

std::string RunConfig::canonical_text() const {
  std::map<std::string, std::string> kv{
      {"detect.refine_width", fmt(refine_width)},
      {"detect.tau_dip", fmt(tau_dip)},
      {"detect.tau_jump", fmt(tau_jump)},
      {"modal.truncation", fmt(truncation)},
      {"nearfield.route", route},
      {"obstacle.center_x", fmt(obstacle_center.x)},
      {"obstacle.center_y", fmt(obstacle_center.y)},
      {"obstacle.ellipse_a", fmt(ellipse_a)},
      {"obstacle.ellipse_b", fmt(ellipse_b)},
      {"obstacle.nodes", fmt(obstacle_nodes)},
      {"obstacle.radius", fmt(obstacle_radius)},
      {"obstacle.shape", obstacle_shape},
      {"problem.kind", problem_kind},
      {"problem.n", fmt(index_n)},
      {"range.delta_rel", fmt(delta_rel)},
      {"source.center_x", fmt(source_center.x)},
      {"source.center_y", fmt(source_center.y)},
      {"source.nodes", fmt(source_nodes)},
      {"source.radius", fmt(source_radius)},
      {"sweep.lambda_hi", fmt(lambda_hi)},
      {"sweep.lambda_lo", fmt(lambda_lo)},
      {"sweep.step", fmt(step)},
      {"synthesis.presumed_region_radius", fmt(presumed_region_radius)},
  };
  // parallelism and cache location deliberately excluded: outputs must not
  // depend on them
  std::string out;
  for (const auto& [k, v] : kv) out += k + " = " + v + "\n";
  return out;
}

std::string RunConfig::hash() const {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : canonical_text()) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace scatter::config
