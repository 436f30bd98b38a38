#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace scatter::geometry {

struct Vec2 {
  double x = 0.0, y = 0.0;
  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  double dot(Vec2 o) const { return x * o.x + y * o.y; }
  double norm() const { return std::hypot(x, y); }
};

inline double dist(Vec2 a, Vec2 b) { return (a - b).norm(); }

enum class ShapeKind { Circle, Kite, Ellipse };

// Analytic closed curve x(t), t in [0, 2pi), positively oriented
// (interior on the left); outward normal = (x2', -x1')/|x'|.
struct ClosedCurve {
  ShapeKind kind = ShapeKind::Circle;
  Vec2 center;
  double radius = 1.0;   // Circle
  Vec2 semi_axes;        // Ellipse

  Vec2 point(double t) const;
  Vec2 tangent(double t) const;       // x'(t)
  Vec2 second_deriv(double t) const;  // x''(t)
};

struct DiscretizedCurve {
  ClosedCurve shape;
  int n = 0;                    // node count, even
  std::vector<double> t;        // t_i = 2 pi i / n
  std::vector<Vec2> x;          // nodes
  std::vector<Vec2> normal;     // unit outward normals
  std::vector<double> jac;      // |x'(t_i)|
  std::vector<double> w;        // (2 pi / n) |x'(t_i)|

  double circumscribing_radius(Vec2 about) const;
};

struct OverlapError : std::runtime_error {
  explicit OverlapError(const std::string& msg) : std::runtime_error(msg) {}
};

DiscretizedCurve discretize(const ClosedCurve& curve, int n);
DiscretizedCurve make_circle(Vec2 center, double radius, int n);
DiscretizedCurve make_kite(int n);
DiscretizedCurve make_ellipse(Vec2 center, Vec2 semi_axes, int n);

struct SceneGeometry {
  DiscretizedCurve obstacle;  // boundary of the scatterer
  DiscretizedCurve source;    // closed emission/measurement curve
  double separation = 0.0;    // min pairwise node distance
  double obstacle_radius = 0.0;  // bounding radii about the obstacle center
  double scene_radius = 0.0;
};

// Accepts iff the curves are disjoint with node-pair separation > 1e-6.
SceneGeometry validate_scene(const DiscretizedCurve& obstacle,
                             const DiscretizedCurve& source);

// Signed area by the shoelace rule over the nodes; positive means
// positively oriented.
double signed_area(const DiscretizedCurve& c);

}  // namespace scatter::geometry
