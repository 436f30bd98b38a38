#include "scatter/geometry.hpp"

#include <limits>

namespace scatter::geometry {

Vec2 ClosedCurve::point(double t) const {
  switch (kind) {
    case ShapeKind::Circle:
      return {center.x + radius * std::cos(t), center.y + radius * std::sin(t)};
    case ShapeKind::Ellipse:
      return {center.x + semi_axes.x * std::cos(t),
              center.y + semi_axes.y * std::sin(t)};
    case ShapeKind::Kite:
      return {std::cos(t) + 0.65 * std::cos(2 * t) - 0.65, 1.5 * std::sin(t)};
  }
  throw std::logic_error("unreachable");
}

Vec2 ClosedCurve::tangent(double t) const {
  switch (kind) {
    case ShapeKind::Circle:
      return {-radius * std::sin(t), radius * std::cos(t)};
    case ShapeKind::Ellipse:
      return {-semi_axes.x * std::sin(t), semi_axes.y * std::cos(t)};
    case ShapeKind::Kite:
      return {-std::sin(t) - 1.3 * std::sin(2 * t), 1.5 * std::cos(t)};
  }
  throw std::logic_error("unreachable");
}

Vec2 ClosedCurve::second_deriv(double t) const {
  switch (kind) {
    case ShapeKind::Circle:
      return {-radius * std::cos(t), -radius * std::sin(t)};
    case ShapeKind::Ellipse:
      return {-semi_axes.x * std::cos(t), -semi_axes.y * std::sin(t)};
    case ShapeKind::Kite:
      return {-std::cos(t) - 2.6 * std::cos(2 * t), -1.5 * std::sin(t)};
  }
  throw std::logic_error("unreachable");
}

DiscretizedCurve discretize(const ClosedCurve& curve, int n) {
  if (n < 8 || n % 2 != 0)
    throw std::invalid_argument("discretize: node count must be even and >= 8");
  DiscretizedCurve d;
  d.shape = curve;
  d.n = n;
  d.t.resize(n);
  d.x.resize(n);
  d.normal.resize(n);
  d.jac.resize(n);
  d.w.resize(n);
  const double h = 2.0 * M_PI / n;
  for (int i = 0; i < n; ++i) {
    const double t = h * i;
    const Vec2 dx = curve.tangent(t);
    const double j = dx.norm();
    if (j <= 0.0) throw std::invalid_argument("discretize: degenerate tangent");
    d.t[i] = t;
    d.x[i] = curve.point(t);
    d.normal[i] = {dx.y / j, -dx.x / j};
    d.jac[i] = j;
    d.w[i] = h * j;
  }
  return d;
}

DiscretizedCurve make_circle(Vec2 center, double radius, int n) {
  if (radius <= 0.0) throw std::invalid_argument("make_circle: radius <= 0");
  ClosedCurve c;
  c.kind = ShapeKind::Circle;
  c.center = center;
  c.radius = radius;
  return discretize(c, n);
}

DiscretizedCurve make_kite(int n) {
  if (n < 32) throw std::invalid_argument("make_kite: need n >= 32");
  ClosedCurve c;
  c.kind = ShapeKind::Kite;
  return discretize(c, n);
}

DiscretizedCurve make_ellipse(Vec2 center, Vec2 semi_axes, int n) {
  if (semi_axes.x <= 0.0 || semi_axes.y <= 0.0)
    throw std::invalid_argument("make_ellipse: non-positive semi-axis");
  ClosedCurve c;
  c.kind = ShapeKind::Ellipse;
  c.center = center;
  c.semi_axes = semi_axes;
  return discretize(c, n);
}

double DiscretizedCurve::circumscribing_radius(Vec2 about) const {
  double r = 0.0;
  for (const Vec2& p : x) r = std::max(r, dist(p, about));
  return r;
}

double signed_area(const DiscretizedCurve& c) {
  double a = 0.0;
  for (int i = 0; i < c.n; ++i) {
    const Vec2& p = c.x[i];
    const Vec2& q = c.x[(i + 1) % c.n];
    a += p.x * q.y - q.x * p.y;
  }
  return 0.5 * a;
}

namespace {

// Even-odd crossing test against the node polygon.
bool inside_polygon(const DiscretizedCurve& c, Vec2 p) {
  bool in = false;
  for (int i = 0; i < c.n; ++i) {
    const Vec2& a = c.x[i];
    const Vec2& b = c.x[(i + 1) % c.n];
    if ((a.y > p.y) != (b.y > p.y) &&
        p.x < a.x + (b.x - a.x) * (p.y - a.y) / (b.y - a.y))
      in = !in;
  }
  return in;
}

bool one_contains_other_node(const DiscretizedCurve& a,
                             const DiscretizedCurve& b) {
  for (const Vec2& q : b.x)
    if (inside_polygon(a, q)) return true;
  return false;
}

}  // namespace

SceneGeometry validate_scene(const DiscretizedCurve& obstacle,
                             const DiscretizedCurve& source) {
  double sep = std::numeric_limits<double>::infinity();
  for (const Vec2& p : obstacle.x)
    for (const Vec2& q : source.x) sep = std::min(sep, dist(p, q));
  if (sep <= 1e-6)
    throw OverlapError("scene: source curve touches or intersects the obstacle");
  if (one_contains_other_node(obstacle, source) ||
      one_contains_other_node(source, obstacle))
    throw OverlapError("scene: source curve overlaps or encloses the obstacle");

  SceneGeometry s;
  s.obstacle = obstacle;
  s.source = source;
  s.separation = sep;
  const Vec2 c = obstacle.shape.kind == ShapeKind::Kite ? Vec2{0.0, 0.0}
                                                        : obstacle.shape.center;
  s.obstacle_radius = obstacle.circumscribing_radius(c);
  s.scene_radius = std::max(s.obstacle_radius, source.circumscribing_radius(c));
  return s;
}

}  // namespace scatter::geometry
