#include "shapebench/scene.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <set>

namespace shapebench {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTau = 2.0 * std::numbers::pi;
constexpr double kMinSpan = 0.10;
constexpr double kMaxSpan = 0.45;
constexpr double kMinInteriorAngle = 15.0 * kPi / 180.0;
constexpr int kPlacementAttempts = 1000;
constexpr int kSceneAttempts = 100;
constexpr double kRelationTol = 1e-6;

}  // namespace

const char* to_string(Split split) { return split == Split::Easy ? "easy" : "hard"; }

GenConfig GenConfig::defaults(Split split, std::uint64_t seed) {
  GenConfig cfg;
  cfg.shape_pool.assign(all_shape_kinds().begin(), all_shape_kinds().end());
  cfg.relation_pool.assign(all_relation_kinds().begin(), all_relation_kinds().end());
  cfg.target_split = split;
  cfg.max_shapes = split == Split::Easy ? 4 : 8;
  cfg.seed = seed;
  return cfg;
}

const Shape& SceneDescription::shape_by_id(int id) const {
  for (const Shape& s : shapes) {
    if (s.id == id) return s;
  }
  throw std::out_of_range("no shape with id " + std::to_string(id));
}

ShapeKind sample_shape(std::span<const ShapeKind> pool, Rng& rng) {
  if (pool.empty()) throw EmptyPool("shape pool is empty");
  return pool[rng.index(pool.size())];
}

// --- attribute randomization -------------------------------------------------

namespace {

struct Proto {
  Shape shape;  // built around the origin, unscaled
};

double max_span(const Shape& s) {
  const Spans sp = spans(s);
  return std::max(sp.horizontal, sp.vertical);
}

void scale_and_translate(Shape& s, double scale, Vec2 t) {
  auto xf = [&](Point2 p) { return Point2{p.x * scale + t.x, p.y * scale + t.y}; };
  switch (s.kind) {
    case ShapeKind::Line: {
      auto& l = std::get<LineGeom>(s.geom);
      l.p0 = xf(l.p0);
      l.p1 = xf(l.p1);
      break;
    }
    case ShapeKind::Circle: {
      auto& c = std::get<CircleGeom>(s.geom);
      c.center = xf(c.center);
      c.radius *= scale;
      break;
    }
    case ShapeKind::Ellipse: {
      auto& e = std::get<EllipseGeom>(s.geom);
      e.center = xf(e.center);
      e.semi_major *= scale;
      e.semi_minor *= scale;
      break;
    }
    case ShapeKind::Triangle:
    case ShapeKind::Quadrilateral:
    case ShapeKind::Pentagon:
    case ShapeKind::Hexagon: {
      for (Point2& v : std::get<PolygonGeom>(s.geom).vertices) v = xf(v);
      break;
    }
    case ShapeKind::Rectangle:
    case ShapeKind::Square: {
      auto& r = std::get<RectGeom>(s.geom);
      r.center = xf(r.center);
      r.width *= scale;
      r.height *= scale;
      break;
    }
    case ShapeKind::Spiral: {
      auto& sp = std::get<SpiralGeom>(s.geom);
      sp.center = xf(sp.center);
      sp.start_radius *= scale;
      sp.growth_per_radian *= scale;
      break;
    }
  }
}

double min_interior_angle(std::span<const Point2> v) {
  double best = kTau;
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 to_prev = normalized(v[(i + n - 1) % n] - v[i]);
    const Vec2 to_next = normalized(v[(i + 1) % n] - v[i]);
    best = std::min(best, std::acos(std::clamp(dot(to_prev, to_next), -1.0, 1.0)));
  }
  return best;
}

PolygonGeom regular_polygon(Point2 center, double circumradius, int n, double rotation) {
  PolygonGeom poly;
  poly.vertices.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    poly.vertices.push_back(center + unit_vector(rotation + kTau * i / n) * circumradius);
  }
  return poly;
}

/// Convex CCW polygon from sorted angular samples on an ellipse. Throws
/// GenerationExhausted when every draw is near-degenerate.
PolygonGeom sampled_convex_polygon(int n, double rotation, Rng& rng) {
  for (int attempt = 0; attempt < kPlacementAttempts; ++attempt) {
    const double b = rng.uniform(0.5, 0.9);  // semi-minor of the sampling ellipse
    std::vector<double> angles(static_cast<std::size_t>(n));
    for (double& a : angles) a = rng.uniform(0.0, kTau);
    std::sort(angles.begin(), angles.end());
    PolygonGeom poly;
    poly.vertices.reserve(angles.size());
    for (double a : angles) {
      poly.vertices.push_back(rotated({std::cos(a), b * std::sin(a)}, rotation));
    }
    bool degenerate = false;
    for (std::size_t i = 0; i < angles.size() && !degenerate; ++i) {
      const double gap = (i + 1 < angles.size() ? angles[i + 1] : angles[0] + kTau) - angles[i];
      degenerate = gap < 0.05 || gap > kTau - 0.05;
    }
    if (degenerate) continue;
    if (min_interior_angle(poly.vertices) < kMinInteriorAngle) continue;
    return poly;
  }
  throw GenerationExhausted("could not sample a non-degenerate polygon");
}

Proto build_prototype(ShapeKind kind, double rotation, Rng& rng) {
  Proto proto;
  proto.shape.kind = kind;
  proto.shape.rotation = rotation;
  switch (kind) {
    case ShapeKind::Line: {
      const Vec2 d = unit_vector(rotation);
      proto.shape.geom = LineGeom{d * -0.5, d * 0.5};
      break;
    }
    case ShapeKind::Circle:
      proto.shape.geom = CircleGeom{{0.0, 0.0}, 0.5};
      break;
    case ShapeKind::Ellipse: {
      const double ratio = rng.uniform(0.4, 0.8);
      proto.shape.geom = EllipseGeom{{0.0, 0.0}, 0.5, 0.5 * ratio};
      break;
    }
    case ShapeKind::Triangle:
      proto.shape.geom = sampled_convex_polygon(3, rotation, rng);
      break;
    case ShapeKind::Quadrilateral:
      proto.shape.geom = sampled_convex_polygon(4, rotation, rng);
      break;
    case ShapeKind::Pentagon:
      proto.shape.geom = regular_polygon({0.0, 0.0}, 0.5, 5, rotation);
      break;
    case ShapeKind::Hexagon:
      proto.shape.geom = regular_polygon({0.0, 0.0}, 0.5, 6, rotation);
      break;
    case ShapeKind::Rectangle: {
      const double ratio = rng.uniform(0.45, 0.8);
      proto.shape.geom = RectGeom{{0.0, 0.0}, 1.0, ratio};
      break;
    }
    case ShapeKind::Square:
      proto.shape.geom = RectGeom{{0.0, 0.0}, 1.0, 1.0};
      break;
    case ShapeKind::Spiral: {
      const double turns = rng.uniform(1.5, 3.5);
      const double start = 0.02;
      const double growth = (0.5 - start) / (kTau * turns);
      proto.shape.geom = SpiralGeom{{0.0, 0.0}, start, growth, turns};
      break;
    }
  }
  return proto;
}

}  // namespace

Shape randomize_attributes(ShapeKind kind, Rng& rng) {
  const double rotation = rng.uniform(0.0, kTau);
  const double target = rng.uniform(kMinSpan, kMaxSpan);
  Proto proto = build_prototype(kind, rotation, rng);

  const double current = max_span(proto.shape);
  scale_and_translate(proto.shape, target / current, {0.0, 0.0});

  const BBox box = bounding_box(proto.shape);
  const double tx = rng.uniform(kCanvasMargin - box.x_min, 1.0 - kCanvasMargin - box.x_max);
  const double ty = rng.uniform(kCanvasMargin - box.y_min, 1.0 - kCanvasMargin - box.y_max);
  scale_and_translate(proto.shape, 1.0, {tx, ty});
  return proto.shape;
}

// --- relationship sampling ---------------------------------------------------

std::vector<RelationKind> compatible_relations(ShapeKind kind) {
  std::vector<RelationKind> out;
  switch (kind) {
    case ShapeKind::Line:
      out = {RelationKind::Tangent,      RelationKind::Parallel,
             RelationKind::Perpendicular, RelationKind::Intersecting,
             RelationKind::Contains,      RelationKind::SharedVertex};
      break;
    case ShapeKind::Circle:
      out = {RelationKind::Tangent,    RelationKind::Inscribed,
             RelationKind::Circumscribed, RelationKind::Concentric,
             RelationKind::Intersecting,  RelationKind::Contains};
      break;
    case ShapeKind::Ellipse:
      out = {RelationKind::Concentric, RelationKind::Intersecting, RelationKind::Contains};
      break;
    case ShapeKind::Triangle:
      out = {RelationKind::Tangent,      RelationKind::Inscribed,
             RelationKind::Circumscribed, RelationKind::Intersecting,
             RelationKind::Contains,      RelationKind::SharedVertex};
      break;
    case ShapeKind::Quadrilateral:
      out = {RelationKind::Tangent, RelationKind::Intersecting, RelationKind::Contains,
             RelationKind::SharedVertex};
      break;
    case ShapeKind::Pentagon:
    case ShapeKind::Hexagon:
      out = {RelationKind::Tangent,      RelationKind::Inscribed,
             RelationKind::Circumscribed, RelationKind::Concentric,
             RelationKind::Intersecting,  RelationKind::Contains,
             RelationKind::SharedVertex};
      break;
    case ShapeKind::Rectangle:
      out = {RelationKind::Tangent,       RelationKind::Parallel,
             RelationKind::Perpendicular, RelationKind::Inscribed,
             RelationKind::Circumscribed, RelationKind::Concentric,
             RelationKind::Intersecting,  RelationKind::Contains,
             RelationKind::SharedVertex};
      break;
    case ShapeKind::Square:
      out = {RelationKind::Tangent,       RelationKind::Inscribed,
             RelationKind::Circumscribed, RelationKind::Concentric,
             RelationKind::Intersecting,  RelationKind::Contains,
             RelationKind::SharedVertex};
      break;
    case ShapeKind::Spiral:
      out = {RelationKind::Concentric, RelationKind::Contains};
      break;
  }
  return out;
}

RelationKind sample_relationship(std::span<const RelationKind> pool, const Shape& s1,
                                 Rng& rng) {
  const auto row = compatible_relations(s1.kind);
  std::vector<RelationKind> usable;
  for (RelationKind k : row) {
    if (std::find(pool.begin(), pool.end(), k) != pool.end()) usable.push_back(k);
  }
  if (usable.empty()) {
    throw NoCompatibleRelation(std::string("no relation in pool is compatible with ") +
                               to_string(s1.kind));
  }
  return usable[rng.index(usable.size())];
}

// --- companion constructions -------------------------------------------------

namespace {

bool fits_canvas(const Shape& s) {
  const BBox b = bounding_box(s);
  return b.x_min >= kCanvasMargin && b.x_max <= 1.0 - kCanvasMargin &&
         b.y_min >= kCanvasMargin && b.y_max <= 1.0 - kCanvasMargin;
}

Shape make_circle(Point2 center, double radius) {
  Shape s;
  s.kind = ShapeKind::Circle;
  s.geom = CircleGeom{center, radius};
  return s;
}

Shape make_line(Point2 a, Point2 b, double rotation) {
  Shape s;
  s.kind = ShapeKind::Line;
  s.rotation = rotation;
  s.geom = LineGeom{a, b};
  return s;
}

Shape make_rect(ShapeKind kind, Point2 center, double w, double h, double rotation) {
  Shape s;
  s.kind = kind;
  s.rotation = rotation;
  s.geom = RectGeom{center, w, h};
  return s;
}

Shape make_regular(ShapeKind kind, Point2 center, double circumradius, double rotation) {
  Shape s;
  s.kind = kind;
  s.rotation = rotation;
  const int n = kind == ShapeKind::Triangle   ? 3
                : kind == ShapeKind::Pentagon ? 5
                                              : 6;
  s.geom = regular_polygon(center, circumradius, n, rotation);
  return s;
}

double polygon_circumradius(const Shape& s) {
  const Point2 c = shape_center(s);
  double best = 0.0;
  for (const Point2& v : shape_vertices(s)) best = std::max(best, distance(v, c));
  return best;
}

double polygon_apothem(const Shape& s) {
  const Point2 c = shape_center(s);
  const auto verts = shape_vertices(s);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < verts.size(); ++i) {
    best = std::min(best, distance_to_segment(c, verts[i], verts[(i + 1) % verts.size()]));
  }
  return best;
}

std::optional<Shape> incircle_of(const Shape& s1) {
  switch (s1.kind) {
    case ShapeKind::Square:
    case ShapeKind::Rectangle: {
      const auto& r = s1.rect();
      return make_circle(r.center, std::min(r.width, r.height) / 2.0);
    }
    case ShapeKind::Triangle: {
      const auto& v = s1.polygon().vertices;
      const double a = distance(v[1], v[2]);
      const double b = distance(v[0], v[2]);
      const double c = distance(v[0], v[1]);
      const double p = a + b + c;
      const Point2 incenter{(a * v[0].x + b * v[1].x + c * v[2].x) / p,
                            (a * v[0].y + b * v[1].y + c * v[2].y) / p};
      const double radius = 2.0 * area(s1) / p;
      return make_circle(incenter, radius);
    }
    case ShapeKind::Pentagon:
    case ShapeKind::Hexagon:
      return make_circle(shape_center(s1), polygon_apothem(s1));
    default:
      return std::nullopt;
  }
}

std::optional<Shape> circumcircle_of(const Shape& s1) {
  switch (s1.kind) {
    case ShapeKind::Square:
    case ShapeKind::Rectangle: {
      const auto& r = s1.rect();
      return make_circle(r.center, std::hypot(r.width, r.height) / 2.0);
    }
    case ShapeKind::Triangle: {
      const auto& v = s1.polygon().vertices;
      const double d = 2.0 * (v[0].x * (v[1].y - v[2].y) + v[1].x * (v[2].y - v[0].y) +
                              v[2].x * (v[0].y - v[1].y));
      if (std::abs(d) < 1e-12) return std::nullopt;
      const double s0 = v[0].x * v[0].x + v[0].y * v[0].y;
      const double s1q = v[1].x * v[1].x + v[1].y * v[1].y;
      const double s2 = v[2].x * v[2].x + v[2].y * v[2].y;
      const Point2 cc{(s0 * (v[1].y - v[2].y) + s1q * (v[2].y - v[0].y) +
                       s2 * (v[0].y - v[1].y)) /
                          d,
                      (s0 * (v[2].x - v[1].x) + s1q * (v[0].x - v[2].x) +
                       s2 * (v[1].x - v[0].x)) /
                          d};
      return make_circle(cc, distance(cc, v[0]));
    }
    case ShapeKind::Pentagon:
    case ShapeKind::Hexagon:
      return make_circle(shape_center(s1), polygon_circumradius(s1));
    default:
      return std::nullopt;
  }
}

/// Companion whose max span equals `span`, centered at `center`.
Shape sized_companion(ShapeKind kind, Point2 center, double span, double rotation,
                      Rng& rng) {
  Proto proto = build_prototype(kind, rotation, rng);
  scale_and_translate(proto.shape, span / max_span(proto.shape), {0.0, 0.0});
  const Point2 off = center - shape_center(proto.shape);
  scale_and_translate(proto.shape, 1.0, off);
  return proto.shape;
}

Shape construct_tangent(const Shape& s1, Rng& rng) {
  if (s1.kind == ShapeKind::Circle) {
    const auto& c = s1.circle();
    if (rng.bernoulli(0.5)) {
      const double r2 = rng.uniform(0.05, 0.18);
      const Vec2 dir = unit_vector(rng.uniform(0.0, kTau));
      return make_circle(c.center + dir * (c.radius + r2), r2);
    }
    const double phi = rng.uniform(0.0, kTau);
    const Point2 touch = c.center + unit_vector(phi) * c.radius;
    const Vec2 along = unit_vector(phi + kPi / 2.0);
    const double half = rng.uniform(0.06, 0.2);
    return make_line(touch - along * half, touch + along * half,
                     std::fmod(phi + kPi / 2.0, kTau));
  }
  if (s1.kind == ShapeKind::Line) {
    const auto& l = s1.line();
    const double t = rng.uniform(0.15, 0.85);
    const Point2 q = l.p0 + (l.p1 - l.p0) * t;
    const Vec2 d = normalized(l.p1 - l.p0);
    const Vec2 n{-d.y, d.x};
    const double side = rng.bernoulli(0.5) ? 1.0 : -1.0;
    const double r2 = rng.uniform(0.04, 0.15);
    return make_circle(q + n * (side * r2), r2);
  }
  // Polygon or rect: circle resting on a random edge, outside the shape.
  const auto verts = shape_vertices(s1);
  const std::size_t e = rng.index(verts.size());
  const Point2 a = verts[e];
  const Point2 b = verts[(e + 1) % verts.size()];
  const double t = rng.uniform(0.3, 0.7);
  const Point2 q = a + (b - a) * t;
  const Vec2 d = normalized(b - a);
  const Vec2 outward{d.y, -d.x};  // CCW boundary: interior is to the left
  const double r2 = rng.uniform(0.04, 0.14);
  return make_circle(q + outward * r2, r2);
}

Shape construct_direction_companion(RelationKind kind, const Shape& s1, Rng& rng) {
  const Vec2 base = *principal_direction(s1);
  const Vec2 dir = kind == RelationKind::Parallel ? base : Vec2{-base.y, base.x};
  const Vec2 n{-dir.y, dir.x};
  Point2 anchor;
  double ref_len = 0.0;
  if (s1.kind == ShapeKind::Line) {
    const auto& l = s1.line();
    anchor = Point2{(l.p0.x + l.p1.x) / 2.0, (l.p0.y + l.p1.y) / 2.0};
    ref_len = distance(l.p0, l.p1);
  } else {
    anchor = s1.rect().center;
    ref_len = std::max(s1.rect().width, s1.rect().height);
    const double clear = support_extent(s1, n);
    anchor = anchor + n * ((clear + 0.02) * (rng.bernoulli(0.5) ? 1.0 : -1.0));
  }
  const double offset = rng.uniform(0.05, 0.3) * (rng.bernoulli(0.5) ? 1.0 : -1.0);
  const double shift = rng.uniform(-0.3, 0.3) * ref_len;
  const double half = rng.uniform(0.5, 1.4) * std::max(ref_len, 0.12) / 2.0;
  const Point2 mid = anchor + n * offset + dir * shift;
  return make_line(mid - dir * half, mid + dir * half,
                   std::fmod(std::atan2(dir.y, dir.x) + kTau, kTau));
}

/// Companion inscribed in s1 (companion becomes the relation subject).
Shape construct_inscribed(const Shape& s1, Rng& rng) {
  if (s1.kind == ShapeKind::Circle) {
    // Polygon with its vertices on the circle.
    const auto& c = s1.circle();
    const double rot = rng.uniform(0.0, kTau);
    switch (rng.below(4)) {
      case 0:
        return make_regular(ShapeKind::Triangle, c.center, c.radius, rot);
      case 1: {
        const double phi = rng.uniform(0.35, 0.55);
        const double w = 2.0 * c.radius * std::cos(phi);
        const double h = 2.0 * c.radius * std::sin(phi);
        return make_rect(ShapeKind::Rectangle, c.center, std::max(w, h), std::min(w, h),
                         rot);
      }
      case 2:
        return make_regular(ShapeKind::Pentagon, c.center, c.radius, rot);
      default:
        return make_regular(ShapeKind::Hexagon, c.center, c.radius, rot);
    }
  }
  if (auto circle = incircle_of(s1)) return *circle;
  throw IncompatibleKinds(std::string("inscribed companion undefined for ") +
                          to_string(s1.kind));
}

/// Companion circumscribed about s1 (companion becomes the relation subject).
Shape construct_circumscribed(const Shape& s1, Rng& rng) {
  if (s1.kind == ShapeKind::Circle) {
    // Polygon whose incircle is s1.
    const auto& c = s1.circle();
    const double rot = rng.uniform(0.0, kTau);
    switch (rng.below(4)) {
      case 0:
        return make_regular(ShapeKind::Triangle, c.center, c.radius / std::cos(kPi / 3.0),
                            rot);
      case 1:
        return make_rect(ShapeKind::Square, c.center, 2.0 * c.radius, 2.0 * c.radius, rot);
      case 2:
        return make_regular(ShapeKind::Pentagon, c.center, c.radius / std::cos(kPi / 5.0),
                            rot);
      default:
        return make_regular(ShapeKind::Hexagon, c.center, c.radius / std::cos(kPi / 6.0),
                            rot);
    }
  }
  if (auto circle = circumcircle_of(s1)) return *circle;
  throw IncompatibleKinds(std::string("circumscribed companion undefined for ") +
                          to_string(s1.kind));
}

Shape construct_concentric(const Shape& s1, Rng& rng) {
  static constexpr std::array<ShapeKind, 7> kKinds = {
      ShapeKind::Circle, ShapeKind::Ellipse,  ShapeKind::Rectangle, ShapeKind::Square,
      ShapeKind::Pentagon, ShapeKind::Hexagon, ShapeKind::Spiral,
  };
  const ShapeKind kind = kKinds[rng.index(kKinds.size())];
  const double factor =
      rng.bernoulli(0.5) ? rng.uniform(0.4, 0.8) : rng.uniform(1.25, 2.5);
  const double span = std::clamp(max_span(s1) * factor, 0.04, 0.9);
  Shape out = sized_companion(kind, {0.5, 0.5}, span, rng.uniform(0.0, kTau), rng);
  const Point2 off = shape_center(s1) - shape_center(out);
  scale_and_translate(out, 1.0, off);
  // Regular polygons: re-anchor exactly so centers coincide bit-for-bit.
  if (kind == ShapeKind::Circle) std::get<CircleGeom>(out.geom).center = shape_center(s1);
  if (kind == ShapeKind::Ellipse) std::get<EllipseGeom>(out.geom).center = shape_center(s1);
  if (kind == ShapeKind::Rectangle || kind == ShapeKind::Square) {
    std::get<RectGeom>(out.geom).center = shape_center(s1);
  }
  if (kind == ShapeKind::Spiral) std::get<SpiralGeom>(out.geom).center = shape_center(s1);
  return out;
}

Shape construct_intersecting(const Shape& s1, Rng& rng) {
  static constexpr std::array<ShapeKind, 8> kClosed = {
      ShapeKind::Circle,  ShapeKind::Ellipse,   ShapeKind::Triangle,
      ShapeKind::Quadrilateral, ShapeKind::Pentagon, ShapeKind::Hexagon,
      ShapeKind::Rectangle,     ShapeKind::Square,
  };
  ShapeKind kind;
  if (s1.kind == ShapeKind::Line) {
    kind = kClosed[rng.index(kClosed.size())];
  } else {
    const std::size_t pick = rng.index(kClosed.size() + 1);
    kind = pick == kClosed.size() ? ShapeKind::Line : kClosed[pick];
  }
  const Point2 c1 = s1.kind == ShapeKind::Line
                        ? centroid(s1)
                        : shape_center(s1);
  const double span = rng.uniform(kMinSpan, 0.35);
  Shape out = sized_companion(kind, {0.5, 0.5}, span, rng.uniform(0.0, kTau), rng);
  const Vec2 dir = unit_vector(rng.uniform(0.0, kTau));
  const double e1 = is_closed(s1.kind) ? support_extent(s1, dir) : max_span(s1) / 2.0;
  const double e2 = is_closed(kind) ? support_extent(out, dir * -1.0) : span / 2.0;
  const double d = (e1 + e2) * rng.uniform(0.80, 0.95);
  const Point2 target = c1 + dir * d;
  scale_and_translate(out, 1.0, target - shape_center(out));
  return out;
}

Shape construct_contains_companion(const Shape& s1, Rng& rng) {
  // Enclosing container: s1 spans at most ~60% of the container inradius.
  static constexpr std::array<ShapeKind, 6> kKinds = {
      ShapeKind::Circle, ShapeKind::Ellipse,  ShapeKind::Square,
      ShapeKind::Rectangle, ShapeKind::Pentagon, ShapeKind::Hexagon,
  };
  const Point2 c1 = centroid(s1);
  const BBox b = bounding_box(s1);
  double outradius = 0.0;
  for (const Point2 corner : {Point2{b.x_min, b.y_min}, Point2{b.x_max, b.y_min},
                              Point2{b.x_min, b.y_max}, Point2{b.x_max, b.y_max}}) {
    outradius = std::max(outradius, distance(corner, c1));
  }
  const ShapeKind kind = kKinds[rng.index(kKinds.size())];
  const double ratio = rng.uniform(0.35, 0.6);
  const double inradius = outradius / ratio;
  const double rot = rng.uniform(0.0, kTau);
  const Point2 center{c1.x + rng.uniform(-0.015, 0.015), c1.y + rng.uniform(-0.015, 0.015)};
  switch (kind) {
    case ShapeKind::Circle:
      return make_circle(center, inradius);
    case ShapeKind::Ellipse: {
      Shape s;
      s.kind = ShapeKind::Ellipse;
      s.rotation = rot;
      s.geom = EllipseGeom{center, inradius * rng.uniform(1.2, 1.6), inradius};
      return s;
    }
    case ShapeKind::Square:
      return make_rect(ShapeKind::Square, center, 2.0 * inradius, 2.0 * inradius, rot);
    case ShapeKind::Rectangle:
      return make_rect(ShapeKind::Rectangle, center, 2.0 * inradius * rng.uniform(1.25, 1.8),
                       2.0 * inradius, rot);
    case ShapeKind::Pentagon:
      return make_regular(ShapeKind::Pentagon, center, inradius / std::cos(kPi / 5.0), rot);
    default:
      return make_regular(ShapeKind::Hexagon, center, inradius / std::cos(kPi / 6.0), rot);
  }
}

Shape construct_shared_vertex(const Shape& s1, Rng& rng) {
  static constexpr std::array<ShapeKind, 6> kPoly = {
      ShapeKind::Triangle, ShapeKind::Quadrilateral, ShapeKind::Pentagon,
      ShapeKind::Hexagon,  ShapeKind::Rectangle,     ShapeKind::Square,
  };
  ShapeKind kind;
  if (s1.kind == ShapeKind::Line) {
    kind = kPoly[rng.index(kPoly.size())];
  } else {
    const std::size_t pick = rng.index(kPoly.size() + 1);
    kind = pick == kPoly.size() ? ShapeKind::Line : kPoly[pick];
  }
  Shape out = sized_companion(kind, {0.5, 0.5}, rng.uniform(kMinSpan, 0.3),
                              rng.uniform(0.0, kTau), rng);
  const auto v1 = shape_vertices(s1);
  const auto v2 = shape_vertices(out);
  const Point2 target = v1[rng.index(v1.size())];
  const Point2 source = v2[rng.index(v2.size())];
  scale_and_translate(out, 1.0, target - source);
  return out;
}

Shape construct_companion(RelationKind kind, const Shape& s1, Rng& rng) {
  switch (kind) {
    case RelationKind::Tangent:
      return construct_tangent(s1, rng);
    case RelationKind::Parallel:
    case RelationKind::Perpendicular:
      return construct_direction_companion(kind, s1, rng);
    case RelationKind::Inscribed:
      return construct_inscribed(s1, rng);
    case RelationKind::Circumscribed:
      return construct_circumscribed(s1, rng);
    case RelationKind::Concentric:
      return construct_concentric(s1, rng);
    case RelationKind::Intersecting:
      return construct_intersecting(s1, rng);
    case RelationKind::Contains:
      return construct_contains_companion(s1, rng);
    case RelationKind::SharedVertex:
      return construct_shared_vertex(s1, rng);
  }
  throw IncompatibleKinds("unknown relation kind");
}

bool companion_satisfies(RelationKind kind, const Shape& s1, const Shape& s2) {
  switch (kind) {
    case RelationKind::Inscribed:
      return relation_holds(s2, s1, RelationKind::Inscribed, kRelationTol);
    case RelationKind::Circumscribed:
      return relation_holds(s2, s1, RelationKind::Circumscribed, kRelationTol);
    default:
      return relation_holds(s1, s2, kind, kRelationTol);
  }
}

}  // namespace

Relation make_relation(RelationKind kind, int s1_id, int companion_id) {
  if (kind == RelationKind::Inscribed || kind == RelationKind::Circumscribed) {
    return Relation{companion_id, s1_id, kind};
  }
  return Relation{s1_id, companion_id, kind};
}

bool overlap_exempt(RelationKind kind) {
  switch (kind) {
    case RelationKind::Inscribed:
    case RelationKind::Circumscribed:
    case RelationKind::Concentric:
    case RelationKind::Contains:
      return true;
    default:
      return false;
  }
}

Shape generate_related_shape(RelationKind kind, const Shape& s1, Rng& rng) {
  const auto row = compatible_relations(s1.kind);
  if (std::find(row.begin(), row.end(), kind) == row.end()) {
    throw IncompatibleKinds(std::string(to_string(kind)) + " cannot seed from " +
                            to_string(s1.kind));
  }
  for (int attempt = 0; attempt < kPlacementAttempts; ++attempt) {
    Shape candidate;
    try {
      candidate = construct_companion(kind, s1, rng);
    } catch (const GenerationExhausted&) {
      continue;
    }
    if (max_span(candidate) < 0.02) continue;
    if (!fits_canvas(candidate)) continue;
    if (!companion_satisfies(kind, s1, candidate)) continue;
    return candidate;
  }
  throw GenerationExhausted(std::string("no valid companion for ") + to_string(kind));
}

// --- full synthesis ----------------------------------------------------------

namespace {

struct BuildResult {
  std::vector<Shape> shapes;
  std::vector<Relation> relations;
};

BuildResult build_once(const GenConfig& cfg, Rng& rng) {
  BuildResult out;
  std::vector<OccupancyGrid> grids;

  auto worst_overlap = [&](const OccupancyGrid& g, int skip_id) {
    double worst = 0.0;
    for (std::size_t i = 0; i < grids.size(); ++i) {
      if (out.shapes[i].id == skip_id) continue;
      worst = std::max(worst, overlap_ratio(g, grids[i]));
    }
    return worst;
  };

  const int free_count = cfg.max_shapes / 2;
  for (int j = 0; j < free_count; ++j) {
    const ShapeKind kind = sample_shape(cfg.shape_pool, rng);
    Shape s1;
    try {
      s1 = randomize_attributes(kind, rng);
    } catch (const GenerationExhausted&) {
      continue;
    }
    OccupancyGrid g = occupancy_grid(s1);
    if (worst_overlap(g, -1) < cfg.overlap_thres) {
      s1.id = static_cast<int>(out.shapes.size());
      out.shapes.push_back(std::move(s1));
      grids.push_back(std::move(g));
    }
  }

  const std::size_t seed_count = out.shapes.size();
  for (std::size_t idx = 0; idx < seed_count; ++idx) {
    const Shape s1 = out.shapes[idx];
    RelationKind rel;
    try {
      rel = sample_relationship(cfg.relation_pool, s1, rng);
    } catch (const NoCompatibleRelation&) {
      continue;
    }
    Shape s2;
    try {
      s2 = generate_related_shape(rel, s1, rng);
    } catch (const GenerationExhausted&) {
      continue;
    }
    OccupancyGrid g = occupancy_grid(s2);
    const int skip = overlap_exempt(rel) ? s1.id : -1;
    if (worst_overlap(g, skip) < cfg.overlap_thres) {
      s2.id = static_cast<int>(out.shapes.size());
      out.relations.push_back(make_relation(rel, s1.id, s2.id));
      out.shapes.push_back(std::move(s2));
      grids.push_back(std::move(g));
    }
  }
  return out;
}

bool in_split_band(Split split, int count, int max_shapes) {
  if (split == Split::Easy) return count >= 1 && count <= 4;
  return count >= 5 && count <= max_shapes;
}

}  // namespace

SceneDescription synthesize_description(const GenConfig& cfg) {
  if (cfg.max_shapes < 1 || cfg.shape_pool.empty() || cfg.relation_pool.empty() ||
      cfg.overlap_thres <= 0.0 || cfg.overlap_thres > 1.0) {
    throw std::invalid_argument("invalid generation config");
  }
  for (int attempt = 0; attempt < kSceneAttempts; ++attempt) {
    Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(attempt),
                        SeedSalt::SceneAttempt));
    BuildResult result = build_once(cfg, rng);
    if (!in_split_band(cfg.target_split, static_cast<int>(result.shapes.size()),
                       cfg.max_shapes)) {
      continue;
    }
    SceneDescription desc;
    desc.shapes = std::move(result.shapes);
    desc.relations = std::move(result.relations);
    desc.seed = cfg.seed;
    desc.config_echo = cfg;
    return desc;
  }
  throw GenerationExhausted("no conforming scene after 100 regenerations");
}

std::vector<std::pair<int, int>> non_exempt_pairs(const SceneDescription& desc) {
  std::set<std::pair<int, int>> exempt;
  for (const Relation& r : desc.relations) {
    if (overlap_exempt(r.kind)) {
      exempt.insert({std::min(r.subject_id, r.object_id),
                     std::max(r.subject_id, r.object_id)});
    }
  }
  std::vector<std::pair<int, int>> out;
  for (std::size_t i = 0; i < desc.shapes.size(); ++i) {
    for (std::size_t j = i + 1; j < desc.shapes.size(); ++j) {
      const std::pair<int, int> key{std::min(desc.shapes[i].id, desc.shapes[j].id),
                                    std::max(desc.shapes[i].id, desc.shapes[j].id)};
      if (!exempt.count(key)) out.push_back(key);
    }
  }
  return out;
}

}  // namespace shapebench
