#include "shapebench/geometry.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>

namespace shapebench {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTau = 2.0 * std::numbers::pi;

}  // namespace

double norm(Vec2 a) { return std::hypot(a.x, a.y); }

Vec2 normalized(Vec2 a) {
  const double n = norm(a);
  return n > 0.0 ? Vec2{a.x / n, a.y / n} : Vec2{0.0, 0.0};
}

Vec2 rotated(Vec2 a, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return {c * a.x - s * a.y, s * a.x + c * a.y};
}

Vec2 unit_vector(double angle) { return {std::cos(angle), std::sin(angle)}; }

double distance(Point2 a, Point2 b) { return norm(a - b); }

double distance_to_segment(Point2 p, Point2 a, Point2 b) {
  const Vec2 ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 <= 0.0) return distance(p, a);
  const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return distance(p, a + ab * t);
}

// --- kind tables -----------------------------------------------------------

namespace {

constexpr std::array<ShapeKind, kShapeKindCount> kShapeKinds = {
    ShapeKind::Line,     ShapeKind::Ellipse,       ShapeKind::Circle,
    ShapeKind::Triangle, ShapeKind::Quadrilateral, ShapeKind::Pentagon,
    ShapeKind::Hexagon,  ShapeKind::Rectangle,     ShapeKind::Square,
    ShapeKind::Spiral,
};

constexpr std::array<const char*, kShapeKindCount> kShapeKindNames = {
    "line",    "ellipse", "circle",    "triangle", "quadrilateral",
    "pentagon", "hexagon", "rectangle", "square",   "spiral",
};

constexpr std::array<RelationKind, kRelationKindCount> kRelationKinds = {
    RelationKind::Tangent,      RelationKind::Parallel,     RelationKind::Perpendicular,
    RelationKind::Inscribed,    RelationKind::Circumscribed, RelationKind::Concentric,
    RelationKind::Intersecting, RelationKind::Contains,     RelationKind::SharedVertex,
};

constexpr std::array<const char*, kRelationKindCount> kRelationKindNames = {
    "tangent",      "parallel", "perpendicular", "inscribed",     "circumscribed",
    "concentric",   "intersecting", "contains",  "shares a vertex",
};

}  // namespace

std::span<const ShapeKind> all_shape_kinds() { return kShapeKinds; }

const char* to_string(ShapeKind kind) { return kShapeKindNames[static_cast<int>(kind)]; }

std::optional<ShapeKind> shape_kind_from_string(const std::string& name) {
  for (int i = 0; i < kShapeKindCount; ++i) {
    if (name == kShapeKindNames[i]) return kShapeKinds[i];
  }
  return std::nullopt;
}

bool is_closed(ShapeKind kind) { return kind != ShapeKind::Line && kind != ShapeKind::Spiral; }

bool has_vertices(ShapeKind kind) {
  switch (kind) {
    case ShapeKind::Line:
    case ShapeKind::Triangle:
    case ShapeKind::Quadrilateral:
    case ShapeKind::Pentagon:
    case ShapeKind::Hexagon:
    case ShapeKind::Rectangle:
    case ShapeKind::Square:
      return true;
    default:
      return false;
  }
}

bool is_polygonal(ShapeKind kind) {
  return has_vertices(kind) && kind != ShapeKind::Line;
}

std::span<const RelationKind> all_relation_kinds() { return kRelationKinds; }

const char* to_string(RelationKind kind) { return kRelationKindNames[static_cast<int>(kind)]; }

std::optional<RelationKind> relation_kind_from_string(const std::string& name) {
  for (int i = 0; i < kRelationKindCount; ++i) {
    if (name == kRelationKindNames[i]) return kRelationKinds[i];
  }
  return std::nullopt;
}

// --- bbox ------------------------------------------------------------------

void BBox::extend(Point2 p) {
  x_min = std::min(x_min, p.x);
  x_max = std::max(x_max, p.x);
  y_min = std::min(y_min, p.y);
  y_max = std::max(y_max, p.y);
}

void BBox::extend(const BBox& b) {
  x_min = std::min(x_min, b.x_min);
  x_max = std::max(x_max, b.x_max);
  y_min = std::min(y_min, b.y_min);
  y_max = std::max(y_max, b.y_max);
}

namespace {

BBox bbox_of_points(std::span<const Point2> pts) {
  BBox b{pts[0].x, pts[0].x, pts[0].y, pts[0].y};
  for (const Point2& p : pts) b.extend(p);
  return b;
}

std::vector<Point2> rect_corners(const RectGeom& r, double rotation) {
  const Vec2 ex = unit_vector(rotation);
  const Vec2 ey{-ex.y, ex.x};
  const double hw = r.width / 2.0, hh = r.height / 2.0;
  // Counterclockwise starting at the "lower left" corner in the rect frame.
  return {
      r.center - ex * hw - ey * hh,
      r.center + ex * hw - ey * hh,
      r.center + ex * hw + ey * hh,
      r.center - ex * hw + ey * hh,
  };
}

std::vector<Point2> spiral_points(const SpiralGeom& s, double rotation, double step) {
  const double t_end = kTau * s.turns;
  const int n = std::max(2, static_cast<int>(std::ceil(t_end / step)) + 1);
  std::vector<Point2> pts;
  pts.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double t = t_end * static_cast<double>(i) / static_cast<double>(n - 1);
    const double r = s.start_radius + s.growth_per_radian * t;
    pts.push_back(s.center + unit_vector(rotation + t) * r);
  }
  return pts;
}

}  // namespace

BBox bounding_box(const Shape& shape) {
  switch (shape.kind) {
    case ShapeKind::Line: {
      const auto& l = shape.line();
      return {std::min(l.p0.x, l.p1.x), std::max(l.p0.x, l.p1.x),
              std::min(l.p0.y, l.p1.y), std::max(l.p0.y, l.p1.y)};
    }
    case ShapeKind::Circle: {
      const auto& c = shape.circle();
      return {c.center.x - c.radius, c.center.x + c.radius, c.center.y - c.radius,
              c.center.y + c.radius};
    }
    case ShapeKind::Ellipse: {
      // Analytic extremes of a rotated ellipse.
      const auto& e = shape.ellipse();
      const double c = std::cos(shape.rotation), s = std::sin(shape.rotation);
      const double ex = std::hypot(e.semi_major * c, e.semi_minor * s);
      const double ey = std::hypot(e.semi_major * s, e.semi_minor * c);
      return {e.center.x - ex, e.center.x + ex, e.center.y - ey, e.center.y + ey};
    }
    case ShapeKind::Triangle:
    case ShapeKind::Quadrilateral:
    case ShapeKind::Pentagon:
    case ShapeKind::Hexagon:
      return bbox_of_points(shape.polygon().vertices);
    case ShapeKind::Rectangle:
    case ShapeKind::Square:
      return bbox_of_points(rect_corners(shape.rect(), shape.rotation));
    case ShapeKind::Spiral: {
      const auto pts = spiral_points(shape.spiral(), shape.rotation, kSpiralStep);
      return bbox_of_points(pts);
    }
  }
  return {};
}

namespace {

double polygon_signed_area(std::span<const Point2> v) {
  double acc = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point2& a = v[i];
    const Point2& b = v[(i + 1) % v.size()];
    acc += a.x * b.y - b.x * a.y;
  }
  return acc / 2.0;
}

Point2 polygon_centroid(std::span<const Point2> v) {
  double a = 0.0, cx = 0.0, cy = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point2& p = v[i];
    const Point2& q = v[(i + 1) % v.size()];
    const double w = p.x * q.y - q.x * p.y;
    a += w;
    cx += (p.x + q.x) * w;
    cy += (p.y + q.y) * w;
  }
  a /= 2.0;
  return {cx / (6.0 * a), cy / (6.0 * a)};
}

}  // namespace

Point2 centroid(const Shape& shape) {
  switch (shape.kind) {
    case ShapeKind::Line: {
      const auto& l = shape.line();
      return {(l.p0.x + l.p1.x) / 2.0, (l.p0.y + l.p1.y) / 2.0};
    }
    case ShapeKind::Circle:
      return shape.circle().center;
    case ShapeKind::Ellipse:
      return shape.ellipse().center;
    case ShapeKind::Triangle:
    case ShapeKind::Quadrilateral:
    case ShapeKind::Pentagon:
    case ShapeKind::Hexagon:
      return polygon_centroid(shape.polygon().vertices);
    case ShapeKind::Rectangle:
    case ShapeKind::Square:
      return shape.rect().center;
    case ShapeKind::Spiral:
      return shape.spiral().center;
  }
  return {};
}

double area(const Shape& shape) {
  switch (shape.kind) {
    case ShapeKind::Line:
    case ShapeKind::Spiral:
      return 0.0;
    case ShapeKind::Circle: {
      const double r = shape.circle().radius;
      return kPi * r * r;
    }
    case ShapeKind::Ellipse: {
      const auto& e = shape.ellipse();
      return kPi * e.semi_major * e.semi_minor;
    }
    case ShapeKind::Triangle:
    case ShapeKind::Quadrilateral:
    case ShapeKind::Pentagon:
    case ShapeKind::Hexagon:
      return std::abs(polygon_signed_area(shape.polygon().vertices));
    case ShapeKind::Rectangle:
    case ShapeKind::Square: {
      const auto& r = shape.rect();
      return r.width * r.height;
    }
  }
  return 0.0;
}

Spans spans(const Shape& shape) {
  const BBox b = bounding_box(shape);
  return {b.width(), b.height()};
}

std::vector<Point2> shape_vertices(const Shape& shape) {
  switch (shape.kind) {
    case ShapeKind::Line:
      return {shape.line().p0, shape.line().p1};
    case ShapeKind::Triangle:
    case ShapeKind::Quadrilateral:
    case ShapeKind::Pentagon:
    case ShapeKind::Hexagon:
      return shape.polygon().vertices;
    case ShapeKind::Rectangle:
    case ShapeKind::Square:
      return rect_corners(shape.rect(), shape.rotation);
    default:
      return {};
  }
}

namespace {

void append_subdivided(std::vector<Point2>& out, Point2 a, Point2 b, double max_step) {
  const double len = distance(a, b);
  const int n = std::max(1, static_cast<int>(std::ceil(len / max_step)));
  for (int i = 1; i <= n; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(n);
    out.push_back(a + (b - a) * t);
  }
}

std::vector<Point2> flatten_segment_loop(std::span<const Point2> corners, bool closed,
                                         double max_step) {
  std::vector<Point2> out;
  out.push_back(corners[0]);
  for (std::size_t i = 0; i + 1 < corners.size(); ++i) {
    append_subdivided(out, corners[i], corners[i + 1], max_step);
  }
  if (closed) append_subdivided(out, corners.back(), corners[0], max_step);
  return out;
}

int arc_segments(double radius, double max_sagitta, double sweep) {
  // Chord sagitta s = r (1 - cos(dt/2)) <= max_sagitta.
  if (radius <= max_sagitta) return 8;
  const double dt = 2.0 * std::acos(std::clamp(1.0 - max_sagitta / radius, -1.0, 1.0));
  const int n = static_cast<int>(std::ceil(sweep / std::max(dt, 1e-3)));
  return std::clamp(n, 16, 4096);
}

}  // namespace

std::vector<Point2> boundary_polyline(const Shape& shape, double max_sagitta,
                                      double max_edge_step) {
  switch (shape.kind) {
    case ShapeKind::Line:
      return flatten_segment_loop(std::array{shape.line().p0, shape.line().p1}, false,
                                  max_edge_step);
    case ShapeKind::Circle: {
      const auto& c = shape.circle();
      const int n = arc_segments(c.radius, max_sagitta, kTau);
      std::vector<Point2> pts;
      pts.reserve(static_cast<std::size_t>(n) + 1);
      for (int i = 0; i <= n; ++i) {
        pts.push_back(c.center + unit_vector(kTau * i / n) * c.radius);
      }
      return pts;
    }
    case ShapeKind::Ellipse: {
      const auto& e = shape.ellipse();
      const int n = arc_segments(e.semi_major, max_sagitta, kTau);
      std::vector<Point2> pts;
      pts.reserve(static_cast<std::size_t>(n) + 1);
      for (int i = 0; i <= n; ++i) {
        const double t = kTau * i / n;
        const Vec2 local{e.semi_major * std::cos(t), e.semi_minor * std::sin(t)};
        pts.push_back(e.center + rotated(local, shape.rotation));
      }
      return pts;
    }
    case ShapeKind::Triangle:
    case ShapeKind::Quadrilateral:
    case ShapeKind::Pentagon:
    case ShapeKind::Hexagon:
      return flatten_segment_loop(shape.polygon().vertices, true, max_edge_step);
    case ShapeKind::Rectangle:
    case ShapeKind::Square:
      return flatten_segment_loop(rect_corners(shape.rect(), shape.rotation), true,
                                  max_edge_step);
    case ShapeKind::Spiral:
      return spiral_points(shape.spiral(), shape.rotation, kSpiralStep);
  }
  return {};
}

// --- occupancy grid --------------------------------------------------------

OccupancyGrid::OccupancyGrid()
    : words_(static_cast<std::size_t>(kOccupancyGridSize) * kOccupancyGridSize / 64, 0) {}

void OccupancyGrid::set(int row, int col) {
  if (row < 0 || row >= kOccupancyGridSize || col < 0 || col >= kOccupancyGridSize) return;
  const std::size_t bit =
      static_cast<std::size_t>(row) * kOccupancyGridSize + static_cast<std::size_t>(col);
  words_[bit / 64] |= (1ULL << (bit % 64));
}

bool OccupancyGrid::test(int row, int col) const {
  const std::size_t bit =
      static_cast<std::size_t>(row) * kOccupancyGridSize + static_cast<std::size_t>(col);
  return (words_[bit / 64] >> (bit % 64)) & 1ULL;
}

std::int64_t OccupancyGrid::count() const {
  std::int64_t total = 0;
  for (std::uint64_t w : words_) total += std::popcount(w);
  return total;
}

std::int64_t OccupancyGrid::intersection_count(const OccupancyGrid& other) const {
  std::int64_t total = 0;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    total += std::popcount(words_[i] & other.words_[i]);
  }
  return total;
}

namespace {

constexpr int kGrid = kOccupancyGridSize;

double cell_center(int index) { return (index + 0.5) / kGrid; }

// Column range whose centers fall inside [x_lo, x_hi].
std::pair<int, int> column_range(double x_lo, double x_hi) {
  const int lo = static_cast<int>(std::ceil(x_lo * kGrid - 0.5));
  const int hi = static_cast<int>(std::floor(x_hi * kGrid - 0.5));
  return {std::max(lo, 0), std::min(hi, kGrid - 1)};
}

void fill_row_span(OccupancyGrid& grid, int row, double x_lo, double x_hi) {
  const auto [lo, hi] = column_range(x_lo, x_hi);
  for (int col = lo; col <= hi; ++col) grid.set(row, col);
}

void fill_circle(OccupancyGrid& grid, const CircleGeom& c) {
  const auto [row_lo, row_hi] =
      column_range(c.center.y - c.radius, c.center.y + c.radius);
  for (int row = row_lo; row <= row_hi; ++row) {
    const double dy = cell_center(row) - c.center.y;
    const double h2 = c.radius * c.radius - dy * dy;
    if (h2 < 0.0) continue;
    const double half = std::sqrt(h2);
    fill_row_span(grid, row, c.center.x - half, c.center.x + half);
  }
}

void fill_ellipse(OccupancyGrid& grid, const EllipseGeom& e, double rotation) {
  // Implicit form A dx^2 + B dx dy + C dy^2 <= 1 in canvas coordinates.
  const double c = std::cos(rotation), s = std::sin(rotation);
  const double ia2 = 1.0 / (e.semi_major * e.semi_major);
  const double ib2 = 1.0 / (e.semi_minor * e.semi_minor);
  const double A = c * c * ia2 + s * s * ib2;
  const double B = 2.0 * c * s * (ia2 - ib2);
  const double C = s * s * ia2 + c * c * ib2;
  const double ey = std::hypot(e.semi_major * s, e.semi_minor * c);
  const auto [row_lo, row_hi] = column_range(e.center.y - ey, e.center.y + ey);
  for (int row = row_lo; row <= row_hi; ++row) {
    const double dy = cell_center(row) - e.center.y;
    const double disc = B * B * dy * dy - 4.0 * A * (C * dy * dy - 1.0);
    if (disc < 0.0) continue;
    const double root = std::sqrt(disc);
    const double x1 = (-B * dy - root) / (2.0 * A);
    const double x2 = (-B * dy + root) / (2.0 * A);
    fill_row_span(grid, row, e.center.x + x1, e.center.x + x2);
  }
}

void fill_convex_polygon(OccupancyGrid& grid, std::span<const Point2> v) {
  double y_lo = v[0].y, y_hi = v[0].y;
  for (const Point2& p : v) {
    y_lo = std::min(y_lo, p.y);
    y_hi = std::max(y_hi, p.y);
  }
  const auto [row_lo, row_hi] = column_range(y_lo, y_hi);
  for (int row = row_lo; row <= row_hi; ++row) {
    const double y = cell_center(row);
    double x_lo = std::numeric_limits<double>::infinity();
    double x_hi = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < v.size(); ++i) {
      const Point2& a = v[i];
      const Point2& b = v[(i + 1) % v.size()];
      if ((a.y <= y && b.y >= y) || (b.y <= y && a.y >= y)) {
        if (std::abs(b.y - a.y) < 1e-15) {
          x_lo = std::min({x_lo, a.x, b.x});
          x_hi = std::max({x_hi, a.x, b.x});
        } else {
          const double t = (y - a.y) / (b.y - a.y);
          const double x = a.x + (b.x - a.x) * t;
          x_lo = std::min(x_lo, x);
          x_hi = std::max(x_hi, x);
        }
      }
    }
    if (x_lo <= x_hi) fill_row_span(grid, row, x_lo, x_hi);
  }
}

void stamp_stroked_polyline(OccupancyGrid& grid, std::span<const Point2> pts,
                            double half_width) {
  const double cell = 1.0 / kGrid;
  const double step = cell / 2.0;
  const int reach = std::max(1, static_cast<int>(std::ceil(half_width / cell)) + 1);
  auto stamp = [&](Point2 p) {
    const int row0 = static_cast<int>(std::floor(p.y * kGrid));
    const int col0 = static_cast<int>(std::floor(p.x * kGrid));
    for (int dr = -reach; dr <= reach; ++dr) {
      for (int dc = -reach; dc <= reach; ++dc) {
        const int row = row0 + dr, col = col0 + dc;
        if (row < 0 || row >= kGrid || col < 0 || col >= kGrid) continue;
        const Point2 center{cell_center(col), cell_center(row)};
        if (distance(center, p) <= half_width + step / 2.0) grid.set(row, col);
      }
    }
  };
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double len = distance(pts[i], pts[i + 1]);
    const int n = std::max(1, static_cast<int>(std::ceil(len / step)));
    for (int k = 0; k <= n; ++k) {
      const double t = static_cast<double>(k) / n;
      stamp(pts[i] + (pts[i + 1] - pts[i]) * t);
    }
  }
}

}  // namespace

OccupancyGrid occupancy_grid(const Shape& shape) {
  OccupancyGrid grid;
  switch (shape.kind) {
    case ShapeKind::Circle:
      fill_circle(grid, shape.circle());
      break;
    case ShapeKind::Ellipse:
      fill_ellipse(grid, shape.ellipse(), shape.rotation);
      break;
    case ShapeKind::Triangle:
    case ShapeKind::Quadrilateral:
    case ShapeKind::Pentagon:
    case ShapeKind::Hexagon:
      fill_convex_polygon(grid, shape.polygon().vertices);
      break;
    case ShapeKind::Rectangle:
    case ShapeKind::Square:
      fill_convex_polygon(grid, rect_corners(shape.rect(), shape.rotation));
      break;
    case ShapeKind::Line: {
      const auto& l = shape.line();
      stamp_stroked_polyline(grid, std::array{l.p0, l.p1}, kStrokeWidth / 2.0);
      break;
    }
    case ShapeKind::Spiral: {
      const auto pts = spiral_points(shape.spiral(), shape.rotation, kSpiralStep * 2.0);
      stamp_stroked_polyline(grid, pts, kStrokeWidth / 2.0);
      break;
    }
  }
  return grid;
}

double overlap_ratio(const OccupancyGrid& a, const OccupancyGrid& b) {
  const std::int64_t ca = a.count();
  const std::int64_t cb = b.count();
  if (ca == 0 || cb == 0) return 0.0;
  const std::int64_t inter = a.intersection_count(b);
  return static_cast<double>(inter) / static_cast<double>(std::min(ca, cb));
}

double overlap_area(const Shape& candidate, std::span<const Shape> scene_shapes) {
  if (scene_shapes.empty()) return 0.0;
  const OccupancyGrid mine = occupancy_grid(candidate);
  double worst = 0.0;
  for (const Shape& other : scene_shapes) {
    worst = std::max(worst, overlap_ratio(mine, occupancy_grid(other)));
  }
  return worst;
}

// --- point queries ---------------------------------------------------------

bool point_in_shape(const Shape& shape, Point2 p) {
  switch (shape.kind) {
    case ShapeKind::Circle: {
      const auto& c = shape.circle();
      return distance(p, c.center) <= c.radius;
    }
    case ShapeKind::Ellipse: {
      const auto& e = shape.ellipse();
      const Vec2 local = rotated(p - e.center, -shape.rotation);
      const double u = local.x / e.semi_major;
      const double v = local.y / e.semi_minor;
      return u * u + v * v <= 1.0;
    }
    case ShapeKind::Triangle:
    case ShapeKind::Quadrilateral:
    case ShapeKind::Pentagon:
    case ShapeKind::Hexagon: {
      const auto& v = shape.polygon().vertices;
      for (std::size_t i = 0; i < v.size(); ++i) {
        const Point2& a = v[i];
        const Point2& b = v[(i + 1) % v.size()];
        if (cross(b - a, p - a) < 0.0) return false;  // CCW: inside is left
      }
      return true;
    }
    case ShapeKind::Rectangle:
    case ShapeKind::Square: {
      const auto& r = shape.rect();
      const Vec2 local = rotated(p - r.center, -shape.rotation);
      return std::abs(local.x) <= r.width / 2.0 && std::abs(local.y) <= r.height / 2.0;
    }
    default:
      return false;
  }
}

double boundary_distance(const Shape& shape, Point2 p) {
  switch (shape.kind) {
    case ShapeKind::Line: {
      const auto& l = shape.line();
      return distance_to_segment(p, l.p0, l.p1);
    }
    case ShapeKind::Circle: {
      const auto& c = shape.circle();
      return std::abs(distance(p, c.center) - c.radius);
    }
    default: {
      const auto verts = shape_vertices(shape);
      if (!verts.empty()) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < verts.size(); ++i) {
          const Point2& a = verts[i];
          const Point2& b = verts[(i + 1) % verts.size()];
          if (shape.kind == ShapeKind::Line && i + 1 == verts.size()) break;
          best = std::min(best, distance_to_segment(p, a, b));
        }
        return best;
      }
      // Ellipse / spiral: sampled outline.
      const auto pts = boundary_polyline(shape, 1e-5, 0.005);
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        best = std::min(best, distance_to_segment(p, pts[i], pts[i + 1]));
      }
      return best;
    }
  }
}

double interior_clearance(const Shape& shape, Point2 p) {
  switch (shape.kind) {
    case ShapeKind::Circle: {
      const auto& c = shape.circle();
      return c.radius - distance(p, c.center);
    }
    case ShapeKind::Ellipse: {
      // Lower bound: |grad f| <= 1/semi_minor for f = sqrt((x/a)^2+(y/b)^2),
      // so dist >= (1 - f) * semi_minor.
      const auto& e = shape.ellipse();
      const Vec2 local = rotated(p - e.center, -shape.rotation);
      const double u = local.x / e.semi_major;
      const double v = local.y / e.semi_minor;
      const double f = std::sqrt(u * u + v * v);
      return (1.0 - f) * e.semi_minor;
    }
    case ShapeKind::Triangle:
    case ShapeKind::Quadrilateral:
    case ShapeKind::Pentagon:
    case ShapeKind::Hexagon: {
      const auto& v = shape.polygon().vertices;
      double worst = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < v.size(); ++i) {
        const Point2& a = v[i];
        const Point2& b = v[(i + 1) % v.size()];
        const Vec2 edge = normalized(b - a);
        worst = std::min(worst, cross(edge, p - a));  // signed edge distance
      }
      return worst;
    }
    case ShapeKind::Rectangle:
    case ShapeKind::Square: {
      const auto& r = shape.rect();
      const Vec2 local = rotated(p - r.center, -shape.rotation);
      return std::min(r.width / 2.0 - std::abs(local.x),
                      r.height / 2.0 - std::abs(local.y));
    }
    default:
      return -std::numeric_limits<double>::infinity();
  }
}

Point2 shape_center(const Shape& shape) {
  switch (shape.kind) {
    case ShapeKind::Circle:
      return shape.circle().center;
    case ShapeKind::Ellipse:
      return shape.ellipse().center;
    case ShapeKind::Rectangle:
    case ShapeKind::Square:
      return shape.rect().center;
    case ShapeKind::Spiral:
      return shape.spiral().center;
    default:
      return centroid(shape);
  }
}

double support_extent(const Shape& shape, Vec2 dir) {
  switch (shape.kind) {
    case ShapeKind::Circle:
      return shape.circle().radius;
    case ShapeKind::Ellipse: {
      const auto& e = shape.ellipse();
      const Vec2 local = rotated(dir, -shape.rotation);
      return std::hypot(e.semi_major * local.x, e.semi_minor * local.y);
    }
    default: {
      const auto verts = shape_vertices(shape);
      const Point2 c = shape_center(shape);
      double best = 0.0;
      for (const Point2& v : verts) best = std::max(best, dot(v - c, dir));
      return best;
    }
  }
}

std::optional<Vec2> principal_direction(const Shape& shape) {
  switch (shape.kind) {
    case ShapeKind::Line:
      return normalized(shape.line().p1 - shape.line().p0);
    case ShapeKind::Rectangle: {
      // Longer-edge direction; squares are excluded from the matrix because
      // their two edge families are indistinguishable.
      const auto& r = shape.rect();
      const Vec2 ex = unit_vector(shape.rotation);
      return r.width >= r.height ? ex : Vec2{-ex.y, ex.x};
    }
    default:
      return std::nullopt;
  }
}

// --- compatibility matrix --------------------------------------------------

namespace {

bool tangent_pair(ShapeKind a, ShapeKind b) {
  if (a == ShapeKind::Circle && b == ShapeKind::Circle) return true;
  if (a == ShapeKind::Circle && (b == ShapeKind::Line || is_polygonal(b))) return true;
  if (b == ShapeKind::Circle && (a == ShapeKind::Line || is_polygonal(a))) return true;
  return false;
}

bool direction_pair(ShapeKind a, ShapeKind b) {
  const auto ok = [](ShapeKind k) { return k == ShapeKind::Line || k == ShapeKind::Rectangle; };
  return ok(a) && ok(b) && (a == ShapeKind::Line || b == ShapeKind::Line);
}

bool inscribed_pair(ShapeKind a, ShapeKind b) {
  if (a == ShapeKind::Circle && is_polygonal(b)) return true;
  if (is_polygonal(a) && b == ShapeKind::Circle) return true;
  return false;
}

bool concentric_kind(ShapeKind k) {
  switch (k) {
    case ShapeKind::Circle:
    case ShapeKind::Ellipse:
    case ShapeKind::Rectangle:
    case ShapeKind::Square:
    case ShapeKind::Pentagon:
    case ShapeKind::Hexagon:
    case ShapeKind::Spiral:
      return true;
    default:
      return false;
  }
}

bool intersecting_pair(ShapeKind a, ShapeKind b) {
  if (is_closed(a) && is_closed(b)) return true;
  if (a == ShapeKind::Line && is_closed(b)) return true;
  if (b == ShapeKind::Line && is_closed(a)) return true;
  return false;
}

bool shared_vertex_pair(ShapeKind a, ShapeKind b) {
  if (!has_vertices(a) || !has_vertices(b)) return false;
  return !(a == ShapeKind::Line && b == ShapeKind::Line);
}

}  // namespace

bool relation_compatible(RelationKind kind, ShapeKind a, ShapeKind b) {
  switch (kind) {
    case RelationKind::Tangent:
      return tangent_pair(a, b);
    case RelationKind::Parallel:
    case RelationKind::Perpendicular:
      return direction_pair(a, b);
    case RelationKind::Inscribed:
      return inscribed_pair(a, b);
    case RelationKind::Circumscribed:
      return inscribed_pair(b, a);
    case RelationKind::Concentric:
      return concentric_kind(a) && concentric_kind(b);
    case RelationKind::Intersecting:
      return intersecting_pair(a, b);
    case RelationKind::Contains:
      return is_closed(b);
    case RelationKind::SharedVertex:
      return shared_vertex_pair(a, b);
  }
  return false;
}

// --- predicates ------------------------------------------------------------

namespace {

bool verify_tangent(const Shape& a, const Shape& b, double tol) {
  const Shape& circle_shape = a.kind == ShapeKind::Circle ? a : b;
  const Shape& other = a.kind == ShapeKind::Circle ? b : a;
  const auto& c = circle_shape.circle();
  if (other.kind == ShapeKind::Circle) {
    // External tangency: d = r1 + r2 (internal tangency would nest interiors).
    const auto& c2 = other.circle();
    const double d = distance(c.center, c2.center);
    return std::abs(d - (c.radius + c2.radius)) <= tol;
  }
  if (other.kind == ShapeKind::Line) {
    return std::abs(boundary_distance(other, c.center) - c.radius) <= tol;
  }
  // Circle against a polygon edge, interiors disjoint.
  if (point_in_shape(other, c.center)) return false;
  return std::abs(boundary_distance(other, c.center) - c.radius) <= tol;
}

bool verify_parallel(const Shape& a, const Shape& b, double tol) {
  const auto da = principal_direction(a);
  const auto db = principal_direction(b);
  if (!da || !db) return false;
  return std::abs(cross(*da, *db)) <= tol;
}

bool verify_perpendicular(const Shape& a, const Shape& b, double tol) {
  const auto da = principal_direction(a);
  const auto db = principal_direction(b);
  if (!da || !db) return false;
  return std::abs(dot(*da, *db)) <= tol;
}

int inscribed_contact_requirement(ShapeKind container) {
  switch (container) {
    case ShapeKind::Triangle:
      return 3;
    case ShapeKind::Quadrilateral:
      return 4;
    case ShapeKind::Pentagon:
      return 5;
    case ShapeKind::Hexagon:
      return 6;
    case ShapeKind::Square:
      return 4;
    case ShapeKind::Rectangle:
      return 2;  // the incircle of a non-square rect meets only the long edges
    default:
      return 1;
  }
}

// a inscribed in b: a inside b, touching b's boundary at the kind-specific
// contact count.
bool verify_inscribed(const Shape& a, const Shape& b, double tol) {
  if (a.kind == ShapeKind::Circle && is_polygonal(b.kind)) {
    const auto& c = a.circle();
    if (!point_in_shape(b, c.center)) return false;
    const auto verts = shape_vertices(b);
    int contacts = 0;
    for (std::size_t i = 0; i < verts.size(); ++i) {
      const double d =
          distance_to_segment(c.center, verts[i], verts[(i + 1) % verts.size()]);
      if (d < c.radius - tol) return false;  // circle sticks out of this edge
      if (std::abs(d - c.radius) <= tol) ++contacts;
    }
    return contacts >= inscribed_contact_requirement(b.kind);
  }
  if (is_polygonal(a.kind) && b.kind == ShapeKind::Circle) {
    // Every vertex on the circle.
    const auto& c = b.circle();
    for (const Point2& v : shape_vertices(a)) {
      if (std::abs(distance(v, c.center) - c.radius) > tol) return false;
    }
    return true;
  }
  return false;
}

bool verify_concentric(const Shape& a, const Shape& b, double tol) {
  return distance(shape_center(a), shape_center(b)) <= tol;
}

// Boundaries cross iff one outline has samples strictly inside and strictly
// outside the other closed shape.
bool crosses(const Shape& open_or_closed, const Shape& closed, double tol) {
  const auto pts = boundary_polyline(open_or_closed, 5e-4, 0.005);
  bool saw_inside = false, saw_outside = false;
  for (const Point2& p : pts) {
    const double clearance = interior_clearance(closed, p);
    if (clearance > tol) saw_inside = true;
    if (clearance < -tol || (!point_in_shape(closed, p) && boundary_distance(closed, p) > tol)) {
      saw_outside = true;
    }
    if (saw_inside && saw_outside) return true;
  }
  return false;
}

bool verify_intersecting(const Shape& a, const Shape& b, double tol) {
  if (is_closed(b.kind) && crosses(a, b, tol)) return true;
  if (is_closed(a.kind) && crosses(b, a, tol)) return true;
  return false;
}

// a strictly inside b with clearance > tol.
bool verify_contains(const Shape& a, const Shape& b, double tol) {
  switch (a.kind) {
    case ShapeKind::Circle: {
      const auto& c = a.circle();
      return interior_clearance(b, c.center) > c.radius + tol;
    }
    case ShapeKind::Line:
    case ShapeKind::Triangle:
    case ShapeKind::Quadrilateral:
    case ShapeKind::Pentagon:
    case ShapeKind::Hexagon:
    case ShapeKind::Rectangle:
    case ShapeKind::Square: {
      // b is convex, so vertex containment implies shape containment.
      for (const Point2& v : shape_vertices(a)) {
        if (interior_clearance(b, v) <= tol) return false;
      }
      return true;
    }
    default: {
      const auto pts = boundary_polyline(a, 5e-4, 0.01);
      for (const Point2& p : pts) {
        if (interior_clearance(b, p) <= tol) return false;
      }
      return true;
    }
  }
}

bool verify_shared_vertex(const Shape& a, const Shape& b, double tol) {
  const auto va = shape_vertices(a);
  const auto vb = shape_vertices(b);
  for (const Point2& p : va) {
    for (const Point2& q : vb) {
      if (distance(p, q) <= tol) return true;
    }
  }
  return false;
}

}  // namespace

bool verify_relation(const Shape& a, const Shape& b, RelationKind kind, double tol) {
  if (!relation_compatible(kind, a.kind, b.kind)) {
    throw IncompatibleKinds(std::string(to_string(kind)) + " is undefined for " +
                            to_string(a.kind) + "/" + to_string(b.kind));
  }
  switch (kind) {
    case RelationKind::Tangent:
      return verify_tangent(a, b, tol);
    case RelationKind::Parallel:
      return verify_parallel(a, b, tol);
    case RelationKind::Perpendicular:
      return verify_perpendicular(a, b, tol);
    case RelationKind::Inscribed:
      return verify_inscribed(a, b, tol);
    case RelationKind::Circumscribed:
      return verify_inscribed(b, a, tol);
    case RelationKind::Concentric:
      return verify_concentric(a, b, tol);
    case RelationKind::Intersecting:
      return verify_intersecting(a, b, tol);
    case RelationKind::Contains:
      return verify_contains(a, b, tol);
    case RelationKind::SharedVertex:
      return verify_shared_vertex(a, b, tol);
  }
  return false;
}

bool relation_holds(const Shape& a, const Shape& b, RelationKind kind, double tol) {
  if (!relation_compatible(kind, a.kind, b.kind)) return false;
  return verify_relation(a, b, kind, tol);
}

}  // namespace shapebench
