#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

// Shape representations, geometric measurements, occupancy-grid overlap, and
// the relationship verification oracle. All coordinates are canvas fractions
// in [0,1] with the origin at the bottom-left and y increasing upward. All
// operations are pure functions on immutable values.

namespace shapebench {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  Point2 operator+(Point2 o) const { return {x + o.x, y + o.y}; }
  Point2 operator-(Point2 o) const { return {x - o.x, y - o.y}; }
  Point2 operator*(double s) const { return {x * s, y * s}; }
  bool operator==(const Point2&) const = default;
};

using Vec2 = Point2;

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
double norm(Vec2 a);
Vec2 normalized(Vec2 a);
Vec2 rotated(Vec2 a, double angle);
/// Unit vector at `angle` radians from the +x axis.
Vec2 unit_vector(double angle);
double distance(Point2 a, Point2 b);
double distance_to_segment(Point2 p, Point2 a, Point2 b);

enum class ShapeKind {
  Line,
  Ellipse,
  Circle,
  Triangle,
  Quadrilateral,
  Pentagon,
  Hexagon,
  Rectangle,
  Square,
  Spiral,
};
inline constexpr int kShapeKindCount = 10;

/// All ten kinds in enumeration order.
std::span<const ShapeKind> all_shape_kinds();
const char* to_string(ShapeKind kind);
std::optional<ShapeKind> shape_kind_from_string(const std::string& name);

/// Closed kinds are all except Line and Spiral.
bool is_closed(ShapeKind kind);
/// Kinds whose outline has vertices (polygons, rectangles, line endpoints).
bool has_vertices(ShapeKind kind);
/// Triangle through Hexagon plus Rectangle and Square.
bool is_polygonal(ShapeKind kind);

enum class RelationKind {
  Tangent,
  Parallel,
  Perpendicular,
  Inscribed,
  Circumscribed,
  Concentric,
  Intersecting,
  Contains,
  SharedVertex,
};
inline constexpr int kRelationKindCount = 9;

std::span<const RelationKind> all_relation_kinds();
const char* to_string(RelationKind kind);
std::optional<RelationKind> relation_kind_from_string(const std::string& name);

struct LineGeom {
  Point2 p0, p1;
};
struct CircleGeom {
  Point2 center;
  double radius = 0.0;
};
struct EllipseGeom {
  Point2 center;
  double semi_major = 0.0;  // >= semi_minor
  double semi_minor = 0.0;
};
struct PolygonGeom {
  std::vector<Point2> vertices;  // strictly convex, counterclockwise
};
struct RectGeom {
  Point2 center;
  double width = 0.0;
  double height = 0.0;
};
/// Archimedean spiral: r(t) = start_radius + growth_per_radian * t for
/// t in [0, 2*pi*turns], phase offset = owning shape's rotation.
struct SpiralGeom {
  Point2 center;
  double start_radius = 0.0;
  double growth_per_radian = 0.0;
  double turns = 1.0;
};

struct Shape {
  int id = 0;
  ShapeKind kind = ShapeKind::Circle;
  double rotation = 0.0;  // radians in [0, 2*pi)
  std::variant<LineGeom, CircleGeom, EllipseGeom, PolygonGeom, RectGeom, SpiralGeom> geom;

  const LineGeom& line() const { return std::get<LineGeom>(geom); }
  const CircleGeom& circle() const { return std::get<CircleGeom>(geom); }
  const EllipseGeom& ellipse() const { return std::get<EllipseGeom>(geom); }
  const PolygonGeom& polygon() const { return std::get<PolygonGeom>(geom); }
  const RectGeom& rect() const { return std::get<RectGeom>(geom); }
  const SpiralGeom& spiral() const { return std::get<SpiralGeom>(geom); }
};

struct Relation {
  int subject_id = 0;
  int object_id = 0;
  RelationKind kind = RelationKind::Tangent;
};

struct BBox {
  double x_min = 0.0, x_max = 0.0, y_min = 0.0, y_max = 0.0;

  double width() const { return x_max - x_min; }
  double height() const { return y_max - y_min; }
  bool contains(Point2 p) const {
    return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max;
  }
  void extend(Point2 p);
  void extend(const BBox& b);
};

struct Spans {
  double horizontal = 0.0;
  double vertical = 0.0;
};

/// Canvas margin: every shape's bounding box must stay in [0.02, 0.98]^2.
inline constexpr double kCanvasMargin = 0.02;
/// Stroke width used for drawing and for open-curve occupancy.
inline constexpr double kStrokeWidth = 0.004;
/// Parameter step bound for spiral sampling (radians).
inline constexpr double kSpiralStep = 0.01;

/// Tightest axis-aligned box around the drawn locus. Exact for lines,
/// circles, polygons and rects (rotated extents are analytic); spirals are
/// sampled at steps <= 0.01 rad.
BBox bounding_box(const Shape& shape);

/// Area centroid for closed shapes, midpoint for lines, center for spirals.
Point2 centroid(const Shape& shape);

/// Enclosed area; 0 for open curves (Line, Spiral).
double area(const Shape& shape);

/// Width and height of the bounding box.
Spans spans(const Shape& shape);

/// Corner/endpoint list: polygon vertices, rect corners (CCW), line ends.
/// Empty for circle/ellipse/spiral.
std::vector<Point2> shape_vertices(const Shape& shape);

/// Boundary flattened to a polyline. Closed shapes repeat the first point at
/// the end. `max_sagitta` bounds the chord error for curved outlines;
/// straight edges are subdivided to `max_edge_step` so downstream consumers
/// (outline jitter, predicate sampling) see evenly spaced control points.
std::vector<Point2> boundary_polyline(const Shape& shape, double max_sagitta = 2e-4,
                                      double max_edge_step = 0.0125);

// --- Occupancy grid -------------------------------------------------------

inline constexpr int kOccupancyGridSize = 512;

/// Bit grid over the unit canvas. Closed shapes occupy their filled region,
/// open curves their stroked region (width 0.004).
class OccupancyGrid {
 public:
  OccupancyGrid();

  void set(int row, int col);
  bool test(int row, int col) const;
  std::int64_t count() const;
  std::int64_t intersection_count(const OccupancyGrid& other) const;

 private:
  std::vector<std::uint64_t> words_;
};

OccupancyGrid occupancy_grid(const Shape& shape);

/// |A n B| / min(|A|, |B|); 0 when either grid is empty.
double overlap_ratio(const OccupancyGrid& a, const OccupancyGrid& b);

/// Max over scene shapes of the pairwise overlap ratio against `candidate`;
/// 0 for an empty scene.
double overlap_area(const Shape& candidate, std::span<const Shape> scene_shapes);

// --- Relationship verification --------------------------------------------

struct IncompatibleKinds : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// True when `kind` is a decidable predicate for the (a, b) kind pair.
bool relation_compatible(RelationKind kind, ShapeKind a, ShapeKind b);

/// Geometric predicate check within `tol`. Directional kinds read as
/// "a <kind> relative to b": Inscribed = a inside b touching its boundary,
/// Circumscribed = b inscribed in a, Contains = a strictly inside b with
/// clearance > tol. Throws IncompatibleKinds outside the compatibility
/// matrix.
bool verify_relation(const Shape& a, const Shape& b, RelationKind kind, double tol);

/// verify_relation with incompatible pairs reported as false. Used by
/// predicate sweeps over arbitrary shape pairs.
bool relation_holds(const Shape& a, const Shape& b, RelationKind kind, double tol);

// Support helpers shared by scene construction and verification.
bool point_in_shape(const Shape& closed_shape, Point2 p);
/// Distance from p to the shape's outline (>= 0, unsigned).
double boundary_distance(const Shape& shape, Point2 p);
/// Distance from an interior point to the boundary of a closed shape;
/// negative when p is outside. Exact except for ellipses, where a safe
/// lower bound is returned.
double interior_clearance(const Shape& closed_shape, Point2 p);
/// Defining center used by Concentric (geometric center / regular-polygon
/// centroid / spiral origin).
Point2 shape_center(const Shape& shape);
/// Extent of a closed shape from its center along direction `dir` (unit).
double support_extent(const Shape& shape, Vec2 dir);
/// Canonical direction for Parallel/Perpendicular participants: the line
/// direction, or a rectangle's longer-edge direction.
std::optional<Vec2> principal_direction(const Shape& shape);

}  // namespace shapebench
