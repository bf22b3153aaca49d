#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "shapebench/geometry.hpp"
#include "shapebench/rng.hpp"

// Scene synthesis: sample free shapes, reject on overlap, then grow
// relationship-constrained companions, yielding the structured description
// (shapes + relationship triples). Fully deterministic given the config seed.

namespace shapebench {

enum class Split { Easy, Hard };

const char* to_string(Split split);

struct GenConfig {
  int max_shapes = 8;           // m in the generation loop
  double overlap_thres = 0.05;  // fraction of the smaller occupied area
  std::vector<ShapeKind> shape_pool;        // sorted, unique; empty = invalid
  std::vector<RelationKind> relation_pool;  // sorted, unique; empty = invalid
  Split target_split = Split::Easy;
  std::uint64_t seed = 0;

  /// All ten kinds / all nine relations, split defaults (easy m=4, hard m=8).
  static GenConfig defaults(Split split, std::uint64_t seed);
};

struct SceneDescription {
  std::string figure_id;
  std::vector<Shape> shapes;
  std::vector<Relation> relations;
  bool noisy = false;  // set at render-request time
  std::uint64_t seed = 0;
  GenConfig config_echo;

  const Shape& shape_by_id(int id) const;
};

struct EmptyPool : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NoCompatibleRelation : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct GenerationExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Uniform draw from the pool. Throws EmptyPool.
ShapeKind sample_shape(std::span<const ShapeKind> pool, Rng& rng);

/// Random attributes for `kind`: rotation ~ U[0, 2pi), max span in
/// [0.10, 0.45], bounding box inside [0.02, 0.98]^2. Polygons come out
/// convex and counterclockwise (regular for Pentagon/Hexagon; Triangle and
/// Quadrilateral from sorted angular samples on a random ellipse, rejecting
/// min interior angles < 15 degrees).
Shape randomize_attributes(ShapeKind kind, Rng& rng);

/// Relations `s1` can participate in as the seed shape of a companion
/// construction (the generation-side compatibility row).
std::vector<RelationKind> compatible_relations(ShapeKind kind);

/// Uniform draw from pool intersected with compatible_relations(s1.kind).
/// Throws NoCompatibleRelation when the intersection is empty.
RelationKind sample_relationship(std::span<const RelationKind> pool, const Shape& s1,
                                 Rng& rng);

/// Constructs a companion shape for `s1` so that the relationship holds by
/// construction (verified at tol 1e-6) and the companion stays inside the
/// canvas margins. Throws IncompatibleKinds or GenerationExhausted after
/// 1000 placement attempts.
Shape generate_related_shape(RelationKind kind, const Shape& s1, Rng& rng);

/// Stored orientation of a constructed relation: for Inscribed and
/// Circumscribed the companion is the subject (companion inscribed in /
/// circumscribed about s1); all other kinds store (s1, companion).
Relation make_relation(RelationKind kind, int s1_id, int companion_id);

/// Kinds whose geometry necessarily overlaps its seed shape; the overlap
/// test exempts the (s1, companion) pair for these.
bool overlap_exempt(RelationKind kind);

/// Runs the two generation loops and regenerates (derived sub-seeds, at most
/// 100 attempts) until the shape count falls in the target split band
/// (Easy <= 4, Hard in [5, m]). Deterministic given config.seed. Throws
/// GenerationExhausted.
SceneDescription synthesize_description(const GenConfig& config);

/// Non-exempt shape id pairs of a scene (subject < object), i.e. every pair
/// the overlap contract applies to.
std::vector<std::pair<int, int>> non_exempt_pairs(const SceneDescription& desc);

}  // namespace shapebench
