#pragma once

#include <span>
#include <vector>

#include "shapebench/render.hpp"

// Rasterizer internals shared between the clean render path and the noise
// pipeline (which redraws outlines with jittered control points).

namespace shapebench::render_internal {

struct PixelPoint {
  double x = 0.0;
  double y = 0.0;
};

PixelPoint to_pixel(Point2 p, int size);

void stroke_polyline(std::vector<float>& coverage, int size, std::span<const Point2> pts,
                     double width_canvas);

void composite_ink(RasterImage& img, const std::vector<float>& coverage);

void fill_shape(RasterImage& img, const Shape& shape, std::uint8_t gray);

std::vector<Point2> jittered(std::span<const Point2> pts, double amplitude, Rng& rng,
                             bool closed_loop);

/// Fills + strokes every shape into `img`; stroke coverage accumulates in
/// `stroke_coverage` (max-combined). Passing a jitter rng displaces every
/// flattened control point before stroking.
void draw_scene(RasterImage& img, std::vector<float>& stroke_coverage,
                const SceneDescription& desc, const RenderOptions& opts,
                double jitter_amplitude, Rng* jitter_rng);

}  // namespace shapebench::render_internal
