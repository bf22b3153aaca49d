#include "shapebench/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "shapebench/render_internal.hpp"

namespace shapebench {

RasterImage RasterImage::white(int width, int height) {
  RasterImage img;
  img.width = width;
  img.height = height;
  img.pixels.assign(static_cast<std::size_t>(width) * height * 3, 255);
  return img;
}

// --- SVG -------------------------------------------------------------------

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

// SVG y axis points down; canvas y points up.
double flip(double y) { return 1.0 - y; }

void append_points_attr(std::string& out, std::span<const Point2> pts) {
  out += " points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) out += ' ';
    out += fmt(pts[i].x);
    out += ',';
    out += fmt(flip(pts[i].y));
  }
  out += "\"";
}

const char* kStrokeAttrs = " stroke=\"#000000\" stroke-width=\"0.004\"";

}  // namespace

std::string render_svg(const SceneDescription& desc, const RenderOptions& opts) {
  const char* fill = opts.fill_closed ? "#c8c8c8" : "none";
  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"640\" "
         "viewBox=\"0 0 1 1\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"1\" height=\"1\" fill=\"#ffffff\"/>\n";
  for (const Shape& s : desc.shapes) {
    switch (s.kind) {
      case ShapeKind::Line: {
        const auto& l = s.line();
        out += "<line x1=\"" + fmt(l.p0.x) + "\" y1=\"" + fmt(flip(l.p0.y)) + "\" x2=\"" +
               fmt(l.p1.x) + "\" y2=\"" + fmt(flip(l.p1.y)) + "\"" + kStrokeAttrs + "/>\n";
        break;
      }
      case ShapeKind::Circle: {
        const auto& c = s.circle();
        out += "<circle cx=\"" + fmt(c.center.x) + "\" cy=\"" + fmt(flip(c.center.y)) +
               "\" r=\"" + fmt(c.radius) + "\" fill=\"" + fill + "\"" + kStrokeAttrs +
               "/>\n";
        break;
      }
      case ShapeKind::Ellipse: {
        const auto& e = s.ellipse();
        const double deg = -s.rotation * 180.0 / std::numbers::pi;
        out += "<ellipse cx=\"" + fmt(e.center.x) + "\" cy=\"" + fmt(flip(e.center.y)) +
               "\" rx=\"" + fmt(e.semi_major) + "\" ry=\"" + fmt(e.semi_minor) +
               "\" transform=\"rotate(" + fmt(deg) + " " + fmt(e.center.x) + " " +
               fmt(flip(e.center.y)) + ")\" fill=\"" + fill + "\"" + kStrokeAttrs + "/>\n";
        break;
      }
      case ShapeKind::Triangle:
      case ShapeKind::Quadrilateral:
      case ShapeKind::Pentagon:
      case ShapeKind::Hexagon:
      case ShapeKind::Rectangle:
      case ShapeKind::Square: {
        out += "<polygon";
        append_points_attr(out, shape_vertices(s));
        out += std::string(" fill=\"") + fill + "\"" + kStrokeAttrs + "/>\n";
        break;
      }
      case ShapeKind::Spiral: {
        const auto pts = boundary_polyline(s);
        out += "<polyline";
        append_points_attr(out, pts);
        out += std::string(" fill=\"none\"") + kStrokeAttrs + "/>\n";
        break;
      }
    }
  }
  out += "</svg>\n";
  return out;
}

// --- rasterizer --------------------------------------------------------------

namespace render_internal {

PixelPoint to_pixel(Point2 p, int size) {
  return {p.x * size, (1.0 - p.y) * size};
}

void stroke_segment(std::vector<float>& coverage, int size, PixelPoint a, PixelPoint b,
                    double half_width_px) {
  const double pad = half_width_px + 1.0;
  const int row_lo = std::max(0, static_cast<int>(std::floor(std::min(a.y, b.y) - pad)));
  const int row_hi =
      std::min(size - 1, static_cast<int>(std::ceil(std::max(a.y, b.y) + pad)));
  const int col_lo = std::max(0, static_cast<int>(std::floor(std::min(a.x, b.x) - pad)));
  const int col_hi =
      std::min(size - 1, static_cast<int>(std::ceil(std::max(a.x, b.x) + pad)));
  const double abx = b.x - a.x, aby = b.y - a.y;
  const double len2 = abx * abx + aby * aby;
  for (int row = row_lo; row <= row_hi; ++row) {
    const double py = row + 0.5;
    for (int col = col_lo; col <= col_hi; ++col) {
      const double px = col + 0.5;
      double t = 0.0;
      if (len2 > 0.0) t = std::clamp(((px - a.x) * abx + (py - a.y) * aby) / len2, 0.0, 1.0);
      const double dx = px - (a.x + abx * t);
      const double dy = py - (a.y + aby * t);
      const double d = std::sqrt(dx * dx + dy * dy);
      // 1 px linear AA ramp centered on the stroke border.
      const float cov = static_cast<float>(std::clamp(half_width_px - d + 0.5, 0.0, 1.0));
      if (cov > 0.0f) {
        float& cell = coverage[static_cast<std::size_t>(row) * size + col];
        cell = std::max(cell, cov);
      }
    }
  }
}

void stroke_polyline(std::vector<float>& coverage, int size, std::span<const Point2> pts,
                     double width_canvas) {
  const double half_width_px = width_canvas * size / 2.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    stroke_segment(coverage, size, to_pixel(pts[i], size), to_pixel(pts[i + 1], size),
                   half_width_px);
  }
}

void composite_ink(RasterImage& img, const std::vector<float>& coverage) {
  const std::size_t n = static_cast<std::size_t>(img.width) * img.height;
  for (std::size_t i = 0; i < n; ++i) {
    const float cov = coverage[i];
    if (cov <= 0.0f) continue;
    std::uint8_t* px = &img.pixels[i * 3];
    for (int ch = 0; ch < 3; ++ch) {
      px[ch] = static_cast<std::uint8_t>(std::lround(px[ch] * (1.0f - cov)));
    }
  }
}

void fill_shape(RasterImage& img, const Shape& shape, std::uint8_t gray) {
  if (!is_closed(shape.kind)) return;
  const int size = img.width;
  const BBox b = bounding_box(shape);
  const int row_lo = std::max(0, static_cast<int>(std::floor((1.0 - b.y_max) * size)));
  const int row_hi = std::min(size - 1, static_cast<int>(std::ceil((1.0 - b.y_min) * size)));
  const int col_lo = std::max(0, static_cast<int>(std::floor(b.x_min * size)));
  const int col_hi = std::min(size - 1, static_cast<int>(std::ceil(b.x_max * size)));
  for (int row = row_lo; row <= row_hi; ++row) {
    const double y = 1.0 - (row + 0.5) / size;
    for (int col = col_lo; col <= col_hi; ++col) {
      const double x = (col + 0.5) / size;
      if (point_in_shape(shape, {x, y})) {
        std::uint8_t* px = img.at(row, col);
        px[0] = px[1] = px[2] = gray;
      }
    }
  }
}

std::vector<Point2> jittered(std::span<const Point2> pts, double amplitude, Rng& rng,
                             bool closed_loop) {
  std::vector<Point2> out(pts.begin(), pts.end());
  for (Point2& p : out) {
    p.x += rng.uniform(-amplitude, amplitude);
    p.y += rng.uniform(-amplitude, amplitude);
  }
  // A closed outline must stay closed after displacement.
  if (closed_loop && out.size() > 1) out.back() = out.front();
  return out;
}

void draw_scene(RasterImage& img, std::vector<float>& stroke_coverage,
                const SceneDescription& desc, const RenderOptions& opts,
                double jitter_amplitude, Rng* jitter_rng) {
  const int size = img.width;
  for (const Shape& s : desc.shapes) {
    if (opts.fill_closed) fill_shape(img, s, 200);
    auto pts = boundary_polyline(s);
    if (jitter_rng != nullptr) {
      pts = jittered(pts, jitter_amplitude, *jitter_rng, is_closed(s.kind));
    }
    stroke_polyline(stroke_coverage, size, pts, kStrokeWidth);
  }
  composite_ink(img, stroke_coverage);
}

}  // namespace render_internal

RasterImage rasterize(const SceneDescription& desc, int size, const RenderOptions& opts) {
  if (size < 64) throw SizeTooSmall("raster size must be >= 64");
  RasterImage img = RasterImage::white(size, size);
  std::vector<float> coverage(static_cast<std::size_t>(size) * size, 0.0f);
  render_internal::draw_scene(img, coverage, desc, opts, 0.0, nullptr);
  return img;
}

bool decide_noisy(std::uint64_t master_seed, std::uint64_t figure_index, double p) {
  Rng rng(derive_seed(master_seed, figure_index, SeedSalt::NoiseGate));
  return rng.bernoulli(p);
}

}  // namespace shapebench
