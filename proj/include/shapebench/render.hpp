#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "shapebench/rng.hpp"
#include "shapebench/scene.hpp"

// Deterministic rendering of scene descriptions to SVG text and raster
// images, with optional injection of the four noise types (background
// Gaussian, outline jitter, salt-and-pepper on outlines, Perlin fill).
// Noise never alters the scene description itself.

namespace shapebench {

/// 8-bit RGB, row-major, row 0 at the top of the image (canvas y is flipped:
/// canvas (x, y) maps to pixel (floor(x*size), size-1-floor(y*size))).
struct RasterImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  // width * height * 3

  static RasterImage white(int width, int height);
  std::uint8_t* at(int row, int col) { return &pixels[(static_cast<std::size_t>(row) * width + col) * 3]; }
  const std::uint8_t* at(int row, int col) const {
    return &pixels[(static_cast<std::size_t>(row) * width + col) * 3];
  }
  bool operator==(const RasterImage&) const = default;
};

struct NoiseConfig {
  /// Target std-dev of background intensity (0..255 units). Applied as a
  /// clamped Gaussian; the internal amplitude compensates for clamping at
  /// white so the measured std matches this value.
  double gaussian_sigma = 12.0;
  /// Outline control-point displacement, canvas units (U[-a, +a] per axis).
  double jitter_amplitude = 0.003;
  /// Per-pixel flip probability on outline-adjacent pixels (within 2 px).
  double sp_density = 0.02;
  struct Perlin {
    double cell_scale = 64.0;  // base feature size in pixels
    int octaves = 3;
    double blend_alpha = 0.25;  // 0 disables the fill texture
  } perlin;
  std::uint64_t master_seed = 0;
};

struct RenderOptions {
  bool fill_closed = false;  // light-gray fill under the stroke
};

struct SizeTooSmall : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline constexpr int kDefaultImageSize = 640;

/// SVG 1.1 document, one element per shape in id order, black strokes of
/// width 0.004 canvas units on a white background. Byte-deterministic.
std::string render_svg(const SceneDescription& desc, const RenderOptions& opts = {});

/// Anti-aliased rasterization of the vector form. Throws SizeTooSmall for
/// size < 64.
RasterImage rasterize(const SceneDescription& desc, int size = kDefaultImageSize,
                      const RenderOptions& opts = {});

/// Re-renders the scene with the four noise stages applied in order:
/// (1) background Gaussian, (2) outlines redrawn with jittered control
/// points, (3) salt-and-pepper within 2 px of a stroke, (4) Perlin texture
/// blended into closed-shape interiors. Deterministic given the rng state.
/// `img` must be a render of `desc` (it fixes the output size).
RasterImage apply_noise(const SceneDescription& desc, const RasterImage& img,
                        const NoiseConfig& cfg, Rng& rng, const RenderOptions& opts = {});

/// Per-figure Bernoulli gate used by mixed-probability batches.
bool decide_noisy(std::uint64_t master_seed, std::uint64_t figure_index, double p);

}  // namespace shapebench
