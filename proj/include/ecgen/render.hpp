#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "ecgen/geometry.hpp"

namespace ecgen::render {

// RGB page image, row-major, 3 bytes per pixel, initialized white.
struct Image {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;

  static Image white(int width, int height);
  std::uint8_t* at(int x, int y) { return pixels.data() + 3 * (static_cast<std::size_t>(y) * width + x); }
  const std::uint8_t* at(int x, int y) const {
    return pixels.data() + 3 * (static_cast<std::size_t>(y) * width + x);
  }
};

// Single-channel binary mask, values 0 or 255 only, initialized 0.
struct Mask {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;

  static Mask black(int width, int height);
  std::uint8_t& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * width + x]; }
  std::uint8_t at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }
};

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;
};

Rgb grid_rgb(geometry::GridColor color);

// Millimetre grid over the lead-area bounding box: minor lines 1 px wide
// every px_per_mm blended at alpha 0.8, major lines 2 px wide every 5 mm at
// alpha 1.0. Each grid pixel is blended exactly once; major wins crossings.
// No-op when params.grid_visible is false.
void render_grid(Image& image, const geometry::LeadLayout& layout,
                 const geometry::CalibrationModel& cal, const geometry::RenderParams& params);

struct ClippedPath {
  std::vector<geometry::PointF> path;
  std::int64_t clipped_samples = 0;
};

// Clamp y into (region top, region bottom) leaving 1 px inside each edge;
// counts how many points moved.
ClippedPath clip_to_region(const std::vector<geometry::PointF>& path,
                           const geometry::PixelBox& region);

// Coverage-antialiased stroke onto the image; where coverage >= 0.5 the mask
// (when given) is set to 255. Path x must be strictly increasing. Any path
// point outside bounds by more than 2 px throws PathOutOfBounds.
void draw_trace(Image& image, Mask* mask, const std::vector<geometry::PointF>& path,
                double stroke_width, const geometry::PixelBox& bounds);

// 1 mV / 0.2 s reference pulse inside the lead's pulse slot, image only.
void draw_calibration_pulse(Image& image, const geometry::LeadRegion& lead,
                            const geometry::CalibrationModel& cal, double stroke_width);

// Embedded-font text in solid black. Returns the layout box
// (anchor, chars * advance, height). Throws UnsupportedGlyph / EmptyText.
geometry::PixelBox render_text(Image& image, std::string_view text, int x, int y,
                               int glyph_height_px);

// "Speed: .. mm/s   Gain: .. mm/mV   Fs: .. Hz" centered in the top margin.
geometry::PixelBox render_header(Image& image, const geometry::RenderParams& params, int fs_hz,
                                 const geometry::CanvasSpec& canvas);

}  // namespace ecgen::render
