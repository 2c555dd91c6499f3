#include "ecgen/render.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ecgen/errors.hpp"
#include "ecgen/glyph_font.hpp"

namespace ecgen::render {

namespace {

constexpr int kSubdiv = 4;  // 4x4 coverage supersampling
constexpr int kSubSamples = kSubdiv * kSubdiv;

struct Segment {
  double x0, y0, x1, y1;
};

double dist_sq_to_segment(double px, double py, const Segment& s) {
  const double dx = s.x1 - s.x0;
  const double dy = s.y1 - s.y0;
  const double len_sq = dx * dx + dy * dy;
  double t = 0.0;
  if (len_sq > 0.0) t = std::clamp(((px - s.x0) * dx + (py - s.y0) * dy) / len_sq, 0.0, 1.0);
  const double qx = s.x0 + t * dx - px;
  const double qy = s.y0 + t * dy - py;
  return qx * qx + qy * qy;
}

void ink_pixel(Image& image, int x, int y, double coverage) {
  std::uint8_t* p = image.at(x, y);
  const double keep = 1.0 - coverage;
  p[0] = static_cast<std::uint8_t>(std::floor(p[0] * keep));
  p[1] = static_cast<std::uint8_t>(std::floor(p[1] * keep));
  p[2] = static_cast<std::uint8_t>(std::floor(p[2] * keep));
}

int pixel_coverage(double cx, double cy, const Segment* segs, std::size_t n, double radius_sq) {
  int inside = 0;
  for (int sy = 0; sy < kSubdiv; ++sy) {
    for (int sx = 0; sx < kSubdiv; ++sx) {
      const double px = cx + (sx + 0.5) / kSubdiv;
      const double py = cy + (sy + 0.5) / kSubdiv;
      for (std::size_t i = 0; i < n; ++i) {
        if (dist_sq_to_segment(px, py, segs[i]) <= radius_sq) {
          ++inside;
          break;
        }
      }
    }
  }
  return inside;
}

void apply_coverage(Image& image, Mask* mask, int x, int y, int inside) {
  if (inside == 0) return;
  ink_pixel(image, x, y, static_cast<double>(inside) / kSubSamples);
  if (mask != nullptr && 2 * inside >= kSubSamples) mask->at(x, y) = 255;
}

// Stroke for short arbitrary paths (calibration pulse): brute force over the
// path's pixel bounding box, every segment consulted per subsample.
void stroke_small(Image& image, Mask* mask, const std::vector<geometry::PointF>& pts,
                  double radius) {
  if (pts.size() < 2) return;
  std::vector<Segment> segs;
  segs.reserve(pts.size() - 1);
  double min_x = pts[0].x, max_x = pts[0].x, min_y = pts[0].y, max_y = pts[0].y;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    segs.push_back(Segment{pts[i - 1].x, pts[i - 1].y, pts[i].x, pts[i].y});
    min_x = std::min(min_x, pts[i].x);
    max_x = std::max(max_x, pts[i].x);
    min_y = std::min(min_y, pts[i].y);
    max_y = std::max(max_y, pts[i].y);
  }
  const int x0 = std::max(0, static_cast<int>(std::floor(min_x - radius - 1.0)));
  const int x1 = std::min(image.width - 1, static_cast<int>(std::ceil(max_x + radius + 1.0)));
  const int y0 = std::max(0, static_cast<int>(std::floor(min_y - radius - 1.0)));
  const int y1 = std::min(image.height - 1, static_cast<int>(std::ceil(max_y + radius + 1.0)));
  const double radius_sq = radius * radius;
  for (int y = y0; y <= y1; ++y)
    for (int x = x0; x <= x1; ++x)
      apply_coverage(image, mask, x, y, pixel_coverage(x, y, segs.data(), segs.size(), radius_sq));
}

// Stroke for x-monotonic polylines: a sliding window of segments per pixel
// column keeps the cost near-linear in trace length.
void stroke_monotonic(Image& image, Mask* mask, const std::vector<geometry::PointF>& pts,
                      double radius) {
  if (pts.size() < 2) return;
  const std::size_t n_seg = pts.size() - 1;
  const double radius_sq = radius * radius;
  const int col_begin = std::max(0, static_cast<int>(std::floor(pts.front().x - radius - 1.0)));
  const int col_end = std::min(image.width - 1, static_cast<int>(std::ceil(pts.back().x + radius + 1.0)));

  std::vector<Segment> window;
  std::size_t lo = 0, hi = 0;
  for (int cx = col_begin; cx <= col_end; ++cx) {
    const double reach_left = cx - radius - 1.0;
    const double reach_right = cx + 1.0 + radius;
    while (lo < n_seg && pts[lo + 1].x < reach_left) ++lo;
    if (hi < lo) hi = lo;
    while (hi < n_seg && pts[hi].x <= reach_right) ++hi;
    if (lo >= hi) continue;

    window.clear();
    double min_y = std::numeric_limits<double>::infinity();
    double max_y = -std::numeric_limits<double>::infinity();
    for (std::size_t s = lo; s < hi; ++s) {
      window.push_back(Segment{pts[s].x, pts[s].y, pts[s + 1].x, pts[s + 1].y});
      min_y = std::min(min_y, std::min(pts[s].y, pts[s + 1].y));
      max_y = std::max(max_y, std::max(pts[s].y, pts[s + 1].y));
    }
    const int row_begin = std::max(0, static_cast<int>(std::floor(min_y - radius - 1.0)));
    const int row_end = std::min(image.height - 1, static_cast<int>(std::ceil(max_y + radius + 1.0)));
    for (int cy = row_begin; cy <= row_end; ++cy)
      apply_coverage(image, mask, cx, cy,
                     pixel_coverage(cx, cy, window.data(), window.size(), radius_sq));
  }
}

}  // namespace

Image Image::white(int width, int height) {
  Image image;
  image.width = width;
  image.height = height;
  image.pixels.assign(static_cast<std::size_t>(width) * height * 3, 255);
  return image;
}

Mask Mask::black(int width, int height) {
  Mask mask;
  mask.width = width;
  mask.height = height;
  mask.pixels.assign(static_cast<std::size_t>(width) * height, 0);
  return mask;
}

Rgb grid_rgb(geometry::GridColor color) {
  switch (color) {
    case geometry::GridColor::red: return Rgb{255, 0, 0};
    case geometry::GridColor::green: return Rgb{0, 128, 0};
    case geometry::GridColor::black: return Rgb{0, 0, 0};
    case geometry::GridColor::gray: return Rgb{128, 128, 128};
  }
  return Rgb{255, 0, 0};
}

void render_grid(Image& image, const geometry::LeadLayout& layout,
                 const geometry::CalibrationModel& cal, const geometry::RenderParams& params) {
  if (!params.grid_visible) return;

  const geometry::PixelBox& first = layout.leads.front().region;
  const geometry::PixelBox& last = layout.leads.back().region;
  const int bx0 = first.x;
  const int bx1 = std::min(first.x + first.w, image.width);
  const int by0 = first.y;
  const int by1 = std::min(last.y + last.h, image.height);
  if (bx0 >= bx1 || by0 >= by1) return;

  // Per-column and per-row marks: 0 none, 1 minor, 2 major. A pixel's class is
  // the max of its column and row marks, so crossings blend exactly once.
  std::vector<std::uint8_t> col_mark(static_cast<std::size_t>(image.width), 0);
  std::vector<std::uint8_t> row_mark(static_cast<std::size_t>(image.height), 0);
  auto mark_lines = [&](std::vector<std::uint8_t>& marks, int origin, int limit) {
    for (int k = 0;; ++k) {
      const int pos = static_cast<int>(std::lround(origin + k * cal.px_per_mm));
      if (pos >= limit) break;
      const bool major = (k % 5 == 0);
      if (major) {
        marks[static_cast<std::size_t>(pos)] = 2;
        if (pos + 1 < limit) marks[static_cast<std::size_t>(pos + 1)] = 2;
      } else if (marks[static_cast<std::size_t>(pos)] == 0) {
        marks[static_cast<std::size_t>(pos)] = 1;
      }
    }
  };
  mark_lines(col_mark, bx0, bx1);
  mark_lines(row_mark, by0, by1);

  const Rgb rgb = grid_rgb(params.grid_color);
  const double color[3] = {static_cast<double>(rgb.r), static_cast<double>(rgb.g),
                           static_cast<double>(rgb.b)};
  for (int y = by0; y < by1; ++y) {
    const std::uint8_t rm = row_mark[static_cast<std::size_t>(y)];
    std::uint8_t* row = image.at(bx0, y);
    for (int x = bx0; x < bx1; ++x, row += 3) {
      const std::uint8_t mark = std::max(col_mark[static_cast<std::size_t>(x)], rm);
      if (mark == 0) continue;
      const double alpha = mark == 2 ? 1.0 : params.grid_opacity;
      const double keep = 1.0 - alpha;
      row[0] = static_cast<std::uint8_t>(std::lround(keep * row[0] + alpha * color[0]));
      row[1] = static_cast<std::uint8_t>(std::lround(keep * row[1] + alpha * color[1]));
      row[2] = static_cast<std::uint8_t>(std::lround(keep * row[2] + alpha * color[2]));
    }
  }
}

ClippedPath clip_to_region(const std::vector<geometry::PointF>& path,
                           const geometry::PixelBox& region) {
  ClippedPath out;
  out.path = path;
  const double y_min = region.y + 1;
  const double y_max = region.y + region.h - 1;
  for (auto& p : out.path) {
    if (p.y < y_min) {
      p.y = y_min;
      ++out.clipped_samples;
    } else if (p.y > y_max) {
      p.y = y_max;
      ++out.clipped_samples;
    }
  }
  return out;
}

void draw_trace(Image& image, Mask* mask, const std::vector<geometry::PointF>& path,
                double stroke_width, const geometry::PixelBox& bounds) {
  if (path.empty()) return;
  if (stroke_width <= 0.0)
    throw_error(ErrorCode::non_positive_width, "stroke width must be positive");
  const double tol = 2.0;
  const double x_lo = bounds.x - tol, x_hi = bounds.x + bounds.w + tol;
  const double y_lo = bounds.y - tol, y_hi = bounds.y + bounds.h + tol;
  for (std::size_t i = 0; i < path.size(); ++i) {
    const auto& p = path[i];
    if (!(p.x >= x_lo && p.x <= x_hi && p.y >= y_lo && p.y <= y_hi))
      throw_error(ErrorCode::path_out_of_bounds,
                  "path point " + std::to_string(i) + " at (" + std::to_string(p.x) + ", " +
                      std::to_string(p.y) + ") escapes the lead region");
    if (i > 0 && !(p.x > path[i - 1].x))
      throw_error(ErrorCode::path_out_of_bounds, "path x must be strictly increasing");
  }
  stroke_monotonic(image, mask, path, stroke_width / 2.0);
}

void draw_calibration_pulse(Image& image, const geometry::LeadRegion& lead,
                            const geometry::CalibrationModel& cal, double stroke_width) {
  const double slot_x0 = lead.region.x;
  const double slot_w = lead.trace_x0 - lead.region.x;
  const double baseline = lead.baseline_y;
  const double top_width = std::min(0.2 * cal.px_per_sec, slot_w - 20.0);
  const double lead_in = (slot_w - top_width) / 2.0;
  const double rise_x = slot_x0 + lead_in;
  const double fall_x = rise_x + top_width;
  const double top_y = baseline - cal.px_per_mv;

  const std::vector<geometry::PointF> path = {
      {slot_x0, baseline}, {rise_x, baseline}, {rise_x, top_y},
      {fall_x, top_y},     {fall_x, baseline}, {slot_x0 + slot_w, baseline},
  };
  stroke_small(image, nullptr, path, stroke_width / 2.0);
}

geometry::PixelBox render_text(Image& image, std::string_view text, int x, int y,
                               int glyph_height_px) {
  if (text.empty()) throw_error(ErrorCode::empty_text, "cannot render empty text");
  if (glyph_height_px < kGlyphRows)
    throw_error(ErrorCode::non_positive_width,
                "glyph height " + std::to_string(glyph_height_px) + " below minimum 7");
  const int advance = glyph_advance(glyph_height_px);
  const int ink_width = advance - glyph_spacing(glyph_height_px);

  const int total_width = static_cast<int>(text.size()) * advance;
  if (x < 0 || y < 0 || x + total_width > image.width || y + glyph_height_px > image.height)
    throw_error(ErrorCode::layout_overflow, "text box escapes the canvas");

  int pen_x = x;
  for (char c : text) {
    const Glyph* glyph = find_glyph(c);
    if (glyph == nullptr)
      throw_error(ErrorCode::unsupported_glyph, std::string("no glyph for '") + c + "'");
    for (int r = 0; r < glyph_height_px; ++r) {
      const int src_row = r * kGlyphRows / glyph_height_px;
      const std::uint8_t bits = glyph->rows[static_cast<std::size_t>(src_row)];
      if (bits == 0) continue;
      for (int c_px = 0; c_px < ink_width; ++c_px) {
        const int src_col = c_px * kGlyphCols / ink_width;
        if (bits & (1u << (kGlyphCols - 1 - src_col))) {
          std::uint8_t* p = image.at(pen_x + c_px, y + r);
          p[0] = p[1] = p[2] = 0;
        }
      }
    }
    pen_x += advance;
  }
  return geometry::PixelBox{x, y, total_width, glyph_height_px};
}

geometry::PixelBox render_header(Image& image, const geometry::RenderParams& params, int fs_hz,
                                 const geometry::CanvasSpec& canvas) {
  const std::string text = "Speed: " + std::to_string(params.paper_speed_mm_s) +
                           " mm/s   Gain: " + std::to_string(params.voltage_scale_mm_mv) +
                           " mm/mV   Fs: " + std::to_string(fs_hz) + " Hz";
  const int height = 40;
  const int width = static_cast<int>(text.size()) * glyph_advance(height);
  const int x = (canvas.width_px - width) / 2;
  const int y = 30;
  return render_text(image, text, x, y, height);
}

}  // namespace ecgen::render
