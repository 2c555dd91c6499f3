#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "ecgen/rng.hpp"

namespace ecgen::geometry {

enum class GridColor { red, green, black, gray };

const char* grid_color_name(GridColor color);

struct CanvasSpec {
  int dpi = 300;
  int width_px = 2481;   // A4 portrait at 300 dpi, 210 mm rounded up
  int height_px = 3507;  // 297 mm
  int margin_top_px = 100;
  int margin_bottom_px = 100;
  int margin_left_px = 150;
  int margin_right_px = 150;
  int lead_gap_px = 30;
  int pulse_slot_px = 70;
};

struct RenderParams {
  int paper_speed_mm_s = 25;
  int voltage_scale_mm_mv = 10;
  bool grid_visible = true;
  GridColor grid_color = GridColor::red;
  double grid_opacity = 0.8;
  double stroke_width_px = 2.5;
  std::uint64_t rng_seed = 0;
};

struct CalibrationModel {
  double px_per_mm = 0.0;
  double px_per_sec = 0.0;
  double px_per_mv = 0.0;
  double seconds_per_mm = 0.0;
};

struct PixelBox {
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;

  bool operator==(const PixelBox&) const = default;
};

struct LeadRegion {
  PixelBox region;
  int baseline_y = 0;
  int trace_x0 = 0;
  int name_x = 0;
  int name_y = 0;
};

inline constexpr int kLeadCount = 12;

struct LeadLayout {
  int region_height_px = 0;
  std::array<LeadRegion, kLeadCount> leads{};
};

struct PointF {
  double x = 0.0;
  double y = 0.0;
};

// px_per_mm is defined by fitting duration_s * paper_speed millimetres of
// trace into the usable width (width - side margins - pulse slot); the same
// scale is used vertically so grid boxes stay square. Throws NonPositiveWidth.
CalibrationModel compute_calibration(const CanvasSpec& canvas, const RenderParams& params,
                                     double duration_s);

// 12 stacked lead rows. Throws LayoutOverflow when the canvas cannot fit them.
LeadLayout compute_layout(const CanvasSpec& canvas);

// Candidate values for each randomized parameter; defaults are the full
// domains. Config may restrict any of them to a subset (singletons pin).
struct ParamDomains {
  std::vector<int> paper_speeds = {25, 50};
  std::vector<int> voltage_scales = {5, 10};
  std::vector<bool> grid_visibility = {true, false};
  std::vector<GridColor> grid_colors = {GridColor::red, GridColor::green, GridColor::black,
                                        GridColor::gray};
  double stroke_width_min = 2.0;
  double stroke_width_max = 3.0;
};

// Exactly 5 draws in fixed order: speed, scale, grid visibility, grid color,
// stroke width. rng_seed is left for the caller to fill in.
RenderParams sample_params(rng::Rng& rng);
RenderParams sample_params(rng::Rng& rng, const ParamDomains& domains);

// Point i = (trace_x0 + i/fs * px_per_sec, baseline_y - v_i * px_per_mv).
std::vector<PointF> signal_to_path(const std::vector<double>& lead_signal,
                                   const CalibrationModel& cal, const LeadRegion& lead,
                                   double fs_hz);

}  // namespace ecgen::geometry
