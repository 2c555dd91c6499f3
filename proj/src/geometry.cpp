#include "ecgen/geometry.hpp"

#include <string>

#include "ecgen/errors.hpp"

namespace ecgen::geometry {

const char* grid_color_name(GridColor color) {
  switch (color) {
    case GridColor::red: return "red";
    case GridColor::green: return "green";
    case GridColor::black: return "black";
    case GridColor::gray: return "gray";
  }
  return "red";
}

CalibrationModel compute_calibration(const CanvasSpec& canvas, const RenderParams& params,
                                     double duration_s) {
  const int trace_width =
      canvas.width_px - canvas.margin_left_px - canvas.margin_right_px - canvas.pulse_slot_px;
  if (trace_width <= 0)
    throw_error(ErrorCode::non_positive_width,
                "usable trace width " + std::to_string(trace_width) + " px");
  CalibrationModel cal;
  cal.px_per_mm = static_cast<double>(trace_width) /
                  (static_cast<double>(params.paper_speed_mm_s) * duration_s);
  cal.px_per_sec = cal.px_per_mm * params.paper_speed_mm_s;
  cal.px_per_mv = cal.px_per_mm * params.voltage_scale_mm_mv;
  cal.seconds_per_mm = 1.0 / params.paper_speed_mm_s;
  return cal;
}

LeadLayout compute_layout(const CanvasSpec& canvas) {
  const int usable_h = canvas.height_px - canvas.margin_top_px - canvas.margin_bottom_px -
                       (kLeadCount - 1) * canvas.lead_gap_px;
  const int region_h = usable_h >= 0 ? usable_h / kLeadCount : -1;
  if (region_h <= 0)
    throw_error(ErrorCode::layout_overflow,
                "canvas height " + std::to_string(canvas.height_px) +
                    " px cannot fit 12 lead regions");
  const int region_x = canvas.margin_left_px;
  const int region_w = canvas.width_px - canvas.margin_left_px - canvas.margin_right_px;
  if (region_w <= canvas.pulse_slot_px)
    throw_error(ErrorCode::non_positive_width, "no trace width after the pulse slot");

  LeadLayout layout;
  layout.region_height_px = region_h;
  for (int i = 0; i < kLeadCount; ++i) {
    LeadRegion& lead = layout.leads[static_cast<std::size_t>(i)];
    const int top = canvas.margin_top_px + i * (region_h + canvas.lead_gap_px);
    lead.region = PixelBox{region_x, top, region_w, region_h};
    lead.baseline_y = top + region_h / 2;
    lead.trace_x0 = region_x + canvas.pulse_slot_px;
    lead.name_x = region_x + 8;
    lead.name_y = top + 4;
  }
  return layout;
}

RenderParams sample_params(rng::Rng& rng) {
  return sample_params(rng, ParamDomains{});
}

RenderParams sample_params(rng::Rng& rng, const ParamDomains& domains) {
  RenderParams params;
  params.paper_speed_mm_s = domains.paper_speeds[rng.next_index(domains.paper_speeds.size())];
  params.voltage_scale_mm_mv =
      domains.voltage_scales[rng.next_index(domains.voltage_scales.size())];
  params.grid_visible = domains.grid_visibility[rng.next_index(domains.grid_visibility.size())];
  params.grid_color = domains.grid_colors[rng.next_index(domains.grid_colors.size())];
  params.stroke_width_px = rng.next_real(domains.stroke_width_min, domains.stroke_width_max);
  params.grid_opacity = 0.8;
  return params;
}

std::vector<PointF> signal_to_path(const std::vector<double>& lead_signal,
                                   const CalibrationModel& cal, const LeadRegion& lead,
                                   double fs_hz) {
  std::vector<PointF> path(lead_signal.size());
  for (std::size_t i = 0; i < lead_signal.size(); ++i) {
    path[i].x = lead.trace_x0 + static_cast<double>(i) / fs_hz * cal.px_per_sec;
    path[i].y = lead.baseline_y - lead_signal[i] * cal.px_per_mv;
  }
  return path;
}

}  // namespace ecgen::geometry
