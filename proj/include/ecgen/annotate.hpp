#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ecgen/geometry.hpp"

namespace ecgen::annotate {

struct YoloRecord {
  int class_id = 0;
  double x_center = 0.0;
  double y_center = 0.0;
  double width = 0.0;
  double height = 0.0;

  bool operator==(const YoloRecord&) const = default;
};

// Class 0 marks a lead waveform region; classes 1..12 are the lead names in
// canonical order (I -> 1 ... V6 -> 12).
YoloRecord to_yolo(const geometry::PixelBox& box, int class_id,
                   const geometry::CanvasSpec& canvas);

// 24 lines: the 12 class-0 regions in lead order, then classes 1..12.
// Space-separated, 6 decimals, trailing newline. Throws CountMismatch.
std::string emit_yolo_file(const std::vector<YoloRecord>& records);

std::vector<YoloRecord> parse_yolo_file(const std::string& text);

// NPY v1.0 bytes for the 12x5000 normalized signal matrix.
std::vector<std::uint8_t> emit_signals(const std::vector<std::vector<double>>& normalized);

struct LeadAnnotation {
  std::string name;
  int baseline_y = 0;
  geometry::PixelBox region_box;
  geometry::PixelBox name_box;

  bool operator==(const LeadAnnotation&) const = default;
};

struct SampleMetadata {
  std::string record_id;
  std::string split;
  std::optional<double> age;
  std::string sex = "unknown";
  std::optional<double> height;
  std::optional<double> weight;
  std::vector<std::pair<std::string, double>> scp_codes;
  std::vector<std::string> superclasses;
  int baseline_drift_level = 0;
  int static_noise_level = 0;
  double sampling_rate_hz = 500.0;
  double duration_s = 10.0;
  int paper_speed_mm_s = 25;
  int voltage_scale_mm_mv = 10;
  bool grid_visible = true;
  std::string grid_color = "red";
  double grid_opacity = 0.8;
  double stroke_width_px = 2.5;
  double px_per_mm = 0.0;
  double px_per_sec = 0.0;
  double px_per_mv = 0.0;
  int canvas_dpi = 300;
  int canvas_width_px = 0;
  int canvas_height_px = 0;
  std::vector<LeadAnnotation> leads;
  std::int64_t clipped_sample_count = 0;
  std::string generator_version;
  std::uint64_t rng_seed = 0;

  bool operator==(const SampleMetadata&) const = default;
};

// UTF-8 JSON with a fixed key order (documented in the README schema section);
// floats are rounded to 6 fractional digits before insertion, absent optionals
// serialize as null.
std::string emit_metadata(const SampleMetadata& meta);

SampleMetadata parse_metadata(const std::string& json_text);

}  // namespace ecgen::annotate
