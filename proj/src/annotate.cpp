#include "ecgen/annotate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "ecgen/errors.hpp"
#include "ecgen/npy.hpp"

namespace ecgen::annotate {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr double kClampTolerance = 1e-9;

double clamp_unit(double v, const char* what) {
  if (v < -kClampTolerance || v > 1.0 + kClampTolerance)
    throw_error(ErrorCode::degenerate_box,
                std::string(what) + " = " + std::to_string(v) + " escapes [0,1]");
  return std::clamp(v, 0.0, 1.0);
}

double round6(double v) { return std::round(v * 1e6) / 1e6; }

ordered_json json_optional(const std::optional<double>& v) {
  if (!v) return nullptr;
  return round6(*v);
}

ordered_json json_box(const geometry::PixelBox& box) {
  ordered_json j;
  j["x"] = box.x;
  j["y"] = box.y;
  j["w"] = box.w;
  j["h"] = box.h;
  return j;
}

geometry::PixelBox box_from_json(const ordered_json& j) {
  return geometry::PixelBox{j.at("x").get<int>(), j.at("y").get<int>(), j.at("w").get<int>(),
                            j.at("h").get<int>()};
}

}  // namespace

YoloRecord to_yolo(const geometry::PixelBox& box, int class_id,
                   const geometry::CanvasSpec& canvas) {
  if (box.w <= 0 || box.h <= 0)
    throw_error(ErrorCode::degenerate_box,
                "box " + std::to_string(box.w) + "x" + std::to_string(box.h) +
                    " has a non-positive side");
  const double w = canvas.width_px;
  const double h = canvas.height_px;
  YoloRecord rec;
  rec.class_id = class_id;
  rec.x_center = clamp_unit((box.x + box.w / 2.0) / w, "x_center");
  rec.y_center = clamp_unit((box.y + box.h / 2.0) / h, "y_center");
  rec.width = clamp_unit(box.w / w, "width");
  rec.height = clamp_unit(box.h / h, "height");
  return rec;
}

std::string emit_yolo_file(const std::vector<YoloRecord>& records) {
  std::vector<const YoloRecord*> regions;
  std::vector<const YoloRecord*> names(13, nullptr);
  for (const auto& rec : records) {
    if (rec.class_id == 0) {
      regions.push_back(&rec);
    } else if (rec.class_id >= 1 && rec.class_id <= 12) {
      if (names[static_cast<std::size_t>(rec.class_id)] != nullptr)
        throw_error(ErrorCode::count_mismatch,
                    "duplicate name class " + std::to_string(rec.class_id));
      names[static_cast<std::size_t>(rec.class_id)] = &rec;
    } else {
      throw_error(ErrorCode::count_mismatch, "class id " + std::to_string(rec.class_id));
    }
  }
  if (regions.size() != 12)
    throw_error(ErrorCode::count_mismatch,
                std::to_string(regions.size()) + " region records, expected 12");
  for (int c = 1; c <= 12; ++c)
    if (names[static_cast<std::size_t>(c)] == nullptr)
      throw_error(ErrorCode::count_mismatch, "missing name class " + std::to_string(c));

  std::string out;
  out.reserve(24 * 48);
  char line[128];
  auto append = [&](const YoloRecord& rec) {
    std::snprintf(line, sizeof(line), "%d %.6f %.6f %.6f %.6f\n", rec.class_id, rec.x_center,
                  rec.y_center, rec.width, rec.height);
    out += line;
  };
  for (const auto* rec : regions) append(*rec);
  for (int c = 1; c <= 12; ++c) append(*names[static_cast<std::size_t>(c)]);
  return out;
}

std::vector<YoloRecord> parse_yolo_file(const std::string& text) {
  std::vector<YoloRecord> records;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    YoloRecord rec;
    std::istringstream fields(line);
    if (!(fields >> rec.class_id >> rec.x_center >> rec.y_center >> rec.width >> rec.height))
      throw_error(ErrorCode::unparseable_row, "bad label line: '" + line + "'");
    std::string extra;
    if (fields >> extra)
      throw_error(ErrorCode::unparseable_row, "trailing tokens on label line: '" + line + "'");
    records.push_back(rec);
  }
  return records;
}

std::vector<std::uint8_t> emit_signals(const std::vector<std::vector<double>>& normalized) {
  if (normalized.size() != 12)
    throw_error(ErrorCode::shape_mismatch,
                std::to_string(normalized.size()) + " rows, expected 12");
  for (const auto& row : normalized) {
    if (row.size() != 5000)
      throw_error(ErrorCode::shape_mismatch,
                  std::to_string(row.size()) + " samples in a lead, expected 5000");
    for (double v : row)
      if (!std::isfinite(v)) throw_error(ErrorCode::non_finite, "non-finite sample in signals");
  }
  return npy::write_f64_2d(normalized);
}

std::string emit_metadata(const SampleMetadata& meta) {
  if (meta.leads.size() != 12)
    throw_error(ErrorCode::shape_mismatch,
                std::to_string(meta.leads.size()) + " lead entries, expected 12");
  ordered_json j;
  j["record_id"] = meta.record_id;
  j["split"] = meta.split;
  j["age"] = json_optional(meta.age);
  j["sex"] = meta.sex;
  j["height"] = json_optional(meta.height);
  j["weight"] = json_optional(meta.weight);
  ordered_json scp = ordered_json::object();
  for (const auto& [code, likelihood] : meta.scp_codes) scp[code] = round6(likelihood);
  j["scp_codes"] = std::move(scp);
  j["superclasses"] = meta.superclasses;
  j["baseline_drift_level"] = meta.baseline_drift_level;
  j["static_noise_level"] = meta.static_noise_level;
  j["sampling_rate_hz"] = round6(meta.sampling_rate_hz);
  j["duration_s"] = round6(meta.duration_s);
  j["paper_speed_mm_s"] = meta.paper_speed_mm_s;
  j["voltage_scale_mm_mv"] = meta.voltage_scale_mm_mv;
  j["grid_visible"] = meta.grid_visible;
  j["grid_color"] = meta.grid_color;
  j["grid_opacity"] = round6(meta.grid_opacity);
  j["stroke_width_px"] = round6(meta.stroke_width_px);
  j["px_per_mm"] = round6(meta.px_per_mm);
  j["px_per_sec"] = round6(meta.px_per_sec);
  j["px_per_mv"] = round6(meta.px_per_mv);
  ordered_json canvas;
  canvas["dpi"] = meta.canvas_dpi;
  canvas["width_px"] = meta.canvas_width_px;
  canvas["height_px"] = meta.canvas_height_px;
  j["canvas"] = std::move(canvas);
  ordered_json leads = ordered_json::array();
  for (const auto& lead : meta.leads) {
    ordered_json l;
    l["name"] = lead.name;
    l["baseline_y"] = lead.baseline_y;
    l["region_box"] = json_box(lead.region_box);
    l["name_box"] = json_box(lead.name_box);
    leads.push_back(std::move(l));
  }
  j["leads"] = std::move(leads);
  j["clipped_sample_count"] = meta.clipped_sample_count;
  j["generator_version"] = meta.generator_version;
  j["rng_seed"] = meta.rng_seed;
  return j.dump(2) + "\n";
}

SampleMetadata parse_metadata(const std::string& json_text) {
  ordered_json j;
  try {
    j = ordered_json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw_error(ErrorCode::io_error, std::string("metadata JSON: ") + e.what());
  }
  SampleMetadata meta;
  try {
    meta.record_id = j.at("record_id").get<std::string>();
    meta.split = j.at("split").get<std::string>();
    if (!j.at("age").is_null()) meta.age = j.at("age").get<double>();
    meta.sex = j.at("sex").get<std::string>();
    if (!j.at("height").is_null()) meta.height = j.at("height").get<double>();
    if (!j.at("weight").is_null()) meta.weight = j.at("weight").get<double>();
    for (const auto& [code, likelihood] : j.at("scp_codes").items())
      meta.scp_codes.emplace_back(code, likelihood.get<double>());
    meta.superclasses = j.at("superclasses").get<std::vector<std::string>>();
    meta.baseline_drift_level = j.at("baseline_drift_level").get<int>();
    meta.static_noise_level = j.at("static_noise_level").get<int>();
    meta.sampling_rate_hz = j.at("sampling_rate_hz").get<double>();
    meta.duration_s = j.at("duration_s").get<double>();
    meta.paper_speed_mm_s = j.at("paper_speed_mm_s").get<int>();
    meta.voltage_scale_mm_mv = j.at("voltage_scale_mm_mv").get<int>();
    meta.grid_visible = j.at("grid_visible").get<bool>();
    meta.grid_color = j.at("grid_color").get<std::string>();
    meta.grid_opacity = j.at("grid_opacity").get<double>();
    meta.stroke_width_px = j.at("stroke_width_px").get<double>();
    meta.px_per_mm = j.at("px_per_mm").get<double>();
    meta.px_per_sec = j.at("px_per_sec").get<double>();
    meta.px_per_mv = j.at("px_per_mv").get<double>();
    meta.canvas_dpi = j.at("canvas").at("dpi").get<int>();
    meta.canvas_width_px = j.at("canvas").at("width_px").get<int>();
    meta.canvas_height_px = j.at("canvas").at("height_px").get<int>();
    for (const auto& l : j.at("leads")) {
      LeadAnnotation lead;
      lead.name = l.at("name").get<std::string>();
      lead.baseline_y = l.at("baseline_y").get<int>();
      lead.region_box = box_from_json(l.at("region_box"));
      lead.name_box = box_from_json(l.at("name_box"));
      meta.leads.push_back(std::move(lead));
    }
    meta.clipped_sample_count = j.at("clipped_sample_count").get<std::int64_t>();
    meta.generator_version = j.at("generator_version").get<std::string>();
    meta.rng_seed = j.at("rng_seed").get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw_error(ErrorCode::io_error, std::string("metadata JSON: ") + e.what());
  }
  return meta;
}

}  // namespace ecgen::annotate
