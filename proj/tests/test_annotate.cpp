#include <doctest.h>

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "ecgen/annotate.hpp"
#include "ecgen/errors.hpp"
#include "ecgen/geometry.hpp"
#include "ecgen/version.hpp"

using namespace ecgen;
using annotate::YoloRecord;
using geometry::CanvasSpec;
using geometry::PixelBox;

namespace {

std::vector<YoloRecord> full_page_records() {
  const CanvasSpec canvas;
  const auto layout = geometry::compute_layout(canvas);
  std::vector<YoloRecord> records;
  for (const auto& lead : layout.leads) records.push_back(annotate::to_yolo(lead.region, 0, canvas));
  for (int i = 0; i < 12; ++i) {
    const auto& lead = layout.leads[static_cast<std::size_t>(i)];
    records.push_back(
        annotate::to_yolo(PixelBox{lead.name_x, lead.name_y, 3 * 34, 40}, i + 1, canvas));
  }
  return records;
}

annotate::SampleMetadata sample_meta() {
  annotate::SampleMetadata meta;
  meta.record_id = "00123";
  meta.split = "train";
  meta.age = 61.0;
  meta.sex = "female";
  meta.weight = 70.5;
  meta.scp_codes = {{"NORM", 100.0}, {"SR", 0.0}};
  meta.superclasses = {"NORM"};
  meta.px_per_mm = 8.444;
  meta.px_per_sec = 211.1;
  meta.px_per_mv = 84.44;
  meta.canvas_width_px = 2481;
  meta.canvas_height_px = 3507;
  meta.stroke_width_px = 2.662233445566;
  meta.clipped_sample_count = 17;
  meta.generator_version = kGeneratorVersion;
  meta.rng_seed = 18446744073709551615ull;  // max uint64 must survive exactly
  const auto layout = geometry::compute_layout(CanvasSpec{});
  const char* names[12] = {"I",  "II", "III", "aVR", "aVL", "aVF",
                           "V1", "V2", "V3",  "V4",  "V5",  "V6"};
  for (int i = 0; i < 12; ++i) {
    const auto& lead = layout.leads[static_cast<std::size_t>(i)];
    meta.leads.push_back(annotate::LeadAnnotation{
        names[i], lead.baseline_y, lead.region,
        PixelBox{lead.name_x, lead.name_y, static_cast<int>(std::string(names[i]).size()) * 34,
                 40}});
  }
  return meta;
}

}  // namespace

TEST_SUITE("annotate") {
  TEST_CASE("to_yolo normalizes the frozen lead region exactly") {
    const CanvasSpec canvas;
    const auto rec = annotate::to_yolo(PixelBox{150, 100, 2181, 248}, 0, canvas);
    CHECK(rec.class_id == 0);
    // (150 + 2181/2) / 2481, (100 + 248/2) / 3507, 2181/2481, 248/3507.
    CHECK(rec.x_center == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(rec.y_center == doctest::Approx(224.0 / 3507.0).epsilon(1e-12));
    CHECK(rec.width == doctest::Approx(2181.0 / 2481.0).epsilon(1e-12));
    CHECK(rec.height == doctest::Approx(248.0 / 3507.0).epsilon(1e-12));
  }

  TEST_CASE("to_yolo rejects degenerate boxes and clamps to the unit square") {
    const CanvasSpec canvas;
    try {
      annotate::to_yolo(PixelBox{10, 10, 0, 5}, 0, canvas);
      FAIL("expected DegenerateBox");
    } catch (const Error& err) {
      CHECK(err.code() == ErrorCode::degenerate_box);
    }
    CHECK_THROWS_AS(annotate::to_yolo(PixelBox{10, 10, 5, -1}, 0, canvas), Error);

    // A box flush with the canvas edge stays inside [0, 1].
    const auto rec = annotate::to_yolo(PixelBox{0, 0, 2481, 3507}, 3, canvas);
    CHECK(rec.x_center == 0.5);
    CHECK(rec.y_center == 0.5);
    CHECK(rec.width <= 1.0);
    CHECK(rec.height <= 1.0);
  }

  TEST_CASE("emit_yolo_file writes 24 fixed-precision lines") {
    const auto records = full_page_records();
    const auto text = annotate::emit_yolo_file(records);

    std::vector<std::string> lines;
    std::size_t start = 0;
    while (start < text.size()) {
      const auto end = text.find('\n', start);
      REQUIRE(end != std::string::npos);  // trailing newline required
      lines.push_back(text.substr(start, end - start));
      start = end + 1;
    }
    REQUIRE(lines.size() == 24);
    CHECK(lines[0] == "0 0.500000 0.063872 0.879081 0.070716");
    for (int i = 0; i < 12; ++i) CHECK(lines[static_cast<std::size_t>(i)].front() == '0');
    for (int i = 12; i < 24; ++i) {
      const auto space = lines[static_cast<std::size_t>(i)].find(' ');
      CHECK(lines[static_cast<std::size_t>(i)].substr(0, space) == std::to_string(i - 11));
    }
    // Every value is space-separated with exactly 6 decimals.
    for (const auto& line : lines) {
      int fields = 1;
      for (char c : line)
        if (c == ' ') ++fields;
      CHECK(fields == 5);
      auto dot = line.find('.');
      while (dot != std::string::npos) {
        const auto next_sep = line.find(' ', dot);
        const auto digits = (next_sep == std::string::npos ? line.size() : next_sep) - dot - 1;
        CHECK(digits == 6);
        dot = line.find('.', dot + 1);
      }
    }
  }

  TEST_CASE("emit_yolo_file enforces the 24-record contract") {
    auto records = full_page_records();
    records.pop_back();
    try {
      annotate::emit_yolo_file(records);
      FAIL("expected CountMismatch");
    } catch (const Error& err) {
      CHECK(err.code() == ErrorCode::count_mismatch);
    }
  }

  TEST_CASE("yolo emit/parse round-trip") {
    const auto records = full_page_records();
    const auto parsed = annotate::parse_yolo_file(annotate::emit_yolo_file(records));
    REQUIRE(parsed.size() == records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
      CHECK(parsed[i].class_id == records[i].class_id);
      CHECK(parsed[i].x_center == doctest::Approx(records[i].x_center).epsilon(1e-6));
      CHECK(parsed[i].y_center == doctest::Approx(records[i].y_center).epsilon(1e-6));
      CHECK(parsed[i].width == doctest::Approx(records[i].width).epsilon(1e-6));
      CHECK(parsed[i].height == doctest::Approx(records[i].height).epsilon(1e-6));
    }
    CHECK_THROWS_AS(annotate::parse_yolo_file("0 0.5 0.5 0.1\n"), Error);
  }

  TEST_CASE("emit_signals validates the 12x5000 shape") {
    std::vector<std::vector<double>> good(12, std::vector<double>(5000, 0.25));
    CHECK(annotate::emit_signals(good).size() == 480128);

    std::vector<std::vector<double>> short_lead = good;
    short_lead[4].resize(4999);
    try {
      annotate::emit_signals(short_lead);
      FAIL("expected ShapeMismatch");
    } catch (const Error& err) {
      CHECK(err.code() == ErrorCode::shape_mismatch);
    }
    CHECK_THROWS_AS(annotate::emit_signals({}), Error);

    auto poisoned = good;
    poisoned[0][99] = std::numeric_limits<double>::quiet_NaN();
    try {
      annotate::emit_signals(poisoned);
      FAIL("expected NonFinite");
    } catch (const Error& err) {
      CHECK(err.code() == ErrorCode::non_finite);
    }
  }

  TEST_CASE("metadata serializes with the documented key order") {
    const auto json = annotate::emit_metadata(sample_meta());
    CHECK(json.back() == '\n');
    const char* keys[] = {"\"record_id\"",         "\"split\"",
                          "\"age\"",               "\"sex\"",
                          "\"height\"",            "\"weight\"",
                          "\"scp_codes\"",         "\"superclasses\"",
                          "\"baseline_drift_level\"", "\"static_noise_level\"",
                          "\"sampling_rate_hz\"",  "\"duration_s\"",
                          "\"paper_speed_mm_s\"",  "\"voltage_scale_mm_mv\"",
                          "\"grid_visible\"",      "\"grid_color\"",
                          "\"grid_opacity\"",      "\"stroke_width_px\"",
                          "\"px_per_mm\"",         "\"px_per_sec\"",
                          "\"px_per_mv\"",         "\"canvas\"",
                          "\"leads\"",             "\"clipped_sample_count\"",
                          "\"generator_version\"", "\"rng_seed\""};
    std::size_t pos = 0;
    for (const char* key : keys) {
      const auto found = json.find(key, pos);
      CAPTURE(key);
      REQUIRE(found != std::string::npos);
      pos = found;
    }
    // Absent optionals serialize as null; floats carry at most 6 decimals.
    CHECK(json.find("\"height\": null") != std::string::npos);
    CHECK(json.find("2.662233") != std::string::npos);
    CHECK(json.find("2.6622334") == std::string::npos);
    CHECK(json.find("\"rng_seed\": 18446744073709551615") != std::string::npos);
  }

  TEST_CASE("metadata emit/parse is the identity") {
    auto meta = sample_meta();
    meta.stroke_width_px = 2.662233;  // already at emit precision
    const auto back = annotate::parse_metadata(annotate::emit_metadata(meta));
    CHECK(back == meta);
    // And the round-trip is byte-stable.
    CHECK(annotate::emit_metadata(back) == annotate::emit_metadata(meta));
  }

  TEST_CASE("parse_metadata rejects malformed documents") {
    CHECK_THROWS_AS(annotate::parse_metadata("not json"), Error);
    CHECK_THROWS_AS(annotate::parse_metadata("{}"), Error);
  }
}
