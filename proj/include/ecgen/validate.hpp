#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "ecgen/annotate.hpp"
#include "ecgen/geometry.hpp"
#include "ecgen/render.hpp"

namespace ecgen::validate {

// Product-moment correlation. Throws LengthMismatch (also requires >= 2
// samples) and ConstantSeries.
double pearson(const std::vector<double>& a, const std::vector<double>& b);

// Mean of squared differences. Throws LengthMismatch.
double mse(const std::vector<double>& a, const std::vector<double>& b);

// Intersection area over union area; 0 for disjoint boxes.
double iou(const geometry::PixelBox& a, const geometry::PixelBox& b);

// Rebuild the rendering geometry a stored sample used, from its metadata
// alone. trace_x0 is recovered as region right edge minus the trace span.
geometry::CalibrationModel calibration_from_metadata(const annotate::SampleMetadata& meta);
geometry::LeadLayout layout_from_metadata(const annotate::SampleMetadata& meta);

// Inverse of the trace renderer: per lead, per pixel column, the mean white
// row center maps back through (baseline_y - y) / px_per_mv; empty columns
// are filled by linear interpolation (edges extended constant) and the column
// series is resampled onto the sample clock. Throws EmptyLead.
std::vector<std::vector<double>> extract_from_mask(const render::Mask& mask,
                                                   const geometry::LeadLayout& layout,
                                                   const geometry::CalibrationModel& cal,
                                                   double fs_hz = 500.0,
                                                   double duration_s = 10.0);

struct LeadMetrics {
  std::string lead;
  double pearson_r = 0.0;
  double mse = 0.0;
  double max_abs_error = 0.0;
};

struct SampleMetrics {
  std::string record_id;
  std::string split;
  std::vector<LeadMetrics> leads;
  double mean_r = 0.0;
  double min_r = 0.0;
  double mean_mse = 0.0;
  double max_abs_error = 0.0;
  bool pass = false;
  std::string error;  // non-empty when validation of this sample errored
};

struct RoundTripReport {
  std::vector<SampleMetrics> samples;
  std::int64_t sample_count = 0;
  double mean_r = 0.0;
  double std_r = 0.0;
  double min_r = 0.0;
  double mean_mse = 0.0;
  double std_mse = 0.0;
  double max_abs_error = 0.0;
  bool pass = false;
};

// Round-trips up to sample_count stored samples (0 = every sample) under
// output_root, sorted by record id: mask -> extracted series vs the stored
// normalized signals. Pass requires mean r >= 0.998 and per-lead min >= 0.995
// with no per-sample errors. Writes validation_report.json under output_root.
// Throws MissingArtifact when there is nothing to validate.
RoundTripReport roundtrip_report(const std::filesystem::path& output_root,
                                 std::int64_t sample_count = 0);

std::string report_to_json(const RoundTripReport& report);

enum class FixtureKind { sine_sweep, square, ecg_template };

FixtureKind fixture_kind_from_name(const std::string& name);
const char* fixture_kind_name(FixtureKind kind);

struct SyntheticRecord {
  FixtureKind kind = FixtureKind::sine_sweep;
  // 12 x 5000 millivolt rows in canonical lead order.
  std::vector<std::vector<double>> values_mv;
};

// Deterministic 12-lead test signals, 500 Hz / 10 s, peak amplitude <= 2 mV:
//   sine_sweep   lead k carries a (k+1) Hz, 1 mV sine
//   square       2 Hz, +-0.5 mV square wave on every lead
//   ecg_template P-QRS-T template repeated at a seeded 60-90 bpm rate with a
//                seeded circular phase shift per lead; QRS apex is exactly
//                1.0 mV and only QRS exceeds 0.8 mV, so beats are countable
// Throws UnknownKind.
SyntheticRecord synth_fixture(FixtureKind kind, std::uint64_t seed);
SyntheticRecord synth_fixture(const std::string& kind, std::uint64_t seed);

}  // namespace ecgen::validate
