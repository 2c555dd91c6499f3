#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ecgen/config.hpp"
#include "ecgen/dsp.hpp"
#include "ecgen/geometry.hpp"
#include "ecgen/index.hpp"

namespace ecgen::pipeline {

struct ArtifactPaths {
  std::filesystem::path image;
  std::filesystem::path mask;
  std::filesystem::path signals;
  std::filesystem::path metadata;
  std::filesystem::path labels;
};

ArtifactPaths artifact_paths(const std::filesystem::path& output_root, const std::string& split,
                             const std::string& record_id);

bool artifacts_complete(const ArtifactPaths& paths);

// Per-record RNG stream seed: FNV-1a over the record id folded into the
// global seed, finished with the SplitMix64 mixer (see rng.hpp).
using rng::derive_stream_seed;

struct RecordInput {
  index::RecordMeta meta;
  index::Split split = index::Split::train;
  std::vector<std::vector<double>> values_mv;  // 12 x n_samples, canonical lead order
};

// Shared read-only state for a run.
struct RunContext {
  Config config;
  dsp::FilterCoefficients coeffs;
  geometry::LeadLayout layout;
  double fs_hz = 500.0;
  double duration_s = 10.0;
};

RunContext make_run_context(const Config& config);

// Full per-record path: filter, normalize, sample parameters, render, emit.
// Writes the five artifacts atomically; throws on any failure (ZeroVariance
// marks the record skippable). Returns the parameters used.
geometry::RenderParams generate_sample(const RecordInput& record, const RunContext& ctx);

// Loads one WFDB record (header + dat) and returns millivolts in canonical
// lead order, enforcing the 12-lead / 500 Hz / 5000-sample contract.
std::vector<std::vector<double>> read_wfdb_record(const std::filesystem::path& records_dir,
                                                  const std::string& file_stem, double expect_fs,
                                                  std::int64_t expect_samples);

struct DistributionStats {
  std::int64_t speed_25 = 0;
  std::int64_t speed_50 = 0;
  std::int64_t scale_5 = 0;
  std::int64_t scale_10 = 0;
  std::int64_t grid_on = 0;
  std::int64_t grid_off = 0;
  std::int64_t color_red = 0;
  std::int64_t color_green = 0;
  std::int64_t color_black = 0;
  std::int64_t color_gray = 0;
  double stroke_width_min = 0.0;
  double stroke_width_max = 0.0;
  double stroke_width_mean = 0.0;
};

struct RunReport {
  std::int64_t total = 0;
  std::int64_t succeeded = 0;
  std::int64_t failed = 0;
  std::int64_t skipped = 0;
  double wall_seconds = 0.0;
  double mean_seconds_per_sample = 0.0;
  std::map<std::string, std::int64_t> split_counts;
  DistributionStats distributions;
  std::vector<std::pair<std::string, std::string>> failures;   // record id, reason
  std::vector<std::pair<std::string, std::string>> skips;      // record id, reason
};

std::string report_to_json(const RunReport& report);

// Iterate the index, dispatch generate_sample across workers, aggregate.
// worker_count == 1 runs the plain serial loop; > 1 uses the parallel path.
RunReport run(const Config& config);

}  // namespace ecgen::pipeline
