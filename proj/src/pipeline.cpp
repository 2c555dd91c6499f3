#include "ecgen/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <utility>

#include <json.hpp>

#include "ecgen/annotate.hpp"
#include "ecgen/errors.hpp"
#include "ecgen/fsio.hpp"
#include "ecgen/imageio.hpp"
#include "ecgen/render.hpp"
#include "ecgen/version.hpp"
#include "ecgen/wfdb.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ecgen::pipeline {

namespace fs = std::filesystem;

ArtifactPaths artifact_paths(const fs::path& output_root, const std::string& split,
                             const std::string& record_id) {
  const fs::path base = output_root / split;
  return ArtifactPaths{
      base / "images" / (record_id + ".jpg"),   base / "masks" / (record_id + ".png"),
      base / "signals" / (record_id + ".npy"),  base / "metadata" / (record_id + ".json"),
      base / "labels" / (record_id + ".txt"),
  };
}

bool artifacts_complete(const ArtifactPaths& paths) {
  std::error_code ec;
  for (const fs::path* p : {&paths.image, &paths.mask, &paths.signals, &paths.metadata,
                            &paths.labels}) {
    if (!fs::is_regular_file(*p, ec) || ec) return false;
  }
  return true;
}

RunContext make_run_context(const Config& config) {
  RunContext ctx;
  ctx.config = config;
  ctx.coeffs = dsp::design_bandpass(4, 0.5, 40.0, 500.0);
  ctx.layout = geometry::compute_layout(config.canvas);
  return ctx;
}

std::vector<std::vector<double>> read_wfdb_record(const fs::path& records_dir,
                                                  const std::string& file_stem, double expect_fs,
                                                  std::int64_t expect_samples) {
  const fs::path hea_path = records_dir / (file_stem + ".hea");
  const wfdb::RecordHeader header = wfdb::parse_header(fsio::read_text(hea_path));
  if (header.n_signals != wfdb::kLeadCount) {
    throw_error(ErrorCode::invalid_lead, file_stem + ": expected 12 signals, header declares " +
                                             std::to_string(header.n_signals));
  }
  if (header.sampling_rate_hz != expect_fs) {
    throw_error(ErrorCode::unsupported_format,
                file_stem + ": unsupported sampling rate " +
                    std::to_string(header.sampling_rate_hz));
  }
  if (header.n_samples != expect_samples) {
    throw_error(ErrorCode::unsupported_format,
                file_stem + ": unsupported sample count " + std::to_string(header.n_samples));
  }
  const std::string& dat_name = header.signals.front().file_name;
  for (const wfdb::SignalSpec& spec : header.signals) {
    if (spec.file_name != dat_name) {
      throw_error(ErrorCode::unsupported_format,
                  file_stem + ": signals split across multiple dat files");
    }
  }
  const fs::path dat_path = hea_path.parent_path() / dat_name;
  wfdb::SignalMatrix matrix = wfdb::read_signals(header, fsio::read_bytes(dat_path));
  return std::move(matrix.values);
}

geometry::RenderParams generate_sample(const RecordInput& record, const RunContext& ctx) {
  const Config& config = ctx.config;
  const std::uint64_t seed = derive_stream_seed(config.global_seed, record.meta.record_id);
  rng::Rng rng(seed);
  geometry::RenderParams params = geometry::sample_params(rng, config.domains);
  params.rng_seed = seed;

  const geometry::CalibrationModel cal =
      geometry::compute_calibration(config.canvas, params, ctx.duration_s);

  std::vector<std::vector<double>> normalized;
  normalized.reserve(record.values_mv.size());
  for (const std::vector<double>& lead : record.values_mv) {
    normalized.push_back(dsp::zscore(dsp::filtfilt(ctx.coeffs, lead)).normalized);
  }

  render::Image image = render::Image::white(config.canvas.width_px, config.canvas.height_px);
  render::Mask mask = render::Mask::black(config.canvas.width_px, config.canvas.height_px);

  render::render_grid(image, ctx.layout, cal, params);
  for (const geometry::LeadRegion& lead : ctx.layout.leads) {
    render::draw_calibration_pulse(image, lead, cal, params.stroke_width_px);
  }
  render::render_header(image, params, static_cast<int>(ctx.fs_hz), config.canvas);

  std::array<geometry::PixelBox, geometry::kLeadCount> name_boxes;
  for (int i = 0; i < geometry::kLeadCount; ++i) {
    const geometry::LeadRegion& lead = ctx.layout.leads[static_cast<std::size_t>(i)];
    name_boxes[static_cast<std::size_t>(i)] =
        render::render_text(image, wfdb::kLeadOrder[static_cast<std::size_t>(i)], lead.name_x,
                            lead.name_y, 40);
  }

  // Clip every lead before inking any so a record that fails the clipping
  // budget produces no partial drawing work.
  std::int64_t total_points = 0;
  std::int64_t clipped_points = 0;
  std::array<render::ClippedPath, geometry::kLeadCount> clipped;
  for (int i = 0; i < geometry::kLeadCount; ++i) {
    const geometry::LeadRegion& lead = ctx.layout.leads[static_cast<std::size_t>(i)];
    std::vector<geometry::PointF> path =
        geometry::signal_to_path(normalized[static_cast<std::size_t>(i)], cal, lead, ctx.fs_hz);
    clipped[static_cast<std::size_t>(i)] = render::clip_to_region(path, lead.region);
    total_points += static_cast<std::int64_t>(path.size());
    clipped_points += clipped[static_cast<std::size_t>(i)].clipped_samples;
  }
  if (total_points > 0 && clipped_points * 5 > total_points) {
    throw_error(ErrorCode::path_out_of_bounds,
                record.meta.record_id + ": " + std::to_string(clipped_points) + " of " +
                    std::to_string(total_points) + " trace samples clip their lead region");
  }
  for (int i = 0; i < geometry::kLeadCount; ++i) {
    const geometry::LeadRegion& lead = ctx.layout.leads[static_cast<std::size_t>(i)];
    render::draw_trace(image, &mask, clipped[static_cast<std::size_t>(i)].path,
                       params.stroke_width_px, lead.region);
  }

  std::vector<annotate::YoloRecord> yolo;
  yolo.reserve(2 * geometry::kLeadCount);
  for (int i = 0; i < geometry::kLeadCount; ++i) {
    yolo.push_back(annotate::to_yolo(ctx.layout.leads[static_cast<std::size_t>(i)].region, 0,
                                     config.canvas));
  }
  for (int i = 0; i < geometry::kLeadCount; ++i) {
    yolo.push_back(annotate::to_yolo(name_boxes[static_cast<std::size_t>(i)], i + 1,
                                     config.canvas));
  }

  annotate::SampleMetadata meta;
  meta.record_id = record.meta.record_id;
  meta.split = index::split_name(record.split);
  meta.age = record.meta.age;
  meta.sex = index::sex_name(record.meta.sex);
  meta.height = record.meta.height;
  meta.weight = record.meta.weight;
  meta.scp_codes = record.meta.scp_codes;
  meta.superclasses = record.meta.superclasses;
  meta.baseline_drift_level = record.meta.baseline_drift_level;
  meta.static_noise_level = record.meta.static_noise_level;
  meta.sampling_rate_hz = ctx.fs_hz;
  meta.duration_s = ctx.duration_s;
  meta.paper_speed_mm_s = params.paper_speed_mm_s;
  meta.voltage_scale_mm_mv = params.voltage_scale_mm_mv;
  meta.grid_visible = params.grid_visible;
  meta.grid_color = geometry::grid_color_name(params.grid_color);
  meta.grid_opacity = params.grid_opacity;
  meta.stroke_width_px = params.stroke_width_px;
  meta.px_per_mm = cal.px_per_mm;
  meta.px_per_sec = cal.px_per_sec;
  meta.px_per_mv = cal.px_per_mv;
  meta.canvas_dpi = config.canvas.dpi;
  meta.canvas_width_px = config.canvas.width_px;
  meta.canvas_height_px = config.canvas.height_px;
  for (int i = 0; i < geometry::kLeadCount; ++i) {
    const geometry::LeadRegion& lead = ctx.layout.leads[static_cast<std::size_t>(i)];
    meta.leads.push_back(annotate::LeadAnnotation{
        wfdb::kLeadOrder[static_cast<std::size_t>(i)], lead.baseline_y, lead.region,
        name_boxes[static_cast<std::size_t>(i)]});
  }
  meta.clipped_sample_count = clipped_points;
  meta.generator_version = kGeneratorVersion;
  meta.rng_seed = seed;

  const std::vector<std::uint8_t> jpeg = imageio::encode_jpeg(image, 95);
  const std::vector<std::uint8_t> png = imageio::encode_png_gray(mask);
  const std::vector<std::uint8_t> npy_bytes = annotate::emit_signals(normalized);
  const std::string labels = annotate::emit_yolo_file(yolo);
  const std::string metadata_json = annotate::emit_metadata(meta);

  const ArtifactPaths paths =
      artifact_paths(config.output_root, meta.split, record.meta.record_id);
  fsio::write_bytes_atomic(paths.image, jpeg.data(), jpeg.size());
  fsio::write_bytes_atomic(paths.mask, png.data(), png.size());
  fsio::write_bytes_atomic(paths.signals, npy_bytes.data(), npy_bytes.size());
  fsio::write_text_atomic(paths.labels, labels);
  fsio::write_text_atomic(paths.metadata, metadata_json);

  return params;
}

namespace {

struct SampleResult {
  enum class Status { succeeded, failed, skipped };
  Status status = Status::failed;
  std::string record_id;
  std::string split;
  std::string message;
  bool generated = false;
  geometry::RenderParams params;
  double seconds = 0.0;
};

SampleResult process_record(const index::RecordMeta& meta, index::Split split,
                            const RunContext& ctx) {
  SampleResult result;
  result.record_id = meta.record_id;
  result.split = index::split_name(split);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    if (!index::quality_filter(meta)) {
      result.status = SampleResult::Status::skipped;
      result.message = "quality filter: baseline_drift=" +
                       std::to_string(meta.baseline_drift_level) +
                       " static_noise=" + std::to_string(meta.static_noise_level);
      return result;
    }
    const ArtifactPaths paths =
        artifact_paths(ctx.config.output_root, result.split, meta.record_id);
    if (!ctx.config.overwrite && artifacts_complete(paths)) {
      result.status = SampleResult::Status::succeeded;
      result.generated = false;
      return result;
    }
    RecordInput input;
    input.meta = meta;
    input.split = split;
    const std::string stem = meta.file_stem.empty() ? meta.record_id : meta.file_stem;
    input.values_mv =
        read_wfdb_record(ctx.config.records_dir, stem, ctx.fs_hz,
                         static_cast<std::int64_t>(std::llround(ctx.fs_hz * ctx.duration_s)));
    result.params = generate_sample(input, ctx);
    result.generated = true;
    result.status = SampleResult::Status::succeeded;
  } catch (const Error& err) {
    if (err.code() == ErrorCode::zero_variance) {
      result.status = SampleResult::Status::skipped;
      result.message = std::string("zero-variance lead: ") + err.what();
    } else {
      result.status = SampleResult::Status::failed;
      result.message = std::string(error_code_name(err.code())) + ": " + err.what();
    }
  } catch (const std::exception& err) {
    result.status = SampleResult::Status::failed;
    result.message = err.what();
  }
  result.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

}  // namespace

RunReport run(const Config& config) {
  const RunContext ctx = make_run_context(config);
  const index::DatasetIndex index =
      index::load_index(fsio::read_text(config.index_csv), config.columns);

  struct Selected {
    const index::RecordMeta* meta;
    index::Split split;
  };
  std::vector<Selected> selected;
  for (const index::RecordMeta& meta : index.records) {
    const index::Split split = index::assign_split(meta.strat_fold);
    if (std::find(config.splits.begin(), config.splits.end(), split) == config.splits.end()) {
      continue;
    }
    if (config.limit && static_cast<std::int64_t>(selected.size()) >= *config.limit) break;
    selected.push_back(Selected{&meta, split});
  }

  for (const index::Split split : config.splits) {
    const fs::path base = fs::path(config.output_root) / index::split_name(split);
    for (const char* dir : {"images", "masks", "signals", "metadata", "labels"}) {
      fs::create_directories(base / dir);
    }
  }

  const std::int64_t n = static_cast<std::int64_t>(selected.size());
  std::vector<SampleResult> results(selected.size());
  const auto wall_start = std::chrono::steady_clock::now();

  if (config.worker_count > 1) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(config.worker_count)
    for (std::int64_t i = 0; i < n; ++i) {
      results[static_cast<std::size_t>(i)] =
          process_record(*selected[static_cast<std::size_t>(i)].meta,
                         selected[static_cast<std::size_t>(i)].split, ctx);
    }
#else
    for (std::int64_t i = 0; i < n; ++i) {
      results[static_cast<std::size_t>(i)] =
          process_record(*selected[static_cast<std::size_t>(i)].meta,
                         selected[static_cast<std::size_t>(i)].split, ctx);
    }
#endif
  } else {
    // Serial reference path: identical work, no scheduling, kept as the
    // baseline the parallel path is validated and benchmarked against.
    for (std::int64_t i = 0; i < n; ++i) {
      results[static_cast<std::size_t>(i)] =
          process_record(*selected[static_cast<std::size_t>(i)].meta,
                         selected[static_cast<std::size_t>(i)].split, ctx);
    }
  }

  RunReport report;
  report.total = n;
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start).count();

  double generate_seconds = 0.0;
  std::int64_t generated = 0;
  double stroke_sum = 0.0;
  for (const SampleResult& result : results) {
    switch (result.status) {
      case SampleResult::Status::succeeded:
        ++report.succeeded;
        ++report.split_counts[result.split];
        break;
      case SampleResult::Status::failed:
        ++report.failed;
        report.failures.emplace_back(result.record_id, result.message);
        break;
      case SampleResult::Status::skipped:
        ++report.skipped;
        report.skips.emplace_back(result.record_id, result.message);
        break;
    }
    if (!result.generated) continue;
    ++generated;
    generate_seconds += result.seconds;
    DistributionStats& d = report.distributions;
    (result.params.paper_speed_mm_s == 25 ? d.speed_25 : d.speed_50) += 1;
    (result.params.voltage_scale_mm_mv == 5 ? d.scale_5 : d.scale_10) += 1;
    (result.params.grid_visible ? d.grid_on : d.grid_off) += 1;
    switch (result.params.grid_color) {
      case geometry::GridColor::red: ++d.color_red; break;
      case geometry::GridColor::green: ++d.color_green; break;
      case geometry::GridColor::black: ++d.color_black; break;
      case geometry::GridColor::gray: ++d.color_gray; break;
    }
    const double w = result.params.stroke_width_px;
    stroke_sum += w;
    if (generated == 1) {
      d.stroke_width_min = w;
      d.stroke_width_max = w;
    } else {
      d.stroke_width_min = std::min(d.stroke_width_min, w);
      d.stroke_width_max = std::max(d.stroke_width_max, w);
    }
  }
  if (generated > 0) {
    report.mean_seconds_per_sample = generate_seconds / static_cast<double>(generated);
    report.distributions.stroke_width_mean = stroke_sum / static_cast<double>(generated);
  }

  fs::create_directories(config.output_root);
  fsio::write_text_atomic(fs::path(config.output_root) / "run_report.json",
                          report_to_json(report));
  return report;
}

std::string report_to_json(const RunReport& report) {
  using json = nlohmann::ordered_json;
  json j;
  j["total"] = report.total;
  j["succeeded"] = report.succeeded;
  j["failed"] = report.failed;
  j["skipped"] = report.skipped;
  j["wall_seconds"] = report.wall_seconds;
  j["mean_seconds_per_sample"] = report.mean_seconds_per_sample;
  j["split_counts"] = json::object();
  for (const auto& [split, count] : report.split_counts) j["split_counts"][split] = count;
  const DistributionStats& d = report.distributions;
  j["distributions"] = json::object();
  j["distributions"]["paper_speed_mm_s"] = {{"25", d.speed_25}, {"50", d.speed_50}};
  j["distributions"]["voltage_scale_mm_mv"] = {{"5", d.scale_5}, {"10", d.scale_10}};
  j["distributions"]["grid_visible"] = {{"true", d.grid_on}, {"false", d.grid_off}};
  j["distributions"]["grid_color"] = {{"red", d.color_red},
                                      {"green", d.color_green},
                                      {"black", d.color_black},
                                      {"gray", d.color_gray}};
  j["distributions"]["stroke_width_px"] = {{"min", d.stroke_width_min},
                                           {"max", d.stroke_width_max},
                                           {"mean", d.stroke_width_mean}};
  j["failures"] = json::array();
  for (const auto& [id, message] : report.failures) {
    j["failures"].push_back({{"record_id", id}, {"error", message}});
  }
  j["skips"] = json::array();
  for (const auto& [id, message] : report.skips) {
    j["skips"].push_back({{"record_id", id}, {"reason", message}});
  }
  return j.dump(2) + "\n";
}

}  // namespace ecgen::pipeline
