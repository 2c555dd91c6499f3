#include <cstdio>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ecgen/annotate.hpp"
#include "ecgen/config.hpp"
#include "ecgen/errors.hpp"
#include "ecgen/fsio.hpp"
#include "ecgen/pipeline.hpp"
#include "ecgen/validate.hpp"

namespace fs = std::filesystem;

namespace {

std::vector<ecgen::index::Split> parse_splits(const std::string& csv) {
  std::vector<ecgen::index::Split> splits;
  std::string token;
  for (std::size_t i = 0; i <= csv.size(); ++i) {
    if (i == csv.size() || csv[i] == ',') {
      if (token == "train") {
        splits.push_back(ecgen::index::Split::train);
      } else if (token == "val") {
        splits.push_back(ecgen::index::Split::val);
      } else if (token == "test") {
        splits.push_back(ecgen::index::Split::test);
      } else if (!token.empty()) {
        ecgen::throw_error(ecgen::ErrorCode::domain_violation,
                           "unknown split '" + token + "'");
      }
      token.clear();
    } else {
      token += csv[i];
    }
  }
  if (splits.empty()) {
    ecgen::throw_error(ecgen::ErrorCode::domain_violation, "no splits selected");
  }
  return splits;
}

int cmd_generate(const std::string& config_path, std::int64_t limit, std::int64_t seed,
                 int workers, const std::string& splits, int overwrite,
                 const std::string& records_dir, const std::string& index_csv,
                 const std::string& output_root) {
  ecgen::pipeline::Config config;
  if (!config_path.empty()) config = ecgen::pipeline::load_config_file(config_path);
  if (limit >= 0) config.limit = limit;
  if (seed >= 0) config.global_seed = static_cast<std::uint64_t>(seed);
  if (workers > 0) config.worker_count = workers;
  if (!splits.empty()) config.splits = parse_splits(splits);
  if (overwrite >= 0) config.overwrite = overwrite != 0;
  if (!records_dir.empty()) config.records_dir = records_dir;
  if (!index_csv.empty()) config.index_csv = index_csv;
  if (!output_root.empty()) config.output_root = output_root;

  const ecgen::pipeline::RunReport report = ecgen::pipeline::run(config);

  std::printf("total      %lld\n", static_cast<long long>(report.total));
  std::printf("succeeded  %lld\n", static_cast<long long>(report.succeeded));
  std::printf("failed     %lld\n", static_cast<long long>(report.failed));
  std::printf("skipped    %lld\n", static_cast<long long>(report.skipped));
  std::printf("wall       %.2f s (%.3f s/sample)\n", report.wall_seconds,
              report.mean_seconds_per_sample);
  for (const auto& [split, count] : report.split_counts) {
    std::printf("  %-5s    %lld\n", split.c_str(), static_cast<long long>(count));
  }
  for (const auto& [id, message] : report.failures) {
    std::fprintf(stderr, "failed %s: %s\n", id.c_str(), message.c_str());
  }
  std::printf("report: %s\n",
              (fs::path(config.output_root) / "run_report.json").string().c_str());
  return report.failed > 0 ? 2 : 0;
}

int cmd_stats(const std::string& output_root) {
  std::int64_t n = 0;
  std::map<std::string, std::int64_t> speed, scale, grid, color, superclass, splits;
  double stroke_sum = 0.0, stroke_min = 0.0, stroke_max = 0.0;
  for (const char* split : {"train", "val", "test"}) {
    const fs::path dir = fs::path(output_root) / split / "metadata";
    std::error_code ec;
    if (!fs::is_directory(dir, ec) || ec) continue;
    for (const fs::directory_entry& entry : fs::directory_iterator(dir)) {
      if (!entry.is_regular_file() || entry.path().extension() != ".json") continue;
      const ecgen::annotate::SampleMetadata meta =
          ecgen::annotate::parse_metadata(ecgen::fsio::read_text(entry.path()));
      ++n;
      ++splits[meta.split];
      ++speed[std::to_string(meta.paper_speed_mm_s) + " mm/s"];
      ++scale[std::to_string(meta.voltage_scale_mm_mv) + " mm/mV"];
      ++grid[meta.grid_visible ? "visible" : "hidden"];
      ++color[meta.grid_color];
      for (const std::string& s : meta.superclasses) ++superclass[s];
      stroke_sum += meta.stroke_width_px;
      stroke_min = n == 1 ? meta.stroke_width_px : std::min(stroke_min, meta.stroke_width_px);
      stroke_max = n == 1 ? meta.stroke_width_px : std::max(stroke_max, meta.stroke_width_px);
    }
  }
  if (n == 0) {
    std::fprintf(stderr, "no metadata under %s\n", output_root.c_str());
    return 1;
  }
  std::printf("samples: %lld\n", static_cast<long long>(n));
  const auto table = [n](const char* title, const std::map<std::string, std::int64_t>& m) {
    std::printf("%s\n", title);
    for (const auto& [key, count] : m) {
      std::printf("  %-10s %6lld  %5.1f%%\n", key.c_str(), static_cast<long long>(count),
                  100.0 * static_cast<double>(count) / static_cast<double>(n));
    }
  };
  table("split", splits);
  table("paper speed", speed);
  table("voltage scale", scale);
  table("grid", grid);
  table("grid color", color);
  table("superclasses", superclass);
  std::printf("stroke width: min %.3f  max %.3f  mean %.3f\n", stroke_min, stroke_max,
              stroke_sum / static_cast<double>(n));
  return 0;
}

int cmd_validate(const std::string& output_root, std::int64_t sample) {
  const ecgen::validate::RoundTripReport report =
      ecgen::validate::roundtrip_report(output_root, sample);
  std::printf("%-12s %-6s %9s %9s %12s %10s  %s\n", "record", "split", "mean_r", "min_r",
              "mean_mse", "max_abs", "status");
  for (const ecgen::validate::SampleMetrics& s : report.samples) {
    if (s.error.empty()) {
      std::printf("%-12s %-6s %9.5f %9.5f %12.3e %10.4f  %s\n", s.record_id.c_str(),
                  s.split.c_str(), s.mean_r, s.min_r, s.mean_mse, s.max_abs_error,
                  s.pass ? "ok" : "FAIL");
    } else {
      std::printf("%-12s %-6s %s\n", s.record_id.c_str(), s.split.c_str(), s.error.c_str());
    }
  }
  std::printf("aggregate: n=%lld mean_r=%.5f std_r=%.2e min_r=%.5f mean_mse=%.3e "
              "std_mse=%.2e max_abs=%.4f -> %s\n",
              static_cast<long long>(report.sample_count), report.mean_r, report.std_r,
              report.min_r, report.mean_mse, report.std_mse, report.max_abs_error,
              report.pass ? "PASS" : "FAIL");
  std::printf("report: %s\n",
              (fs::path(output_root) / "validation_report.json").string().c_str());
  return report.pass ? 0 : 2;
}

int cmd_inspect(const std::string& output_root, const std::string& record_id) {
  for (const char* split : {"train", "val", "test"}) {
    const ecgen::pipeline::ArtifactPaths paths =
        ecgen::pipeline::artifact_paths(output_root, split, record_id);
    std::error_code ec;
    if (!fs::is_regular_file(paths.metadata, ec) || ec) continue;
    std::printf("%s", ecgen::fsio::read_text(paths.metadata).c_str());
    if (fs::is_regular_file(paths.labels, ec) && !ec) {
      std::printf("labels (%s):\n%s", paths.labels.string().c_str(),
                  ecgen::fsio::read_text(paths.labels).c_str());
    }
    return 0;
  }
  std::fprintf(stderr, "record %s not found under %s\n", record_id.c_str(),
               output_root.c_str());
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synthetic ECG page generator"};
  app.require_subcommand(1);

  std::string config_path, splits, records_dir, index_csv, output_root = "output";
  std::int64_t limit = -1, seed = -1, sample = 0;
  int workers = 0, overwrite = -1;
  std::string record_id;

  CLI::App* generate = app.add_subcommand("generate", "Generate the dataset");
  generate->add_option("--config", config_path, "Configuration file");
  generate->add_option("--limit", limit, "Max records to process");
  generate->add_option("--seed", seed, "Global RNG seed override");
  generate->add_option("--workers", workers, "Worker count override");
  generate->add_option("--splits", splits, "Comma list: train,val,test");
  generate->add_option("--overwrite", overwrite, "1 = regenerate existing samples");
  generate->add_option("--records-dir", records_dir, "WFDB records directory override");
  generate->add_option("--index", index_csv, "Index CSV override");
  generate->add_option("--output-root", output_root, "Output root override")
      ->capture_default_str();

  CLI::App* stats = app.add_subcommand("stats", "Distribution tables from metadata");
  stats->add_option("--output-root", output_root, "Generated dataset root")->required();

  CLI::App* validate = app.add_subcommand("validate", "Mask round-trip validation");
  validate->add_option("--output-root", output_root, "Generated dataset root")->required();
  validate->add_option("--sample", sample, "Validate only the first N samples (0 = all)");

  CLI::App* inspect = app.add_subcommand("inspect", "Print one sample's annotations");
  inspect->add_option("--record", record_id, "Record id")->required();
  inspect->add_option("--output-root", output_root, "Generated dataset root")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed()) {
      return cmd_generate(config_path, limit, seed, workers, splits, overwrite, records_dir,
                          index_csv, output_root);
    }
    if (stats->parsed()) return cmd_stats(output_root);
    if (validate->parsed()) return cmd_validate(output_root, sample);
    if (inspect->parsed()) return cmd_inspect(output_root, record_id);
  } catch (const std::exception& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return 1;
  }
  return 1;
}
