#include <cstdio>
#include <filesystem>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "ecgen/config.hpp"
#include "ecgen/fsio.hpp"
#include "ecgen/pipeline.hpp"
#include "fixture_corpus.hpp"

namespace fs = std::filesystem;

namespace {

// Byte-compares every artifact below the two roots (run_report.json excluded:
// it holds timings).
bool trees_identical(const fs::path& a, const fs::path& b) {
  std::vector<fs::path> rel;
  for (const fs::directory_entry& entry : fs::recursive_directory_iterator(a)) {
    if (!entry.is_regular_file()) continue;
    const fs::path r = fs::relative(entry.path(), a);
    if (r.filename() == "run_report.json") continue;
    rel.push_back(r);
  }
  for (const fs::path& r : rel) {
    if (!fs::is_regular_file(b / r)) {
      std::fprintf(stderr, "missing in second tree: %s\n", r.string().c_str());
      return false;
    }
    if (ecgen::fsio::read_bytes(a / r) != ecgen::fsio::read_bytes(b / r)) {
      std::fprintf(stderr, "differs: %s\n", r.string().c_str());
      return false;
    }
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Benchmark the serial reference loop against the parallel path"};
  std::int64_t count = 24;
  int workers = static_cast<int>(std::thread::hardware_concurrency());
  std::string work_dir = "bench_work";
  app.add_option("--count", count, "Records per run")->capture_default_str();
  app.add_option("--workers", workers, "Parallel worker count")->capture_default_str();
  app.add_option("--dir", work_dir, "Scratch directory")->capture_default_str();
  CLI11_PARSE(app, argc, argv);
  if (workers < 2) workers = 2;

  try {
    const fs::path root = work_dir;
    fs::remove_all(root);
    ecgen::tools::CorpusOptions options;
    options.count = count;
    ecgen::tools::write_fixture_corpus(root / "corpus", options);

    ecgen::pipeline::Config config;
    config.records_dir = (root / "corpus" / "records").string();
    config.index_csv = (root / "corpus" / "index.csv").string();

    config.worker_count = 1;
    config.output_root = (root / "serial").string();
    const ecgen::pipeline::RunReport serial = ecgen::pipeline::run(config);

    config.worker_count = workers;
    config.output_root = (root / "parallel").string();
    const ecgen::pipeline::RunReport parallel = ecgen::pipeline::run(config);

    std::printf("records: %lld (succeeded %lld/%lld)\n", static_cast<long long>(count),
                static_cast<long long>(serial.succeeded),
                static_cast<long long>(parallel.succeeded));
    std::printf("serial   (1 worker)  : %8.2f s  (%.3f s/sample)\n", serial.wall_seconds,
                serial.mean_seconds_per_sample);
    std::printf("parallel (%d workers): %8.2f s  (%.3f s/sample)\n", workers,
                parallel.wall_seconds, parallel.mean_seconds_per_sample);
    std::printf("speedup              : %8.2fx\n",
                serial.wall_seconds / parallel.wall_seconds);

    const bool same = trees_identical(root / "serial", root / "parallel");
    std::printf("outputs identical    : %s\n", same ? "yes" : "NO");
    return same ? 0 : 2;
  } catch (const std::exception& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return 1;
  }
}
