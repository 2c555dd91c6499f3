#include "fixture_corpus.hpp"

#include <array>
#include <cstdio>
#include <string>
#include <vector>

#include "ecgen/fsio.hpp"
#include "ecgen/rng.hpp"
#include "ecgen/validate.hpp"
#include "ecgen/wfdb.hpp"

namespace ecgen::tools {

namespace fs = std::filesystem;

namespace {

std::string csv_quote(const std::string& field) {
  bool needs = false;
  for (char c : field) {
    if (c == ',' || c == '"' || c == '\n') needs = true;
  }
  if (!needs) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

fs::path write_fixture_corpus(const fs::path& dir, const CorpusOptions& options) {
  const fs::path records_dir = dir / "records";
  fs::create_directories(records_dir);

  // Representative diagnostic annotations, cycled across rows.
  static const std::array<const char*, 5> scp_sets = {
      "{'NORM': 100.0, 'SR': 0.0}", "{'IMI': 80.0}", "{'LVH': 50.0, 'NORM': 0.0}",
      "{'CLBBB': 100.0}", "{'NDT': 100.0, 'NORM': 0.0}"};

  std::string csv =
      "ecg_id,age,sex,height,weight,scp_codes,baseline_drift,static_noise,strat_fold\n";

  for (std::int64_t i = 0; i < options.count; ++i) {
    char id_buf[24];
    std::snprintf(id_buf, sizeof id_buf, "%05lld", static_cast<long long>(i + 1));
    const std::string id = id_buf;

    const validate::FixtureKind kind =
        options.kinds[static_cast<std::size_t>(i) % options.kinds.size()];
    const std::uint64_t record_seed = rng::derive_stream_seed(options.seed, id);
    const validate::SyntheticRecord record = validate::synth_fixture(kind, record_seed);

    wfdb::RecordHeader header;
    header.record_name = id;
    header.n_signals = wfdb::kLeadCount;
    header.sampling_rate_hz = 500.0;
    header.n_samples = 5000;
    for (int k = 0; k < wfdb::kLeadCount; ++k) {
      wfdb::SignalSpec spec;
      spec.file_name = id + ".dat";
      spec.format_code = 16;
      spec.gain = 1000.0;  // 1 uV per adu keeps quantization far below render scale
      spec.baseline = 0;
      spec.lead_name = wfdb::kLeadOrder[static_cast<std::size_t>(k)];
      header.signals.push_back(spec);
    }
    const std::vector<std::uint8_t> dat = wfdb::encode_signals(header, record.values_mv);
    fsio::write_text_atomic(records_dir / (id + ".hea"), wfdb::serialize_header(header));
    fsio::write_bytes_atomic(records_dir / (id + ".dat"), dat.data(), dat.size());

    const int age = 25 + static_cast<int>(i * 7 % 60);
    const char* sex = (i % 2 == 0) ? "0" : "1";
    const int height = 155 + static_cast<int>(i * 3 % 40);
    const int weight = 55 + static_cast<int>(i * 5 % 50);
    const bool dirty = !options.all_clean && (i % 12 == 11);
    const char* noise = dirty ? "3, alles" : "";
    const int fold = static_cast<int>(i % 10) + 1;

    csv += id + "," + std::to_string(age) + "," + sex + "," + std::to_string(height) + "," +
           std::to_string(weight) + "," +
           csv_quote(scp_sets[static_cast<std::size_t>(i % scp_sets.size())]) + ",," +
           csv_quote(noise) + "," + std::to_string(fold) + "\n";
  }

  const fs::path index_path = dir / "index.csv";
  fsio::write_text_atomic(index_path, csv);
  return index_path;
}

}  // namespace ecgen::tools
