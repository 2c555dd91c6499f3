#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ecgen::index {

enum class Sex { male, female, unknown };
enum class Split { train, val, test };

const char* sex_name(Sex sex);
const char* split_name(Split split);

struct RecordMeta {
  std::string record_id;
  std::optional<double> age;
  Sex sex = Sex::unknown;
  std::optional<double> height;
  std::optional<double> weight;
  // Preserves the order codes appeared in the source row.
  std::vector<std::pair<std::string, double>> scp_codes;
  std::vector<std::string> superclasses;
  int baseline_drift_level = 0;
  int static_noise_level = 0;
  int strat_fold = 0;
  // Relative path stem of the WFDB files; empty means "<record_id>".
  std::string file_stem;
};

struct DatasetIndex {
  std::vector<RecordMeta> records;
  std::map<std::string, std::int64_t> superclass_counts;
  std::int64_t skipped_rows = 0;
};

// Column headers to look up in the index CSV; overridable via pipeline config.
struct ColumnNames {
  std::string record_id = "ecg_id";
  std::string age = "age";
  std::string sex = "sex";
  std::string height = "height";
  std::string weight = "weight";
  std::string scp_codes = "scp_codes";
  std::string baseline_drift = "baseline_drift";
  std::string static_noise = "static_noise";
  std::string strat_fold = "strat_fold";
  // Optional: column holding the WFDB path stem (empty = derive from id).
  std::string filename;
};

struct SuperclassStat {
  std::int64_t count = 0;
  double percentage = 0.0;
};

// One CSV row split into raw fields (RFC-4180 quoting).
std::vector<std::string> split_csv_row(const std::string& line);

// Python-dict repr such as {'NORM': 100.0, 'SR': 0.0} -> ordered pairs.
std::vector<std::pair<std::string, double>> parse_scp_codes(const std::string& text);

// Leading integer if present; otherwise 2 for non-empty text, 0 for empty.
int parse_quality_grade(const std::string& field);

Sex parse_sex(const std::string& field);

// Superclasses (subset of NORM, MI, STTC, CD, HYP) for the given codes,
// emitted in that fixed order. Likelihoods are not consulted.
std::vector<std::string> superclasses_for(
    const std::vector<std::pair<std::string, double>>& scp_codes);

DatasetIndex load_index(const std::string& csv_text, const ColumnNames& columns = {});

// true = accept. Rejects iff either quality grade exceeds 1.
bool quality_filter(const RecordMeta& meta);

Split assign_split(int strat_fold);

std::map<std::string, SuperclassStat> diagnostic_distribution(const DatasetIndex& index);

}  // namespace ecgen::index
