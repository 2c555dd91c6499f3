#include "ecgen/index.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "ecgen/errors.hpp"

namespace ecgen::index {

namespace {

const std::unordered_map<std::string, std::string>& scp_superclass_map() {
  static const std::unordered_map<std::string, std::string> map = {
      {"NORM", "NORM"},
      // Conduction disturbances
      {"LAFB", "CD"}, {"IRBBB", "CD"}, {"1AVB", "CD"}, {"IVCD", "CD"},
      {"CRBBB", "CD"}, {"CLBBB", "CD"}, {"LPFB", "CD"}, {"WPW", "CD"},
      {"ILBBB", "CD"}, {"3AVB", "CD"}, {"2AVB", "CD"},
      // Hypertrophy
      {"LVH", "HYP"}, {"LAO/LAE", "HYP"}, {"RVH", "HYP"}, {"RAO/RAE", "HYP"},
      {"SEHYP", "HYP"},
      // Myocardial infarction
      {"IMI", "MI"}, {"ASMI", "MI"}, {"ILMI", "MI"}, {"AMI", "MI"},
      {"ALMI", "MI"}, {"INJAS", "MI"}, {"LMI", "MI"}, {"INJAL", "MI"},
      {"IPLMI", "MI"}, {"IPMI", "MI"}, {"INJIN", "MI"}, {"INJLA", "MI"},
      {"PMI", "MI"}, {"INJIL", "MI"},
      // ST/T changes
      {"NDT", "STTC"}, {"NST_", "STTC"}, {"DIG", "STTC"}, {"LNGQT", "STTC"},
      {"ISC_", "STTC"}, {"ISCAL", "STTC"}, {"ISCIN", "STTC"}, {"ISCIL", "STTC"},
      {"ISCAS", "STTC"}, {"ISCLA", "STTC"}, {"ANEUR", "STTC"}, {"EL", "STTC"},
      {"ISCAN", "STTC"},
  };
  return map;
}

const std::vector<std::string>& superclass_order() {
  static const std::vector<std::string> order = {"NORM", "MI", "STTC", "CD", "HYP"};
  return order;
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return {};
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::optional<double> parse_optional_number(const std::string& field) {
  std::string t = trim(field);
  if (t.empty()) return std::nullopt;
  char* end = nullptr;
  double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

}  // namespace

const char* sex_name(Sex sex) {
  switch (sex) {
    case Sex::male: return "male";
    case Sex::female: return "female";
    case Sex::unknown: return "unknown";
  }
  return "unknown";
}

const char* split_name(Split split) {
  switch (split) {
    case Split::train: return "train";
    case Split::val: return "val";
    case Split::test: return "test";
  }
  return "train";
}

std::vector<std::string> split_csv_row(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  bool in_quotes = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(c);
      }
    } else if (c == '"') {
      in_quotes = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (c != '\r') {
      field.push_back(c);
    }
  }
  fields.push_back(std::move(field));
  return fields;
}

std::vector<std::pair<std::string, double>> parse_scp_codes(const std::string& text) {
  std::vector<std::pair<std::string, double>> codes;
  std::string t = trim(text);
  if (t.empty()) return codes;
  if (t.front() != '{' || t.back() != '}')
    throw_error(ErrorCode::unparseable_row, "scp_codes is not a brace-delimited map: '" + t + "'");
  std::size_t i = 1;
  const std::size_t end = t.size() - 1;
  auto skip_ws = [&] { while (i < end && std::isspace(static_cast<unsigned char>(t[i]))) ++i; };
  skip_ws();
  while (i < end) {
    char quote = t[i];
    if (quote != '\'' && quote != '"')
      throw_error(ErrorCode::unparseable_row, "scp_codes key missing quote in '" + t + "'");
    std::size_t close = t.find(quote, i + 1);
    if (close == std::string::npos || close >= end)
      throw_error(ErrorCode::unparseable_row, "scp_codes key unterminated in '" + t + "'");
    std::string key = t.substr(i + 1, close - i - 1);
    i = close + 1;
    skip_ws();
    if (i >= end || t[i] != ':')
      throw_error(ErrorCode::unparseable_row, "scp_codes missing ':' in '" + t + "'");
    ++i;
    skip_ws();
    std::size_t num_end = i;
    while (num_end < end && t[num_end] != ',') ++num_end;
    std::string num = trim(t.substr(i, num_end - i));
    char* p = nullptr;
    double v = std::strtod(num.c_str(), &p);
    if (num.empty() || p != num.c_str() + num.size() || !std::isfinite(v))
      throw_error(ErrorCode::unparseable_row, "scp_codes likelihood '" + num + "' is not a number");
    codes.emplace_back(std::move(key), v);
    i = num_end;
    if (i < end && t[i] == ',') ++i;
    skip_ws();
  }
  return codes;
}

int parse_quality_grade(const std::string& field) {
  std::string t = trim(field);
  if (t.empty()) return 0;
  std::size_t d = 0;
  while (d < t.size() && std::isdigit(static_cast<unsigned char>(t[d]))) ++d;
  if (d > 0) return std::stoi(t.substr(0, d));
  return 2;
}

Sex parse_sex(const std::string& field) {
  std::string t = lower(trim(field));
  if (t == "0" || t == "male" || t == "m") return Sex::male;
  if (t == "1" || t == "female" || t == "f") return Sex::female;
  return Sex::unknown;
}

std::vector<std::string> superclasses_for(
    const std::vector<std::pair<std::string, double>>& scp_codes) {
  const auto& map = scp_superclass_map();
  std::unordered_set<std::string> found;
  for (const auto& [code, likelihood] : scp_codes) {
    (void)likelihood;
    auto it = map.find(code);
    if (it != map.end()) found.insert(it->second);
  }
  std::vector<std::string> result;
  for (const auto& name : superclass_order())
    if (found.count(name)) result.push_back(name);
  return result;
}

DatasetIndex load_index(const std::string& csv_text, const ColumnNames& columns) {
  std::istringstream in(csv_text);
  std::string line;
  if (!std::getline(in, line))
    throw_error(ErrorCode::missing_column, "index CSV is empty");
  auto header = split_csv_row(line);

  auto find_column = [&](const std::string& name) -> std::size_t {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end())
      throw_error(ErrorCode::missing_column, "index CSV lacks column '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t c_id = find_column(columns.record_id);
  const std::size_t c_age = find_column(columns.age);
  const std::size_t c_sex = find_column(columns.sex);
  const std::size_t c_height = find_column(columns.height);
  const std::size_t c_weight = find_column(columns.weight);
  const std::size_t c_scp = find_column(columns.scp_codes);
  const std::size_t c_drift = find_column(columns.baseline_drift);
  const std::size_t c_noise = find_column(columns.static_noise);
  const std::size_t c_fold = find_column(columns.strat_fold);
  const std::size_t c_file = columns.filename.empty() ? 0 : find_column(columns.filename);

  DatasetIndex index;
  std::unordered_set<std::string> seen_ids;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    auto fields = split_csv_row(line);
    try {
      if (fields.size() != header.size())
        throw_error(ErrorCode::unparseable_row,
                    "row has " + std::to_string(fields.size()) + " fields, header has " +
                        std::to_string(header.size()));
      RecordMeta meta;
      meta.record_id = trim(fields[c_id]);
      if (meta.record_id.empty())
        throw_error(ErrorCode::unparseable_row, "empty record id");
      if (!seen_ids.insert(meta.record_id).second)
        throw_error(ErrorCode::unparseable_row, "duplicate record id '" + meta.record_id + "'");
      meta.age = parse_optional_number(fields[c_age]);
      meta.sex = parse_sex(fields[c_sex]);
      meta.height = parse_optional_number(fields[c_height]);
      meta.weight = parse_optional_number(fields[c_weight]);
      meta.scp_codes = parse_scp_codes(fields[c_scp]);
      meta.superclasses = superclasses_for(meta.scp_codes);
      meta.baseline_drift_level = parse_quality_grade(fields[c_drift]);
      meta.static_noise_level = parse_quality_grade(fields[c_noise]);
      auto fold = parse_optional_number(fields[c_fold]);
      if (!fold || *fold != std::floor(*fold) || *fold < 1 || *fold > 10)
        throw_error(ErrorCode::unparseable_row, "strat_fold '" + fields[c_fold] + "' not in 1..10");
      meta.strat_fold = static_cast<int>(*fold);
      if (!columns.filename.empty()) meta.file_stem = trim(fields[c_file]);
      for (const auto& sc : meta.superclasses) ++index.superclass_counts[sc];
      index.records.push_back(std::move(meta));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::unparseable_row) throw;
      ++index.skipped_rows;
    }
  }
  return index;
}

bool quality_filter(const RecordMeta& meta) {
  return meta.baseline_drift_level <= 1 && meta.static_noise_level <= 1;
}

Split assign_split(int strat_fold) {
  if (strat_fold >= 1 && strat_fold <= 7) return Split::train;
  if (strat_fold == 8) return Split::val;
  if (strat_fold == 9 || strat_fold == 10) return Split::test;
  throw_error(ErrorCode::invalid_fold, "strat_fold " + std::to_string(strat_fold) + " outside 1..10");
}

std::map<std::string, SuperclassStat> diagnostic_distribution(const DatasetIndex& index) {
  std::map<std::string, SuperclassStat> stats;
  for (const auto& name : superclass_order()) stats[name] = SuperclassStat{};
  for (const auto& [name, count] : index.superclass_counts) stats[name].count = count;
  const double total = static_cast<double>(index.records.size());
  if (total > 0)
    for (auto& [name, stat] : stats)
      stat.percentage = 100.0 * static_cast<double>(stat.count) / total;
  return stats;
}

}  // namespace ecgen::index
