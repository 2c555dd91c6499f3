#include "ecgen/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <set>
#include <sstream>

#include "ecgen/errors.hpp"
#include "ecgen/fsio.hpp"

namespace ecgen::pipeline {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return {};
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

// One scalar token: bare string, number, or boolean.
struct Scalar {
  std::string text;
};

struct ConfigValue {
  bool is_list = false;
  std::vector<Scalar> items;  // single element when not a list

  const std::string& single(const std::string& key) const {
    if (is_list)
      throw_error(ErrorCode::syntax_error, "key '" + key + "' takes a scalar, got a list");
    return items.front().text;
  }
};

ConfigValue parse_value(const std::string& key, const std::string& raw) {
  ConfigValue value;
  std::string t = trim(raw);
  if (t.empty()) throw_error(ErrorCode::syntax_error, "key '" + key + "' has no value");
  if (t.front() == '[') {
    if (t.back() != ']')
      throw_error(ErrorCode::syntax_error, "unterminated list for key '" + key + "'");
    value.is_list = true;
    std::string body = t.substr(1, t.size() - 2);
    std::string item;
    std::istringstream in(body);
    while (std::getline(in, item, ',')) {
      std::string it = trim(item);
      if (it.empty())
        throw_error(ErrorCode::syntax_error, "empty list element for key '" + key + "'");
      value.items.push_back(Scalar{it});
    }
    if (value.items.empty())
      throw_error(ErrorCode::domain_violation, "key '" + key + "' must not be an empty list");
  } else {
    value.items.push_back(Scalar{t});
  }
  return value;
}

double to_number(const std::string& key, const std::string& text) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size() || !std::isfinite(v))
    throw_error(ErrorCode::syntax_error, "key '" + key + "': '" + text + "' is not a number");
  return v;
}

std::int64_t to_integer(const std::string& key, const std::string& text) {
  const double v = to_number(key, text);
  if (v != std::floor(v))
    throw_error(ErrorCode::syntax_error, "key '" + key + "': '" + text + "' is not an integer");
  return static_cast<std::int64_t>(v);
}

bool to_boolean(const std::string& key, const std::string& text) {
  if (text == "true") return true;
  if (text == "false") return false;
  throw_error(ErrorCode::syntax_error, "key '" + key + "': '" + text + "' is not a boolean");
}

int positive_pixels(const std::string& key, const std::string& text) {
  const std::int64_t v = to_integer(key, text);
  if (v <= 0)
    throw_error(ErrorCode::domain_violation, "key '" + key + "' must be a positive pixel count");
  return static_cast<int>(v);
}

template <typename T>
std::vector<T> subset_of(const std::string& key, const ConfigValue& value,
                         const std::vector<std::pair<std::string, T>>& allowed) {
  std::vector<T> out;
  std::set<std::string> seen;
  for (const auto& item : value.items) {
    auto it = std::find_if(allowed.begin(), allowed.end(),
                           [&](const auto& a) { return a.first == item.text; });
    if (it == allowed.end())
      throw_error(ErrorCode::domain_violation,
                  "key '" + key + "': '" + item.text + "' is outside the allowed domain");
    if (!seen.insert(item.text).second)
      throw_error(ErrorCode::domain_violation,
                  "key '" + key + "': duplicate value '" + item.text + "'");
    out.push_back(it->second);
  }
  return out;
}

}  // namespace

Config load_config(const std::string& text) {
  Config config;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos)
      throw_error(ErrorCode::syntax_error,
                  "line " + std::to_string(line_no) + ": expected `key: value`");
    const std::string key = trim(line.substr(0, colon));
    if (key.empty())
      throw_error(ErrorCode::syntax_error, "line " + std::to_string(line_no) + ": empty key");
    const ConfigValue value = parse_value(key, line.substr(colon + 1));

    if (key == "records_dir") {
      config.records_dir = value.single(key);
    } else if (key == "index_csv") {
      config.index_csv = value.single(key);
    } else if (key == "output_root") {
      config.output_root = value.single(key);
    } else if (key == "global_seed") {
      const std::string& s = value.single(key);
      char* end = nullptr;
      const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
      if (s.empty() || end != s.c_str() + s.size())
        throw_error(ErrorCode::syntax_error, "global_seed '" + s + "' is not an integer");
      config.global_seed = static_cast<std::uint64_t>(v);
    } else if (key == "workers") {
      const std::int64_t v = to_integer(key, value.single(key));
      if (v < 1) throw_error(ErrorCode::domain_violation, "workers must be >= 1");
      config.worker_count = static_cast<int>(v);
    } else if (key == "limit") {
      const std::int64_t v = to_integer(key, value.single(key));
      if (v < 0) throw_error(ErrorCode::domain_violation, "limit must be >= 0");
      config.limit = v;
    } else if (key == "overwrite") {
      config.overwrite = to_boolean(key, value.single(key));
    } else if (key == "splits") {
      config.splits = subset_of<index::Split>(key, value,
                                              {{"train", index::Split::train},
                                               {"val", index::Split::val},
                                               {"test", index::Split::test}});
    } else if (key == "paper_speed") {
      config.domains.paper_speeds = subset_of<int>(key, value, {{"25", 25}, {"50", 50}});
    } else if (key == "voltage_scale") {
      config.domains.voltage_scales = subset_of<int>(key, value, {{"5", 5}, {"10", 10}});
    } else if (key == "grid_visible") {
      auto flags = subset_of<bool>(key, value, {{"true", true}, {"false", false}});
      config.domains.grid_visibility.assign(flags.begin(), flags.end());
    } else if (key == "grid_color") {
      config.domains.grid_colors = subset_of<geometry::GridColor>(
          key, value,
          {{"red", geometry::GridColor::red},
           {"green", geometry::GridColor::green},
           {"black", geometry::GridColor::black},
           {"gray", geometry::GridColor::gray}});
    } else if (key == "stroke_width") {
      if (!value.is_list || value.items.size() != 2)
        throw_error(ErrorCode::syntax_error, "stroke_width takes a [min, max] pair");
      const double lo = to_number(key, value.items[0].text);
      const double hi = to_number(key, value.items[1].text);
      if (!(2.0 <= lo && lo <= hi && hi <= 3.0))
        throw_error(ErrorCode::domain_violation,
                    "stroke_width range must sit inside [2.0, 3.0]");
      config.domains.stroke_width_min = lo;
      config.domains.stroke_width_max = hi;
    } else if (key == "grid_opacity") {
      if (to_number(key, value.single(key)) != 0.8)
        throw_error(ErrorCode::domain_violation, "grid_opacity is fixed at 0.8");
    } else if (key == "canvas_width") {
      config.canvas.width_px = positive_pixels(key, value.single(key));
    } else if (key == "canvas_height") {
      config.canvas.height_px = positive_pixels(key, value.single(key));
    } else if (key == "canvas_dpi") {
      config.canvas.dpi = positive_pixels(key, value.single(key));
    } else if (key == "margin_top") {
      config.canvas.margin_top_px = positive_pixels(key, value.single(key));
    } else if (key == "margin_bottom") {
      config.canvas.margin_bottom_px = positive_pixels(key, value.single(key));
    } else if (key == "margin_left") {
      config.canvas.margin_left_px = positive_pixels(key, value.single(key));
    } else if (key == "margin_right") {
      config.canvas.margin_right_px = positive_pixels(key, value.single(key));
    } else if (key == "lead_gap") {
      config.canvas.lead_gap_px = positive_pixels(key, value.single(key));
    } else if (key == "pulse_slot") {
      config.canvas.pulse_slot_px = positive_pixels(key, value.single(key));
    } else if (key == "col_record_id") {
      config.columns.record_id = value.single(key);
    } else if (key == "col_age") {
      config.columns.age = value.single(key);
    } else if (key == "col_sex") {
      config.columns.sex = value.single(key);
    } else if (key == "col_height") {
      config.columns.height = value.single(key);
    } else if (key == "col_weight") {
      config.columns.weight = value.single(key);
    } else if (key == "col_scp_codes") {
      config.columns.scp_codes = value.single(key);
    } else if (key == "col_baseline_drift") {
      config.columns.baseline_drift = value.single(key);
    } else if (key == "col_static_noise") {
      config.columns.static_noise = value.single(key);
    } else if (key == "col_strat_fold") {
      config.columns.strat_fold = value.single(key);
    } else if (key == "col_filename") {
      config.columns.filename = value.single(key);
    } else {
      throw_error(ErrorCode::unknown_key, "unknown config key '" + key + "'");
    }
  }
  return config;
}

Config load_config_file(const std::string& path) {
  return load_config(fsio::read_text(path));
}

}  // namespace ecgen::pipeline
