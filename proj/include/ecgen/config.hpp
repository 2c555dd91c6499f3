#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ecgen/geometry.hpp"
#include "ecgen/index.hpp"

namespace ecgen::pipeline {

struct Config {
  std::string records_dir = "records";
  std::string index_csv = "index.csv";
  std::string output_root = "output";
  std::uint64_t global_seed = 42;
  int worker_count = 1;
  std::optional<std::int64_t> limit;
  std::vector<index::Split> splits = {index::Split::train, index::Split::val,
                                      index::Split::test};
  bool overwrite = false;
  geometry::CanvasSpec canvas;
  geometry::ParamDomains domains;
  index::ColumnNames columns;
};

// Flat `key: value` grammar with '#' comments and `[a, b]` lists. Unknown keys
// are rejected; absent keys keep their defaults; values outside the allowed
// parameter domains raise DomainViolation.
Config load_config(const std::string& text);

Config load_config_file(const std::string& path);

}  // namespace ecgen::pipeline
