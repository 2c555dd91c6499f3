#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "ecgen/validate.hpp"

namespace ecgen::tools {

struct CorpusOptions {
  std::int64_t count = 60;
  std::uint64_t seed = 7;
  // When true every row passes the quality filter; otherwise every 12th row
  // gets a rejectable noise grade, exercising the skip path.
  bool all_clean = true;
  // Signal kinds cycled across records.
  std::vector<validate::FixtureKind> kinds = {validate::FixtureKind::sine_sweep,
                                              validate::FixtureKind::square,
                                              validate::FixtureKind::ecg_template};
};

// Writes <dir>/records/<id>.{hea,dat} synthetic WFDB records plus
// <dir>/index.csv describing them. Record ids are zero-padded and cycle
// through the three synthetic signal kinds; strat folds cycle 1..10 so all
// splits are populated. Returns the index path.
std::filesystem::path write_fixture_corpus(const std::filesystem::path& dir,
                                           const CorpusOptions& options = {});

}  // namespace ecgen::tools
