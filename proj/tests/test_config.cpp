#include <doctest.h>

#include <string>
#include <vector>

#include "ecgen/config.hpp"
#include "ecgen/errors.hpp"
#include "ecgen/geometry.hpp"
#include "ecgen/index.hpp"

using namespace ecgen;
using pipeline::Config;
using pipeline::load_config;

namespace {

// io_error doubles as "did not throw": no config grammar test expects it.
ErrorCode code_of(const std::string& text) {
  try {
    load_config(text);
  } catch (const Error& err) {
    return err.code();
  }
  return ErrorCode::io_error;
}

}  // namespace

TEST_SUITE("config") {
  TEST_CASE("empty text yields the default configuration") {
    const Config config = load_config("");
    CHECK(config.records_dir == "records");
    CHECK(config.index_csv == "index.csv");
    CHECK(config.output_root == "output");
    CHECK(config.global_seed == 42);
    CHECK(config.worker_count == 1);
    CHECK(!config.limit.has_value());
    CHECK(config.splits ==
          std::vector<index::Split>{index::Split::train, index::Split::val, index::Split::test});
    CHECK(config.overwrite == false);
    CHECK(config.canvas.width_px == 2481);
    CHECK(config.canvas.height_px == 3507);
    CHECK(config.domains.paper_speeds == std::vector<int>{25, 50});
    CHECK(config.domains.voltage_scales == std::vector<int>{5, 10});
    CHECK(config.domains.stroke_width_min == 2.0);
    CHECK(config.domains.stroke_width_max == 3.0);
  }

  TEST_CASE("comments, blank lines, and whitespace are tolerated") {
    const Config config = load_config(
        "# generation run for the large corpus\n"
        "\n"
        "  global_seed :  1234   # fixed for reproducibility\n"
        "workers: 8\n"
        "\t\n"
        "output_root: /tmp/out dir\n");
    CHECK(config.global_seed == 1234);
    CHECK(config.worker_count == 8);
    CHECK(config.output_root == "/tmp/out dir");
  }

  TEST_CASE("scalar settings parse into typed fields") {
    const Config config = load_config(
        "records_dir: data/records\n"
        "index_csv: data/index.csv\n"
        "limit: 250\n"
        "overwrite: true\n"
        "canvas_width: 1240\n"
        "canvas_height: 1754\n"
        "canvas_dpi: 150\n"
        "margin_top: 50\n"
        "margin_bottom: 50\n"
        "margin_left: 75\n"
        "margin_right: 75\n"
        "lead_gap: 15\n"
        "pulse_slot: 35\n");
    CHECK(config.records_dir == "data/records");
    CHECK(config.index_csv == "data/index.csv");
    REQUIRE(config.limit.has_value());
    CHECK(*config.limit == 250);
    CHECK(config.overwrite == true);
    CHECK(config.canvas.width_px == 1240);
    CHECK(config.canvas.height_px == 1754);
    CHECK(config.canvas.dpi == 150);
    CHECK(config.canvas.margin_top_px == 50);
    CHECK(config.canvas.lead_gap_px == 15);
    CHECK(config.canvas.pulse_slot_px == 35);
  }

  TEST_CASE("list keys restrict parameter domains") {
    const Config config = load_config(
        "paper_speed: [25]\n"
        "voltage_scale: [10, 5]\n"
        "grid_visible: [true]\n"
        "grid_color: [green, gray]\n"
        "stroke_width: [2.2, 2.8]\n"
        "splits: [train, test]\n");
    CHECK(config.domains.paper_speeds == std::vector<int>{25});
    CHECK(config.domains.voltage_scales == std::vector<int>{10, 5});
    CHECK(config.domains.grid_visibility == std::vector<bool>{true});
    CHECK(config.domains.grid_colors ==
          std::vector<geometry::GridColor>{geometry::GridColor::green, geometry::GridColor::gray});
    CHECK(config.domains.stroke_width_min == 2.2);
    CHECK(config.domains.stroke_width_max == 2.8);
    CHECK(config.splits == std::vector<index::Split>{index::Split::train, index::Split::test});
  }

  TEST_CASE("index column names are remappable") {
    const Config config = load_config(
        "col_record_id: id\n"
        "col_scp_codes: diagnostic_codes\n"
        "col_filename: filename_hr\n");
    CHECK(config.columns.record_id == "id");
    CHECK(config.columns.scp_codes == "diagnostic_codes");
    CHECK(config.columns.filename == "filename_hr");
  }

  TEST_CASE("syntax errors are rejected") {
    CHECK(code_of("just a line without colon\n") == ErrorCode::syntax_error);
    CHECK(code_of(": no key\n") == ErrorCode::syntax_error);
    CHECK(code_of("workers:\n") == ErrorCode::syntax_error);
    CHECK(code_of("workers: eight\n") == ErrorCode::syntax_error);
    CHECK(code_of("workers: 2.5\n") == ErrorCode::syntax_error);
    CHECK(code_of("paper_speed: [25\n") == ErrorCode::syntax_error);
    CHECK(code_of("paper_speed: [25,, 50]\n") == ErrorCode::syntax_error);
    CHECK(code_of("workers: [2, 4]\n") == ErrorCode::syntax_error);
    CHECK(code_of("stroke_width: 2.5\n") == ErrorCode::syntax_error);
    CHECK(code_of("stroke_width: [2.0, 2.5, 3.0]\n") == ErrorCode::syntax_error);
    CHECK(code_of("overwrite: yes\n") == ErrorCode::syntax_error);
  }

  TEST_CASE("unknown keys are rejected") {
    CHECK(code_of("paper_speeds: [25]\n") == ErrorCode::unknown_key);
    CHECK(code_of("seed: 42\n") == ErrorCode::unknown_key);
  }

  TEST_CASE("domain violations are rejected") {
    CHECK(code_of("paper_speed: [30]\n") == ErrorCode::domain_violation);
    CHECK(code_of("paper_speed: [25, 25]\n") == ErrorCode::domain_violation);
    CHECK(code_of("paper_speed: []\n") == ErrorCode::domain_violation);
    CHECK(code_of("voltage_scale: [7]\n") == ErrorCode::domain_violation);
    CHECK(code_of("grid_color: [blue]\n") == ErrorCode::domain_violation);
    CHECK(code_of("splits: [train, holdout]\n") == ErrorCode::domain_violation);
    CHECK(code_of("stroke_width: [1.5, 2.5]\n") == ErrorCode::domain_violation);
    CHECK(code_of("stroke_width: [2.5, 3.5]\n") == ErrorCode::domain_violation);
    CHECK(code_of("stroke_width: [2.8, 2.2]\n") == ErrorCode::domain_violation);
    CHECK(code_of("grid_opacity: 0.5\n") == ErrorCode::domain_violation);
    CHECK(code_of("workers: 0\n") == ErrorCode::domain_violation);
    CHECK(code_of("limit: -1\n") == ErrorCode::domain_violation);
    CHECK(code_of("canvas_width: 0\n") == ErrorCode::domain_violation);
    // The fixed opacity value is accepted as a no-op.
    CHECK_NOTHROW(load_config("grid_opacity: 0.8\n"));
  }

  TEST_CASE("load_config_file reads from disk and reports missing files") {
    CHECK_THROWS_AS(pipeline::load_config_file("/nonexistent/ecgen.conf"), Error);
  }
}
