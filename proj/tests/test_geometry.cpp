#include <doctest.h>

#include <cmath>
#include <set>

#include "ecgen/errors.hpp"
#include "ecgen/geometry.hpp"
#include "ecgen/rng.hpp"

using namespace ecgen;
using geometry::CanvasSpec;
using geometry::GridColor;
using geometry::ParamDomains;
using geometry::RenderParams;

namespace {

RenderParams with_speed_scale(int speed, int scale) {
  RenderParams params;
  params.paper_speed_mm_s = speed;
  params.voltage_scale_mm_mv = scale;
  return params;
}

}  // namespace

TEST_SUITE("geometry") {
  TEST_CASE("calibration is exact for all four speed/scale combinations") {
    const CanvasSpec canvas;
    // Usable trace width: 2481 - 150 - 150 - 70 = 2111 px over 10 s.
    struct Row {
      int speed;
      int scale;
      double px_per_mm;
      double px_per_mv;
    };
    const Row rows[] = {
        {25, 10, 8.444, 84.44},
        {25, 5, 8.444, 42.22},
        {50, 10, 4.222, 42.22},
        {50, 5, 4.222, 21.11},
    };
    for (const auto& row : rows) {
      CAPTURE(row.speed);
      CAPTURE(row.scale);
      const auto cal =
          geometry::compute_calibration(canvas, with_speed_scale(row.speed, row.scale), 10.0);
      CHECK(cal.px_per_sec == doctest::Approx(211.1).epsilon(1e-12));
      CHECK(cal.px_per_mm == doctest::Approx(row.px_per_mm).epsilon(1e-12));
      CHECK(cal.px_per_mv == doctest::Approx(row.px_per_mv).epsilon(1e-12));
      CHECK(cal.seconds_per_mm == doctest::Approx(1.0 / row.speed).epsilon(1e-12));
      // Internal consistency: px_per_mv = px_per_mm * scale, px_per_sec = px_per_mm * speed.
      CHECK(cal.px_per_mv == doctest::Approx(cal.px_per_mm * row.scale).epsilon(1e-12));
      CHECK(cal.px_per_sec == doctest::Approx(cal.px_per_mm * row.speed).epsilon(1e-12));
    }
  }

  TEST_CASE("calibration rejects degenerate canvases") {
    CanvasSpec canvas;
    canvas.width_px = canvas.margin_left_px + canvas.margin_right_px + canvas.pulse_slot_px;
    try {
      geometry::compute_calibration(canvas, RenderParams{}, 10.0);
      FAIL("expected NonPositiveWidth");
    } catch (const Error& err) {
      CHECK(err.code() == ErrorCode::non_positive_width);
    }
  }

  TEST_CASE("layout pins every lead region to frozen coordinates") {
    const auto layout = geometry::compute_layout(CanvasSpec{});
    // (3507 - 100 - 100 - 11*30) / 12 = 248 px per lead row.
    CHECK(layout.region_height_px == 248);
    for (int i = 0; i < geometry::kLeadCount; ++i) {
      CAPTURE(i);
      const auto& lead = layout.leads[static_cast<std::size_t>(i)];
      const int top = 100 + 278 * i;
      CHECK(lead.region == geometry::PixelBox{150, top, 2181, 248});
      CHECK(lead.baseline_y == top + 124);
      CHECK(lead.trace_x0 == 220);  // region.x + pulse slot
      CHECK(lead.name_x == 158);
      CHECK(lead.name_y == top + 4);
    }
    // Last row must respect the bottom margin.
    const auto& last = layout.leads[11];
    CHECK(last.region.y + last.region.h <= 3507 - 100);
  }

  TEST_CASE("layout overflows when rows cannot fit") {
    CanvasSpec canvas;
    canvas.height_px = 500;
    try {
      geometry::compute_layout(canvas);
      FAIL("expected LayoutOverflow");
    } catch (const Error& err) {
      CHECK(err.code() == ErrorCode::layout_overflow);
    }
  }

  TEST_CASE("sample_params consumes exactly five draws in fixed order") {
    rng::Rng sampled(rng::derive_stream_seed(991, "r007"));
    rng::Rng twin(rng::derive_stream_seed(991, "r007"));
    const auto params = geometry::sample_params(sampled);
    // Replay the same stream by hand; the draw order is part of the contract.
    const int speed = twin.next_index(2) == 0 ? 25 : 50;
    const int scale = twin.next_index(2) == 0 ? 5 : 10;
    const bool visible = twin.next_index(2) == 0;
    const auto color = static_cast<GridColor>(twin.next_index(4));
    const double stroke = twin.next_real(2.0, 3.0);
    CHECK(params.paper_speed_mm_s == speed);
    CHECK(params.voltage_scale_mm_mv == scale);
    CHECK(params.grid_visible == visible);
    CHECK(params.grid_color == color);
    CHECK(params.stroke_width_px == stroke);
    // Both generators must now be in the same state.
    CHECK(sampled.next_u64() == twin.next_u64());
  }

  TEST_CASE("singleton domains pin values but still consume draws") {
    ParamDomains domains;
    domains.paper_speeds = {50};
    domains.voltage_scales = {5};
    domains.grid_visibility = {false};
    domains.grid_colors = {GridColor::gray};
    domains.stroke_width_min = 2.25;
    domains.stroke_width_max = 2.25;

    rng::Rng sampled(123456789);
    rng::Rng twin(123456789);
    const auto params = geometry::sample_params(sampled, domains);
    CHECK(params.paper_speed_mm_s == 50);
    CHECK(params.voltage_scale_mm_mv == 5);
    CHECK(params.grid_visible == false);
    CHECK(params.grid_color == GridColor::gray);
    CHECK(params.stroke_width_px == 2.25);
    for (int i = 0; i < 5; ++i) twin.next_u64();
    CHECK(sampled.next_u64() == twin.next_u64());
  }

  TEST_CASE("sampled values stay inside their domains") {
    rng::Rng rng(2024);
    std::set<int> speeds;
    std::set<int> scales;
    std::set<GridColor> colors;
    for (int i = 0; i < 400; ++i) {
      const auto params = geometry::sample_params(rng);
      speeds.insert(params.paper_speed_mm_s);
      scales.insert(params.voltage_scale_mm_mv);
      colors.insert(params.grid_color);
      CHECK(params.stroke_width_px >= 2.0);
      CHECK(params.stroke_width_px < 3.0);
      CHECK(params.grid_opacity == 0.8);
      CHECK(params.rng_seed == 0);  // caller fills this in
    }
    CHECK(speeds == std::set<int>{25, 50});
    CHECK(scales == std::set<int>{5, 10});
    CHECK(colors.size() == 4);
  }

  TEST_CASE("grid color names") {
    CHECK(std::string(geometry::grid_color_name(GridColor::red)) == "red");
    CHECK(std::string(geometry::grid_color_name(GridColor::green)) == "green");
    CHECK(std::string(geometry::grid_color_name(GridColor::black)) == "black");
    CHECK(std::string(geometry::grid_color_name(GridColor::gray)) == "gray");
  }

  TEST_CASE("signal_to_path maps samples by the documented affine rule") {
    const CanvasSpec canvas;
    const auto layout = geometry::compute_layout(canvas);
    const auto cal = geometry::compute_calibration(canvas, with_speed_scale(25, 10), 10.0);
    const auto& lead = layout.leads[3];
    const std::vector<double> signal = {0.0, 1.0, -0.5, 2.0};
    const auto path = geometry::signal_to_path(signal, cal, lead, 500.0);
    REQUIRE(path.size() == signal.size());
    for (std::size_t i = 0; i < signal.size(); ++i) {
      CAPTURE(i);
      CHECK(path[i].x ==
            doctest::Approx(lead.trace_x0 + static_cast<double>(i) / 500.0 * cal.px_per_sec)
                .epsilon(1e-12));
      CHECK(path[i].y ==
            doctest::Approx(lead.baseline_y - signal[i] * cal.px_per_mv).epsilon(1e-12));
    }
    // x advances strictly monotonically.
    for (std::size_t i = 1; i < path.size(); ++i) CHECK(path[i].x > path[i - 1].x);
  }

  TEST_CASE("signal_to_path inverse recovers voltages exactly") {
    const CanvasSpec canvas;
    const auto layout = geometry::compute_layout(canvas);
    const std::vector<double> signal = {0.0, 0.25, -1.75, 1.0, -0.003125};
    for (int speed : {25, 50}) {
      for (int scale : {5, 10}) {
        CAPTURE(speed);
        CAPTURE(scale);
        const auto cal =
            geometry::compute_calibration(canvas, with_speed_scale(speed, scale), 10.0);
        const auto path = geometry::signal_to_path(signal, cal, layout.leads[0], 500.0);
        for (std::size_t i = 0; i < signal.size(); ++i) {
          const double recovered = (layout.leads[0].baseline_y - path[i].y) / cal.px_per_mv;
          CHECK(std::abs(recovered - signal[i]) < 1e-9);
        }
      }
    }
  }
}
