#include "ecgen/validate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include <json.hpp>

#include "ecgen/errors.hpp"
#include "ecgen/fsio.hpp"
#include "ecgen/imageio.hpp"
#include "ecgen/npy.hpp"
#include "ecgen/pipeline.hpp"
#include "ecgen/rng.hpp"

namespace ecgen::validate {

namespace fs = std::filesystem;

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size() || a.size() < 2) {
    throw_error(ErrorCode::length_mismatch, "pearson needs two equal-length series of >= 2");
  }
  const double n = static_cast<double>(a.size());
  double mean_a = 0.0;
  double mean_b = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    mean_a += a[i];
    mean_b += b[i];
  }
  mean_a /= n;
  mean_b /= n;
  double cov = 0.0;
  double var_a = 0.0;
  double var_b = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - mean_a;
    const double db = b[i] - mean_b;
    cov += da * db;
    var_a += da * da;
    var_b += db * db;
  }
  if (var_a < 1e-30 || var_b < 1e-30) {
    throw_error(ErrorCode::constant_series, "pearson undefined for a constant series");
  }
  return cov / std::sqrt(var_a * var_b);
}

double mse(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size() || a.empty()) {
    throw_error(ErrorCode::length_mismatch, "mse needs two equal-length non-empty series");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return acc / static_cast<double>(a.size());
}

double iou(const geometry::PixelBox& a, const geometry::PixelBox& b) {
  const int ix0 = std::max(a.x, b.x);
  const int iy0 = std::max(a.y, b.y);
  const int ix1 = std::min(a.x + a.w, b.x + b.w);
  const int iy1 = std::min(a.y + a.h, b.y + b.h);
  const double inter = static_cast<double>(std::max(0, ix1 - ix0)) * std::max(0, iy1 - iy0);
  const double uni = static_cast<double>(a.w) * a.h + static_cast<double>(b.w) * b.h - inter;
  return uni > 0.0 ? inter / uni : 0.0;
}

geometry::CalibrationModel calibration_from_metadata(const annotate::SampleMetadata& meta) {
  geometry::CalibrationModel cal;
  cal.px_per_mm = meta.px_per_mm;
  cal.px_per_sec = meta.px_per_sec;
  cal.px_per_mv = meta.px_per_mv;
  cal.seconds_per_mm = meta.paper_speed_mm_s > 0 ? 1.0 / meta.paper_speed_mm_s : 0.0;
  return cal;
}

geometry::LeadLayout layout_from_metadata(const annotate::SampleMetadata& meta) {
  if (meta.leads.size() != static_cast<std::size_t>(geometry::kLeadCount)) {
    throw_error(ErrorCode::shape_mismatch,
                "metadata carries " + std::to_string(meta.leads.size()) + " leads, expected 12");
  }
  const int span_px = static_cast<int>(std::lround(meta.px_per_sec * meta.duration_s));
  geometry::LeadLayout layout;
  layout.region_height_px = meta.leads.front().region_box.h;
  for (int i = 0; i < geometry::kLeadCount; ++i) {
    const annotate::LeadAnnotation& lead = meta.leads[static_cast<std::size_t>(i)];
    geometry::LeadRegion& out = layout.leads[static_cast<std::size_t>(i)];
    out.region = lead.region_box;
    out.baseline_y = lead.baseline_y;
    out.trace_x0 = lead.region_box.x + lead.region_box.w - span_px;
    out.name_x = lead.name_box.x;
    out.name_y = lead.name_box.y;
  }
  return layout;
}

std::vector<std::vector<double>> extract_from_mask(const render::Mask& mask,
                                                   const geometry::LeadLayout& layout,
                                                   const geometry::CalibrationModel& cal,
                                                   double fs_hz, double duration_s) {
  const std::int64_t n_samples = std::llround(fs_hz * duration_s);
  const int span_px = static_cast<int>(std::lround(cal.px_per_sec * duration_s));
  std::vector<std::vector<double>> out;
  out.reserve(geometry::kLeadCount);

  for (int li = 0; li < geometry::kLeadCount; ++li) {
    const geometry::LeadRegion& lead = layout.leads[static_cast<std::size_t>(li)];
    const int y0 = std::max(0, lead.region.y - 10);
    const int y1 = std::min(mask.height - 1, lead.region.y + lead.region.h - 1 + 10);
    const int x0 = lead.trace_x0;
    const int x1 = std::min(x0 + span_px - 1, mask.width - 1);
    const int n_cols = x1 - x0 + 1;
    if (n_cols <= 0) throw_error(ErrorCode::empty_lead, "lead " + std::to_string(li) + ": empty trace span");

    std::vector<double> col_v(static_cast<std::size_t>(n_cols), 0.0);
    std::vector<char> filled(static_cast<std::size_t>(n_cols), 0);
    bool any = false;
    for (int cx = x0; cx <= x1; ++cx) {
      double sum = 0.0;
      int count = 0;
      for (int y = y0; y <= y1; ++y) {
        if (mask.at(cx, y) >= 128) {
          sum += y + 0.5;
          ++count;
        }
      }
      if (count > 0) {
        col_v[static_cast<std::size_t>(cx - x0)] =
            (lead.baseline_y - sum / count) / cal.px_per_mv;
        filled[static_cast<std::size_t>(cx - x0)] = 1;
        any = true;
      }
    }
    if (!any) {
      throw_error(ErrorCode::empty_lead,
                  "lead " + std::to_string(li) + ": no trace pixels in its region");
    }

    // Gap fill: interior gaps lerp between the bracketing filled columns,
    // leading/trailing gaps copy the nearest filled value.
    int first = 0;
    while (!filled[static_cast<std::size_t>(first)]) ++first;
    int last = n_cols - 1;
    while (!filled[static_cast<std::size_t>(last)]) --last;
    for (int j = 0; j < first; ++j) col_v[static_cast<std::size_t>(j)] = col_v[static_cast<std::size_t>(first)];
    for (int j = last + 1; j < n_cols; ++j) col_v[static_cast<std::size_t>(j)] = col_v[static_cast<std::size_t>(last)];
    int prev = first;
    for (int j = first + 1; j <= last; ++j) {
      if (!filled[static_cast<std::size_t>(j)]) continue;
      for (int g = prev + 1; g < j; ++g) {
        const double t = static_cast<double>(g - prev) / (j - prev);
        col_v[static_cast<std::size_t>(g)] = (1.0 - t) * col_v[static_cast<std::size_t>(prev)] +
                                             t * col_v[static_cast<std::size_t>(j)];
      }
      prev = j;
    }

    // Resample from column centers onto the sample clock.
    std::vector<double> series(static_cast<std::size_t>(n_samples), 0.0);
    for (std::int64_t i = 0; i < n_samples; ++i) {
      const double x = x0 + static_cast<double>(i) / fs_hz * cal.px_per_sec;
      const double pos = x - (x0 + 0.5);  // offset into the column-center grid
      if (pos <= 0.0) {
        series[static_cast<std::size_t>(i)] = col_v.front();
      } else if (pos >= n_cols - 1) {
        series[static_cast<std::size_t>(i)] = col_v.back();
      } else {
        const int j = static_cast<int>(pos);
        const double t = pos - j;
        series[static_cast<std::size_t>(i)] = (1.0 - t) * col_v[static_cast<std::size_t>(j)] +
                                              t * col_v[static_cast<std::size_t>(j + 1)];
      }
    }
    out.push_back(std::move(series));
  }
  return out;
}

namespace {

struct Discovered {
  std::string record_id;
  std::string split;
};

std::vector<Discovered> discover_samples(const fs::path& output_root) {
  std::vector<Discovered> found;
  for (const char* split : {"train", "val", "test"}) {
    const fs::path dir = output_root / split / "metadata";
    std::error_code ec;
    if (!fs::is_directory(dir, ec) || ec) continue;
    for (const fs::directory_entry& entry : fs::directory_iterator(dir)) {
      if (!entry.is_regular_file() || entry.path().extension() != ".json") continue;
      found.push_back(Discovered{entry.path().stem().string(), split});
    }
  }
  std::sort(found.begin(), found.end(), [](const Discovered& a, const Discovered& b) {
    return a.record_id != b.record_id ? a.record_id < b.record_id : a.split < b.split;
  });
  return found;
}

void validate_one(const fs::path& output_root, const Discovered& item, SampleMetrics& sample) {
  const pipeline::ArtifactPaths paths =
      pipeline::artifact_paths(output_root, item.split, item.record_id);
  std::error_code ec;
  for (const fs::path* p : {&paths.mask, &paths.signals, &paths.metadata}) {
    if (!fs::is_regular_file(*p, ec) || ec) {
      throw_error(ErrorCode::missing_artifact, item.record_id + ": missing " + p->string());
    }
  }
  const annotate::SampleMetadata meta =
      annotate::parse_metadata(fsio::read_text(paths.metadata));
  const render::Mask mask = imageio::decode_png_gray(fsio::read_bytes(paths.mask));
  const npy::Array2D stored = npy::read_f64_2d(fsio::read_bytes(paths.signals));

  const geometry::CalibrationModel cal = calibration_from_metadata(meta);
  const geometry::LeadLayout layout = layout_from_metadata(meta);
  const std::vector<std::vector<double>> extracted =
      extract_from_mask(mask, layout, cal, meta.sampling_rate_hz, meta.duration_s);

  if (stored.n_rows != extracted.size() || stored.n_cols != extracted.front().size()) {
    throw_error(ErrorCode::shape_mismatch,
                item.record_id + ": stored signals are " + std::to_string(stored.n_rows) + "x" +
                    std::to_string(stored.n_cols));
  }

  sample.leads.clear();
  double r_sum = 0.0;
  double mse_sum = 0.0;
  sample.min_r = 1.0;
  sample.max_abs_error = 0.0;
  for (std::size_t li = 0; li < extracted.size(); ++li) {
    std::vector<double> row(stored.data.begin() + static_cast<std::ptrdiff_t>(li * stored.n_cols),
                            stored.data.begin() +
                                static_cast<std::ptrdiff_t>((li + 1) * stored.n_cols));
    LeadMetrics lm;
    lm.lead = meta.leads[li].name;
    lm.pearson_r = pearson(extracted[li], row);
    lm.mse = mse(extracted[li], row);
    for (std::size_t i = 0; i < row.size(); ++i) {
      lm.max_abs_error = std::max(lm.max_abs_error, std::abs(extracted[li][i] - row[i]));
    }
    r_sum += lm.pearson_r;
    mse_sum += lm.mse;
    sample.min_r = std::min(sample.min_r, lm.pearson_r);
    sample.max_abs_error = std::max(sample.max_abs_error, lm.max_abs_error);
    sample.leads.push_back(std::move(lm));
  }
  sample.mean_r = r_sum / static_cast<double>(sample.leads.size());
  sample.mean_mse = mse_sum / static_cast<double>(sample.leads.size());
  sample.pass = sample.mean_r >= 0.998 && sample.min_r >= 0.995;
}

}  // namespace

RoundTripReport roundtrip_report(const fs::path& output_root, std::int64_t sample_count) {
  std::vector<Discovered> found = discover_samples(output_root);
  if (found.empty()) {
    throw_error(ErrorCode::missing_artifact,
                "no generated samples under " + output_root.string());
  }
  if (sample_count > 0 && static_cast<std::int64_t>(found.size()) > sample_count) {
    found.resize(static_cast<std::size_t>(sample_count));
  }

  RoundTripReport report;
  report.sample_count = static_cast<std::int64_t>(found.size());
  std::vector<double> all_r;
  std::vector<double> all_mse;
  bool any_error = false;
  for (const Discovered& item : found) {
    SampleMetrics sample;
    sample.record_id = item.record_id;
    sample.split = item.split;
    try {
      validate_one(output_root, item, sample);
    } catch (const Error& err) {
      sample.error = std::string(error_code_name(err.code())) + ": " + err.what();
      sample.pass = false;
      any_error = true;
    } catch (const std::exception& err) {
      sample.error = err.what();
      sample.pass = false;
      any_error = true;
    }
    for (const LeadMetrics& lm : sample.leads) {
      all_r.push_back(lm.pearson_r);
      all_mse.push_back(lm.mse);
    }
    report.samples.push_back(std::move(sample));
  }

  if (!all_r.empty()) {
    const double n = static_cast<double>(all_r.size());
    report.min_r = 1.0;
    for (std::size_t i = 0; i < all_r.size(); ++i) {
      report.mean_r += all_r[i];
      report.mean_mse += all_mse[i];
      report.min_r = std::min(report.min_r, all_r[i]);
    }
    report.mean_r /= n;
    report.mean_mse /= n;
    double vr = 0.0;
    double vm = 0.0;
    for (std::size_t i = 0; i < all_r.size(); ++i) {
      vr += (all_r[i] - report.mean_r) * (all_r[i] - report.mean_r);
      vm += (all_mse[i] - report.mean_mse) * (all_mse[i] - report.mean_mse);
    }
    report.std_r = std::sqrt(vr / n);
    report.std_mse = std::sqrt(vm / n);
    for (const SampleMetrics& sample : report.samples) {
      report.max_abs_error = std::max(report.max_abs_error, sample.max_abs_error);
    }
  }
  report.pass = !any_error && !all_r.empty() && report.mean_r >= 0.998 && report.min_r >= 0.995;

  fsio::write_text_atomic(output_root / "validation_report.json", report_to_json(report));
  return report;
}

std::string report_to_json(const RoundTripReport& report) {
  using json = nlohmann::ordered_json;
  json j;
  j["sample_count"] = report.sample_count;
  j["mean_r"] = report.mean_r;
  j["std_r"] = report.std_r;
  j["min_r"] = report.min_r;
  j["mean_mse"] = report.mean_mse;
  j["std_mse"] = report.std_mse;
  j["max_abs_error"] = report.max_abs_error;
  j["pass"] = report.pass;
  j["samples"] = json::array();
  for (const SampleMetrics& sample : report.samples) {
    json s;
    s["record_id"] = sample.record_id;
    s["split"] = sample.split;
    s["mean_r"] = sample.mean_r;
    s["min_r"] = sample.min_r;
    s["mean_mse"] = sample.mean_mse;
    s["max_abs_error"] = sample.max_abs_error;
    s["pass"] = sample.pass;
    if (!sample.error.empty()) s["error"] = sample.error;
    s["leads"] = json::array();
    for (const LeadMetrics& lm : sample.leads) {
      s["leads"].push_back({{"lead", lm.lead},
                            {"pearson_r", lm.pearson_r},
                            {"mse", lm.mse},
                            {"max_abs_error", lm.max_abs_error}});
    }
    j["samples"].push_back(std::move(s));
  }
  return j.dump(2) + "\n";
}

FixtureKind fixture_kind_from_name(const std::string& name) {
  if (name == "sine_sweep") return FixtureKind::sine_sweep;
  if (name == "square") return FixtureKind::square;
  if (name == "ecg_template") return FixtureKind::ecg_template;
  throw_error(ErrorCode::unknown_kind, "unknown fixture kind '" + name + "'");
}

const char* fixture_kind_name(FixtureKind kind) {
  switch (kind) {
    case FixtureKind::sine_sweep: return "sine_sweep";
    case FixtureKind::square: return "square";
    case FixtureKind::ecg_template: return "ecg_template";
  }
  return "?";
}

namespace {

constexpr int kFixtureSamples = 5000;
constexpr double kFixtureFs = 500.0;

// One beat of the template, phase in [0, 1): a tanh-smoothed square baseline
// carrying raised-cosine P/QRS/T bumps on its positive half. The QRS apex
// lands where the baseline is at its +0.70 plateau, so the apex is exactly
// 0.70 + 0.30 = 1.0 mV, and no other feature reaches 0.8 mV.
double template_beat(double phase) {
  const double base = 0.70 * std::tanh(4.0 * std::sin(2.0 * M_PI * phase)) / std::tanh(4.0);
  double v = base;
  const struct {
    double amp, center, half_width;
  } bumps[] = {{0.08, 0.10, 0.06}, {0.30, 0.25, 0.12}, {0.10, 0.42, 0.10}};
  for (const auto& b : bumps) {
    const double d = phase - b.center;
    if (std::abs(d) < b.half_width) {
      const double c = std::cos(M_PI * d / (2.0 * b.half_width));
      v += b.amp * c * c;
    }
  }
  return v;
}

}  // namespace

SyntheticRecord synth_fixture(FixtureKind kind, std::uint64_t seed) {
  SyntheticRecord record;
  record.kind = kind;
  record.values_mv.assign(geometry::kLeadCount,
                          std::vector<double>(kFixtureSamples, 0.0));
  rng::Rng rng(seed);
  switch (kind) {
    case FixtureKind::sine_sweep:
      for (int k = 0; k < geometry::kLeadCount; ++k) {
        const double f = k + 1.0;
        for (int i = 0; i < kFixtureSamples; ++i) {
          record.values_mv[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] =
              std::sin(2.0 * M_PI * f * i / kFixtureFs);
        }
      }
      break;
    case FixtureKind::square:
      for (int k = 0; k < geometry::kLeadCount; ++k) {
        for (int i = 0; i < kFixtureSamples; ++i) {
          record.values_mv[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] =
              std::sin(2.0 * M_PI * 2.0 * i / kFixtureFs) >= 0.0 ? 0.5 : -0.5;
        }
      }
      break;
    case FixtureKind::ecg_template: {
      const double bpm = rng.next_real(60.0, 90.0);
      const int beats = static_cast<int>(10.0 * bpm / 60.0);  // beats fitting 10 s
      // Period chosen so the record holds an exact whole number of beats;
      // circular per-lead shifts then stay seamless.
      for (int k = 0; k < geometry::kLeadCount; ++k) {
        const int shift = static_cast<int>(rng.next_index(kFixtureSamples));
        for (int i = 0; i < kFixtureSamples; ++i) {
          const int j = (i + shift) % kFixtureSamples;
          const double cycles = static_cast<double>(j) * beats / kFixtureSamples;
          record.values_mv[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] =
              template_beat(cycles - std::floor(cycles));
        }
      }
      break;
    }
  }
  return record;
}

SyntheticRecord synth_fixture(const std::string& kind, std::uint64_t seed) {
  return synth_fixture(fixture_kind_from_name(kind), seed);
}

}  // namespace ecgen::validate
