#include "ecgen/wfdb.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

#include "ecgen/errors.hpp"

namespace ecgen::wfdb {

const std::array<std::string, kLeadCount> kLeadOrder = {
    "I", "II", "III", "aVR", "aVL", "aVF", "V1", "V2", "V3", "V4", "V5", "V6"};

namespace {

constexpr std::int16_t kInvalidSample = -32768;

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) tokens.push_back(tok);
  return tokens;
}

bool parse_long(const std::string& s, std::int64_t& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

bool parse_double(const std::string& s, double& out) {
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size() && s.size() > 0 && std::isfinite(out);
}

bool all_numeric(const std::string& s) {
  double d;
  return parse_double(s, d);
}

// Gain field grammar: gain[(baseline)][/units], e.g. "1000.0(0)/mV".
void parse_gain_field(const std::string& field, double& gain, int& baseline) {
  std::string body = field;
  auto slash = body.find('/');
  if (slash != std::string::npos) body = body.substr(0, slash);

  auto open = body.find('(');
  if (open != std::string::npos) {
    auto close = body.find(')', open);
    if (close == std::string::npos)
      throw_error(ErrorCode::malformed_header, "unterminated baseline in gain field '" + field + "'");
    std::int64_t b = 0;
    if (!parse_long(body.substr(open + 1, close - open - 1), b))
      throw_error(ErrorCode::malformed_header, "non-numeric baseline in gain field '" + field + "'");
    baseline = static_cast<int>(b);
    body = body.substr(0, open);
  }

  if (body.empty()) {
    gain = 200.0;  // WFDB default when the gain is omitted
    return;
  }
  double g = 0.0;
  if (!parse_double(body, g))
    throw_error(ErrorCode::malformed_header, "non-numeric gain '" + field + "'");
  gain = g;
}

}  // namespace

RecordHeader parse_header(const std::string& header_text) {
  std::istringstream in(header_text);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
    std::string trimmed = line;
    trimmed.erase(0, trimmed.find_first_not_of(" \t"));
    if (trimmed.empty() || trimmed[0] == '#') continue;
    lines.push_back(line);
  }
  if (lines.empty())
    throw_error(ErrorCode::malformed_header, "empty header");

  auto record_tokens = split_ws(lines[0]);
  if (record_tokens.size() < 4)
    throw_error(ErrorCode::malformed_header,
                "record line needs `name n_signals fs n_samples`, got " +
                    std::to_string(record_tokens.size()) + " tokens");

  RecordHeader header;
  header.record_name = record_tokens[0];
  std::int64_t n_signals = 0, n_samples = 0;
  double fs = 0.0;
  if (!parse_long(record_tokens[1], n_signals) || n_signals <= 0)
    throw_error(ErrorCode::malformed_header, "bad signal count '" + record_tokens[1] + "'");
  if (!parse_double(record_tokens[2], fs) || fs <= 0.0)
    throw_error(ErrorCode::malformed_header, "bad sampling rate '" + record_tokens[2] + "'");
  if (!parse_long(record_tokens[3], n_samples) || n_samples <= 0)
    throw_error(ErrorCode::malformed_header, "bad sample count '" + record_tokens[3] + "'");
  header.n_signals = static_cast<int>(n_signals);
  header.sampling_rate_hz = fs;
  header.n_samples = n_samples;

  if (lines.size() < 1 + static_cast<std::size_t>(header.n_signals))
    throw_error(ErrorCode::malformed_header,
                "expected " + std::to_string(header.n_signals) + " signal lines, got " +
                    std::to_string(lines.size() - 1));

  for (int i = 0; i < header.n_signals; ++i) {
    auto tokens = split_ws(lines[1 + static_cast<std::size_t>(i)]);
    if (tokens.size() < 3)
      throw_error(ErrorCode::malformed_header,
                  "signal line " + std::to_string(i) + " needs filename, format, gain");
    SignalSpec spec;
    spec.file_name = tokens[0];
    std::int64_t fmt = 0;
    if (!parse_long(tokens[1], fmt))
      throw_error(ErrorCode::malformed_header, "non-numeric format '" + tokens[1] + "'");
    if (fmt != 16)
      throw_error(ErrorCode::unsupported_format,
                  "signal format " + std::to_string(fmt) + " (only format 16 supported)");
    spec.format_code = 16;
    parse_gain_field(tokens[2], spec.gain, spec.baseline);
    if (spec.gain <= 0.0)
      throw_error(ErrorCode::malformed_header, "non-positive gain on signal " + std::to_string(i));
    // Trailing description is the lead name; intermediate fields (adc
    // resolution, checksums, ...) are numeric and ignored.
    if (tokens.size() > 3 && !all_numeric(tokens.back())) spec.lead_name = tokens.back();
    header.signals.push_back(std::move(spec));
  }
  return header;
}

std::string serialize_header(const RecordHeader& header) {
  std::ostringstream out;
  out << header.record_name << ' ' << header.n_signals << ' ';
  double fs = header.sampling_rate_hz;
  if (fs == std::floor(fs))
    out << static_cast<std::int64_t>(fs);
  else
    out << fs;
  out << ' ' << header.n_samples << '\n';
  for (const auto& spec : header.signals) {
    out << spec.file_name << ' ' << spec.format_code << ' ' << spec.gain << '('
        << spec.baseline << ")/mV";
    if (!spec.lead_name.empty()) out << ' ' << spec.lead_name;
    out << '\n';
  }
  return out.str();
}

SignalMatrix read_signals(const RecordHeader& header,
                          const std::vector<std::uint8_t>& dat_bytes) {
  const std::size_t n_sig = static_cast<std::size_t>(header.n_signals);
  const std::size_t n_samp = static_cast<std::size_t>(header.n_samples);
  const std::size_t expected = 2 * n_sig * n_samp;
  if (dat_bytes.size() != expected)
    throw_error(ErrorCode::length_mismatch,
                "dat payload is " + std::to_string(dat_bytes.size()) + " bytes, expected " +
                    std::to_string(expected));

  // Decode in header order first.
  std::vector<std::vector<double>> raw(n_sig, std::vector<double>(n_samp));
  std::vector<std::size_t> sentinel_per_signal(n_sig, 0);
  std::int64_t sentinel_total = 0;
  for (std::size_t s = 0; s < n_samp; ++s) {
    for (std::size_t k = 0; k < n_sig; ++k) {
      const std::size_t off = 2 * (s * n_sig + k);
      const std::uint16_t u = static_cast<std::uint16_t>(dat_bytes[off]) |
                              (static_cast<std::uint16_t>(dat_bytes[off + 1]) << 8);
      const std::int16_t v = static_cast<std::int16_t>(u);
      if (v == kInvalidSample) {
        raw[k][s] = 0.0;
        ++sentinel_per_signal[k];
        ++sentinel_total;
      } else {
        raw[k][s] = (static_cast<double>(v) - header.signals[k].baseline) / header.signals[k].gain;
      }
    }
  }
  for (std::size_t k = 0; k < n_sig; ++k) {
    if (n_samp > 0 && sentinel_per_signal[k] == n_samp)
      throw_error(ErrorCode::invalid_lead,
                  "signal " + std::to_string(k) + " is entirely the invalid-sample sentinel");
  }

  // Reorder to the canonical lead order using the header's lead names.
  SignalMatrix out;
  out.sentinel_warnings = sentinel_total;
  out.values.reserve(kLeadCount);
  if (header.n_signals == kLeadCount) {
    for (const auto& want : kLeadOrder) {
      auto it = std::find_if(header.signals.begin(), header.signals.end(),
                             [&](const SignalSpec& s) { return s.lead_name == want; });
      if (it == header.signals.end())
        throw_error(ErrorCode::invalid_lead, "header missing lead '" + want + "'");
      out.values.push_back(std::move(raw[static_cast<std::size_t>(it - header.signals.begin())]));
    }
  } else {
    out.values = std::move(raw);
  }
  return out;
}

std::vector<std::uint8_t> encode_signals(const RecordHeader& header,
                                         const std::vector<std::vector<double>>& values_mv) {
  const std::size_t n_sig = static_cast<std::size_t>(header.n_signals);
  const std::size_t n_samp = static_cast<std::size_t>(header.n_samples);
  if (values_mv.size() != n_sig)
    throw_error(ErrorCode::shape_mismatch, "row count does not match header signal count");
  std::vector<std::uint8_t> bytes(2 * n_sig * n_samp);
  for (std::size_t s = 0; s < n_samp; ++s) {
    for (std::size_t k = 0; k < n_sig; ++k) {
      const auto& spec = header.signals[k];
      double scaled = values_mv[k][s] * spec.gain + spec.baseline;
      long raw = std::lround(scaled);
      raw = std::clamp<long>(raw, -32767, 32767);  // never emit the sentinel
      const std::uint16_t u = static_cast<std::uint16_t>(static_cast<std::int16_t>(raw));
      const std::size_t off = 2 * (s * n_sig + k);
      bytes[off] = static_cast<std::uint8_t>(u & 0xff);
      bytes[off + 1] = static_cast<std::uint8_t>(u >> 8);
    }
  }
  return bytes;
}

}  // namespace ecgen::wfdb
