#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace ecgen::wfdb {

inline constexpr int kLeadCount = 12;

// Canonical 12-lead display order; SignalMatrix rows always follow it.
extern const std::array<std::string, kLeadCount> kLeadOrder;

struct SignalSpec {
  std::string file_name;
  int format_code = 16;
  double gain = 200.0;  // adu per mV (WFDB default when omitted)
  int baseline = 0;     // adu
  std::string lead_name;
};

struct RecordHeader {
  std::string record_name;
  int n_signals = 0;
  double sampling_rate_hz = 0.0;
  std::int64_t n_samples = 0;
  std::vector<SignalSpec> signals;
};

struct SignalMatrix {
  // values[lead][sample] in millivolts, leads in kLeadOrder.
  std::vector<std::vector<double>> values;
  // Count of -32768 sentinel samples replaced by 0.0 mV.
  std::int64_t sentinel_warnings = 0;

  std::size_t n_leads() const { return values.size(); }
  std::size_t n_samples() const { return values.empty() ? 0 : values[0].size(); }
};

// Parses a WFDB text header: first non-comment line
// `name n_signals fs n_samples`, then one spec line per signal with
// filename, format, gain(baseline)/units and the lead name as trailing
// description. Only format 16 is supported.
RecordHeader parse_header(const std::string& header_text);

// Emits the minimal header grammar parse_header accepts; parse(serialize(h))
// reproduces h field for field.
std::string serialize_header(const RecordHeader& header);

// Decodes interleaved little-endian two's-complement 16-bit frames and
// converts to millivolts via (raw - baseline) / gain. Sentinel -32768 samples
// become 0.0 mV and are tallied. Rows are reordered to kLeadOrder using the
// header's lead names.
SignalMatrix read_signals(const RecordHeader& header,
                          const std::vector<std::uint8_t>& dat_bytes);

// Inverse of read_signals' conversion, for fixture authoring: encodes
// millivolt rows (given in kLeadOrder) as interleaved format-16 frames.
std::vector<std::uint8_t> encode_signals(const RecordHeader& header,
                                         const std::vector<std::vector<double>>& values_mv);

}  // namespace ecgen::wfdb
