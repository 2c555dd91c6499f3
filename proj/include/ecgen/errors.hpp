#pragma once

#include <stdexcept>
#include <string>

namespace ecgen {

enum class ErrorCode {
  // ingest
  malformed_header,
  unsupported_format,
  length_mismatch,
  invalid_lead,
  missing_column,
  unparseable_row,
  invalid_fold,
  // dsp
  invalid_band,
  unstable_result,
  too_short,
  non_finite_input,
  zero_variance,
  // geometry
  non_positive_width,
  layout_overflow,
  // render
  path_out_of_bounds,
  unsupported_glyph,
  empty_text,
  // annotate
  degenerate_box,
  count_mismatch,
  shape_mismatch,
  non_finite,
  // config
  syntax_error,
  unknown_key,
  domain_violation,
  // validate
  empty_lead,
  constant_series,
  missing_artifact,
  unknown_kind,
  // io
  io_error,
};

const char* error_code_name(ErrorCode code);

// Single exception type carrying a stable code; tests match on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void throw_error(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace ecgen
