#include "ecgen/errors.hpp"

namespace ecgen {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::malformed_header: return "MalformedHeader";
    case ErrorCode::unsupported_format: return "UnsupportedFormat";
    case ErrorCode::length_mismatch: return "LengthMismatch";
    case ErrorCode::invalid_lead: return "InvalidLead";
    case ErrorCode::missing_column: return "MissingColumn";
    case ErrorCode::unparseable_row: return "UnparseableRow";
    case ErrorCode::invalid_fold: return "InvalidFold";
    case ErrorCode::invalid_band: return "InvalidBand";
    case ErrorCode::unstable_result: return "UnstableResult";
    case ErrorCode::too_short: return "TooShort";
    case ErrorCode::non_finite_input: return "NonFiniteInput";
    case ErrorCode::zero_variance: return "ZeroVariance";
    case ErrorCode::non_positive_width: return "NonPositiveWidth";
    case ErrorCode::layout_overflow: return "LayoutOverflow";
    case ErrorCode::path_out_of_bounds: return "PathOutOfBounds";
    case ErrorCode::unsupported_glyph: return "UnsupportedGlyph";
    case ErrorCode::empty_text: return "EmptyText";
    case ErrorCode::degenerate_box: return "DegenerateBox";
    case ErrorCode::count_mismatch: return "CountMismatch";
    case ErrorCode::shape_mismatch: return "ShapeMismatch";
    case ErrorCode::non_finite: return "NonFinite";
    case ErrorCode::syntax_error: return "SyntaxError";
    case ErrorCode::unknown_key: return "UnknownKey";
    case ErrorCode::domain_violation: return "DomainViolation";
    case ErrorCode::empty_lead: return "EmptyLead";
    case ErrorCode::constant_series: return "ConstantSeries";
    case ErrorCode::missing_artifact: return "MissingArtifact";
    case ErrorCode::unknown_kind: return "UnknownKind";
    case ErrorCode::io_error: return "IoError";
  }
  return "UnknownError";
}

}  // namespace ecgen
