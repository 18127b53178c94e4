#include <cmath>
#include <string>

#include "dctsteg/error.hpp"
#include "dctsteg/types.hpp"

namespace dctsteg {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonFiniteInput: return "NonFiniteInput";
    case ErrorCode::LengthOutOfRange: return "LengthOutOfRange";
    case ErrorCode::KeepCountOutOfRange: return "KeepCountOutOfRange";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::ZeroReference: return "ZeroReference";
    case ErrorCode::PhiTooSmall: return "PhiTooSmall";
    case ErrorCode::GridOverflow: return "GridOverflow";
    case ErrorCode::KeyTooShort: return "KeyTooShort";
    case ErrorCode::PayloadTooLarge: return "PayloadTooLarge";
    case ErrorCode::AuthenticationFailed: return "AuthenticationFailed";
    case ErrorCode::MalformedFrame: return "MalformedFrame";
    case ErrorCode::EmptyBytes: return "EmptyBytes";
    case ErrorCode::ZeroLength: return "ZeroLength";
    case ErrorCode::InvalidParameters: return "InvalidParameters";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::CapacityExceeded: return "CapacityExceeded";
    case ErrorCode::FileNotFound: return "FileNotFound";
    case ErrorCode::ColumnMissing: return "ColumnMissing";
    case ErrorCode::UnparsableValue: return "UnparsableValue";
    case ErrorCode::WindowTooLong: return "WindowTooLong";
    case ErrorCode::IoFailure: return "IoFailure";
    case ErrorCode::Usage: return "Usage";
  }
  return "Unknown";
}

void require_finite(const Eigen::Ref<const VectorXd>& values, const char* what) {
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values(i))) {
      fail(ErrorCode::NonFiniteInput,
           std::string(what) + ": entry " + std::to_string(i) + " is not finite");
    }
  }
}

void validate_segment(const StreamSegment& segment) {
  const auto n = segment.length();
  if (n < kMinSegmentLength || n > kMaxSegmentLength) {
    fail(ErrorCode::LengthOutOfRange, "segment length " + std::to_string(n) + " outside [" +
                                          std::to_string(kMinSegmentLength) + ", " +
                                          std::to_string(kMaxSegmentLength) + "]");
  }
  require_finite(segment.samples, "segment");
}

Bytes to_bytes(std::string_view text) { return Bytes(text.begin(), text.end()); }

}  // namespace dctsteg
