#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dctsteg {

enum class ErrorCode {
  // transform / numeric
  NonFiniteInput,
  LengthOutOfRange,
  KeepCountOutOfRange,
  LengthMismatch,
  ZeroReference,
  PhiTooSmall,
  GridOverflow,
  // keying
  KeyTooShort,
  PayloadTooLarge,
  AuthenticationFailed,
  MalformedFrame,
  EmptyBytes,
  ZeroLength,
  // configuration
  InvalidParameters,
  InvalidConfig,
  CapacityExceeded,
  // ingest
  FileNotFound,
  ColumnMissing,
  UnparsableValue,
  WindowTooLong,
  IoFailure,
  // cli
  Usage,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Carries the 1-based data row that failed to parse.
class UnparsableValueError : public Error {
 public:
  UnparsableValueError(std::size_t row, const std::string& what)
      : Error(ErrorCode::UnparsableValue, what), row_(row) {}

  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace dctsteg
