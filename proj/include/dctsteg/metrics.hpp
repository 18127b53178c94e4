#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dctsteg/codec.hpp"
#include "dctsteg/error.hpp"
#include "dctsteg/types.hpp"

namespace dctsteg {

/// Percentage residual difference, 100 * ||x - x~|| / ||x||. The reference is
/// the first argument, so prd(a, b) != prd(b, a) in general.
template <typename DerivedA, typename DerivedB>
double prd(const Eigen::MatrixBase<DerivedA>& original, const Eigen::MatrixBase<DerivedB>& other);

/// LengthMismatch, ZeroReference.
double prd(const StreamSegment& original, const StreamSegment& other);

struct PrdReport {
  std::string segment_id;
  double prd_stego_percent = 0.0;
  double prd_recovered_percent = 0.0;
};

struct SweepRow {
  unsigned bits_per_coeff = 0;
  double prd_stego = 0.0;
  double prd_recovered = 0.0;
};

/// Embeds and extracts `payload` for B = 1..10 with every other setting taken
/// from base_config.
std::vector<SweepRow> distortion_sweep(const StreamSegment& segment, const StegoKey& key,
                                       const EmbedConfig& base_config, ByteView payload,
                                       const std::optional<Nonce>& nonce = std::nullopt);

struct BenchRecord {
  std::size_t segment_length = 0;
  double embed_seconds = 0.0;    ///< median
  double extract_seconds = 0.0;  ///< median
  std::uint64_t peak_bytes = 0;  ///< process peak RSS after the run, approximate
};

struct BenchReport {
  std::vector<BenchRecord> records;
  /// Least-squares fit of embed+extract seconds = intercept + slope * n.
  double fit_intercept = 0.0;
  double fit_slope = 0.0;
  /// time(4n) / time(n) for the largest n with 4n also measured; 0 if none.
  double scaling_ratio = 0.0;
  std::size_t scaling_base = 0;
  std::string machine;
};

/// Median wall-clock timings over `trials` runs per length on a synthetic
/// segment. Pins the calling thread to one CPU where supported. InvalidParameters
/// when trials < 3 or a length is outside the segment bounds.
BenchReport timing_benchmark(const std::vector<std::size_t>& lengths, std::size_t trials,
                             const EmbedConfig& config = {});

/// Host description for benchmark output.
std::string machine_description();

// ---------------------------------------------------------------------------

template <typename DerivedA, typename DerivedB>
double prd(const Eigen::MatrixBase<DerivedA>& original, const Eigen::MatrixBase<DerivedB>& other) {
  if (original.size() != other.size()) {
    throw Error(ErrorCode::LengthMismatch, "PRD operands differ in length");
  }
  const double reference = original.squaredNorm();
  if (!(reference > 0.0)) throw Error(ErrorCode::ZeroReference, "reference stream is all zeros");
  return 100.0 * std::sqrt((original - other).squaredNorm() / reference);
}

}  // namespace dctsteg
