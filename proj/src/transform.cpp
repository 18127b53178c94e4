#include "dctsteg/transform.hpp"

#include <string>

#include "dctsteg/error.hpp"
#include "dctsteg/metrics.hpp"

namespace dctsteg {

CoefficientVector dct_forward(const StreamSegment& segment) {
  validate_segment(segment);
  return dct(segment.samples);
}

StreamSegment dct_inverse(const CoefficientVector& coeffs) {
  require_finite(coeffs, "coefficients");
  return StreamSegment{idct(coeffs), {}, {}};
}

std::vector<CompactionPoint> compaction_profile(const StreamSegment& segment,
                                                std::span<const std::size_t> keep_counts) {
  const auto n = segment.length();
  for (auto k : keep_counts) {
    if (k < 1 || k > n) {
      fail(ErrorCode::KeepCountOutOfRange,
           "keep count " + std::to_string(k) + " outside [1, " + std::to_string(n) + "]");
    }
  }
  const CoefficientVector coeffs = dct_forward(segment);

  std::vector<CompactionPoint> profile;
  profile.reserve(keep_counts.size());
  for (auto k : keep_counts) {
    CoefficientVector truncated = CoefficientVector::Zero(coeffs.size());
    truncated.head(static_cast<Eigen::Index>(k)) = coeffs.head(static_cast<Eigen::Index>(k));
    StreamSegment approx{idct(truncated), segment.segment_id, segment.source};
    profile.push_back({k, prd(segment, approx)});
  }
  return profile;
}

}  // namespace dctsteg
