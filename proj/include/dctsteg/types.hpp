#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace dctsteg {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using VectorXd = Vector<double>;
using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

inline constexpr std::size_t kMinSegmentLength = 64;
inline constexpr std::size_t kMaxSegmentLength = 65536;

/// One windowed run of real-valued sensor samples.
struct StreamSegment {
  VectorXd samples;
  std::string segment_id;
  std::string source;

  std::size_t length() const { return static_cast<std::size_t>(samples.size()); }
};

/// DCT coefficients in natural frequency order; index 0 is the DC term.
using CoefficientVector = VectorXd;

/// Throws LengthOutOfRange or NonFiniteInput.
void validate_segment(const StreamSegment& segment);

/// Throws NonFiniteInput if any entry is NaN or infinite.
void require_finite(const Eigen::Ref<const VectorXd>& values, const char* what);

Bytes to_bytes(std::string_view text);

}  // namespace dctsteg
