#pragma once

// Orthonormal DCT-II / DCT-III pair.
//
//   y(k) = w(k) sum_{n=1..N} x(n) cos(pi (2n-1)(k-1) / 2N),   k = 1..N
//   x(n) = sum_{k=1..N} w(k) y(k) cos(pi (2n-1)(k-1) / 2N)
//
// with w(1) = sqrt(1/N) and w(k) = sqrt(2/N) otherwise. Indices above are
// 1-based; the vectors below are 0-based, so coefficient 0 is the DC term.
// Evaluation is O(N log N) for every N via an N-point complex FFT.

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <utility>
#include <vector>

#include "dctsteg/fft.hpp"
#include "dctsteg/types.hpp"

namespace dctsteg {

/// Arithmetic type used inside the transforms. Double inputs run in extended
/// precision so a round trip stays within 1e-9 for |x| <= 1e6 at N = 65536.
template <typename Scalar>
struct TransformWork {
  using type = Scalar;
};
template <>
struct TransformWork<double> {
  using type = long double;
};

template <typename Scalar>
Scalar dct_weight(std::size_t k, std::size_t n) {
  return k == 0 ? std::sqrt(Scalar(1) / static_cast<Scalar>(n))
                : std::sqrt(Scalar(2) / static_cast<Scalar>(n));
}

/// Forward orthonormal DCT of any dense vector expression.
template <typename Derived>
Vector<typename Derived::Scalar> dct(const Eigen::MatrixBase<Derived>& x) {
  using Out = typename Derived::Scalar;
  using Scalar = typename TransformWork<Out>::type;
  using Complex = std::complex<Scalar>;
  const auto n = static_cast<std::size_t>(x.size());
  Vector<Out> y(x.size());
  if (n == 0) return y;

  // Even samples ascending, odd samples descending.
  std::vector<Complex> v(n);
  for (std::size_t i = 0; 2 * i < n; ++i) v[i] = static_cast<Scalar>(x(2 * i));
  for (std::size_t i = 0; 2 * i + 1 < n; ++i) v[n - 1 - i] = static_cast<Scalar>(x(2 * i + 1));

  const auto spectrum = detail::fft(std::move(v));
  const Scalar base = -std::numbers::pi_v<Scalar> / static_cast<Scalar>(2 * n);
  for (std::size_t k = 0; k < n; ++k) {
    const Scalar angle = base * static_cast<Scalar>(k);
    const Complex rot{std::cos(angle), std::sin(angle)};
    y(k) = static_cast<Out>(dct_weight<Scalar>(k, n) * (rot * spectrum[k]).real());
  }
  return y;
}

/// Inverse orthonormal DCT; idct(dct(x)) == x up to rounding.
template <typename Derived>
Vector<typename Derived::Scalar> idct(const Eigen::MatrixBase<Derived>& y) {
  using Out = typename Derived::Scalar;
  using Scalar = typename TransformWork<Out>::type;
  using Complex = std::complex<Scalar>;
  const auto n = static_cast<std::size_t>(y.size());
  Vector<Out> x(y.size());
  if (n == 0) return x;

  auto unweighted = [&](std::size_t k) -> Scalar {
    return k >= n ? Scalar(0) : static_cast<Scalar>(y(k)) / dct_weight<Scalar>(k, n);
  };

  std::vector<Complex> spectrum(n);
  const Scalar base = std::numbers::pi_v<Scalar> / static_cast<Scalar>(2 * n);
  for (std::size_t k = 0; k < n; ++k) {
    const Scalar angle = base * static_cast<Scalar>(k);
    const Complex rot{std::cos(angle), std::sin(angle)};
    spectrum[k] = rot * Complex(unweighted(k), k == 0 ? Scalar(0) : -unweighted(n - k));
  }

  const auto v = detail::ifft(std::move(spectrum));
  for (std::size_t i = 0; 2 * i < n; ++i) x(2 * i) = static_cast<Out>(v[i].real());
  for (std::size_t i = 0; 2 * i + 1 < n; ++i) x(2 * i + 1) = static_cast<Out>(v[n - 1 - i].real());
  return x;
}

/// Validated forward transform of a segment (NonFiniteInput, LengthOutOfRange).
CoefficientVector dct_forward(const StreamSegment& segment);

/// Validated inverse transform (NonFiniteInput).
StreamSegment dct_inverse(const CoefficientVector& coeffs);

struct CompactionPoint {
  std::size_t kept = 0;
  double prd_percent = 0.0;
};

/// Keeps the first k coefficients, zeroes the rest, inverts and reports PRD
/// against the original for every k in keep_counts (KeepCountOutOfRange).
std::vector<CompactionPoint> compaction_profile(const StreamSegment& segment,
                                                std::span<const std::size_t> keep_counts);

}  // namespace dctsteg
