#pragma once

// Complex FFT of arbitrary length: iterative radix-2 for powers of two,
// Bluestein's chirp-z convolution otherwise. Used by the fast DCT path.

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <utility>
#include <vector>

namespace dctsteg::detail {

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline std::size_t next_power_of_two(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

/// In-place forward transform, X_k = sum_n x_n exp(-2 pi i n k / N). N must be a power of two.
template <typename Scalar>
void fft_radix2(std::vector<std::complex<Scalar>>& data) {
  const std::size_t n = data.size();
  if (n < 2) return;

  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(data[i], data[j]);
  }

  // Twiddles are evaluated directly rather than by recurrence to keep the
  // error at O(eps log N).
  std::vector<std::complex<Scalar>> twiddle(n / 2);
  const Scalar step = -2 * std::numbers::pi_v<Scalar> / static_cast<Scalar>(n);
  for (std::size_t k = 0; k < n / 2; ++k) {
    const Scalar angle = step * static_cast<Scalar>(k);
    twiddle[k] = {std::cos(angle), std::sin(angle)};
  }

  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t stride = n / len;
    for (std::size_t start = 0; start < n; start += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const auto t = twiddle[k * stride] * data[start + k + half];
        const auto u = data[start + k];
        data[start + k] = u + t;
        data[start + k + half] = u - t;
      }
    }
  }
}

/// Forward transform of arbitrary length.
template <typename Scalar>
std::vector<std::complex<Scalar>> fft(std::vector<std::complex<Scalar>> data) {
  using Complex = std::complex<Scalar>;
  const std::size_t n = data.size();
  if (is_power_of_two(n) || n < 2) {
    fft_radix2(data);
    return data;
  }

  // chirp_k = exp(-i pi k^2 / n); k^2 is reduced mod 2n so the angle stays small.
  std::vector<Complex> chirp(n);
  const Scalar base = std::numbers::pi_v<Scalar> / static_cast<Scalar>(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto sq = static_cast<unsigned long long>(k) * k % (2ULL * n);
    const Scalar angle = -base * static_cast<Scalar>(sq);
    chirp[k] = {std::cos(angle), std::sin(angle)};
  }

  const std::size_t m = next_power_of_two(2 * n - 1);
  std::vector<Complex> a(m), b(m);
  for (std::size_t k = 0; k < n; ++k) a[k] = data[k] * chirp[k];
  b[0] = std::conj(chirp[0]);
  for (std::size_t k = 1; k < n; ++k) b[k] = b[m - k] = std::conj(chirp[k]);

  fft_radix2(a);
  fft_radix2(b);
  for (std::size_t k = 0; k < m; ++k) a[k] *= b[k];
  // inverse via conjugation
  for (auto& v : a) v = std::conj(v);
  fft_radix2(a);
  const Scalar scale = Scalar(1) / static_cast<Scalar>(m);

  for (std::size_t k = 0; k < n; ++k) data[k] = std::conj(a[k]) * scale * chirp[k];
  return data;
}

/// Inverse transform including the 1/N factor.
template <typename Scalar>
std::vector<std::complex<Scalar>> ifft(std::vector<std::complex<Scalar>> data) {
  for (auto& v : data) v = std::conj(v);
  data = fft(std::move(data));
  const Scalar scale = Scalar(1) / static_cast<Scalar>(data.size());
  for (auto& v : data) v = std::conj(v) * scale;
  return data;
}

}  // namespace dctsteg::detail
