#pragma once

// Embed / extract engine.
//
// Pipeline (sender): encrypt payload into a frame, DCT the segment, map every
// unprotected coefficient onto a non-negative integer grid
// cell = round((y + phi) * theta), scatter the coefficients over an M x N
// matrix with a keyed bijection, then walk the keyed hiding order and write
// B frame bits into each usable cell. Untouched coefficients keep their exact
// real values. The receiver repeats the DCT and grid mapping and reads the
// same cells back.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "dctsteg/keying.hpp"
#include "dctsteg/types.hpp"

namespace dctsteg {

inline constexpr unsigned kMinBitsPerCoeff = 1;
inline constexpr unsigned kMaxBitsPerCoeff = 10;

/// Upper bound (exclusive) for any grid cell value: 2^52 * 1e-4.
inline constexpr double kGridLimit = 4503599627370496.0 * 1e-4;

struct EmbedConfig {
  unsigned bits_per_coeff = 10;   ///< B
  double protect_fraction = 0.2;  ///< rho: share of leading DCT indices never modified
  double phi = 1e4;               ///< grid shift, must exceed |most negative usable coefficient|
  double theta = 1e4;             ///< grid scale (four decimal places)
  std::size_t matrix_cols = 16;   ///< N of the M x N coefficient matrix

  /// Throws InvalidConfig.
  void validate() const;
  /// h = ceil(rho * L).
  std::size_t protected_count(std::size_t length) const;
};

struct GridShape {
  std::size_t rows = 0;
  std::size_t cols = 0;

  std::size_t cells() const { return rows * cols; }
};

/// M = ceil(L / N_cols), N = N_cols.
GridShape matrix_shape(std::size_t length, std::size_t cols);

using GridMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MaskMatrix = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Rescaled coefficients laid out on the M x N matrix. Cells are addressed
/// row-major; the first L cells hold coefficients and the trailing M*N - L are
/// padding.
struct CoefficientMatrix {
  static constexpr std::size_t kPad = std::numeric_limits<std::size_t>::max();

  GridMatrix cells;
  MaskMatrix protect_mask;
  MaskMatrix pad_mask;
  std::vector<std::size_t> scatter_map;  ///< row-major cell -> DCT index (kPad for padding)
  CoefficientVector reals;               ///< source coefficients, exact
  double phi = 0.0;
  double theta = 1.0;

  std::size_t rows() const { return static_cast<std::size_t>(cells.rows()); }
  std::size_t cols() const { return static_cast<std::size_t>(cells.cols()); }
};

/// Grid value of one coefficient, round((y + phi) * theta), unchecked.
std::int64_t to_grid(double coeff, double phi, double theta);
double from_grid(std::int64_t cell, double phi, double theta);

/// PhiTooSmall if an unprotected coefficient + phi < 0, GridOverflow past kGridLimit.
CoefficientMatrix rescale_to_grid(const CoefficientVector& coeffs, const EmbedConfig& config,
                                  ByteView scatter_seed);

/// Protected coefficients come back exactly, all others from their grid cell.
CoefficientVector inverse_rescale(const CoefficientMatrix& matrix);

/// ((R*C) - h) * B with R*C the number of coefficient cells. InvalidConfig when h > R*C
/// or B is outside [1, 10].
std::uint64_t capacity_bits(std::uint64_t coefficient_cells, std::uint64_t protected_cells,
                            unsigned bits_per_coeff);
std::uint64_t capacity_bits(std::size_t segment_length, const EmbedConfig& config);

/// DCT indices of the usable cells in hiding order (protected and pad cells skipped).
std::vector<std::size_t> hiding_slots(const KeyMaterial& material, std::size_t segment_length,
                                      const EmbedConfig& config);

struct EmbeddedCell {
  std::size_t dct_index = 0;
  std::int64_t grid_value = 0;
};

struct EmbedResult {
  StreamSegment stego;
  std::size_t used_cells = 0;
  std::uint64_t capacity_bits = 0;
  double prd_stego = 0.0;
  std::size_t frame_bytes = 0;
  std::vector<EmbeddedCell> cells;  ///< post-embedding grid values in hiding order
};

struct ExtractResult {
  Bytes secret;
  StreamSegment recovered;
  std::size_t used_cells = 0;
  std::vector<EmbeddedCell> cells;  ///< grid values as read by the receiver
};

/// Hides `secret` in `segment`. A fixed nonce makes the output reproducible.
EmbedResult embed(const StreamSegment& segment, const StegoKey& key, ByteView secret,
                  const EmbedConfig& config, const std::optional<Nonce>& nonce = std::nullopt);

/// Reads and authenticates the frame, then rebuilds the stream with the used
/// bit fields cleared. Any carrier that does not yield a valid frame under
/// (key, config) fails with AuthenticationFailed; MalformedFrame means the
/// carrier is too small to hold a frame at all.
ExtractResult extract(const StreamSegment& stego, const StegoKey& key, const EmbedConfig& config);

/// Distortion ceiling for `used_cells` cells each moved by at most (2^B - 1) / theta.
double prd_bound(const StreamSegment& original, std::size_t used_cells, const EmbedConfig& config);

}  // namespace dctsteg
