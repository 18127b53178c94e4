#include "dctsteg/codec.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dctsteg/error.hpp"
#include "dctsteg/metrics.hpp"
#include "dctsteg/transform.hpp"

namespace dctsteg {
namespace {

class BitReader {
 public:
  explicit BitReader(ByteView bytes) : bytes_(bytes) {}

  /// Next `count` bits MSB first; past the end reads zeros.
  std::uint32_t take(unsigned count) {
    std::uint32_t field = 0;
    for (unsigned i = 0; i < count; ++i, ++pos_) {
      std::uint32_t bit = 0;
      if (pos_ < 8 * bytes_.size()) bit = (bytes_[pos_ / 8] >> (7 - pos_ % 8)) & 1u;
      field = (field << 1) | bit;
    }
    return field;
  }

  bool exhausted() const { return pos_ >= 8 * bytes_.size(); }

 private:
  ByteView bytes_;
  std::size_t pos_ = 0;
};

class BitWriter {
 public:
  void put(std::uint32_t field, unsigned count) {
    for (unsigned i = count; i-- > 0;) {
      if (bits_ % 8 == 0) bytes_.push_back(0);
      if ((field >> i) & 1u) bytes_.back() |= static_cast<std::uint8_t>(0x80u >> (bits_ % 8));
      ++bits_;
    }
  }

  std::size_t bits() const { return bits_; }
  /// Whole bytes written so far.
  ByteView bytes() const { return ByteView(bytes_.data(), bits_ / 8); }

 private:
  Bytes bytes_;
  std::size_t bits_ = 0;
};

std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

/// Integer closest to `target` whose low B bits equal `field`, never negative.
std::int64_t nearest_with_field(double target, std::uint32_t field, unsigned bits) {
  const std::int64_t period = std::int64_t{1} << bits;
  const auto floor_value = static_cast<std::int64_t>(std::floor(target));
  const std::int64_t base = (floor_value / period) * period + field;
  std::int64_t best = base;
  for (std::int64_t candidate : {base - period, base + period}) {
    if (candidate < 0) continue;
    if (std::abs(static_cast<double>(candidate) - target) <
        std::abs(static_cast<double>(best) - target)) {
      best = candidate;
    }
  }
  return best;
}

std::uint32_t low_bits(std::int64_t cell, unsigned bits) {
  const std::int64_t period = std::int64_t{1} << bits;
  return static_cast<std::uint32_t>(((cell % period) + period) % period);
}

}  // namespace

void EmbedConfig::validate() const {
  if (bits_per_coeff < kMinBitsPerCoeff || bits_per_coeff > kMaxBitsPerCoeff) {
    fail(ErrorCode::InvalidConfig,
         "bits per coefficient must be in [1, 10], got " + std::to_string(bits_per_coeff));
  }
  if (!(protect_fraction >= 0.0 && protect_fraction < 1.0)) {
    fail(ErrorCode::InvalidConfig, "protect fraction must be in [0, 1)");
  }
  if (!(phi > 0.0) || !std::isfinite(phi)) fail(ErrorCode::InvalidConfig, "phi must be > 0");
  if (!(theta > 0.0) || !std::isfinite(theta)) {
    fail(ErrorCode::InvalidConfig, "theta must be > 0");
  }
  if (matrix_cols < 1) fail(ErrorCode::InvalidConfig, "matrix columns must be >= 1");
}

std::size_t EmbedConfig::protected_count(std::size_t length) const {
  // the epsilon keeps exact products such as 0.25 * 512 from rounding up
  const double raw = protect_fraction * static_cast<double>(length);
  return std::min(length, static_cast<std::size_t>(std::ceil(raw - 1e-9)));
}

GridShape matrix_shape(std::size_t length, std::size_t cols) {
  if (cols == 0) fail(ErrorCode::InvalidConfig, "matrix columns must be >= 1");
  return {ceil_div(length, cols), cols};
}

std::int64_t to_grid(double coeff, double phi, double theta) {
  return std::llround((coeff + phi) * theta);
}

double from_grid(std::int64_t cell, double phi, double theta) {
  return static_cast<double>(cell) / theta - phi;
}

CoefficientMatrix rescale_to_grid(const CoefficientVector& coeffs, const EmbedConfig& config,
                                  ByteView scatter_seed) {
  config.validate();
  require_finite(coeffs, "coefficients");
  const auto length = static_cast<std::size_t>(coeffs.size());
  const GridShape shape = matrix_shape(length, config.matrix_cols);
  const std::size_t protect = config.protected_count(length);

  CoefficientMatrix m;
  m.phi = config.phi;
  m.theta = config.theta;
  m.reals = coeffs;
  m.cells = GridMatrix::Zero(shape.rows, shape.cols);
  m.protect_mask = MaskMatrix::Constant(shape.rows, shape.cols, false);
  m.pad_mask = MaskMatrix::Constant(shape.rows, shape.cols, false);
  m.scatter_map.assign(shape.cells(), CoefficientMatrix::kPad);

  const Permutation scatter = permutation_from_bytes(scatter_seed, length);
  for (std::size_t cell = 0; cell < shape.cells(); ++cell) {
    const auto r = static_cast<Eigen::Index>(cell / shape.cols);
    const auto c = static_cast<Eigen::Index>(cell % shape.cols);
    if (cell >= length) {
      m.pad_mask(r, c) = true;
      continue;
    }
    const std::size_t index = scatter[cell];
    m.scatter_map[cell] = index;
    if (index < protect) {
      m.protect_mask(r, c) = true;
      continue;
    }
    const double y = coeffs(static_cast<Eigen::Index>(index));
    const double shifted = (y + config.phi) * config.theta;
    if (y + config.phi < 0.0) {
      fail(ErrorCode::PhiTooSmall, "coefficient " + std::to_string(index + 1) + " = " +
                                       std::to_string(y) + " lies below -phi");
    }
    if (shifted >= kGridLimit) {
      fail(ErrorCode::GridOverflow, "coefficient " + std::to_string(index + 1) +
                                        " exceeds the safe grid range");
    }
    m.cells(r, c) = to_grid(y, config.phi, config.theta);
  }
  return m;
}

CoefficientVector inverse_rescale(const CoefficientMatrix& matrix) {
  CoefficientVector out = matrix.reals;
  for (std::size_t cell = 0; cell < matrix.scatter_map.size(); ++cell) {
    const auto r = static_cast<Eigen::Index>(cell / matrix.cols());
    const auto c = static_cast<Eigen::Index>(cell % matrix.cols());
    if (matrix.pad_mask(r, c) || matrix.protect_mask(r, c)) continue;
    out(static_cast<Eigen::Index>(matrix.scatter_map[cell])) =
        from_grid(matrix.cells(r, c), matrix.phi, matrix.theta);
  }
  return out;
}

std::uint64_t capacity_bits(std::uint64_t coefficient_cells, std::uint64_t protected_cells,
                            unsigned bits_per_coeff) {
  if (bits_per_coeff < kMinBitsPerCoeff || bits_per_coeff > kMaxBitsPerCoeff) {
    fail(ErrorCode::InvalidConfig,
         "bits per coefficient must be in [1, 10], got " + std::to_string(bits_per_coeff));
  }
  if (protected_cells > coefficient_cells) {
    fail(ErrorCode::InvalidConfig, "more protected coefficients than cells");
  }
  return (coefficient_cells - protected_cells) * bits_per_coeff;
}

std::uint64_t capacity_bits(std::size_t segment_length, const EmbedConfig& config) {
  config.validate();
  return capacity_bits(segment_length, config.protected_count(segment_length),
                       config.bits_per_coeff);
}

std::vector<std::size_t> hiding_slots(const KeyMaterial& material, std::size_t segment_length,
                                      const EmbedConfig& config) {
  const GridShape shape = matrix_shape(segment_length, config.matrix_cols);
  const std::size_t protect = config.protected_count(segment_length);
  const Permutation scatter = permutation_from_bytes(material.scatter_seed, segment_length);
  const auto order = hiding_order(material, shape.rows, shape.cols);

  std::vector<std::size_t> slots;
  slots.reserve(segment_length - protect);
  for (const auto& cell : order) {
    const std::size_t linear = cell.row * shape.cols + cell.col;
    if (linear >= segment_length) continue;  // padding
    const std::size_t index = scatter[linear];
    if (index < protect) continue;
    slots.push_back(index);
  }
  return slots;
}

EmbedResult embed(const StreamSegment& segment, const StegoKey& key, ByteView secret,
                  const EmbedConfig& config, const std::optional<Nonce>& nonce) {
  config.validate();
  const KeyMaterial material = derive_material(key);
  validate_segment(segment);
  const std::size_t length = segment.length();
  const std::uint64_t capacity = capacity_bits(length, config);

  const PayloadFrame frame = encrypt_payload(key, secret, nonce);
  const Bytes frame_bytes = frame.serialize();
  const std::uint64_t frame_bits = 8ull * frame_bytes.size();
  if (frame_bits > capacity) {
    fail(ErrorCode::CapacityExceeded, "frame needs " + std::to_string(frame_bits) +
                                          " bits, capacity is " + std::to_string(capacity));
  }

  const CoefficientVector coeffs = dct_forward(segment);
  // checks phi and the grid range for every usable coefficient
  rescale_to_grid(coeffs, config, material.scatter_seed);
  const auto slots = hiding_slots(material, length, config);
  const unsigned bits = config.bits_per_coeff;

  EmbedResult result;
  result.capacity_bits = capacity;
  result.frame_bytes = frame_bytes.size();
  result.used_cells = ceil_div(static_cast<std::size_t>(frame_bits), bits);

  CoefficientVector stego_coeffs = coeffs;
  BitReader payload(frame_bytes);
  for (std::size_t i = 0; i < result.used_cells; ++i) {
    const auto index = static_cast<Eigen::Index>(slots[i]);
    const double target = (coeffs(index) + config.phi) * config.theta;
    const std::int64_t cell = nearest_with_field(target, payload.take(bits), bits);
    stego_coeffs(index) = from_grid(cell, config.phi, config.theta);
    result.cells.push_back({slots[i], cell});
  }

  result.stego = StreamSegment{idct(stego_coeffs), segment.segment_id, segment.source};
  require_finite(result.stego.samples, "stego segment");

  // every written cell must read back identically at the receiver
  const CoefficientVector check = dct(result.stego.samples);
  for (const auto& cell : result.cells) {
    if (to_grid(check(static_cast<Eigen::Index>(cell.dct_index)), config.phi, config.theta) !=
        cell.grid_value) {
      fail(ErrorCode::GridOverflow, "embedded cell does not survive the inverse transform");
    }
  }
  result.prd_stego = prd(segment, result.stego);
  return result;
}

ExtractResult extract(const StreamSegment& stego, const StegoKey& key, const EmbedConfig& config) {
  config.validate();
  const KeyMaterial material = derive_material(key);
  const CoefficientVector coeffs = dct_forward(stego);
  const std::size_t length = stego.length();
  const std::uint64_t capacity = capacity_bits(length, config);
  if (capacity < 8ull * kFrameOverheadBytes) {
    fail(ErrorCode::MalformedFrame, "carrier capacity " + std::to_string(capacity) +
                                        " bits cannot hold a frame");
  }

  const auto slots = hiding_slots(material, length, config);
  const unsigned bits = config.bits_per_coeff;

  ExtractResult result;
  BitWriter frame_bits;
  std::size_t next = 0;
  auto read_until = [&](std::size_t total_bits) {
    while (frame_bits.bits() < total_bits) {
      const auto index = static_cast<Eigen::Index>(slots[next++]);
      const std::int64_t cell = to_grid(coeffs(index), config.phi, config.theta);
      result.cells.push_back({static_cast<std::size_t>(index), cell});
      frame_bits.put(low_bits(cell, bits), bits);
    }
  };

  std::size_t total_bytes = 0;
  try {
    read_until(8 * kFrameHeaderBytes);
    const std::uint32_t announced = PayloadFrame::announced_length(frame_bits.bytes());
    total_bytes = kFrameOverheadBytes + announced;
    if (8ull * total_bytes > capacity) {
      fail(ErrorCode::MalformedFrame, "announced frame exceeds carrier capacity");
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::MalformedFrame) throw;
    fail(ErrorCode::AuthenticationFailed, "authentication failed");
  }
  read_until(8 * total_bytes);

  const PayloadFrame frame =
      PayloadFrame::parse(frame_bits.bytes().first(total_bytes));
  result.secret = decrypt_payload(key, frame);
  result.used_cells = ceil_div(8 * total_bytes, bits);
  result.cells.resize(result.used_cells);

  // Sanitize: clear the bit field of every cell the frame occupied.
  CoefficientVector recovered = coeffs;
  const std::int64_t mask = ~((std::int64_t{1} << bits) - 1);
  for (const auto& cell : result.cells) {
    recovered(static_cast<Eigen::Index>(cell.dct_index)) =
        from_grid(cell.grid_value & mask, config.phi, config.theta);
  }
  result.recovered = StreamSegment{idct(recovered), stego.segment_id, stego.source};
  return result;
}

double prd_bound(const StreamSegment& original, std::size_t used_cells, const EmbedConfig& config) {
  const double step = static_cast<double>((1u << config.bits_per_coeff) - 1) / config.theta;
  const double energy = original.samples.squaredNorm();
  if (!(energy > 0.0)) fail(ErrorCode::ZeroReference, "reference stream is all zeros");
  return 100.0 * std::sqrt(static_cast<double>(used_cells) * step * step / energy);
}

}  // namespace dctsteg
