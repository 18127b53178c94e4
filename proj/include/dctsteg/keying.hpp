#pragma once

// Everything derived from the shared secret: role-separated subkeys, the
// authenticated payload frame, the keyed permutations that fix the hiding
// order, and brute-force entropy analytics.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dctsteg/types.hpp"

namespace dctsteg {

inline constexpr std::size_t kMinKeyBytes = 16;

/// Pre-shared secret. Length is checked when material is derived.
struct StegoKey {
  Bytes secret;

  std::size_t length() const { return secret.size(); }
};

/// Subkeys, each HMAC-SHA256(secret, label) for its own role label.
struct KeyMaterial {
  std::array<std::uint8_t, 32> cipher_key{};
  Bytes order_seed_rows;
  Bytes order_seed_cols;
  Bytes scatter_seed;
};

KeyMaterial derive_material(const StegoKey& key);

// ---------------------------------------------------------------------------
// Payload frame
//
//   offset  size  field
//   0       4     magic "IOTS" (49 4F 54 53)
//   4       1     version 0x01
//   5       12    AES-256-GCM nonce
//   17      4     ciphertext length, big-endian
//   21      len   ciphertext
//   21+len  16    GCM tag (AAD = bytes 0..20)
// ---------------------------------------------------------------------------

inline constexpr std::array<std::uint8_t, 4> kFrameMagic{0x49, 0x4F, 0x54, 0x53};
inline constexpr std::uint8_t kFrameVersion = 0x01;
inline constexpr std::size_t kNonceBytes = 12;
inline constexpr std::size_t kTagBytes = 16;
inline constexpr std::size_t kFrameHeaderBytes = 4 + 1 + kNonceBytes + 4;
inline constexpr std::size_t kFrameOverheadBytes = kFrameHeaderBytes + kTagBytes;

using Nonce = std::array<std::uint8_t, kNonceBytes>;
using Tag = std::array<std::uint8_t, kTagBytes>;

struct PayloadFrame {
  Nonce nonce{};
  Bytes ciphertext;
  Tag tag{};

  std::size_t size() const { return kFrameOverheadBytes + ciphertext.size(); }
  Bytes serialize() const;

  /// Parses a complete frame; MalformedFrame on bad magic, version or length.
  static PayloadFrame parse(ByteView bytes);
  /// Ciphertext length announced by a header prefix of at least kFrameHeaderBytes.
  static std::uint32_t announced_length(ByteView header);
};

/// Encrypts with a fresh nonce from the system CSPRNG, or with `nonce` when given.
PayloadFrame encrypt_payload(const StegoKey& key, ByteView secret,
                             const std::optional<Nonce>& nonce = std::nullopt);

/// Reproducible nonce for test runs: HMAC-SHA256(seed, "nonce" || be32(index)), truncated.
Nonce derive_nonce(ByteView seed, std::uint32_t index);

/// Returns the plaintext iff the tag verifies (AuthenticationFailed otherwise).
Bytes decrypt_payload(const StegoKey& key, const PayloadFrame& frame);

// ---------------------------------------------------------------------------
// Keyed permutations
// ---------------------------------------------------------------------------

/// Zero-based permutation: perm[i] is the image of position i.
using Permutation = std::vector<std::size_t>;

/// Expands a seed to exactly n 64-bit values, block j = HMAC-SHA256(seed, "expand" || be64(j)).
std::vector<std::uint64_t> expand_values(ByteView seed, std::size_t n);

/// Rank rule: sorts the values ascending (stable, so ties keep their original
/// order) and returns, for each original position, the rank of its value.
Permutation rank_permutation(std::span<const std::uint64_t> values);

/// rank_permutation(expand_values(bytes, n)). EmptyBytes, ZeroLength.
Permutation permutation_from_bytes(ByteView bytes, std::size_t n);

struct GridCell {
  std::size_t row = 0;
  std::size_t col = 0;

  friend bool operator==(const GridCell&, const GridCell&) = default;
};

/// Row-major product order: for r in rows, for c in cols, yield (r, c).
std::vector<GridCell> product_order(const Permutation& rows, const Permutation& cols);

/// Hiding order over an m x n grid. Rows come from the row seed, columns from
/// the byte-reversed column seed.
std::vector<GridCell> hiding_order(const KeyMaterial& material, std::size_t m, std::size_t n);
std::vector<GridCell> hiding_order(const StegoKey& key, std::size_t m, std::size_t n);

// ---------------------------------------------------------------------------
// Entropy analytics
// ---------------------------------------------------------------------------

/// L * log2(N_sym). InvalidParameters unless N_sym >= 2 and L >= 1.
double key_entropy_bits(std::uint64_t symbol_count, std::uint64_t key_length);

/// log2 of (sum_{i=t_r..R} R!) * (sum_{j=t_c..C} C!) * N_sym^L, evaluated in the log domain.
double search_space_log2(std::uint64_t rows, std::uint64_t cols, std::uint64_t row_offset,
                         std::uint64_t col_offset, std::uint64_t symbol_count,
                         std::uint64_t key_length);

/// Above this many bits the count of possibilities no longer fits a double.
inline constexpr double kUnboundedBits = 1024.0;

}  // namespace dctsteg
