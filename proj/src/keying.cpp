#include "dctsteg/keying.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <numeric>
#include <string>
#include <string_view>

#include <openssl/evp.h>
#include <openssl/hmac.h>
#include <openssl/rand.h>

#include "dctsteg/error.hpp"

namespace dctsteg {
namespace {

constexpr std::string_view kLabelPrefix = "iots-dct/v1/";

using Digest = std::array<std::uint8_t, 32>;

Digest hmac_sha256(ByteView key, ByteView message) {
  Digest out{};
  unsigned int len = 0;
  if (HMAC(EVP_sha256(), key.data(), static_cast<int>(key.size()), message.data(), message.size(),
           out.data(), &len) == nullptr ||
      len != out.size()) {
    fail(ErrorCode::InvalidParameters, "HMAC-SHA256 failed");
  }
  return out;
}

Digest labeled(ByteView secret, std::string_view label) {
  Bytes message(kLabelPrefix.begin(), kLabelPrefix.end());
  message.insert(message.end(), label.begin(), label.end());
  return hmac_sha256(secret, message);
}

struct CipherCtxDeleter {
  void operator()(EVP_CIPHER_CTX* ctx) const { EVP_CIPHER_CTX_free(ctx); }
};
using CipherCtx = std::unique_ptr<EVP_CIPHER_CTX, CipherCtxDeleter>;

CipherCtx make_ctx() {
  CipherCtx ctx(EVP_CIPHER_CTX_new());
  if (!ctx) fail(ErrorCode::InvalidParameters, "cannot allocate cipher context");
  return ctx;
}

Bytes header_bytes(const Nonce& nonce, std::uint32_t length) {
  Bytes header(kFrameMagic.begin(), kFrameMagic.end());
  header.push_back(kFrameVersion);
  header.insert(header.end(), nonce.begin(), nonce.end());
  for (int shift = 24; shift >= 0; shift -= 8) {
    header.push_back(static_cast<std::uint8_t>(length >> shift));
  }
  return header;
}

void check_header(ByteView header) {
  if (header.size() < kFrameHeaderBytes) {
    fail(ErrorCode::MalformedFrame, "frame shorter than its header");
  }
  if (!std::equal(kFrameMagic.begin(), kFrameMagic.end(), header.begin())) {
    fail(ErrorCode::MalformedFrame, "bad frame magic");
  }
  if (header[4] != kFrameVersion) {
    fail(ErrorCode::MalformedFrame, "unsupported frame version " + std::to_string(header[4]));
  }
}

}  // namespace

KeyMaterial derive_material(const StegoKey& key) {
  if (key.length() < kMinKeyBytes) {
    fail(ErrorCode::KeyTooShort, "key has " + std::to_string(key.length()) +
                                     " bytes, at least " + std::to_string(kMinKeyBytes) +
                                     " required");
  }
  KeyMaterial material;
  material.cipher_key = labeled(key.secret, "cipher");
  const auto rows = labeled(key.secret, "rows");
  const auto cols = labeled(key.secret, "cols");
  const auto scatter = labeled(key.secret, "scatter");
  material.order_seed_rows.assign(rows.begin(), rows.end());
  material.order_seed_cols.assign(cols.begin(), cols.end());
  material.scatter_seed.assign(scatter.begin(), scatter.end());
  return material;
}

Bytes PayloadFrame::serialize() const {
  Bytes out = header_bytes(nonce, static_cast<std::uint32_t>(ciphertext.size()));
  out.insert(out.end(), ciphertext.begin(), ciphertext.end());
  out.insert(out.end(), tag.begin(), tag.end());
  return out;
}

std::uint32_t PayloadFrame::announced_length(ByteView header) {
  check_header(header);
  std::uint32_t length = 0;
  for (std::size_t i = 17; i < kFrameHeaderBytes; ++i) length = (length << 8) | header[i];
  return length;
}

PayloadFrame PayloadFrame::parse(ByteView bytes) {
  const std::uint32_t length = announced_length(bytes);
  if (bytes.size() != kFrameOverheadBytes + static_cast<std::size_t>(length)) {
    fail(ErrorCode::MalformedFrame, "frame size " + std::to_string(bytes.size()) +
                                        " does not match announced length " +
                                        std::to_string(length));
  }
  PayloadFrame frame;
  std::copy_n(bytes.begin() + 5, kNonceBytes, frame.nonce.begin());
  frame.ciphertext.assign(bytes.begin() + kFrameHeaderBytes,
                          bytes.begin() + kFrameHeaderBytes + length);
  std::copy_n(bytes.end() - kTagBytes, kTagBytes, frame.tag.begin());
  return frame;
}

PayloadFrame encrypt_payload(const StegoKey& key, ByteView secret,
                             const std::optional<Nonce>& nonce) {
  if (secret.size() > 0xFFFFFFFFull || secret.size() > static_cast<std::size_t>(INT32_MAX)) {
    fail(ErrorCode::PayloadTooLarge, "payload exceeds the 32-bit length field");
  }
  const KeyMaterial material = derive_material(key);

  PayloadFrame frame;
  if (nonce) {
    frame.nonce = *nonce;
  } else if (RAND_bytes(frame.nonce.data(), static_cast<int>(frame.nonce.size())) != 1) {
    fail(ErrorCode::InvalidParameters, "system entropy source unavailable");
  }
  const Bytes aad = header_bytes(frame.nonce, static_cast<std::uint32_t>(secret.size()));

  auto ctx = make_ctx();
  frame.ciphertext.resize(secret.size());
  int len = 0;
  bool ok = EVP_EncryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, nullptr, nullptr) == 1 &&
            EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_SET_IVLEN, kNonceBytes, nullptr) == 1 &&
            EVP_EncryptInit_ex(ctx.get(), nullptr, nullptr, material.cipher_key.data(),
                               frame.nonce.data()) == 1 &&
            EVP_EncryptUpdate(ctx.get(), nullptr, &len, aad.data(),
                              static_cast<int>(aad.size())) == 1;
  if (ok && !secret.empty()) {
    ok = EVP_EncryptUpdate(ctx.get(), frame.ciphertext.data(), &len, secret.data(),
                           static_cast<int>(secret.size())) == 1;
  }
  std::array<std::uint8_t, 16> tail{};
  ok = ok && EVP_EncryptFinal_ex(ctx.get(), tail.data(), &len) == 1 &&
       EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_GET_TAG, kTagBytes, frame.tag.data()) == 1;
  if (!ok) fail(ErrorCode::InvalidParameters, "AES-GCM encryption failed");
  return frame;
}

Bytes decrypt_payload(const StegoKey& key, const PayloadFrame& frame) {
  const KeyMaterial material = derive_material(key);
  const Bytes aad = header_bytes(frame.nonce, static_cast<std::uint32_t>(frame.ciphertext.size()));

  auto ctx = make_ctx();
  Bytes plain(frame.ciphertext.size());
  Tag tag = frame.tag;
  std::array<std::uint8_t, 16> tail{};
  int len = 0;
  bool ok = EVP_DecryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, nullptr, nullptr) == 1 &&
            EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_SET_IVLEN, kNonceBytes, nullptr) == 1 &&
            EVP_DecryptInit_ex(ctx.get(), nullptr, nullptr, material.cipher_key.data(),
                               frame.nonce.data()) == 1 &&
            EVP_DecryptUpdate(ctx.get(), nullptr, &len, aad.data(),
                              static_cast<int>(aad.size())) == 1;
  if (ok && !plain.empty()) {
    ok = EVP_DecryptUpdate(ctx.get(), plain.data(), &len, frame.ciphertext.data(),
                           static_cast<int>(frame.ciphertext.size())) == 1;
  }
  ok = ok && EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_SET_TAG, kTagBytes, tag.data()) == 1 &&
       EVP_DecryptFinal_ex(ctx.get(), tail.data(), &len) == 1;
  if (!ok) {
    std::fill(plain.begin(), plain.end(), 0);
    fail(ErrorCode::AuthenticationFailed, "authentication failed");
  }
  return plain;
}

Nonce derive_nonce(ByteView seed, std::uint32_t index) {
  if (seed.empty()) fail(ErrorCode::EmptyBytes, "nonce seed is empty");
  std::array<std::uint8_t, 9> message{'n', 'o', 'n', 'c', 'e'};
  for (int i = 0; i < 4; ++i) message[5 + i] = static_cast<std::uint8_t>(index >> (24 - 8 * i));
  const Digest digest = hmac_sha256(seed, message);
  Nonce nonce{};
  std::copy_n(digest.begin(), nonce.size(), nonce.begin());
  return nonce;
}

std::vector<std::uint64_t> expand_values(ByteView seed, std::size_t n) {
  if (seed.empty()) fail(ErrorCode::EmptyBytes, "permutation seed is empty");
  if (n == 0) fail(ErrorCode::ZeroLength, "permutation length is zero");

  std::vector<std::uint64_t> values;
  values.reserve(n);
  std::array<std::uint8_t, 14> message{'e', 'x', 'p', 'a', 'n', 'd'};
  for (std::uint64_t block = 0; values.size() < n; ++block) {
    for (int i = 0; i < 8; ++i) message[6 + i] = static_cast<std::uint8_t>(block >> (56 - 8 * i));
    const Digest digest = hmac_sha256(seed, message);
    for (std::size_t w = 0; w < 4 && values.size() < n; ++w) {
      std::uint64_t v = 0;
      for (std::size_t b = 0; b < 8; ++b) v = (v << 8) | digest[8 * w + b];
      values.push_back(v);
    }
  }
  return values;
}

Permutation rank_permutation(std::span<const std::uint64_t> values) {
  // positions sorted by value ("ascending order" carrying default positions)
  std::vector<std::size_t> by_value(values.size());
  std::iota(by_value.begin(), by_value.end(), std::size_t{0});
  std::stable_sort(by_value.begin(), by_value.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

  // restore default positions, each carrying its ascending rank
  Permutation ranks(values.size());
  for (std::size_t rank = 0; rank < by_value.size(); ++rank) ranks[by_value[rank]] = rank;
  return ranks;
}

Permutation permutation_from_bytes(ByteView bytes, std::size_t n) {
  const auto values = expand_values(bytes, n);
  return rank_permutation(values);
}

std::vector<GridCell> product_order(const Permutation& rows, const Permutation& cols) {
  std::vector<GridCell> order;
  order.reserve(rows.size() * cols.size());
  for (auto r : rows) {
    for (auto c : cols) order.push_back({r, c});
  }
  return order;
}

std::vector<GridCell> hiding_order(const KeyMaterial& material, std::size_t m, std::size_t n) {
  const Permutation rows = permutation_from_bytes(material.order_seed_rows, m);
  Bytes reversed(material.order_seed_cols.rbegin(), material.order_seed_cols.rend());
  const Permutation cols = permutation_from_bytes(reversed, n);
  return product_order(rows, cols);
}

std::vector<GridCell> hiding_order(const StegoKey& key, std::size_t m, std::size_t n) {
  return hiding_order(derive_material(key), m, n);
}

double key_entropy_bits(std::uint64_t symbol_count, std::uint64_t key_length) {
  if (symbol_count < 2 || key_length < 1) {
    fail(ErrorCode::InvalidParameters, "key entropy needs symbol_count >= 2 and key_length >= 1");
  }
  // exact for powers of two
  return static_cast<double>(key_length) * std::log2(static_cast<double>(symbol_count));
}

double search_space_log2(std::uint64_t rows, std::uint64_t cols, std::uint64_t row_offset,
                         std::uint64_t col_offset, std::uint64_t symbol_count,
                         std::uint64_t key_length) {
  if (rows < 1 || cols < 1 || row_offset < 1 || row_offset > rows || col_offset < 1 ||
      col_offset > cols) {
    fail(ErrorCode::InvalidParameters, "search space needs 1 <= t_r <= R and 1 <= t_c <= C");
  }
  const double log2_e = std::numbers::log2e;
  // sum_{i=t..R} R! has R - t + 1 equal terms
  auto log2_factorial_sum = [&](std::uint64_t n, std::uint64_t offset) {
    const double terms = static_cast<double>(n - offset + 1);
    return std::log2(terms) + std::lgamma(static_cast<double>(n) + 1.0) * log2_e;
  };
  return log2_factorial_sum(rows, row_offset) + log2_factorial_sum(cols, col_offset) +
         key_entropy_bits(symbol_count, key_length);
}

}  // namespace dctsteg
