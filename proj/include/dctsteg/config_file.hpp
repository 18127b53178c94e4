#pragma once

// Shared configuration both endpoints must agree on, stored as flat
// "key = value" text. Lines starting with '#' are comments.
//
//   bits = 10
//   protect_fraction = 0.2
//   phi = 10000
//   theta = 10000
//   cols = 16
//   window = 512
//   stride = 512

#include <cstddef>
#include <string>

#include "dctsteg/codec.hpp"

namespace dctsteg {

struct SharedConfig {
  EmbedConfig embed;
  std::size_t window = 512;
  std::size_t stride = 512;
};

/// Unknown keys and unparsable values raise InvalidConfig; missing file raises FileNotFound.
SharedConfig load_shared_config(const std::string& path);
SharedConfig parse_shared_config(const std::string& text);
std::string format_shared_config(const SharedConfig& config);

}  // namespace dctsteg
