#include "dctsteg/config_file.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <string_view>

#include "dctsteg/error.hpp"
#include "dctsteg/ingest.hpp"

namespace dctsteg {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    fail(ErrorCode::InvalidConfig,
         "config key '" + std::string(key) + "' has bad value '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

SharedConfig parse_shared_config(const std::string& text) {
  SharedConfig config;
  std::istringstream in(text);
  std::size_t line_no = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      fail(ErrorCode::InvalidConfig, "config line " + std::to_string(line_no) + " lacks '='");
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key == "bits") {
      config.embed.bits_per_coeff = parse_number<unsigned>(key, value);
    } else if (key == "protect_fraction") {
      config.embed.protect_fraction = parse_number<double>(key, value);
    } else if (key == "phi") {
      config.embed.phi = parse_number<double>(key, value);
    } else if (key == "theta") {
      config.embed.theta = parse_number<double>(key, value);
    } else if (key == "cols") {
      config.embed.matrix_cols = parse_number<std::size_t>(key, value);
    } else if (key == "window") {
      config.window = parse_number<std::size_t>(key, value);
    } else if (key == "stride") {
      config.stride = parse_number<std::size_t>(key, value);
    } else {
      fail(ErrorCode::InvalidConfig, "unknown config key '" + std::string(key) + "'");
    }
  }
  config.embed.validate();
  return config;
}

SharedConfig load_shared_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::FileNotFound, "cannot open config " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_shared_config(text.str());
}

std::string format_shared_config(const SharedConfig& config) {
  std::ostringstream out;
  out << "bits = " << config.embed.bits_per_coeff << '\n'
      << "protect_fraction = " << format_value(config.embed.protect_fraction) << '\n'
      << "phi = " << format_value(config.embed.phi) << '\n'
      << "theta = " << format_value(config.embed.theta) << '\n'
      << "cols = " << config.embed.matrix_cols << '\n'
      << "window = " << config.window << '\n'
      << "stride = " << config.stride << '\n';
  return out.str();
}

}  // namespace dctsteg
