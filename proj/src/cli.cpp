#include "dctsteg/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "dctsteg/codec.hpp"
#include "dctsteg/config_file.hpp"
#include "dctsteg/ingest.hpp"
#include "dctsteg/keying.hpp"
#include "dctsteg/metrics.hpp"
#include "dctsteg/transform.hpp"

namespace dctsteg::cli {
namespace fs = std::filesystem;

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::Usage:
    case ErrorCode::InvalidParameters:
    case ErrorCode::InvalidConfig:
    case ErrorCode::KeyTooShort:
    case ErrorCode::EmptyBytes:
    case ErrorCode::ZeroLength:
      return kExitUsage;
    case ErrorCode::FileNotFound:
    case ErrorCode::ColumnMissing:
    case ErrorCode::UnparsableValue:
    case ErrorCode::WindowTooLong:
    case ErrorCode::IoFailure:
      return kExitIo;
    case ErrorCode::CapacityExceeded:
    case ErrorCode::PayloadTooLarge:
      return kExitCapacity;
    case ErrorCode::AuthenticationFailed:
    case ErrorCode::MalformedFrame:
      return kExitAuth;
    case ErrorCode::NonFiniteInput:
    case ErrorCode::LengthOutOfRange:
    case ErrorCode::KeepCountOutOfRange:
    case ErrorCode::LengthMismatch:
    case ErrorCode::ZeroReference:
    case ErrorCode::PhiTooSmall:
    case ErrorCode::GridOverflow:
      return kExitNumeric;
  }
  return kExitUsage;
}

namespace {

constexpr const char* kReportVersion = "# dctsteg report v1";

enum class Format { Table, Csv };

/// Tabular report printed as aligned text or as versioned CSV.
struct Report {
  std::string kind;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void write_csv(std::ostream& out) const {
    out << kReportVersion << ' ' << kind << '\n';
    for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << columns[c];
    out << '\n';
    for (const auto& row : rows) {
      for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << row[c];
      out << '\n';
    }
  }

  void write_table(std::ostream& out) const {
    std::vector<std::size_t> width(columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) width[c] = columns[c].size();
    for (const auto& row : rows) {
      for (std::size_t c = 0; c < row.size() && c < width.size(); ++c) {
        width[c] = std::max(width[c], row[c].size());
      }
    }
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t c = 0; c < cells.size(); ++c) {
        out << (c ? "  " : "") << std::setw(static_cast<int>(width[c])) << cells[c];
      }
      out << '\n';
    };
    line(columns);
    for (const auto& row : rows) line(row);
  }

  void write(std::ostream& out, Format format) const {
    if (format == Format::Csv) {
      write_csv(out);
    } else {
      write_table(out);
    }
  }

  void save(const fs::path& path) const {
    std::ofstream file(path, std::ios::trunc);
    if (!file) fail(ErrorCode::IoFailure, "cannot write " + path.string());
    write_csv(file);
    if (!file.flush()) fail(ErrorCode::IoFailure, "write to " + path.string() + " failed");
  }
};

std::string fixed(double value, int digits = 6) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << value;
  return s.str();
}

std::string scientific(double log10_value) {
  // mantissa/exponent from a base-10 logarithm so huge counts never overflow;
  // the mantissa is truncated to one decimal
  const double exponent = std::floor(log10_value);
  const double mantissa = std::floor(std::pow(10.0, log10_value - exponent) * 10.0) / 10.0;
  std::ostringstream s;
  s << std::fixed << std::setprecision(1) << mantissa << "e+" << static_cast<long long>(exponent);
  return s.str();
}

struct Options {
  std::string config_path;
  std::string key_file;
  std::string key_env;
  unsigned bits = 10;
  double protect_fraction = 0.2;
  double phi = 1e4;
  double theta = 1e4;
  std::size_t cols = 16;
  std::size_t window = 512;
  std::size_t stride = 512;
  std::string input;
  std::string column = "0";
  std::string payload;
  std::string original;
  std::string out_dir;
  std::string format = "table";
  std::string nonce_seed;
  std::size_t length = 0;
  std::optional<std::size_t> protected_cells;
  std::size_t key_length = 0;
  std::string symbols = "us-ascii";
  std::size_t row_offset = 1;
  std::size_t col_offset = 1;
  std::vector<std::size_t> lengths{512, 1024, 2048, 4096};
  std::size_t trials = 9;
  std::vector<std::size_t> keep{8, 16, 30, 64, 128, 256};
};

struct Resolved {
  EmbedConfig embed;
  std::size_t window = 512;
  std::size_t stride = 512;
  bool window_given = false;
  Format format = Format::Table;
};

Bytes read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::FileNotFound, "cannot open " + path);
  return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const fs::path& path, ByteView bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::IoFailure, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out.flush()) fail(ErrorCode::IoFailure, "write to " + path.string() + " failed");
}

Bytes parse_hex(const std::string& hex) {
  if (hex.empty() || hex.size() % 2) fail(ErrorCode::Usage, "--nonce-seed needs an even-length hex string");
  Bytes out;
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    unsigned value = 0;
    const auto [ptr, ec] = std::from_chars(hex.data() + i, hex.data() + i + 2, value, 16);
    if (ec != std::errc() || ptr != hex.data() + i + 2) {
      fail(ErrorCode::Usage, "--nonce-seed is not valid hex");
    }
    out.push_back(static_cast<std::uint8_t>(value));
  }
  return out;
}

StegoKey load_key(const Options& o) {
  if (!o.key_file.empty() && !o.key_env.empty()) {
    fail(ErrorCode::Usage, "give either --key-file or --key-env, not both");
  }
  if (!o.key_file.empty()) return StegoKey{read_file(o.key_file)};
  if (!o.key_env.empty()) {
    const char* value = std::getenv(o.key_env.c_str());
    if (value == nullptr) fail(ErrorCode::Usage, "environment variable " + o.key_env + " is not set");
    return StegoKey{to_bytes(value)};
  }
  fail(ErrorCode::Usage, "a key is required (--key-file or --key-env)");
}

fs::path require_out_dir(const Options& o) {
  if (o.out_dir.empty()) fail(ErrorCode::Usage, "--out DIR is required");
  std::error_code ec;
  fs::create_directories(o.out_dir, ec);
  if (ec) fail(ErrorCode::IoFailure, "cannot create " + o.out_dir + ": " + ec.message());
  return fs::path(o.out_dir);
}

CorpusSpec corpus(const Options& o, const Resolved& r, const std::string& path) {
  if (path.empty()) fail(ErrorCode::Usage, "--input FILE is required");
  return CorpusSpec{path, o.column, r.window, r.stride, fs::path(path).stem().string(), ','};
}

/// Segments plus the full column, for commands that rewrite the stream.
struct Series {
  VectorXd values;
  std::vector<StreamSegment> segments;
  std::vector<std::size_t> starts;
};

Series load_series(const CorpusSpec& spec) {
  Series s;
  if (!fs::exists(spec.path)) fail(ErrorCode::FileNotFound, "no such file " + spec.path);
  s.values = read_column(spec.path, spec.column, spec.delimiter);
  s.segments = window_series(s.values, spec);
  for (std::size_t start = 0; s.starts.size() < s.segments.size(); start += spec.stride) {
    s.starts.push_back(start);
  }
  return s;
}

std::string header_name(const std::string& path, const std::string& column) {
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  if (!header.empty() && header.back() == '\r') header.pop_back();
  std::vector<std::string> names;
  std::stringstream fields(header);
  for (std::string f; std::getline(fields, f, ',');) names.push_back(f);
  if (std::find(names.begin(), names.end(), column) != names.end()) return column;
  std::size_t index = 0;
  const auto [ptr, ec] = std::from_chars(column.data(), column.data() + column.size(), index);
  if (ec == std::errc() && index < names.size()) return names[index];
  return "value";
}

std::optional<Nonce> nonce_for(const Options& o, std::size_t index) {
  if (o.nonce_seed.empty()) return std::nullopt;
  return derive_nonce(parse_hex(o.nonce_seed), static_cast<std::uint32_t>(index));
}

// --------------------------------------------------------------------------- commands

int cmd_embed(const Options& o, const Resolved& r, std::ostream& out) {
  if (r.stride < r.window) fail(ErrorCode::Usage, "embed needs non-overlapping windows (stride >= window)");
  if (o.payload.empty()) fail(ErrorCode::Usage, "--payload FILE is required");
  const StegoKey key = load_key(o);
  const Bytes secret = read_file(o.payload);
  const fs::path dir = require_out_dir(o);
  const CorpusSpec spec = corpus(o, r, o.input);
  Series series = load_series(spec);

  Report report{"embed", {"segment_id", "length", "used_cells", "capacity_bits", "prd_stego_percent"}, {}};
  for (std::size_t i = 0; i < series.segments.size(); ++i) {
    const auto& segment = series.segments[i];
    const EmbedResult result = embed(segment, key, secret, r.embed, nonce_for(o, i));
    series.values.segment(static_cast<Eigen::Index>(series.starts[i]),
                          static_cast<Eigen::Index>(segment.length())) = result.stego.samples;
    report.rows.push_back({segment.segment_id, std::to_string(segment.length()),
                           std::to_string(result.used_cells), std::to_string(result.capacity_bits),
                           fixed(result.prd_stego)});
  }
  write_columns((dir / "stego.csv").string(), {header_name(o.input, o.column)}, {series.values});
  report.save(dir / "embed_report.csv");
  report.write(out, r.format);
  return kExitOk;
}

int cmd_extract(const Options& o, const Resolved& r, std::ostream& out) {
  if (r.stride < r.window) fail(ErrorCode::Usage, "extract needs non-overlapping windows (stride >= window)");
  const StegoKey key = load_key(o);
  const fs::path dir = require_out_dir(o);
  Series stego = load_series(corpus(o, r, o.input));
  std::optional<Series> original;
  if (!o.original.empty()) original = load_series(corpus(o, r, o.original));
  if (original && original->segments.size() != stego.segments.size()) {
    fail(ErrorCode::LengthMismatch, "original and stego corpora differ in segment count");
  }

  std::optional<Bytes> secret;
  Report report{"extract", {"segment_id", "used_cells"}, {}};
  if (original) report.columns.insert(report.columns.end(), {"prd_stego_percent", "prd_recovered_percent"});
  VectorXd recovered = stego.values;
  for (std::size_t i = 0; i < stego.segments.size(); ++i) {
    const auto& segment = stego.segments[i];
    ExtractResult result = extract(segment, key, r.embed);
    if (secret && *secret != result.secret) {
      fail(ErrorCode::AuthenticationFailed, "segments carry different payloads");
    }
    secret = std::move(result.secret);
    recovered.segment(static_cast<Eigen::Index>(stego.starts[i]),
                      static_cast<Eigen::Index>(segment.length())) = result.recovered.samples;
    std::vector<std::string> row{segment.segment_id, std::to_string(result.used_cells)};
    if (original) {
      const auto& reference = original->segments[i];
      const PrdReport prds{segment.segment_id, prd(reference, segment), prd(reference, result.recovered)};
      row.push_back(fixed(prds.prd_stego_percent));
      row.push_back(fixed(prds.prd_recovered_percent));
    }
    report.rows.push_back(std::move(row));
  }
  write_columns((dir / "recovered.csv").string(), {header_name(o.input, o.column)}, {recovered});
  report.save(dir / "extract_report.csv");
  if (!o.payload.empty() && secret) write_file(o.payload, *secret);
  report.write(out, r.format);
  return kExitOk;
}

int cmd_analyze(const Options& o, const Resolved& r, std::ostream& out) {
  const StegoKey key = load_key(o);
  const auto segments = read_segments(corpus(o, r, o.input));
  const StreamSegment& segment = segments.front();
  const Bytes payload = o.payload.empty() ? to_bytes("ID=STN-042")
                                          : read_file(o.payload);

  Report sweep{"distortion_sweep", {"bits_per_coeff", "prd_stego_percent", "prd_recovered_percent"}, {}};
  for (const auto& row : distortion_sweep(segment, key, r.embed, payload, nonce_for(o, 0))) {
    sweep.rows.push_back({std::to_string(row.bits_per_coeff), fixed(row.prd_stego), fixed(row.prd_recovered)});
  }
  std::vector<std::size_t> keep;
  for (auto k : o.keep) {
    if (k <= segment.length()) keep.push_back(k);
  }
  keep.push_back(segment.length());
  Report compaction{"compaction_profile", {"kept", "kept_percent", "prd_percent"}, {}};
  for (const auto& point : compaction_profile(segment, keep)) {
    compaction.rows.push_back({std::to_string(point.kept),
                               fixed(100.0 * static_cast<double>(point.kept) / static_cast<double>(segment.length()), 2),
                               fixed(point.prd_percent)});
  }
  if (!o.out_dir.empty()) {
    const fs::path dir = require_out_dir(o);
    sweep.save(dir / "distortion_sweep.csv");
    compaction.save(dir / "compaction_profile.csv");
  }
  out << "segment " << segment.segment_id << '\n';
  sweep.write(out, r.format);
  out << '\n';
  compaction.write(out, r.format);
  return kExitOk;
}

int cmd_capacity(const Options& o, const Resolved& r, std::ostream& out) {
  std::size_t length = o.length;
  if (length == 0 && r.window_given) length = r.window;
  if (length == 0) fail(ErrorCode::Usage, "capacity needs --length L (or --window, or a config file)");
  const std::size_t h = o.protected_cells.value_or(r.embed.protected_count(length));
  const std::uint64_t bits = capacity_bits(length, h, r.embed.bits_per_coeff);
  const GridShape shape = matrix_shape(length, r.embed.matrix_cols);
  Report report{"capacity",
                {"coefficients", "rows", "cols", "protected", "bits_per_coeff", "capacity_bits",
                 "capacity_bytes", "max_payload_bytes"},
                {}};
  const std::uint64_t bytes = bits / 8;
  const std::uint64_t payload = bytes > kFrameOverheadBytes ? bytes - kFrameOverheadBytes : 0;
  report.rows.push_back({std::to_string(length), std::to_string(shape.rows), std::to_string(shape.cols),
                         std::to_string(h), std::to_string(r.embed.bits_per_coeff), std::to_string(bits),
                         std::to_string(bytes), std::to_string(payload)});
  report.write(out, r.format);
  return kExitOk;
}

std::uint64_t symbol_count(const std::string& name) {
  std::string lower = name;
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "us-ascii" || lower == "ascii") return 128;
  if (lower == "utf-8" || lower == "utf8") return 256;
  if (lower == "utf-16" || lower == "utf16") return 65536;
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(name.data(), name.data() + name.size(), value);
  if (ec != std::errc() || ptr != name.data() + name.size()) {
    fail(ErrorCode::Usage, "unknown symbol set '" + name + "'");
  }
  return value;
}

std::string possibilities(double bits) {
  if (bits >= kUnboundedBits) return "effectively unbounded";
  return scientific(bits * std::log10(2.0));
}

int cmd_keyinfo(const Options& o, const Resolved& r, std::ostream& out) {
  std::size_t key_length = o.key_length;
  if (key_length == 0 && (!o.key_file.empty() || !o.key_env.empty())) key_length = load_key(o).length();
  if (key_length == 0) fail(ErrorCode::Usage, "keyinfo needs --key-length or a key source");
  const std::uint64_t symbols = symbol_count(o.symbols);
  const double entropy = key_entropy_bits(symbols, key_length);

  const std::size_t length = o.length ? o.length : r.window;
  const GridShape shape = matrix_shape(length, r.embed.matrix_cols);
  const double search = search_space_log2(shape.rows, shape.cols, o.row_offset, o.col_offset, symbols, key_length);

  Report report{"keyinfo",
                {"key_length", "symbol_count", "entropy_bits", "possibilities", "grid", "search_space_log2",
                 "search_space"},
                {}};
  report.rows.push_back({std::to_string(key_length), std::to_string(symbols), fixed(entropy, 2),
                         possibilities(entropy), std::to_string(shape.rows) + "x" + std::to_string(shape.cols),
                         fixed(search, 2), possibilities(search)});
  report.write(out, r.format);
  return kExitOk;
}

int cmd_bench(const Options& o, const Resolved& r, std::ostream& out) {
  const BenchReport bench = timing_benchmark(o.lengths, o.trials, r.embed);
  Report report{"bench", {"segment_length", "embed_seconds", "extract_seconds", "peak_rss_bytes_approx"}, {}};
  for (const auto& rec : bench.records) {
    report.rows.push_back({std::to_string(rec.segment_length), fixed(rec.embed_seconds, 7),
                           fixed(rec.extract_seconds, 7), std::to_string(rec.peak_bytes)});
  }
  out << "# machine: " << bench.machine << '\n'
      << "# trials: " << o.trials << " (median)\n"
      << "# fit: seconds = " << bench.fit_intercept << " + " << bench.fit_slope << " * n\n";
  if (bench.scaling_base) {
    out << "# time(" << 4 * bench.scaling_base << ")/time(" << bench.scaling_base << ") = " << fixed(bench.scaling_ratio, 3)
        << '\n';
  }
  report.write(out, r.format);
  return kExitOk;
}

int cmd_calibrate(const Options& o, const Resolved& r, std::ostream& out) {
  const auto segments = read_segments(corpus(o, r, o.input));
  double most_negative = 0.0;
  for (const auto& segment : segments) {
    const CoefficientVector coeffs = dct_forward(segment);
    const std::size_t h = r.embed.protected_count(segment.length());
    for (Eigen::Index k = static_cast<Eigen::Index>(h); k < coeffs.size(); ++k) {
      most_negative = std::min(most_negative, coeffs(k));
    }
  }
  const double suggested = std::max(1.0, 2.0 * std::ceil(-most_negative));
  Report report{"calibrate_phi", {"segments", "most_negative_coefficient", "suggested_phi"}, {}};
  report.rows.push_back({std::to_string(segments.size()), fixed(most_negative), format_value(suggested)});
  report.write(out, r.format);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hide authenticated payloads in sensor streams via DCT coefficients", "dctsteg"};
  app.require_subcommand(1);
  Options o;

  // shared flags live on every subcommand
  std::vector<CLI::Option*> embed_flags;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config_path, "Shared config file (flags override it)");
    sub->add_option("--key-file", o.key_file, "File holding the shared key bytes");
    sub->add_option("--key-env", o.key_env, "Environment variable holding the shared key");
    embed_flags.push_back(sub->add_option("--bits", o.bits, "Bits hidden per coefficient (1-10)"));
    embed_flags.push_back(sub->add_option("--protect-fraction", o.protect_fraction, "Leading share of coefficients never modified"));
    embed_flags.push_back(sub->add_option("--phi", o.phi, "Grid shift"));
    embed_flags.push_back(sub->add_option("--theta", o.theta, "Grid scale"));
    embed_flags.push_back(sub->add_option("--cols", o.cols, "Columns of the coefficient matrix"));
    embed_flags.push_back(sub->add_option("--window", o.window, "Segment length"));
    embed_flags.push_back(sub->add_option("--stride", o.stride, "Hop between segments"));
    sub->add_option("--input", o.input, "Input corpus (delimited text)");
    sub->add_option("--column", o.column, "Value column name or zero-based index");
    sub->add_option("--out", o.out_dir, "Output directory");
    sub->add_option("--format", o.format, "Report format")->check(CLI::IsMember({"table", "csv-columns"}));
    sub->add_option("--nonce-seed", o.nonce_seed, "Hex seed for reproducible nonces (testing only)");
  };

  auto* embed_cmd = app.add_subcommand("embed", "Hide a payload in every window of a corpus");
  auto* extract_cmd = app.add_subcommand("extract", "Recover the payload and a sanitized corpus");
  auto* analyze_cmd = app.add_subcommand("analyze", "Distortion sweep and energy compaction tables");
  auto* capacity_cmd = app.add_subcommand("capacity", "Hiding capacity of one segment");
  auto* keyinfo_cmd = app.add_subcommand("keyinfo", "Key entropy and search-space size");
  auto* bench_cmd = app.add_subcommand("bench", "Median embed/extract timings");
  auto* calibrate_cmd = app.add_subcommand("calibrate-phi", "Suggest a grid shift for a corpus");
  for (auto* sub : {embed_cmd, extract_cmd, analyze_cmd, capacity_cmd, keyinfo_cmd, bench_cmd, calibrate_cmd}) {
    add_common(sub);
  }
  for (auto* sub : {embed_cmd, extract_cmd, analyze_cmd}) {
    sub->add_option("--payload", o.payload, sub == extract_cmd ? "Where to write the recovered payload" : "Payload file");
  }
  extract_cmd->add_option("--original", o.original, "Original corpus, for PRD reporting");
  analyze_cmd->add_option("--keep", o.keep, "Coefficient counts for the compaction profile")->delimiter(',');
  for (auto* sub : {capacity_cmd, keyinfo_cmd}) {
    sub->add_option("--length", o.length, "Segment length L");
  }
  capacity_cmd->add_option("--protected", o.protected_cells, "Override the protected count h");
  keyinfo_cmd->add_option("--key-length", o.key_length, "Key length in symbols");
  keyinfo_cmd->add_option("--symbols", o.symbols, "us-ascii, utf-8, utf-16 or a symbol count");
  keyinfo_cmd->add_option("--row-offset", o.row_offset, "Row offset t_r");
  keyinfo_cmd->add_option("--col-offset", o.col_offset, "Column offset t_c");
  bench_cmd->add_option("--lengths", o.lengths, "Segment lengths")->delimiter(',');
  bench_cmd->add_option("--trials", o.trials, "Trials per length");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    Resolved r;
    if (!o.config_path.empty()) {
      const SharedConfig shared = load_shared_config(o.config_path);
      r.embed = shared.embed;
      r.window = shared.window;
      r.stride = shared.stride;
      r.window_given = true;
    }
    auto given = [](const CLI::Option* opt) { return opt->count() > 0; };
    auto* sub = app.get_subcommands().front();
    if (!o.config_path.empty()) {
      if (given(sub->get_option("--bits"))) r.embed.bits_per_coeff = o.bits;
      if (given(sub->get_option("--protect-fraction"))) r.embed.protect_fraction = o.protect_fraction;
      if (given(sub->get_option("--phi"))) r.embed.phi = o.phi;
      if (given(sub->get_option("--theta"))) r.embed.theta = o.theta;
      if (given(sub->get_option("--cols"))) r.embed.matrix_cols = o.cols;
      if (given(sub->get_option("--window"))) r.window = o.window;
      if (given(sub->get_option("--stride"))) r.stride = o.stride;
    } else {
      r.window_given = given(sub->get_option("--window"));
      r.embed = EmbedConfig{o.bits, o.protect_fraction, o.phi, o.theta, o.cols};
      r.window = o.window;
      r.stride = given(sub->get_option("--stride")) ? o.stride : o.window;
    }
    r.embed.validate();
    r.format = o.format == "csv-columns" ? Format::Csv : Format::Table;

    const std::string name = sub->get_name();
    if (name == "embed") return cmd_embed(o, r, out);
    if (name == "extract") return cmd_extract(o, r, out);
    if (name == "analyze") return cmd_analyze(o, r, out);
    if (name == "capacity") return cmd_capacity(o, r, out);
    if (name == "keyinfo") return cmd_keyinfo(o, r, out);
    if (name == "bench") return cmd_bench(o, r, out);
    return cmd_calibrate(o, r, out);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::AuthenticationFailed) {
      err << "authentication failed\n";
    } else {
      err << "error (" << to_string(e.code()) << "): " << e.what() << '\n';
    }
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  }
}

}  // namespace dctsteg::cli
