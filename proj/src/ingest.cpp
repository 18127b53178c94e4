#include "dctsteg/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <string_view>

#include "dctsteg/error.hpp"

namespace dctsteg {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split(std::string_view line, char delimiter) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(delimiter, start);
    fields.push_back(trim(line.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return fields;
}

std::size_t resolve_column(const std::vector<std::string_view>& header, const std::string& column,
                           const std::string& path) {
  const auto named = std::find(header.begin(), header.end(), std::string_view(column));
  if (named != header.end()) return static_cast<std::size_t>(named - header.begin());

  std::size_t index = 0;
  const auto* end = column.data() + column.size();
  const auto [ptr, ec] = std::from_chars(column.data(), end, index);
  if (ec == std::errc() && ptr == end && index < header.size()) return index;
  fail(ErrorCode::ColumnMissing, "column '" + column + "' not found in " + path);
}

void check_window(const CorpusSpec& spec) {
  if (spec.window < kMinSegmentLength || spec.window > kMaxSegmentLength) {
    fail(ErrorCode::LengthOutOfRange, "window " + std::to_string(spec.window) + " outside [" +
                                          std::to_string(kMinSegmentLength) + ", " +
                                          std::to_string(kMaxSegmentLength) + "]");
  }
  if (spec.stride < 1) fail(ErrorCode::InvalidParameters, "stride must be >= 1");
}

std::ofstream open_for_write(const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) fail(ErrorCode::IoFailure, "cannot open " + path + " for writing");
  return out;
}

void finish(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) fail(ErrorCode::IoFailure, "write to " + path + " failed");
}

}  // namespace

std::string format_value(double value) {
  char buffer[64];
  const auto [ptr, ec] =
      std::to_chars(buffer, buffer + sizeof buffer, value, std::chars_format::general, 17);
  return std::string(buffer, ptr);
}

VectorXd read_column(const std::string& path, const std::string& column, char delimiter) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::FileNotFound, "cannot open " + path);

  std::string line;
  if (!std::getline(in, line)) fail(ErrorCode::ColumnMissing, path + " has no header line");
  const std::string header_line = line;
  const auto header = split(header_line, delimiter);
  const std::size_t col = resolve_column(header, column, path);

  std::vector<double> values;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    ++row;
    const auto fields = split(line, delimiter);
    const auto bad = [&](const std::string& why) {
      throw UnparsableValueError(row, path + ": row " + std::to_string(row) + ": " + why);
    };
    if (col >= fields.size()) bad("missing field");
    const std::string_view field = fields[col];
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
      bad("cannot parse '" + std::string(field) + "'");
    }
    if (!std::isfinite(value)) bad("non-finite value '" + std::string(field) + "'");
    values.push_back(value);
  }
  return Eigen::Map<const VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

std::vector<StreamSegment> window_series(const VectorXd& series, const CorpusSpec& spec) {
  check_window(spec);
  const auto rows = static_cast<std::size_t>(series.size());
  if (rows < spec.window) {
    fail(ErrorCode::WindowTooLong, "window " + std::to_string(spec.window) + " exceeds " +
                                       std::to_string(rows) + " rows");
  }
  std::vector<StreamSegment> segments;
  for (std::size_t start = 0; start + spec.window <= rows; start += spec.stride) {
    StreamSegment s;
    s.samples = series.segment(static_cast<Eigen::Index>(start),
                               static_cast<Eigen::Index>(spec.window));
    s.source = spec.source_label;
    s.segment_id = spec.source_label + ":" + std::to_string(start + 1);
    segments.push_back(std::move(s));
  }
  return segments;
}

std::vector<StreamSegment> read_segments(const CorpusSpec& spec) {
  check_window(spec);
  if (!std::filesystem::exists(spec.path)) fail(ErrorCode::FileNotFound, "no such file " + spec.path);
  return window_series(read_column(spec.path, spec.column, spec.delimiter), spec);
}

void write_segments(const std::vector<StreamSegment>& segments, const std::string& path,
                    char delimiter) {
  auto out = open_for_write(path);
  out << "segment_id" << delimiter << "value\n";
  for (const auto& s : segments) {
    for (Eigen::Index i = 0; i < s.samples.size(); ++i) {
      out << s.segment_id << delimiter << format_value(s.samples(i)) << '\n';
    }
  }
  finish(out, path);
}

void write_columns(const std::string& path, const std::vector<std::string>& names,
                   const std::vector<VectorXd>& columns, char delimiter) {
  auto out = open_for_write(path);
  for (std::size_t c = 0; c < names.size(); ++c) out << (c ? std::string(1, delimiter) : "") << names[c];
  out << '\n';
  const Eigen::Index rows = columns.empty() ? 0 : columns.front().size();
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (c) out << delimiter;
      out << format_value(columns[c](r));
    }
    out << '\n';
  }
  finish(out, path);
}

}  // namespace dctsteg
