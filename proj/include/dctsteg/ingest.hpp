#pragma once

// Delimited-text corpora: one header line, one record per line. Values are
// written with 17 significant digits so every double survives the round trip;
// the codec depends on that, since embedded bits sit at the 1e-4 grid step.

#include <cstddef>
#include <string>
#include <vector>

#include "dctsteg/types.hpp"

namespace dctsteg {

struct CorpusSpec {
  std::string path;
  /// Header name, or a zero-based column index when no header matches.
  std::string column;
  std::size_t window = 512;
  std::size_t stride = 512;
  std::string source_label;
  char delimiter = ',';
};

/// Full column as parsed. FileNotFound, ColumnMissing, UnparsableValue (1-based data row).
VectorXd read_column(const std::string& path, const std::string& column, char delimiter = ',');

/// floor((rows - window) / stride) + 1 windows with ids "<source>:<start-row>",
/// start rows 1-based. WindowTooLong when the column is shorter than a window.
std::vector<StreamSegment> read_segments(const CorpusSpec& spec);

/// Windows an in-memory series with the same rules as read_segments.
std::vector<StreamSegment> window_series(const VectorXd& series, const CorpusSpec& spec);

/// Header "segment_id,value", one sample per row. IoFailure.
void write_segments(const std::vector<StreamSegment>& segments, const std::string& path,
                    char delimiter = ',');

/// Columns of equal length under the given header names. IoFailure.
void write_columns(const std::string& path, const std::vector<std::string>& names,
                   const std::vector<VectorXd>& columns, char delimiter = ',');

/// 17 significant digits; parses back to exactly `value`.
std::string format_value(double value);

}  // namespace dctsteg
