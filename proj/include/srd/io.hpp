#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "srd/core.hpp"
#include "srd/crossval.hpp"
#include "srd/distribution.hpp"
#include "srd/plot.hpp"
#include "srd/table.hpp"

namespace srd {

struct TableFileSpec {
  std::filesystem::path path;
  char delimiter = ';';
  bool has_row_names = true;  // first column holds row labels
};

/// Parses delimited text with a header row. Cells are trimmed and may be
/// double-quoted; numbers use '.' as decimal point. The last column becomes
/// the designated reference. `source` names the input in error messages.
DataTable parse_table(std::string_view text, char delimiter, bool has_row_names,
                      std::string_view source = "<input>");

DataTable read_table(const TableFileSpec& spec);

/// Shortest text that parses back to exactly `value`; integral values print
/// without a fractional part.
std::string format_number(double value);

std::string format_table(const DataTable& table, char delimiter = ';');
std::string format_rank_matrix(const RankMatrix& ranks);
std::string format_srd_result(const SrdResult& result, bool normalized = true);
std::string format_detailed(const DetailedSrd& detail);
std::string format_distribution(const SrdDistribution& dist);
std::string format_verdicts(const SrdResult& result, const Thresholds& thresholds);
std::string format_crossval_report(const CrossValReport& report);
std::string format_distance_matrix(const DistanceMatrix& matrix);

/// Test, fold layout, seed and retained rows (1-based) of a cross-validation
/// run, enough to recompute the identical report.
std::string format_fold_replay(const CrossValReport& report);

struct FoldReplay {
  PairTest test = PairTest::Wilcoxon;
  FoldScheme scheme;
};

FoldReplay parse_fold_replay(std::string_view text);
FoldReplay read_fold_replay(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);

/// Writes `content` to `path`, replacing any existing file. Throws srd::Error
/// naming the path when the file cannot be written.
void write_text_file(const std::filesystem::path& path, std::string_view content);

// Report writers: the matching format_* text written to `path`.
void write_report(const SrdResult& result, const std::filesystem::path& path);
void write_report(const DetailedSrd& detail, const std::filesystem::path& path);
void write_report(const RankMatrix& ranks, const std::filesystem::path& path);
void write_report(const SrdDistribution& dist, const std::filesystem::path& path);
void write_report(const CrossValReport& report, const std::filesystem::path& path);
void write_report(const DistanceMatrix& matrix, const std::filesystem::path& path);

}  // namespace srd
