#include "srd/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "srd/error.hpp"

namespace srd {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string unquote(std::string_view cell) {
  cell = trim(cell);
  if (cell.size() >= 2 && cell.front() == '"' && cell.back() == '"') {
    cell = cell.substr(1, cell.size() - 2);
  }
  return std::string(trim(cell));
}

std::vector<std::string_view> split(std::string_view line, char delimiter) {
  std::vector<std::string_view> out;
  while (true) {
    const auto pos = line.find(delimiter);
    out.push_back(line.substr(0, pos));
    if (pos == std::string_view::npos) break;
    line = line.substr(pos + 1);
  }
  return out;
}

// Like split, but a delimiter inside double quotes does not end the cell.
std::vector<std::string_view> split_cells(std::string_view line, char delimiter) {
  std::vector<std::string_view> out;
  bool quoted = false;
  std::size_t start = 0;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    else if (line[i] == delimiter && !quoted) {
      out.push_back(line.substr(start, i - start));
      start = i + 1;
    }
  }
  out.push_back(line.substr(start));
  return out;
}

std::vector<std::string_view> lines_of(std::string_view text) {
  std::vector<std::string_view> out;
  for (auto line : split(text, '\n')) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!trim(line).empty()) out.push_back(line);
  }
  return out;
}

std::optional<double> parse_double(std::string_view cell) {
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  double value = 0.0;
  const auto* end = cell.data() + cell.size();
  const auto [ptr, ec] = std::from_chars(cell.data(), end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) return std::nullopt;
  return value;
}

std::string fixed(double value, int decimals) {
  // avoid "-0.0000" for values that round to zero
  const auto text = fmt::format("{:.{}f}", value, decimals);
  if (text.find_first_not_of("-0.") == std::string::npos && text.front() == '-') return text.substr(1);
  return text;
}

std::string cell(std::string_view label, char delimiter = ',') {
  if (label.find(delimiter) == std::string_view::npos && label.find('"') == std::string_view::npos) {
    return std::string(label);
  }
  std::string out = "\"";
  for (char c : label) {
    if (c != '"') out += c;
  }
  return out + '"';
}

template <typename Range, typename Fn>
std::string joined(const Range& items, Fn&& render, char sep = ',') {
  std::string out;
  bool first = true;
  for (const auto& item : items) {
    if (!first) out += sep;
    out += render(item);
    first = false;
  }
  return out;
}

}  // namespace

DataTable parse_table(std::string_view text, char delimiter, bool has_row_names,
                      std::string_view source) {
  if (delimiter == '.' || delimiter == '\n' || delimiter == '\r') {
    throw Error(fmt::format("invalid delimiter '{}'", delimiter));
  }
  const auto lines = lines_of(text);
  if (lines.empty()) throw Error(fmt::format("{}: empty file", source));

  const auto header = split_cells(lines.front(), delimiter);
  const std::size_t label_cols = has_row_names ? 1 : 0;
  if (header.size() <= label_cols) throw Error(fmt::format("{}: header has no data columns", source));

  std::vector<std::string> col_labels;
  for (std::size_t c = label_cols; c < header.size(); ++c) col_labels.push_back(unquote(header[c]));
  const std::size_t m = col_labels.size();

  std::vector<std::string> row_labels;
  std::vector<std::vector<double>> cols(m);
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const auto cells = split_cells(lines[li], delimiter);
    if (cells.size() != header.size()) {
      throw Error(fmt::format("{}: line {} has {} fields, header has {}", source, li + 1,
                              cells.size(), header.size()));
    }
    const std::string row_label =
        has_row_names ? unquote(cells[0]) : std::to_string(row_labels.size() + 1);
    for (std::size_t c = 0; c < m; ++c) {
      const auto text = unquote(cells[c + label_cols]);
      const auto value = parse_double(text);
      if (!value) {
        throw Error(fmt::format("{}: non-numeric value '{}' at row '{}', column '{}'", source, text,
                                row_label, col_labels[c]));
      }
      cols[c].push_back(*value);
    }
    row_labels.push_back(row_label);
  }
  if (row_labels.empty()) throw Error(fmt::format("{}: no data rows", source));
  try {
    return DataTable(std::move(row_labels), std::move(col_labels), std::move(cols), m - 1);
  } catch (const Error& e) {
    throw Error(fmt::format("{}: {}", source, e.what()));
  }
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(fmt::format("cannot open '{}'", path.string()));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

DataTable read_table(const TableFileSpec& spec) {
  return parse_table(read_text_file(spec.path), spec.delimiter, spec.has_row_names,
                     spec.path.string());
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(fmt::format("cannot write '{}'", path.string()));
  out << content;
  out.flush();
  if (!out) throw Error(fmt::format("error while writing '{}'", path.string()));
}

std::string format_number(double value) {
  if (value == std::trunc(value) && std::abs(value) < 1e15) {
    return fmt::format("{}", static_cast<long long>(value));
  }
  return fmt::format("{}", value);
}

std::string format_table(const DataTable& table, char delimiter) {
  std::string out;
  for (const auto& label : table.col_labels()) out += delimiter + cell(label, delimiter);
  out += '\n';
  for (std::size_t i = 0; i < table.rows(); ++i) {
    out += cell(table.row_labels()[i], delimiter);
    for (std::size_t j = 0; j < table.cols(); ++j) {
      out += delimiter;
      out += format_number(table.at(i, j));
    }
    out += '\n';
  }
  return out;
}

std::string format_rank_matrix(const RankMatrix& ranks) {
  std::string out;
  for (const auto& label : ranks.col_labels) out += "," + cell(label);
  out += '\n';
  for (std::size_t i = 0; i < ranks.row_labels.size(); ++i) {
    out += cell(ranks.row_labels[i]);
    for (const auto& col : ranks.ranks) out += "," + format_number(col[i]);
    out += '\n';
  }
  return out;
}

std::string format_srd_result(const SrdResult& result, bool normalized) {
  std::string out = "," + joined(result.labels, [](const auto& l) { return cell(l); }) + '\n';
  if (normalized) {
    out += "SRD," + joined(result.normalized, [](double v) { return fixed(v, 7); }) + '\n';
  } else {
    out += "SRD_raw," + joined(result.raw, [](double v) { return format_number(v); }) + '\n';
  }
  return out;
}

std::string format_detailed(const DetailedSrd& detail) {
  std::string out;
  for (const auto& col : detail.solutions) {
    out += fmt::format(",{0},{1},{2}", cell(col.label), cell(col.label + "_Rank"), cell(col.label + "_Dist"));
  }
  out += fmt::format(",{},{}\n", cell(detail.reference.label), cell(detail.reference.label + "_Rank"));
  for (std::size_t i = 0; i < detail.row_labels.size(); ++i) {
    out += cell(detail.row_labels[i]);
    for (const auto& col : detail.solutions) {
      out += fmt::format(",{},{},{}", format_number(col.values[i]), format_number(col.ranks[i]),
                         format_number(col.distances[i]));
    }
    out += fmt::format(",{},{}\n", format_number(detail.reference.values[i]),
                       format_number(detail.reference.ranks[i]));
  }
  out += "SRD";
  for (const auto& col : detail.solutions) out += fmt::format(",-,-,{}", format_number(col.raw_srd));
  out += ",-,-\n";
  return out;
}

std::string format_distribution(const SrdDistribution& dist) {
  std::string out = "SRD_value,relative_frequency\n";
  for (std::size_t i = 0; i < dist.support().size(); ++i) {
    out += fmt::format("{},{}\n", fixed(dist.support()[i], 7), fixed(dist.frequency()[i], 9));
  }
  const auto& t = dist.thresholds();
  out += fmt::format("xx1,{}\nq1,{}\nmedian,{}\nq3,{}\nxx19,{}\navg,{}\nstd_dev,{}\n", fixed(t.xx1, 7),
                     fixed(t.q1, 7), fixed(t.median, 7), fixed(t.q3, 7), fixed(t.xx19, 7),
                     fixed(t.mean, 7), fixed(t.std_dev, 7));
  const auto& meta = dist.meta();
  out += fmt::format("option,{}\n", to_char(meta.option));
  out += fmt::format("tie_probability,{}\n",
                     meta.tie_probability ? fixed(*meta.tie_probability, 7) : std::string());
  out += fmt::format("samples,{}\n", meta.sample_count);
  out += fmt::format("seed,{}\n", meta.seed ? std::to_string(*meta.seed) : std::string());
  out += fmt::format("exact,{}\n", meta.exact ? "true" : "false");
  out += fmt::format("n_objects,{}\n", meta.n_objects);
  return out;
}

std::string format_verdicts(const SrdResult& result, const Thresholds& thresholds) {
  std::string out = "solution,SRD,verdict\n";
  for (std::size_t j = 0; j < result.labels.size(); ++j) {
    out += fmt::format("{},{},{}\n", cell(result.labels[j]), fixed(result.normalized[j], 7),
                       to_string(classify(result.normalized[j], thresholds)));
  }
  return out;
}

std::string format_crossval_report(const CrossValReport& report) {
  std::string out = "new_column_order_based_on_folds\n";
  out += joined(report.column_order, [](std::size_t i) { return std::to_string(i + 1); }) + "\n\n";
  out += "test_statistics\n";
  out += joined(report.pair_results, [](const auto& r) { return fmt::format("{:.7g}", r.statistic); });
  out += "\n\nstatistical_significance\n";
  out += joined(report.pair_results, [](const auto& r) { return std::string(label(r.category)); });
  out += "\n\nSRD_values_of_different_folds\n";
  for (auto s : report.column_order) out += "," + cell(report.labels[s]);
  out += '\n';
  for (std::size_t f = 0; f < report.fold_srd.size(); ++f) {
    out += fmt::format("fold_{}", f + 1);
    for (auto s : report.column_order) out += "," + fixed(report.fold_srd[f][s], 7);
    out += '\n';
  }
  out += "\nboxplot_values\n";
  for (auto s : report.column_order) out += "," + cell(report.labels[s]);
  out += '\n';
  const std::pair<const char*, double BoxSummary::*> rows[] = {
      {"min", &BoxSummary::min},       {"xx1", &BoxSummary::xx1},   {"q1", &BoxSummary::q1},
      {"median", &BoxSummary::median}, {"q3", &BoxSummary::q3},     {"xx19", &BoxSummary::xx19},
      {"max", &BoxSummary::max}};
  for (const auto& [name, field] : rows) {
    out += name;
    for (auto s : report.column_order) out += "," + fixed(report.boxes[s].*field, 4);
    out += '\n';
  }
  return out;
}

std::string format_distance_matrix(const DistanceMatrix& matrix) {
  std::string out;
  for (const auto& label : matrix.labels) out += "," + cell(label);
  out += '\n';
  for (std::size_t i = 0; i < matrix.labels.size(); ++i) {
    out += cell(matrix.labels[i]);
    for (double v : matrix.values[i]) out += "," + fixed(v, 7);
    out += '\n';
  }
  return out;
}

std::string format_fold_replay(const CrossValReport& report) {
  const auto& scheme = report.scheme;
  std::string out = fmt::format("test,{}\nscheme,{}\nfolds,{}\nseed,{}\n", to_string(report.test),
                                to_string(scheme.kind), scheme.k,
                                scheme.seed ? std::to_string(*scheme.seed) : std::string());
  for (std::size_t f = 0; f < scheme.folds.size(); ++f) {
    out += fmt::format("fold_{},", f + 1);
    out += joined(scheme.folds[f], [](std::size_t r) { return std::to_string(r + 1); });
    out += '\n';
  }
  return out;
}

FoldReplay parse_fold_replay(std::string_view text) {
  FoldReplay replay;
  bool have_test = false, have_scheme = false, have_k = false;
  for (auto line : lines_of(text)) {
    const auto cells = split(line, ',');
    const auto key = trim(cells[0]);
    const auto value = cells.size() > 1 ? trim(cells[1]) : std::string_view{};
    auto to_count = [&](std::string_view cell) {
      std::size_t v = 0;
      const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (ec != std::errc() || ptr != cell.data() + cell.size()) {
        throw Error(fmt::format("fold replay: bad number '{}' on line '{}'", cell, line));
      }
      return v;
    };
    if (key == "test") {
      replay.test = parse_pair_test(value);
      have_test = true;
    } else if (key == "scheme") {
      replay.scheme.kind = parse_fold_kind(value);
      have_scheme = true;
    } else if (key == "folds") {
      replay.scheme.k = to_count(value);
      have_k = true;
    } else if (key == "seed") {
      if (!value.empty()) replay.scheme.seed = to_count(value);
    } else if (key.substr(0, 5) == "fold_") {
      std::vector<std::size_t> rows;
      for (std::size_t c = 1; c < cells.size(); ++c) {
        const auto row = to_count(trim(cells[c]));
        if (row == 0) throw Error("fold replay: row numbers are 1-based");
        rows.push_back(row - 1);
      }
      replay.scheme.folds.push_back(std::move(rows));
    } else {
      throw Error(fmt::format("fold replay: unknown key '{}'", key));
    }
  }
  if (!have_test || !have_scheme || !have_k) {
    throw Error("fold replay: missing test, scheme or folds line");
  }
  if (replay.scheme.folds.size() != replay.scheme.k) {
    throw Error(fmt::format("fold replay: declares {} folds but lists {}", replay.scheme.k,
                            replay.scheme.folds.size()));
  }
  return replay;
}

FoldReplay read_fold_replay(const std::filesystem::path& path) {
  try {
    return parse_fold_replay(read_text_file(path));
  } catch (const Error& e) {
    throw Error(fmt::format("{}: {}", path.string(), e.what()));
  }
}

void write_report(const SrdResult& result, const std::filesystem::path& path) {
  write_text_file(path, format_srd_result(result));
}
void write_report(const DetailedSrd& detail, const std::filesystem::path& path) {
  write_text_file(path, format_detailed(detail));
}
void write_report(const RankMatrix& ranks, const std::filesystem::path& path) {
  write_text_file(path, format_rank_matrix(ranks));
}
void write_report(const SrdDistribution& dist, const std::filesystem::path& path) {
  write_text_file(path, format_distribution(dist));
}
void write_report(const CrossValReport& report, const std::filesystem::path& path) {
  write_text_file(path, format_crossval_report(report));
}
void write_report(const DistanceMatrix& matrix, const std::filesystem::path& path) {
  write_text_file(path, format_distance_matrix(matrix));
}

}  // namespace srd
