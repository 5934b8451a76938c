#include "srd/cli.hpp"

#include <filesystem>
#include <iostream>
#include <optional>
#include <utility>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "srd/core.hpp"
#include "srd/crossval.hpp"
#include "srd/distribution.hpp"
#include "srd/error.hpp"
#include "srd/io.hpp"
#include "srd/plot.hpp"
#include "srd/preprocess.hpp"

namespace srd::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TableOptions {
  std::string input;
  std::string delimiter = ";";
  bool no_row_names = false;
  bool transpose = false;
  std::string reference = "last";
  std::string preprocess;
};

struct Config {
  TableOptions table;
  std::string output;
  bool raw = false;
  bool no_save = false;
  bool plot = false;
  // maxsrd / tieprob
  std::size_t n = 0;
  std::string values;
  std::string column;
  // preprocess / reference
  std::string method;
  // crrn
  std::string option = "f";
  std::optional<double> tie_prob;
  std::uint64_t samples = 1'000'000;
  std::optional<std::uint64_t> seed;
  unsigned workers = 1;
  bool exact = false;
  bool cdf = false;
  // crossval
  std::string test = "wilcoxon";
  std::optional<std::size_t> folds;
  std::string replay;
  // heatmap
  std::string palette;
};

// Files produced by a subcommand, written only after everything succeeded.
using Outputs = std::vector<std::pair<std::filesystem::path, std::string>>;

void add_table_options(CLI::App* cmd, TableOptions& t, bool with_reference = true) {
  cmd->add_option("input", t.input, "Delimited input table (header row, row labels first)")
      ->required();
  cmd->add_option("-d,--delimiter", t.delimiter, "Field delimiter: ';' (default), ',', or 'tab'");
  cmd->add_flag("--no-row-names", t.no_row_names, "First column holds data, not row labels");
  cmd->add_flag("--transpose", t.transpose, "Swap rows and columns before any other step");
  cmd->add_option("-p,--preprocess", t.preprocess,
                  "Column scaler: scale_to_unit, standardize, range_scale, scale_to_max");
  if (with_reference) {
    cmd->add_option("-r,--reference", t.reference,
                    "Reference: 'last', a column name, or synth:max|min|median|mean|mixed:<m,m,...>");
  }
}

char parse_delimiter(const std::string& d) {
  if (d == "tab" || d == "\\t" || d == "\t") return '\t';
  if (d.size() != 1 || d == "." || d == "\n" || d == "\r") {
    throw UsageError(fmt::format("invalid delimiter '{}'", d));
  }
  return d[0];
}

// Flag validation that needs no data, so usage errors surface before I/O.
void check_table_flags(const TableOptions& t) {
  parse_delimiter(t.delimiter);
  try {
    if (!t.preprocess.empty()) parse_scaler(t.preprocess);
    if (t.reference.rfind("synth:", 0) == 0) parse_reference_spec(t.reference.substr(6));
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

DataTable load_table(const TableOptions& t) {
  auto table = read_table({t.input, parse_delimiter(t.delimiter), !t.no_row_names});
  if (t.transpose) {
    auto flipped = table.transposed();
    table = flipped.with_reference(flipped.cols() - 1);
  }
  if (!t.preprocess.empty()) table = preprocess_table(table, parse_scaler(t.preprocess));

  if (t.reference == "last") return table.with_reference(table.cols() - 1);
  if (t.reference.rfind("synth:", 0) == 0) {
    return create_reference(table.with_reference(std::nullopt),
                            parse_reference_spec(t.reference.substr(6)));
  }
  const auto idx = table.find_column(t.reference);
  if (!idx) throw Error(fmt::format("{}: no column named '{}'", t.input, t.reference));
  return table.with_reference(*idx);
}

std::filesystem::path out_path(const std::string& prefix, const std::string& suffix) {
  return prefix + suffix;
}

void emit(std::ostream& out, Outputs& files, const std::string& prefix, const std::string& suffix,
          std::string content, bool echo = true) {
  if (echo) out << content;
  if (!prefix.empty()) files.emplace_back(out_path(prefix, suffix), std::move(content));
}

void cmd_values(const Config& c, std::ostream& out, Outputs& files) {
  const auto result = srd_values(load_table(c.table));
  emit(out, files, c.output, "_srd_values.csv", format_srd_result(result, !c.raw));
}

void cmd_detailed(const Config& c, std::ostream& out, Outputs& files) {
  emit(out, files, c.output, "_detailed_srd.csv", format_detailed(detailed_srd(load_table(c.table))));
}

void cmd_rankmatrix(const Config& c, std::ostream& out, Outputs& files) {
  emit(out, files, c.output, "_ranking_matrix.csv", format_rank_matrix(rank_matrix(load_table(c.table))));
}

void cmd_tieprob(const Config& c, std::ostream& out, Outputs& files) {
  std::string report = "column,tie_probability\n";
  if (!c.values.empty()) {
    const auto table = parse_table("x\n" + [&] {
      std::string s = c.values;
      for (auto& ch : s) if (ch == ',') ch = '\n';
      return s;
    }(), ';', false, "--values");
    report += fmt::format("values,{:.7f}\n", tie_probability(table.column(0)));
  } else {
    const auto table = load_table(c.table);
    bool found = c.column.empty();
    for (std::size_t j = 0; j < table.cols(); ++j) {
      if (!c.column.empty() && table.col_labels()[j] != c.column) continue;
      found = true;
      report += fmt::format("{},{:.7f}\n", table.col_labels()[j], tie_probability(table.column(j)));
    }
    if (!found) throw Error(fmt::format("{}: no column named '{}'", c.table.input, c.column));
  }
  emit(out, files, c.output, "_tie_probability.csv", report);
}

void cmd_preprocess(const Config& c, std::ostream& out, Outputs& files) {
  auto opts = c.table;
  opts.preprocess = c.method;
  const auto table = load_table(opts);
  emit(out, files, c.output, "_preprocessed.csv", format_table(table, parse_delimiter(opts.delimiter)));
}

void cmd_reference(const Config& c, std::ostream& out, Outputs& files) {
  auto opts = c.table;
  opts.reference = "synth:" + c.method;
  const auto table = load_table(opts);
  emit(out, files, c.output, "_reference.csv", format_table(table, parse_delimiter(opts.delimiter)));
}

void cmd_crrn(const Config& c, std::ostream& out, Outputs& files) {
  const auto table = load_table(c.table);
  const auto result = srd_values(table);
  const auto option = parse_null_model(c.option);
  std::optional<SrdDistribution> dist;
  if (c.exact) {
    const auto ref = fractional_ranks(table.column(*table.reference()));
    dist.emplace(exact_distribution(table.rows(), ref));
  } else {
    GenerationConfig g;
    g.option = option;
    g.tie_probability = c.tie_prob;
    g.samples = c.samples;
    g.seed = c.seed;
    g.workers = c.workers;
    dist.emplace(generate_distribution(table, g));
  }
  emit(out, files, c.output, "_srd_distribution.csv", format_distribution(*dist));
  out << '\n';
  emit(out, files, c.output, "_verdicts.csv", format_verdicts(result, dist->thresholds()));
  if (c.plot) {
    const auto chart = plot_perm_test(result, *dist, c.cdf);
    emit(out, files, c.output, "_perm_test.svg", chart.svg, false);
    emit(out, files, c.output, "_perm_test_data.csv", chart.data, false);
  }
}

void cmd_crossval(const Config& c, std::ostream& out, Outputs& files) {
  const auto table = load_table(c.table);
  CrossValReport report;
  if (!c.replay.empty()) {
    const auto replay = read_fold_replay(c.replay);
    report = cross_validate(table, replay.scheme, replay.test);
  } else {
    report = cross_validate(table, parse_pair_test(c.test), c.folds, c.seed);
  }
  const std::string prefix = c.no_save ? std::string() : c.output;
  emit(out, files, prefix, "_crossval.csv", format_crossval_report(report));
  emit(out, files, prefix, "_crossval_folds.csv", format_fold_replay(report), false);
  if (c.plot) {
    const auto chart = plot_crossval(report);
    emit(out, files, prefix, "_crossval.svg", chart.svg, false);
    emit(out, files, prefix, "_crossval_data.csv", chart.data, false);
  }
}

void cmd_heatmap(const Config& c, std::ostream& out, Outputs& files) {
  const auto palette = c.palette.empty() ? Palette::default_palette() : Palette::parse(c.palette);
  const auto table = load_table(c.table);
  const auto matrix = pairwise_srd(table);
  const std::string prefix = c.no_save ? std::string() : c.output;
  emit(out, files, prefix, "_heatmap.csv", format_distance_matrix(matrix));
  const auto chart = plot_heatmap(matrix, palette);
  emit(out, files, prefix, "_heatmap.svg", chart.svg, false);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"Sum of Ranking Differences: scores, permutation test and cross-validation"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  auto* values = app.add_subcommand("values", "Normalized SRD of every solution column");
  add_table_options(values, c.table);
  values->add_flag("--raw", c.raw, "Print raw (unnormalized) SRD values");
  values->add_option("-o,--output", c.output, "Output file prefix");

  auto* detailed = app.add_subcommand("detailed", "Ranks, per-row distances and raw SRD");
  add_table_options(detailed, c.table);
  detailed->add_option("-o,--output", c.output, "Output file prefix");

  auto* rankmatrix = app.add_subcommand("rankmatrix", "Fractional ranks of the solution columns");
  add_table_options(rankmatrix, c.table);
  rankmatrix->add_option("-o,--output", c.output, "Output file prefix");

  auto* maxsrd = app.add_subcommand("maxsrd", "Largest possible SRD for n objects");
  maxsrd->add_option("n", c.n, "Number of objects (rows)")->required();

  auto* tieprob = app.add_subcommand("tieprob", "Fraction of tied adjacent positions per column");
  tieprob->add_option("input", c.table.input, "Delimited input table");
  tieprob->add_option("-d,--delimiter", c.table.delimiter, "Field delimiter: ';' (default), ',', or 'tab'");
  tieprob->add_flag("--no-row-names", c.table.no_row_names, "First column holds data, not row labels");
  tieprob->add_flag("--transpose", c.table.transpose, "Swap rows and columns first");
  tieprob->add_option("-c,--column", c.column, "Only report this column");
  tieprob->add_option("--values", c.values, "Comma-separated values instead of a table");
  tieprob->add_option("-o,--output", c.output, "Output file prefix");

  auto* preprocess = app.add_subcommand("preprocess", "Scale every column");
  add_table_options(preprocess, c.table, false);
  preprocess->add_option("-m,--method", c.method,
                         "scale_to_unit, standardize, range_scale or scale_to_max")
      ->required();
  preprocess->add_option("-o,--output", c.output, "Output file prefix");

  auto* reference = app.add_subcommand("reference", "Append a synthesized reference column");
  add_table_options(reference, c.table, false);
  reference->add_option("-m,--method", c.method, "max, min, median, mean or mixed:<m,m,...>")
      ->required();
  reference->add_option("-o,--output", c.output, "Output file prefix");

  auto* crrn = app.add_subcommand("crrn", "Permutation test against random rankings");
  add_table_options(crrn, c.table);
  crrn->add_option("--option", c.option, "Null model: n, r, t, p, d or f (default f)");
  crrn->add_option("--tie-prob", c.tie_prob, "Tie probability for options t and p");
  crrn->add_option("--samples", c.samples, "Number of random draws (default 1000000)");
  crrn->add_option("--seed", c.seed, "Random seed (recorded in the report)");
  crrn->add_option("--workers", c.workers, "Worker threads; results do not depend on it");
  crrn->add_flag("--exact", c.exact, "Enumerate all n! rankings instead of sampling (n <= 10)");
  crrn->add_flag("--plot", c.plot, "Write a permutation-test chart (needs --output)");
  crrn->add_flag("--cdf", c.cdf, "Plot the cumulative distribution instead of the density");
  crrn->add_option("-o,--output", c.output, "Output file prefix");

  auto* crossval = app.add_subcommand("crossval", "Cross-validation with pairwise tests");
  add_table_options(crossval, c.table);
  crossval->add_option("--test", c.test, "wilcoxon (default), dietterich or alpaydin");
  crossval->add_option("-k,--folds", c.folds, "Number of folds (default 8 for wilcoxon, else 10)");
  crossval->add_option("--seed", c.seed, "Random seed (recorded in the fold file)");
  crossval->add_option("--replay", c.replay, "Reuse the folds recorded in a fold file");
  crossval->add_flag("--no-save", c.no_save, "Do not write report or fold files");
  crossval->add_flag("--plot", c.plot, "Write a box-plot chart");
  crossval->add_option("-o,--output", c.output, "Output file prefix (default 'crossval')");

  auto* heatmap = app.add_subcommand("heatmap", "Pairwise SRD matrix and heatmap chart");
  add_table_options(heatmap, c.table, false);
  heatmap->add_option("--palette", c.palette, "Comma-separated #RRGGBB colours");
  heatmap->add_flag("--no-save", c.no_save, "Print the matrix without writing files");
  heatmap->add_option("-o,--output", c.output, "Output file prefix (default 'heatmap')");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }

  Outputs files;
  try {
    if (maxsrd->parsed()) {
      out << max_srd(c.n) << '\n';
      return kSuccess;
    }
    if (tieprob->parsed()) {
      if (c.values.empty() == c.table.input.empty()) {
        throw UsageError("tieprob needs exactly one of an input table or --values");
      }
      check_table_flags(c.table);
      cmd_tieprob(c, out, files);
    } else if (preprocess->parsed()) {
      check_table_flags(c.table);
      try { parse_scaler(c.method); } catch (const Error& e) { throw UsageError(e.what()); }
      cmd_preprocess(c, out, files);
    } else if (reference->parsed()) {
      check_table_flags(c.table);
      try { parse_reference_spec(c.method); } catch (const Error& e) { throw UsageError(e.what()); }
      cmd_reference(c, out, files);
    } else {
      check_table_flags(c.table);
      if (values->parsed()) {
        cmd_values(c, out, files);
      } else if (detailed->parsed()) {
        cmd_detailed(c, out, files);
      } else if (rankmatrix->parsed()) {
        cmd_rankmatrix(c, out, files);
      } else if (crrn->parsed()) {
        NullModel opt{};
        try { opt = parse_null_model(c.option); } catch (const Error& e) { throw UsageError(e.what()); }
        const bool needs_prob = opt == NullModel::TiedBoth || opt == NullModel::TiedSolution;
        if (needs_prob && !c.tie_prob) throw UsageError("options t and p need --tie-prob");
        if (!needs_prob && c.tie_prob) throw UsageError("--tie-prob only applies to options t and p");
        if (c.exact && ((crrn->count("--option") > 0 && opt != NullModel::FixedReference) ||
                        crrn->count("--samples") > 0 || c.seed)) {
          throw UsageError("--exact enumerates option n only and takes no --samples or --seed");
        }
        if (c.plot && c.output.empty()) throw UsageError("--plot needs --output");
        if (c.cdf && !c.plot) throw UsageError("--cdf only applies with --plot");
        if (c.samples == 0) throw UsageError("--samples must be positive");
        cmd_crrn(c, out, files);
      } else if (crossval->parsed()) {
        if (c.output.empty()) c.output = "crossval";
        if (c.no_save && c.plot) throw UsageError("--plot conflicts with --no-save");
        if (!c.replay.empty() && (c.folds || c.seed || crossval->count("--test") > 0)) {
          throw UsageError("--replay takes test, folds and seed from the fold file");
        }
        try { parse_pair_test(c.test); } catch (const Error& e) { throw UsageError(e.what()); }
        cmd_crossval(c, out, files);
      } else if (heatmap->parsed()) {
        if (c.output.empty()) c.output = "heatmap";
        if (!c.palette.empty()) {
          try { Palette::parse(c.palette); } catch (const Error& e) { throw UsageError(e.what()); }
        }
        cmd_heatmap(c, out, files);
      }
    }
    for (const auto& [path, content] : files) write_text_file(path, content);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  }
  return kSuccess;
}

}  // namespace srd::cli
