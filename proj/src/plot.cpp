#include "srd/plot.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "srd/error.hpp"

namespace srd {

namespace {

std::string escape_xml(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

// Minimal SVG writer; coordinates are rendered with two decimals so output is
// byte-stable.
class Svg {
 public:
  Svg(double width, double height) {
    out_ = fmt::format(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0:.0f}\" height=\"{1:.0f}\" "
        "viewBox=\"0 0 {0:.0f} {1:.0f}\" font-family=\"sans-serif\">\n"
        "<rect x=\"0\" y=\"0\" width=\"{0:.0f}\" height=\"{1:.0f}\" fill=\"#ffffff\"/>\n",
        width, height);
  }

  void rect(double x, double y, double w, double h, std::string_view fill,
            std::string_view stroke = "none") {
    out_ += fmt::format(
        "<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" fill=\"{}\" stroke=\"{}\"/>\n",
        x, y, w, h, fill, stroke);
  }

  void line(double x1, double y1, double x2, double y2, std::string_view stroke,
            double width = 1.0, bool dashed = false) {
    out_ += fmt::format(
        "<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"{}\" "
        "stroke-width=\"{:.2f}\"{}/>\n",
        x1, y1, x2, y2, stroke, width, dashed ? " stroke-dasharray=\"6,4\"" : "");
  }

  void polyline(const std::vector<std::pair<double, double>>& pts, std::string_view stroke) {
    out_ += "<polyline fill=\"none\" stroke=\"";
    out_ += stroke;
    out_ += "\" stroke-width=\"1.50\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      out_ += fmt::format("{}{:.2f},{:.2f}", i ? " " : "", pts[i].first, pts[i].second);
    }
    out_ += "\"/>\n";
  }

  void polygon(const std::vector<std::pair<double, double>>& pts, std::string_view fill) {
    out_ += "<polygon fill=\"";
    out_ += fill;
    out_ += "\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      out_ += fmt::format("{}{:.2f},{:.2f}", i ? " " : "", pts[i].first, pts[i].second);
    }
    out_ += "\"/>\n";
  }

  void text(double x, double y, std::string_view content, std::string_view anchor = "start",
            double size = 12.0, double rotate = 0.0) {
    std::string transform;
    if (rotate != 0.0) transform = fmt::format(" transform=\"rotate({:.0f} {:.2f} {:.2f})\"", rotate, x, y);
    out_ += fmt::format(
        "<text x=\"{:.2f}\" y=\"{:.2f}\" font-size=\"{:.0f}\" text-anchor=\"{}\"{}>{}</text>\n", x,
        y, size, anchor, transform, escape_xml(content));
  }

  std::string finish() && {
    out_ += "</svg>\n";
    return std::move(out_);
  }

 private:
  std::string out_;
};

// Categorical colours for bars and the legend.
constexpr const char* kSeriesColors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                         "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string series_color(std::size_t i) {
  return kSeriesColors[i % (sizeof(kSeriesColors) / sizeof(kSeriesColors[0]))];
}

bool is_hex_color(std::string_view c) {
  if (c.size() != 7 || c[0] != '#') return false;
  return std::all_of(c.begin() + 1, c.end(), [](unsigned char ch) { return std::isxdigit(ch) != 0; });
}

std::string fixed7(double v) { return fmt::format("{:.7f}", v); }

}  // namespace

DistanceMatrix pairwise_srd(const DataTable& table) {
  if (table.cols() < 2) throw Error("pairwise SRD needs at least two columns");
  const std::size_t m = table.cols();
  std::vector<std::vector<double>> ranks;
  ranks.reserve(m);
  for (std::size_t j = 0; j < m; ++j) ranks.push_back(fractional_ranks(table.column(j)));
  const auto f = static_cast<double>(max_srd(table.rows()));

  DistanceMatrix out;
  out.labels = table.col_labels();
  out.values.assign(m, std::vector<double>(m, 0.0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const double d = f > 0 ? l1_distance(ranks[i], ranks[j]) / f : 0.0;
      out.values[i][j] = d;
      out.values[j][i] = d;
    }
  }
  return out;
}

Palette::Palette(std::vector<std::string> colors) : colors_(std::move(colors)) {
  if (colors_.size() < 2) throw Error("a palette needs at least two colours");
  for (const auto& c : colors_) {
    if (!is_hex_color(c)) throw Error(fmt::format("'{}' is not a #RRGGBB colour", c));
  }
}

Palette Palette::default_palette() {
  return Palette({"#b2182b", "#d6604d", "#f4a582", "#fddbc7", "#d1e5f0", "#92c5de", "#4393c3",
                  "#2166ac"});
}

Palette Palette::parse(std::string_view list) {
  std::vector<std::string> colors;
  while (true) {
    const auto comma = list.find(',');
    auto item = list.substr(0, comma);
    while (!item.empty() && (item.front() == ' ' || item.front() == '"')) item.remove_prefix(1);
    while (!item.empty() && (item.back() == ' ' || item.back() == '"')) item.remove_suffix(1);
    colors.emplace_back(item);
    if (comma == std::string_view::npos) break;
    list = list.substr(comma + 1);
  }
  return Palette(std::move(colors));
}

std::size_t Palette::bucket(double value) const {
  if (!(value > 0.0)) return 0;
  const double scaled = std::floor(value * static_cast<double>(colors_.size()));
  return std::min(static_cast<std::size_t>(scaled), colors_.size() - 1);
}

ChartDocument plot_perm_test(const SrdResult& result, const SrdDistribution& dist, bool cumulative) {
  if (result.labels.empty()) throw Error("nothing to plot: no solutions");
  if (result.n_objects != dist.meta().n_objects) {
    throw Error(fmt::format("SRD values are for n = {} but the distribution is for n = {}",
                            result.n_objects, dist.meta().n_objects));
  }

  std::vector<std::size_t> order(result.labels.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return result.normalized[a] < result.normalized[b];
  });

  // overlay curve: cdf, or frequencies scaled so the mode reaches 1
  const auto& support = dist.support();
  std::vector<double> curve(support.size());
  if (cumulative) {
    std::partial_sum(dist.frequency().begin(), dist.frequency().end(), curve.begin());
    for (auto& c : curve) c = std::min(c, 1.0);
  } else {
    const double peak = *std::max_element(dist.frequency().begin(), dist.frequency().end());
    std::transform(dist.frequency().begin(), dist.frequency().end(), curve.begin(),
                   [&](double f) { return f / peak; });
  }

  constexpr double width = 860, height = 500, left = 60, right = 220, top = 30, bottom = 60;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;
  auto px = [&](double x) { return left + std::clamp(x, 0.0, 1.0) * plot_w; };
  auto py = [&](double y) { return top + (1.0 - std::clamp(y, 0.0, 1.0)) * plot_h; };

  Svg svg(width, height);
  svg.line(left, py(0), left + plot_w, py(0), "#000000");
  svg.line(left, py(0), left, py(1), "#000000");
  for (int tick = 0; tick <= 10; ++tick) {
    const double v = tick / 10.0;
    svg.line(px(v), py(0), px(v), py(0) + 5, "#000000");
    svg.text(px(v), py(0) + 18, fmt::format("{:.1f}", v), "middle", 11);
    svg.line(left - 5, py(v), left, py(v), "#000000");
    svg.text(left - 8, py(v) + 4, fmt::format("{:.1f}", v), "end", 11);
  }
  svg.text(left + plot_w / 2, height - 15, "normalized SRD", "middle", 13);
  svg.text(18, top + plot_h / 2, cumulative ? "cumulative probability" : "relative frequency (scaled)",
           "middle", 13, -90);

  const double bar_w = plot_w * 0.012;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const double v = result.normalized[order[k]];
    svg.rect(px(v) - bar_w / 2, py(v), bar_w, py(0) - py(v), series_color(k));
  }

  std::vector<std::pair<double, double>> pts;
  pts.reserve(support.size());
  for (std::size_t i = 0; i < support.size(); ++i) pts.emplace_back(px(support[i]), py(curve[i]));
  svg.polyline(pts, "#333333");

  const auto& t = dist.thresholds();
  svg.line(px(t.xx1), py(0), px(t.xx1), py(1), "#555555", 1.2, true);
  svg.text(px(t.xx1), top - 8, "XX1", "middle", 12);
  svg.line(px(t.xx19), py(0), px(t.xx19), py(1), "#555555", 1.2, true);
  svg.text(px(t.xx19), top - 8, "XX19", "middle", 12);

  const double legend_x = left + plot_w + 20;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const double y = top + 10 + 20.0 * static_cast<double>(k);
    svg.rect(legend_x, y - 10, 12, 12, series_color(k));
    svg.text(legend_x + 18, y, fmt::format("{} ({:.4f})", result.labels[order[k]],
                                           result.normalized[order[k]]));
  }

  std::string data = "solution,SRD\n";
  for (auto j : order) data += fmt::format("{},{}\n", result.labels[j], fixed7(result.normalized[j]));
  data += fmt::format("\nSRD_value,{}\n", cumulative ? "cdf" : "density");
  for (std::size_t i = 0; i < support.size(); ++i) {
    data += fmt::format("{},{:.9f}\n", fixed7(support[i]),
                        cumulative ? curve[i] : dist.frequency()[i]);
  }
  data += fmt::format("\nxx1,{}\nxx19,{}\n", fixed7(t.xx1), fixed7(t.xx19));
  return {std::move(svg).finish(), std::move(data)};
}

ChartDocument plot_crossval(const CrossValReport& report) {
  const auto& order = report.column_order;
  if (order.empty()) throw Error("nothing to plot: no solutions");

  double lo = 1.0, hi = 0.0;
  for (auto s : order) {
    lo = std::min(lo, report.boxes[s].min);
    hi = std::max(hi, report.boxes[s].max);
  }
  const double pad = std::max(0.02, (hi - lo) * 0.1);
  lo = std::max(0.0, lo - pad);
  hi = std::min(1.0, hi + pad);

  constexpr double slot = 90, left = 70, right = 30, top = 40, bottom = 90, height = 460;
  const double width = left + right + slot * static_cast<double>(order.size());
  const double plot_h = height - top - bottom;
  auto py = [&](double y) { return top + (hi - y) / (hi - lo) * plot_h; };
  auto cx = [&](std::size_t k) { return left + slot * (static_cast<double>(k) + 0.5); };

  Svg svg(width, height);
  svg.line(left, py(lo), width - right, py(lo), "#000000");
  svg.line(left, py(lo), left, py(hi), "#000000");
  for (int tick = 0; tick <= 5; ++tick) {
    const double v = lo + (hi - lo) * tick / 5.0;
    svg.line(left - 5, py(v), left, py(v), "#000000");
    svg.text(left - 8, py(v) + 4, fmt::format("{:.3f}", v), "end", 11);
  }
  svg.text(18, top + plot_h / 2, "normalized SRD", "middle", 13, -90);

  for (std::size_t k = 0; k < order.size(); ++k) {
    const auto& b = report.boxes[order[k]];
    const double x = cx(k);
    const double half = slot * 0.25;
    svg.line(x, py(b.min), x, py(b.q1), "#000000");
    svg.line(x, py(b.q3), x, py(b.max), "#000000");
    svg.line(x - half / 2, py(b.min), x + half / 2, py(b.min), "#000000");
    svg.line(x - half / 2, py(b.max), x + half / 2, py(b.max), "#000000");
    svg.rect(x - half, py(b.q3), 2 * half, py(b.q1) - py(b.q3), series_color(k), "#000000");
    svg.line(x - half, py(b.median), x + half, py(b.median), "#000000", 2.0);
    const double my = py(b.mean);
    svg.polygon({{x, my - 5}, {x + 5, my}, {x, my + 5}, {x - 5, my}}, "#000000");
    svg.text(x, height - bottom + 20, report.labels[order[k]], "middle", 12);
  }
  for (std::size_t k = 0; k < report.pair_results.size(); ++k) {
    const bool differs = report.pair_results[k].category != Significance::NotSignificant;
    svg.text(left + slot * static_cast<double>(k + 1), top - 12, differs ? "<" : "~", "middle", 16);
  }

  std::string data = "solution,min,q1,median,mean,q3,max\n";
  for (auto s : order) {
    const auto& b = report.boxes[s];
    data += fmt::format("{},{},{},{},{},{},{}\n", report.labels[s], fixed7(b.min), fixed7(b.q1),
                        fixed7(b.median), fixed7(b.mean), fixed7(b.q3), fixed7(b.max));
  }
  data += "\npair,statistic,significance,symbol\n";
  for (std::size_t k = 0; k < report.pair_results.size(); ++k) {
    const auto& r = report.pair_results[k];
    data += fmt::format("{}-{},{:.7g},{},{}\n", report.labels[order[k]], report.labels[order[k + 1]],
                        r.statistic, label(r.category),
                        r.category != Significance::NotSignificant ? "<" : "~");
  }
  return {std::move(svg).finish(), std::move(data)};
}

ChartDocument plot_heatmap(const DistanceMatrix& matrix, const Palette& palette) {
  const std::size_t m = matrix.labels.size();
  if (m == 0 || matrix.values.size() != m) throw Error("heatmap needs a square matrix");
  for (const auto& row : matrix.values) {
    if (row.size() != m) throw Error("heatmap needs a square matrix");
  }

  constexpr double cell = 48, left = 150, top = 150, legend = 70;
  const double width = left + cell * static_cast<double>(m) + legend + 40;
  const double height = top + cell * static_cast<double>(m) + 30;

  Svg svg(width, height);
  for (std::size_t i = 0; i < m; ++i) {
    const double y = top + cell * static_cast<double>(i);
    svg.text(left - 8, y + cell / 2 + 4, matrix.labels[i], "end", 12);
    const double x = left + cell * static_cast<double>(i) + cell / 2;
    svg.text(x, top - 8, matrix.labels[i], "start", 12, -45);
    for (std::size_t j = 0; j < m; ++j) {
      const double v = matrix.values[i][j];
      const double cx = left + cell * static_cast<double>(j);
      svg.rect(cx, y, cell, cell, palette.color(palette.bucket(v)), "#ffffff");
      svg.text(cx + cell / 2, y + cell / 2 + 4, fmt::format("{:.2f}", v), "middle", 10);
    }
  }
  const double lx = left + cell * static_cast<double>(m) + 30;
  const double lh = cell * static_cast<double>(m) / static_cast<double>(palette.size());
  for (std::size_t b = 0; b < palette.size(); ++b) {
    const double y = top + lh * static_cast<double>(b);
    svg.rect(lx, y, 18, lh, palette.color(b));
    svg.text(lx + 24, y + lh / 2 + 4,
             fmt::format("{:.2f}", static_cast<double>(b) / static_cast<double>(palette.size())),
             "start", 10);
  }

  std::string data;
  for (const auto& label : matrix.labels) data += "," + label;
  data += '\n';
  for (std::size_t i = 0; i < m; ++i) {
    data += matrix.labels[i];
    for (double v : matrix.values[i]) data += "," + fixed7(v);
    data += '\n';
  }
  return {std::move(svg).finish(), std::move(data)};
}

}  // namespace srd
