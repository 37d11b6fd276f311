// Trend tables for the five capacity figures, rendered as CSV and SVG.
#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "kinex/core_model.hpp"
#include "kinex/detail/text.hpp"
#include "kinex/expressivity.hpp"

namespace kinex::report {

enum class FigureId { fig1_transistors, fig2_mech_configs, fig3_bits_vs_bits, fig4_celegans, fig5_animals };

class UnknownFigureId : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline const char* to_string(FigureId id) {
  switch (id) {
    case FigureId::fig1_transistors: return "fig1_transistors";
    case FigureId::fig2_mech_configs: return "fig2_mech_configs";
    case FigureId::fig3_bits_vs_bits: return "fig3_bits_vs_bits";
    case FigureId::fig4_celegans: return "fig4_celegans";
    case FigureId::fig5_animals: return "fig5_animals";
  }
  return "?";
}

/// 1..5 -> figure; anything else throws UnknownFigureId.
inline FigureId figure_from_number(int n) {
  switch (n) {
    case 1: return FigureId::fig1_transistors;
    case 2: return FigureId::fig2_mech_configs;
    case 3: return FigureId::fig3_bits_vs_bits;
    case 4: return FigureId::fig4_celegans;
    case 5: return FigureId::fig5_animals;
  }
  throw UnknownFigureId("unknown figure " + std::to_string(n) + " (expected 1-5)");
}

struct TrendPoint {
  std::string label;
  double x = 0;
  double y = 0;
  std::string series;
  /// y already holds log10 of the plotted quantity.
  bool y_is_log10 = false;

  friend bool operator==(const TrendPoint&, const TrendPoint&) = default;
};

enum class Scale {
  linear,
  log,
  /// Values are base-10 exponents: spaced linearly, labelled as powers of 10.
  log10_values,
};

struct Axis {
  std::string label;
  Scale scale = Scale::linear;
};

struct AxisSpec {
  Axis x;
  Axis y;
};

inline AxisSpec axis_spec_for(FigureId id) {
  switch (id) {
    case FigureId::fig1_transistors:
      return {{"year (estimated)", Scale::linear}, {"transistors t", Scale::log}};
    case FigureId::fig2_mech_configs:
      return {{"year (estimated)", Scale::linear}, {"mechanical configurations C (log10 stored)", Scale::log10_values}};
    case FigureId::fig3_bits_vs_bits:
      return {{"computational capacity (bits)", Scale::log}, {"mechanical capacity K (bits)", Scale::log}};
    case FigureId::fig4_celegans:
    case FigureId::fig5_animals:
      return {{"year (robots) / neurons (organisms)", Scale::log}, {"mechanical capacity K (bits)", Scale::log}};
  }
  throw UnknownFigureId("unknown figure id");
}

inline void sort_points(std::vector<TrendPoint>& points) {
  std::stable_sort(points.begin(), points.end(), [](const TrendPoint& a, const TrendPoint& b) {
    return std::tie(a.series, a.x, a.label) < std::tie(b.series, b.x, b.label);
  });
}

/// Data behind one figure. Platforms without the fields a figure needs are
/// skipped, with a line appended to `diagnostics` when given.
inline std::vector<TrendPoint> trend_table(std::span<const Platform> dataset, FigureId id,
                                           std::vector<std::string>* diagnostics = nullptr) {
  auto skip = [&](const Platform& p, const std::string& why) {
    if (diagnostics) diagnostics->push_back(std::string(to_string(id)) + ": skipped '" + p.name() + "': " + why);
  };
  auto mech_bits = [](const Platform& p) { return kinematic_expressivity(mechanical_groups(p)); };

  std::vector<TrendPoint> points;
  for (const auto& p : dataset) {
    if (!p.computable()) {
      skip(p, "not computable");
      continue;
    }
    const bool artificial = p.kind() == PlatformKind::artificial;
    switch (id) {
      case FigureId::fig1_transistors:
        if (!artificial) continue;
        if (!p.year()) { skip(p, "no year"); continue; }
        if (!p.processor()) { skip(p, "no processor"); continue; }
        points.push_back({p.name(), static_cast<double>(*p.year()),
                          static_cast<double>(p.processor()->transistors), "artificial", false});
        break;
      case FigureId::fig2_mech_configs:
        if (!artificial) continue;
        if (!p.year()) { skip(p, "no year"); continue; }
        points.push_back({p.name(), static_cast<double>(*p.year()),
                          log10_configurations(mechanical_groups(p)), "artificial", true});
        break;
      case FigureId::fig3_bits_vs_bits:
        if (!artificial) continue;
        if (!p.processor()) { skip(p, "no processor"); continue; }
        points.push_back({p.name(), computational_capacity(*p.processor()).bits, mech_bits(p), "artificial", false});
        break;
      case FigureId::fig4_celegans:
      case FigureId::fig5_animals:
        if (artificial) {
          if (!p.year()) { skip(p, "no year"); continue; }
          points.push_back({p.name(), static_cast<double>(*p.year()), mech_bits(p), "artificial", false});
          break;
        }
        if (id == FigureId::fig4_celegans && !p.meta().model) continue;
        if (!p.meta().neurons) { skip(p, "no neuron count"); continue; }
        points.push_back({p.name(), static_cast<double>(*p.meta().neurons), mech_bits(p),
                          p.meta().model ? "natural-" + *p.meta().model : std::string("natural"), false});
        break;
    }
  }
  sort_points(points);
  return points;
}

namespace detail {

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::vector<std::string> csv_split(std::string_view line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  if (quoted) throw std::invalid_argument("unterminated quoted CSV field");
  return fields;
}

inline std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
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

}  // namespace detail

/// Header "label,series,x,y", then one row per point sorted by (series, x, label).
/// The axis spec is not written; y units are whatever the figure's axis says.
inline std::string emit_csv(std::span<const TrendPoint> points, const AxisSpec& /*axis*/ = {}) {
  std::vector<TrendPoint> sorted(points.begin(), points.end());
  sort_points(sorted);
  std::string out = "label,series,x,y\n";
  for (const auto& p : sorted) {
    out += detail::csv_field(p.label) + "," + detail::csv_field(p.series) + "," + kinex::detail::shortest(p.x) +
           "," + kinex::detail::shortest(p.y) + "\n";
  }
  return out;
}

/// Inverse of emit_csv; y_is_log10 is taken from the y axis scale.
inline std::vector<TrendPoint> parse_csv(std::string_view text, const AxisSpec& axis) {
  auto lines = kinex::detail::split_lines(text);
  if (lines.empty() || lines[0] != "label,series,x,y") throw std::invalid_argument("missing CSV header");
  std::vector<TrendPoint> points;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    auto f = detail::csv_split(lines[i]);
    if (f.size() != 4) throw std::invalid_argument("CSV row " + std::to_string(i + 1) + " needs 4 fields");
    auto x = kinex::detail::parse_double(f[2]);
    auto y = kinex::detail::parse_double(f[3]);
    if (!x || !y) throw std::invalid_argument("CSV row " + std::to_string(i + 1) + " has a bad number");
    points.push_back({f[0], *x, *y, f[1], axis.y.scale == Scale::log10_values});
  }
  return points;
}

enum class LabelDensity { none, avoid_overlap, all };

struct SvgOptions {
  int width = 800;
  int height = 600;
  /// Plot x (y) on a logarithmic axis. Ignored for Scale::log10_values axes,
  /// whose values are already exponents.
  bool log_x = false;
  bool log_y = false;
  LabelDensity labels = LabelDensity::avoid_overlap;
  /// Equal pixel width and height for the plotting area.
  bool square_plot = false;
  std::string title;
};

inline constexpr double kLabelCollisionPx = 12.0;

inline SvgOptions default_svg_options(FigureId id) {
  SvgOptions o;
  AxisSpec a = axis_spec_for(id);
  o.log_x = a.x.scale == Scale::log;
  o.log_y = a.y.scale == Scale::log;
  o.square_plot = id == FigureId::fig3_bits_vs_bits;
  o.title = to_string(id);
  return o;
}

namespace detail {

struct AxisMap {
  bool log_ticks = false;  // tick labels are powers of ten
  bool transform = false;  // plotted coordinate is log10(value)
  double lo = 0;
  double hi = 1;

  double coord(double v) const { return transform ? std::log10(v) : v; }
};

inline AxisMap fit_axis(const std::vector<double>& values, const Axis& axis, bool log_flag, const char* name,
                        std::vector<std::string>* warnings) {
  AxisMap m;
  m.transform = log_flag && axis.scale != Scale::log10_values;
  m.log_ticks = m.transform || axis.scale == Scale::log10_values;
  std::vector<double> c;
  for (double v : values) {
    if (m.transform && !(v > 0))
      throw std::domain_error(std::string("non-positive value on log ") + name + " axis");
    c.push_back(m.coord(v));
  }
  if (c.empty()) {
    m.lo = 0;
    m.hi = 1;
    return m;
  }
  auto [mn, mx] = std::minmax_element(c.begin(), c.end());
  double lo = *mn, hi = *mx;
  if (hi - lo == 0) {
    double pad = m.log_ticks ? 0.5 : (lo == 0 ? 1.0 : std::abs(lo) * 0.05);
    if (warnings)
      warnings->push_back(std::string("DegenerateAxis: every point shares one ") + name + " value; padded by " +
                          (m.log_ticks ? std::string("half a decade") : kinex::detail::shortest(pad)));
    lo -= pad;
    hi += pad;
  } else {
    double pad = (hi - lo) * 0.05;
    lo -= pad;
    hi += pad;
  }
  m.lo = lo;
  m.hi = hi;
  return m;
}

inline std::vector<double> ticks_for(const AxisMap& m) {
  std::vector<double> out;
  double span = m.hi - m.lo;
  if (m.log_ticks) {
    double first = std::ceil(m.lo), last = std::floor(m.hi);
    double count = last - first + 1;
    double stride = count > 10 ? std::ceil(count / 10) : 1;
    for (double k = first; k <= last + 1e-9; k += stride) out.push_back(k);
    return out;
  }
  double raw = span / 6;
  double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double f : {1.0, 2.0, 5.0, 10.0}) {
    step = f * mag;
    if (raw <= step) break;
  }
  for (double t = std::ceil(m.lo / step) * step; t <= m.hi + step * 1e-9; t += step)
    out.push_back(std::abs(t) < step * 1e-9 ? 0.0 : t);
  return out;
}

inline std::string tick_label(const AxisMap& m, double t) {
  if (m.log_ticks) {
    return "10<tspan dy=\"-6\" font-size=\"9\">" + kinex::detail::shortest(t) + "</tspan>";
  }
  return kinex::detail::shortest(std::round(t * 1e9) / 1e9);
}

inline const char* series_color(std::size_t i) {
  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2"};
  return palette[i % (sizeof palette / sizeof palette[0])];
}

}  // namespace detail

/// Self-contained SVG 1.1 scatter plot: axes with ticks, one <circle> per
/// point, optional point labels and a legend per series. Output depends only
/// on the arguments.
inline std::string emit_svg_scatter(std::span<const TrendPoint> points, const AxisSpec& axis,
                                    const SvgOptions& options, std::vector<std::string>* warnings = nullptr) {
  using kinex::detail::fixed;
  if (options.width <= 0 || options.height <= 0) throw std::invalid_argument("SVG width and height must be > 0");
  std::vector<TrendPoint> pts(points.begin(), points.end());
  sort_points(pts);

  const double left = 80, right = 170, top = 40, bottom = 60;
  double plot_w = std::max(10.0, options.width - left - right);
  double plot_h = std::max(10.0, options.height - top - bottom);
  if (options.square_plot) plot_w = plot_h = std::min(plot_w, plot_h);

  std::vector<double> xs, ys;
  for (const auto& p : pts) {
    xs.push_back(p.x);
    ys.push_back(p.y);
  }
  auto xm = detail::fit_axis(xs, axis.x, options.log_x, "x", warnings);
  auto ym = detail::fit_axis(ys, axis.y, options.log_y, "y", warnings);
  auto px = [&](double v) { return left + (xm.coord(v) - xm.lo) / (xm.hi - xm.lo) * plot_w; };
  auto py = [&](double v) { return top + plot_h - (ym.coord(v) - ym.lo) / (ym.hi - ym.lo) * plot_h; };

  std::vector<std::string> series;
  for (const auto& p : pts)
    if (std::find(series.begin(), series.end(), p.series) == series.end()) series.push_back(p.series);
  std::sort(series.begin(), series.end());
  auto color_of = [&](const std::string& s) {
    return detail::series_color(static_cast<std::size_t>(std::find(series.begin(), series.end(), s) - series.begin()));
  };

  const std::string W = std::to_string(options.width), H = std::to_string(options.height);
  std::string o;
  o += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  o += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + W + "\" height=\"" + H +
       "\" viewBox=\"0 0 " + W + " " + H + "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  o += "<rect x=\"0\" y=\"0\" width=\"" + W + "\" height=\"" + H + "\" fill=\"white\"/>\n";
  if (!options.title.empty())
    o += "<text x=\"" + fixed(left, 2) + "\" y=\"20\" font-size=\"14\">" + detail::xml_escape(options.title) + "</text>\n";

  o += "<g class=\"axes\" stroke=\"black\" fill=\"none\">\n";
  o += "<rect class=\"plot-area\" x=\"" + fixed(left, 2) + "\" y=\"" + fixed(top, 2) + "\" width=\"" +
       fixed(plot_w, 2) + "\" height=\"" + fixed(plot_h, 2) + "\"/>\n";
  o += "</g>\n<g class=\"ticks\">\n";
  for (double t : detail::ticks_for(xm)) {
    double x = left + (t - xm.lo) / (xm.hi - xm.lo) * plot_w;
    o += "<line x1=\"" + fixed(x, 2) + "\" y1=\"" + fixed(top + plot_h, 2) + "\" x2=\"" + fixed(x, 2) + "\" y2=\"" +
         fixed(top + plot_h + 5, 2) + "\" stroke=\"black\"/>\n";
    o += "<text class=\"tick-label\" x=\"" + fixed(x, 2) + "\" y=\"" + fixed(top + plot_h + 18, 2) +
         "\" text-anchor=\"middle\">" + detail::tick_label(xm, t) + "</text>\n";
  }
  for (double t : detail::ticks_for(ym)) {
    double y = top + plot_h - (t - ym.lo) / (ym.hi - ym.lo) * plot_h;
    o += "<line x1=\"" + fixed(left - 5, 2) + "\" y1=\"" + fixed(y, 2) + "\" x2=\"" + fixed(left, 2) + "\" y2=\"" +
         fixed(y, 2) + "\" stroke=\"black\"/>\n";
    o += "<text class=\"tick-label\" x=\"" + fixed(left - 8, 2) + "\" y=\"" + fixed(y + 4, 2) +
         "\" text-anchor=\"end\">" + detail::tick_label(ym, t) + "</text>\n";
  }
  o += "</g>\n";
  o += "<text class=\"axis-label\" x=\"" + fixed(left + plot_w / 2, 2) + "\" y=\"" + fixed(top + plot_h + 45, 2) +
       "\" text-anchor=\"middle\">" + detail::xml_escape(axis.x.label) + "</text>\n";
  o += "<text class=\"axis-label\" transform=\"translate(18," + fixed(top + plot_h / 2, 2) +
       ") rotate(-90)\" text-anchor=\"middle\">" + detail::xml_escape(axis.y.label) + "</text>\n";

  o += "<g class=\"points\">\n";
  for (const auto& p : pts) {
    o += "<circle class=\"point\" cx=\"" + fixed(px(p.x), 2) + "\" cy=\"" + fixed(py(p.y), 2) + "\" r=\"4\" fill=\"" +
         color_of(p.series) + "\"><title>" + detail::xml_escape(p.label) + "</title></circle>\n";
  }
  o += "</g>\n<g class=\"labels\">\n";
  std::vector<std::pair<double, double>> labelled;
  for (const auto& p : pts) {
    if (options.labels == LabelDensity::none) break;
    double x = px(p.x), y = py(p.y);
    if (options.labels == LabelDensity::avoid_overlap) {
      bool crowded = std::any_of(labelled.begin(), labelled.end(), [&](const auto& q) {
        return std::hypot(q.first - x, q.second - y) < kLabelCollisionPx;
      });
      if (crowded) continue;
    }
    labelled.emplace_back(x, y);
    o += "<text class=\"point-label\" x=\"" + fixed(x + 6, 2) + "\" y=\"" + fixed(y - 6, 2) + "\">" +
         detail::xml_escape(p.label) + "</text>\n";
  }
  o += "</g>\n<g class=\"legend\">\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    double lx = left + plot_w + 20, ly = top + 10 + 18.0 * static_cast<double>(i);
    o += "<rect class=\"legend-swatch\" x=\"" + fixed(lx, 2) + "\" y=\"" + fixed(ly - 8, 2) +
         "\" width=\"10\" height=\"10\" fill=\"" + detail::series_color(i) + "\"/>\n";
    o += "<text class=\"legend-label\" x=\"" + fixed(lx + 16, 2) + "\" y=\"" + fixed(ly + 1, 2) + "\">" +
         detail::xml_escape(series[i]) + "</text>\n";
  }
  o += "</g>\n</svg>\n";
  return o;
}

struct FigureBundle {
  FigureId figure_id;
  std::vector<TrendPoint> points;
  std::string csv;
  std::string svg;
  AxisSpec axis_spec;
  /// Skipped platforms and axis padding notices.
  std::vector<std::string> diagnostics;
};

inline FigureBundle make_figure(std::span<const Platform> dataset, FigureId id,
                                std::optional<SvgOptions> options = std::nullopt) {
  FigureBundle b{id, {}, {}, {}, axis_spec_for(id), {}};
  b.points = trend_table(dataset, id, &b.diagnostics);
  b.csv = emit_csv(b.points, b.axis_spec);
  b.svg = emit_svg_scatter(b.points, b.axis_spec, options.value_or(default_svg_options(id)), &b.diagnostics);
  return b;
}

}  // namespace kinex::report
