#include "repgeom/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numbers>
#include <set>
#include <stdexcept>

#include "repgeom/error.hpp"
#include "repgeom/serialize.hpp"

namespace repgeom {

namespace fs = std::filesystem;

namespace {

constexpr double kPaperEddLow = 0.847;
constexpr double kPaperEddHigh = 1.0;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  if (std::string(buf) == "-0.00") return "0.00";
  return buf;
}

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

class Svg {
 public:
  Svg(double width, double height) {
    body_ += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) + "\" height=\"" +
             num(height) + "\" viewBox=\"0 0 " + num(width) + " " + num(height) + "\">\n";
    body_ += "<rect x=\"0\" y=\"0\" width=\"" + num(width) + "\" height=\"" + num(height) +
             "\" fill=\"white\"/>\n";
  }
  void raw(const std::string& s) { body_ += s; }
  void line(double x1, double y1, double x2, double y2, const std::string& stroke,
            double width = 1.0, const std::string& dash = {}) {
    body_ += "<line x1=\"" + num(x1) + "\" y1=\"" + num(y1) + "\" x2=\"" + num(x2) + "\" y2=\"" +
             num(y2) + "\" stroke=\"" + stroke + "\" stroke-width=\"" + num(width) + "\"" +
             (dash.empty() ? "" : " stroke-dasharray=\"" + dash + "\"") + "/>\n";
  }
  void rect(double x, double y, double w, double h, const std::string& fill,
            const std::string& extra = {}) {
    body_ += "<rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(w) + "\" height=\"" +
             num(h) + "\" fill=\"" + fill + "\"" + extra + "/>\n";
  }
  void circle(double cx, double cy, double r, const std::string& fill,
              const std::string& extra = {}) {
    body_ += "<circle cx=\"" + num(cx) + "\" cy=\"" + num(cy) + "\" r=\"" + num(r) + "\" fill=\"" +
             fill + "\"" + extra + "/>\n";
  }
  void text(double x, double y, std::string_view s, double size = 11.0,
            const std::string& anchor = "start") {
    body_ += "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" font-family=\"sans-serif\" font-size=\"" +
             num(size) + "\" text-anchor=\"" + anchor + "\">" + xml_escape(s) + "</text>\n";
  }
  void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& stroke,
                double width = 1.5) {
    std::string p;
    for (const auto& [x, y] : pts) p += (p.empty() ? "" : " ") + num(x) + "," + num(y);
    body_ += "<polyline points=\"" + p + "\" fill=\"none\" stroke=\"" + stroke +
             "\" stroke-width=\"" + num(width) + "\"/>\n";
  }
  std::string finish() { return body_ + "</svg>\n"; }

 private:
  std::string body_;
};

// Linear map from a data interval onto a pixel interval.
struct Axis {
  double lo, hi, px_lo, px_hi;
  double operator()(double v) const {
    return hi == lo ? 0.5 * (px_lo + px_hi) : px_lo + (v - lo) / (hi - lo) * (px_hi - px_lo);
  }
};

struct CurvePlot {
  double width = 560, height = 360;
  double left = 60, right = 20, top = 36, bottom = 48;
};

void draw_frame(Svg& svg, const CurvePlot& p, const Axis& x, const Axis& y, int blocks,
                const std::string& title, const std::string& ylabel) {
  svg.text(p.width / 2, 20, title, 13, "middle");
  svg.line(p.left, p.height - p.bottom, p.width - p.right, p.height - p.bottom, "black");
  svg.line(p.left, p.top, p.left, p.height - p.bottom, "black");
  for (int b = 1; b <= blocks; ++b) {
    svg.line(x(b), p.height - p.bottom, x(b), p.height - p.bottom + 4, "black");
    svg.text(x(b), p.height - p.bottom + 16, std::to_string(b), 10, "middle");
  }
  for (int t = 0; t <= 4; ++t) {
    const double v = y.lo + (y.hi - y.lo) * t / 4.0;
    svg.line(p.left - 4, y(v), p.left, y(v), "black");
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    svg.text(p.left - 6, y(v) + 3, buf, 10, "end");
  }
  svg.text(p.width / 2, p.height - 10, "transformer block", 11, "middle");
  svg.raw("<text x=\"14\" y=\"" + num(p.height / 2) +
          "\" font-family=\"sans-serif\" font-size=\"11.00\" text-anchor=\"middle\" "
          "transform=\"rotate(-90 14 " + num(p.height / 2) + ")\">" + xml_escape(ylabel) +
          "</text>\n");
}

std::pair<double, double> padded_range(double lo, double hi) {
  if (hi - lo < 1e-12) {
    const double pad = std::max(1e-3, std::abs(lo) * 0.05);
    return {lo - pad, hi + pad};
  }
  const double pad = 0.05 * (hi - lo);
  return {lo - pad, hi + pad};
}

std::string label_name(const CorpusManifest& m, LabelKey key, int id) {
  if (key == LabelKey::narrative) {
    for (const auto& n : m.narratives) if (n.id == id) return n.title;
  } else {
    for (const auto& s : m.styles) if (s.id == id) return s.name;
  }
  return {};
}

// Square data window around all points with a uniform scale on both axes.
struct PanelMap {
  double cx, cy, half, px, py, size;
  double x(double v) const { return px + size / 2 + (v - cx) / half * (size / 2); }
  double y(double v) const { return py + size / 2 - (v - cy) / half * (size / 2); }
  double scale(double len) const { return len / half * (size / 2); }
};

PanelMap make_panel(double xmin, double xmax, double ymin, double ymax, double px, double py,
                    double size) {
  double half = 0.5 * std::max(xmax - xmin, ymax - ymin) * 1.1;
  if (!(half > 0.0)) half = 1.0;
  return {0.5 * (xmin + xmax), 0.5 * (ymin + ymax), half, px, py, size};
}

void draw_legend(Svg& svg, const CorpusManifest& manifest, LabelKey key,
                 const std::set<int>& ids, double x, double y) {
  double row = 0;
  for (int id : ids) {
    svg.circle(x + 5, y + row * 16 - 4, 5, palette_color(id));
    svg.text(x + 16, y + row * 16, std::to_string(id) + "  " + label_name(manifest, key, id), 10);
    ++row;
  }
}

}  // namespace

std::string palette_color(int label_id) {
  static const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                   "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
                                   "#393b79", "#637939", "#8c6d31", "#843c39", "#7b4173"};
  constexpr int n = static_cast<int>(std::size(kPalette));
  const int idx = ((label_id - 1) % n + n) % n;
  return kPalette[idx];
}

std::string edd_curve_svg(const AnalysisReport& report) {
  CurvePlot p;
  const int blocks = static_cast<int>(report.per_layer.size());
  double lo = kPaperEddLow, hi = kPaperEddHigh;
  for (const auto& m : report.per_layer) {
    lo = std::min(lo, m.edd.value);
    hi = std::max(hi, m.edd.value);
  }
  const auto [ylo, yhi] = padded_range(lo, hi);
  const Axis x{0.5, blocks + 0.5, p.left, p.width - p.right};
  const Axis y{ylo, yhi, p.height - p.bottom, p.top};

  Svg svg(p.width, p.height);
  svg.rect(p.left, y(kPaperEddHigh), p.width - p.right - p.left, y(kPaperEddLow) - y(kPaperEddHigh),
           "#d9d9d9", " fill-opacity=\"0.6\"");
  svg.text(p.width - p.right - 4, y(kPaperEddHigh) + 12,
           "paper-reported range [0.847, 1.0]", 10, "end");
  draw_frame(svg, p, x, y, blocks, "EDD per transformer block", "EDD");
  std::vector<std::pair<double, double>> pts;
  for (const auto& m : report.per_layer) pts.emplace_back(x(m.block), y(m.edd.value));
  svg.polyline(pts, "#1f77b4");
  for (const auto& [px, py] : pts) svg.circle(px, py, 3, "#1f77b4");
  return svg.finish();
}

std::string gdv_curves_svg(const AnalysisReport& report) {
  CurvePlot p;
  const int blocks = static_cast<int>(report.per_layer.size());
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& m : report.per_layer) {
    for (double v : {m.gdv_narrative.value, m.gdv_style.value}) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  if (blocks == 0) lo = hi = 0.0;
  const auto [ylo, yhi] = padded_range(lo, hi);
  const Axis x{0.5, blocks + 0.5, p.left, p.width - p.right};
  const Axis y{ylo, yhi, p.height - p.bottom, p.top};

  Svg svg(p.width, p.height);
  draw_frame(svg, p, x, y, blocks, "GDV per transformer block", "GDV");
  const auto draw = [&](const char* name, const char* color, int argmin, bool narrative,
                        double legend_y) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& m : report.per_layer) {
      pts.emplace_back(x(m.block), y(narrative ? m.gdv_narrative.value : m.gdv_style.value));
    }
    svg.polyline(pts, color);
    for (const auto& [px, py] : pts) svg.circle(px, py, 3, color);
    if (argmin >= 1 && argmin <= blocks) {
      const auto& [ax, ay] = pts[static_cast<std::size_t>(argmin - 1)];
      svg.circle(ax, ay, 6, "none", std::string(" stroke=\"") + color + "\" stroke-width=\"1.50\"");
    }
    svg.line(p.width - p.right - 150, legend_y, p.width - p.right - 130, legend_y, color, 2);
    svg.text(p.width - p.right - 124, legend_y + 4,
             std::string(name) + " (min: block " + std::to_string(argmin) + ")", 10);
  };
  draw("narrative", "#d62728", report.argmin_gdv_narrative, true, p.top + 8);
  draw("style", "#1f77b4", report.argmin_gdv_style, false, p.top + 24);
  return svg.finish();
}

std::string scatter_svg(const std::vector<Embedding2D>& embeddings, const CorpusManifest& manifest,
                        LabelKey key) {
  const std::vector<int> labels = label_vector(manifest, key);
  const std::size_t layers = embeddings.size();
  const std::size_t cols = std::min<std::size_t>(4, std::max<std::size_t>(layers, 1));
  const std::size_t rows = (layers + cols - 1) / cols;
  const double panel = 200, gap = 16, margin = 20, legend_w = 240;
  const double width = margin * 2 + cols * panel + (cols - 1) * gap + legend_w;
  const double height = margin * 2 + 24 + rows * (panel + 18) + (rows ? rows - 1 : 0) * gap;

  Svg svg(width, height);
  svg.text(margin, margin + 4,
           "2D projections of CLS vectors per block, colored by " + std::string(to_string(key)),
           13);
  for (std::size_t l = 0; l < layers; ++l) {
    const Matrix& c = embeddings[l].coords;
    if (c.rows() != labels.size()) throw std::invalid_argument("scatter: sample count mismatch");
    const double px = margin + (l % cols) * (panel + gap);
    const double py = margin + 24 + (l / cols) * (panel + 18 + gap) + 18;
    double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
    for (std::size_t i = 0; i < c.rows(); ++i) {
      xmin = i ? std::min(xmin, c(i, 0)) : c(i, 0);
      xmax = i ? std::max(xmax, c(i, 0)) : c(i, 0);
      ymin = i ? std::min(ymin, c(i, 1)) : c(i, 1);
      ymax = i ? std::max(ymax, c(i, 1)) : c(i, 1);
    }
    const PanelMap map = make_panel(xmin, xmax, ymin, ymax, px, py, panel);
    svg.raw("<g class=\"panel\" id=\"block" + std::to_string(l + 1) + "\">\n");
    svg.rect(px, py, panel, panel, "none", " stroke=\"#999999\"");
    svg.text(px + panel / 2, py - 5, "block " + std::to_string(l + 1), 11, "middle");
    for (std::size_t i = 0; i < c.rows(); ++i) {
      svg.circle(map.x(c(i, 0)), map.y(c(i, 1)), 3.5, palette_color(labels[i]),
                 " fill-opacity=\"0.85\"");
    }
    svg.raw("</g>\n");
  }
  draw_legend(svg, manifest, key, std::set<int>(labels.begin(), labels.end()),
              margin + cols * panel + (cols - 1) * gap + 20, margin + 60);
  return svg.finish();
}

std::string ellipses_svg(const Embedding2D& embedding, const CorpusManifest& manifest,
                         LabelKey key, int block) {
  const std::vector<int> labels = label_vector(manifest, key);
  const Matrix& c = embedding.coords;
  if (c.rows() != labels.size()) throw std::invalid_argument("ellipses: sample count mismatch");
  const auto ellipses = class_ellipses(c, labels);

  double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  bool first = true;
  const auto grow = [&](double x, double y) {
    xmin = first ? x : std::min(xmin, x);
    xmax = first ? x : std::max(xmax, x);
    ymin = first ? y : std::min(ymin, y);
    ymax = first ? y : std::max(ymax, y);
    first = false;
  };
  for (std::size_t i = 0; i < c.rows(); ++i) grow(c(i, 0), c(i, 1));
  for (const auto& e : ellipses) {
    const double r = e.radii[0];
    grow(e.center[0] - r, e.center[1] - r);
    grow(e.center[0] + r, e.center[1] + r);
  }

  const double panel = 360, margin = 20, legend_w = 240;
  Svg svg(margin * 2 + panel + legend_w, margin * 2 + panel + 24);
  svg.text(margin, margin + 4,
           "Class centers and principal-axis std, block " + std::to_string(block) + " (" +
               std::string(to_string(key)) + ")",
           13);
  const PanelMap map = make_panel(xmin, xmax, ymin, ymax, margin, margin + 24, panel);
  svg.rect(margin, margin + 24, panel, panel, "none", " stroke=\"#999999\"");
  for (std::size_t i = 0; i < c.rows(); ++i) {
    svg.circle(map.x(c(i, 0)), map.y(c(i, 1)), 2.5, palette_color(labels[i]),
               " fill-opacity=\"0.35\"");
  }
  std::set<int> ids;
  for (const auto& e : ellipses) {
    ids.insert(e.class_id);
    // Screen y points down, so the rotation angle flips sign.
    const double deg = -std::atan2(e.axes(1, 0), e.axes(0, 0)) * 180.0 / std::numbers::pi;
    const std::string color = palette_color(e.class_id);
    svg.raw("<ellipse class=\"class-ellipse\" data-class=\"" + std::to_string(e.class_id) +
            "\" cx=\"0\" cy=\"0\" rx=\"" + num(map.scale(e.radii[0])) + "\" ry=\"" +
            num(map.scale(e.radii[1])) + "\" transform=\"translate(" + num(map.x(e.center[0])) +
            " " + num(map.y(e.center[1])) + ") rotate(" + num(deg) + ")\" fill=\"" + color +
            "\" fill-opacity=\"0.25\" stroke=\"" + color + "\" stroke-width=\"1.50\"/>\n");
    svg.circle(map.x(e.center[0]), map.y(e.center[1]), 4, color, " stroke=\"black\"");
  }
  draw_legend(svg, manifest, key, ids, margin + panel + 20, margin + 60);
  return svg.finish();
}

std::vector<fs::path> render(const AnalysisReport& report,
                             const std::vector<Embedding2D>& embeddings,
                             const CorpusManifest& manifest, const fs::path& out_dir,
                             const RenderOptions& options) {
  const std::size_t layers = report.per_layer.size();
  if (embeddings.size() != layers) {
    throw std::invalid_argument("render: report has " + std::to_string(layers) +
                                " layers but there are " + std::to_string(embeddings.size()) +
                                " embeddings");
  }
  for (const auto& e : embeddings) {
    if (e.coords.rows() != manifest.samples.size()) {
      throw std::invalid_argument("render: embedding sample count does not match manifest");
    }
  }
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());

  std::vector<fs::path> written;
  const auto emit = [&](const std::string& name, const std::string& content) {
    write_text_file(out_dir / name, content);
    written.push_back(out_dir / name);
  };

  emit("metrics.csv", metrics_csv(report));
  emit("report.json", report_to_json(report).dump(2) + "\n");
  emit("edd_curve.svg", edd_curve_svg(report));
  emit("gdv_curves.svg", gdv_curves_svg(report));

  std::vector<int> blocks = options.ellipse_blocks;
  if (blocks.empty()) blocks = {1, 4, static_cast<int>(layers)};
  std::set<int> chosen;
  for (int b : blocks) {
    if (b >= 1 && b <= static_cast<int>(layers)) chosen.insert(b);
  }

  for (LabelKey key : options.label_keys) {
    const std::string k(to_string(key));
    emit("scatter_by_" + k + ".svg", scatter_svg(embeddings, manifest, key));
    for (int b : chosen) {
      emit("ellipses_by_" + k + "_block" + std::to_string(b) + ".svg",
           ellipses_svg(embeddings[static_cast<std::size_t>(b - 1)], manifest, key, b));
    }
  }
  return written;
}

}  // namespace repgeom
