#include "roughsim/svgplot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace rough::svg {

namespace {

constexpr int kMarginLeft = 64;
constexpr int kMarginRight = 24;
constexpr int kMarginTop = 36;
constexpr int kMarginBottom = 48;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

struct Axis {
  double lo, hi;
  double pix0, pix1;  // pixel range (pix0 maps lo)
  bool log = false;

  double map(double v) const {
    const double a = log ? std::log10(v) : v;
    const double l = log ? std::log10(lo) : lo;
    const double h = log ? std::log10(hi) : hi;
    const double f = h == l ? 0.5 : (a - l) / (h - l);
    return pix0 + f * (pix1 - pix0);
  }

  // "Nice" tick positions covering [lo, hi].
  std::vector<double> ticks() const {
    std::vector<double> out;
    if (log) {
      const int e0 = int(std::floor(std::log10(lo)));
      const int e1 = int(std::ceil(std::log10(hi)));
      for (int e = e0; e <= e1; ++e) {
        const double v = std::pow(10.0, e);
        if (v >= lo * 0.999 && v <= hi * 1.001) out.push_back(v);
      }
      return out;
    }
    const double span = hi - lo;
    if (span <= 0) return {lo};
    const double raw = span / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 2.5, 5.0, 10.0}) {
      if (mag * m >= raw) {
        step = mag * m;
        break;
      }
    }
    for (double v = std::ceil(lo / step) * step; v <= hi + step * 1e-9;
         v += step)
      out.push_back(std::abs(v) < step * 1e-9 ? 0.0 : v);
    return out;
  }
};

void pad_range(double& lo, double& hi, bool log) {
  if (log) {
    if (!(lo > 0)) lo = 1e-12;
    if (hi <= lo) hi = lo * 10;
    lo /= 1.2;
    hi *= 1.2;
    return;
  }
  if (hi <= lo) {
    lo -= 0.5;
    hi += 0.5;
  }
  const double pad = 0.05 * (hi - lo);
  lo -= pad;
  hi += pad;
}

std::string header(int w, int h) {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(w) + "\" height=\"" + std::to_string(h) +
         "\" font-family=\"sans-serif\" font-size=\"12\">\n"
         "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

std::string text(double x, double y, const std::string& s,
                 const std::string& anchor = "middle",
                 const std::string& extra = "") {
  return "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" text-anchor=\"" +
         anchor + "\" " + extra + ">" + s + "</text>\n";
}

std::string frame_and_axes(const Axis& ax, const Axis& ay,
                           const PlotOptions& opt) {
  std::string out;
  out += "<rect x=\"" + num(ax.pix0) + "\" y=\"" + num(ay.pix1) + "\" width=\"" +
         num(ax.pix1 - ax.pix0) + "\" height=\"" + num(ay.pix0 - ay.pix1) +
         "\" fill=\"none\" stroke=\"black\"/>\n";
  for (double v : ax.ticks()) {
    const double px = ax.map(v);
    out += "<line x1=\"" + num(px) + "\" y1=\"" + num(ay.pix0) + "\" x2=\"" +
           num(px) + "\" y2=\"" + num(ay.pix0 + 5) + "\" stroke=\"black\"/>\n";
    out += text(px, ay.pix0 + 18, num(v));
  }
  for (double v : ay.ticks()) {
    const double py = ay.map(v);
    out += "<line x1=\"" + num(ax.pix0 - 5) + "\" y1=\"" + num(py) + "\" x2=\"" +
           num(ax.pix0) + "\" y2=\"" + num(py) + "\" stroke=\"black\"/>\n";
    out += text(ax.pix0 - 8, py + 4, num(v), "end");
  }
  const double cx = 0.5 * (ax.pix0 + ax.pix1);
  out += text(cx, ay.pix0 + 36, opt.xlabel);
  const double cy = 0.5 * (ay.pix0 + ay.pix1);
  out += text(16, cy, opt.ylabel, "middle",
              "transform=\"rotate(-90 16 " + num(cy) + ")\"");
  out += text(cx, 20, opt.title, "middle", "font-size=\"14\"");
  return out;
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write plot: " + path);
  out << body;
}

}  // namespace

void write_line_plot(const std::string& path, const std::vector<Series>& series,
                     const PlotOptions& opt) {
  if (series.empty()) throw std::invalid_argument("line plot: no series");
  double xlo = std::numeric_limits<double>::infinity(), xhi = -xlo;
  double ylo = xlo, yhi = -xlo;
  for (const auto& s : series) {
    if (s.x.size() != s.y.size() || s.x.empty() ||
        (!s.yerr.empty() && s.yerr.size() != s.y.size()))
      throw std::invalid_argument("line plot: ragged series '" + s.label + "'");
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      const double e = s.yerr.empty() ? 0.0 : s.yerr[i];
      if (opt.log_y && s.y[i] - e <= 0) continue;
      xlo = std::min(xlo, s.x[i]);
      xhi = std::max(xhi, s.x[i]);
      ylo = std::min(ylo, s.y[i] - e);
      yhi = std::max(yhi, s.y[i] + e);
    }
  }
  if (!std::isfinite(xlo))
    throw std::invalid_argument("line plot: no plottable points");
  pad_range(xlo, xhi, false);
  pad_range(ylo, yhi, opt.log_y);

  Axis ax{xlo, xhi, double(kMarginLeft), double(opt.width - kMarginRight)};
  Axis ay{ylo, yhi, double(opt.height - kMarginBottom), double(kMarginTop)};
  ay.log = opt.log_y;

  std::string out = header(opt.width, opt.height);
  out += frame_and_axes(ax, ay, opt);

  for (std::size_t si = 0; si < series.size(); ++si) {
    const auto& s = series[si];
    const char* color = kPalette[si % (sizeof kPalette / sizeof *kPalette)];
    std::string pts;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (opt.log_y && s.y[i] <= 0) continue;
      pts += num(ax.map(s.x[i])) + "," + num(ay.map(s.y[i])) + " ";
      if (!s.yerr.empty() && s.yerr[i] > 0) {
        const double lo = s.y[i] - s.yerr[i];
        if (!opt.log_y || lo > 0)
          out += "<line x1=\"" + num(ax.map(s.x[i])) + "\" y1=\"" +
                 num(ay.map(lo)) + "\" x2=\"" + num(ax.map(s.x[i])) +
                 "\" y2=\"" + num(ay.map(s.y[i] + s.yerr[i])) + "\" stroke=\"" +
                 color + "\"/>\n";
      }
      out += "<circle cx=\"" + num(ax.map(s.x[i])) + "\" cy=\"" +
             num(ay.map(s.y[i])) + "\" r=\"2.5\" fill=\"" + color + "\"/>\n";
    }
    out += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" + color +
           "\"/>\n";
    out += text(opt.width - kMarginRight - 8, kMarginTop + 16 + 16 * double(si),
                s.label, "end", std::string("fill=\"") + color + "\"");
  }
  out += "</svg>\n";
  write_file(path, out);
}

void write_heatmap(const std::string& path, const std::vector<double>& xs,
                   const std::vector<double>& ys,
                   const std::vector<std::vector<double>>& values,
                   const PlotOptions& opt) {
  if (xs.empty() || ys.empty() || values.size() != ys.size())
    throw std::invalid_argument("heatmap: shape mismatch");
  for (const auto& row : values)
    if (row.size() != xs.size())
      throw std::invalid_argument("heatmap: ragged rows");

  double vlo = std::numeric_limits<double>::infinity(), vhi = -vlo;
  for (const auto& row : values)
    for (double v : row)
      if (std::isfinite(v)) {
        vlo = std::min(vlo, v);
        vhi = std::max(vhi, v);
      }
  if (!std::isfinite(vlo)) throw std::invalid_argument("heatmap: no finite cells");
  if (vhi <= vlo) vhi = vlo + 1;

  Axis ax{xs.front(), xs.back(), double(kMarginLeft),
          double(opt.width - kMarginRight - 56)};
  Axis ay{ys.front(), ys.back(), double(opt.height - kMarginBottom),
          double(kMarginTop)};
  if (ax.hi <= ax.lo) ax.hi = ax.lo + 1;
  if (ay.hi <= ay.lo) ay.hi = ay.lo + 1;

  auto color = [&](double v) {
    // dark blue (low) to yellow (high)
    const double f = std::clamp((v - vlo) / (vhi - vlo), 0.0, 1.0);
    const int r = int(20 + 235 * f);
    const int g = int(30 + 200 * f);
    const int b = int(120 * (1 - f) + 40);
    char buf[16];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
    return std::string(buf);
  };

  std::string out = header(opt.width, opt.height);
  const double cw = (ax.pix1 - ax.pix0) / double(xs.size());
  const double ch = (ay.pix0 - ay.pix1) / double(ys.size());
  for (std::size_t i = 0; i < ys.size(); ++i) {
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (!std::isfinite(values[i][j])) continue;
      out += "<rect x=\"" + num(ax.pix0 + cw * double(j)) + "\" y=\"" +
             num(ay.pix0 - ch * double(i + 1)) + "\" width=\"" + num(cw + 0.5) +
             "\" height=\"" + num(ch + 0.5) + "\" fill=\"" +
             color(values[i][j]) + "\"/>\n";
    }
  }
  out += frame_and_axes(ax, ay, opt);

  // Color scale on the right.
  const double bx = double(opt.width - kMarginRight - 40);
  const int steps = 32;
  const double bh = (ay.pix0 - ay.pix1) / steps;
  for (int k = 0; k < steps; ++k) {
    const double v = vlo + (vhi - vlo) * (k + 0.5) / steps;
    out += "<rect x=\"" + num(bx) + "\" y=\"" + num(ay.pix0 - bh * (k + 1)) +
           "\" width=\"14\" height=\"" + num(bh + 0.5) + "\" fill=\"" +
           color(v) + "\"/>\n";
  }
  out += text(bx + 18, ay.pix1 + 10, num(vhi), "start");
  out += text(bx + 18, ay.pix0, num(vlo), "start");
  out += "</svg>\n";
  write_file(path, out);
}

}  // namespace rough::svg
