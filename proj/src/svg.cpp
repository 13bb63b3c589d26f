#include "blockland/svg.hpp"

#include <cmath>

#include "blockland/io.hpp"

namespace blockland {

namespace {

// Fixed-precision pixel coordinates keep documents byte-stable.
std::string px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return std::string(buf);
}

std::string escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (const char c : s) {
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

}  // namespace

SvgDoc::SvgDoc(double width, double height) : width_(width), height_(height) {}

void SvgDoc::line(double x1, double y1, double x2, double y2, const std::string& stroke, double stroke_width) {
  body_ += "<line x1=\"" + px(x1) + "\" y1=\"" + px(y1) + "\" x2=\"" + px(x2) + "\" y2=\"" + px(y2) + "\" stroke=\"" +
           stroke + "\" stroke-width=\"" + px(stroke_width) + "\"/>\n";
}

void SvgDoc::rect(double x, double y, double w, double h, const std::string& fill, const std::string& stroke) {
  body_ += "<rect x=\"" + px(x) + "\" y=\"" + px(y) + "\" width=\"" + px(w) + "\" height=\"" + px(h) + "\" fill=\"" +
           fill + "\" stroke=\"" + stroke + "\"/>\n";
}

void SvgDoc::circle(double cx, double cy, double r, const std::string& fill) {
  body_ += "<circle cx=\"" + px(cx) + "\" cy=\"" + px(cy) + "\" r=\"" + px(r) + "\" fill=\"" + fill + "\"/>\n";
}

void SvgDoc::polyline(const std::vector<std::pair<double, double>>& pts, const std::string& stroke,
                      double stroke_width) {
  body_ += "<polyline fill=\"none\" stroke=\"" + stroke + "\" stroke-width=\"" + px(stroke_width) + "\" points=\"";
  for (size_t i = 0; i < pts.size(); ++i) {
    if (i) body_ += ' ';
    body_ += px(pts[i].first) + "," + px(pts[i].second);
  }
  body_ += "\"/>\n";
}

void SvgDoc::polygon(const std::vector<std::pair<double, double>>& pts, const std::string& fill,
                     const std::string& stroke) {
  body_ += "<polygon fill=\"" + fill + "\" stroke=\"" + stroke + "\" points=\"";
  for (size_t i = 0; i < pts.size(); ++i) {
    if (i) body_ += ' ';
    body_ += px(pts[i].first) + "," + px(pts[i].second);
  }
  body_ += "\"/>\n";
}

void SvgDoc::text(double x, double y, const std::string& content, double size, const std::string& anchor,
                  const std::string& fill) {
  body_ += "<text x=\"" + px(x) + "\" y=\"" + px(y) + "\" font-size=\"" + px(size) + "\" font-family=\"" +
           std::string(svg_style::kFontFamily) + "\" text-anchor=\"" + anchor + "\" fill=\"" + fill + "\">" +
           escape(content) + "</text>\n";
}

std::string SvgDoc::str() const {
  return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         px(width_) + "\" height=\"" + px(height_) + "\" viewBox=\"0 0 " + px(width_) + " " + px(height_) + "\">\n" +
         "<rect x=\"0\" y=\"0\" width=\"" + px(width_) + "\" height=\"" + px(height_) + "\" fill=\"#ffffff\"/>\n" +
         body_ + "</svg>\n";
}

std::vector<double> axis_ticks(double lo, double hi, int target_count) {
  if (!(hi > lo)) return {lo};
  const double raw = (hi - lo) / static_cast<double>(target_count);
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (const double m : {1.0, 2.0, 2.5, 5.0, 10.0}) {
    if (mag * m >= raw) {
      step = mag * m;
      break;
    }
  }
  std::vector<double> ticks;
  double t = std::ceil(lo / step) * step;
  for (; t <= hi + step * 1e-9; t += step) {
    ticks.push_back(std::abs(t) < step * 1e-9 ? 0.0 : t);
  }
  return ticks;
}

}  // namespace blockland
