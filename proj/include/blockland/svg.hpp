#pragma once

#include <string>
#include <vector>

namespace blockland {

// Minimal self-contained SVG writer. Fixed palette and float formatting so
// identical inputs always produce byte-identical files.
namespace svg_style {
constexpr int kChartWidth = 760;
constexpr int kChartHeight = 420;
constexpr const char* kSeriesPalette[6] = {"#4477aa", "#ee6677", "#228833", "#ccbb44", "#66ccee", "#aa3377"};
constexpr const char* kBaselineColor = "#4477aa";  // arand pairings
constexpr const char* kAttackColor = "#ee6677";    // adversary pairings
constexpr const char* kAxisColor = "#404040";
constexpr const char* kFontFamily = "Helvetica, Arial, sans-serif";
}  // namespace svg_style

class SvgDoc {
 public:
  SvgDoc(double width, double height);

  void line(double x1, double y1, double x2, double y2, const std::string& stroke, double stroke_width = 1.0);
  void rect(double x, double y, double w, double h, const std::string& fill, const std::string& stroke = "none");
  void circle(double cx, double cy, double r, const std::string& fill);
  void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& stroke,
                double stroke_width = 1.5);
  void polygon(const std::vector<std::pair<double, double>>& pts, const std::string& fill,
               const std::string& stroke = "none");
  void text(double x, double y, const std::string& content, double size = 11.0,
            const std::string& anchor = "start", const std::string& fill = "#202020");

  std::string str() const;  // complete document

 private:
  double width_;
  double height_;
  std::string body_;
};

// Maps data values to pixel coordinates of a plot area.
struct LinearScale {
  double domain_lo = 0.0, domain_hi = 1.0;
  double range_lo = 0.0, range_hi = 1.0;
  double operator()(double v) const {
    return range_lo + (v - domain_lo) / (domain_hi - domain_lo) * (range_hi - range_lo);
  }
};

// "Nice" ticks covering [lo, hi]; used by every chart axis.
std::vector<double> axis_ticks(double lo, double hi, int target_count = 6);

}  // namespace blockland
