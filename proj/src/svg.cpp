#include "redcalc/svg.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_set>

#include "redcalc/format.hpp"

namespace redcalc {

namespace {

constexpr int kWidth = 800;
constexpr int kHeight = 600;
constexpr int kLeft = 60;
constexpr int kRight = 20;
constexpr int kTop = 20;
constexpr int kBottom = 50;

}  // namespace

std::string render_scan_csv(const BifurcationScan& scan, int precision) {
  std::string out = "a,x\n";
  for (const auto& p : scan.points) {
    out += format_fixed(p.a, precision);
    out.push_back(',');
    out += format_fixed(p.x, precision);
    out.push_back('\n');
  }
  return out;
}

std::string render_scan_svg(const BifurcationScan& scan) {
  const int plot_w = kWidth - kLeft - kRight;
  const int plot_h = kHeight - kTop - kBottom;
  const double a_lo = scan.spec.a_min;
  const double a_hi = scan.spec.a_max;

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" viewBox=\"0 0 800 600\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"white\"/>\n";

  const std::string x0 = std::to_string(kLeft);
  const std::string x1 = std::to_string(kLeft + plot_w);
  const std::string y0 = std::to_string(kTop);
  const std::string y1 = std::to_string(kTop + plot_h);
  out += "<g stroke=\"black\" stroke-width=\"1\">\n";
  out += "<line x1=\"" + x0 + "\" y1=\"" + y1 + "\" x2=\"" + x1 + "\" y2=\"" + y1 + "\"/>\n";
  out += "<line x1=\"" + x0 + "\" y1=\"" + y0 + "\" x2=\"" + x0 + "\" y2=\"" + y1 + "\"/>\n";
  out += "</g>\n";

  out += "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"black\">\n";
  for (int i = 0; i <= 4; ++i) {
    const double frac = i / 4.0;
    const int px = kLeft + static_cast<int>(std::lround(frac * plot_w));
    const int py = kTop + plot_h - static_cast<int>(std::lround(frac * plot_h));
    out += "<text x=\"" + std::to_string(px) + "\" y=\"" + std::to_string(kTop + plot_h + 18) +
           "\" text-anchor=\"middle\">" + format_fixed(a_lo + frac * (a_hi - a_lo), 2) + "</text>\n";
    out += "<text x=\"" + std::to_string(kLeft - 6) + "\" y=\"" + std::to_string(py + 4) +
           "\" text-anchor=\"end\">" + format_fixed(frac, 2) + "</text>\n";
  }
  out += "<text x=\"" + std::to_string(kLeft + plot_w / 2) + "\" y=\"" + std::to_string(kHeight - 10) +
         "\" text-anchor=\"middle\" font-size=\"14\">a</text>\n";
  out += "<text x=\"18\" y=\"" + std::to_string(kTop + plot_h / 2) +
         "\" text-anchor=\"middle\" font-size=\"14\">x</text>\n";
  out += "</g>\n";

  out += "<g fill=\"black\">\n";
  std::unordered_set<long> seen;
  for (const auto& p : scan.points) {
    const double fa = (p.a - a_lo) / (a_hi - a_lo);
    const int px = kLeft + std::min(plot_w - 1, static_cast<int>(std::floor(fa * plot_w)));
    const int py = kTop + plot_h - 1 - std::min(plot_h - 1, static_cast<int>(std::floor(p.x * plot_h)));
    if (!seen.insert(static_cast<long>(py) * kWidth + px).second) continue;
    out += "<rect x=\"" + std::to_string(px) + "\" y=\"" + std::to_string(py) +
           "\" width=\"1\" height=\"1\"/>\n";
  }
  out += "</g>\n</svg>\n";
  return out;
}

}  // namespace redcalc
