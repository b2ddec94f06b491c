#include "chipletfp/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace chipletfp {

namespace {

constexpr double kMarginPx = 20.0;
constexpr double kMaxStrokePx = 8.0;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s(buf);
  if (s == "-0.000") s = "0.000";
  return s;
}

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

}  // namespace

double svg_scale(double board_w, double board_h) {
  const double longest = std::max(board_w, board_h);
  if (!(longest > 0.0)) throw InputError("board extents must be positive to render");
  return kSvgLongSidePx / longest;
}

std::string render_svg(const SvgScene& scene) {
  const double s = svg_scale(scene.board_w, scene.board_h);
  const int n = static_cast<int>(scene.placement.size());
  if (scene.freq && scene.freq->size() != n) {
    throw InputError("frequency matrix is " + std::to_string(scene.freq->size()) + "x" +
                     std::to_string(scene.freq->size()) + " but the solution has " + std::to_string(n) +
                     " chiplets");
  }
  const double bw = scene.board_w * s;
  const double bh = scene.board_h * s;
  auto px = [&](double x_um) { return kMarginPx + x_um * s; };
  auto py = [&](double y_um) { return kMarginPx + bh - y_um * s; };

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(bw + 2 * kMarginPx) << "\" height=\""
      << num(bh + 2 * kMarginPx) << "\" viewBox=\"0 0 " << num(bw + 2 * kMarginPx) << ' ' << num(bh + 2 * kMarginPx)
      << "\">\n";
  out << "<!-- scale " << num(s) << " px/um, origin at lower left -->\n";
  out << "<g id=\"board\">\n<path d=\"M " << num(px(0)) << ' ' << num(py(0)) << " H " << num(px(scene.board_w))
      << " V " << num(py(scene.board_h)) << " H " << num(px(0)) << " Z\" fill=\"#f7f7f2\" stroke=\"#333\" "
      << "stroke-width=\"2\"/>\n</g>\n";

  out << "<g id=\"chiplets\">\n";
  for (int k = 0; k < n; ++k) {
    const PlacedChiplet& c = scene.placement[k];
    out << "<rect x=\"" << num(px(c.x)) << "\" y=\"" << num(py(c.y + c.height)) << "\" width=\"" << num(c.width * s)
        << "\" height=\"" << num(c.height * s) << "\" fill=\"#9ec5e8\" stroke=\"#1f4e79\" stroke-width=\"1.5\"/>\n";
    const std::string label = k < static_cast<int>(scene.names.size()) && !scene.names[k].empty()
                                  ? scene.names[k]
                                  : "c" + std::to_string(k);
    const Point ctr = c.center();
    out << "<text x=\"" << num(px(ctr.x)) << "\" y=\"" << num(py(ctr.y)) << "\" font-family=\"sans-serif\" "
        << "font-size=\"12\" text-anchor=\"middle\" dominant-baseline=\"middle\">" << escape(label)
        << (c.rotated ? " (R)" : "") << "</text>\n";
  }
  out << "</g>\n";

  out << "<g id=\"bumps\">\n";
  for (const Point& b : scene.bumps.hotspots) {
    out << "<circle cx=\"" << num(px(b.x)) << "\" cy=\"" << num(py(b.y)) << "\" r=\"4.000\" fill=\"#c0392b\"/>\n";
    if (scene.bumps.margin_radius > 0.0) {
      out << "<circle cx=\"" << num(px(b.x)) << "\" cy=\"" << num(py(b.y)) << "\" r=\""
          << num(scene.bumps.margin_radius * s) << "\" fill=\"none\" stroke=\"#c0392b\" stroke-dasharray=\"4 3\"/>\n";
    }
  }
  out << "</g>\n";

  if (scene.freq && !scene.freq->is_zero()) {
    std::int64_t peak = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) peak = std::max(peak, scene.freq->at(i, j));
    out << "<g id=\"traffic\">\n";
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const std::int64_t f = scene.freq->at(i, j);
        if (f == 0) continue;
        const Point a = scene.placement[i].center();
        const Point b = scene.placement[j].center();
        const double width = kMaxStrokePx * static_cast<double>(f) / static_cast<double>(peak);
        out << "<line x1=\"" << num(px(a.x)) << "\" y1=\"" << num(py(a.y)) << "\" x2=\"" << num(px(b.x))
            << "\" y2=\"" << num(py(b.y)) << "\" stroke=\"#e67e22\" stroke-opacity=\"0.7\" stroke-width=\""
            << num(width) << "\" data-f=\"" << f << "\"/>\n";
      }
    }
    out << "</g>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace chipletfp
