#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ptc::io {

namespace {

constexpr double kPanel = 420, kMargin = 20;
const char* kPalette[] = {"#1f5fa8", "#b5402a", "#2c8a4b", "#7a4fa0", "#a8781f", "#2a8a8a"};

struct Box {
  double x0 = 1e300, y0 = 1e300, x1 = -1e300, y1 = -1e300;
  void add(const Vec2<double>& p) {
    x0 = std::min(x0, p.x), y0 = std::min(y0, p.y);
    x1 = std::max(x1, p.x), y1 = std::max(y1, p.y);
  }
  bool empty() const { return x0 > x1; }
  // Square box with some padding, never degenerate.
  Box padded(double frac) const {
    const double cx = (x0 + x1) / 2, cy = (y0 + y1) / 2;
    const double half = std::max({x1 - x0, y1 - y0, 1.0}) * (0.5 + frac);
    return {cx - half, cy - half, cx + half, cy + half};
  }
};

class Panel {
 public:
  Panel(const Box& b, double offset_x) : b_(b), ox_(offset_x) {}
  double x(double u) const { return ox_ + kMargin + (u - b_.x0) / (b_.x1 - b_.x0) * (kPanel - 2 * kMargin); }
  double y(double v) const { return kMargin + (b_.y1 - v) / (b_.y1 - b_.y0) * (kPanel - 2 * kMargin); }
  double reach() const { return 2 * (b_.x1 - b_.x0); }

  void line(std::ostream& out, const Vec2<double>& a, const Vec2<double>& c, const char* colour, double w) const {
    out << "<line x1=\"" << x(a.x) << "\" y1=\"" << y(a.y) << "\" x2=\"" << x(c.x) << "\" y2=\"" << y(c.y)
        << "\" stroke=\"" << colour << "\" stroke-width=\"" << w << "\"/>\n";
  }
  void dot(std::ostream& out, const Vec2<double>& p, const char* colour, double r) const {
    out << "<circle cx=\"" << x(p.x) << "\" cy=\"" << y(p.y) << "\" r=\"" << r << "\" fill=\"" << colour << "\"/>\n";
  }
  void polygon(std::ostream& out, const std::vector<Vec2<double>>& v, const char* fill, const char* stroke) const {
    out << "<polygon points=\"";
    for (const auto& p : v) out << x(p.x) << "," << y(p.y) << " ";
    out << "\" fill=\"" << fill << "\" stroke=\"" << stroke << "\" stroke-width=\"1.2\"/>\n";
  }

 private:
  Box b_;
  double ox_;
};

void draw_curve(std::ostream& out, const Panel& panel, const PlaneCurve<double>& c, const char* colour) {
  for (size_t e = 0; e < c.base.edges.size(); ++e)
    panel.line(out, c.positions[c.base.edges[e].a], c.positions[c.base.edges[e].b], colour, 2);
  for (size_t l = 0; l < c.base.legs.size(); ++l) {
    const auto& s = c.leg_slopes[l];
    const double len = norm(s);
    if (len == 0) continue;  // marked leg
    const auto& p = c.positions[c.base.legs[l].vertex];
    panel.line(out, p, p + Vec2<double>(s.x / len * panel.reach(), s.y / len * panel.reach()), colour, 2);
  }
  for (const auto& p : c.positions) panel.dot(out, p, colour, 2.5);
}

Box curve_box(const std::vector<PlaneCurve<double>>& curves, const std::vector<Vec2<double>>& points) {
  Box b;
  for (const auto& c : curves)
    for (const auto& p : c.positions) b.add(p);
  for (const auto& p : points) b.add(p);
  if (b.empty()) b.add({0, 0});
  return b.padded(0.3);
}

void header(std::ostream& out, double width) {
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << kPanel << "\" viewBox=\"0 0 "
      << width << " " << kPanel << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<clipPath id=\"left\"><rect x=\"0\" y=\"0\" width=\"" << kPanel << "\" height=\"" << kPanel << "\"/></clipPath>\n";
}

}  // namespace

std::string curves_svg(const std::vector<PlaneCurve<double>>& curves, const std::vector<Vec2<double>>& points) {
  std::ostringstream out;
  header(out, kPanel);
  Panel panel(curve_box(curves, points), 0);
  out << "<g clip-path=\"url(#left)\">\n";
  for (size_t i = 0; i < curves.size(); ++i) draw_curve(out, panel, curves[i], kPalette[i % std::size(kPalette)]);
  out << "</g>\n";
  for (const auto& p : points) panel.dot(out, p, "black", 4);
  out << "</svg>\n";
  return out.str();
}

std::string duality_svg(const PlaneCurve<double>& curve, const DualSubdivision<double>& dual) {
  std::ostringstream out;
  header(out, 2 * kPanel);
  Panel left(curve_box({curve}, {}), 0);
  out << "<g clip-path=\"url(#left)\">\n";
  draw_curve(out, left, curve, kPalette[0]);
  out << "</g>\n";
  Box b;
  for (const auto& p : dual.outer.vertices) b.add(p);
  if (b.empty()) b.add({0, 0});
  Panel right(b.padded(0.1), kPanel);
  right.polygon(out, dual.outer.vertices, "#f3efe4", "black");
  for (const auto& cell : dual.cells) right.polygon(out, cell.vertices, "none", kPalette[1]);
  out << "<line x1=\"" << kPanel << "\" y1=\"0\" x2=\"" << kPanel << "\" y2=\"" << kPanel
      << "\" stroke=\"#999\" stroke-width=\"1\"/>\n</svg>\n";
  return out.str();
}

}  // namespace ptc::io
