#include "fireline/cli/svg.hpp"

#include <cstdio>
#include <algorithm>
#include <fstream>
#include <stdexcept>

namespace fireline::cli {

namespace {
std::string fmt2(double v) {
  char b[32];
  std::snprintf(b, sizeof b, "%.2f", v);
  return b;
}
}  // namespace

Svg::Svg(Box view, double width_px) : view_(view) {
  double dx = std::max(view.hi.x - view.lo.x, 1e-12), dy = std::max(view.hi.y - view.lo.y, 1e-12);
  scale_ = width_px / dx;
  w_ = width_px;
  h_ = dy * scale_;
}

Point Svg::map(Point p) const { return {(p.x - view_.lo.x) * scale_, (view_.hi.y - p.y) * scale_}; }

void Svg::polyline(const std::vector<Point>& pts, const std::string& stroke, double width, bool closed) {
  body_ += closed ? "<polygon fill=\"none\"" : "<polyline fill=\"none\"";
  body_ += " stroke=\"" + stroke + "\" stroke-width=\"" + fmt2(width) + "\" points=\"";
  for (Point p : pts) {
    Point q = map(p);
    body_ += fmt2(q.x) + "," + fmt2(q.y) + " ";
  }
  body_ += "\"/>\n";
}

void Svg::polygon(const std::vector<Point>& pts, const std::string& fill, double opacity) {
  body_ += "<polygon stroke=\"none\" fill=\"" + fill + "\" fill-opacity=\"" + fmt2(opacity) + "\" points=\"";
  for (Point p : pts) {
    Point q = map(p);
    body_ += fmt2(q.x) + "," + fmt2(q.y) + " ";
  }
  body_ += "\"/>\n";
}

void Svg::segment(const Segment& s, const std::string& stroke, double width) {
  Point a = map(s.a), b = map(s.b);
  body_ += "<line x1=\"" + fmt2(a.x) + "\" y1=\"" + fmt2(a.y) + "\" x2=\"" + fmt2(b.x) + "\" y2=\"" + fmt2(b.y) +
           "\" stroke=\"" + stroke + "\" stroke-width=\"" + fmt2(width) + "\"/>\n";
}

void Svg::circle(Point c, double r, const std::string& stroke, const std::string& fill) {
  Point q = map(c);
  body_ += "<circle cx=\"" + fmt2(q.x) + "\" cy=\"" + fmt2(q.y) + "\" r=\"" + fmt2(r * scale_) + "\" stroke=\"" +
           stroke + "\" fill=\"" + fill + "\"/>\n";
}

std::string Svg::str() const {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt2(w_) + "\" height=\"" + fmt2(h_) + "\">\n" +
         "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n" + body_ + "</svg>\n";
}

void Svg::save(const std::string& path) const {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << str();
}

}  // namespace fireline::cli
