#pragma once

#include <string>
#include <vector>

#include "fireline/geometry.hpp"

namespace fireline::cli {

// Minimal SVG canvas in scene coordinates (y up).
class Svg {
 public:
  explicit Svg(Box view, double width_px = 800.0);
  void polyline(const std::vector<Point>& pts, const std::string& stroke, double width, bool closed = false);
  void polygon(const std::vector<Point>& pts, const std::string& fill, double opacity);
  void segment(const Segment& s, const std::string& stroke, double width);
  void circle(Point c, double r, const std::string& stroke, const std::string& fill);
  std::string str() const;
  void save(const std::string& path) const;

 private:
  Point map(Point p) const;
  Box view_;
  double scale_;
  double w_, h_;
  std::string body_;
};

}  // namespace fireline::cli
