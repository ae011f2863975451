#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <stdexcept>
#include <vector>

namespace fireline {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
  friend Point operator*(Point a, double s) { return {s * a.x, s * a.y}; }
  friend bool operator==(Point a, Point b) { return a.x == b.x && a.y == b.y; }
  friend bool operator!=(Point a, Point b) { return !(a == b); }
};

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double dist(Point a, Point b) { return norm(a - b); }
inline Point perp(Point a) { return {-a.y, a.x}; }
inline bool lex_less(Point a, Point b) { return a.x < b.x || (a.x == b.x && a.y < b.y); }

struct Segment {
  Point a;
  Point b;
  double length() const { return dist(a, b); }
  Point at(double s) const { return a + s * (b - a); }
};

struct Disc {
  Point center;
  double radius = 1.0;
};

struct Polyline {
  std::vector<Point> points;
  bool closed = false;
  double length() const;
  std::vector<Segment> segments() const;
};

struct Box {
  Point lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  Point hi{-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  void add(Point p);
  void add(const Box& b);
  bool empty() const { return lo.x > hi.x; }
  bool contains(Point p) const { return p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y; }
  Box expanded(double m) const { return {{lo.x - m, lo.y - m}, {hi.x + m, hi.y + m}}; }
  double diagonal() const { return empty() ? 0.0 : dist(lo, hi); }
};

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Sign of the signed area of pqr. Filtered floating point, exact rational fallback.
int orient(Point p, Point q, Point r);

enum class CrossKind { disjoint, endpoint_touch, interior_cross, overlap };
const char* to_string(CrossKind k);

CrossKind segments_cross(const Segment& s, const Segment& t);

// p on the closed segment s (exact).
bool on_segment(Point p, const Segment& s);
double point_segment_distance(Point p, const Segment& s);
Point closest_on_segment(Point p, const Segment& s);
double segment_segment_distance(const Segment& s, const Segment& t);

class SegmentIndex;

struct BarrierComponent {
  std::vector<Segment> segments;
  double length = 0.0;
};

class Barrier {
 public:
  Barrier() = default;

  const std::vector<BarrierComponent>& components() const { return components_; }
  const std::vector<Segment>& segments() const { return segments_; }
  // component id per entry of segments()
  const std::vector<int>& component_of() const { return component_of_; }
  double total_length() const { return total_length_; }
  bool empty() const { return segments_.empty(); }
  Box bounds() const;

  // Disjoint pieces covering the union of the segments once (collinear overlaps merged).
  const std::vector<Segment>& pieces() const { return pieces_; }
  const std::vector<int>& piece_component() const { return piece_component_; }

  const SegmentIndex& index() const { return *index_; }

  friend Barrier split_components(const std::vector<Segment>& segments);

 private:
  std::vector<BarrierComponent> components_;
  std::vector<Segment> segments_;
  std::vector<int> component_of_;
  std::vector<Segment> pieces_;
  std::vector<int> piece_component_;
  double total_length_ = 0.0;
  std::shared_ptr<const SegmentIndex> index_;
};

Barrier split_components(const std::vector<Segment>& segments);

// Open segment pq does not cross the barrier. Grazing endpoints and touching is
// allowed; passing through a junction whose arms lie on both sides is not.
bool visible(Point p, Point q, const Barrier& barrier);

// Number of bounded faces of the arrangement; zero iff the complement is connected.
int bounded_face_count(const Barrier& barrier);
inline bool complement_connected(const Barrier& barrier) { return bounded_face_count(barrier) == 0; }

// Length of barrier ∩ closed disc B(c, r).
double length_in_ball(const Barrier& barrier, Point c, double r);

Polyline polygonalize_disc(const Disc& d, int n);
Polyline polygonalize_arc(Point center, double radius, double theta0, double theta1, int n);
double polygon_hausdorff_bound(double radius, int n);

struct Scene {
  std::vector<Disc> initial;
  Barrier barrier;
  double sigma = 2.0;
  double c0 = 0.0;

  Box bounds() const;
  double diameter() const { return bounds().diagonal(); }
  void validate() const;
};

Scene make_scene(std::vector<Disc> initial, const std::vector<Segment>& segments, double sigma, double c0);

// Polygon utilities (simple polygons given as closed point lists).
double polygon_area(const std::vector<Point>& poly);
bool point_in_polygon(Point p, const std::vector<Point>& poly);
// Parts of s outside the polygon (polygon boundary included in the removed part).
std::vector<Segment> clip_outside(const Segment& s, const std::vector<Point>& poly);
// Parts of s inside the polygon.
std::vector<Segment> clip_inside(const Segment& s, const std::vector<Point>& poly);
// Total length of s inside the closed polygon.
double length_inside(const Segment& s, const std::vector<Point>& poly);

}  // namespace fireline
