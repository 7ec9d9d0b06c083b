#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fatbots {

constexpr double kDefaultTau = 1e-9;

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

constexpr Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
constexpr Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
constexpr Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
constexpr Point2 operator*(Point2 a, double s) { return {s * a.x, s * a.y}; }
constexpr bool operator==(Point2 a, Point2 b) { return a.x == b.x && a.y == b.y; }

constexpr double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
constexpr Point2 perp(Point2 a) { return {-a.y, a.x}; }  // rotate +90 degrees
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }
inline double dist(Point2 a, Point2 b) { return norm(a - b); }
inline Point2 unit(Point2 a) {
  double l = norm(a);
  return l > 0 ? (1.0 / l) * a : Point2{};
}

// Broken invariant of the simulated world (overlapping robots etc.).
class ModelIntegrityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of a formula.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

double point_line_distance(Point2 p, Point2 a, Point2 b);
double point_segment_distance(Point2 p, Point2 a, Point2 b);
// Signed distance of p from the directed line a->b, positive on the left.
double signed_line_distance(Point2 p, Point2 a, Point2 b);

bool collinear3(Point2 a, Point2 b, Point2 c, double tau = kDefaultTau);

struct HullBoundary {
  std::vector<Point2> vertices;  // counter-clockwise
  std::vector<int> vertex_ids;   // input index of each vertex
  std::vector<int> members;      // boundary points, sorted by input index
  std::vector<int> cycle;        // members in counter-clockwise boundary order
  bool degenerate = false;       // fewer than three vertices

  bool is_member(int idx) const;
};

HullBoundary hull_boundary(std::span<const Point2> pts, double tau = kDefaultTau);
bool on_hull_boundary(std::span<const Point2> pts, int query_index, double tau = kDefaultTau);

// p inside the closed polygon (ccw) or within slack of it.
bool point_in_convex_polygon(Point2 p, std::span<const Point2> ccw, double slack);
// every vertex of inner lies in outer (both closed convex, ccw).
bool polygon_contains(std::span<const Point2> outer, std::span<const Point2> inner, double slack);

bool segment_disc_blocked(Point2 p, Point2 q, Point2 center, double tau = kDefaultTau);

std::vector<Point2> line_circle_intersections(Point2 a, Point2 b, Point2 center, double radius,
                                              double tau = kDefaultTau);

// Parameter along start->target where the moving unit disc first touches an
// obstacle disc. A mover already touching an obstacle and heading into it
// gets t = 0.
std::optional<double> first_tangency(Point2 start, Point2 target, std::span<const Point2> obstacles,
                                     double tau = kDefaultTau);

// Throws ModelIntegrityError when two discs overlap by more than tau.
void require_no_overlap(std::span<const Point2> config, double tau);

std::string to_string(Point2 p);

}  // namespace fatbots
