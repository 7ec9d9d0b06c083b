#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "fatbots/geometry.hpp"

namespace fatbots {

struct AlgParams {
  int n = 2;
  double epsilon = 0.05;
  double tau = kDefaultTau;
};

// epsilon defaults to 1/(10n); throws std::invalid_argument when out of range.
AlgParams make_params(int n, std::optional<double> epsilon = std::nullopt, double tau = kDefaultTau);

// Centre distance two hull neighbours need before a third disc fits between
// them: two radii on each side plus one diameter.
constexpr double kRoomForOne = 4.0;

std::pair<bool, std::vector<int>> on_convex_hull(std::span<const Point2> view_centers, int c_index,
                                                 double tau = kDefaultTau);

Point2 move_to_point(Point2 c1, Point2 c2, int m, Point2 inward_normal, const AlgParams& params);

struct FindPointsCandidate {
  Point2 p;
  int left = 0;   // position in the ring
  int right = 0;
  double clearance_left = 0;   // signed distance to the extension lines,
  double clearance_right = 0;  // positive on the wedge side
  bool disc_inside = false;
  bool accepted = false;
};

struct FindPointsResult {
  std::vector<Point2> points;
  std::vector<FindPointsCandidate> audit;
  bool degenerate = false;
};

// ring: hull members in clockwise order.
FindPointsResult find_points(std::span<const Point2> ring, const AlgParams& params);

struct Component {
  Point2 left;
  Point2 right;
  int count = 0;
  int first = 0;  // ring positions of left and right
  int last = 0;
};

// ring: clockwise; c_pos: the observer's position in it.
std::vector<Component> connected_components(std::span<const Point2> ring, int c_pos, int m,
                                            double tau = kDefaultTau);
// index of the component holding ring position pos
int component_of(const std::vector<Component>& comps, int ring_size, int pos);

int how_much_distance(std::span<const Point2> ring, int c_pos, const AlgParams& params);
int in_largest_component(std::span<const Point2> ring, int c_pos, const AlgParams& params);
int in_smallest_component(std::span<const Point2> ring, int c_pos, const AlgParams& params);

bool in_straight_line_2(Point2 cl, Point2 cm, Point2 cr, double tau = kDefaultTau);

double safe_distance_single(double theta, int n);
double safe_distance(double theta_left, double theta_right, int n);
double safe_distance(double theta, int n);

}  // namespace fatbots
