#pragma once

#include <span>
#include <vector>

#include "fatbots/geometry.hpp"

namespace fatbots {

struct LocalView {
  int observer = 0;             // global robot index (bookkeeping only)
  std::vector<Point2> centers;  // centers[0] is the observer
  std::vector<int> ids;         // global index of each entry of centers
  std::vector<int> hull_members;
  int n_known = 0;

  Point2 self() const { return centers.front(); }
};

struct PairVisibility {
  bool visible = false;
  // clearance of the best candidate segment minus the robot radius;
  // +inf when there are no obstacles
  double margin = 0.0;
};

PairVisibility visible_pair_detail(int i, int j, std::span<const Point2> config, double tau = kDefaultTau);
bool visible_pair(int i, int j, std::span<const Point2> config, double tau = kDefaultTau);

LocalView local_view(int i, std::span<const Point2> config, int n, double tau = kDefaultTau);
// View built from an explicit point list, everything assumed visible.
LocalView full_view(std::span<const Point2> pts, int observer, int n, double tau = kDefaultTau);

std::vector<std::vector<bool>> visibility_matrix(std::span<const Point2> config, double tau = kDefaultTau);
bool all_pairs_visible(std::span<const Point2> config, double tau = kDefaultTau);

}  // namespace fatbots
