#include "fatbots/functions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace fatbots {

AlgParams make_params(int n, std::optional<double> epsilon, double tau) {
  if (n < 2) throw std::invalid_argument("n must be at least 2");
  if (!(tau > 0 && tau <= 1e-6)) throw std::invalid_argument("tau must lie in (0, 1e-6]");
  double eps = epsilon.value_or(1.0 / (10.0 * n));
  if (!(eps > 0 && eps < 1.0 / (2.0 * n)))
    throw std::invalid_argument("epsilon must lie in (0, 1/(2n)), got " + std::to_string(eps));
  return {n, eps, tau};
}

std::pair<bool, std::vector<int>> on_convex_hull(std::span<const Point2> view_centers, int c_index, double tau) {
  HullBoundary hb = hull_boundary(view_centers, tau);
  return {hb.is_member(c_index), hb.members};
}

Point2 move_to_point(Point2 c1, Point2 c2, int m, Point2 inward_normal, const AlgParams& params) {
  Point2 c = c2 + (1.0 / (2.0 * m) - params.epsilon) * unit(inward_normal);
  if (dist(c1, c) <= params.tau) throw std::logic_error("move_to_point: degenerate segment");
  for (Point2 mu : line_circle_intersections(c1, c, c2, 1.0, params.tau)) {
    // first crossing along c1 -> c that lies on the segment
    double t = dot(mu - c1, c - c1) / dot(c - c1, c - c1);
    if (t >= -params.tau && t <= 1.0 + params.tau) return mu;
  }
  throw std::logic_error("move_to_point: segment misses the unit circle at " + to_string(c2));
}

FindPointsResult find_points(std::span<const Point2> ring, const AlgParams& params) {
  FindPointsResult res;
  const int m = static_cast<int>(ring.size());
  if (m < 3) {
    res.degenerate = true;
    return res;
  }
  const double need = 1.0 / params.n;
  for (int l = 0; l < m; ++l) {
    const int r = (l + 1) % m;
    const Point2 cl = ring[l], cr = ring[r];
    if (dist(cl, cr) < kRoomForOne - params.tau) continue;
    const Point2 cll = ring[(l + m - 1) % m], crr = ring[(r + 1) % m];
    // clockwise ring: the exterior is on the left of cl -> cr
    FindPointsCandidate cand;
    cand.p = 0.5 * (cl + cr) + need * unit(perp(cr - cl));
    cand.left = l;
    cand.right = r;
    cand.clearance_left = -signed_line_distance(cand.p, cll, cl);
    cand.clearance_right = -signed_line_distance(cand.p, cr, crr);
    cand.disc_inside = cand.clearance_left >= 1.0 && cand.clearance_right >= 1.0;
    cand.accepted = cand.disc_inside || (cand.clearance_left >= need && cand.clearance_right >= need);
    if (cand.accepted) res.points.push_back(cand.p);
    res.audit.push_back(cand);
  }
  return res;
}

std::vector<Component> connected_components(std::span<const Point2> ring, int c_pos, int m, double tau) {
  const int R = static_cast<int>(ring.size());
  if (R == 0) return {};
  if (c_pos < 0 || c_pos >= R) throw std::out_of_range("connected_components: observer position");
  if (R == 1) return {{ring[0], ring[0], 1, 0, 0}};

  enum Gap { Tangent, Small, Big };
  const double small = 1.0 / (2.0 * m);
  std::vector<Gap> gap(R);  // gap[k] sits between k and k+1
  for (int k = 0; k < R; ++k) {
    double g = dist(ring[k], ring[(k + 1) % R]) - 2.0;
    gap[k] = g <= tau ? Tangent : g <= small + tau ? Small : Big;
  }
  auto prev = [&](int k) { return (k + R - 1) % R; };

  // scan start: walk left from c to the first gap that separates components
  // (a big gap, or failing that, the nearest non-tangent gap)
  bool any_big = std::count(gap.begin(), gap.end(), Big) > 0;
  bool any_open = std::count(gap.begin(), gap.end(), Tangent) < R;
  int start = c_pos;
  if (any_open) {
    for (int steps = 0; steps < R; ++steps) {
      Gap g = gap[prev(start)];
      if (g == Big || (!any_big && g == Small)) break;
      start = prev(start);
    }
  }

  std::vector<Component> out;
  int first = start, smalls = 0;
  auto close = [&](int last) {
    int count = (last - first + R) % R + 1;
    out.push_back({ring[first], ring[last], count, first, last});
  };
  for (int s = 0; s < R - 1; ++s) {
    int k = (start + s) % R;
    Gap g = gap[k];
    if (g == Small && ++smalls == 3) g = Big;  // a third small gap splits
    if (g == Big) {
      close(k);
      first = (k + 1) % R;
      smalls = 0;
    }
  }
  close((start + R - 1) % R);
  return out;
}

int component_of(const std::vector<Component>& comps, int ring_size, int pos) {
  for (size_t k = 0; k < comps.size(); ++k) {
    int off = (pos - comps[k].first + ring_size) % ring_size;
    if (off < comps[k].count) return static_cast<int>(k);
  }
  return -1;
}

int how_much_distance(std::span<const Point2> ring, int c_pos, const AlgParams& params) {
  auto comps = connected_components(ring, c_pos, params.n, params.tau);
  const int K = static_cast<int>(comps.size());
  if (K <= 1) return 2;
  std::vector<double> gaps(K);
  for (int k = 0; k < K; ++k) gaps[k] = dist(comps[k].right, comps[(k + 1) % K].left);
  auto [lo, hi] = std::minmax_element(gaps.begin(), gaps.end());
  if (*hi - *lo <= params.tau) return 2;
  int kmin = static_cast<int>(lo - gaps.begin());
  for (int k = 0; k < K; ++k)
    if (k != kmin && gaps[k] <= *lo + params.tau) return 3;  // tied minimum
  return comps[kmin].last == c_pos ? 1 : 3;
}

namespace {
int rank_component(std::span<const Point2> ring, int c_pos, const AlgParams& params, bool largest) {
  auto comps = connected_components(ring, c_pos, params.n, params.tau);
  const int mine = comps[component_of(comps, static_cast<int>(ring.size()), c_pos)].count;
  bool all_equal = true, others_beyond = true, extreme = true;
  for (const auto& comp : comps) {
    if (comp.count != mine) all_equal = false;
    if (&comp - comps.data() == component_of(comps, static_cast<int>(ring.size()), c_pos)) continue;
    if (largest ? comp.count <= mine : comp.count >= mine) others_beyond = false;
    if (largest ? comp.count > mine : comp.count < mine) extreme = false;
  }
  if (all_equal) return 2;
  if (extreme) return 1;
  return others_beyond ? 2 : 3;
}
}  // namespace

int in_largest_component(std::span<const Point2> ring, int c_pos, const AlgParams& params) {
  return rank_component(ring, c_pos, params, true);
}

int in_smallest_component(std::span<const Point2> ring, int c_pos, const AlgParams& params) {
  return rank_component(ring, c_pos, params, false);
}

bool in_straight_line_2(Point2 cl, Point2 cm, Point2 cr, double tau) { return collinear3(cl, cm, cr, tau); }

double safe_distance_single(double theta, int n) {
  if (!(theta > 0 && theta < std::numbers::pi / 2)) throw DomainError("safe_distance: theta outside (0, pi/2)");
  if (n < 1) throw DomainError("safe_distance: n must be positive");
  return 1.0 / (n * std::tan(theta)) + 1.0 / (n * std::sin(theta));
}

double safe_distance(double theta_left, double theta_right, int n) {
  return 2.0 * std::max(safe_distance_single(theta_left, n), safe_distance_single(theta_right, n));
}

double safe_distance(double theta, int n) { return safe_distance(theta, theta, n); }

}  // namespace fatbots
