#include "fatbots/geometry.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

namespace fatbots {

double point_line_distance(Point2 p, Point2 a, Point2 b) {
  Point2 d = b - a;
  double l = norm(d);
  if (l == 0.0) return dist(p, a);
  return std::abs(cross(d, p - a)) / l;
}

double signed_line_distance(Point2 p, Point2 a, Point2 b) {
  Point2 d = b - a;
  double l = norm(d);
  if (l == 0.0) return dist(p, a);
  return cross(d, p - a) / l;
}

double point_segment_distance(Point2 p, Point2 a, Point2 b) {
  Point2 d = b - a;
  double l2 = dot(d, d);
  if (l2 == 0.0) return dist(p, a);
  double t = std::clamp(dot(p - a, d) / l2, 0.0, 1.0);
  return dist(p, a + t * d);
}

bool collinear3(Point2 a, Point2 b, Point2 c, double tau) {
  if (dist(a, c) <= tau) return dist(b, a) <= tau;
  return point_line_distance(b, a, c) <= tau;
}

bool HullBoundary::is_member(int idx) const {
  return std::binary_search(members.begin(), members.end(), idx);
}

namespace {

// Andrew's monotone chain; collinear points are dropped here and picked up
// later as edge members.
std::vector<int> strict_hull(std::span<const Point2> pts) {
  std::vector<int> order(pts.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (pts[a].x != pts[b].x) return pts[a].x < pts[b].x;
    if (pts[a].y != pts[b].y) return pts[a].y < pts[b].y;
    return a < b;
  });
  order.erase(std::unique(order.begin(), order.end(),
                          [&](int a, int b) { return pts[a] == pts[b]; }),
              order.end());
  if (order.size() < 3) return order;
  std::vector<int> h(2 * order.size());
  size_t k = 0;
  auto turn = [&](int o, int a, int b) { return cross(pts[a] - pts[o], pts[b] - pts[o]); };
  for (int i : order) {
    while (k >= 2 && turn(h[k - 2], h[k - 1], i) <= 0) --k;
    h[k++] = i;
  }
  for (size_t t = k + 1, j = order.size() - 1; j-- > 0;) {
    int i = order[j];
    while (k >= t && turn(h[k - 2], h[k - 1], i) <= 0) --k;
    h[k++] = i;
  }
  h.resize(k - 1);
  return h;
}

}  // namespace

HullBoundary hull_boundary(std::span<const Point2> pts, double tau) {
  HullBoundary hb;
  const int m = static_cast<int>(pts.size());
  if (m == 0) return hb;
  std::vector<int> v = strict_hull(pts);

  // prune vertices that sit within tau of the chord of their neighbours
  bool changed = true;
  while (changed && v.size() >= 3) {
    changed = false;
    for (size_t k = 0; k < v.size() && v.size() >= 3; ++k) {
      int a = v[(k + v.size() - 1) % v.size()], b = v[k], c = v[(k + 1) % v.size()];
      if (collinear3(pts[a], pts[b], pts[c], tau)) {
        v.erase(v.begin() + static_cast<long>(k));
        changed = true;
        break;
      }
    }
  }

  if (v.size() >= 3) {
    hb.vertex_ids = v;
    for (int id : v) hb.vertices.push_back(pts[id]);
    const int nv = static_cast<int>(v.size());
    std::vector<std::pair<double, int>> keyed;
    for (int i = 0; i < m; ++i) {
      auto it = std::find(v.begin(), v.end(), i);
      if (it != v.end()) {
        keyed.push_back({static_cast<double>(it - v.begin()), i});
        continue;
      }
      double best = INFINITY;
      double key = 0;
      for (int e = 0; e < nv; ++e) {
        Point2 a = hb.vertices[e], b = hb.vertices[(e + 1) % nv];
        double d = point_segment_distance(pts[i], a, b);
        if (d < best) {
          best = d;
          Point2 ab = b - a;
          double t = std::clamp(dot(pts[i] - a, ab) / dot(ab, ab), 0.0, 1.0);
          key = e + std::min(t, 0.999999999999);
        }
      }
      if (best <= tau) keyed.push_back({key, i});
    }
    std::sort(keyed.begin(), keyed.end());
    for (auto& [key, id] : keyed) hb.cycle.push_back(id);
  } else {
    hb.degenerate = true;
    // extremes of the (near) collinear set: farthest pair among all points
    int ea = 0, eb = 0;
    double far = -1;
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j)
        if (double d = dist(pts[i], pts[j]); d > far) far = d, ea = i, eb = j;
    if (far <= tau) {
      hb.vertex_ids = {ea};
      hb.vertices = {pts[ea]};
      for (int i = 0; i < m; ++i) hb.cycle.push_back(i);
    } else {
      hb.vertex_ids = {ea, eb};
      hb.vertices = {pts[ea], pts[eb]};
      Point2 dir = pts[eb] - pts[ea];
      std::vector<std::pair<double, int>> keyed;
      for (int i = 0; i < m; ++i)
        if (point_segment_distance(pts[i], pts[ea], pts[eb]) <= tau)
          keyed.push_back({dot(pts[i] - pts[ea], dir), i});
      std::sort(keyed.begin(), keyed.end());
      for (auto& [key, id] : keyed) hb.cycle.push_back(id);
    }
  }
  hb.members = hb.cycle;
  std::sort(hb.members.begin(), hb.members.end());
  return hb;
}

bool on_hull_boundary(std::span<const Point2> pts, int query_index, double tau) {
  if (query_index < 0 || query_index >= static_cast<int>(pts.size()))
    throw std::out_of_range("on_hull_boundary: query index");
  return hull_boundary(pts, tau).is_member(query_index);
}

bool point_in_convex_polygon(Point2 p, std::span<const Point2> ccw, double slack) {
  const size_t k = ccw.size();
  if (k == 0) return false;
  if (k == 1) return dist(p, ccw[0]) <= slack;
  if (k == 2) return point_segment_distance(p, ccw[0], ccw[1]) <= slack;
  for (size_t i = 0; i < k; ++i)
    if (signed_line_distance(p, ccw[i], ccw[(i + 1) % k]) < -slack) return false;
  return true;
}

bool polygon_contains(std::span<const Point2> outer, std::span<const Point2> inner, double slack) {
  return std::all_of(inner.begin(), inner.end(),
                     [&](Point2 p) { return point_in_convex_polygon(p, outer, slack); });
}

bool segment_disc_blocked(Point2 p, Point2 q, Point2 center, double tau) {
  // the +-tau band around the rim counts as blocked
  return point_segment_distance(center, p, q) <= 1.0 + tau;
}

std::vector<Point2> line_circle_intersections(Point2 a, Point2 b, Point2 center, double radius,
                                              double tau) {
  Point2 d = b - a;
  double l = norm(d);
  if (l <= tau) throw DomainError("line_circle_intersections: degenerate line");
  Point2 u = (1.0 / l) * d;
  double s = dot(center - a, u);
  Point2 foot = a + s * u;
  double h = dist(center, foot);
  if (h > radius + tau) return {};
  if (std::abs(h - radius) <= tau) return {foot};
  double half = std::sqrt(radius * radius - h * h);
  return {foot - half * u, foot + half * u};
}

std::optional<double> first_tangency(Point2 start, Point2 target, std::span<const Point2> obstacles,
                                     double tau) {
  Point2 d = target - start;
  double a = dot(d, d);
  std::optional<double> best;
  for (Point2 o : obstacles) {
    Point2 w = start - o;
    double c = dot(w, w) - 4.0;
    if (norm(w) < 2.0 - tau)
      throw ModelIntegrityError("first_tangency: mover overlaps obstacle at " + to_string(o));
    if (a == 0.0) continue;
    double b = 2.0 * dot(w, d);
    if (c <= 4.0 * tau) {
      // touching already: blocked only when heading into the obstacle
      if (b < 0) best = 0.0;
      continue;
    }
    if (b >= 0) continue;  // moving away
    double disc = b * b - 4 * a * c;
    if (disc < 0) continue;
    double q = -0.5 * (b - std::sqrt(disc));  // b < 0, so q > 0
    double t = c / q;                          // the smaller root
    if (t <= 1.0 && (!best || t < *best)) best = t;
  }
  return best;
}

void require_no_overlap(std::span<const Point2> config, double tau) {
  for (size_t i = 0; i < config.size(); ++i)
    for (size_t j = i + 1; j < config.size(); ++j)
      if (dist(config[i], config[j]) < 2.0 - tau)
        throw ModelIntegrityError("robots " + std::to_string(i) + " and " + std::to_string(j) +
                                  " overlap (distance " + std::to_string(dist(config[i], config[j])) +
                                  ")");
}

std::string to_string(Point2 p) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, p.x);
  std::string s = "(" + std::string(buf, r.ptr);
  r = std::to_chars(buf, buf + sizeof buf, p.y);
  return s + "," + std::string(buf, r.ptr) + ")";
}

}  // namespace fatbots
