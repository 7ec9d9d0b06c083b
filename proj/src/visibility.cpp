#include "fatbots/visibility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "fatbots/kernels.hpp"

namespace fatbots {

namespace {

struct Circle {
  Point2 c;
  double r;
};

struct Line {
  Point2 p;  // a point on the line
  Point2 u;  // unit direction
};

// Common tangent lines of two circles, including the near-degenerate inner
// tangent of (almost) touching circles.
void common_tangents(const Circle& a, const Circle& b, std::vector<Line>& out) {
  Point2 c = b.c - a.c;
  double z = dot(c, c);
  if (z == 0) return;
  for (int i = -1; i <= 1; i += 2)
    for (int j = -1; j <= 1; j += 2) {
      double r1 = a.r * i, r = b.r * j - r1;
      double d = z - r * r;
      if (d < -1e-6 * std::max(1.0, z)) continue;
      d = std::sqrt(std::max(d, 0.0));
      Point2 nrm{(c.x * r + c.y * d) / z, (c.y * r - c.x * d) / z};
      // line: nrm . x + cc = 0 with cc chosen so that it is tangent at distance r1 from a
      double cc = r1 - dot(nrm, a.c);
      out.push_back({-cc * nrm, perp(nrm)});
    }
}

// Portion of line l between disc i and disc j; false when the line misses one.
bool between_portion(const Line& l, Point2 ci, Point2 cj, Point2& from, Point2& to) {
  Point2 u = dot(l.u, cj - ci) >= 0 ? l.u : -1.0 * l.u;
  auto chord = [&](Point2 c, double& lo, double& hi) {
    double s = dot(c - l.p, u);
    double h = std::abs(cross(u, c - l.p));
    if (h > 1.0 + 1e-12) return false;
    double half = std::sqrt(std::max(0.0, 1.0 - h * h));
    lo = s - half;
    hi = s + half;
    return true;
  };
  double ilo, ihi, jlo, jhi;
  if (!chord(ci, ilo, ihi) || !chord(cj, jlo, jhi)) return false;
  double a = ihi, b = std::max(jlo, ihi);
  from = l.p + a * u;
  to = l.p + b * u;
  return true;
}

}  // namespace

PairVisibility visible_pair_detail(int i, int j, std::span<const Point2> config, double tau) {
  const int n = static_cast<int>(config.size());
  if (i == j || i < 0 || j < 0 || i >= n || j >= n) throw std::out_of_range("visible_pair: bad indices");
  require_no_overlap(config, tau);
  std::vector<double> ox, oy;
  for (int k = 0; k < n; ++k)
    if (k != i && k != j) ox.push_back(config[k].x), oy.push_back(config[k].y);
  if (ox.empty()) return {true, std::numeric_limits<double>::infinity()};

  const Point2 ci = config[i], cj = config[j];
  std::vector<Circle> circles{{ci, 1.0}, {cj, 1.0}};
  for (size_t k = 0; k < ox.size(); ++k) circles.push_back({{ox[k], oy[k]}, 1.0 + 2 * tau});

  std::vector<Line> lines;
  lines.push_back({ci, unit(cj - ci)});
  for (size_t a = 0; a < circles.size(); ++a)
    for (size_t b = a + 1; b < circles.size(); ++b) common_tangents(circles[a], circles[b], lines);

  std::vector<double> px, py, qx, qy;
  for (const Line& l : lines) {
    Point2 f, t;
    if (!between_portion(l, ci, cj, f, t)) continue;
    px.push_back(f.x), py.push_back(f.y), qx.push_back(t.x), qy.push_back(t.y);
  }
  std::vector<double> clear(px.size());
  kernels::segment_clearance({px.data(), py.data(), qx.data(), qy.data(), px.size()},
                             {ox.data(), oy.data(), ox.size()}, clear.data());
  double best = -std::numeric_limits<double>::infinity();
  for (double c : clear) best = std::max(best, c - 1.0);
  return {best > tau, best};
}

bool visible_pair(int i, int j, std::span<const Point2> config, double tau) {
  return visible_pair_detail(i, j, config, tau).visible;
}

namespace {

LocalView assemble(std::span<const Point2> config, int i, const std::vector<int>& seen, int n, double tau) {
  std::vector<int> ids = seen;
  const Point2 o = config[i];
  auto angle = [&](int k) {
    double a = std::atan2(config[k].y - o.y, config[k].x - o.x);
    return a < 0 ? a + 2 * std::numbers::pi : a;
  };
  std::sort(ids.begin(), ids.end(), [&](int a, int b) {
    double aa = angle(a), ab = angle(b);
    if (aa != ab) return aa < ab;
    double da = dist(config[a], o), db = dist(config[b], o);
    if (da != db) return da < db;
    return a < b;
  });
  ids.insert(ids.begin(), i);
  LocalView v;
  v.observer = i;
  v.ids = ids;
  for (int k : ids) v.centers.push_back(config[k]);
  v.hull_members = hull_boundary(v.centers, tau).members;
  v.n_known = n;
  return v;
}

}  // namespace

LocalView local_view(int i, std::span<const Point2> config, int n, double tau) {
  std::vector<int> seen;
  for (int j = 0; j < static_cast<int>(config.size()); ++j)
    if (j != i && visible_pair(i, j, config, tau)) seen.push_back(j);
  return assemble(config, i, seen, n, tau);
}

LocalView full_view(std::span<const Point2> pts, int observer, int n, double tau) {
  std::vector<int> seen;
  for (int j = 0; j < static_cast<int>(pts.size()); ++j)
    if (j != observer) seen.push_back(j);
  return assemble(pts, observer, seen, n, tau);
}

std::vector<std::vector<bool>> visibility_matrix(std::span<const Point2> config, double tau) {
  const size_t n = config.size();
  std::vector<std::vector<bool>> m(n, std::vector<bool>(n, true));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      m[i][j] = m[j][i] = visible_pair(static_cast<int>(i), static_cast<int>(j), config, tau);
  return m;
}

bool all_pairs_visible(std::span<const Point2> config, double tau) {
  for (size_t i = 0; i < config.size(); ++i)
    for (size_t j = i + 1; j < config.size(); ++j)
      if (!visible_pair(static_cast<int>(i), static_cast<int>(j), config, tau)) return false;
  return true;
}

}  // namespace fatbots
