#include "fatbots/automaton.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace fatbots {

namespace {

constexpr std::array<std::string_view, 17> kNames = {
    "Start",          "OnConvexHull",      "AllOnConvexHull", "Connected",    "NotConnected",
    "NotAllOnConvexHull", "NotOnStraightLine", "SpaceForMore", "NoSpaceForMore", "OnStraightLine",
    "SeeOneRobot",    "SeeTwoRobot",       "NotOnConvexHull", "IsTouching",   "NotTouching",
    "ToChange",       "NotChange",
};

using S = ComputeState;

}  // namespace

std::string_view state_name(ComputeState s) { return kNames[static_cast<size_t>(s)]; }

std::optional<ComputeState> state_from_name(std::string_view name) {
  for (size_t k = 0; k < kNames.size(); ++k)
    if (kNames[k] == name) return static_cast<ComputeState>(k);
  return std::nullopt;
}

std::vector<ComputeState> successors(ComputeState s) {
  switch (s) {
    case S::Start: return {S::OnConvexHull, S::NotOnConvexHull};
    case S::OnConvexHull: return {S::AllOnConvexHull, S::NotAllOnConvexHull};
    case S::AllOnConvexHull: return {S::Connected, S::NotConnected};
    case S::NotAllOnConvexHull: return {S::OnStraightLine, S::NotOnStraightLine};
    case S::NotOnStraightLine: return {S::SpaceForMore, S::NoSpaceForMore};
    case S::OnStraightLine: return {S::SeeOneRobot, S::SeeTwoRobot};
    case S::NotOnConvexHull: return {S::IsTouching, S::NotTouching};
    case S::NotTouching: return {S::ToChange, S::NotChange};
    default: return {};
  }
}

bool is_terminal(ComputeState s) { return successors(s).empty(); }

bool legal_transition(ComputeState from, ComputeState to) {
  auto next = successors(from);
  return std::find(next.begin(), next.end(), to) != next.end();
}

bool legal_path(std::span<const ComputeState> path) {
  if (path.empty() || path.front() != S::Start || !is_terminal(path.back())) return false;
  for (size_t k = 1; k < path.size(); ++k)
    if (!legal_transition(path[k - 1], path[k])) return false;
  return true;
}

// ---------------------------------------------------------------------------

ViewContext::ViewContext(const LocalView& v, const AlgParams& p) : view(&v), params(p) {
  if (v.centers.empty()) throw ModelIntegrityError("empty local view");
  hull = hull_boundary(v.centers, p.tau);
  ring = hull.cycle;
  if (!hull.degenerate) std::reverse(ring.begin(), ring.end());
  auto it = std::find(ring.begin(), ring.end(), 0);
  pos = it == ring.end() ? -1 : static_cast<int>(it - ring.begin());
  for (Point2 q : hull.vertices) interior = interior + q;
  interior = (1.0 / static_cast<double>(hull.vertices.size())) * interior;
}

Point2 ViewContext::at(int ring_pos) const { return view->centers[ring[ring_pos]]; }

int ViewContext::left(int k) const {
  const int R = size();
  if (!hull.degenerate) return (k + R - 1) % R;
  return k > 0 ? k - 1 : std::min(1, R - 1);
}

int ViewContext::right(int k) const {
  const int R = size();
  if (!hull.degenerate) return (k + 1) % R;
  return k < R - 1 ? k + 1 : std::max(R - 2, 0);
}

std::vector<Point2> ViewContext::ring_points() const {
  std::vector<Point2> out;
  for (int id : ring) out.push_back(view->centers[id]);
  return out;
}

std::optional<Point2> ViewContext::outward(Point2 a, Point2 b) const {
  if (hull.degenerate || dist(a, b) <= params.tau) return std::nullopt;
  Point2 nrm = unit(perp(b - a));
  double side = dot(nrm, interior - a);
  if (std::abs(side) <= params.tau) return std::nullopt;
  return side > 0 ? -1.0 * nrm : nrm;
}

bool ViewContext::full() const {
  return static_cast<int>(view->centers.size()) == params.n && size() == params.n;
}

// ---------------------------------------------------------------------------

namespace {

double half_n(const AlgParams& p) { return 1.0 / (2.0 * p.n); }

constexpr double kGapShare = 0.3;
constexpr double kCloseGap = 0.03;


bool touching(Point2 a, Point2 b, double tau) { return dist(a, b) <= 2.0 + tau; }

// strict test: inside the open rectangle of half-width 1/n around chord l-r
bool in_rectangle(Point2 l, Point2 m, Point2 r, const AlgParams& p) {
  Point2 d = r - l;
  double l2 = dot(d, d);
  if (l2 <= p.tau * p.tau) return false;
  double t = dot(m - l, d) / l2;
  if (t < 0.0 || t > 1.0) return false;
  return point_line_distance(m, l, r) < 1.0 / p.n - p.tau;
}

struct Triple {
  int l, m, r;
};

// the (up to three) hull triples that contain the observer, tagged by role
std::vector<std::pair<char, Triple>> observer_triples(const ViewContext& ctx) {
  std::vector<std::pair<char, Triple>> out;
  if (ctx.pos < 0 || ctx.size() < 3) return out;
  auto add = [&](char role, int mid) {
    Triple t{ctx.left(mid), mid, ctx.right(mid)};
    if (t.l == t.r || t.l == t.m || t.r == t.m) return;
    out.push_back({role, t});
  };
  add('m', ctx.pos);
  add('l', ctx.right(ctx.pos));
  add('r', ctx.left(ctx.pos));
  return out;
}

// Exit parameter of the ray start + s*dir from the convex polygon (ccw).
double ray_exit(std::span<const Point2> poly, Point2 start, Point2 dir) {
  double best = std::numeric_limits<double>::infinity();
  const size_t k = poly.size();
  for (size_t e = 0; e < k; ++e) {
    Point2 a = poly[e], b = poly[(e + 1) % k];
    Point2 ed = b - a;
    double len = norm(ed);
    if (len == 0) continue;
    double f0 = cross(ed, start - a) / len;  // >= 0 inside
    double g = cross(ed, dir) / len;
    if (g >= -1e-15) continue;
    best = std::min(best, std::max(f0, 0.0) / -g);
  }
  return best;
}

// Position along the ccw boundary (edge index + fraction) of a boundary point.
double boundary_param(std::span<const Point2> poly, Point2 q) {
  const size_t k = poly.size();
  double best = std::numeric_limits<double>::infinity(), key = 0;
  for (size_t e = 0; e < k; ++e) {
    Point2 a = poly[e], b = poly[(e + 1) % k];
    double d = point_segment_distance(q, a, b);
    if (d < best) {
      best = d;
      Point2 ab = b - a;
      key = static_cast<double>(e) + std::clamp(dot(q - a, ab) / dot(ab, ab), 0.0, 0.999999999999);
    }
  }
  return key;
}

std::vector<Point2> others_of(const ViewContext& ctx) {
  return {ctx.view->centers.begin() + 1, ctx.view->centers.end()};
}

// Largest t in [0, 1] with ok(t); assumes ok is monotone along the segment.
template <class Pred>
double bisect_max(Pred ok, int iters = 50) {
  if (ok(1.0)) return 1.0;
  if (!ok(0.0)) return 0.0;
  double lo = 0.0, hi = 1.0;
  for (int k = 0; k < iters; ++k) {
    double mid = 0.5 * (lo + hi);
    (ok(mid) ? lo : hi) = mid;
  }
  return lo;
}

ProcResult stay(const ViewContext& ctx, std::string why) { return {ctx.self(), std::move(why)}; }

// ----- NotConnected helpers ------------------------------------------------

struct RingState {
  const ViewContext& ctx;
  std::vector<Point2> pts;
  std::vector<Point2> poly;  // current hull, ccw

  explicit RingState(const ViewContext& c)
      : ctx(c), pts(c.ring_points()), poly(hull_boundary(pts, c.params.tau).vertices) {}

  int R() const { return static_cast<int>(pts.size()); }
  int L(int k) const { return (k + R() - 1) % R(); }
  int Rt(int k) const { return (k + 1) % R(); }

  // Moving robot k to q keeps it inside the current hull and every robot on
  // the hull in the same order.
  bool safe_move(int k, Point2 q) const {
    const double tau = ctx.params.tau;
    if (poly.size() >= 3 && !point_in_convex_polygon(q, poly, tau)) return false;
    std::vector<Point2> moved = pts;
    moved[k] = q;
    HullBoundary hb = hull_boundary(moved, tau);
    if (static_cast<int>(hb.members.size()) != R() || static_cast<int>(hb.vertices.size()) != R()) return false;
    std::vector<int> cw = hb.cycle;
    std::reverse(cw.begin(), cw.end());
    auto at = std::find(cw.begin(), cw.end(), 0) - cw.begin();
    for (int j = 0; j < R(); ++j)
      if (cw[(at + j) % R()] != j) return false;
    return true;
  }

  bool visible_after(int k, Point2 q) const {
    std::vector<Point2> moved = pts;
    moved[k] = q;
    return all_pairs_visible(moved, ctx.params.tau);
  }

  // Farthest admissible point on [pts[k], target], halved until nobody
  // loses sight of anybody.
  Point2 cap(int k, Point2 target) const {
    Point2 from = pts[k];
    std::vector<Point2> others;
    for (int q = 0; q < R(); ++q)
      if (q != k) others.push_back(pts[q]);
    if (auto hit = first_tangency(from, target, others, ctx.params.tau)) target = from + *hit * (target - from);
    if (dist(from, target) <= ctx.params.tau) return from;
    double t = 1.0;
    if (!safe_move(k, target)) t = bisect_max([&](double s) { return safe_move(k, from + s * (target - from)); });
    for (int h = 0; h < 24 && t > 0; ++h, t *= 0.5)
      if (visible_after(k, from + t * (target - from))) return from + t * (target - from);
    return from;
  }
};

}  // namespace

// ----- branching procedures -------------------------------------------------

ComputeState proc_start(const ViewContext& ctx) { return ctx.pos >= 0 ? S::OnConvexHull : S::NotOnConvexHull; }

ComputeState proc_on_convex_hull(const ViewContext& ctx) {
  if (!ctx.full()) return S::NotAllOnConvexHull;
  if (ctx.size() >= 3)
    for (int k = 0; k < ctx.size(); ++k)
      if (in_straight_line_2(ctx.at(ctx.left(k)), ctx.at(k), ctx.at(ctx.right(k)), ctx.params.tau))
        return S::NotAllOnConvexHull;
  return S::AllOnConvexHull;
}

ComputeState proc_all_on_convex_hull(const ViewContext& ctx) {
  const auto& c = ctx.view->centers;
  std::vector<bool> seen(c.size(), false);
  std::vector<size_t> stack{0};
  seen[0] = true;
  size_t reached = 1;
  while (!stack.empty()) {
    size_t a = stack.back();
    stack.pop_back();
    for (size_t b = 0; b < c.size(); ++b)
      if (!seen[b] && touching(c[a], c[b], ctx.params.tau)) seen[b] = true, ++reached, stack.push_back(b);
  }
  return static_cast<int>(reached) == ctx.params.n ? S::Connected : S::NotConnected;
}

ComputeState proc_not_all_on_convex_hull(const ViewContext& ctx) {
  for (auto& [role, t] : observer_triples(ctx))
    if (in_rectangle(ctx.at(t.l), ctx.at(t.m), ctx.at(t.r), ctx.params)) return S::OnStraightLine;
  return S::NotOnStraightLine;
}

ComputeState proc_on_straight_line(const ViewContext& ctx) {
  for (auto& [role, t] : observer_triples(ctx))
    if (role == 'm' && in_rectangle(ctx.at(t.l), ctx.at(t.m), ctx.at(t.r), ctx.params)) return S::SeeTwoRobot;
  return S::SeeOneRobot;
}

ComputeState proc_not_on_straight_line(const ViewContext& ctx) {
  const int n = ctx.params.n;
  if (ctx.size() == n) return S::SpaceForMore;
  std::vector<Point2> seq;
  if (static_cast<int>(ctx.view->centers.size()) == n || ctx.hull.degenerate) {
    seq = ctx.ring_points();
  } else {
    // augment the hull with the shadows of the visible interior robots
    const auto& poly = ctx.hull.vertices;
    std::vector<std::pair<double, Point2>> keyed;
    for (int id : ctx.hull.cycle) keyed.push_back({boundary_param(poly, ctx.view->centers[id]), ctx.view->centers[id]});
    for (size_t j = 1; j < ctx.view->centers.size(); ++j) {
      if (ctx.hull.is_member(static_cast<int>(j))) continue;
      Point2 dir = ctx.view->centers[j] - ctx.self();
      double s = ray_exit(poly, ctx.self(), dir);
      if (!std::isfinite(s)) continue;
      Point2 x = ctx.self() + s * dir;
      keyed.push_back({boundary_param(poly, x), x});
    }
    std::sort(keyed.begin(), keyed.end(), [](auto& a, auto& b) { return a.first < b.first; });
    for (auto& kv : keyed) seq.push_back(kv.second);
  }
  const size_t m = seq.size();
  if (m >= 2)
    for (size_t k = 0; k < m; ++k)
      if (dist(seq[k], seq[(k + 1) % m]) >= kRoomForOne - ctx.params.tau) return S::SpaceForMore;
  return S::NoSpaceForMore;
}

ComputeState proc_not_on_convex_hull(const ViewContext& ctx) {
  for (size_t j = 1; j < ctx.view->centers.size(); ++j)
    if (touching(ctx.self(), ctx.view->centers[j], ctx.params.tau)) return S::IsTouching;
  return S::NotTouching;
}

ComputeState proc_not_touching(const ViewContext& ctx) {
  return find_points(ctx.ring_points(), ctx.params).points.empty() ? S::ToChange : S::NotChange;
}

// ----- terminal procedures --------------------------------------------------

ProcResult proc_not_connected(const ViewContext& ctx) {
  const AlgParams& p = ctx.params;
  const int k = ctx.pos;
  if (ctx.size() < 3) {
    // two robots: walk straight at the other one
    Point2 other = ctx.at(ctx.right(k));
    double gap = dist(ctx.self(), other) - 2.0;
    if (gap <= p.tau) return stay(ctx, "pair:touching");
    return {ctx.self() + gap * unit(other - ctx.self()), "pair"};
  }
  RingState rs(ctx);
  // close a gap to a hull neighbour by walking along the shared edge; the
  // hull only loses the triangle cut off behind the walker. Clockwise first,
  // otherwise counter-clockwise so tangent pairs can leapfrog down thin hulls.
  bool any_gap = false;
  for (int nb : {rs.Rt(k), rs.L(k)}) {
    Point2 c = rs.pts[nb];
    double gap = dist(ctx.self(), c) - 2.0;
    if (gap <= p.tau) continue;
    any_gap = true;
    // a fixed share of the gap per cycle, whole only once it is tiny. Big
    // strides fold the ring into rhombi whose short diagonal closes first;
    // that jams, since sight across the diagonal forbids the last hair.
    double step = gap <= kCloseGap ? gap : std::max(kCloseGap, kGapShare * gap);
    Point2 target = rs.cap(k, ctx.self() + step * unit(c - ctx.self()));
    if (dist(target, ctx.self()) > p.tau) return {target, nb == rs.Rt(k) ? "close-right" : "close-left"};
  }
  return stay(ctx, any_gap ? "blocked" : "both-touching");
}

ProcResult proc_space_for_more(const ViewContext& ctx) {
  const AlgParams& p = ctx.params;
  const int k = ctx.pos;
  if (ctx.size() < 3) return stay(ctx, "degenerate");
  const int l = ctx.left(k), r = ctx.right(k);
  for (int j = 0; j < ctx.size(); ++j) {
    if (j == k || j == l || j == r) continue;
    if (!touching(ctx.self(), ctx.at(j), p.tau)) continue;
    auto out = ctx.outward(ctx.at(l), ctx.at(r));
    if (!out) return stay(ctx, "pinch:no-direction");
    return {ctx.self() + (half_n(p) - p.epsilon) * *out, "pinch"};
  }
  return stay(ctx, "room");
}

ProcResult proc_no_space_for_more(const ViewContext& ctx) {
  const AlgParams& p = ctx.params;
  const int k = ctx.pos;
  if (ctx.size() < 3) return stay(ctx, "degenerate");
  const Point2 ci = ctx.self();
  const Point2 cl = ctx.at(ctx.left(k)), cr = ctx.at(ctx.right(k));
  auto out = ctx.outward(cl, cr);
  if (!out) return stay(ctx, "no-direction");
  const Point2 m = 0.5 * (cl + cr);
  const double h = ray_exit(ctx.hull.vertices, m, *out);
  const Point2 far = m + (h + half_n(p) - p.epsilon) * *out;

  const auto& members = ctx.hull.members;
  auto keeps_members = [&](Point2 q) {
    std::vector<Point2> moved = ctx.view->centers;
    moved[0] = q;
    return hull_boundary(moved, p.tau).members == members;
  };
  auto old_inside = [&](Point2 q) {
    std::vector<Point2> moved = ctx.view->centers;
    moved[0] = q;
    return point_in_convex_polygon(ci, hull_boundary(moved, p.tau).vertices, p.tau);
  };

  // farthest admissible point on [m, far]: coarse scan from the far end, then refine
  constexpr int kSteps = 64;
  int hit = -1;
  for (int s = kSteps; s >= 0; --s)
    if (keeps_members(m + (static_cast<double>(s) / kSteps) * (far - m))) {
      hit = s;
      break;
    }
  if (hit >= 0) {
    double lo = static_cast<double>(hit) / kSteps, hi = std::min(1.0, lo + 1.0 / kSteps);
    if (hit < kSteps)
      for (int it = 0; it < 20; ++it) {
        double mid = 0.5 * (lo + hi);
        (keeps_members(m + mid * (far - m)) ? lo : hi) = mid;
      }
    Point2 q = m + lo * (far - m);
    if (old_inside(q)) return {q, "expand"};
  }
  // never shrink the hull: push straight away from the chord instead
  Point2 dir = unit(ci - m);
  Point2 tip = ci + (half_n(p) - p.epsilon) * dir;
  double t = bisect_max([&](double s) { return keeps_members(ci + s * (tip - ci)); }, 20);
  Point2 q = ci + t * (tip - ci);
  if (dist(q, ci) <= p.tau) return stay(ctx, "blocked");
  return {q, "expand-radial"};
}

ProcResult proc_see_one_robot(const ViewContext& ctx) { return stay(ctx, "end-of-line"); }

ProcResult proc_see_two_robot(const ViewContext& ctx, Rng& rng) {
  const AlgParams& p = ctx.params;
  const int k = ctx.pos;
  const Point2 ci = ctx.self();
  const Point2 cl = ctx.at(ctx.left(k)), cr = ctx.at(ctx.right(k));
  ProcResult res;
  auto out = ctx.outward(cl, cr);
  Point2 dir;
  if (out) {
    dir = *out;
  } else {
    dir = unit(perp(cr - cl));
    if (rng.below(2) == 1) dir = -1.0 * dir;
    res.used_random = true;
  }
  double now = dot(ci - cl, dir);  // current offset from the chord on dir's side
  double step_p = half_n(p) - p.epsilon;
  double step_cap = std::max(0.0, 1.0 / p.n - now);
  res.target = ci + std::min(step_p, step_cap) * dir;
  res.branch = step_p <= step_cap ? "push" : "push-capped";
  return res;
}

namespace {

struct InteriorGoal {
  Point2 aim;     // the point whose proximity is compared
  Point2 target;  // where the robot actually heads
};

// Straight path from the observer to q is clear of every other visible robot.
double path_reach(const ViewContext& ctx, Point2 q) {
  auto others = others_of(ctx);
  return first_tangency(ctx.self(), q, others, ctx.params.tau).value_or(1.0);
}

std::optional<InteriorGoal> interior_goal(const ViewContext& ctx, bool use_find_points) {
  const AlgParams& p = ctx.params;
  const Point2 ci = ctx.self();
  const auto ring = ctx.ring_points();
  const int R = static_cast<int>(ring.size());
  std::vector<InteriorGoal> goals;
  auto by_distance = [&](std::vector<std::pair<Point2, int>>& v) {
    std::stable_sort(v.begin(), v.end(), [&](auto& a, auto& b) {
      double da = dist(a.first, ci), db = dist(b.first, ci);
      if (std::abs(da - db) > p.tau) return da < db;
      return a.second < b.second;  // clockwise-first
    });
  };
  if (use_find_points && !ctx.hull.degenerate) {
    auto fp = find_points(ring, p);
    std::vector<std::pair<Point2, int>> cand;
    for (auto& a : fp.audit)
      if (a.accepted) cand.push_back({a.p, a.left});
    by_distance(cand);
    for (auto& [x, l] : cand) {
      double s = ray_exit(ctx.hull.vertices, ci, x - ci);
      Point2 cross_pt = std::isfinite(s) && s < 1.0 ? ci + s * (x - ci) : x;
      goals.push_back({x, cross_pt});
      goals.push_back({x, 0.5 * (ring[l] + ring[(l + 1) % R])});
    }
  }
  std::vector<std::pair<Point2, int>> mids;
  for (int l = 0; l < R && R >= 2; ++l)
    if (dist(ring[l], ring[(l + 1) % R]) >= kRoomForOne - p.tau) mids.push_back({0.5 * (ring[l] + ring[(l + 1) % R]), l});
  by_distance(mids);
  for (auto& [mpt, l] : mids) goals.push_back({mpt, mpt});
  if (goals.empty()) return std::nullopt;
  // first goal whose straight path is clear; otherwise the one we get farthest toward
  double best = -1;
  std::optional<InteriorGoal> pick;
  for (auto& g : goals) {
    double t = path_reach(ctx, g.target);
    if (t >= 1.0 - 1e-12) return g;
    if (t > best + 1e-12) best = t, pick = g;
  }
  if (best <= 1e-9) return std::nullopt;
  return pick;
}

ProcResult head_for(const ViewContext& ctx, std::optional<InteriorGoal> goal, const char* why, bool proximity) {
  if (!goal) return stay(ctx, std::string(why) + ":nowhere");
  const AlgParams& p = ctx.params;
  const Point2 ci = ctx.self();
  if (proximity) {
    const double mine = dist(ci, goal->aim);
    for (size_t j = 1; j < ctx.view->centers.size(); ++j) {
      Point2 cj = ctx.view->centers[j];
      if (!touching(ci, cj, p.tau) || ctx.hull.is_member(static_cast<int>(j))) continue;
      double theirs = dist(cj, goal->aim);
      if (theirs < mine - p.tau) return stay(ctx, std::string(why) + ":yield");
      // tie: only the rightmost (facing the goal) goes
      if (theirs <= mine + p.tau && cross(goal->aim - ci, cj - ci) < 0) return stay(ctx, std::string(why) + ":yield-tie");
    }
  }
  return {goal->target, why};
}

}  // namespace

ProcResult proc_is_touching(const ViewContext& ctx) { return head_for(ctx, interior_goal(ctx, true), "touching", true); }

ProcResult proc_to_change(const ViewContext& ctx) { return head_for(ctx, interior_goal(ctx, false), "midpoint", false); }

ProcResult proc_not_change(const ViewContext& ctx) { return head_for(ctx, interior_goal(ctx, true), "candidate", false); }

// ---------------------------------------------------------------------------

ComputeOutcome run_compute(const LocalView& view, const AlgParams& params, Rng& rng) {
  ViewContext ctx(view, params);
  ComputeOutcome out;
  ComputeState s = S::Start;
  out.path.push_back(s);
  auto step = [&](ComputeState next) {
    if (!legal_transition(s, next)) throw ModelIntegrityError("illegal compute transition");
    s = next;
    out.path.push_back(s);
  };
  while (!is_terminal(s)) {
    switch (s) {
      case S::Start: step(proc_start(ctx)); break;
      case S::OnConvexHull: step(proc_on_convex_hull(ctx)); break;
      case S::AllOnConvexHull: step(proc_all_on_convex_hull(ctx)); break;
      case S::NotAllOnConvexHull: step(proc_not_all_on_convex_hull(ctx)); break;
      case S::NotOnStraightLine: step(proc_not_on_straight_line(ctx)); break;
      case S::OnStraightLine: step(proc_on_straight_line(ctx)); break;
      case S::NotOnConvexHull: step(proc_not_on_convex_hull(ctx)); break;
      case S::NotTouching: step(proc_not_touching(ctx)); break;
      default: throw ModelIntegrityError("no procedure for state " + std::string(state_name(s)));
    }
  }
  ProcResult r;
  switch (s) {
    case S::Connected:
      out.terminate = true;
      out.target = view.self();
      out.branch = "terminate";
      return out;
    case S::NotConnected: r = proc_not_connected(ctx); break;
    case S::SpaceForMore: r = proc_space_for_more(ctx); break;
    case S::NoSpaceForMore: r = proc_no_space_for_more(ctx); break;
    case S::SeeOneRobot: r = proc_see_one_robot(ctx); break;
    case S::SeeTwoRobot: r = proc_see_two_robot(ctx, rng); break;
    case S::IsTouching: r = proc_is_touching(ctx); break;
    case S::ToChange: r = proc_to_change(ctx); break;
    case S::NotChange: r = proc_not_change(ctx); break;
    default: throw ModelIntegrityError("unexpected terminal state");
  }
  out.target = r.target;
  out.branch = std::move(r.branch);
  out.used_random = r.used_random;
  return out;
}

}  // namespace fatbots
