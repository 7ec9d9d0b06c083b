#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fatbots/functions.hpp"
#include "fatbots/rng.hpp"
#include "fatbots/visibility.hpp"

namespace fatbots {

enum class ComputeState {
  Start,
  OnConvexHull,
  AllOnConvexHull,
  Connected,
  NotConnected,
  NotAllOnConvexHull,
  NotOnStraightLine,
  SpaceForMore,
  NoSpaceForMore,
  OnStraightLine,
  SeeOneRobot,
  SeeTwoRobot,
  NotOnConvexHull,
  IsTouching,
  NotTouching,
  ToChange,
  NotChange,
};

std::string_view state_name(ComputeState s);
std::optional<ComputeState> state_from_name(std::string_view name);
bool is_terminal(ComputeState s);
std::vector<ComputeState> successors(ComputeState s);
bool legal_transition(ComputeState from, ComputeState to);
// starts at Start, every step legal, ends in a terminal state
bool legal_path(std::span<const ComputeState> path);

struct ComputeOutcome {
  bool terminate = false;
  Point2 target;
  std::vector<ComputeState> path;
  std::string branch;  // which rule of the terminal procedure fired
  bool used_random = false;

  ComputeState terminal() const { return path.back(); }
};

// Hull-centred reading of a LocalView shared by all procedures.
struct ViewContext {
  const LocalView* view = nullptr;
  AlgParams params;
  HullBoundary hull;
  std::vector<int> ring;  // hull members, clockwise, as indices into centers
  int pos = -1;           // observer's position in ring
  Point2 interior;        // reference point inside the hull

  ViewContext(const LocalView& v, const AlgParams& p);

  int size() const { return static_cast<int>(ring.size()); }
  Point2 at(int ring_pos) const;
  int left(int ring_pos) const;
  int right(int ring_pos) const;
  Point2 self() const { return view->centers[0]; }
  std::vector<Point2> ring_points() const;
  // unit normal of chord a-b pointing away from the hull interior
  std::optional<Point2> outward(Point2 a, Point2 b) const;
  bool full() const;  // |V| = n and |CH(V)| = n
};

ComputeOutcome run_compute(const LocalView& view, const AlgParams& params, Rng& rng);

// Individual procedures, exposed for tests.
ComputeState proc_start(const ViewContext& ctx);
ComputeState proc_on_convex_hull(const ViewContext& ctx);
ComputeState proc_all_on_convex_hull(const ViewContext& ctx);
ComputeState proc_not_all_on_convex_hull(const ViewContext& ctx);
ComputeState proc_not_on_straight_line(const ViewContext& ctx);
ComputeState proc_on_straight_line(const ViewContext& ctx);
ComputeState proc_not_on_convex_hull(const ViewContext& ctx);
ComputeState proc_not_touching(const ViewContext& ctx);

struct ProcResult {
  Point2 target;
  std::string branch;
  bool used_random = false;
};

ProcResult proc_not_connected(const ViewContext& ctx);
ProcResult proc_space_for_more(const ViewContext& ctx);
ProcResult proc_no_space_for_more(const ViewContext& ctx);
ProcResult proc_see_one_robot(const ViewContext& ctx);
ProcResult proc_see_two_robot(const ViewContext& ctx, Rng& rng);
ProcResult proc_is_touching(const ViewContext& ctx);
ProcResult proc_to_change(const ViewContext& ctx);
ProcResult proc_not_change(const ViewContext& ctx);

}  // namespace fatbots
