#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fatbots/automaton.hpp"

namespace fatbots {

enum class Phase { Wait, Look, Compute, Move, Terminate };
enum class EventKind { Look, Compute, Done, Move, Stop, Collide, Arrive };

std::string_view phase_name(Phase p);
std::optional<Phase> phase_from_name(std::string_view s);
std::string_view event_name(EventKind k);
std::optional<EventKind> event_from_name(std::string_view s);

// What a robot knows and intends; shared between trace records.
struct Provenance {
  long look_index = -1;  // trace record of the Look that produced the snapshot
  int view_size = 0;
  int view_hull = 0;
  bool computed = false;  // past Compute: the fields below are meaningful
  std::vector<ComputeState> path;
  std::string branch;
  bool terminate = false;
  bool used_random = false;
  Point2 start;
  Point2 target;
};

struct RobotLifecycle {
  Phase phase = Phase::Wait;
  std::optional<LocalView> snapshot;
  std::shared_ptr<const Provenance> prov;  // set in Look, Compute and Move
  double traversed = 0.0;                  // distance covered by the current plan

  double plan_length() const;
  double progress() const;
};

struct Event {
  EventKind kind = EventKind::Look;
  std::vector<int> robots;                      // one robot, or the set R for Collide
  std::vector<std::pair<int, double>> advances; // distance each mover covers in this step
  std::vector<int> clipped;                     // filled in by apply_event
};

struct SimState {
  std::vector<Point2> config;
  std::vector<RobotLifecycle> robots;
  AlgParams params;
  double delta = 0.05;
  Rng rng{0};
  long event_count = 0;

  int n() const { return static_cast<int>(config.size()); }
  bool all_terminated() const;
};

class IllegalEvent : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

SimState init(const std::vector<Point2>& config, int n, std::optional<double> epsilon, double delta,
              std::uint64_t seed, double tau = kDefaultTau);

// Applies ev in place. On an illegal event throws IllegalEvent and leaves
// the state untouched.
void apply_event(SimState& state, Event& ev);

// ---------------------------------------------------------------------------

class Scheduler {
 public:
  virtual ~Scheduler() = default;
  virtual Event next(const SimState& s) = 0;
  virtual std::string_view name() const = 0;
};

// "fair", "random", "adv-type1", "adv-type2"; throws std::invalid_argument otherwise.
std::unique_ptr<Scheduler> make_scheduler(std::string_view policy, std::uint64_t seed, int n);
bool known_policy(std::string_view policy);

// random policy: maximum number of events between two steps of the same robot
int fairness_bound(int n);

struct TraceRecord {
  long index = 0;
  Event event;
  std::vector<Point2> pos;
  std::vector<Phase> phase;
  std::vector<std::shared_ptr<const Provenance>> prov;
  std::vector<double> traversed;
};

struct Trace {
  int n = 0;
  std::vector<TraceRecord> records;
  bool truncated = false;
  std::vector<std::string> rejected;  // illegal events proposed by the scheduler
};

// Runs until every robot terminates or max_events events have been applied.
Trace run(SimState& state, Scheduler& sched, long max_events);
// Same, but also ends early (as truncated) once stop returns true after an event.
Trace run(SimState& state, Scheduler& sched, long max_events, const std::function<bool(const SimState&)>& stop);

}  // namespace fatbots
