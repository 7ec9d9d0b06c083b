#include "fatbots/simulator.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace fatbots {

namespace {
constexpr std::array<std::string_view, 5> kPhases = {"Wait", "Look", "Compute", "Move", "Terminate"};
constexpr std::array<std::string_view, 7> kEvents = {"Look", "Compute", "Done", "Move", "Stop", "Collide", "Arrive"};
}  // namespace

std::string_view phase_name(Phase p) { return kPhases[static_cast<size_t>(p)]; }
std::string_view event_name(EventKind k) { return kEvents[static_cast<size_t>(k)]; }

std::optional<Phase> phase_from_name(std::string_view s) {
  for (size_t k = 0; k < kPhases.size(); ++k)
    if (kPhases[k] == s) return static_cast<Phase>(k);
  return std::nullopt;
}

std::optional<EventKind> event_from_name(std::string_view s) {
  for (size_t k = 0; k < kEvents.size(); ++k)
    if (kEvents[k] == s) return static_cast<EventKind>(k);
  return std::nullopt;
}

double RobotLifecycle::plan_length() const {
  return phase == Phase::Move && prov ? dist(prov->start, prov->target) : 0.0;
}

double RobotLifecycle::progress() const {
  double len = plan_length();
  return len > 0 ? std::min(1.0, traversed / len) : 0.0;
}

bool SimState::all_terminated() const {
  return std::all_of(robots.begin(), robots.end(), [](auto& r) { return r.phase == Phase::Terminate; });
}

SimState init(const std::vector<Point2>& config, int n, std::optional<double> epsilon, double delta,
              std::uint64_t seed, double tau) {
  if (static_cast<int>(config.size()) != n)
    throw std::invalid_argument("scenario lists " + std::to_string(config.size()) + " robots but n = " +
                                std::to_string(n));
  if (!(delta > 0)) throw std::invalid_argument("delta must be positive");
  for (Point2 p : config)
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw std::invalid_argument("non-finite robot position");
  require_no_overlap(config, tau);
  SimState s;
  s.config = config;
  s.robots.resize(config.size());
  s.params = make_params(n, epsilon, tau);
  s.delta = delta;
  s.rng = Rng(seed);
  return s;
}

namespace {

[[noreturn]] void reject(const std::string& why) { throw IllegalEvent(why); }

void reset_to(RobotLifecycle& r, Phase p) {
  r.phase = p;
  r.snapshot.reset();
  r.prov.reset();
  r.traversed = 0.0;
}

}  // namespace

void apply_event(SimState& st, Event& ev) {
  SimState s = st;
  const int n = s.n();
  const double tau = s.params.tau;
  ev.clipped.clear();

  auto valid = [&](int i) { return i >= 0 && i < n; };
  if (ev.robots.empty()) reject("event without robots");
  for (int i : ev.robots)
    if (!valid(i)) reject("robot index out of range");
  const int i = ev.robots.front();
  auto phase = [&](int k) { return s.robots[k].phase; };

  switch (ev.kind) {
    case EventKind::Look:
      if (phase(i) != Phase::Wait) reject("Look needs a waiting robot");
      break;
    case EventKind::Compute:
      if (phase(i) != Phase::Look) reject("Compute needs a robot in Look");
      break;
    case EventKind::Done:
      if (phase(i) != Phase::Compute || !s.robots[i].prov->terminate) reject("Done needs a terminate outcome");
      break;
    case EventKind::Move:
      if (phase(i) != Phase::Compute || s.robots[i].prov->terminate) reject("Move needs a point outcome");
      break;
    case EventKind::Stop:
    case EventKind::Arrive:
      if (phase(i) != Phase::Move) reject(std::string(event_name(ev.kind)) + " needs a moving robot");
      break;
    case EventKind::Collide: {
      if (ev.robots.size() < 2) reject("Collide needs at least two robots");
      auto sorted = ev.robots;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) reject("Collide lists a robot twice");
      for (int k : ev.robots)
        if (phase(k) != Phase::Move) reject("Collide needs moving robots");
      break;
    }
  }
  if (ev.kind != EventKind::Collide && ev.robots.size() != 1) reject("event takes exactly one robot");

  std::vector<double> adv(n, 0.0);
  std::vector<bool> seen(n, false);
  for (auto [k, a] : ev.advances) {
    if (!valid(k) || seen[k]) reject("bad advance entry");
    if (phase(k) != Phase::Move) reject("advance for a robot that is not moving");
    if (!(a >= 0) || !std::isfinite(a)) reject("negative advance");
    seen[k] = true;
    adv[k] = a;
  }
  const bool own_moves = ev.kind == EventKind::Stop || ev.kind == EventKind::Arrive || ev.kind == EventKind::Collide;
  if (ev.kind == EventKind::Arrive) adv[i] = INFINITY;
  if (ev.kind == EventKind::Collide)
    for (int k : ev.robots)
      if (!seen[k]) adv[k] = INFINITY;

  // movers advance one after another, each clipped against current positions
  std::vector<bool> clipped(n, false);
  for (int k = 0; k < n; ++k) {
    RobotLifecycle& r = s.robots[k];
    if (r.phase != Phase::Move || adv[k] <= 0) continue;
    const Point2 from = s.config[k], target = r.prov->target;
    const double rem = dist(from, target);
    if (rem == 0) continue;
    const bool to_end = adv[k] >= rem;
    const Point2 q = to_end ? target : from + (adv[k] / rem) * (target - from);
    std::vector<Point2> obstacles;
    for (int j = 0; j < n; ++j)
      if (j != k) obstacles.push_back(s.config[j]);
    auto t = first_tangency(from, q, obstacles, tau);
    if (t) {
      Point2 stop = from + *t * (q - from);
      r.traversed += dist(from, stop);
      s.config[k] = stop;
      clipped[k] = true;
      ev.clipped.push_back(k);
    } else {
      r.traversed += dist(from, q);
      s.config[k] = q;
    }
  }
  for (int k = 0; k < n; ++k)
    if (clipped[k] && !(own_moves && std::find(ev.robots.begin(), ev.robots.end(), k) != ev.robots.end()))
      reset_to(s.robots[k], Phase::Wait);

  RobotLifecycle& me = s.robots[i];
  switch (ev.kind) {
    case EventKind::Look: {
      me.phase = Phase::Look;
      me.snapshot = local_view(i, s.config, n, tau);
      auto p = std::make_shared<Provenance>();
      p->look_index = s.event_count;
      p->view_size = static_cast<int>(me.snapshot->centers.size());
      p->view_hull = static_cast<int>(me.snapshot->hull_members.size());
      me.prov = std::move(p);
      break;
    }
    case EventKind::Compute: {
      ComputeOutcome out = run_compute(*me.snapshot, s.params, s.rng);
      auto p = std::make_shared<Provenance>(*me.prov);
      p->computed = true;
      p->path = out.path;
      p->branch = out.branch;
      p->terminate = out.terminate;
      p->used_random = out.used_random;
      p->start = s.config[i];
      p->target = out.target;
      me.phase = Phase::Compute;
      me.prov = std::move(p);
      break;
    }
    case EventKind::Done: reset_to(me, Phase::Terminate); break;
    case EventKind::Move:
      me.phase = Phase::Move;
      me.traversed = 0.0;
      break;
    case EventKind::Stop:
      if (!clipped[i]) {
        double need = std::min(me.plan_length(), s.delta);
        if (me.traversed < need - 1e-12) reject("Stop before the robot covered min(|plan|, delta)");
      }
      reset_to(me, Phase::Wait);
      break;
    case EventKind::Arrive:
      if (!clipped[i] && !(s.config[i] == me.prov->target)) reject("Arrive short of the target");
      reset_to(me, Phase::Wait);
      break;
    case EventKind::Collide: {
      bool tangent = false;
      for (size_t a = 0; a < ev.robots.size(); ++a)
        for (size_t b = a + 1; b < ev.robots.size(); ++b)
          tangent = tangent || dist(s.config[ev.robots[a]], s.config[ev.robots[b]]) <= 2.0 + tau;
      if (!tangent) reject("Collide without a tangency inside R");
      for (int k : ev.robots) reset_to(s.robots[k], Phase::Wait);
      break;
    }
  }
  require_no_overlap(s.config, tau);
  ++s.event_count;
  st = std::move(s);
}

Trace run(SimState& state, Scheduler& sched, long max_events) { return run(state, sched, max_events, {}); }

Trace run(SimState& state, Scheduler& sched, long max_events, const std::function<bool(const SimState&)>& stop) {
  if (max_events < 1) throw std::invalid_argument("max_events must be at least 1");
  Trace tr;
  tr.n = state.n();
  long rejected_in_a_row = 0;
  while (!state.all_terminated() && static_cast<long>(tr.records.size()) < max_events) {
    Event ev = sched.next(state);
    try {
      apply_event(state, ev);
    } catch (const IllegalEvent& e) {
      tr.rejected.push_back(std::string(event_name(ev.kind)) + ": " + e.what());
      if (++rejected_in_a_row > 1000) break;
      continue;
    }
    rejected_in_a_row = 0;
    TraceRecord rec;
    rec.index = static_cast<long>(tr.records.size());
    rec.event = std::move(ev);
    rec.pos = state.config;
    for (auto& r : state.robots) {
      rec.phase.push_back(r.phase);
      rec.prov.push_back(r.prov);
      rec.traversed.push_back(r.traversed);
    }
    tr.records.push_back(std::move(rec));
    if (stop && stop(state)) break;
  }
  tr.truncated = !state.all_terminated();
  return tr;
}

}  // namespace fatbots
