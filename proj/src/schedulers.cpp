#include <algorithm>
#include <cmath>

#include "fatbots/simulator.hpp"

namespace fatbots {

int fairness_bound(int n) { return 50 * n; }

bool known_policy(std::string_view policy) {
  return policy == "fair" || policy == "random" || policy == "adv-type1" || policy == "adv-type2";
}

namespace {

double remaining(const SimState& s, int i) {
  const auto& r = s.robots[i];
  return r.prov ? dist(s.config[i], r.prov->target) : 0.0;
}

// The natural next event of robot i when it runs undisturbed.
Event cycle_step(const SimState& s, int i) {
  const auto& r = s.robots[i];
  switch (r.phase) {
    case Phase::Wait: return {EventKind::Look, {i}, {}, {}};
    case Phase::Look: return {EventKind::Compute, {i}, {}, {}};
    case Phase::Compute: return {r.prov->terminate ? EventKind::Done : EventKind::Move, {i}, {}, {}};
    case Phase::Move: return {EventKind::Arrive, {i}, {}, {}};
    case Phase::Terminate: break;
  }
  throw std::logic_error("cycle_step on a terminated robot");
}

// Round robin: each robot runs a complete Look-Compute-Move cycle in turn.
class FairScheduler : public Scheduler {
 public:
  Event next(const SimState& s) override {
    const int n = s.n();
    for (int guard = 0; guard <= n; ++guard) {
      const auto& r = s.robots[cur_];
      bool finished = r.phase == Phase::Terminate || (started_ && r.phase == Phase::Wait);
      if (!finished) {
        started_ = true;
        return cycle_step(s, cur_);
      }
      cur_ = (cur_ + 1) % n;
      started_ = false;
    }
    throw std::logic_error("fair scheduler: every robot has terminated");
  }
  std::string_view name() const override { return "fair"; }

 private:
  int cur_ = 0;
  bool started_ = false;
};

class RandomScheduler : public Scheduler {
 public:
  RandomScheduler(std::uint64_t seed, int n) : rng_(seed ^ 0x9e3779b97f4a7c15ULL), last_(n, 0) {}

  Event next(const SimState& s) override {
    int i = pick(s);
    return step(s, i, true);
  }
  std::string_view name() const override { return "random"; }

 protected:
  // overdue robot if any, otherwise uniform among the live ones
  int pick(const SimState& s, int exclude = -1) {
    const int n = s.n();
    const long now = s.event_count;
    const long limit = fairness_bound(n) - n;
    int overdue = -1;
    std::vector<int> live;
    for (int k = 0; k < n; ++k) {
      if (s.robots[k].phase == Phase::Terminate) continue;
      live.push_back(k);
      if (now - last_[k] >= limit && (overdue < 0 || last_[k] < last_[overdue])) overdue = k;
    }
    if (overdue >= 0) return overdue;
    std::vector<int> pool;
    for (int k : live)
      if (k != exclude) pool.push_back(k);
    if (pool.empty()) pool = live;
    return pool[rng_.below(pool.size())];
  }

  long overdue_by(const SimState& s, int i) const { return s.event_count - last_[i]; }

  Event step(const SimState& s, int i, bool jitter_others) {
    last_[i] = s.event_count;
    Event ev = cycle_step(s, i);
    if (ev.kind == EventKind::Arrive) {
      const double rem = remaining(s, i);
      if (rem > 1e-12 && rng_.below(2) == 0) {
        const auto& r = s.robots[i];
        double need = std::max(0.0, std::min(r.plan_length(), s.delta) - r.traversed);
        ev.kind = EventKind::Stop;
        ev.advances.push_back({i, rng_.uniform(need, rem)});
      }
    }
    if (jitter_others) add_drift(s, ev);
    return ev;
  }

  // other movers drift along their paths during the event
  void add_drift(const SimState& s, Event& ev, int frozen = -1) {
    for (int k = 0; k < s.n(); ++k) {
      if (s.robots[k].phase != Phase::Move || k == frozen) continue;
      if (std::find(ev.robots.begin(), ev.robots.end(), k) != ev.robots.end()) continue;
      if (rng_.below(2) == 0) continue;
      ev.advances.push_back({k, rng_.uniform(0.0, remaining(s, k))});
    }
  }

  Rng rng_;
  std::vector<long> last_;
};

// Holds back one robot whose plan came from a stale view while the rest run
// complete cycles; the held robot is only released when fairness forces it.
class AdversaryScheduler : public RandomScheduler {
 public:
  AdversaryScheduler(std::uint64_t seed, int n, int type) : RandomScheduler(seed, n), type_(type) {}

  Event next(const SimState& s) override {
    if (held_ >= 0) {
      const auto& r = s.robots[held_];
      if (r.phase == Phase::Wait || r.phase == Phase::Terminate || !r.prov || r.prov.get() != held_prov_)
        held_ = -1;
    }
    if (held_ < 0)
      for (int k = 0; k < s.n(); ++k)
        if (s.robots[k].phase == Phase::Compute && target_plan(s, k)) {
          held_ = k;
          held_prov_ = s.robots[k].prov.get();
          ++holds_;
          break;
        }
    if (held_ < 0) return RandomScheduler::next(s);

    if (overdue_by(s, held_) >= fairness_bound(s.n()) - s.n()) {
      last_[held_] = s.event_count;
      const auto& r = s.robots[held_];
      if (r.phase == Phase::Compute) return {EventKind::Move, {held_}, {}, {}};
      // crawl: the least motion liveness allows, then stop
      double need = std::max(0.0, std::min(r.plan_length(), s.delta) - r.traversed);
      return {EventKind::Stop, {held_}, {{held_, need}}, {}};
    }
    // everyone else runs full cycles in round robin
    const int n = s.n();
    for (int guard = 0; guard < n; ++guard) {
      int k = (rr_ + guard) % n;
      if (k == held_ || s.robots[k].phase == Phase::Terminate) continue;
      rr_ = s.robots[k].phase == Phase::Move || (s.robots[k].phase == Phase::Compute && s.robots[k].prov->terminate)
                ? (k + 1) % n
                : k;
      last_[k] = s.event_count;
      Event ev = cycle_step(s, k);
      if (type_ == 2 && ev.kind == EventKind::Arrive && collinear_middle(s, k)) {
        // let the first collinear-middle robot move only slightly
        const auto& r = s.robots[k];
        ev.kind = EventKind::Stop;
        ev.advances.push_back({k, std::max(0.0, std::min(r.plan_length(), s.delta) - r.traversed)});
      }
      return ev;
    }
    return RandomScheduler::next(s);
  }
  std::string_view name() const override { return type_ == 1 ? "adv-type1" : "adv-type2"; }

 private:
  static bool collinear_middle(const SimState& s, int k) {
    const auto& p = s.robots[k].prov;
    return p && p->computed && p->path.back() == ComputeState::SeeTwoRobot;
  }

  bool target_plan(const SimState& s, int k) const {
    const auto& p = s.robots[k].prov;
    if (!p || !p->computed || p->terminate || dist(p->start, p->target) == 0) return false;
    if (type_ == 1) return p->path.back() == ComputeState::NoSpaceForMore && p->view_hull < s.n();
    return p->path.back() == ComputeState::SeeTwoRobot;
  }

  int type_;
  int held_ = -1;
  const Provenance* held_prov_ = nullptr;
  int rr_ = 0;
  long holds_ = 0;
};

}  // namespace

std::unique_ptr<Scheduler> make_scheduler(std::string_view policy, std::uint64_t seed, int n) {
  if (policy == "fair") return std::make_unique<FairScheduler>();
  if (policy == "random") return std::make_unique<RandomScheduler>(seed, n);
  if (policy == "adv-type1") return std::make_unique<AdversaryScheduler>(seed, n, 1);
  if (policy == "adv-type2") return std::make_unique<AdversaryScheduler>(seed, n, 2);
  throw std::invalid_argument("unknown scheduler '" + std::string(policy) + "'");
}

}  // namespace fatbots
