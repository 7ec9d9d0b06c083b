#include <set>

#include "doctest.h"
#include "fatbots/io.hpp"
#include "fatbots/simulator.hpp"
#include "fatbots/verify.hpp"

using namespace fatbots;

namespace {

const std::vector<Point2> kTangent4{{0, 0}, {2, 0}, {2, 2}, {0, 2}};
const std::vector<Point2> kSquare4{{0, 0}, {10, 0}, {10, 10}, {0, 10}};

// robot 0 of a two-robot world moving along +x towards target
SimState mover(Point2 target, std::vector<Point2> cfg = {{0, 0}, {0, 20}}) {
  SimState s = init(cfg, static_cast<int>(cfg.size()), std::nullopt, 0.05, 1);
  auto p = std::make_shared<Provenance>();
  p->computed = true;
  p->start = cfg[0];
  p->target = target;
  s.robots[0].phase = Phase::Move;
  s.robots[0].prov = p;
  return s;
}

Event ev(EventKind k, std::vector<int> robots, std::vector<std::pair<int, double>> adv = {}) {
  Event e;
  e.kind = k;
  e.robots = std::move(robots);
  e.advances = std::move(adv);
  return e;
}

}  // namespace

TEST_CASE("init") {
  SimState s = init(kTangent4, 4, std::nullopt, 0.05, 1);
  for (auto& r : s.robots) CHECK(r.phase == Phase::Wait);
  std::vector<Point2> overlap{{0, 0}, {1.5, 0}};
  CHECK_THROWS_AS(init(overlap, 2, std::nullopt, 0.05, 1), ModelIntegrityError);
  CHECK_THROWS_AS(init(kTangent4, 5, std::nullopt, 0.05, 1), std::invalid_argument);
  CHECK_THROWS_AS(init(kTangent4, 4, std::nullopt, 0.0, 1), std::invalid_argument);
}

TEST_CASE("look fills in a snapshot") {
  SimState s = init(kSquare4, 4, std::nullopt, 0.05, 1);
  Event e = ev(EventKind::Look, {0});
  apply_event(s, e);
  CHECK(s.robots[0].phase == Phase::Look);
  REQUIRE(s.robots[0].snapshot);
  CHECK(s.robots[0].snapshot->centers.size() == 4);
  CHECK(s.event_count == 1);
  // a second Look on the same robot is illegal and changes nothing
  Event again = ev(EventKind::Look, {0});
  CHECK_THROWS_AS(apply_event(s, again), IllegalEvent);
  CHECK(s.event_count == 1);
  CHECK(s.robots[0].phase == Phase::Look);
}

TEST_CASE("stop respects the liveness distance") {
  SimState s = mover({10, 0});
  Event early = ev(EventKind::Stop, {0}, {{0, 0.04}});
  CHECK_THROWS_AS(apply_event(s, early), IllegalEvent);
  CHECK(s.config[0] == Point2{0, 0});
  CHECK(s.robots[0].phase == Phase::Move);
  Event enough = ev(EventKind::Stop, {0}, {{0, 0.05}});
  apply_event(s, enough);
  CHECK(s.config[0].x == doctest::Approx(0.05));
  CHECK(s.robots[0].phase == Phase::Wait);
  // a short plan only has to be finished
  SimState t = mover({0.01, 0});
  Event tiny = ev(EventKind::Stop, {0}, {{0, 0.01}});
  apply_event(t, tiny);
  CHECK(t.config[0].x == doctest::Approx(0.01));
}

TEST_CASE("arrive is clipped at the first tangency") {
  SimState s = mover({10, 0}, {{0, 0}, {5, 0}});
  Event a = ev(EventKind::Arrive, {0});
  apply_event(s, a);
  CHECK(s.config[0].x == doctest::Approx(3.0));
  CHECK(s.robots[0].phase == Phase::Wait);
  CHECK(a.clipped == std::vector<int>{0});
  // unobstructed arrival lands exactly on the target
  SimState t = mover({10, 0});
  Event b = ev(EventKind::Arrive, {0});
  apply_event(t, b);
  CHECK(t.config[0] == Point2{10, 0});
}

TEST_CASE("bystanders move with the event and stop at tangency") {
  SimState s = mover({10, 0}, {{0, 0}, {0, 20}, {20, 20}});
  // robot 1 also moving, towards robot 2
  auto p = std::make_shared<Provenance>();
  p->computed = true;
  p->start = {0, 20};
  p->target = {30, 20};
  s.robots[1].phase = Phase::Move;
  s.robots[1].prov = p;
  Event e = ev(EventKind::Stop, {0}, {{0, 1.0}, {1, 100.0}});
  apply_event(s, e);
  CHECK(s.config[0].x == doctest::Approx(1.0));
  CHECK(s.config[1].x == doctest::Approx(18.0));
  CHECK(s.robots[1].phase == Phase::Wait);
  CHECK(std::set<int>(e.clipped.begin(), e.clipped.end()) == std::set<int>{1});
}

TEST_CASE("collide needs a tangency among the named robots") {
  SimState s = mover({10, 0}, {{0, 0}, {6, 0}});
  auto p = std::make_shared<Provenance>();
  p->computed = true;
  p->start = {6, 0};
  p->target = {-10, 0};
  s.robots[1].phase = Phase::Move;
  s.robots[1].prov = p;
  Event lone = ev(EventKind::Collide, {0});
  CHECK_THROWS_AS(apply_event(s, lone), IllegalEvent);
  Event c = ev(EventKind::Collide, {0, 1});
  apply_event(s, c);
  CHECK(dist(s.config[0], s.config[1]) == doctest::Approx(2.0));
  CHECK(s.robots[0].phase == Phase::Wait);
  CHECK(s.robots[1].phase == Phase::Wait);
}

TEST_CASE("fair run on the tangent square terminates at once") {
  SimState s = init(kTangent4, 4, std::nullopt, 0.05, 1);
  auto sched = make_scheduler("fair", 1, 4);
  Trace tr = run(s, *sched, 1000);
  CHECK_FALSE(tr.truncated);
  CHECK(gathering_achieved(s));
  // Look, Compute, Done for each robot in turn
  REQUIRE(tr.records.size() == 12);
  for (int r = 0; r < 4; ++r) {
    CHECK(tr.records[3 * r].event.kind == EventKind::Look);
    CHECK(tr.records[3 * r + 1].event.kind == EventKind::Compute);
    CHECK(tr.records[3 * r + 2].event.kind == EventKind::Done);
  }
}

TEST_CASE("fair run on the spread square gathers") {
  SimState s = init(kSquare4, 4, std::nullopt, 0.05, 1);
  auto sched = make_scheduler("fair", 1, 4);
  Trace tr = run(s, *sched, 200000);
  CHECK_FALSE(tr.truncated);
  CHECK(gathering_achieved(s));
  TraceFacts f(tr);
  for (auto& v : verify_all(f)) CHECK_MESSAGE(v.ok(), v.rule);
}

TEST_CASE("budget of one event truncates") {
  SimState s = init(kSquare4, 4, std::nullopt, 0.05, 1);
  auto sched = make_scheduler("fair", 1, 4);
  Trace tr = run(s, *sched, 1);
  CHECK(tr.truncated);
  CHECK(tr.records.size() == 1);
}

TEST_CASE("random scheduler replays and keeps every robot going") {
  Scenario sc = gen_scenario(5, 3, 50);
  sc.scheduler = "random";
  sc.max_events = 3000;
  Trace a = run_scenario(sc), b = run_scenario(sc);
  CHECK(trace_to_string(a) == trace_to_string(b));
  // every robot acts within any window of fairness_bound events
  const long F = fairness_bound(5);
  for (int r = 0; r < 5; ++r) {
    long last = -1;
    bool done = false;
    for (auto& rec : a.records) {
      if (std::find(rec.event.robots.begin(), rec.event.robots.end(), r) != rec.event.robots.end()) {
        CHECK(rec.index - last <= F);
        last = rec.index;
      }
      done = done || rec.phase[r] == Phase::Terminate;
      if (done) break;
    }
  }
}

TEST_CASE("per-robot phases walk the lifecycle") {
  Scenario sc = gen_scenario(4, 9, 40);
  sc.scheduler = "random";
  sc.max_events = 4000;
  Trace tr = run_scenario(sc);
  std::vector<Phase> prev(4, Phase::Wait);
  auto allowed = [](Phase a, Phase b) {
    if (a == b) return true;
    switch (a) {
      case Phase::Wait: return b == Phase::Look;
      case Phase::Look: return b == Phase::Compute;
      case Phase::Compute: return b == Phase::Move || b == Phase::Terminate;
      case Phase::Move: return b == Phase::Wait;
      case Phase::Terminate: return false;
    }
    return false;
  };
  for (auto& rec : tr.records)
    for (int r = 0; r < 4; ++r) {
      // a robot cut short by someone else's move drops back to Wait
      CHECK(allowed(prev[r], rec.phase[r]));
      prev[r] = rec.phase[r];
      for (int q = r + 1; q < 4; ++q) CHECK(dist(rec.pos[r], rec.pos[q]) >= 2.0 - 1e-9);
    }
}

TEST_CASE("schedulers by name") {
  for (auto name : {"fair", "random", "adv-type1", "adv-type2"}) {
    CHECK(known_policy(name));
    CHECK(make_scheduler(name, 1, 4)->name() == name);
  }
  CHECK_FALSE(known_policy("chaos"));
  CHECK_THROWS_AS(make_scheduler("chaos", 1, 4), std::invalid_argument);
}
