#include "doctest.h"
#include "fatbots/io.hpp"
#include "fatbots/verify.hpp"

using namespace fatbots;
using S = ComputeState;

namespace {

const std::vector<Point2> kSquare4{{0, 0}, {10, 0}, {10, 10}, {0, 10}};
const std::vector<Point2> kTangent4{{0, 0}, {2, 0}, {2, 2}, {0, 2}};

TraceRecord record(long idx, std::vector<Point2> pos, std::vector<Phase> ph = {}) {
  TraceRecord r;
  r.index = idx;
  r.event.kind = EventKind::Look;
  r.event.robots = {0};
  if (ph.empty()) ph.assign(pos.size(), Phase::Wait);
  r.phase = ph;
  r.prov.assign(pos.size(), nullptr);
  r.traversed.assign(pos.size(), 0.0);
  r.pos = std::move(pos);
  return r;
}

std::shared_ptr<Provenance> plan(S terminal, int view_size, int view_hull, Point2 start, Point2 target) {
  auto p = std::make_shared<Provenance>();
  p->computed = true;
  p->view_size = view_size;
  p->view_hull = view_hull;
  p->path = {S::Start, S::OnConvexHull, S::NotAllOnConvexHull};
  if (terminal == S::NoSpaceForMore || terminal == S::SpaceForMore) p->path.push_back(S::NotOnStraightLine);
  if (terminal == S::SeeTwoRobot || terminal == S::SeeOneRobot) p->path.push_back(S::OnStraightLine);
  p->path.push_back(terminal);
  p->start = start;
  p->target = target;
  return p;
}

Trace make_trace(std::vector<TraceRecord> recs) {
  Trace t;
  t.n = static_cast<int>(recs.front().pos.size());
  t.records = std::move(recs);
  return t;
}

}  // namespace

TEST_CASE("configuration predicates") {
  CHECK(is_fully_visible(kSquare4));
  std::vector<Point2> row{{0, 0}, {2, 0}, {4, 0}};
  CHECK_FALSE(is_fully_visible(row));
  std::vector<Point2> two{{0, 0}, {7, 1}};
  CHECK(is_fully_visible(two));
  CHECK(is_connected_config(kTangent4));
  CHECK_FALSE(is_connected_config(kSquare4));
  std::vector<Point2> chain{{0, 0}, {2, 0}, {4, 0}, {6, 0}, {8, 0}};
  CHECK(is_connected_config(chain));

  std::vector<Phase> done(4, Phase::Terminate);
  CHECK(gathering_achieved(kTangent4, done));
  std::vector<Phase> one_waiting{Phase::Terminate, Phase::Terminate, Phase::Wait, Phase::Terminate};
  CHECK_FALSE(gathering_achieved(kTangent4, one_waiting));
  CHECK_FALSE(gathering_achieved(kSquare4, done));
}

TEST_CASE("hull monotone") {
  // an interior robot keeps the records incomplete, so the rule applies
  std::vector<Point2> a{{0, 0}, {10, 0}, {10, 10}, {0, 10}, {5, 5}};
  std::vector<Point2> grown{{-1, 0}, {10, 0}, {10, 10}, {0, 10}, {5, 5}};
  std::vector<Point2> shrunk{{1, 0}, {10, 0}, {10, 10}, {0, 10}, {5, 5}};
  {
    Trace t = make_trace({record(0, a), record(1, grown)});
    TraceFacts f(t);
    CHECK(check_hull_monotone(f).ok());
  }
  {
    Trace t = make_trace({record(0, a), record(1, shrunk), record(2, shrunk)});
    TraceFacts f(t);
    auto v = check_hull_monotone(f);
    REQUIRE(v.violations.size() == 1);
    CHECK(v.violations[0].index == 1);
    CHECK(v.violations[0].rule == "hull_monotone");
  }
  {
    Trace t = make_trace({record(0, a)});
    TraceFacts f(t);
    CHECK(check_hull_monotone(f).ok());
  }
}

TEST_CASE("shrink while safe") {
  std::vector<Point2> smaller{{1, 1}, {9, 1}, {9, 9}, {1, 9}};
  std::vector<Point2> larger{{-1, 0}, {10, 0}, {10, 10}, {0, 10}};
  {
    Trace t = make_trace({record(0, kSquare4), record(1, smaller)});
    TraceFacts f(t);
    CHECK(check_shrink_while_safe(f).ok());
  }
  {
    Trace t = make_trace({record(0, kSquare4), record(1, larger)});
    TraceFacts f(t);
    auto v = check_shrink_while_safe(f);
    REQUIRE(v.violations.size() == 1);
    CHECK(v.violations[0].index == 1);
  }
  {
    // losing a hull member is reported too
    std::vector<Point2> inside{{0, 0}, {10, 0}, {10, 10}, {5, 5}};
    Trace t = make_trace({record(0, kSquare4), record(1, inside)});
    TraceFacts f(t);
    CHECK(check_shrink_while_safe(f).violations.size() == 1);
  }
  {
    // a bad record closes the fragment, later pairs are not judged
    auto r0 = record(0, kSquare4, {Phase::Compute, Phase::Wait, Phase::Wait, Phase::Wait});
    r0.prov[0] = plan(S::SeeTwoRobot, 4, 4, {0, 0}, {0.1, -0.1});
    Trace t = make_trace({r0, record(1, larger)});
    TraceFacts f(t);
    CHECK(f.bad(0));
    CHECK(check_shrink_while_safe(f).ok());
  }
}

TEST_CASE("bad and safe records") {
  auto wait = record(0, kSquare4);
  auto stale = record(1, kSquare4, {Phase::Move, Phase::Wait, Phase::Wait, Phase::Wait});
  stale.prov[0] = plan(S::NoSpaceForMore, 3, 3, {0, 0}, {-0.1, -0.1});
  auto stale_full = record(2, kSquare4, {Phase::Move, Phase::Wait, Phase::Wait, Phase::Wait});
  stale_full.prov[0] = plan(S::NoSpaceForMore, 4, 4, {0, 0}, {-0.1, -0.1});
  auto two = record(3, kSquare4, {Phase::Compute, Phase::Wait, Phase::Wait, Phase::Wait});
  two.prov[0] = plan(S::SeeTwoRobot, 4, 4, {0, 0}, {0.1, -0.1});
  std::vector<Point2> row{{0, 0}, {2, 0}, {4, 0}, {2, 5}};
  auto hidden = record(4, row, {Phase::Compute, Phase::Wait, Phase::Wait, Phase::Wait});
  hidden.prov[0] = plan(S::SeeTwoRobot, 3, 3, {0, 0}, {0.1, -0.1});
  Trace t = make_trace({wait, stale, stale_full, two, hidden});
  TraceFacts f(t);

  CHECK(is_safe(f, 0));
  CHECK_FALSE(is_safe(f, 1));
  CHECK(detect_bad_type1(f) == std::vector<long>{1});
  CHECK(detect_bad_type2(f) == std::vector<long>{3});
  // not fully visible: neither bad nor safe
  CHECK_FALSE(f.bad(4));
  CHECK_FALSE(is_safe(f, 4));

  auto v = check_no_bad_after_safe(f);
  REQUIRE(v.violations.size() == 2);
  CHECK(v.violations[0].index == 1);
  CHECK(v.violations[1].index == 3);

  Trace empty;
  TraceFacts g(empty);
  CHECK(detect_bad_type1(g).empty());
  CHECK(detect_bad_type2(g).empty());
}

TEST_CASE("no bad after safe is vacuous without a safe record") {
  std::vector<Point2> row{{0, 0}, {2, 0}, {4, 0}, {2, 5}};
  auto r = record(0, row, {Phase::Compute, Phase::Wait, Phase::Wait, Phase::Wait});
  r.prov[0] = plan(S::SeeTwoRobot, 3, 3, {2, 0}, {2, -0.1});
  Trace t = make_trace({r, record(1, row)});
  t.truncated = true;
  TraceFacts f(t);
  CHECK(check_no_bad_after_safe(f).ok());
  auto term = check_termination(f);
  CHECK(term.ok());
  CHECK_FALSE(term.warnings.empty());
}

TEST_CASE("termination and path checks on real runs") {
  Scenario sc;
  sc.n = 4;
  sc.robots = kTangent4;
  Trace t = run_scenario(sc);
  TraceFacts f(t);
  CHECK(check_termination(f).ok());
  CHECK(check_paths(f).ok());

  Scenario sq;
  sq.n = 4;
  sq.robots = kSquare4;
  sq.max_events = 10;
  Trace cut = run_scenario(sq);
  TraceFacts g(cut);
  CHECK(check_termination(g).ok());
  CHECK(check_termination(g).warnings.size() == 1);

  // an unfinished final state without truncation is a violation
  Trace odd = make_trace({record(0, kSquare4)});
  TraceFacts h(odd);
  CHECK_FALSE(check_termination(h).ok());

  // forged provenance with a skipped state
  auto r = record(0, kSquare4, {Phase::Compute, Phase::Wait, Phase::Wait, Phase::Wait});
  auto p = plan(S::SeeTwoRobot, 4, 4, {0, 0}, {0, 0});
  p->path = {S::Start, S::OnStraightLine, S::SeeTwoRobot};
  r.prov[0] = p;
  Trace forged = make_trace({r});
  TraceFacts k(forged);
  auto v = check_paths(k);
  REQUIRE(v.violations.size() == 1);
  CHECK(v.violations[0].detail.find("Start>OnStraightLine") != std::string::npos);
}

TEST_CASE("foreign traces without provenance get a warning") {
  Trace t = make_trace({record(0, kSquare4), record(1, kSquare4)});
  TraceFacts f(t);
  CHECK_FALSE(f.has_provenance());
  CHECK_FALSE(check_shrink_while_safe(f).warnings.empty());
  CHECK_FALSE(check_no_bad_after_safe(f).warnings.empty());
}
