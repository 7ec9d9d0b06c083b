#include "fatbots/verify.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_set>

namespace fatbots {

bool is_fully_visible(std::span<const Point2> config, double tau) { return all_pairs_visible(config, tau); }

bool is_connected_config(std::span<const Point2> config, double tau) {
  const int n = static_cast<int>(config.size());
  if (n <= 1) return true;
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  int parts = n;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (dist(config[a], config[b]) <= 2.0 + tau) {
        int ra = find(a), rb = find(b);
        if (ra != rb) parent[ra] = rb, --parts;
      }
  return parts == 1;
}

bool gathering_achieved(std::span<const Point2> config, std::span<const Phase> phases, double tau) {
  return std::all_of(phases.begin(), phases.end(), [](Phase p) { return p == Phase::Terminate; }) &&
         is_connected_config(config, tau) && is_fully_visible(config, tau);
}

bool gathering_achieved(const SimState& s) {
  std::vector<Phase> ph;
  for (auto& r : s.robots) ph.push_back(r.phase);
  return gathering_achieved(s.config, ph, s.params.tau);
}

TraceFacts::TraceFacts(const Trace& tr, double tau) : tr_(&tr), tau_(tau), geo_of_(tr.records.size(), -1) {
  for (auto& rec : tr.records)
    for (auto& p : rec.prov)
      if (p) has_prov_ = true;
  // records that share positions share geometry
  for (size_t k = 0; k < tr.records.size(); ++k) {
    if (k > 0 && tr.records[k].pos == tr.records[k - 1].pos) {
      geo_of_[k] = geo_of_[k - 1];
      continue;
    }
    geo_of_[k] = static_cast<int>(geos_.size());
    Geo g;
    HullBoundary h = hull_boundary(tr.records[k].pos, tau);
    g.hull_size = static_cast<int>(h.members.size());
    g.polygon = std::move(h.vertices);
    geos_.push_back(std::move(g));
  }
}

TraceFacts::Geo& TraceFacts::geo(size_t k) { return geos_[geo_of_[k]]; }

int TraceFacts::hull_size(size_t k) { return geo(k).hull_size; }
const std::vector<Point2>& TraceFacts::hull_polygon(size_t k) { return geo(k).polygon; }

bool TraceFacts::fully_visible(size_t k) {
  Geo& g = geo(k);
  if (g.visible < 0) g.visible = is_fully_visible(tr_->records[k].pos, tau_);
  return g.visible;
}

bool TraceFacts::connected(size_t k) {
  Geo& g = geo(k);
  if (g.connected < 0) g.connected = is_connected_config(tr_->records[k].pos, tau_);
  return g.connected;
}

namespace {

// a plan that has been computed and still has motion left
bool pending(const TraceRecord& rec, int i) {
  const auto& p = rec.prov[i];
  if (!p || !p->computed || p->terminate) return false;
  if (rec.phase[i] != Phase::Compute && rec.phase[i] != Phase::Move) return false;
  return dist(rec.pos[i], p->target) > 0;
}

}  // namespace

bool TraceFacts::bad_type1(size_t k) {
  const auto& rec = tr_->records[k];
  bool stale = false;
  for (int i = 0; i < tr_->n && !stale; ++i)
    stale = pending(rec, i) && rec.prov[i]->path.back() == ComputeState::NoSpaceForMore &&
            rec.prov[i]->view_hull < tr_->n;
  return stale && complete(k);
}

bool TraceFacts::bad_type2(size_t k) {
  const auto& rec = tr_->records[k];
  bool stale = false;
  for (int i = 0; i < tr_->n && !stale; ++i)
    stale = pending(rec, i) && rec.prov[i]->path.back() == ComputeState::SeeTwoRobot;
  return stale && complete(k);
}

bool TraceFacts::safe(size_t k) {
  const auto& rec = tr_->records[k];
  for (int i = 0; i < tr_->n; ++i) {
    const auto& p = rec.prov[i];
    if (p && (p->view_size < tr_->n || p->view_hull < tr_->n)) return false;
  }
  return complete(k);
}

std::vector<long> detect_bad_type1(TraceFacts& f) {
  std::vector<long> out;
  for (size_t k = 0; k < f.size(); ++k)
    if (f.bad_type1(k)) out.push_back(static_cast<long>(k));
  return out;
}

std::vector<long> detect_bad_type2(TraceFacts& f) {
  std::vector<long> out;
  for (size_t k = 0; k < f.size(); ++k)
    if (f.bad_type2(k)) out.push_back(static_cast<long>(k));
  return out;
}

bool is_safe(TraceFacts& f, size_t k) { return f.safe(k); }

namespace {

std::string polygon_detail(const std::vector<Point2>& a, const std::vector<Point2>& b) {
  std::ostringstream os;
  os << "hull went from " << a.size() << " to " << b.size() << " vertices without containment";
  return os.str();
}

void provenance_warning(TraceFacts& f, Verdict& v) {
  if (!f.has_provenance() && f.size() > 0)
    v.warnings.push_back("trace carries no plan provenance; knowledge-based conditions treated as unknown");
}

}  // namespace

Verdict check_hull_monotone(TraceFacts& f) {
  Verdict v{"hull_monotone", {}, {}};
  const double slack = 10 * f.tau();
  for (size_t k = 0; k + 1 < f.size(); ++k) {
    if (f.trace().records[k].pos == f.trace().records[k + 1].pos) continue;
    if (f.complete(k) || f.complete(k + 1)) continue;
    if (!polygon_contains(f.hull_polygon(k + 1), f.hull_polygon(k), slack))
      v.violations.push_back({static_cast<long>(k + 1), v.rule, polygon_detail(f.hull_polygon(k), f.hull_polygon(k + 1))});
  }
  return v;
}

Verdict check_shrink_while_safe(TraceFacts& f) {
  Verdict v{"shrink_while_safe", {}, {}};
  provenance_warning(f, v);
  const double slack = 10 * f.tau();
  bool good = true;  // no bad record in the current complete stretch
  for (size_t k = 0; k + 1 < f.size(); ++k) {
    if (!f.complete(k)) {
      good = true;
      continue;
    }
    if (f.bad(k)) good = false;
    if (!good || f.connected(k)) continue;
    if (f.has_provenance() && f.bad(k + 1)) {
      good = false;
      continue;
    }
    const long idx = static_cast<long>(k + 1);
    if (!f.complete(k + 1)) {
      std::string why = f.hull_size(k + 1) < f.trace().n ? "a robot left the hull" : "visibility was lost";
      v.violations.push_back({idx, v.rule, why});
    } else if (!polygon_contains(f.hull_polygon(k), f.hull_polygon(k + 1), slack)) {
      v.violations.push_back({idx, v.rule, polygon_detail(f.hull_polygon(k), f.hull_polygon(k + 1))});
    }
  }
  return v;
}

Verdict check_no_bad_after_safe(TraceFacts& f) {
  Verdict v{"no_bad_after_safe", {}, {}};
  provenance_warning(f, v);
  if (!f.has_provenance()) return v;
  bool seen_safe = false;
  for (size_t k = 0; k < f.size(); ++k) {
    if (seen_safe && f.bad(k))
      v.violations.push_back({static_cast<long>(k), v.rule, f.bad_type1(k) ? "bad configuration of type 1"
                                                                              : "bad configuration of type 2"});
    if (!seen_safe && f.safe(k)) seen_safe = true;
  }
  return v;
}

Verdict check_termination(TraceFacts& f) {
  Verdict v{"termination", {}, {}};
  if (f.trace().truncated) {
    v.warnings.push_back("trace truncated before termination");
    return v;
  }
  if (f.size() == 0) {
    v.violations.push_back({0, v.rule, "empty trace"});
    return v;
  }
  const auto& last = f.trace().records.back();
  if (!gathering_achieved(last.pos, last.phase, f.tau()))
    v.violations.push_back({last.index, v.rule, "final record is not a gathered configuration"});
  return v;
}

Verdict check_paths(TraceFacts& f) {
  Verdict v{"automaton_paths", {}, {}};
  provenance_warning(f, v);
  std::unordered_set<const Provenance*> checked;
  for (const auto& rec : f.trace().records) {
    for (const auto& p : rec.prov) {
      if (!p || !p->computed || !checked.insert(p.get()).second) continue;
      if (!legal_path(p->path)) {
        std::string walk;
        for (auto s : p->path) walk += std::string(walk.empty() ? "" : ">") + std::string(state_name(s));
        v.violations.push_back({rec.index, v.rule, "illegal walk " + walk});
      }
    }
  }
  return v;
}

std::vector<Verdict> verify_all(TraceFacts& f) {
  return {check_hull_monotone(f), check_shrink_while_safe(f), check_no_bad_after_safe(f), check_termination(f),
          check_paths(f)};
}

}  // namespace fatbots
