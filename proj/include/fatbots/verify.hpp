#pragma once

#include <span>
#include <string>
#include <vector>

#include "fatbots/simulator.hpp"

namespace fatbots {

struct Violation {
  long index = 0;
  std::string rule;
  std::string detail;
};

struct Verdict {
  std::string rule;
  std::vector<Violation> violations;
  std::vector<std::string> warnings;
  bool ok() const { return violations.empty(); }
};

bool is_fully_visible(std::span<const Point2> config, double tau = kDefaultTau);
// tangency graph connected
bool is_connected_config(std::span<const Point2> config, double tau = kDefaultTau);
bool gathering_achieved(std::span<const Point2> config, std::span<const Phase> phases, double tau = kDefaultTau);
bool gathering_achieved(const SimState& s);

// Per-record configuration facts, computed lazily and shared between checks.
class TraceFacts {
 public:
  explicit TraceFacts(const Trace& tr, double tau = kDefaultTau);

  const Trace& trace() const { return *tr_; }
  size_t size() const { return tr_->records.size(); }
  int hull_size(size_t k);
  const std::vector<Point2>& hull_polygon(size_t k);
  bool fully_visible(size_t k);
  bool connected(size_t k);
  // |CH| = n and fully visible
  bool complete(size_t k) { return hull_size(k) == tr_->n && fully_visible(k); }
  bool bad_type1(size_t k);
  bool bad_type2(size_t k);
  bool bad(size_t k) { return bad_type1(k) || bad_type2(k); }
  bool safe(size_t k);
  // false when records carry no provenance (foreign traces)
  bool has_provenance() const { return has_prov_; }
  double tau() const { return tau_; }

 private:
  struct Geo {
    int hull_size = 0;
    std::vector<Point2> polygon;
    int visible = -1;  // -1 unknown
    int connected = -1;
  };
  Geo& geo(size_t k);

  const Trace* tr_;
  double tau_;
  bool has_prov_ = false;
  std::vector<int> geo_of_;  // record -> index into geos_
  std::vector<Geo> geos_;
};

std::vector<long> detect_bad_type1(TraceFacts& f);
std::vector<long> detect_bad_type2(TraceFacts& f);
bool is_safe(TraceFacts& f, size_t k);

Verdict check_hull_monotone(TraceFacts& f);
Verdict check_shrink_while_safe(TraceFacts& f);
Verdict check_no_bad_after_safe(TraceFacts& f);
Verdict check_termination(TraceFacts& f);
Verdict check_paths(TraceFacts& f);

std::vector<Verdict> verify_all(TraceFacts& f);

}  // namespace fatbots
