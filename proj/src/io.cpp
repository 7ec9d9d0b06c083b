#include "fatbots/io.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace fatbots {

using nlohmann::json;

std::optional<double> env_tau() {
  const char* s = std::getenv("FATBOTS_TAU");
  if (!s || !*s) return std::nullopt;
  char* end = nullptr;
  errno = 0;
  double v = std::strtod(s, &end);
  if (errno != 0 || *end != '\0' || !(v > 0) || !std::isfinite(v))
    throw InputError(std::string("FATBOTS_TAU is not a positive number: ") + s);
  return v;
}

double Scenario::effective_tau() const {
  if (tau) return *tau;
  if (auto e = env_tau()) return *e;
  return kDefaultTau;
}

Scenario gen_scenario(int n, std::uint64_t seed, double spread) {
  if (n < 2) throw InputError("n must be at least 2");
  if (!(spread >= 4.0 * n)) throw InputError("spread must be at least 4n");
  Rng rng(seed);
  Scenario s;
  s.n = n;
  s.seed = seed;
  long attempts = 0;
  while (static_cast<int>(s.robots.size()) < n) {
    if (++attempts > 1000000)
      throw InputError("could not place " + std::to_string(n) + " robots in a square of side " +
                       std::to_string(spread) + "; use a larger spread");
    Point2 p{rng.uniform(0, spread), rng.uniform(0, spread)};
    bool ok = true;
    for (Point2 q : s.robots) ok = ok && dist(p, q) >= 2.2;
    if (ok) s.robots.push_back(p);
  }
  return s;
}

namespace {

json point_json(Point2 p) { return json::array({p.x, p.y}); }

Point2 point_from(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw InputError("expected a point [x, y], got " + j.dump());
  return {j[0].get<double>(), j[1].get<double>()};
}

template <class T>
T field(const json& j, const char* key) {
  if (!j.contains(key)) throw InputError(std::string("missing field \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw InputError(std::string("field \"") + key + "\" has the wrong type");
  }
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed scenario JSON: ") + e.what());
  }
  if (!j.is_object()) throw InputError("scenario must be a JSON object");
  Scenario s;
  s.n = field<int>(j, "n");
  if (!j.contains("robots") || !j["robots"].is_array()) throw InputError("missing field \"robots\"");
  for (auto& p : j["robots"]) s.robots.push_back(point_from(p));
  if (j.contains("epsilon") && !j["epsilon"].is_null()) s.epsilon = field<double>(j, "epsilon");
  if (j.contains("delta")) s.delta = field<double>(j, "delta");
  if (j.contains("seed")) s.seed = field<std::uint64_t>(j, "seed");
  if (j.contains("scheduler")) s.scheduler = field<std::string>(j, "scheduler");
  if (j.contains("max_events")) s.max_events = field<long>(j, "max_events");
  if (j.contains("tau") && !j["tau"].is_null()) s.tau = field<double>(j, "tau");

  if (s.n < 2) throw InputError("n must be at least 2");
  if (static_cast<int>(s.robots.size()) != s.n)
    throw InputError("scenario lists " + std::to_string(s.robots.size()) + " robots but n = " + std::to_string(s.n));
  if (!known_policy(s.scheduler)) throw InputError("unknown scheduler \"" + s.scheduler + "\"");
  if (!(s.delta > 0)) throw InputError("delta must be positive");
  if (s.max_events < 1) throw InputError("max_events must be at least 1");
  if (s.tau && !(*s.tau > 0)) throw InputError("tau must be positive");
  const double tau = s.effective_tau();
  for (size_t a = 0; a < s.robots.size(); ++a)
    for (size_t b = a + 1; b < s.robots.size(); ++b)
      if (dist(s.robots[a], s.robots[b]) < 2.0 - tau)
        throw InputError("robots " + std::to_string(a) + " and " + std::to_string(b) + " overlap");
  try {
    make_params(s.n, s.epsilon, tau);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  return s;
}

std::string scenario_to_json(const Scenario& s) {
  json j;
  j["n"] = s.n;
  j["robots"] = json::array();
  for (Point2 p : s.robots) j["robots"].push_back(point_json(p));
  if (s.epsilon) j["epsilon"] = *s.epsilon;
  j["delta"] = s.delta;
  j["seed"] = s.seed;
  j["scheduler"] = s.scheduler;
  j["max_events"] = s.max_events;
  if (s.tau) j["tau"] = *s.tau;
  return j.dump(2) + "\n";
}

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

}  // namespace

Scenario load_scenario(const std::string& path) { return parse_scenario(slurp(path)); }
void save_scenario(const Scenario& s, const std::string& path) { spit(path, scenario_to_json(s)); }

SimState make_state(const Scenario& s) {
  return init(s.robots, s.n, s.epsilon, s.delta, s.seed, s.effective_tau());
}

Trace run_scenario(const Scenario& s) {
  SimState st = make_state(s);
  auto sched = make_scheduler(s.scheduler, s.seed, s.n);
  return run(st, *sched, s.max_events);
}

// ---------------------------------------------------------------------------
// trace files

namespace {

json prov_json(const Provenance& p) {
  json j;
  j["look"] = p.look_index;
  j["vs"] = p.view_size;
  j["vh"] = p.view_hull;
  if (p.computed) {
    json path = json::array();
    for (auto s : p.path) path.push_back(std::string(state_name(s)));
    j["path"] = std::move(path);
    j["branch"] = p.branch;
    j["term"] = p.terminate;
    j["rand"] = p.used_random;
    j["start"] = point_json(p.start);
    j["target"] = point_json(p.target);
  }
  return j;
}

json record_json(const TraceRecord& r) {
  json ev;
  ev["kind"] = std::string(event_name(r.event.kind));
  ev["robots"] = r.event.robots;
  json adv = json::array();
  for (auto [k, a] : r.event.advances) adv.push_back(json::array({k, a}));
  ev["advances"] = std::move(adv);
  ev["clipped"] = r.event.clipped;

  json j;
  j["i"] = r.index;
  j["event"] = std::move(ev);
  json pos = json::array();
  for (Point2 p : r.pos) pos.push_back(point_json(p));
  j["pos"] = std::move(pos);
  json ph = json::array();
  for (Phase p : r.phase) ph.push_back(std::string(phase_name(p)));
  j["phase"] = std::move(ph);
  json prov = json::array();
  for (auto& p : r.prov) prov.push_back(p ? prov_json(*p) : json(nullptr));
  j["prov"] = std::move(prov);
  j["trav"] = r.traversed;
  return j;
}

std::shared_ptr<const Provenance> prov_from(const json& j) {
  if (j.is_null()) return nullptr;
  auto p = std::make_shared<Provenance>();
  p->look_index = field<long>(j, "look");
  p->view_size = field<int>(j, "vs");
  p->view_hull = field<int>(j, "vh");
  if (j.contains("path")) {
    p->computed = true;
    for (auto& s : j["path"]) {
      auto st = state_from_name(s.get<std::string>());
      if (!st) throw InputError("unknown automaton state " + s.dump());
      p->path.push_back(*st);
    }
    p->branch = field<std::string>(j, "branch");
    p->terminate = field<bool>(j, "term");
    p->used_random = j.value("rand", false);
    p->start = point_from(j.at("start"));
    p->target = point_from(j.at("target"));
  }
  return p;
}

}  // namespace

void write_trace(std::ostream& os, const Trace& tr) {
  json head;
  head["v"] = 1;
  head["n"] = tr.n;
  head["truncated"] = tr.truncated;
  os << head.dump() << '\n';
  for (auto& r : tr.records) os << record_json(r).dump() << '\n';
}

std::string trace_to_string(const Trace& tr) {
  std::ostringstream os;
  write_trace(os, tr);
  return os.str();
}

void save_trace(const Trace& tr, const std::string& path) { spit(path, trace_to_string(tr)); }

Trace read_trace(std::istream& is) {
  Trace tr;
  std::string line;
  long lineno = 0;
  std::vector<json> last_prov;
  std::vector<std::shared_ptr<const Provenance>> last_ptr;
  bool header = false;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw InputError("line " + std::to_string(lineno) + ": " + e.what());
    }
    try {
      if (!header) {
        if (!j.contains("v") || j["v"] != 1) throw InputError("missing {\"v\": 1} header line");
        tr.n = field<int>(j, "n");
        tr.truncated = j.value("truncated", false);
        last_prov.assign(tr.n, json(nullptr));
        last_ptr.assign(tr.n, nullptr);
        header = true;
        continue;
      }
      TraceRecord r;
      r.index = field<long>(j, "i");
      if (r.index != static_cast<long>(tr.records.size())) throw InputError("record indices are not consecutive");
      const json& ev = j.at("event");
      auto kind = event_from_name(field<std::string>(ev, "kind"));
      if (!kind) throw InputError("unknown event kind");
      r.event.kind = *kind;
      r.event.robots = field<std::vector<int>>(ev, "robots");
      for (auto& a : ev.value("advances", json::array())) r.event.advances.push_back({a.at(0), a.at(1)});
      r.event.clipped = ev.value("clipped", std::vector<int>{});
      for (auto& p : j.at("pos")) r.pos.push_back(point_from(p));
      for (auto& p : j.at("phase")) {
        auto ph = phase_from_name(p.get<std::string>());
        if (!ph) throw InputError("unknown phase " + p.dump());
        r.phase.push_back(*ph);
      }
      const json& prov = j.at("prov");
      if (static_cast<int>(r.pos.size()) != tr.n || static_cast<int>(r.phase.size()) != tr.n ||
          static_cast<int>(prov.size()) != tr.n)
        throw InputError("record does not describe n robots");
      for (int k = 0; k < tr.n; ++k) {
        // unchanged provenance keeps its identity across records
        if (prov[k] != last_prov[k]) {
          last_prov[k] = prov[k];
          last_ptr[k] = prov_from(prov[k]);
        }
        r.prov.push_back(last_ptr[k]);
      }
      r.traversed = j.contains("trav") ? j["trav"].get<std::vector<double>>() : std::vector<double>(tr.n, 0.0);
      tr.records.push_back(std::move(r));
    } catch (const json::exception& e) {
      throw InputError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (!header) throw InputError("empty trace file");
  return tr;
}

Trace load_trace(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  return read_trace(in);
}

std::string verdicts_to_json(const std::vector<Verdict>& vs) {
  json rules = json::array();
  bool ok = true;
  for (auto& v : vs) {
    json vj;
    vj["rule"] = v.rule;
    vj["ok"] = v.ok();
    vj["violations"] = json::array();
    for (auto& x : v.violations) vj["violations"].push_back({{"index", x.index}, {"detail", x.detail}});
    vj["warnings"] = v.warnings;
    rules.push_back(std::move(vj));
    ok = ok && v.ok();
  }
  return json{{"ok", ok}, {"rules", rules}}.dump(2) + "\n";
}

// ---------------------------------------------------------------------------

std::string render_svg(const TraceRecord& rec, double tau, const RenderOptions& opt) {
  double lo_x = INFINITY, lo_y = INFINITY, hi_x = -INFINITY, hi_y = -INFINITY;
  for (Point2 p : rec.pos) {
    lo_x = std::min(lo_x, p.x), lo_y = std::min(lo_y, p.y);
    hi_x = std::max(hi_x, p.x), hi_y = std::max(hi_y, p.y);
  }
  if (rec.pos.empty()) lo_x = lo_y = hi_x = hi_y = 0;
  const double pad = 2.0, s = opt.scale;
  const double w = (hi_x - lo_x + 2 * pad) * s, h = (hi_y - lo_y + 2 * pad) * s;
  // flip y so the picture matches the usual axes
  auto X = [&](double x) { return (x - lo_x + pad) * s; };
  auto Y = [&](double y) { return (hi_y - y + pad) * s; };

  std::ostringstream os;
  os << std::setprecision(6);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\" viewBox=\"0 0 " << w
     << ' ' << h << "\">\n";
  os << "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"10\" refY=\"5\" markerWidth=\"6\" "
        "markerHeight=\"6\" orient=\"auto\"><path d=\"M0,0 L10,5 L0,10 z\" fill=\"#c0392b\"/></marker></defs>\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (opt.hull && !rec.pos.empty()) {
    HullBoundary hb = hull_boundary(rec.pos, tau);
    os << "<polygon class=\"hull\" fill=\"none\" stroke=\"#2980b9\" stroke-dasharray=\"4 3\" points=\"";
    for (Point2 p : hb.vertices) os << X(p.x) << ',' << Y(p.y) << ' ';
    os << "\"/>\n";
  }
  for (size_t k = 0; k < rec.pos.size(); ++k) {
    Point2 p = rec.pos[k];
    const char* fill = rec.phase[k] == Phase::Terminate ? "#bdc3c7" : rec.phase[k] == Phase::Move ? "#f5b7b1" : "#d6eaf8";
    os << "<circle class=\"robot\" cx=\"" << X(p.x) << "\" cy=\"" << Y(p.y) << "\" r=\"" << s << "\" fill=\"" << fill
       << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << X(p.x) << "\" y=\"" << Y(p.y) + 4 << "\" font-size=\"" << s * 0.6
       << "\" text-anchor=\"middle\">" << k << "</text>\n";
    if (opt.arrows && rec.phase[k] == Phase::Move && rec.prov[k] && rec.prov[k]->computed) {
      Point2 t = rec.prov[k]->target;
      os << "<line class=\"trajectory\" x1=\"" << X(p.x) << "\" y1=\"" << Y(p.y) << "\" x2=\"" << X(t.x) << "\" y2=\""
         << Y(t.y) << "\" stroke=\"#c0392b\" marker-end=\"url(#arrow)\"/>\n";
    }
  }
  os << "<text x=\"4\" y=\"14\" font-size=\"12\">record " << rec.index << ": " << event_name(rec.event.kind)
     << "</text>\n</svg>\n";
  return os.str();
}

}  // namespace fatbots
