#include <cstdlib>
#include <sstream>

#include "doctest.h"
#include "fatbots/io.hpp"
#include "json.hpp"

using namespace fatbots;
using nlohmann::json;

namespace {

size_t count(const std::string& hay, const std::string& needle) {
  size_t c = 0;
  for (size_t at = hay.find(needle); at != std::string::npos; at = hay.find(needle, at + 1)) ++c;
  return c;
}

}  // namespace

TEST_CASE("gen_scenario") {
  Scenario a = gen_scenario(4, 1, 40), b = gen_scenario(4, 1, 40);
  REQUIRE(a.robots.size() == 4);
  CHECK(scenario_to_json(a) == scenario_to_json(b));
  for (size_t i = 0; i < 4; ++i) {
    CHECK(a.robots[i].x >= 0);
    CHECK(a.robots[i].x <= 40);
    for (size_t j = i + 1; j < 4; ++j) CHECK(dist(a.robots[i], a.robots[j]) >= 2.0);
  }
  CHECK(gen_scenario(4, 2, 40).robots[0].x != a.robots[0].x);
  CHECK(gen_scenario(2, 5, 8).robots.size() == 2);
  CHECK_THROWS_AS(gen_scenario(10, 1, 4), InputError);
  CHECK_THROWS_AS(gen_scenario(1, 1, 40), InputError);
}

TEST_CASE("scenario parsing") {
  const std::string good = R"({"n": 2, "robots": [[0, 0], [3, 0]], "seed": 4, "scheduler": "random"})";
  Scenario s = parse_scenario(good);
  CHECK(s.n == 2);
  CHECK(s.seed == 4);
  CHECK(s.scheduler == "random");
  CHECK(s.delta == doctest::Approx(0.05));
  CHECK(s.max_events == 200000);
  // round trip
  Scenario t = parse_scenario(scenario_to_json(s));
  CHECK(scenario_to_json(t) == scenario_to_json(s));

  CHECK_THROWS_AS(parse_scenario(R"({"robots": [[0, 0], [3, 0]]})"), InputError);
  CHECK_THROWS_AS(parse_scenario(R"({"n": 3, "robots": [[0, 0], [3, 0]]})"), InputError);
  CHECK_THROWS_AS(parse_scenario(R"({"n": 2, "robots": [[0, 0], [1, 0]]})"), InputError);
  CHECK_THROWS_AS(parse_scenario(R"({"n": 2, "robots": [[0, 0], [3, 0]], "scheduler": "chaos"})"), InputError);
  CHECK_THROWS_AS(parse_scenario(R"({"n": 2, "robots": [[0, 0], [3, 0]], "epsilon": 0.5})"), InputError);
  CHECK_THROWS_AS(parse_scenario(R"({"n": 2, "robots": [[0, 0], [3, 0]], "delta": 0})"), InputError);
  CHECK_THROWS_AS(parse_scenario(R"({"n": 2, "robots": [[0, 0], "x"]})"), InputError);
  CHECK_THROWS_AS(parse_scenario("not json"), InputError);
}

TEST_CASE("tau from the environment") {
  Scenario s = parse_scenario(R"({"n": 2, "robots": [[0, 0], [3, 0]]})");
  ::setenv("FATBOTS_TAU", "1e-8", 1);
  CHECK(s.effective_tau() == doctest::Approx(1e-8));
  s.tau = 1e-7;
  CHECK(s.effective_tau() == doctest::Approx(1e-7));
  ::setenv("FATBOTS_TAU", "banana", 1);
  CHECK_THROWS(env_tau());
  ::unsetenv("FATBOTS_TAU");
  CHECK_FALSE(env_tau());
}

TEST_CASE("trace files round trip") {
  Scenario s = gen_scenario(4, 6, 40);
  s.max_events = 400;
  Trace tr = run_scenario(s);
  std::string text = trace_to_string(tr);
  std::istringstream in(text);
  Trace back = read_trace(in);
  CHECK(back.n == tr.n);
  CHECK(back.truncated == tr.truncated);
  REQUIRE(back.records.size() == tr.records.size());
  CHECK(trace_to_string(back) == text);
  // header first, one JSON object per line
  std::istringstream lines(text);
  std::string first;
  std::getline(lines, first);
  CHECK(json::parse(first)["v"] == 1);

  std::istringstream empty("");
  CHECK_THROWS_AS(read_trace(empty), InputError);
  std::istringstream gap("{\"v\":1,\"n\":2,\"truncated\":false}\n" + text.substr(text.find('\n') + 1, 0));
  CHECK_NOTHROW(read_trace(gap));
}

TEST_CASE("trace reader rejects out-of-order records") {
  Scenario s = gen_scenario(3, 2, 30);
  s.max_events = 5;
  std::string text = trace_to_string(run_scenario(s));
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) lines.push_back(l);
  REQUIRE(lines.size() >= 4);
  std::swap(lines[1], lines[2]);
  std::string bad;
  for (auto& l : lines) bad += l + "\n";
  std::istringstream b(bad);
  CHECK_THROWS_AS(read_trace(b), InputError);
}

TEST_CASE("render") {
  Scenario s = gen_scenario(5, 1, 50);
  s.max_events = 50;
  Trace tr = run_scenario(s);
  std::string svg = render_svg(tr.records.front(), kDefaultTau);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(count(svg, "class=\"robot\"") == 5);
  CHECK(count(svg, "class=\"hull\"") == 1);
  // hull polygon lists one coordinate pair per vertex
  auto at = svg.find("class=\"hull\"");
  auto pts = svg.find("points=\"", at) + 8;
  std::string list = svg.substr(pts, svg.find('"', pts) - pts);
  auto hb = hull_boundary(tr.records.front().pos);
  std::istringstream tokens(list);
  size_t pairs = 0;
  for (std::string tok; tokens >> tok;) ++pairs;
  CHECK(pairs == hb.vertices.size());
}

TEST_CASE("verdict report") {
  std::vector<Verdict> vs{{"a", {}, {}}, {"b", {{3, "b", "broken"}}, {"careful"}}};
  json j = json::parse(verdicts_to_json(vs));
  CHECK(j.dump().find("broken") != std::string::npos);
  CHECK(j.dump().find("careful") != std::string::npos);
}
