#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fatbots/simulator.hpp"
#include "fatbots/verify.hpp"

namespace fatbots {

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Scenario {
  int n = 0;
  std::vector<Point2> robots;
  std::optional<double> epsilon;
  double delta = 0.05;
  std::uint64_t seed = 0;
  std::string scheduler = "fair";
  long max_events = 200000;
  std::optional<double> tau;

  // explicit tau, else FATBOTS_TAU, else the default
  double effective_tau() const;
};

// FATBOTS_TAU when set and valid
std::optional<double> env_tau();

Scenario gen_scenario(int n, std::uint64_t seed, double spread);

Scenario parse_scenario(const std::string& text);  // throws InputError
std::string scenario_to_json(const Scenario& s);
Scenario load_scenario(const std::string& path);
void save_scenario(const Scenario& s, const std::string& path);

SimState make_state(const Scenario& s);
Trace run_scenario(const Scenario& s);

void write_trace(std::ostream& os, const Trace& tr);
std::string trace_to_string(const Trace& tr);
void save_trace(const Trace& tr, const std::string& path);
Trace read_trace(std::istream& is);  // throws InputError
Trace load_trace(const std::string& path);

std::string verdicts_to_json(const std::vector<Verdict>& vs);

struct RenderOptions {
  double scale = 20.0;  // pixels per unit
  bool hull = true;
  bool arrows = true;
};
std::string render_svg(const TraceRecord& rec, double tau, const RenderOptions& opt = {});

}  // namespace fatbots
