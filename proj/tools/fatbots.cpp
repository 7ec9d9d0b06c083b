#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

#include "CLI11.hpp"
#include "fatbots/io.hpp"

namespace fs = std::filesystem;
using namespace fatbots;

namespace {

enum Exit { kOk = 0, kInput = 1, kTruncated = 2, kViolation = 3 };

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> scheduler;
  std::optional<long> max_events;
  std::optional<double> delta;
  std::optional<double> epsilon;

  void add(CLI::App* cmd) {
    cmd->add_option("--seed", seed, "RNG seed");
    cmd->add_option("--scheduler", scheduler, "fair | random | adv-type1 | adv-type2");
    cmd->add_option("--max-events", max_events, "event budget");
    cmd->add_option("--delta", delta, "minimum distance before a Stop");
    cmd->add_option("--epsilon", epsilon, "algorithm offset, below 1/(2n)");
  }
  void apply(Scenario& s) const {
    if (seed) s.seed = *seed;
    if (scheduler) s.scheduler = *scheduler;
    if (max_events) s.max_events = *max_events;
    if (delta) s.delta = *delta;
    if (epsilon) s.epsilon = *epsilon;
    // re-validate through the parser
    s = parse_scenario(scenario_to_json(s));
  }
};

int run_exit(const Trace& tr, double tau) {
  if (tr.truncated) return tr.rejected.size() > 1000 ? kViolation : kTruncated;
  const auto& last = tr.records.back();
  return gathering_achieved(last.pos, last.phase, tau) ? kOk : kViolation;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gathering simulator for unit-disc robots with limited visibility"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a random scenario");
  int g_n = 4;
  double g_spread = 0;
  std::string g_out = "-";
  Overrides g_ov;
  gen->add_option("-n,--n", g_n, "number of robots")->required();
  gen->add_option("--spread", g_spread, "side of the sampling square (default 10n)");
  gen->add_option("--out", g_out, "output file, - for stdout");
  g_ov.add(gen);

  // run
  auto* runc = app.add_subcommand("run", "simulate a scenario and write its trace");
  std::string r_in, r_out = "trace.jsonl";
  Overrides r_ov;
  runc->add_option("scenario", r_in, "scenario JSON")->required();
  runc->add_option("--out", r_out, "trace output (JSONL)");
  r_ov.add(runc);

  // verify
  auto* ver = app.add_subcommand("verify", "check a trace against the invariants");
  std::string v_in, v_out = "-";
  ver->add_option("trace", v_in, "trace file")->required();
  ver->add_option("--out", v_out, "report output, - for stdout");

  // render
  auto* ren = app.add_subcommand("render", "draw trace records as SVG");
  std::string d_in, d_out;
  long d_index = -1;
  bool d_animate = false;
  double d_scale = 20.0;
  ren->add_option("trace", d_in, "trace file")->required();
  ren->add_option("--index", d_index, "record to draw (default: last)");
  ren->add_flag("--animate", d_animate, "one SVG per record into the --out directory");
  ren->add_option("--scale", d_scale, "pixels per unit");
  ren->add_option("--out", d_out, "SVG file, or directory with --animate");

  // batch
  auto* bat = app.add_subcommand("batch", "generate, run and verify many scenarios");
  std::vector<int> b_ns{3, 4, 5, 6, 7, 8};
  int b_count = 10, b_jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  std::uint64_t b_seed = 1;
  double b_factor = 10.0;
  std::string b_sched = "fair", b_out;
  long b_max = 200000;
  double b_delta = 0.05;
  bat->add_option("--ns", b_ns, "robot counts");
  bat->add_option("--count", b_count, "scenarios per robot count");
  bat->add_option("--seed", b_seed, "first seed");
  bat->add_option("--spread-factor", b_factor, "spread = factor * n");
  bat->add_option("--scheduler", b_sched);
  bat->add_option("--max-events", b_max);
  bat->add_option("--delta", b_delta);
  bat->add_option("--jobs", b_jobs);
  bat->add_option("--out", b_out, "directory for scenarios and traces");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }

  try {
    if (*gen) {
      double spread = g_spread > 0 ? g_spread : 10.0 * g_n;
      Scenario s = gen_scenario(g_n, g_ov.seed.value_or(0), spread);
      g_ov.apply(s);
      write_text(g_out, scenario_to_json(s));
      return kOk;
    }
    if (*runc) {
      Scenario s = load_scenario(r_in);
      r_ov.apply(s);
      Trace tr = run_scenario(s);
      save_trace(tr, r_out);
      std::cerr << tr.records.size() << " events, "
                << (tr.truncated ? "truncated" : "all robots terminated") << "\n";
      for (auto& why : tr.rejected) std::cerr << "rejected: " << why << "\n";
      return run_exit(tr, s.effective_tau());
    }
    if (*ver) {
      Trace tr = load_trace(v_in);
      double tau = env_tau().value_or(kDefaultTau);
      TraceFacts facts(tr, tau);
      auto verdicts = verify_all(facts);
      write_text(v_out, verdicts_to_json(verdicts));
      for (auto& v : verdicts)
        if (!v.ok()) return kViolation;
      return kOk;
    }
    if (*ren) {
      Trace tr = load_trace(d_in);
      double tau = env_tau().value_or(kDefaultTau);
      RenderOptions opt;
      opt.scale = d_scale;
      if (tr.records.empty()) throw InputError("trace has no records");
      if (d_animate) {
        fs::path dir = d_out.empty() ? fs::path("frames") : fs::path(d_out);
        fs::create_directories(dir);
        for (auto& rec : tr.records) {
          char name[32];
          std::snprintf(name, sizeof name, "frame_%06ld.svg", rec.index);
          write_text((dir / name).string(), render_svg(rec, tau, opt));
        }
        return kOk;
      }
      long k = d_index < 0 ? static_cast<long>(tr.records.size()) - 1 : d_index;
      if (k >= static_cast<long>(tr.records.size()))
        throw InputError("record index " + std::to_string(k) + " out of range");
      write_text(d_out.empty() ? "-" : d_out, render_svg(tr.records[k], tau, opt));
      return kOk;
    }
    if (*bat) {
      if (!known_policy(b_sched)) throw InputError("unknown scheduler \"" + b_sched + "\"");
      struct Job {
        int n;
        std::uint64_t seed;
      };
      std::vector<Job> jobs;
      for (int n : b_ns)
        for (int c = 0; c < b_count; ++c) jobs.push_back({n, b_seed + static_cast<std::uint64_t>(c)});
      if (!b_out.empty()) fs::create_directories(b_out);
      std::atomic<size_t> next{0};
      std::mutex io;
      int worst = kOk;
      auto worker = [&] {
        for (size_t j; (j = next++) < jobs.size();) {
          auto t0 = std::chrono::steady_clock::now();
          Scenario s = gen_scenario(jobs[j].n, jobs[j].seed, b_factor * jobs[j].n);
          s.scheduler = b_sched;
          s.max_events = b_max;
          s.delta = b_delta;
          Trace tr;
          try {
            tr = run_scenario(s);
          } catch (const std::exception& e) {
            std::lock_guard lock(io);
            std::cout << "n" << s.n << "_s" << s.seed << " error: " << e.what() << "\n";
            worst = kViolation;
            continue;
          }
          TraceFacts facts(tr, s.effective_tau());
          auto verdicts = verify_all(facts);
          int code = run_exit(tr, s.effective_tau());
          std::string bad;
          for (auto& v : verdicts)
            if (!v.ok()) bad += " " + v.rule + "(" + std::to_string(v.violations.size()) + ")";
          if (!bad.empty()) code = std::max(code, static_cast<int>(kViolation));
          double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
          std::string stem = "n" + std::to_string(s.n) + "_s" + std::to_string(s.seed);
          if (!b_out.empty()) {
            save_scenario(s, (fs::path(b_out) / (stem + ".json")).string());
            save_trace(tr, (fs::path(b_out) / (stem + ".jsonl")).string());
          }
          std::lock_guard lock(io);
          std::cout << stem << " events=" << tr.records.size() << " exit=" << code << " time=" << secs << "s"
                    << bad << "\n";
          worst = std::max(worst, code);
        }
      };
      std::vector<std::thread> pool;
      for (int t = 0; t < std::max(1, b_jobs); ++t) pool.emplace_back(worker);
      for (auto& t : pool) t.join();
      return worst;
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kViolation;
  }
  return kOk;
}
