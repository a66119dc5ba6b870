#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "micropush/bench/csv.hpp"
#include "micropush/bench/microbench.hpp"
#include "micropush/bench/suite.hpp"
#include "micropush/core/error.hpp"

#ifdef MICROPUSH_HAVE_SERVER
#include "micropush/session/server.hpp"
#endif

namespace mb = micropush::bench;

namespace {

struct SuiteArgs {
  std::string task = "both";
  std::string flow = "both";
  int seeds_transport = 80;
  int seeds_hex = 30;
  std::uint64_t seed_base = 0;
  std::string out = "bench_result.csv";
  std::string param_file;
  std::string dump_dir;
  int jobs = 1;
  double r_succ = 0.5;
};

void add_suite_options(CLI::App* cmd, SuiteArgs& a) {
  cmd->add_option("--task", a.task, "transport | assembly | both")
      ->check(CLI::IsMember({"transport", "assembly", "both"}));
  cmd->add_option("--flow", a.flow, "on | off | both")->check(CLI::IsMember({"on", "off", "both"}));
  cmd->add_option("--seeds-transport", a.seeds_transport, "episodes per transport combination")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--seeds-hex", a.seeds_hex, "episodes per assembly combination")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--seed-base", a.seed_base, "first seed of every (task, flow) block");
  cmd->add_option("--param-file", a.param_file, "key = value overrides");
  cmd->add_option("--jobs", a.jobs, "worker threads")->check(CLI::PositiveNumber);
}

mb::SuiteConfig suite_config(const SuiteArgs& a) {
  mb::SuiteConfig s;
  s.transport = a.task != "assembly";
  s.assembly = a.task != "transport";
  s.flow_off = a.flow != "on";
  s.flow_on = a.flow != "off";
  s.seeds_transport = a.seeds_transport;
  s.seeds_hex = a.seeds_hex;
  s.seed_base = a.seed_base;
  s.jobs = a.jobs;
  s.dump_dir = a.dump_dir;
  if (!a.param_file.empty()) mb::apply_param_file(s.base, a.param_file);
  s.base.bench.r_succ = a.r_succ;
  return s;
}

std::vector<mb::EpisodeRecord> run_suite(const mb::SuiteConfig& s, bool& all_ran) {
  const auto configs = mb::expand_suite(s);
  all_ran = true;
  return mb::run_episodes(configs, s.jobs, s.dump_dir,
                          [&](const mb::EpisodeConfig& c, const std::string& why) {
                            all_ran = false;
                            std::cerr << "skipped " << mb::task_name(c.task) << " seed " << c.seed
                                      << ": " << why << "\n";
                          });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MicroPush simulator and benchmark"};
  app.require_subcommand(1);

  SuiteArgs bench_args;
  auto* bench = app.add_subcommand("run-benchmark", "closed-loop transport and assembly episodes");
  add_suite_options(bench, bench_args);
  bench->add_option("--out", bench_args.out, "CSV output path");
  bench->add_option("--dump-frames", bench_args.dump_dir, "directory for JSON-lines dumps");
  bench->add_option("--r-succ", bench_args.r_succ, "success radius [px]")
      ->check(CLI::PositiveNumber);

  int planner_seeds = 100;
  std::uint64_t planner_seed0 = 0;
  std::string planner_out = "micro_bench_result.csv";
  std::string planner_params;
  auto* planner = app.add_subcommand("run-planner", "paired AGP vs A* micro-benchmark");
  planner->add_option("--seeds", planner_seeds, "scenes to compare")->check(CLI::PositiveNumber);
  planner->add_option("--seed0", planner_seed0, "first scene seed");
  planner->add_option("--out", planner_out, "per-scene delta CSV");
  planner->add_option("--param-file", planner_params, "key = value overrides");

  SuiteArgs sens_args;
  double r_a = 0.5, r_b = 0.2;
  auto* sens = app.add_subcommand("sensitivity", "success-radius sweep (same seeds, two radii)");
  add_suite_options(sens, sens_args);
  sens->add_option("--r-a", r_a, "reference radius [px]")->check(CLI::PositiveNumber);
  sens->add_option("--r-b", r_b, "tightened radius [px]")->check(CLI::PositiveNumber);
  sens->add_option("--out", sens_args.out, "CSV of the second run (optional)");
  sens_args.out.clear();

#ifdef MICROPUSH_HAVE_SERVER
  std::string addr = "127.0.0.1";
  unsigned short port = 8765;
  double tick_hz = 20.0;
  auto* serve = app.add_subcommand("serve", "WebSocket session server");
  serve->add_option("--addr", addr, "bind address");
  serve->add_option("--port", port, "TCP port, 0 picks a free one");
  serve->add_option("--tick-hz", tick_hz, "auto-mode step rate [Hz]")->check(CLI::PositiveNumber);
#endif

  CLI11_PARSE(app, argc, argv);

  try {
    if (bench->parsed()) {
      const auto t0 = std::chrono::steady_clock::now();
      bool all_ran = false;
      const auto records = run_suite(suite_config(bench_args), all_ran);
      mb::write_file_atomic(bench_args.out, mb::csv_text(records));
      const double secs =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      std::cout << mb::format_summary(mb::summarize(records));
      std::printf("%zu episodes in %.1f s -> %s\n", records.size(), secs, bench_args.out.c_str());
      return all_ran ? 0 : 1;
    }
    if (planner->parsed()) {
      mb::MicrobenchConfig mc;
      mc.seeds = planner_seeds;
      mc.seed0 = planner_seed0;
      if (!planner_params.empty()) mb::apply_param_file(mc.base, planner_params);
      const auto r = mb::run_planner_microbench(mc);
      mb::write_file_atomic(planner_out, mb::microbench_csv(r));
      std::cout << mb::format_microbench(r);
      return 0;
    }
    if (sens->parsed()) {
      bool ran_a = false, ran_b = false;
      sens_args.r_succ = r_a;
      const auto a = run_suite(suite_config(sens_args), ran_a);
      sens_args.r_succ = r_b;
      const auto b = run_suite(suite_config(sens_args), ran_b);
      if (!sens_args.out.empty()) mb::write_file_atomic(sens_args.out, mb::csv_text(b));
      std::cout << mb::format_sensitivity(mb::compare_runs(a, b), r_a, r_b);
      return ran_a && ran_b ? 0 : 1;
    }
#ifdef MICROPUSH_HAVE_SERVER
    if (serve->parsed()) {
      micropush::session::ServerConfig sc;
      sc.address = addr;
      sc.port = port;
      sc.tick_hz = tick_hz;
      return micropush::session::run_server(sc);
    }
#endif
  } catch (const micropush::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
