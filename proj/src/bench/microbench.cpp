#include "micropush/bench/microbench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>

#include "micropush/bench/csv.hpp"
#include "micropush/bench/scenario.hpp"
#include "micropush/core/error.hpp"
#include "micropush/planning/planner.hpp"

namespace micropush::bench {

const char* const kMicrobenchHeader = "seed,d_len_um,d_turn_rad,d_time_s";

DeltaStats delta_stats(const std::vector<double>& d) {
  DeltaStats s;
  s.n = static_cast<int>(d.size());
  if (d.empty()) return s;
  s.mean = mean(d);
  s.median = median(d);
  const auto pos = std::count_if(d.begin(), d.end(), [](double x) { return x > 0.0; });
  s.frac_positive = static_cast<double>(pos) / static_cast<double>(d.size());
  return s;
}

namespace {

struct Timed {
  planning::PlanResult result;
  double seconds = 0.0;
};

Timed timed_plan(const std::vector<planning::ObstacleCircle>& obstacles, int w, int h,
                 const planning::PlanRequest& req, planning::PlannerKind kind,
                 const planning::PlannerConfig& cfg, int repeats) {
  using Clock = std::chrono::steady_clock;
  Timed out;
  std::vector<double> times;
  for (int k = 0; k < repeats; ++k) {
    auto obs = obstacles;  // copied outside the timed region
    const auto t0 = Clock::now();
    auto r = planning::plan_with_obstacles(std::move(obs), w, h, req, kind, cfg);
    const auto t1 = Clock::now();
    times.push_back(std::chrono::duration<double>(t1 - t0).count());
    if (k == 0) out.result = std::move(r);
  }
  out.seconds = median(times);
  return out;
}

}  // namespace

MicrobenchResult run_planner_microbench(const MicrobenchConfig& cfg) {
  MicrobenchResult res;
  planning::PlannerConfig pc = cfg.base.planning;
  pc.fallback_to_astar = false;  // each planner is measured on its own
  std::vector<double> dl, dt, dtime;
  for (int i = 0; i < cfg.seeds; ++i) {
    EpisodeConfig ec = cfg.base;
    ec.task = Task::Transport;
    ec.flow_on = false;
    ec.seed = cfg.seed0 + static_cast<std::uint64_t>(i);
    try {
      const Scenario scene = generate_scenario(ec);
      const sim::World& w = scene.world;
      planning::PlanRequest req;
      req.start = w.robot().position;
      req.goal = scene.goal;
      req.moving_radius = w.robot().radius;
      req.excluded_ids = {w.robot().id};
      const auto obstacles = planning::obstacles_for(w.bodies(), ec.sim.width, ec.sim.height, req);
      const int W = static_cast<int>(std::ceil(ec.sim.width));
      const int H = static_cast<int>(std::ceil(ec.sim.height));
      const Timed agp = timed_plan(obstacles, W, H, req, planning::PlannerKind::AGP, pc,
                                   cfg.timing_repeats);
      const Timed astar = timed_plan(obstacles, W, H, req, planning::PlannerKind::AStar, pc,
                                     cfg.timing_repeats);
      PlannerDelta d;
      d.seed = ec.seed;
      d.d_len_um = (planning::path_length(astar.result.path) - planning::path_length(agp.result.path)) *
                   ec.sim.um_per_px;
      d.d_turn_rad =
          planning::turning_angle(astar.result.path) - planning::turning_angle(agp.result.path);
      d.d_time_s = astar.seconds - agp.seconds;
      res.rows.push_back(d);
      dl.push_back(d.d_len_um);
      dt.push_back(d.d_turn_rad);
      dtime.push_back(d.d_time_s);
    } catch (const Error&) {
      // Scene or planner failure: the seed is left out of the paired sample.
      res.excluded.push_back(ec.seed);
    }
  }
  res.length = delta_stats(dl);
  res.turning = delta_stats(dt);
  res.time = delta_stats(dtime);
  return res;
}

std::string microbench_csv(const MicrobenchResult& r) {
  std::string s = std::string(kMicrobenchHeader) + "\r\n";
  for (const auto& d : r.rows) {
    s += std::to_string(d.seed) + ',' + format_number(d.d_len_um) + ',' +
         format_number(d.d_turn_rad) + ',' + format_number(d.d_time_s) + "\r\n";
  }
  return s;
}

std::string format_microbench(const MicrobenchResult& r) {
  std::string s;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-20s %4s %12s %12s %8s\n", "metric", "n", "mean_delta",
                "median_delta", "P(d>0)");
  s += buf;
  auto line = [&](const char* name, const DeltaStats& d) {
    std::snprintf(buf, sizeof buf, "%-20s %4d %12.4g %12.4g %8.3f\n", name, d.n, d.mean, d.median,
                  d.frac_positive);
    s += buf;
  };
  line("path_length_um", r.length);
  line("turning_angle_rad", r.turning);
  line("planning_time_s", r.time);
  if (!r.excluded.empty()) {
    std::snprintf(buf, sizeof buf, "excluded seeds: %zu\n", r.excluded.size());
    s += buf;
  }
  return s;
}

}  // namespace micropush::bench
