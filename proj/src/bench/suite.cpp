#include "micropush/bench/suite.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <thread>

#include "micropush/core/error.hpp"

namespace micropush::bench {

int seed_block(Task task, bool flow_on) {
  if (task == Task::Assembly) return 2;
  return flow_on ? 1 : 0;
}

std::uint64_t episode_seed(std::uint64_t base, Task task, bool flow_on, int i) {
  return base + static_cast<std::uint64_t>(seed_block(task, flow_on)) * kSeedStride +
         static_cast<std::uint64_t>(i);
}

std::vector<EpisodeConfig> expand_suite(const SuiteConfig& cfg) {
  using planning::PlannerKind;
  using control::ControlLaw;
  if (cfg.seeds_transport >= static_cast<int>(kSeedStride) ||
      cfg.seeds_hex >= static_cast<int>(kSeedStride)) {
    throw ConfigError("seed count exceeds the per-block stride");
  }
  const std::pair<PlannerKind, ControlLaw> all[] = {{PlannerKind::AGP, ControlLaw::MPC},
                                                    {PlannerKind::AGP, ControlLaw::PID},
                                                    {PlannerKind::AStar, ControlLaw::MPC},
                                                    {PlannerKind::AStar, ControlLaw::PID}};
  std::vector<EpisodeConfig> out;
  auto add = [&](Task task, bool flow, PlannerKind pk, ControlLaw law, int n) {
    for (int i = 0; i < n; ++i) {
      EpisodeConfig c = cfg.base;
      c.task = task;
      c.flow_on = flow;
      c.planner = pk;
      c.controller = law;
      c.seed = episode_seed(cfg.seed_base, task, flow, i);
      out.push_back(c);
    }
  };
  if (cfg.transport && cfg.flow_on) {
    for (const auto& [pk, law] : all) {
      if (pk == PlannerKind::AGP) add(Task::Transport, true, pk, law, cfg.seeds_transport);
    }
  }
  if (cfg.transport && cfg.flow_off) {
    for (const auto& [pk, law] : all) add(Task::Transport, false, pk, law, cfg.seeds_transport);
  }
  if (cfg.assembly && cfg.flow_off) {
    for (const auto& [pk, law] : all) add(Task::Assembly, false, pk, law, cfg.seeds_hex);
  }
  return out;
}

namespace {

std::string dump_name(const EpisodeConfig& c) {
  std::string combo = c.combo();
  for (char& ch : combo) {
    if (ch == '*') ch = 's';
    if (ch == '+') ch = '_';
  }
  return task_name(c.task) + (c.flow_on ? "_flowon_" : "_flowoff_") + combo + "_" +
         std::to_string(c.seed) + ".jsonl";
}

}  // namespace

std::vector<EpisodeRecord> run_episodes(
    const std::vector<EpisodeConfig>& configs, int jobs, const std::string& dump_dir,
    const std::function<void(const EpisodeConfig&, const std::string&)>& on_skip) {
  if (!dump_dir.empty()) std::filesystem::create_directories(dump_dir);
  std::vector<std::optional<EpisodeRecord>> slots(configs.size());
  std::vector<std::string> errors(configs.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next++; i < configs.size(); i = next++) {
      try {
        if (dump_dir.empty()) {
          slots[i] = run_episode(configs[i]);
        } else {
          const auto path = std::filesystem::path(dump_dir) / dump_name(configs[i]);
          std::ofstream f(path, std::ios::binary | std::ios::trunc);
          if (!f) throw Error("cannot write " + path.string());
          slots[i] = run_episode(configs[i], &f);
        }
      } catch (const SceneGenerationError& e) {
        errors[i] = e.what();
      }
    }
  };
  const int n = std::max(1, std::min<int>(jobs, static_cast<int>(configs.size())));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int k = 0; k < n; ++k) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  std::vector<EpisodeRecord> out;
  out.reserve(configs.size());
  for (std::size_t i = 0; i < configs.size(); ++i) {
    if (slots[i]) {
      out.push_back(*slots[i]);
    } else if (on_skip) {
      on_skip(configs[i], errors[i]);
    }
  }
  return out;
}

namespace {

std::string combo_of(const EpisodeRecord& r) {
  return planning::planner_name(r.planner) + "+" + control::law_name(r.controller);
}

}  // namespace

std::vector<SummaryRow> summarize(const std::vector<EpisodeRecord>& records) {
  struct Acc {
    SummaryRow row;
    std::vector<double> time, track, path, planned, energy;
  };
  std::vector<Acc> groups;
  std::map<std::string, std::size_t> index;
  for (const auto& r : records) {
    const std::string key =
        task_name(r.task) + (r.flow_on ? "/on/" : "/off/") + combo_of(r);
    auto [it, fresh] = index.try_emplace(key, groups.size());
    if (fresh) {
      Acc a;
      a.row.task = r.task;
      a.row.flow_on = r.flow_on;
      a.row.combo = combo_of(r);
      groups.push_back(std::move(a));
    }
    Acc& a = groups[it->second];
    ++a.row.n;
    if (r.status == Status::Success) {
      ++a.row.successes;
      a.time.push_back(r.sim_time_sec);
      a.track.push_back(r.track_cell_mean_um);
      a.path.push_back(r.cell_path_um);
      a.planned.push_back(r.planned_push_um);
      a.energy.push_back(r.energy_df_sum);
    }
  }
  std::vector<SummaryRow> out;
  for (auto& a : groups) {
    SummaryRow& s = a.row;
    s.success_rate = s.n ? static_cast<double>(s.successes) / s.n : 0.0;
    s.ci = wilson_interval(s.successes, s.n);
    s.time = median(a.time);
    s.track_um = median(a.track);
    s.cell_path_um = median(a.path);
    s.planned_push_um = median(a.planned);
    s.energy = median(a.energy);
    out.push_back(s);
  }
  return out;
}

namespace {

std::string num(double v, const char* fmt) {
  if (std::isnan(v)) return "--";
  char buf[32];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

}  // namespace

std::string format_summary(const std::vector<SummaryRow>& rows) {
  std::string s;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-10s %-4s %-8s %4s %7s %15s %7s %8s %9s %9s %8s\n", "task",
                "flow", "baseline", "N", "success", "wilson95", "time_s", "track_um",
                "cellpath", "planned", "E_dw");
  s += buf;
  for (const auto& r : rows) {
    const std::string ci = "[" + num(r.ci.lo, "%.3f") + "," + num(r.ci.hi, "%.3f") + "]";
    std::snprintf(buf, sizeof buf, "%-10s %-4s %-8s %4d %7.3f %15s %7s %8s %9s %9s %8s\n",
                  task_name(r.task).c_str(), r.flow_on ? "on" : "off", r.combo.c_str(), r.n,
                  r.success_rate, ci.c_str(), num(r.time, "%.1f").c_str(),
                  num(r.track_um, "%.3f").c_str(), num(r.cell_path_um, "%.1f").c_str(),
                  num(r.planned_push_um, "%.1f").c_str(), num(r.energy, "%.0f").c_str());
    s += buf;
  }
  return s;
}

std::vector<SensitivityRow> compare_runs(const std::vector<EpisodeRecord>& a,
                                         const std::vector<EpisodeRecord>& b) {
  const auto sa = summarize(a);
  const auto sb = summarize(b);
  std::vector<SensitivityRow> out;
  for (const auto& ra : sa) {
    for (const auto& rb : sb) {
      if (ra.task != rb.task || ra.flow_on != rb.flow_on || ra.combo != rb.combo) continue;
      out.push_back({ra.task, ra.flow_on, ra.combo, ra.success_rate, rb.success_rate, ra.time,
                     rb.time});
    }
  }
  return out;
}

std::string format_sensitivity(const std::vector<SensitivityRow>& rows, double r_a, double r_b) {
  std::string s;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-10s %-4s %-8s %9s %9s %7s %8s %8s %7s\n", "task", "flow",
                "baseline", ("S@" + num(r_a, "%g")).c_str(), ("S@" + num(r_b, "%g")).c_str(),
                "dS", ("T@" + num(r_a, "%g")).c_str(), ("T@" + num(r_b, "%g")).c_str(), "dT");
  s += buf;
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%-10s %-4s %-8s %9.3f %9.3f %7.3f %8s %8s %7s\n",
                  task_name(r.task).c_str(), r.flow_on ? "on" : "off", r.combo.c_str(),
                  r.success_a, r.success_b, r.success_b - r.success_a,
                  num(r.time_a, "%.1f").c_str(), num(r.time_b, "%.1f").c_str(),
                  num(r.time_b - r.time_a, "%.1f").c_str());
    s += buf;
  }
  return s;
}

}  // namespace micropush::bench
