#include "micropush/bench/csv.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "micropush/core/error.hpp"

namespace micropush::bench {

const char* const kCsvHeader =
    "seed,task,planner,controller,flow_on,status,sim_time_sec,steps,track_cell_mean_um,"
    "cell_path_um,planned_push_um,energy_df_sum";

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  std::string s = buf;
  if (s == "-0") s = "0";
  return s;
}

namespace {

// RFC 4180: quote fields that contain a comma, quote or line break.
std::string field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

std::string csv_row(const EpisodeRecord& r) {
  std::string s;
  s += std::to_string(r.seed) + ',';
  s += field(task_name(r.task)) + ',';
  s += field(planning::planner_name(r.planner)) + ',';
  s += field(control::law_name(r.controller)) + ',';
  s += std::string(r.flow_on ? "true" : "false") + ',';
  s += field(status_name(r.status)) + ',';
  s += format_number(r.sim_time_sec) + ',';
  s += std::to_string(r.steps) + ',';
  s += format_number(r.track_cell_mean_um) + ',';
  s += format_number(r.cell_path_um) + ',';
  s += format_number(r.planned_push_um) + ',';
  s += format_number(r.energy_df_sum);
  return s;
}

std::string csv_text(const std::vector<EpisodeRecord>& records) {
  std::string s = std::string(kCsvHeader) + "\r\n";
  for (const auto& r : records) s += csv_row(r) + "\r\n";
  return s;
}

std::vector<EpisodeRecord> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<EpisodeRecord> out;
  bool header = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (header) {
      if (line != kCsvHeader) throw ConfigError("unexpected CSV header: " + line);
      header = false;
      continue;
    }
    const auto f = split_row(line);
    if (f.size() != 12) throw ConfigError("CSV row with " + std::to_string(f.size()) + " fields");
    EpisodeRecord r;
    r.seed = std::stoull(f[0]);
    r.task = parse_task(f[1]);
    r.planner = planning::parse_planner(f[2]);
    r.controller = control::parse_law(f[3]);
    r.flow_on = f[4] == "true";
    r.status = f[5] == "success" ? Status::Success : Status::Timeout;
    r.sim_time_sec = std::stod(f[6]);
    r.steps = std::stoll(f[7]);
    r.track_cell_mean_um = std::stod(f[8]);
    r.cell_path_um = std::stod(f[9]);
    r.planned_push_um = std::stod(f[10]);
    r.energy_df_sum = std::stod(f[11]);
    out.push_back(r);
  }
  return out;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot write " + tmp);
    f << content;
    f.flush();
    if (!f) {
      f.close();
      std::remove(tmp.c_str());
      throw Error("write failed: " + tmp);
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::remove(tmp.c_str());
    throw Error("cannot rename " + tmp + " to " + path + ": " + ec.message());
  }
}

}  // namespace micropush::bench
