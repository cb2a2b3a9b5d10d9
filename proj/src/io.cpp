#include "mjpslice/io.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace mjps {

using nlohmann::json;

namespace {

std::ofstream open_out(const std::string& file) {
  std::ofstream out(file);
  if (!out) throw ConfigError("cannot open for writing: " + file);
  out.precision(17);
  return out;
}

std::ifstream open_in(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open for reading: " + file);
  return in;
}

}  // namespace

void write_paths_jsonl(const std::string& file, const std::vector<MJPPath>& paths) {
  auto out = open_out(file);
  for (std::size_t k = 0; k < paths.size(); ++k) {
    json rec;
    rec["k"] = k;
    rec["horizon"] = paths[k].horizon;
    rec["times"] = paths[k].times;
    json states = json::array();
    for (const auto& s : paths[k].states) {
      json coords = json::array();
      for (std::size_t i = 0; i < s.dim(); ++i) coords.push_back(s[i]);
      states.push_back(coords);
    }
    rec["states"] = states;
    out << rec.dump() << "\n";
  }
}

std::vector<MJPPath> read_paths_jsonl(const std::string& file) {
  auto in = open_in(file);
  std::vector<MJPPath> paths;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const json rec = json::parse(line);
    MJPPath path;
    path.horizon = rec.at("horizon").get<double>();
    path.times = rec.at("times").get<std::vector<double>>();
    for (const auto& coords : rec.at("states")) {
      const auto vals = coords.get<std::vector<std::int64_t>>();
      State state;
      switch (vals.size()) {
        case 1: state = State{vals[0]}; break;
        case 2: state = State{vals[0], vals[1]}; break;
        case 3: state = State{vals[0], vals[1], vals[2]}; break;
        case 4: state = State{vals[0], vals[1], vals[2], vals[3]}; break;
        default: throw ConfigError("paths file: unsupported state dimension");
      }
      path.states.push_back(state);
    }
    if (path.times.size() != path.states.size())
      throw ConfigError("paths file: times/states length mismatch");
    paths.push_back(std::move(path));
  }
  return paths;
}

void write_observations_jsonl(const std::string& file, const std::vector<ProcessData>& data) {
  auto out = open_out(file);
  for (std::size_t k = 0; k < data.size(); ++k) {
    for (const auto& obs : data[k].y) {
      json rec;
      rec["k"] = k;
      rec["t"] = obs.time;
      rec["kind"] = "timed";
      rec["tag"] = "state";
      rec["payload"] = obs.payload;
      out << rec.dump() << "\n";
    }
    for (const auto& entry : data[k].z.entries) {
      json rec;
      rec["k"] = k;
      rec["t"] = entry.time;
      rec["kind"] = "jump";
      rec["tag"] = tag_name(entry.label.tag);
      rec["payload"] = entry.label.payload;
      out << rec.dump() << "\n";
    }
  }
}

std::vector<ProcessData> read_observations_jsonl(const std::string& file, double horizon) {
  auto in = open_in(file);
  std::vector<ProcessData> data;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const json rec = json::parse(line);
    const std::size_t k = rec.at("k").get<std::size_t>();
    if (k >= data.size()) data.resize(k + 1);
    data[k].horizon = horizon;
    const double t = rec.at("t").get<double>();
    if (t < 0.0 || t > horizon)
      throw ConfigError("observations file: time outside [0, horizon]");
    const std::string kind = rec.at("kind").get<std::string>();
    if (kind == "timed") {
      const auto payload = rec.at("payload").get<std::vector<std::int64_t>>();
      State s;
      switch (payload.size()) {
        case 1: s = State{payload[0]}; break;
        case 2: s = State{payload[0], payload[1]}; break;
        case 3: s = State{payload[0], payload[1], payload[2]}; break;
        case 4: s = State{payload[0], payload[1], payload[2], payload[3]}; break;
        default: throw ConfigError("observations file: unsupported state dimension");
      }
      data[k].y.push_back(exact_state_observation(t, s));
    } else if (kind == "jump") {
      JumpLabel lab{tag_from_name(rec.at("tag").get<std::string>()),
                    rec.at("payload").get<std::int64_t>()};
      data[k].z.entries.push_back({t, lab});
    } else {
      throw ConfigError("observations file: unknown kind " + kind);
    }
  }
  for (auto& proc : data) {
    std::stable_sort(proc.y.begin(), proc.y.end(),
                     [](const auto& a, const auto& b) { return a.time < b.time; });
    std::stable_sort(proc.z.entries.begin(), proc.z.entries.end(),
                     [](const auto& a, const auto& b) { return a.time < b.time; });
    validate_jump_observations(proc.z);
  }
  return data;
}

void write_trace_csv(const std::string& file, const McmcTrace& trace) {
  auto out = open_out(file);
  out << "iter,chain,name,value\n";
  for (std::size_t chain = 0; chain < trace.rates.size(); ++chain)
    for (std::size_t row = 0; row < trace.rates[chain].size(); ++row)
      for (std::size_t j = 0; j < trace.rate_names.size(); ++j)
        out << trace.kept_iters[row] << "," << chain << "," << trace.rate_names[j] << ","
            << trace.rates[chain][row][j] << "\n";
}

void write_memberships_csv(const std::string& file, const McmcTrace& trace) {
  auto out = open_out(file);
  out << "iter,chain,k,c\n";
  for (std::size_t chain = 0; chain < trace.memberships.size(); ++chain)
    for (std::size_t row = 0; row < trace.memberships[chain].size(); ++row)
      for (std::size_t k = 0; k < trace.memberships[chain][row].size(); ++k)
        out << trace.kept_iters[row] << "," << chain << "," << k << ","
            << trace.memberships[chain][row][k] << "\n";
}

void write_timing_csv(const std::string& file, const McmcTrace& trace) {
  auto out = open_out(file);
  out << "iter,chain,seconds\n";
  for (std::size_t chain = 0; chain < trace.augment_seconds.size(); ++chain)
    for (std::size_t t = 0; t < trace.augment_seconds[chain].size(); ++t)
      out << (t + 1) << "," << chain << "," << trace.augment_seconds[chain][t] << "\n";
}

void write_diagnostics_json(const std::string& file, const AugmentStats& stats) {
  json doc;
  doc["virtual_jumps"] = stats.virtual_jumps;
  doc["clamped_nodes"] = stats.clamped_nodes;
  doc["infeasible_retries"] = stats.infeasible_retries;
  doc["kept_current"] = stats.kept_current;
  doc["frontier_size_hist"] = stats.frontier_size_hist;
  doc["max_frontier"] = stats.max_frontier;
  auto out = open_out(file);
  out << doc.dump(2) << "\n";
}

void write_metrics_csv(const std::string& file, const std::vector<MetricRow>& rows) {
  auto out = open_out(file);
  out << "metric,name,value\n";
  for (const auto& row : rows) out << row.metric << "," << row.name << "," << row.value << "\n";
}

std::string sha_like_hash(const std::string& text) {
  // 128-bit FNV-1a variant, hex encoded. A fingerprint, not a cryptographic hash.
  std::uint64_t h1 = 0xcbf29ce484222325ULL, h2 = 0x84222325cbf29ce4ULL;
  for (unsigned char c : text) {
    h1 = (h1 ^ c) * 0x100000001b3ULL;
    h2 = (h2 ^ (c + 0x9e)) * 0x100000001b3ULL;
  }
  std::ostringstream out;
  out << std::hex << h1 << h2;
  return out.str();
}

}  // namespace mjps
