#ifndef MJPSLICE_IO_HPP
#define MJPSLICE_IO_HPP

#include <string>
#include <vector>

#include "mjpslice/mcmc.hpp"

namespace mjps {

// Paths serialize to JSON lines, one record per path:
//   {"k": 0, "horizon": T, "times": [...], "states": [[...], ...]}
// Round-trips are lossless for 64-bit float times.
void write_paths_jsonl(const std::string& file, const std::vector<MJPPath>& paths);
std::vector<MJPPath> read_paths_jsonl(const std::string& file);

// Observations serialize to JSON lines, one record per observation:
//   {"k": 0, "t": ..., "kind": "timed"|"jump", "tag": ..., "payload": ...}
// Timed records carry the exact observed state as their payload; q_z lives in
// the run config, never in the data file.
void write_observations_jsonl(const std::string& file, const std::vector<ProcessData>& data);
std::vector<ProcessData> read_observations_jsonl(const std::string& file, double horizon);

// Trace store CSVs.
void write_trace_csv(const std::string& file, const McmcTrace& trace);
void write_memberships_csv(const std::string& file, const McmcTrace& trace);
void write_timing_csv(const std::string& file, const McmcTrace& trace);

// Augmentation diagnostics counters as a small JSON document.
void write_diagnostics_json(const std::string& file, const AugmentStats& stats);

// Diagnostics report rows `metric,name,value`.
struct MetricRow {
  std::string metric;
  std::string name;
  double value;
};
void write_metrics_csv(const std::string& file, const std::vector<MetricRow>& rows);

std::string sha_like_hash(const std::string& text);  // stable hex config fingerprint

}  // namespace mjps

#endif
