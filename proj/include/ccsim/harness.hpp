#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ccsim/fabric.hpp"
#include "ccsim/workloads.hpp"

namespace ccsim::harness {

enum class RunMode : uint8_t { Static = 0, Dynamic = 1, Both = 2 };

RunMode run_mode_from_string(const std::string& s);
const char* to_string(RunMode m);

struct RunConfig {
  ChipConfig chip;
  VertexId root = 0;
  workload::IncrementSchedule schedule;
  RunMode mode = RunMode::Dynamic;
  uint64_t max_cycles = 10'000'000;  // guard per quiescent run
  uint64_t seed = 0;                 // recorded in the summary
  bool verify = true;                // reference-BFS check per increment
};

struct IncrementReport {
  uint32_t increment = 0;  // 1-based
  std::string mode;        // "dynamic" or "static"
  uint64_t cycles = 0;
  uint64_t actions_created = 0;
  uint64_t actions_executed = 0;
  uint64_t operons_delivered = 0;
  std::string levels_checksum;
};

struct RunResult {
  std::vector<IncrementReport> reports;
  std::vector<CycleStats> trace;
  std::map<VertexId, Level> final_levels;
  // Cycle index of the explicit pause row after the prologue and after
  // each batch; the chip is provably idle on these rows.
  std::vector<uint64_t> boundary_cycles;
};

// Reference traversal: hop distances by queue-based search over the given
// directed edges. Unreachable endpoints keep the sentinel level.
std::map<VertexId, Level> oracle_bfs(
    const std::vector<workload::EdgeRecord>& edges, VertexId root);

struct Mismatch {
  VertexId id = 0;
  Level sim = kUnreachedLevel;
  Level oracle = kUnreachedLevel;
};

// Differences over the union of both vertex sets; absent entries count as
// unreached.
std::vector<Mismatch> compare_levels(const std::map<VertexId, Level>& sim,
                                     const std::map<VertexId, Level>& oracle);

// Every rooted vertex on the chip with its current level, sorted by id.
std::map<VertexId, Level> collect_levels(const Chip& chip);

// FNV-1a over the sorted (id, level) pairs, as 16 hex digits.
std::string levels_checksum(const std::map<VertexId, Level>& levels);

// Seeds the root, then per batch: enqueue one insert-edge action per record
// at the source's owning cell, run to quiescence, snapshot a report, verify
// against the reference, and take one explicit pause cycle. Graph and
// levels persist across batches.
RunResult run_dynamic(const RunConfig& cfg);

// Fresh chip, batches 1..k built directly into the object space, then a
// from-scratch seeded traversal to quiescence.
IncrementReport run_static(const RunConfig& cfg, size_t k,
                           std::vector<CycleStats>* trace_out = nullptr);

// Dispatches on cfg.mode; BOTH pairs a dynamic and a static row per
// increment (statics on fresh chips; the trace is the dynamic one).
RunResult run_experiment(const RunConfig& cfg);

inline constexpr const char* kReportCsvHeader =
    "increment,mode,cycles,actions_created,actions_executed,"
    "operons_delivered,levels_checksum";

void write_report_csv(const std::vector<IncrementReport>& reports,
                      const std::string& path);

// report.csv, trace.csv, and summary.json under out_dir.
void emit_reports(const RunResult& result, const RunConfig& cfg,
                  const std::string& out_dir);

}  // namespace ccsim::harness
