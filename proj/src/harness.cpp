#include "ccsim/harness.hpp"

#include <algorithm>
#include <bit>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <queue>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

namespace ccsim::harness {

RunMode run_mode_from_string(const std::string& s) {
  if (s == "static") return RunMode::Static;
  if (s == "dynamic") return RunMode::Dynamic;
  if (s == "both") return RunMode::Both;
  throw ConfigError("unknown run mode: " + s);
}

const char* to_string(RunMode m) {
  switch (m) {
    case RunMode::Static: return "static";
    case RunMode::Dynamic: return "dynamic";
    case RunMode::Both: return "both";
  }
  return "?";
}

std::map<VertexId, Level> oracle_bfs(
    const std::vector<workload::EdgeRecord>& edges, VertexId root) {
  std::unordered_map<VertexId, std::vector<VertexId>> adj;
  std::map<VertexId, Level> levels;
  levels[root] = kUnreachedLevel;
  for (const auto& e : edges) {
    adj[e.src].push_back(e.dst);
    levels[e.src] = kUnreachedLevel;
    levels[e.dst] = kUnreachedLevel;
  }
  levels[root] = 0;
  std::queue<VertexId> q;
  q.push(root);
  while (!q.empty()) {
    const VertexId u = q.front();
    q.pop();
    const auto it = adj.find(u);
    if (it == adj.end()) continue;
    for (const VertexId v : it->second) {
      if (levels[v] != kUnreachedLevel) continue;
      levels[v] = levels[u] + 1;
      q.push(v);
    }
  }
  return levels;
}

std::vector<Mismatch> compare_levels(const std::map<VertexId, Level>& sim,
                                     const std::map<VertexId, Level>& oracle) {
  std::vector<Mismatch> out;
  auto level_or_unreached = [](const std::map<VertexId, Level>& m,
                               VertexId id) {
    const auto it = m.find(id);
    return it == m.end() ? kUnreachedLevel : it->second;
  };
  for (const auto& [id, lvl] : sim) {
    const Level o = level_or_unreached(oracle, id);
    if (lvl != o) out.push_back(Mismatch{id, lvl, o});
  }
  for (const auto& [id, lvl] : oracle) {
    if (!sim.contains(id) && lvl != kUnreachedLevel) {
      out.push_back(Mismatch{id, kUnreachedLevel, lvl});
    }
  }
  return out;
}

std::map<VertexId, Level> collect_levels(const Chip& chip) {
  std::map<VertexId, Level> levels;
  const auto& topo = chip.topology();
  for (uint32_t y = 0; y < topo.height; ++y) {
    for (uint32_t x = 0; x < topo.width; ++x) {
      const Coord c{static_cast<uint16_t>(x), static_cast<uint16_t>(y)};
      const auto& store = chip.space().cell(c);
      for (const auto& [id, slot] : store.directory()) {
        levels[id] = store.object(slot).level;
      }
    }
  }
  return levels;
}

std::string levels_checksum(const std::map<VertexId, Level>& levels) {
  uint64_t hash = 0xcbf29ce484222325ull;
  auto mix = [&hash](uint64_t value, int bytes) {
    for (int i = 0; i < bytes; ++i) {
      hash ^= (value >> (8 * i)) & 0xff;
      hash *= 0x100000001b3ull;
    }
  };
  for (const auto& [id, lvl] : levels) {
    mix(id, 8);
    mix(lvl, 4);
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << hash;
  return os.str();
}

namespace {

std::string describe_mismatches(const std::vector<Mismatch>& mm,
                                const std::string& context) {
  std::ostringstream os;
  os << context << ": " << mm.size() << " level mismatch(es);";
  const size_t shown = std::min<size_t>(mm.size(), 5);
  for (size_t i = 0; i < shown; ++i) {
    os << " vertex " << mm[i].id << " sim=" << mm[i].sim
       << " ref=" << mm[i].oracle;
  }
  if (mm.size() > shown) os << " ...";
  return os.str();
}

void verify_against_oracle(const Chip& chip, const RunConfig& cfg, size_t k,
                           const std::string& context) {
  if (!cfg.verify) return;
  const auto oracle = oracle_bfs(cfg.schedule.accumulated(k), cfg.root);
  const auto mm = compare_levels(collect_levels(chip), oracle);
  if (!mm.empty()) throw OracleMismatchError(describe_mismatches(mm, context));
}

ActionInstance insert_edge_instance(graph::ObjectSpace& space,
                                    const workload::EdgeRecord& e) {
  const ObjectAddress src_root = space.resolve(e.src, true);
  return ActionInstance{src_root, Opcode::InsertEdge, e.dst,
                        std::bit_cast<uint32_t>(e.weight)};
}

void seed_root(Chip& chip, VertexId root) {
  const ObjectAddress addr = chip.space().resolve(root, true);
  Operon seed;
  seed.dst_cc = addr.cc;
  seed.dst_object = addr;
  seed.opcode = Opcode::Seed;
  seed.operand0 = 0;
  chip.inject(seed, addr.cc);  // own cell, lands on the queue directly
}

IncrementReport snapshot_report(const Chip& chip, const ChipCounters& before,
                                uint64_t cycles, uint32_t increment,
                                const char* mode) {
  const ChipCounters& after = chip.counters();
  IncrementReport r;
  r.increment = increment;
  r.mode = mode;
  r.cycles = cycles;
  r.actions_created = after.actions_created - before.actions_created;
  r.actions_executed = after.actions_executed - before.actions_executed;
  r.operons_delivered = after.operons_delivered - before.operons_delivered;
  r.levels_checksum = levels_checksum(collect_levels(chip));
  return r;
}

}  // namespace

RunResult run_dynamic(const RunConfig& cfg) {
  Chip chip(cfg.chip);

  RunResult result;

  // Seed prologue: the root settles before any increment and is not a
  // report row of its own.
  seed_root(chip, cfg.root);
  chip.run_until_quiescent(cfg.max_cycles);
  chip.step();  // explicit pause row at the boundary
  result.boundary_cycles.push_back(chip.cycle());
  for (size_t k = 1; k <= cfg.schedule.increments.size(); ++k) {
    const auto& batch = cfg.schedule.increments[k - 1];

    // Endpoint roots are data-plane state; creating them up front keeps
    // the measured cycles about level propagation, not placement.
    for (const auto& e : batch) {
      chip.space().resolve(e.src, true);
      chip.space().resolve(e.dst, true);
    }

    const ChipCounters before = chip.counters();
    for (const auto& e : batch) {
      chip.enqueue_action(insert_edge_instance(chip.space(), e));
    }
    const uint64_t cycles = chip.run_until_quiescent(cfg.max_cycles);

    result.reports.push_back(snapshot_report(
        chip, before, cycles, static_cast<uint32_t>(k), "dynamic"));
    verify_against_oracle(chip, cfg, k,
                          "dynamic increment " + std::to_string(k));
    chip.step();  // pause row between batches
    result.boundary_cycles.push_back(chip.cycle());
  }

  result.trace = chip.trace();
  result.final_levels = collect_levels(chip);
  return result;
}

IncrementReport run_static(const RunConfig& cfg, size_t k,
                           std::vector<CycleStats>* trace_out) {
  Chip chip(cfg.chip);
  graph::ObjectSpace& space = chip.space();

  // Build the accumulated graph directly; only the traversal is timed.
  for (const auto& e : cfg.schedule.accumulated(k)) {
    const ObjectAddress src_root = space.resolve(e.src, true);
    const ObjectAddress dst_root = space.resolve(e.dst, true);
    space.insert_edge(src_root, dst_root, e.weight);
  }

  const ChipCounters before = chip.counters();
  seed_root(chip, cfg.root);
  const uint64_t cycles = chip.run_until_quiescent(cfg.max_cycles);

  IncrementReport report = snapshot_report(
      chip, before, cycles, static_cast<uint32_t>(k), "static");
  verify_against_oracle(chip, cfg, k, "static after " + std::to_string(k));
  if (trace_out) *trace_out = chip.trace();
  return report;
}

RunResult run_experiment(const RunConfig& cfg) {
  switch (cfg.mode) {
    case RunMode::Dynamic:
      return run_dynamic(cfg);
    case RunMode::Static: {
      RunResult result;
      const size_t n = cfg.schedule.increments.size();
      for (size_t k = 1; k <= n; ++k) {
        result.reports.push_back(
            run_static(cfg, k, k == n ? &result.trace : nullptr));
      }
      if (n == 0) result.reports.push_back(run_static(cfg, 0, &result.trace));
      return result;
    }
    case RunMode::Both: {
      RunResult dynamic = run_dynamic(cfg);
      RunResult result;
      result.trace = std::move(dynamic.trace);
      result.final_levels = std::move(dynamic.final_levels);
      result.boundary_cycles = std::move(dynamic.boundary_cycles);
      for (size_t k = 1; k <= cfg.schedule.increments.size(); ++k) {
        result.reports.push_back(std::move(dynamic.reports[k - 1]));
        result.reports.push_back(run_static(cfg, k));
      }
      return result;
    }
  }
  throw ConfigError("unknown run mode");
}

void write_report_csv(const std::vector<IncrementReport>& reports,
                      const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write report file: " + path);
  out << kReportCsvHeader << "\n";
  for (const IncrementReport& r : reports) {
    out << r.increment << "," << r.mode << "," << r.cycles << ","
        << r.actions_created << "," << r.actions_executed << ","
        << r.operons_delivered << "," << r.levels_checksum << "\n";
  }
  if (!out) throw ConfigError("failed writing report file: " + path);
}

void emit_reports(const RunResult& result, const RunConfig& cfg,
                  const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  const auto dir = std::filesystem::path(out_dir);

  write_report_csv(result.reports, (dir / "report.csv").string());
  write_trace_csv(result.trace, (dir / "trace.csv").string());

  nlohmann::json summary;
  summary["grid"] = std::to_string(cfg.chip.topo.width) + "x" +
                    std::to_string(cfg.chip.topo.height);
  summary["mode"] = to_string(cfg.mode);
  summary["root"] = cfg.root;
  summary["increments"] = cfg.schedule.increments.size();
  summary["seed"] = cfg.seed;
  summary["max_cycles_guard"] = cfg.max_cycles;
  summary["vertices"] = result.final_levels.size();
  summary["edges_total"] = cfg.schedule.total_edges();

  uint64_t dynamic_cycles = 0;
  uint64_t static_cycles = 0;
  uint64_t created = 0;
  for (const IncrementReport& r : result.reports) {
    if (r.mode == "dynamic") {
      dynamic_cycles += r.cycles;
      created += r.actions_created;
    } else {
      static_cycles += r.cycles;
    }
  }
  summary["dynamic_cycles_total"] = dynamic_cycles;
  summary["static_cycles_total"] = static_cycles;
  summary["dynamic_actions_created_total"] = created;
  summary["levels_checksum"] = result.reports.empty()
                                   ? levels_checksum(result.final_levels)
                                   : result.reports.back().levels_checksum;

  std::ofstream out(dir / "summary.json");
  if (!out) {
    throw ConfigError("cannot write summary file: " +
                      (dir / "summary.json").string());
  }
  out << summary.dump(2) << "\n";
}

}  // namespace ccsim::harness
