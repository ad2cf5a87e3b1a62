// ccsim command line: chip design-space sweeps, workload generation, and
// simulator runs with reference verification.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ccsim/chip_dse.hpp"
#include "ccsim/errors.hpp"
#include "ccsim/harness.hpp"
#include "ccsim/workloads.hpp"

namespace {

using namespace ccsim;

std::pair<uint32_t, uint32_t> parse_grid(const std::string& s) {
  const size_t x = s.find('x');
  if (x == std::string::npos || x == 0 || x + 1 >= s.size()) {
    throw ConfigError("grid must look like WxH, got '" + s + "'");
  }
  try {
    const unsigned long w = std::stoul(s.substr(0, x));
    const unsigned long h = std::stoul(s.substr(x + 1));
    if (w == 0 || h == 0 || w > 0xffff || h > 0xffff) {
      throw ConfigError("grid dimensions out of range: '" + s + "'");
    }
    return {static_cast<uint32_t>(w), static_cast<uint32_t>(h)};
  } catch (const std::logic_error&) {
    throw ConfigError("grid must look like WxH, got '" + s + "'");
  }
}

uint64_t parse_u64_flag(const std::string& value, const std::string& key) {
  try {
    return std::stoull(value);
  } catch (const std::logic_error&) {
    throw ConfigError("value for " + key + " is not a number: '" + value +
                      "'");
  }
}

// key=value overrides for the transistor model and memory organization.
void apply_model_override(dse::TransistorModel& model, dse::MemoryConfig& mem,
                          const std::string& kv) {
  const size_t eq = kv.find('=');
  if (eq == std::string::npos) {
    throw ConfigError("model override must be key=value, got '" + kv + "'");
  }
  const std::string key = kv.substr(0, eq);
  const uint64_t value = parse_u64_flag(kv.substr(eq + 1), key);
  if (key == "exec_fixed") {
    model.exec_fixed = value;
  } else if (key == "exec_per_addr_bit") {
    model.exec_per_addr_bit = value;
  } else if (key == "periph_fixed_per_bank") {
    model.periph_fixed_per_bank = value;
  } else if (key == "periph_per_addr_bit_per_bank") {
    model.periph_per_addr_bit_per_bank = value;
  } else if (key == "fifo_per_bit") {
    model.fifo_per_bit = value;
  } else if (key == "router_fixed_per_link") {
    model.router_fixed_per_link = value;
  } else if (key == "flit_bits") {
    model.flit_bits = static_cast<uint32_t>(value);
  } else if (key == "fifo_depth") {
    model.fifo_depth = static_cast<uint32_t>(value);
  } else if (key == "banks") {
    mem.banks = static_cast<uint32_t>(value);
  } else if (key == "word_bits") {
    mem.word_bits = static_cast<uint32_t>(value);
  } else if (key == "bitcell_transistors") {
    mem.bitcell_transistors = static_cast<uint32_t>(value);
  } else {
    throw ConfigError(
        "unknown model key '" + key +
        "' (valid: exec_fixed, exec_per_addr_bit, periph_fixed_per_bank, "
        "periph_per_addr_bit_per_bank, fifo_per_bit, router_fixed_per_link, "
        "flit_bits, fifo_depth, banks, word_bits, bitcell_transistors)");
  }
}

struct DseArgs {
  uint64_t min_mem = 1024;
  uint64_t max_mem = 1024 * 1024;
  std::vector<uint64_t> explicit_sizes;
  std::string shape = "square";
  double density = 91.0e6;
  double area = 306.0;
  std::vector<std::string> overrides;
  std::string out = "-";
};

int run_dse_sweep(const DseArgs& args) {
  dse::TransistorModel model;
  dse::MemoryConfig mem;
  for (const std::string& kv : args.overrides) {
    apply_model_override(model, mem, kv);
  }

  std::vector<uint64_t> sizes = args.explicit_sizes;
  if (sizes.empty()) {
    if (args.min_mem == 0 || args.min_mem > args.max_mem) {
      throw ConfigError("memory sweep range must satisfy 0 < min <= max");
    }
    for (uint64_t m = args.min_mem; m <= args.max_mem; m *= 2) {
      sizes.push_back(m);
    }
  }

  const dse::ProcessParams proc{args.density, args.area};
  const auto points =
      dse::sweep(sizes, dse::shape_from_string(args.shape), proc, model, mem);

  if (args.out == "-") {
    dse::write_sweep_csv(std::cout, points);
  } else {
    std::ofstream out(args.out);
    if (!out) throw ConfigError("cannot write sweep file: " + args.out);
    dse::write_sweep_csv(out, points);
    std::cout << "wrote " << args.out << " (" << points.size() << " points)\n";
  }
  return kExitOk;
}

struct WorkloadSource {
  std::vector<std::string> increment_files;
  std::string edges_file;
  std::string index_file;
  uint32_t id_base = 0;
  bool undirected = false;

  workload::IncrementSchedule load() const {
    const workload::LoadOptions opt{id_base, undirected};
    if (!increment_files.empty()) {
      if (!edges_file.empty() || !index_file.empty()) {
        throw ConfigError(
            "give either --increments or --edges/--increment-index, not both");
      }
      return workload::load_increments(increment_files, opt);
    }
    if (edges_file.empty() || index_file.empty()) {
      throw ConfigError(
          "need --increments files or an --edges/--increment-index pair");
    }
    return workload::load_increments_indexed(edges_file, index_file, opt);
  }
};

struct SimArgs {
  std::string grid = "32x32";
  std::string mode = "dynamic";
  VertexId root = 0;
  WorkloadSource source;
  uint32_t chunk_cap = 8;
  uint32_t fifo_depth = 4;
  uint32_t staging_depth = 4;
  uint64_t mem_bytes = 32 * 1024;
  std::string ghost_policy = "spill";
  uint32_t predicate_cycles = 1;
  uint32_t work_cycles = 1;
  uint64_t max_cycles = 10'000'000;
  uint64_t seed = 0;
  bool no_verify = false;
  std::string out = "out";
};

int run_sim(const SimArgs& args) {
  harness::RunConfig cfg;
  const auto [w, h] = parse_grid(args.grid);
  cfg.chip.topo = ChipTopology{w, h, args.fifo_depth, args.staging_depth};
  cfg.chip.bytes_per_cell = args.mem_bytes;
  cfg.chip.chunk_cap = args.chunk_cap;
  cfg.chip.ghost_policy = graph::ghost_policy_from_string(args.ghost_policy);
  cfg.chip.costs = ActionCosts{args.predicate_cycles, args.work_cycles};
  cfg.root = args.root;
  cfg.mode = harness::run_mode_from_string(args.mode);
  cfg.max_cycles = args.max_cycles;
  cfg.seed = args.seed;
  cfg.verify = !args.no_verify;
  cfg.schedule = args.source.load();

  const harness::RunResult result = harness::run_experiment(cfg);
  harness::emit_reports(result, cfg, args.out);

  std::cout << harness::kReportCsvHeader << "\n";
  for (const auto& r : result.reports) {
    std::cout << r.increment << "," << r.mode << "," << r.cycles << ","
              << r.actions_created << "," << r.actions_executed << ","
              << r.operons_delivered << "," << r.levels_checksum << "\n";
  }
  std::cout << "wrote " << args.out << "/report.csv, trace.csv, summary.json\n";
  return kExitOk;
}

struct GenArgs {
  std::string kind = "edge";
  std::string base;
  uint32_t increments = 10;
  uint64_t seed = 0;
  VertexId start = 0;
  uint32_t id_base = 0;
  bool undirected = false;
  std::string out = ".";
  std::string stem;
};

int run_workload_gen(const GenArgs& args) {
  const workload::LoadOptions opt{args.id_base, args.undirected};
  workload::SamplerConfig cfg;
  cfg.kind = workload::sampler_kind_from_string(args.kind);
  cfg.base_graph = workload::load_edge_list(args.base, opt);
  cfg.increments = args.increments;
  cfg.seed = args.seed;
  cfg.snowball_start = args.start;

  const workload::IncrementSchedule schedule =
      cfg.kind == workload::SamplerKind::Edge ? workload::gen_edge_sampled(cfg)
                                              : workload::gen_snowball(cfg);
  const std::string stem = args.stem.empty() ? args.kind : args.stem;
  const auto paths =
      workload::write_increment_files(schedule, args.out, stem);
  for (const std::string& p : paths) std::cout << p << "\n";
  return kExitOk;
}

struct StatsArgs {
  WorkloadSource source;
  std::string out = "-";
};

int run_workload_stats(const StatsArgs& args) {
  const auto schedule = args.source.load();
  const auto stats = workload::schedule_stats(schedule);
  if (args.out == "-") {
    std::cout << workload::kStatsCsvHeader << "\n";
    for (size_t i = 0; i < stats.size(); ++i) {
      std::cout << i + 1 << "," << stats[i].edges << ","
                << stats[i].cumulative_edges << ","
                << stats[i].distinct_vertices << "\n";
    }
  } else {
    workload::write_stats_csv(stats, args.out);
    std::cout << "wrote " << args.out << " (" << stats.size() << " rows)\n";
  }
  return kExitOk;
}

void add_source_flags(CLI::App* cmd, WorkloadSource& src) {
  cmd->add_option("--increments", src.increment_files,
                  "Increment TSV files, one batch per file, in order")
      ->delimiter(',');
  cmd->add_option("--edges", src.edges_file,
                  "Single edge TSV, split by --increment-index");
  cmd->add_option("--increment-index", src.index_file,
                  "Batch-size file: one edge count per line");
  cmd->add_option("--id-base", src.id_base,
                  "Vertex ids in the files are 0- or 1-based")
      ->check(CLI::Range(0, 1));
  cmd->add_flag("--undirected", src.undirected,
                "Symmetrize every record at load");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Message-driven mesh chip simulator and design explorer"};
  app.require_subcommand(1);

  DseArgs dse_args;
  CLI::App* dse_cmd = app.add_subcommand("dse", "Chip design-space tools");
  dse_cmd->require_subcommand(1);
  CLI::App* sweep = dse_cmd->add_subcommand(
      "sweep", "Per-cell memory vs cell count vs mesh diameter");
  sweep->add_option("--min-mem", dse_args.min_mem,
                    "Smallest per-cell memory in bytes (doubling sweep)");
  sweep->add_option("--max-mem", dse_args.max_mem,
                    "Largest per-cell memory in bytes");
  sweep->add_option("--mem", dse_args.explicit_sizes,
                    "Explicit byte sizes instead of the doubling range")
      ->delimiter(',');
  sweep->add_option("--shape", dse_args.shape,
                    "Cell tessellation: square, triangle, hexagon");
  sweep->add_option("--density", dse_args.density, "Transistors per mm^2");
  sweep->add_option("--area", dse_args.area, "Die area in mm^2");
  sweep->add_option("--model", dse_args.overrides,
                    "Transistor model override key=value (repeatable)");
  sweep->add_option("--out", dse_args.out, "CSV path, or - for stdout");

  SimArgs sim_args;
  CLI::App* sim_cmd = app.add_subcommand("sim", "Cycle-level simulation");
  sim_cmd->require_subcommand(1);
  CLI::App* run = sim_cmd->add_subcommand(
      "run", "Run batched dynamic/static traversal with verification");
  run->add_option("--grid", sim_args.grid, "Chip grid as WxH");
  run->add_option("--mode", sim_args.mode, "static, dynamic, or both");
  run->add_option("--root", sim_args.root, "Traversal root vertex id");
  add_source_flags(run, sim_args.source);
  run->add_option("--chunk-cap", sim_args.chunk_cap,
                  "Edges per vertex object chunk");
  run->add_option("--fifo-depth", sim_args.fifo_depth,
                  "Link input FIFO depth in flits");
  run->add_option("--staging-depth", sim_args.staging_depth,
                  "Local egress buffer depth in flits");
  run->add_option("--mem-bytes", sim_args.mem_bytes,
                  "Object memory per cell in bytes");
  run->add_option("--ghost-policy", sim_args.ghost_policy,
                  "Continuation placement: spill or local");
  run->add_option("--predicate-cycles", sim_args.predicate_cycles,
                  "Cycles per action predicate");
  run->add_option("--work-cycles", sim_args.work_cycles,
                  "Cycles per action work phase");
  run->add_option("--max-cycles", sim_args.max_cycles,
                  "Non-termination guard per quiescent run");
  run->add_option("--seed", sim_args.seed, "Recorded in the summary");
  run->add_flag("--no-verify", sim_args.no_verify,
                "Skip the reference-BFS check");
  run->add_option("--out", sim_args.out, "Output directory");

  GenArgs gen_args;
  StatsArgs stats_args;
  CLI::App* wl_cmd = app.add_subcommand("workload", "Dataset tools");
  wl_cmd->require_subcommand(1);
  CLI::App* gen = wl_cmd->add_subcommand(
      "gen", "Generate increment files from a base graph");
  gen->add_option("--kind", gen_args.kind, "edge or snowball");
  gen->add_option("--base", gen_args.base, "Base graph TSV")->required();
  gen->add_option("--increments", gen_args.increments, "Number of batches");
  gen->add_option("--seed", gen_args.seed, "Sampler seed");
  gen->add_option("--start", gen_args.start, "Snowball start vertex");
  gen->add_option("--id-base", gen_args.id_base,
                  "Base-graph ids are 0- or 1-based")
      ->check(CLI::Range(0, 1));
  gen->add_flag("--undirected", gen_args.undirected,
                "Symmetrize the base graph at load");
  gen->add_option("--out", gen_args.out, "Output directory");
  gen->add_option("--stem", gen_args.stem, "Output file stem");

  CLI::App* stats = wl_cmd->add_subcommand(
      "stats", "Per-increment edge and vertex counts");
  add_source_flags(stats, stats_args.source);
  stats->add_option("--out", stats_args.out, "CSV path, or - for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Help requests exit clean; anything else is a usage error.
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (sweep->parsed()) return run_dse_sweep(dse_args);
    if (run->parsed()) return run_sim(sim_args);
    if (gen->parsed()) return run_workload_gen(gen_args);
    if (stats->parsed()) return run_workload_stats(stats_args);
    std::cerr << "no subcommand\n";
    return kExitUsage;
  } catch (const OracleMismatchError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitOracleMismatch;
  } catch (const GuardExceededError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitGuardExceeded;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitResourceOrConfig;
  }
}
