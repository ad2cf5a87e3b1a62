// Python face of the simulator: the design-space calculator, the workload
// samplers, the reference traversal, and full experiment runs. Everything
// crosses the boundary as plain tuples, lists and dicts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <vector>

#include "ccsim/chip_dse.hpp"
#include "ccsim/errors.hpp"
#include "ccsim/harness.hpp"
#include "ccsim/workloads.hpp"

namespace py = pybind11;
using namespace ccsim;

namespace {

workload::EdgeRecord record_from(py::handle item) {
  const auto seq = py::cast<py::sequence>(item);
  const size_t n = seq.size();
  if (n < 2 || n > 3) {
    throw py::value_error("edge must be (src, dst) or (src, dst, weight)");
  }
  workload::EdgeRecord rec;
  rec.src = py::cast<VertexId>(seq[0]);
  rec.dst = py::cast<VertexId>(seq[1]);
  if (n == 3) rec.weight = py::cast<float>(seq[2]);
  return rec;
}

std::vector<workload::EdgeRecord> edges_from(py::iterable edges) {
  std::vector<workload::EdgeRecord> out;
  for (py::handle item : edges) out.push_back(record_from(item));
  return out;
}

workload::IncrementSchedule schedule_from(py::iterable increments) {
  workload::IncrementSchedule schedule;
  for (py::handle batch : increments) {
    schedule.increments.push_back(edges_from(py::cast<py::iterable>(batch)));
    for (const auto& e : schedule.increments.back()) {
      schedule.vertex_count_hint =
          std::max({schedule.vertex_count_hint, e.src + 1, e.dst + 1});
    }
  }
  return schedule;
}

py::list schedule_to(const workload::IncrementSchedule& schedule) {
  py::list out;
  for (const auto& batch : schedule.increments) {
    py::list rows;
    for (const auto& e : batch) {
      rows.append(py::make_tuple(e.src, e.dst, e.weight));
    }
    out.append(std::move(rows));
  }
  return out;
}

py::dict point_to(const dse::DesignPoint& p) {
  py::dict d;
  d["mem_per_cell"] = p.mem_per_cell;
  d["sram_tx"] = p.sram_tx;
  d["periph_tx"] = p.periph_tx;
  d["exec_tx"] = p.exec_tx;
  d["net_tx"] = p.net_tx;
  d["total_tx"] = p.total_tx;
  d["cell_count"] = p.cell_count;
  d["grid_w"] = p.grid_w;
  d["grid_h"] = p.grid_h;
  d["diameter"] = p.diameter;
  d["total_memory"] = p.total_memory;
  d["feasible"] = p.feasible;
  return d;
}

harness::RunConfig config_from(py::iterable increments,
                               std::pair<uint32_t, uint32_t> grid,
                               VertexId root, const std::string& mode,
                               uint64_t mem_bytes, uint32_t chunk_cap,
                               uint32_t predicate_cycles, uint32_t work_cycles,
                               uint64_t max_cycles, uint64_t seed,
                               bool verify) {
  harness::RunConfig cfg;
  cfg.chip.topo.width = grid.first;
  cfg.chip.topo.height = grid.second;
  cfg.chip.bytes_per_cell = mem_bytes;
  cfg.chip.chunk_cap = chunk_cap;
  cfg.chip.costs.predicate_cycles = predicate_cycles;
  cfg.chip.costs.work_cycles = work_cycles;
  cfg.root = root;
  cfg.mode = harness::run_mode_from_string(mode);
  cfg.schedule = schedule_from(increments);
  cfg.max_cycles = max_cycles;
  cfg.seed = seed;
  cfg.verify = verify;
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Cycle-level mesh-chip simulator for message-driven dynamic graph "
      "processing, plus its transistor-budget design explorer.";

  m.attr("UNREACHED") = kUnreachedLevel;

  py::register_exception<OracleMismatchError>(m, "OracleMismatchError");
  py::register_exception<GuardExceededError>(m, "GuardExceededError");
  py::register_exception<StoreError>(m, "StoreError");
  py::register_exception<InfeasibleDesignError>(m, "InfeasibleDesignError");
  py::register_local_exception<ConfigError>(m, "ConfigError",
                                            PyExc_ValueError);

  m.def(
      "design_point",
      [](uint64_t mem_per_cell, const std::string& shape, double density,
         double area) {
        dse::ProcessParams proc;
        proc.transistor_density = density;
        proc.die_area_mm2 = area;
        return point_to(dse::design_point(mem_per_cell,
                                          dse::shape_from_string(shape), proc,
                                          dse::TransistorModel{}));
      },
      py::arg("mem_per_cell"), py::arg("shape") = "square",
      py::arg("density") = 91.0e6, py::arg("area") = 306.0,
      "Largest square chip of identical cells with this much local memory "
      "that fits the transistor budget.");

  m.def(
      "sweep",
      [](const std::vector<uint64_t>& sizes, const std::string& shape,
         double density, double area) {
        dse::ProcessParams proc;
        proc.transistor_density = density;
        proc.die_area_mm2 = area;
        py::list out;
        for (const auto& p :
             dse::sweep(sizes, dse::shape_from_string(shape), proc,
                        dse::TransistorModel{})) {
          out.append(point_to(p));
        }
        return out;
      },
      py::arg("sizes"), py::arg("shape") = "square",
      py::arg("density") = 91.0e6, py::arg("area") = 306.0,
      "One design point per memory size; infeasible sizes are flagged "
      "rather than raising.");

  m.def(
      "oracle_bfs",
      [](py::iterable edges, VertexId root) {
        return harness::oracle_bfs(edges_from(edges), root);
      },
      py::arg("edges"), py::arg("root"),
      "Reference hop levels over directed (src, dst[, weight]) records; "
      "unreachable endpoints carry UNREACHED.");

  m.def(
      "levels_checksum",
      [](const std::map<VertexId, Level>& levels) {
        return harness::levels_checksum(levels);
      },
      py::arg("levels"),
      "Order-independent 16-hex-digit checksum of a {vertex: level} map.");

  m.def(
      "gen_edge_sampled",
      [](py::iterable edges, uint32_t increments, uint64_t seed) {
        workload::SamplerConfig cfg;
        cfg.kind = workload::SamplerKind::Edge;
        cfg.base_graph = edges_from(edges);
        cfg.increments = increments;
        cfg.seed = seed;
        return schedule_to(workload::gen_edge_sampled(cfg));
      },
      py::arg("edges"), py::arg("increments") = 10, py::arg("seed") = 0,
      "Seeded shuffle of the dataset split into near-equal batches.");

  m.def(
      "gen_snowball",
      [](py::iterable edges, uint32_t increments, uint64_t seed,
         VertexId start) {
        workload::SamplerConfig cfg;
        cfg.kind = workload::SamplerKind::Snowball;
        cfg.base_graph = edges_from(edges);
        cfg.increments = increments;
        cfg.seed = seed;
        cfg.snowball_start = start;
        return schedule_to(workload::gen_snowball(cfg));
      },
      py::arg("edges"), py::arg("increments") = 10, py::arg("seed") = 0,
      py::arg("start") = 0,
      "Batches ordered by breadth-first discovery from the start vertex; "
      "an edge is emitted once both endpoints are discovered.");

  m.def(
      "schedule_stats",
      [](py::iterable increments) {
        py::list out;
        size_t i = 0;
        for (const auto& s :
             workload::schedule_stats(schedule_from(increments))) {
          py::dict d;
          d["increment"] = ++i;
          d["edges"] = s.edges;
          d["cumulative_edges"] = s.cumulative_edges;
          d["distinct_vertices"] = s.distinct_vertices;
          out.append(std::move(d));
        }
        return out;
      },
      py::arg("increments"),
      "Per-batch record and distinct-endpoint counts.");

  m.def(
      "run_experiment",
      [](py::iterable increments, std::pair<uint32_t, uint32_t> grid,
         VertexId root, const std::string& mode, uint64_t mem_bytes,
         uint32_t chunk_cap, uint32_t predicate_cycles, uint32_t work_cycles,
         uint64_t max_cycles, uint64_t seed, bool verify, bool include_trace) {
        const harness::RunConfig cfg = config_from(
            increments, grid, root, mode, mem_bytes, chunk_cap,
            predicate_cycles, work_cycles, max_cycles, seed, verify);

        harness::RunResult result;
        {
          py::gil_scoped_release release;
          result = harness::run_experiment(cfg);
        }

        py::list reports;
        for (const auto& r : result.reports) {
          py::dict d;
          d["increment"] = r.increment;
          d["mode"] = r.mode;
          d["cycles"] = r.cycles;
          d["actions_created"] = r.actions_created;
          d["actions_executed"] = r.actions_executed;
          d["operons_delivered"] = r.operons_delivered;
          d["levels_checksum"] = r.levels_checksum;
          reports.append(std::move(d));
        }
        py::dict out;
        out["reports"] = std::move(reports);
        out["final_levels"] = py::cast(result.final_levels);
        out["boundary_cycles"] = py::cast(result.boundary_cycles);
        if (include_trace) {
          py::list trace;
          for (const auto& row : result.trace) {
            py::dict d;
            d["cycle"] = row.cycle;
            d["active_cells"] = row.active_cells;
            d["operons_in_flight"] = row.operons_in_flight;
            d["actions_enqueued_total"] = row.actions_enqueued_total;
            trace.append(std::move(d));
          }
          out["trace"] = std::move(trace);
        }
        return out;
      },
      py::arg("increments"), py::arg("grid") = std::pair<uint32_t, uint32_t>{32, 32},
      py::arg("root") = 0, py::arg("mode") = "dynamic",
      py::arg("mem_bytes") = 32768, py::arg("chunk_cap") = 8,
      py::arg("predicate_cycles") = 1, py::arg("work_cycles") = 1,
      py::arg("max_cycles") = 10'000'000, py::arg("seed") = 0,
      py::arg("verify") = true, py::arg("include_trace") = false,
      "Run batched increments through the simulated chip. Mode 'dynamic' "
      "keeps one chip across batches, 'static' rebuilds per prefix, 'both' "
      "pairs the two per increment. Raises OracleMismatchError when "
      "verification fails and GuardExceededError when a run does not "
      "settle within max_cycles.");
}
