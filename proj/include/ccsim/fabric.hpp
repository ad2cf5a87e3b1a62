#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "ccsim/actions.hpp"
#include "ccsim/errors.hpp"
#include "ccsim/graph_store.hpp"
#include "ccsim/types.hpp"

namespace ccsim {

// Mesh geometry and buffer sizing. Border cells simply lack the links that
// would leave the grid.
struct ChipTopology {
  uint32_t width = 32;
  uint32_t height = 32;
  uint32_t link_fifo_depth = 4;  // per-link input FIFO, in flits
  uint32_t staging_depth = 4;    // local egress buffer, in flits

  void validate() const;
  uint32_t cell_count() const { return width * height; }
  bool contains(Coord c) const { return c.x < width && c.y < height; }
};

// Next hop under dimension-ordered routing: correct x first, then y.
// Empty when already at the destination.
std::optional<Direction> route_next_hop(Coord current, Coord dst);

std::optional<Coord> neighbor(Coord c, Direction d, const ChipTopology& topo);

// One row of the activation trace.
struct CycleStats {
  uint64_t cycle = 0;
  uint32_t active_cells = 0;            // cells that ran an action phase
  uint64_t operons_in_flight = 0;       // buffered in FIFOs or staging
  uint64_t actions_enqueued_total = 0;  // summed action-queue occupancy
};

// Chip-wide running totals since construction.
struct ChipCounters {
  uint64_t operons_injected = 0;
  uint64_t operons_emitted = 0;
  uint64_t operons_delivered = 0;
  uint64_t actions_created = 0;   // diffuse emissions plus germinations
  uint64_t actions_executed = 0;  // instances run to completion
};

// A bounded FIFO with registered behavior: pushes land in an incoming
// stage that becomes visible to pops only after commit(), so a flit moves
// at most one hop per cycle.
class RegFifo {
 public:
  explicit RegFifo(size_t capacity = 0) : cap_(capacity) {}

  bool can_push_next() const {
    return curr_.size() + incoming_.size() < cap_;
  }
  bool push_next(Operon op) {
    if (!can_push_next()) return false;
    incoming_.push_back(op);
    return true;
  }

  bool can_pop_curr() const { return !curr_.empty(); }
  const Operon& front_curr() const { return curr_.front(); }
  void pop_curr() { curr_.pop_front(); }

  size_t size_all() const { return curr_.size() + incoming_.size(); }

  void commit() {
    while (!incoming_.empty()) {
      curr_.push_back(incoming_.front());
      incoming_.pop_front();
    }
  }

 private:
  size_t cap_;
  std::deque<Operon> curr_;
  std::deque<Operon> incoming_;
};

// Per-cell state: four input FIFOs (indexed by the side the link enters
// from), a bounded egress staging buffer, the unbounded action queue, and
// the single execute slot.
struct Cell {
  Coord coord;
  std::vector<RegFifo> in;  // one per Direction, fixed size 4
  std::deque<Operon> staging;
  std::deque<ActionInstance> action_queue;
  std::optional<InFlightAction> in_flight;

  uint64_t actions_created = 0;
  uint64_t actions_executed = 0;
  uint64_t cycles_active = 0;
};

// Recomputed-by-scan occupancy, for conservation checks against the
// maintained counters.
struct FlightAudit {
  uint64_t operons_in_flight = 0;
  uint64_t queued_actions = 0;
  uint64_t busy_cells = 0;
};

struct ChipConfig {
  ChipTopology topo;
  uint64_t bytes_per_cell = 32768;
  uint32_t chunk_cap = 8;
  graph::GhostPolicy ghost_policy = graph::GhostPolicy::SpillNeighbors;
  ActionCosts costs;
};

// The simulated chip. Each step() is one cycle: phase A moves operons one
// hop (delivering those that reach their cell), phase B gives every cell
// one action phase, then all link FIFOs commit.
class Chip {
 public:
  explicit Chip(const ChipConfig& cfg);

  // Hands an operon to a cell's staging buffer; it starts routing next
  // cycle. Injection at the destination cell delivers immediately. False
  // means the staging buffer is full and the caller must retry.
  bool inject(const Operon& op, Coord at);

  // Places an action directly on its target cell's queue (harness entry
  // point; not counted as created by the chip).
  void enqueue_action(const ActionInstance& inst);

  CycleStats step();

  bool is_quiescent() const;

  // Steps until quiescent; returns elapsed cycles. Throws GuardExceededError
  // with a state dump after max_cycles.
  uint64_t run_until_quiescent(uint64_t max_cycles);

  uint64_t cycle() const { return cycle_; }
  const ChipTopology& topology() const { return cfg_.topo; }
  const ChipConfig& config() const { return cfg_; }
  const ChipCounters& counters() const { return counters_; }
  const std::vector<CycleStats>& trace() const { return trace_; }

  graph::ObjectSpace& space() { return space_; }
  const graph::ObjectSpace& space() const { return space_; }

  Cell& cell(Coord c);
  const Cell& cell(Coord c) const;

  FlightAudit audit_in_flight() const;
  std::string dump_state() const;

 private:
  void deliver(const Operon& op, Cell& dst);
  void transport_phase();
  uint32_t execute_phase();

  ChipConfig cfg_;
  graph::ObjectSpace space_;
  std::vector<Cell> cells_;  // row-major
  uint64_t cycle_ = 0;

  // Maintained occupancy for O(1) quiescence checks.
  uint64_t operons_in_flight_ = 0;
  uint64_t queued_actions_ = 0;
  uint64_t busy_cells_ = 0;

  ChipCounters counters_;
  std::vector<CycleStats> trace_;
};

// Activation-trace CSV, one row per cycle.
inline constexpr const char* kTraceCsvHeader =
    "cycle,active_cells,operons_in_flight,actions_enqueued_total";

void write_trace_csv(const std::vector<CycleStats>& trace,
                     const std::string& path);

}  // namespace ccsim
