#include "ccsim/fabric.hpp"

#include <array>
#include <fstream>
#include <sstream>

namespace ccsim {

void ChipTopology::validate() const {
  if (width == 0 || height == 0) {
    throw ConfigError("chip grid must be at least 1x1");
  }
  if (link_fifo_depth == 0) throw ConfigError("link FIFO depth must be > 0");
  if (staging_depth == 0) throw ConfigError("staging depth must be > 0");
}

std::optional<Direction> route_next_hop(Coord current, Coord dst) {
  if (current == dst) return std::nullopt;
  if (current.x < dst.x) return Direction::East;
  if (current.x > dst.x) return Direction::West;
  if (current.y < dst.y) return Direction::South;
  return Direction::North;
}

std::optional<Coord> neighbor(Coord c, Direction d, const ChipTopology& topo) {
  int x = c.x;
  int y = c.y;
  switch (d) {
    case Direction::North: --y; break;
    case Direction::East: ++x; break;
    case Direction::South: ++y; break;
    case Direction::West: --x; break;
  }
  if (x < 0 || y < 0 || x >= static_cast<int>(topo.width) ||
      y >= static_cast<int>(topo.height)) {
    return std::nullopt;
  }
  return Coord{static_cast<uint16_t>(x), static_cast<uint16_t>(y)};
}

Chip::Chip(const ChipConfig& cfg)
    : cfg_(cfg),
      space_(cfg.topo.width, cfg.topo.height, cfg.bytes_per_cell,
             cfg.chunk_cap, cfg.ghost_policy) {
  cfg_.topo.validate();
  cfg_.costs.validate();
  cells_.resize(cfg_.topo.cell_count());
  for (uint32_t y = 0; y < cfg_.topo.height; ++y) {
    for (uint32_t x = 0; x < cfg_.topo.width; ++x) {
      Cell& c = cells_[uint64_t{y} * cfg_.topo.width + x];
      c.coord = Coord{static_cast<uint16_t>(x), static_cast<uint16_t>(y)};
      c.in.assign(kNumDirections, RegFifo(cfg_.topo.link_fifo_depth));
    }
  }
}

Cell& Chip::cell(Coord c) {
  if (!cfg_.topo.contains(c)) {
    throw ConfigError("cell " + coord_str(c) + " outside the grid");
  }
  return cells_[uint64_t{c.y} * cfg_.topo.width + c.x];
}

const Cell& Chip::cell(Coord c) const {
  return const_cast<Chip*>(this)->cell(c);
}

void Chip::deliver(const Operon& op, Cell& dst) {
  dst.action_queue.push_back(to_action(op));
  ++queued_actions_;
  ++counters_.operons_delivered;
}

bool Chip::inject(const Operon& op, Coord at) {
  if (!cfg_.topo.contains(at)) {
    throw ConfigError("injection cell " + coord_str(at) + " outside the grid");
  }
  if (!cfg_.topo.contains(op.dst_cc)) {
    throw ConfigError("operon destination " + coord_str(op.dst_cc) +
                      " outside the grid");
  }
  if (at == op.dst_cc) {
    // Already home: no link to traverse, straight onto the queue.
    ++counters_.operons_injected;
    deliver(op, cell(at));
    return true;
  }
  Cell& c = cell(at);
  if (c.staging.size() >= cfg_.topo.staging_depth) return false;
  c.staging.push_back(op);
  ++counters_.operons_injected;
  ++operons_in_flight_;
  return true;
}

void Chip::enqueue_action(const ActionInstance& inst) {
  Cell& c = cell(inst.target.cc);
  c.action_queue.push_back(inst);
  ++queued_actions_;
}

void Chip::transport_phase() {
  for (Cell& c : cells_) {
    // One operon per outgoing link per cycle; a move marks its direction.
    std::array<bool, kNumDirections> out_used{};

    // Fixed arbitration order: the four input ports, then local staging.
    for (uint32_t src = 0; src < kNumDirections + 1; ++src) {
      const bool from_staging = src == kNumDirections;
      const Operon* head = nullptr;
      if (from_staging) {
        if (!c.staging.empty()) head = &c.staging.front();
      } else if (c.in[src].can_pop_curr()) {
        head = &c.in[src].front_curr();
      }
      if (!head) continue;

      const Operon op = *head;
      bool moved = false;
      if (op.dst_cc == c.coord) {
        // Local loopback out of staging; input ports never see their own
        // cell as destination because senders deliver on the final hop.
        deliver(op, c);
        --operons_in_flight_;
        moved = true;
      } else {
        const Direction dir = *route_next_hop(c.coord, op.dst_cc);
        const auto d = static_cast<uint32_t>(dir);
        if (!out_used[d]) {
          const Coord nc = *neighbor(c.coord, dir, cfg_.topo);
          Cell& next = cells_[uint64_t{nc.y} * cfg_.topo.width + nc.x];
          if (nc == op.dst_cc) {
            // Final hop lands in the unbounded queue, never blocks.
            deliver(op, next);
            --operons_in_flight_;
            out_used[d] = true;
            moved = true;
          } else if (next.in[static_cast<uint32_t>(opposite(dir))].push_next(
                         op)) {
            out_used[d] = true;
            moved = true;
          }
        }
      }
      if (moved) {
        if (from_staging) {
          c.staging.pop_front();
        } else {
          c.in[src].pop_curr();
        }
      }
    }
  }
}

uint32_t Chip::execute_phase() {
  uint32_t active = 0;
  for (Cell& c : cells_) {
    if (!c.in_flight && !c.action_queue.empty()) {
      c.in_flight.emplace(c.action_queue.front());
      c.action_queue.pop_front();
      --queued_actions_;
      ++busy_cells_;
    }
    if (!c.in_flight) continue;

    const bool staging_has_space =
        c.staging.size() < cfg_.topo.staging_depth;
    const ActionStepOutcome out =
        step_action(*c.in_flight, space_, cfg_.costs, staging_has_space);

    if (out.progressed) {
      ++active;
      ++c.cycles_active;
    }
    if (out.emitted) {
      c.staging.push_back(*out.emitted);
      ++operons_in_flight_;
      ++counters_.operons_emitted;
      ++c.actions_created;
      ++counters_.actions_created;
    }
    if (out.germinated) {
      c.action_queue.push_back(*out.germinated);
      ++queued_actions_;
      ++c.actions_created;
      ++counters_.actions_created;
    }
    if (out.finished) {
      c.in_flight.reset();
      ++c.actions_executed;
      ++counters_.actions_executed;
      --busy_cells_;
    }
  }
  return active;
}

CycleStats Chip::step() {
  ++cycle_;
  transport_phase();
  const uint32_t active = execute_phase();
  for (Cell& c : cells_) {
    for (RegFifo& f : c.in) f.commit();
  }
  CycleStats stats{cycle_, active, operons_in_flight_, queued_actions_};
  trace_.push_back(stats);
  return stats;
}

bool Chip::is_quiescent() const {
  return operons_in_flight_ == 0 && queued_actions_ == 0 && busy_cells_ == 0;
}

uint64_t Chip::run_until_quiescent(uint64_t max_cycles) {
  if (max_cycles == 0) throw ConfigError("cycle guard must be positive");
  const uint64_t start = cycle_;
  while (!is_quiescent()) {
    if (cycle_ - start >= max_cycles) {
      throw GuardExceededError("no quiescence after " +
                               std::to_string(max_cycles) + " cycles; " +
                               dump_state());
    }
    step();
  }
  return cycle_ - start;
}

FlightAudit Chip::audit_in_flight() const {
  FlightAudit a;
  for (const Cell& c : cells_) {
    for (const RegFifo& f : c.in) a.operons_in_flight += f.size_all();
    a.operons_in_flight += c.staging.size();
    a.queued_actions += c.action_queue.size();
    if (c.in_flight) ++a.busy_cells;
  }
  return a;
}

std::string Chip::dump_state() const {
  std::ostringstream os;
  os << "chip " << cfg_.topo.width << "x" << cfg_.topo.height << " cycle "
     << cycle_ << ": in_flight=" << operons_in_flight_
     << " queued=" << queued_actions_ << " busy=" << busy_cells_
     << " injected=" << counters_.operons_injected
     << " emitted=" << counters_.operons_emitted
     << " delivered=" << counters_.operons_delivered;
  return os.str();
}

void write_trace_csv(const std::vector<CycleStats>& trace,
                     const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write trace file: " + path);
  out << kTraceCsvHeader << "\n";
  for (const CycleStats& s : trace) {
    out << s.cycle << "," << s.active_cells << "," << s.operons_in_flight
        << "," << s.actions_enqueued_total << "\n";
  }
  if (!out) throw ConfigError("failed writing trace file: " + path);
}

}  // namespace ccsim
