#include "ccsim/chip_dse.hpp"

#include <cmath>
#include <ostream>

namespace ccsim::dse {

namespace {

uint32_t ceil_log2_u64(uint64_t words) {
  uint32_t bits = 0;
  while ((uint64_t{1} << bits) < words) ++bits;
  return bits;
}

uint64_t isqrt_u64(uint64_t x) {
  if (x == 0) return 0;
  auto r = static_cast<uint64_t>(std::sqrt(static_cast<double>(x)));
  while (r > 0 && r * r > x) --r;
  while ((r + 1) * (r + 1) <= x) ++r;
  return r;
}

}  // namespace

uint64_t ProcessParams::budget() const {
  if (transistor_density <= 0.0 || die_area_mm2 <= 0.0) {
    throw ConfigError("process density and die area must be positive");
  }
  return static_cast<uint64_t>(std::floor(transistor_density * die_area_mm2));
}

CellShape shape_from_string(const std::string& s) {
  if (s == "square") return CellShape::Square;
  if (s == "triangle") return CellShape::Triangle;
  if (s == "hexagon") return CellShape::Hexagon;
  throw ConfigError("unknown cell shape: " + s);
}

const char* to_string(CellShape s) {
  switch (s) {
    case CellShape::Square: return "square";
    case CellShape::Triangle: return "triangle";
    case CellShape::Hexagon: return "hexagon";
  }
  return "?";
}

uint32_t channels_for_shape(CellShape shape) {
  switch (shape) {
    case CellShape::Square: return 4;
    case CellShape::Triangle: return 3;
    case CellShape::Hexagon: return 6;
  }
  throw ConfigError("invalid cell shape");
}

uint64_t sram_transistors(const MemoryConfig& mem) {
  return mem.bytes_per_cell * 8 * mem.bitcell_transistors;
}

uint32_t bank_addr_bits(const MemoryConfig& mem) {
  if (mem.banks == 0) throw ConfigError("memory must have at least one bank");
  if (mem.word_bits == 0) throw ConfigError("bank word width must be positive");
  if (mem.bytes_per_cell % mem.banks != 0) {
    throw ConfigError("cell capacity must divide evenly across banks");
  }
  const uint64_t bits_per_bank = mem.bytes_per_cell / mem.banks * 8;
  if (bits_per_bank == 0 || bits_per_bank % mem.word_bits != 0) {
    throw ConfigError(
        "bank capacity must be a whole, nonzero number of I/O words");
  }
  return ceil_log2_u64(bits_per_bank / mem.word_bits);
}

uint64_t periphery_transistors(const MemoryConfig& mem,
                               const TransistorModel& model) {
  const uint32_t addr_bits = bank_addr_bits(mem);
  return uint64_t{mem.banks} *
         (model.periph_fixed_per_bank +
          uint64_t{addr_bits} * model.periph_per_addr_bit_per_bank);
}

uint64_t execution_transistors(uint32_t addr_bits,
                               const TransistorModel& model) {
  return model.exec_fixed + uint64_t{addr_bits} * model.exec_per_addr_bit;
}

uint32_t exec_addr_bits(uint64_t bytes_per_cell) {
  return ceil_log2_u64(bytes_per_cell);
}

uint64_t network_transistors(uint32_t channels, const TransistorModel& model) {
  if (channels == 0) throw ConfigError("a cell needs at least one channel");
  const uint64_t per_link =
      uint64_t{model.fifo_depth} * model.flit_bits * model.fifo_per_bit +
      model.router_fixed_per_link;
  return uint64_t{channels} * per_link;
}

CellTransistors cell_transistors(const MemoryConfig& mem, CellShape shape,
                                 const TransistorModel& model) {
  if (uint64_t{mem.banks} * mem.word_bits != model.flit_bits) {
    throw ConfigError("aggregate bank I/O width must equal the flit size");
  }
  CellTransistors t;
  t.sram = sram_transistors(mem);
  t.periphery = periphery_transistors(mem, model);
  t.execution = execution_transistors(exec_addr_bits(mem.bytes_per_cell), model);
  t.network = network_transistors(channels_for_shape(shape), model);
  return t;
}

DesignPoint design_point(uint64_t mem_per_cell, CellShape shape,
                         const ProcessParams& proc,
                         const TransistorModel& model,
                         const MemoryConfig& mem_template) {
  if (mem_per_cell == 0) throw ConfigError("per-cell memory must be positive");
  MemoryConfig mem = mem_template;
  mem.bytes_per_cell = mem_per_cell;

  const CellTransistors tx = cell_transistors(mem, shape, model);
  DesignPoint p;
  p.mem_per_cell = mem_per_cell;
  p.sram_tx = tx.sram;
  p.periph_tx = tx.periphery;
  p.exec_tx = tx.execution;
  p.net_tx = tx.network;
  p.total_tx = tx.total();

  const uint64_t budget = proc.budget();
  if (budget < p.total_tx) {
    throw InfeasibleDesignError(
        "infeasible design point: one cell needs " +
        std::to_string(p.total_tx) + " transistors but the budget is " +
        std::to_string(budget));
  }
  const uint64_t g = isqrt_u64(budget / p.total_tx);
  p.grid_w = static_cast<uint32_t>(g);
  p.grid_h = static_cast<uint32_t>(g);
  p.cell_count = g * g;
  p.diameter = static_cast<uint32_t>(2 * (g - 1));
  p.total_memory = p.cell_count * mem_per_cell;
  p.feasible = true;
  return p;
}

std::vector<DesignPoint> sweep(const std::vector<uint64_t>& mem_sizes,
                               CellShape shape, const ProcessParams& proc,
                               const TransistorModel& model,
                               const MemoryConfig& mem_template) {
  if (mem_sizes.empty()) throw ConfigError("sweep needs at least one size");
  std::vector<DesignPoint> points;
  points.reserve(mem_sizes.size());
  for (uint64_t size : mem_sizes) {
    try {
      points.push_back(design_point(size, shape, proc, model, mem_template));
    } catch (const InfeasibleDesignError&) {
      MemoryConfig mem = mem_template;
      mem.bytes_per_cell = size;
      const CellTransistors tx = cell_transistors(mem, shape, model);
      DesignPoint p;
      p.mem_per_cell = size;
      p.sram_tx = tx.sram;
      p.periph_tx = tx.periphery;
      p.exec_tx = tx.execution;
      p.net_tx = tx.network;
      p.total_tx = tx.total();
      p.feasible = false;
      points.push_back(p);
    }
  }
  return points;
}

void write_sweep_csv(std::ostream& out,
                     const std::vector<DesignPoint>& points) {
  out << kSweepCsvHeader << '\n';
  for (const auto& p : points) {
    out << p.mem_per_cell << ',' << p.sram_tx << ',' << p.periph_tx << ','
        << p.exec_tx << ',' << p.net_tx << ',' << p.total_tx << ','
        << p.cell_count << ',' << p.grid_w << ',' << p.grid_h << ','
        << p.diameter << ',' << p.total_memory << ','
        << (p.feasible ? "true" : "false") << '\n';
  }
}

}  // namespace ccsim::dse
