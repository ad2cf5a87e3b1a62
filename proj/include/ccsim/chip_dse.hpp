#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ccsim/errors.hpp"

namespace ccsim::dse {

// Process assumptions: effective logic density and the die budget.
struct ProcessParams {
  double transistor_density = 91.0e6;  // transistors per mm^2
  double die_area_mm2 = 306.0;

  uint64_t budget() const;  // floor(density * area)
};

enum class CellShape : uint8_t { Square = 0, Triangle = 1, Hexagon = 2 };

CellShape shape_from_string(const std::string& s);
const char* to_string(CellShape s);

// Local SRAM organization of one cell.
struct MemoryConfig {
  uint64_t bytes_per_cell = 32 * 1024;
  uint32_t banks = 4;
  uint32_t word_bits = 64;          // data I/O width per bank
  uint32_t bitcell_transistors = 8; // 8T dual-port bitcell
};

// Per-component transistor coefficients. The anchor values (8T bitcell,
// 256-bit flit, ~100K fixed execution logic) are fixed by the modeled
// process; the per-bit and per-link coefficients are explicit model
// parameters with the defaults below.
struct TransistorModel {
  uint64_t exec_fixed = 100'000;
  uint64_t exec_per_addr_bit = 2'000;
  uint64_t periph_fixed_per_bank = 20'000;
  uint64_t periph_per_addr_bit_per_bank = 1'500;
  uint64_t fifo_per_bit = 24;
  uint64_t router_fixed_per_link = 10'000;
  uint32_t flit_bits = 256;
  uint32_t fifo_depth = 4;  // flits per link FIFO
};

// Breakdown of one cell's transistor count.
struct CellTransistors {
  uint64_t sram = 0;
  uint64_t periphery = 0;
  uint64_t execution = 0;
  uint64_t network = 0;

  uint64_t total() const { return sram + periphery + execution + network; }
};

// One chip configuration derived from a per-cell memory size.
struct DesignPoint {
  uint64_t mem_per_cell = 0;
  uint64_t sram_tx = 0;
  uint64_t periph_tx = 0;
  uint64_t exec_tx = 0;
  uint64_t net_tx = 0;
  uint64_t total_tx = 0;
  uint64_t cell_count = 0;
  uint32_t grid_w = 0;
  uint32_t grid_h = 0;
  uint32_t diameter = 0;
  uint64_t total_memory = 0;
  bool feasible = false;
};

// Channel count implied by the tessellation shape.
uint32_t channels_for_shape(CellShape shape);

// Bitcell array cost: bytes * 8 bits * transistors per bit.
uint64_t sram_transistors(const MemoryConfig& mem);

// Number of address bits needed per bank (ceil(log2) of the per-bank word
// count). Throws ConfigError if the capacity does not divide into whole
// words per bank.
uint32_t bank_addr_bits(const MemoryConfig& mem);

// Address decoders, bit line drivers, sense amps and output registers,
// costed per bank against its address width.
uint64_t periphery_transistors(const MemoryConfig& mem,
                               const TransistorModel& model);

// Instruction queue, decoder, scalar ALU/FPU: a fixed block plus the
// address-register width, which tracks the cell's memory size.
uint64_t execution_transistors(uint32_t addr_bits,
                               const TransistorModel& model);

// Address bits the execution unit needs to span the cell's byte-addressed
// local memory.
uint32_t exec_addr_bits(uint64_t bytes_per_cell);

// Mesh links with their FIFO storage, flit multiplexers and router logic.
uint64_t network_transistors(uint32_t channels, const TransistorModel& model);

// All four components for one cell.
CellTransistors cell_transistors(const MemoryConfig& mem, CellShape shape,
                                 const TransistorModel& model);

// Largest square grid of identical cells that fits the die budget.
// Throws InfeasibleDesignError when not even one cell fits.
DesignPoint design_point(uint64_t mem_per_cell, CellShape shape,
                         const ProcessParams& proc,
                         const TransistorModel& model,
                         const MemoryConfig& mem_template = MemoryConfig{});

// One design point per requested size, in input order. Infeasible sizes
// become flagged rows instead of aborting the sweep.
std::vector<DesignPoint> sweep(const std::vector<uint64_t>& mem_sizes,
                               CellShape shape, const ProcessParams& proc,
                               const TransistorModel& model,
                               const MemoryConfig& mem_template = MemoryConfig{});

inline constexpr const char* kSweepCsvHeader =
    "mem_per_cell_bytes,sram_tx,periph_tx,exec_tx,net_tx,total_tx,cell_count,"
    "grid_w,grid_h,diameter,total_memory_bytes,feasible";

void write_sweep_csv(std::ostream& out, const std::vector<DesignPoint>& points);

}  // namespace ccsim::dse
