#pragma once

#include <cstdint>
#include <limits>
#include <string>

namespace ccsim {

using VertexId = uint64_t;
using Level = uint32_t;

// Unreached vertices carry the maximum level so the relaxation predicate
// is a plain less-than.
inline constexpr Level kUnreachedLevel = std::numeric_limits<Level>::max();

// One link transfer unit. A message must fit a single flit.
inline constexpr uint32_t kFlitBits = 256;

struct Coord {
  uint16_t x = 0;
  uint16_t y = 0;

  bool operator==(const Coord&) const = default;
};

enum class Direction : uint8_t { North = 0, East = 1, South = 2, West = 3 };

inline constexpr uint32_t kNumDirections = 4;

Direction opposite(Direction d);
const char* to_string(Direction d);

// Stable handle to an allocated vertex object: owning cell + local slot.
struct ObjectAddress {
  Coord cc;
  uint32_t slot = 0;

  bool operator==(const ObjectAddress&) const = default;
};

enum class Opcode : uint8_t {
  Bfs = 0,        // relax one vertex to a proposed level, then inform neighbors
  BfsNewEdge = 1, // germinated on edge insertion; informs along that edge only
  InsertEdge = 2, // append an edge to a vertex chain and germinate BfsNewEdge
  Seed = 3,       // root seeding; behaves as Bfs with the seed level
};

const char* to_string(Opcode op);

// The routed message unit. Carries an action invocation to a vertex object;
// sized to fit one flit.
struct Operon {
  Coord dst_cc;
  ObjectAddress dst_object;
  Opcode opcode = Opcode::Bfs;
  uint64_t operand0 = 0;
  uint64_t operand1 = 0;
};

// Nominal wire footprint of an operon under the fixed field layout:
// opcode(8) + dst coords(16) + object address(48) + two operand words(128).
uint32_t encoded_bits(const Operon& op);

uint32_t manhattan(Coord a, Coord b);

std::string coord_str(Coord c);

}  // namespace ccsim
