#include "ccsim/types.hpp"

#include <cstdlib>

namespace ccsim {

Direction opposite(Direction d) {
  switch (d) {
    case Direction::North: return Direction::South;
    case Direction::East: return Direction::West;
    case Direction::South: return Direction::North;
    case Direction::West: return Direction::East;
  }
  std::abort();  // unreachable
}

const char* to_string(Direction d) {
  switch (d) {
    case Direction::North: return "north";
    case Direction::East: return "east";
    case Direction::South: return "south";
    case Direction::West: return "west";
  }
  return "?";
}

const char* to_string(Opcode op) {
  switch (op) {
    case Opcode::Bfs: return "bfs";
    case Opcode::BfsNewEdge: return "bfs_new_edge";
    case Opcode::InsertEdge: return "insert_edge";
    case Opcode::Seed: return "seed";
  }
  return "?";
}

uint32_t encoded_bits(const Operon&) {
  return 8 + 16 + 48 + 128;
}

uint32_t manhattan(Coord a, Coord b) {
  const int dx = a.x > b.x ? a.x - b.x : b.x - a.x;
  const int dy = a.y > b.y ? a.y - b.y : b.y - a.y;
  return static_cast<uint32_t>(dx + dy);
}

std::string coord_str(Coord c) {
  return "(" + std::to_string(c.x) + "," + std::to_string(c.y) + ")";
}

}  // namespace ccsim
