#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "ccsim/errors.hpp"
#include "ccsim/types.hpp"

namespace ccsim::graph {

// A directed edge held inside a vertex object: a pointer to the target
// vertex's root object plus a weight (carried for weighted actions, unused
// by level propagation).
struct Edge {
  ObjectAddress target;
  float weight = 1.0f;
};

// One object of a vertex chain. The root carries the vertex identity and
// level; ghosts are continuation objects holding further edge chunks.
struct VertexObject {
  VertexId vertex_id = 0;
  bool is_root = false;
  Level level = kUnreachedLevel;
  std::vector<Edge> edges;  // at most chunk_cap entries
  std::optional<ObjectAddress> next;  // set only once this chunk is full
};

// Where continuation objects go when a chain grows.
enum class GhostPolicy : uint8_t {
  SpillNeighbors = 0,  // root's cell first, then round-robin over neighbors
  AlwaysLocal = 1,     // root's cell only; OOM when it fills
};

GhostPolicy ghost_policy_from_string(const std::string& s);

struct InsertResult {
  ObjectAddress object;   // chain object that received the edge
  uint32_t slot_in_object = 0;
  uint64_t flat_index = 0;  // position in whole-chain order, append-only
};

// Accounted footprint of one object against the cell byte budget.
uint64_t vertex_object_bytes(uint32_t chunk_cap);

// Object memory of a single cell: bump-allocated slots plus the directory
// of locally rooted vertices. Addresses are never reused.
class CellStore {
 public:
  CellStore() = default;
  CellStore(Coord coord, uint64_t capacity_bytes, uint32_t chunk_cap);

  bool has_room() const;
  uint32_t allocate(VertexObject obj);  // throws StoreError when full

  VertexObject& object(uint32_t slot);
  const VertexObject& object(uint32_t slot) const;
  uint32_t object_count() const { return static_cast<uint32_t>(slots_.size()); }

  std::optional<uint32_t> find_vertex(VertexId id) const;
  void register_vertex(VertexId id, uint32_t slot);
  const std::unordered_map<VertexId, uint32_t>& directory() const {
    return directory_;
  }

  uint64_t used_bytes() const { return used_bytes_; }
  uint64_t capacity_bytes() const { return capacity_bytes_; }
  Coord coord() const { return coord_; }

  uint32_t spill_cursor = 0;  // round-robin position for ghost placement

 private:
  Coord coord_;
  uint64_t capacity_bytes_ = 0;
  uint64_t used_bytes_ = 0;
  uint64_t object_bytes_ = 0;
  std::vector<VertexObject> slots_;
  std::unordered_map<VertexId, uint32_t> directory_;
};

// Deterministic home cell of a vertex: linear index id mod (w*h), decoded
// row-major.
Coord place_vertex(VertexId id, uint32_t width, uint32_t height);

// The chip-wide graph plane: per-cell stores, placement, chain maintenance.
class ObjectSpace {
 public:
  ObjectSpace(uint32_t width, uint32_t height, uint64_t bytes_per_cell,
              uint32_t chunk_cap,
              GhostPolicy policy = GhostPolicy::SpillNeighbors);

  uint32_t width() const { return width_; }
  uint32_t height() const { return height_; }
  uint32_t chunk_cap() const { return chunk_cap_; }

  Coord place(VertexId id) const;

  // Allocates the root object for a vertex on the given cell and registers
  // it in the cell directory. Duplicate ids and exhausted cells throw.
  ObjectAddress create_root(Coord cc, VertexId id);

  std::optional<ObjectAddress> find_root(VertexId id) const;

  // Directory lookup on the vertex's home cell; optionally creates the
  // root when missing.
  ObjectAddress resolve(VertexId id, bool auto_create);

  // Walks the chain from a root and appends the edge to the first object
  // with room, growing the chain by one ghost when every chunk is full.
  InsertResult insert_edge(ObjectAddress root, ObjectAddress dst_root,
                           float weight);

  VertexObject& object(ObjectAddress addr);
  const VertexObject& object(ObjectAddress addr) const;

  uint64_t edge_count(ObjectAddress root) const;
  Edge edge_at(ObjectAddress root, uint64_t flat_index) const;
  uint64_t chain_length(ObjectAddress root) const;

  Level level_of(VertexId id) const;  // kUnreachedLevel when absent

  CellStore& cell(Coord c);
  const CellStore& cell(Coord c) const;

  uint64_t total_objects() const;

 private:
  ObjectAddress allocate_ghost(ObjectAddress root);

  uint32_t width_;
  uint32_t height_;
  uint32_t chunk_cap_;
  GhostPolicy policy_;
  std::vector<CellStore> cells_;  // row-major
};

}  // namespace ccsim::graph
