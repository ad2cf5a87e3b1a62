#include "ccsim/graph_store.hpp"

#include <array>

namespace ccsim::graph {

GhostPolicy ghost_policy_from_string(const std::string& s) {
  if (s == "spill") return GhostPolicy::SpillNeighbors;
  if (s == "local") return GhostPolicy::AlwaysLocal;
  throw ConfigError("unknown ghost policy: " + s);
}

uint64_t vertex_object_bytes(uint32_t chunk_cap) {
  // Header (id, level, next link, flags) plus the edge chunk at 16 bytes
  // per (address, weight) pair.
  return 32 + uint64_t{16} * chunk_cap;
}

CellStore::CellStore(Coord coord, uint64_t capacity_bytes, uint32_t chunk_cap)
    : coord_(coord),
      capacity_bytes_(capacity_bytes),
      object_bytes_(vertex_object_bytes(chunk_cap)) {}

bool CellStore::has_room() const {
  return used_bytes_ + object_bytes_ <= capacity_bytes_;
}

uint32_t CellStore::allocate(VertexObject obj) {
  if (!has_room()) {
    throw StoreError("cell " + coord_str(coord_) + " out of object memory (" +
                     std::to_string(used_bytes_) + "/" +
                     std::to_string(capacity_bytes_) + " bytes used)");
  }
  used_bytes_ += object_bytes_;
  slots_.push_back(std::move(obj));
  return static_cast<uint32_t>(slots_.size() - 1);
}

VertexObject& CellStore::object(uint32_t slot) {
  if (slot >= slots_.size()) {
    throw StoreError("invalid slot " + std::to_string(slot) + " on cell " +
                     coord_str(coord_));
  }
  return slots_[slot];
}

const VertexObject& CellStore::object(uint32_t slot) const {
  return const_cast<CellStore*>(this)->object(slot);
}

std::optional<uint32_t> CellStore::find_vertex(VertexId id) const {
  auto it = directory_.find(id);
  if (it == directory_.end()) return std::nullopt;
  return it->second;
}

void CellStore::register_vertex(VertexId id, uint32_t slot) {
  auto [it, inserted] = directory_.emplace(id, slot);
  (void)it;
  if (!inserted) {
    throw StoreError("vertex " + std::to_string(id) +
                     " already rooted on cell " + coord_str(coord_));
  }
}

Coord place_vertex(VertexId id, uint32_t width, uint32_t height) {
  const uint64_t linear = id % (uint64_t{width} * height);
  return Coord{static_cast<uint16_t>(linear % width),
               static_cast<uint16_t>(linear / width)};
}

ObjectSpace::ObjectSpace(uint32_t width, uint32_t height,
                         uint64_t bytes_per_cell, uint32_t chunk_cap,
                         GhostPolicy policy)
    : width_(width), height_(height), chunk_cap_(chunk_cap), policy_(policy) {
  if (width == 0 || height == 0) throw ConfigError("grid must be at least 1x1");
  if (chunk_cap == 0) throw ConfigError("edge chunk capacity must be positive");
  if (bytes_per_cell < vertex_object_bytes(chunk_cap)) {
    throw ConfigError("per-cell memory cannot hold even one vertex object");
  }
  cells_.reserve(uint64_t{width} * height);
  for (uint32_t y = 0; y < height; ++y) {
    for (uint32_t x = 0; x < width; ++x) {
      cells_.emplace_back(
          Coord{static_cast<uint16_t>(x), static_cast<uint16_t>(y)},
          bytes_per_cell, chunk_cap);
    }
  }
}

Coord ObjectSpace::place(VertexId id) const {
  return place_vertex(id, width_, height_);
}

CellStore& ObjectSpace::cell(Coord c) {
  if (c.x >= width_ || c.y >= height_) {
    throw StoreError("cell " + coord_str(c) + " outside the grid");
  }
  return cells_[uint64_t{c.y} * width_ + c.x];
}

const CellStore& ObjectSpace::cell(Coord c) const {
  return const_cast<ObjectSpace*>(this)->cell(c);
}

ObjectAddress ObjectSpace::create_root(Coord cc, VertexId id) {
  CellStore& store = cell(cc);
  if (store.find_vertex(id)) {
    throw StoreError("vertex " + std::to_string(id) +
                     " already rooted on cell " + coord_str(cc));
  }
  VertexObject obj;
  obj.vertex_id = id;
  obj.is_root = true;
  obj.edges.reserve(chunk_cap_);
  const uint32_t slot = store.allocate(std::move(obj));
  store.register_vertex(id, slot);
  return ObjectAddress{cc, slot};
}

std::optional<ObjectAddress> ObjectSpace::find_root(VertexId id) const {
  const Coord home = place(id);
  auto slot = cell(home).find_vertex(id);
  if (!slot) return std::nullopt;
  return ObjectAddress{home, *slot};
}

ObjectAddress ObjectSpace::resolve(VertexId id, bool auto_create) {
  if (auto found = find_root(id)) return *found;
  if (!auto_create) {
    throw StoreError("unknown vertex " + std::to_string(id));
  }
  return create_root(place(id), id);
}

VertexObject& ObjectSpace::object(ObjectAddress addr) {
  return cell(addr.cc).object(addr.slot);
}

const VertexObject& ObjectSpace::object(ObjectAddress addr) const {
  return cell(addr.cc).object(addr.slot);
}

ObjectAddress ObjectSpace::allocate_ghost(ObjectAddress root) {
  VertexObject ghost;
  ghost.vertex_id = object(root).vertex_id;
  ghost.is_root = false;
  ghost.edges.reserve(chunk_cap_);

  CellStore& home = cell(root.cc);
  if (home.has_room()) {
    return ObjectAddress{root.cc, home.allocate(std::move(ghost))};
  }
  if (policy_ == GhostPolicy::AlwaysLocal) {
    throw StoreError("cell " + coord_str(root.cc) +
                     " out of object memory for vertex " +
                     std::to_string(ghost.vertex_id) +
                     " (ghost policy is local-only)");
  }
  static constexpr std::array<std::pair<int, int>, 4> kOffsets{
      {{0, -1}, {1, 0}, {0, 1}, {-1, 0}}};  // N, E, S, W
  for (uint32_t attempt = 0; attempt < kNumDirections; ++attempt) {
    const uint32_t i = (home.spill_cursor + attempt) % kNumDirections;
    const int nx = int{root.cc.x} + kOffsets[i].first;
    const int ny = int{root.cc.y} + kOffsets[i].second;
    if (nx < 0 || ny < 0 || nx >= static_cast<int>(width_) ||
        ny >= static_cast<int>(height_)) {
      continue;
    }
    const Coord nc{static_cast<uint16_t>(nx), static_cast<uint16_t>(ny)};
    CellStore& neighbor = cell(nc);
    if (!neighbor.has_room()) continue;
    home.spill_cursor = (i + 1) % kNumDirections;
    return ObjectAddress{nc, neighbor.allocate(std::move(ghost))};
  }
  throw StoreError("cell " + coord_str(root.cc) +
                   " and its neighbors are out of object memory for vertex " +
                   std::to_string(ghost.vertex_id));
}

InsertResult ObjectSpace::insert_edge(ObjectAddress root,
                                      ObjectAddress dst_root, float weight) {
  if (!object(root).is_root) {
    throw StoreError("edge insertion must start from a root object");
  }
  ObjectAddress cur = root;
  uint64_t flat_base = 0;
  while (true) {
    VertexObject& obj = object(cur);
    if (obj.edges.size() < chunk_cap_) {
      const auto slot = static_cast<uint32_t>(obj.edges.size());
      obj.edges.push_back(Edge{dst_root, weight});
      return InsertResult{cur, slot, flat_base + slot};
    }
    if (!obj.next) {
      const ObjectAddress ghost = allocate_ghost(root);
      // Re-resolve: allocation may have moved the cell's slot vector.
      object(cur).next = ghost;
    }
    flat_base += chunk_cap_;
    cur = *object(cur).next;
  }
}

uint64_t ObjectSpace::edge_count(ObjectAddress root) const {
  uint64_t count = 0;
  std::optional<ObjectAddress> cur = root;
  while (cur) {
    const VertexObject& obj = object(*cur);
    count += obj.edges.size();
    cur = obj.next;
  }
  return count;
}

Edge ObjectSpace::edge_at(ObjectAddress root, uint64_t flat_index) const {
  std::optional<ObjectAddress> cur = root;
  uint64_t skipped = 0;
  while (cur) {
    const VertexObject& obj = object(*cur);
    if (flat_index < skipped + obj.edges.size()) {
      return obj.edges[flat_index - skipped];
    }
    skipped += obj.edges.size();
    cur = obj.next;
  }
  throw StoreError("edge index " + std::to_string(flat_index) +
                   " past the end of the chain");
}

uint64_t ObjectSpace::chain_length(ObjectAddress root) const {
  uint64_t length = 0;
  std::optional<ObjectAddress> cur = root;
  while (cur) {
    ++length;
    cur = object(*cur).next;
  }
  return length;
}

Level ObjectSpace::level_of(VertexId id) const {
  auto addr = find_root(id);
  if (!addr) return kUnreachedLevel;
  return object(*addr).level;
}

uint64_t ObjectSpace::total_objects() const {
  uint64_t n = 0;
  for (const auto& c : cells_) n += c.object_count();
  return n;
}

}  // namespace ccsim::graph
