#pragma once

#include <cstdint>
#include <optional>

#include "ccsim/graph_store.hpp"
#include "ccsim/types.hpp"

namespace ccsim {

// Execution phases of an action instance, strictly in this order. A failed
// predicate terminates the instance; diffuse runs once per emitted operon.
enum class ActionPhase : uint8_t { Predicate = 0, Work = 1, Diffuse = 2 };

const char* to_string(ActionPhase p);

// A pending action: what to run, against which object, with what operands.
// Operand meaning per opcode:
//   Bfs / Seed   operand0 = proposed level
//   BfsNewEdge   operand0 = flat index of the edge to diffuse along
//   InsertEdge   operand0 = destination vertex id, operand1 = weight bits
struct ActionInstance {
  ObjectAddress target;
  Opcode opcode = Opcode::Bfs;
  uint64_t operand0 = 0;
  uint64_t operand1 = 0;
};

ActionInstance to_action(const Operon& op);
Operon to_operon(const ActionInstance& inst);

// Per-phase cycle prices. Diffuse is not listed: it always costs one cycle
// per emitted operon, which is what ties compute time to vertex degree.
struct ActionCosts {
  uint32_t predicate_cycles = 1;
  uint32_t work_cycles = 1;

  void validate() const;
};

// The action currently occupying a cell's execute slot.
struct InFlightAction {
  ActionInstance inst;
  ActionPhase phase = ActionPhase::Predicate;
  uint32_t phase_progress = 0;  // cycles already spent in the current phase

  // Diffusion state: proposed level carried by emissions, plus either a
  // chain-walk cursor (full diffuse) or a single flat edge index.
  Level emit_level = kUnreachedLevel;
  std::optional<ObjectAddress> cursor_object;
  uint32_t cursor_index = 0;
  std::optional<uint64_t> single_edge;

  explicit InFlightAction(ActionInstance i) : inst(i) {}
};

// Result of giving an in-flight action one execute cycle.
struct ActionStepOutcome {
  bool progressed = false;  // the action consumed this cycle
  bool finished = false;    // the instance completed and must be dropped
  std::optional<Operon> emitted;             // at most one per cycle
  std::optional<ActionInstance> germinated;  // goes on the local queue
};

// Advances an action by one cycle against the shared object space. A
// diffuse blocked by a full staging buffer returns progressed=false and
// leaves the cursor untouched; nothing is ever skipped.
ActionStepOutcome step_action(InFlightAction& act, graph::ObjectSpace& space,
                              const ActionCosts& costs,
                              bool staging_has_space);

// Relaxation predicate shared by bfs and seed: strict improvement only.
bool bfs_predicate(const graph::VertexObject& vertex, Level proposed);

}  // namespace ccsim
