#include "ccsim/actions.hpp"

#include <bit>

#include "ccsim/errors.hpp"

namespace ccsim {

namespace {

// Moves the cursor to the next chain position that holds an edge, clearing
// it once past the end. Objects never shrink, so positions stay valid.
void normalize_cursor(InFlightAction& act, const graph::ObjectSpace& space) {
  while (act.cursor_object) {
    const auto& obj = space.object(*act.cursor_object);
    if (act.cursor_index < obj.edges.size()) return;
    act.cursor_object = obj.next;
    act.cursor_index = 0;
  }
}

Operon make_bfs_operon(ObjectAddress dst, Level proposed) {
  Operon op;
  op.dst_cc = dst.cc;
  op.dst_object = dst;
  op.opcode = Opcode::Bfs;
  op.operand0 = proposed;
  return op;
}

}  // namespace

const char* to_string(ActionPhase p) {
  switch (p) {
    case ActionPhase::Predicate: return "predicate";
    case ActionPhase::Work: return "work";
    case ActionPhase::Diffuse: return "diffuse";
  }
  return "?";
}

ActionInstance to_action(const Operon& op) {
  return ActionInstance{op.dst_object, op.opcode, op.operand0, op.operand1};
}

Operon to_operon(const ActionInstance& inst) {
  return Operon{inst.target.cc, inst.target, inst.opcode, inst.operand0,
                inst.operand1};
}

void ActionCosts::validate() const {
  if (predicate_cycles == 0 || work_cycles == 0) {
    throw ConfigError("action phase costs must be at least one cycle");
  }
}

bool bfs_predicate(const graph::VertexObject& vertex, Level proposed) {
  return proposed < vertex.level;
}

namespace {

ActionStepOutcome step_predicate(InFlightAction& act,
                                 graph::ObjectSpace& space,
                                 const ActionCosts& costs) {
  ActionStepOutcome out;
  out.progressed = true;
  if (++act.phase_progress < costs.predicate_cycles) return out;
  act.phase_progress = 0;

  const graph::VertexObject& obj = space.object(act.inst.target);
  switch (act.inst.opcode) {
    case Opcode::Bfs:
    case Opcode::Seed: {
      if (!bfs_predicate(obj, static_cast<Level>(act.inst.operand0))) {
        out.finished = true;
        return out;
      }
      act.phase = ActionPhase::Work;
      return out;
    }
    case Opcode::BfsNewEdge: {
      // Unreached source: nothing to propagate along the new edge.
      if (obj.level == kUnreachedLevel) {
        out.finished = true;
        return out;
      }
      act.emit_level = obj.level + 1;
      act.single_edge = act.inst.operand0;
      act.phase = ActionPhase::Diffuse;  // no state to write, skip work
      return out;
    }
    case Opcode::InsertEdge: {
      act.phase = ActionPhase::Work;  // unconditional
      return out;
    }
  }
  out.finished = true;
  return out;
}

ActionStepOutcome step_work(InFlightAction& act, graph::ObjectSpace& space,
                            const ActionCosts& costs) {
  ActionStepOutcome out;
  out.progressed = true;
  if (++act.phase_progress < costs.work_cycles) return out;
  act.phase_progress = 0;

  switch (act.inst.opcode) {
    case Opcode::Bfs:
    case Opcode::Seed: {
      graph::VertexObject& obj = space.object(act.inst.target);
      const auto proposed = static_cast<Level>(act.inst.operand0);
      obj.level = proposed;
      act.emit_level = proposed + 1;
      act.cursor_object = act.inst.target;
      act.cursor_index = 0;
      normalize_cursor(act, space);
      if (!act.cursor_object) {
        out.finished = true;  // nothing to inform
        return out;
      }
      act.phase = ActionPhase::Diffuse;
      return out;
    }
    case Opcode::InsertEdge: {
      const VertexId dst_id = act.inst.operand0;
      const float weight =
          std::bit_cast<float>(static_cast<uint32_t>(act.inst.operand1));
      const ObjectAddress dst_root = space.resolve(dst_id, true);
      const graph::InsertResult res =
          space.insert_edge(act.inst.target, dst_root, weight);
      out.germinated = ActionInstance{act.inst.target, Opcode::BfsNewEdge,
                                      res.flat_index, 0};
      out.finished = true;
      return out;
    }
    default:
      throw StoreError("action has no work phase");
  }
}

ActionStepOutcome step_diffuse(InFlightAction& act, graph::ObjectSpace& space,
                               bool staging_has_space) {
  ActionStepOutcome out;
  if (!staging_has_space) return out;  // stall, cursor untouched
  out.progressed = true;

  if (act.single_edge) {
    const graph::Edge e = space.edge_at(act.inst.target, *act.single_edge);
    out.emitted = make_bfs_operon(e.target, act.emit_level);
    out.finished = true;
    return out;
  }

  const graph::VertexObject& obj = space.object(*act.cursor_object);
  out.emitted = make_bfs_operon(obj.edges[act.cursor_index].target,
                                act.emit_level);
  ++act.cursor_index;
  normalize_cursor(act, space);
  if (!act.cursor_object) out.finished = true;
  return out;
}

}  // namespace

ActionStepOutcome step_action(InFlightAction& act, graph::ObjectSpace& space,
                              const ActionCosts& costs,
                              bool staging_has_space) {
  switch (act.phase) {
    case ActionPhase::Predicate: return step_predicate(act, space, costs);
    case ActionPhase::Work: return step_work(act, space, costs);
    case ActionPhase::Diffuse:
      return step_diffuse(act, space, staging_has_space);
  }
  throw StoreError("action in impossible phase");
}

}  // namespace ccsim
