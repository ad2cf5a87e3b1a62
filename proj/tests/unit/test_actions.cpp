#include <doctest.h>

#include <bit>
#include <cstdint>
#include <vector>

#include "ccsim/actions.hpp"
#include "ccsim/errors.hpp"
#include "ccsim/graph_store.hpp"

using namespace ccsim;
using namespace ccsim::graph;

namespace {

struct Fixture {
  ObjectSpace space{2, 2, 32768, 8};
  ObjectAddress a, b, c, d;

  Fixture() {
    a = space.resolve(0, true);
    b = space.resolve(1, true);
    c = space.resolve(2, true);
    d = space.resolve(3, true);
  }
};

// Runs an action to completion, recording one outcome per cycle.
std::vector<ActionStepOutcome> drive(InFlightAction& act, ObjectSpace& space,
                                     const ActionCosts& costs) {
  std::vector<ActionStepOutcome> steps;
  for (int guard = 0; guard < 1000; ++guard) {
    steps.push_back(step_action(act, space, costs, true));
    if (steps.back().finished) return steps;
  }
  REQUIRE(false);
  return steps;
}

}  // namespace

TEST_CASE("operons and action instances are two views of one invocation") {
  const ActionInstance inst{ObjectAddress{{1, 1}, 7}, Opcode::Bfs, 3, 9};
  const Operon op = to_operon(inst);
  CHECK(op.dst_cc == Coord{1, 1});
  CHECK(op.dst_object == inst.target);
  CHECK(op.operand0 == 3);
  const ActionInstance back = to_action(op);
  CHECK(back.target == inst.target);
  CHECK(back.opcode == inst.opcode);
  CHECK(back.operand0 == inst.operand0);
  CHECK(back.operand1 == inst.operand1);
}

TEST_CASE("phase costs must be at least one cycle") {
  ActionCosts ok;
  ok.validate();
  ActionCosts zero_pred{0, 1};
  CHECK_THROWS_AS(zero_pred.validate(), ConfigError);
  ActionCosts zero_work{1, 0};
  CHECK_THROWS_AS(zero_work.validate(), ConfigError);
}

TEST_CASE("relaxation accepts strict improvements only") {
  VertexObject v;
  v.level = 3;
  CHECK(bfs_predicate(v, 2));
  CHECK_FALSE(bfs_predicate(v, 3));
  CHECK_FALSE(bfs_predicate(v, 4));
  v.level = kUnreachedLevel;
  CHECK(bfs_predicate(v, kUnreachedLevel - 1));
  CHECK_FALSE(bfs_predicate(v, kUnreachedLevel));
}

TEST_CASE("a failed predicate costs exactly one cycle") {
  Fixture f;
  f.space.object(f.a).level = 3;
  InFlightAction act{ActionInstance{f.a, Opcode::Bfs, 3, 0}};
  const auto steps = drive(act, f.space, ActionCosts{});
  CHECK(steps.size() == 1);
  CHECK(steps[0].progressed);
  CHECK_FALSE(steps[0].emitted.has_value());
  CHECK_FALSE(steps[0].germinated.has_value());
  CHECK(f.space.object(f.a).level == 3);  // untouched
}

TEST_CASE("a successful relaxation costs predicate, work, one per edge") {
  Fixture f;
  f.space.insert_edge(f.a, f.b, 1.0f);
  f.space.insert_edge(f.a, f.c, 1.0f);
  f.space.insert_edge(f.a, f.d, 1.0f);

  InFlightAction act{ActionInstance{f.a, Opcode::Bfs, 0, 0}};
  const auto steps = drive(act, f.space, ActionCosts{});
  REQUIRE(steps.size() == 5);  // 2 + degree

  CHECK_FALSE(steps[0].emitted.has_value());  // predicate
  CHECK_FALSE(steps[1].emitted.has_value());  // work
  CHECK(f.space.object(f.a).level == 0);

  const ObjectAddress want[] = {f.b, f.c, f.d};
  for (int i = 0; i < 3; ++i) {
    REQUIRE(steps[2 + i].emitted.has_value());
    const Operon& op = *steps[2 + i].emitted;
    CHECK(op.opcode == Opcode::Bfs);
    CHECK(op.dst_object == want[i]);
    CHECK(op.dst_cc == want[i].cc);
    CHECK(op.operand0 == 1);  // proposed level is one past the new level
  }
}

TEST_CASE("an edgeless relaxation still costs the two fixed cycles") {
  Fixture f;
  InFlightAction act{ActionInstance{f.a, Opcode::Bfs, 2, 0}};
  const auto steps = drive(act, f.space, ActionCosts{});
  CHECK(steps.size() == 2);
  CHECK(f.space.object(f.a).level == 2);
  CHECK_FALSE(steps[1].emitted.has_value());
}

TEST_CASE("seeding behaves as a relaxation to the seed level") {
  Fixture f;
  f.space.insert_edge(f.a, f.b, 1.0f);
  InFlightAction act{ActionInstance{f.a, Opcode::Seed, 0, 0}};
  const auto steps = drive(act, f.space, ActionCosts{});
  REQUIRE(steps.size() == 3);
  CHECK(f.space.object(f.a).level == 0);
  REQUIRE(steps[2].emitted.has_value());
  CHECK(steps[2].emitted->operand0 == 1);
}

TEST_CASE("a stalled diffuse holds its place without consuming the cycle") {
  Fixture f;
  f.space.insert_edge(f.a, f.b, 1.0f);
  f.space.insert_edge(f.a, f.c, 1.0f);

  InFlightAction act{ActionInstance{f.a, Opcode::Bfs, 0, 0}};
  step_action(act, f.space, ActionCosts{}, true);  // predicate
  step_action(act, f.space, ActionCosts{}, true);  // work

  const ActionStepOutcome stalled = step_action(act, f.space, ActionCosts{},
                                                false);
  CHECK_FALSE(stalled.progressed);
  CHECK_FALSE(stalled.finished);
  CHECK_FALSE(stalled.emitted.has_value());

  // Space again: the first emission happens now, nothing was skipped.
  const ActionStepOutcome out = step_action(act, f.space, ActionCosts{}, true);
  REQUIRE(out.emitted.has_value());
  CHECK(out.emitted->dst_object == f.b);
  CHECK_FALSE(out.finished);
  const ActionStepOutcome last = step_action(act, f.space, ActionCosts{}, true);
  REQUIRE(last.emitted.has_value());
  CHECK(last.emitted->dst_object == f.c);
  CHECK(last.finished);
}

TEST_CASE("edge insertion germinates a single-edge diffusion locally") {
  Fixture f;
  const float w = 2.5f;
  InFlightAction act{ActionInstance{
      f.a, Opcode::InsertEdge, 1, std::bit_cast<uint32_t>(w)}};
  const auto steps = drive(act, f.space, ActionCosts{});
  REQUIRE(steps.size() == 2);
  CHECK_FALSE(steps[1].emitted.has_value());  // no operon; local germination
  REQUIRE(steps[1].germinated.has_value());
  CHECK(steps[1].germinated->target == f.a);
  CHECK(steps[1].germinated->opcode == Opcode::BfsNewEdge);
  CHECK(steps[1].germinated->operand0 == 0);  // first edge of the chain

  CHECK(f.space.edge_count(f.a) == 1);
  CHECK(f.space.edge_at(f.a, 0).target == f.b);
  CHECK(f.space.edge_at(f.a, 0).weight == w);

  // A second insert lands at the next flat position.
  InFlightAction act2{ActionInstance{
      f.a, Opcode::InsertEdge, 2, std::bit_cast<uint32_t>(1.0f)}};
  const auto steps2 = drive(act2, f.space, ActionCosts{});
  CHECK(steps2[1].germinated->operand0 == 1);
}

TEST_CASE("edge insertion creates the destination root when missing") {
  Fixture f;
  CHECK(f.space.find_root(77) == std::nullopt);
  InFlightAction act{ActionInstance{
      f.a, Opcode::InsertEdge, 77, std::bit_cast<uint32_t>(1.0f)}};
  drive(act, f.space, ActionCosts{});
  REQUIRE(f.space.find_root(77).has_value());
  CHECK(f.space.level_of(77) == kUnreachedLevel);
}

TEST_CASE("new-edge diffusion fires only from a reached source") {
  Fixture f;
  f.space.insert_edge(f.a, f.b, 1.0f);
  f.space.insert_edge(f.a, f.c, 1.0f);

  SUBCASE("unreached source finishes in one cycle with no emission") {
    InFlightAction act{ActionInstance{f.a, Opcode::BfsNewEdge, 1, 0}};
    const auto steps = drive(act, f.space, ActionCosts{});
    CHECK(steps.size() == 1);
    CHECK_FALSE(steps[0].emitted.has_value());
  }

  SUBCASE("reached source informs along exactly the named edge") {
    f.space.object(f.a).level = 2;
    InFlightAction act{ActionInstance{f.a, Opcode::BfsNewEdge, 1, 0}};
    const auto steps = drive(act, f.space, ActionCosts{});
    REQUIRE(steps.size() == 2);  // predicate + one emission
    REQUIRE(steps[1].emitted.has_value());
    CHECK(steps[1].emitted->dst_object == f.c);  // flat index 1
    CHECK(steps[1].emitted->operand0 == 3);      // level + 1
  }
}

TEST_CASE("phase costs stretch the cycle counts uniformly") {
  Fixture f;
  f.space.insert_edge(f.a, f.b, 1.0f);
  const ActionCosts costs{2, 3};

  InFlightAction act{ActionInstance{f.a, Opcode::Bfs, 0, 0}};
  const auto steps = drive(act, f.space, costs);
  CHECK(steps.size() == 2 + 3 + 1);

  f.space.object(f.c).level = 0;
  InFlightAction fail{ActionInstance{f.c, Opcode::Bfs, 5, 0}};
  CHECK(drive(fail, f.space, costs).size() == 2);  // predicate cycles only
}
