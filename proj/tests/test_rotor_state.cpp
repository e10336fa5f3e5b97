#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "rotor/rng.hpp"
#include "rotor/rotor_state.hpp"

using namespace rotor;

namespace {

// Pointer state of the right half of the worked example: root and (1,0)
// point right, everything else left.
RotorState fig1_right_state() {
  RotorState rotor(3);
  rotor.set_pointer(NodeId{0, 0}, Pointer::Right);
  rotor.set_pointer(NodeId{1, 0}, Pointer::Right);
  return rotor;
}

}  // namespace

TEST_CASE("global path follows the pointers") {
  SUBCASE("all-left") {
    RotorState rotor(3);
    GlobalPath path = rotor.global_path();
    REQUIRE(path.size() == 4);
    CHECK(path[0] == NodeId{0, 0});
    CHECK(path[1] == NodeId{1, 0});
    CHECK(path[2] == NodeId{2, 0});
    CHECK(path[3] == NodeId{3, 0});
  }

  SUBCASE("mixed pointers select the rank-zero nodes") {
    RotorState rotor = fig1_right_state();
    GlobalPath path = rotor.global_path();
    CHECK(path[1] == NodeId{1, 1});
    CHECK(path[2] == NodeId{2, 2});
    CHECK(path[3] == NodeId{3, 4});
    for (const NodeId& v : path) CHECK(flip_rank(rotor, v) == 0);
  }

  SUBCASE("degenerate tree") {
    RotorState rotor(0);
    GlobalPath path = rotor.global_path();
    REQUIRE(path.size() == 1);
    CHECK(path[0] == NodeId{0, 0});
  }
}

TEST_CASE("flip toggles the path prefix computed on the pre-state") {
  SUBCASE("single toggle") {
    RotorState rotor(1);
    rotor.flip(1);
    CHECK(rotor.pointer(NodeId{0, 0}) == Pointer::Right);
    CHECK(rotor.global_path()[1] == NodeId{1, 1});
  }

  SUBCASE("two toggles reproduce the worked example") {
    RotorState rotor(3);
    rotor.flip(2);
    CHECK(rotor == fig1_right_state());
  }

  SUBCASE("flip(0) is a no-op") {
    RotorState rotor(3);
    RotorState before = rotor;
    rotor.flip(0);
    CHECK(rotor == before);
  }

  SUBCASE("level beyond the depth is rejected") {
    RotorState rotor(3);
    CHECK_THROWS_AS(rotor.flip(4), LevelOutOfRange);
  }
}

TEST_CASE("flip rank values of the worked example") {
  RotorState left(3);
  CHECK(flip_rank(left, NodeId{0, 0}) == 0);
  CHECK(flip_rank_sim(left, NodeId{3, 3}) == 6);
  CHECK(flip_rank(left, NodeId{3, 1}) == 4);
  for (std::uint32_t level = 0; level <= 3; ++level)  // leftmost spine
    CHECK(flip_rank(left, NodeId{level, 0}) == 0);

  RotorState right = fig1_right_state();
  CHECK(flip_rank_sim(right, NodeId{2, 0}) == 3);
  CHECK(flip_rank(right, NodeId{3, 1}) == 7);
}

TEST_CASE("closed form equals the simulated definition") {
  Rng rng(0xabcdu);
  for (std::uint32_t depth = 1; depth <= 6; ++depth) {
    for (int state = 0; state < 20; ++state) {
      RotorState rotor(depth);
      for (std::uint32_t pos = 0; pos < rotor.pointer_count(); ++pos)
        rotor.set_pointer(NodeId::from_bfs(pos),
                          rng.next_bits(1) ? Pointer::Right : Pointer::Left);
      std::vector<std::uint32_t> table = flip_rank_table(rotor);
      CHECK(table == flip_rank_table_serial(rotor));
      for (std::uint32_t pos = 0; pos < (1u << (depth + 1)) - 1; ++pos) {
        NodeId u = NodeId::from_bfs(pos);
        CHECK(flip_rank(rotor, u) == flip_rank_sim(rotor, u));
        CHECK(flip_rank(rotor, u) == table[pos]);
      }
    }
  }
}

TEST_CASE("pointer snapshot is one line per non-leaf node") {
  RotorState rotor(1);
  rotor.set_pointer(NodeId{0, 0}, Pointer::Right);
  std::ostringstream out;
  rotor.write_snapshot(out);
  CHECK(out.str() == "0,0,R\n");

  RotorState deeper(2);
  std::ostringstream out2;
  deeper.write_snapshot(out2);
  CHECK(out2.str() == "0,0,L\n1,0,L\n1,1,L\n");
}
