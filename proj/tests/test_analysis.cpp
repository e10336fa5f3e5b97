#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <vector>

#include "rotor/analysis.hpp"

using namespace rotor;

namespace {

// Tree with element e placed at the given BFS position (identity elsewhere,
// patched by one exchange).
TreeState tree_with(std::uint32_t depth, ElementId e, std::uint32_t pos) {
  std::vector<ElementId> placement((1u << (depth + 1)) - 1);
  std::iota(placement.begin(), placement.end(), 0u);
  std::swap(placement[e], placement[pos]);
  return TreeState::from_placement(depth, std::move(placement));
}

}  // namespace

TEST_CASE("working-set ranks and bound") {
  std::vector<ElementId> repeat = {1, 1};
  CHECK(request_ranks(repeat) == std::vector<std::uint32_t>{1, 1});
  CHECK(working_set_bound(repeat) == doctest::Approx(0.0));

  std::vector<ElementId> alternate = {1, 2, 1};
  CHECK(request_ranks(alternate) == std::vector<std::uint32_t>{1, 2, 2});
  CHECK(working_set_bound(alternate) == doctest::Approx(2.0));

  std::vector<ElementId> constant(100, 3);
  CHECK(working_set_bound(constant) == doctest::Approx(0.0));
}

TEST_CASE("credit formulas") {
  SUBCASE("random flavor uses level weight only") {
    TreeState alg = tree_with(5, 0, NodeId{5, 3}.bfs());
    TreeState ref = tree_with(5, 0, NodeId{1, 0}.bfs());
    CHECK(credit(alg, nullptr, ref, 0, CreditFlavor::Random) == doctest::Approx(16.0));
  }

  SUBCASE("rotor flavor adds the flip-rank weight") {
    TreeState alg = tree_with(3, 0, NodeId{3, 1}.bfs());  // level 3, frnk 5 below
    TreeState ref = tree_with(3, 0, NodeId{1, 0}.bfs());  // reference level 1
    // Choose pointers so that frnk((3,1)) = 5: root right (stride 1),
    // then left-left along the path to (3,1).
    RotorState rotor(3);
    rotor.set_pointer(NodeId{0, 0}, Pointer::Right);
    rotor.set_pointer(NodeId{2, 0}, Pointer::Left);
    REQUIRE(flip_rank(rotor, NodeId{3, 1}) == 5);
    // Level weight 0 (3 < 4), rank weight 1 - 5/8.
    CHECK(credit(alg, &rotor, ref, 0, CreditFlavor::Rotor) == doctest::Approx(1.5));
  }

  SUBCASE("identical trees carry zero credit") {
    TreeState tree = build_tree(4, Layout::UniformRandom, 3);
    RotorState rotor(4);
    std::vector<std::uint32_t> frnk = flip_rank_table(rotor);
    for (CreditFlavor flavor : {CreditFlavor::Rotor, CreditFlavor::Random}) {
      std::vector<double> credits = credit_table(tree, &frnk, tree, flavor);
      for (double c : credits) CHECK(c == 0.0);
    }
  }
}

TEST_CASE("brute-force optimum on frozen instances") {
  TreeState tree(1);

  std::vector<ElementId> one = {1};
  OracleResult r1 = brute_force_opt(tree, one);
  CHECK(r1.optimal_cost == 2);
  CHECK(replay_witness(tree, one, r1) == 2);

  std::vector<ElementId> thrice = {1, 1, 1};
  OracleResult r3 = brute_force_opt(tree, thrice);
  CHECK(r3.optimal_cost == 4);
  CHECK(replay_witness(tree, thrice, r3) == 4);

  std::vector<ElementId> empty;
  CHECK(brute_force_opt(tree, empty).optimal_cost == 0);
}

TEST_CASE("oracle rejects out-of-range instances") {
  std::vector<ElementId> seq = {0};
  CHECK_THROWS_AS(brute_force_opt(TreeState(3), seq), InstanceTooLarge);
  std::vector<ElementId> long_seq(9, 0);
  CHECK_THROWS_AS(brute_force_opt(TreeState(2), long_seq), InstanceTooLarge);
}

TEST_CASE("constant root sequence is served at ratio one") {
  TreeState tree(1);
  std::vector<ElementId> seq(6, 0);
  OracleResult oracle = brute_force_opt(tree, seq);
  CHECK(oracle.optimal_cost == 6);

  RotorPush alg(tree);
  std::uint64_t total = 0;
  for (ElementId e : seq) total += alg.serve(e).total();
  CHECK(total == oracle.optimal_cost);
}

TEST_CASE("round check accepts a trivial root round") {
  TreeState tree(3);
  RotorState rotor(3);
  TreeState ref = tree;
  TreeState pre_tree = tree;
  RotorState pre_rotor = rotor;
  CostLedger ledger;
  tree.begin_round();
  ledger.begin_request();
  RoundCost cost = rotor_push_round(tree, rotor, 0, ledger);
  RoundCheckReport report =
      check_rotor_round(pre_tree, pre_rotor, tree, rotor, ref, 0, cost);
  CHECK(report.ok);
  CHECK(report.amortized <= 12.0);
  CHECK(report.round_bound == 12.0);
}

TEST_CASE("round check flags violations when fed an inconsistent round") {
  TreeState tree(3);
  RotorState rotor(3);
  TreeState ref = tree;
  // A fabricated round that claims a huge cost for a root access must blow
  // the amortized bound.
  RoundCheckReport report =
      check_rotor_round(tree, rotor, tree, rotor, ref, 0, RoundCost{100, 100});
  CHECK(!report.ok);
  CHECK(report.detail.find("amortized") != std::string::npos);
}

TEST_CASE("reference swap check flags a non-adjacent reference move") {
  // Teleporting an element from the root to a leaf in one step is not a
  // swap; the credit jump must exceed the per-swap allowance.
  TreeState alg_tree(5);
  RotorState rotor(5);
  TreeState ref_before(5);
  std::vector<ElementId> placement((1u << 6) - 1);
  std::iota(placement.begin(), placement.end(), 0u);
  std::swap(placement[0], placement[NodeId{5, 7}.bfs()]);
  TreeState ref_after = TreeState::from_placement(5, placement);
  // Element at (5,7) in the algorithm tree drops from reference level 5 to
  // reference level 0, lifting its level weight by far more than one swap
  // can.
  RefSwapCheck check = check_reference_swap(alg_tree, &rotor, ref_before, ref_after,
                                            CreditFlavor::Rotor);
  CHECK(!check.ok);
}

TEST_CASE("reference swap check stays within the per-swap bounds") {
  TreeState alg_tree = build_tree(4, Layout::UniformRandom, 21);
  RotorState rotor(4);
  TreeState ref_before = build_tree(4, Layout::UniformRandom, 22);
  for (std::uint32_t pos = 1; pos < ref_before.node_count(); ++pos) {
    TreeState ref_after = ref_before;
    CostLedger scratch;
    NodeId child = NodeId::from_bfs(pos);
    ref_after.offline_swap(child.parent(), child, scratch);
    CHECK(check_reference_swap(alg_tree, &rotor, ref_before, ref_after,
                               CreditFlavor::Rotor)
              .ok);
    CHECK(check_reference_swap(alg_tree, nullptr, ref_before, ref_after,
                               CreditFlavor::Random)
              .ok);
  }
}

TEST_CASE("random round check holds on a fixed deep state") {
  TreeState pre = build_tree(4, Layout::UniformRandom, 31);
  TreeState ref = build_tree(4, Layout::UniformRandom, 32);
  ElementId deep = pre.element_at(NodeId{4, 9});
  RandomRoundCheck check = check_random_round(pre, ref, deep, 2000, 33);
  CHECK(check.ok);

  ElementId at_root = pre.element_at(NodeId{0, 0});
  check = check_random_round(pre, ref, at_root, 50, 34);
  CHECK(check.ok);
  CHECK(check.mean_others == doctest::Approx(0.0));
}
