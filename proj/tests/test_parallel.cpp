#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rotor/analysis.hpp"
#include "rotor/rng.hpp"
#include "rotor/verify.hpp"
#include "rotor/workloads.hpp"

using namespace rotor;

// The parallel kernels must match their serial references exactly; costs and
// counts are integers and the floating-point reductions are ordered.

TEST_CASE("flip-rank table kernels agree") {
  Rng rng(17);
  for (std::uint32_t depth : {3u, 9u, 14u}) {
    RotorState rotor(depth);
    for (std::uint32_t pos = 0; pos < rotor.pointer_count(); ++pos)
      rotor.set_pointer(NodeId::from_bfs(pos),
                        rng.next_bits(1) ? Pointer::Right : Pointer::Left);
    CHECK(flip_rank_table(rotor) == flip_rank_table_serial(rotor));
  }
}

TEST_CASE("credit table kernels agree") {
  Rng rng(18);
  for (std::uint32_t depth : {4u, 10u}) {
    TreeState tree = build_tree(depth, Layout::UniformRandom, rng.next_u64());
    TreeState reference = build_tree(depth, Layout::UniformRandom, rng.next_u64());
    RotorState rotor(depth);
    for (std::uint32_t pos = 0; pos < rotor.pointer_count(); ++pos)
      rotor.set_pointer(NodeId::from_bfs(pos),
                        rng.next_bits(1) ? Pointer::Right : Pointer::Left);
    std::vector<std::uint32_t> frnk = flip_rank_table(rotor);
    for (CreditFlavor flavor : {CreditFlavor::Rotor, CreditFlavor::Random}) {
      CHECK(credit_table(tree, &frnk, reference, flavor) ==
            credit_table_serial(tree, &frnk, reference, flavor));
    }
  }
}

TEST_CASE("entropy kernels agree") {
  RequestSequence seq = gen_combined(2047, 200000, 1.3, 0.4, 19);
  CHECK(empirical_entropy(seq) == empirical_entropy_serial(seq));
}

TEST_CASE("threaded experiment runner is deterministic") {
  CheckResult result = check_csv_determinism(20);
  CHECK(result.pass);
}
