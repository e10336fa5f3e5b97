// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Scales and tolerances are pinned here.

#include <cstdio>
#include <string>
#include <vector>

#include "rotor/verify.hpp"

namespace {

struct Criterion {
  int number;
  const char* title;
  rotor::CheckResult result;
};

}  // namespace

int main() {
  using namespace rotor;
  const std::uint64_t seed = 20240817;
  std::vector<Criterion> criteria;

  auto run = [&](int number, const char* title, CheckResult result) {
    std::printf("criterion %2d  %-28s %s%s%s\n", number, title,
                result.pass ? "PASS" : "FAIL", result.detail.empty() ? "" : "  -- ",
                result.detail.c_str());
    std::fflush(stdout);
    criteria.push_back({number, title, std::move(result)});
  };

  run(1, "figure-1 golden transition", check_figure1_golden());
  run(2, "flip-rank oracle equivalence", check_flip_rank_oracle());
  run(3, "flip-rank permutations", check_flip_rank_permutation(seed));
  run(4, "per-round cost bound", check_cost_bound(200000, seed));

  run(5, "rotor potentials, frozen ref", check_rotor_potentials(100, 10000, false, seed));
  run(5, "rotor potentials, moving ref", check_rotor_potentials(100, 10000, true, seed));
  run(5, "random-push potentials", check_random_potentials(20, 10000, seed));

  CompetitiveConfig competitive;
  competitive.random_seeds = 1000;
  competitive.n7_instances = 200;
  run(6, "oracle competitiveness", check_competitive(competitive));

  run(7, "working-set violation", check_adversary_working_set(10, 10000));
  run(8, "entropy reproduction", check_entropy_reproduction());

  run(9, "trend 9a: temporal locality", check_trend_temporal(Scale::Quick, seed));
  run(9, "trend 9b: spatial locality", check_trend_spatial(Scale::Quick, seed));
  run(9, "trend 9c: network size", check_trend_size(Scale::Quick, seed));
  run(9, "trend 9d: histogram mean", check_histogram_mean(Scale::Quick, seed));

  run(10, "csv determinism", check_csv_determinism(seed));

  int failed = 0;
  for (const Criterion& c : criteria) failed += c.result.pass ? 0 : 1;
  if (failed == 0) {
    std::printf("all %zu acceptance checks passed\n", criteria.size());
    return 0;
  }
  std::printf("%d acceptance check(s) failed\n", failed);
  return 1;
}
