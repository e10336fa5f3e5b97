#ifndef ROTOR_VERIFY_HPP
#define ROTOR_VERIFY_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "rotor/analysis.hpp"

namespace rotor {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

enum class Scale { Quick, Full };

// Individual checks; the acceptance suite drives these at pinned scales.
CheckResult check_figure1_golden();
CheckResult check_tree_invariants(std::uint64_t seed);
CheckResult check_swap_legality(std::uint64_t seed);
CheckResult check_flip_rank_oracle();
CheckResult check_flip_rank_permutation(std::uint64_t seed);
CheckResult check_flip_rank_step(std::uint64_t seed);
CheckResult check_rank_update_observation(std::uint32_t runs, std::uint32_t rounds,
                                          std::uint64_t seed);
CheckResult check_cost_bound(std::uint64_t min_rounds, std::uint64_t seed);
CheckResult check_randomization_purity(std::uint64_t seed);
CheckResult check_max_push_strictness(std::uint64_t seed);
CheckResult check_adversary_working_set(std::uint32_t levels, std::size_t requests);
CheckResult check_workload_regenerability(std::uint64_t seed);
CheckResult check_temporal_repeat_fraction(std::uint64_t seed);
CheckResult check_zipf_frequency_fit(std::uint64_t seed);
CheckResult check_initial_credit_zero(std::uint64_t seed);
CheckResult check_rotor_potentials(std::uint32_t runs, std::uint32_t rounds,
                                   bool swapping_reference, std::uint64_t seed);
CheckResult check_random_potentials(std::uint32_t states, std::uint32_t seeds_per_state,
                                    std::uint64_t seed);
CheckResult check_oracle_sanity(std::uint64_t seed);
CheckResult check_competitive(const CompetitiveConfig& config);
CheckResult check_entropy_reproduction();
CheckResult check_trend_temporal(Scale scale, std::uint64_t seed);
CheckResult check_trend_spatial(Scale scale, std::uint64_t seed);
CheckResult check_trend_size(Scale scale, std::uint64_t seed);
CheckResult check_histogram_mean(Scale scale, std::uint64_t seed);
CheckResult check_csv_determinism(std::uint64_t seed);
CheckResult check_serial_parallel_kernels(std::uint64_t seed);

// Runs the whole battery; quick caps depths at 6 and repetitions at 10 and
// skips the long reproduction checks. Prints one line per check when a
// stream is given.
std::vector<CheckResult> run_verification_suite(Scale scale, std::uint64_t seed,
                                                std::ostream* progress);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace rotor

#endif
