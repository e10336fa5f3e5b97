#ifndef ROTOR_ANALYSIS_HPP
#define ROTOR_ANALYSIS_HPP

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rotor/algorithms.hpp"
#include "rotor/rotor_state.hpp"
#include "rotor/tree.hpp"

namespace rotor {

struct InstanceTooLarge : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Potential-function constants: f for Rotor-Push credits, f_R for
// Random-Push credits.
inline constexpr double kRotorCreditFactor = 4.0;
inline constexpr double kRandomCreditFactor = 8.0;

enum class CreditFlavor { Rotor, Random };

// Weight components of an element whose level is `level` in the algorithm's
// tree and `ref_level` in the reference tree.
inline double level_weight(std::uint32_t level, std::uint32_t ref_level) {
  if (level >= 2 * ref_level + 2)
    return static_cast<double>(level) - 2.0 * ref_level - 1.0;
  return 0.0;
}

inline double rank_weight(std::uint32_t level, std::uint32_t ref_level,
                          std::uint32_t frnk) {
  if (level >= 2 * ref_level + 1)
    return 1.0 - static_cast<double>(frnk) / static_cast<double>(1u << level);
  return 0.0;
}

// Credit of one element. Rotor flavor requires the flip-rank of the
// element's node in the algorithm's tree; Random flavor ignores it.
double credit(const TreeState& alg_tree, const RotorState* rotor,
              const TreeState& ref_tree, ElementId e, CreditFlavor flavor);

// Credits of all elements, indexed by element id. `frnk_by_node` is the
// flip-rank table of the algorithm's rotor state (ignored for Random).
std::vector<double> credit_table(const TreeState& alg_tree,
                                 const std::vector<std::uint32_t>* frnk_by_node,
                                 const TreeState& ref_tree, CreditFlavor flavor);
std::vector<double> credit_table_serial(const TreeState& alg_tree,
                                        const std::vector<std::uint32_t>* frnk_by_node,
                                        const TreeState& ref_tree, CreditFlavor flavor);

// Working-set rank of each request: distinct elements accessed since the
// previous access of the requested element, inclusive. A first access
// counts the distinct elements seen so far, including itself.
std::vector<std::uint32_t> request_ranks(std::span<const ElementId> requests);

// WS(sigma) = sum of log2(rank) over the sequence.
double working_set_bound(std::span<const ElementId> requests);

struct RoundCheckReport {
  bool ok = true;
  double sum_path = 0.0;       // credit change over P'
  double sum_bystander = 0.0;  // credit change over B
  double amortized = 0.0;      // round cost plus total credit change
  double round_bound = 0.0;    // 12 * (ref level of e* + 1)
  std::string detail;
};

// Checks one Rotor-Push round against the credit inequalities: the global
// path elements gain at most f, bystanders gain at most f, and the
// amortized cost stays within 12 times the reference access cost. The
// reference tree must not change during the round.
RoundCheckReport check_rotor_round(const TreeState& pre_tree,
                                   const RotorState& pre_rotor,
                                   const TreeState& post_tree,
                                   const RotorState& post_rotor,
                                   const TreeState& ref_tree, ElementId e_star,
                                   RoundCost cost);

struct RefSwapCheck {
  bool ok = true;
  double delta = 0.0;
  double bound = 0.0;
};

// Total credit change caused by one reference-tree swap: at most 3f for
// Rotor credits, at most 2 f_R for Random credits.
RefSwapCheck check_reference_swap(const TreeState& alg_tree, const RotorState* rotor,
                                  const TreeState& ref_before,
                                  const TreeState& ref_after, CreditFlavor flavor);

struct RandomRoundCheck {
  bool ok = true;
  double mean_others = 0.0;    // mean credit change over E' = E \ {e*}
  double others_bound = 0.0;   // (d*/2 + 1) * f_R plus slack
  double mean_amortized = 0.0; // mean round cost plus total credit change
  double amortized_bound = 0.0;  // 16 * (ref level + 1) plus slack
  std::string detail;
};

// Replays one Random-Push round from the same pre-state under `seeds`
// independent streams and checks the expected-change inequalities within
// three standard errors.
RandomRoundCheck check_random_round(const TreeState& pre_tree,
                                    const TreeState& ref_tree, ElementId e_star,
                                    std::uint32_t seeds, std::uint64_t base_seed);

struct OracleResult {
  std::uint64_t optimal_cost = 0;
  struct Step {
    std::vector<std::pair<NodeId, NodeId>> swaps;  // before the access
    ElementId request = 0;
  };
  std::vector<Step> witness;
};

// Exact offline optimum over placements, allowing arbitrary adjacent swaps
// at unit cost before each access. Supported instances: 3-node trees with
// at most 16 requests and 7-node trees with at most 8 requests.
OracleResult brute_force_opt(const TreeState& initial,
                             std::span<const ElementId> requests);

// Replays a witness on a fresh copy of the initial tree; returns its cost.
std::uint64_t replay_witness(const TreeState& initial,
                             std::span<const ElementId> requests,
                             const OracleResult& oracle);

struct CompetitiveRow {
  std::string instance;
  std::string algorithm;
  double total = 0.0;   // mean over seeds for random-push
  double stderr_ = 0.0; // standard error of that mean (0 for deterministic)
  std::uint64_t optimal = 0;
  double ratio = 0.0;
};

struct CompetitiveConfig {
  std::uint32_t random_seeds = 1000;
  std::uint32_t n7_instances = 200;
  std::uint32_t n7_length = 5;
  std::uint64_t seed = 0x5eedu;
};

// Rotor-Push and Random-Push totals against the oracle: every length-4
// sequence on the 3-node tree, plus sampled length-5 sequences on the
// 7-node tree.
std::vector<CompetitiveRow> competitive_report(const CompetitiveConfig& config);

std::string competitive_table(const std::vector<CompetitiveRow>& rows);

}  // namespace rotor

#endif
