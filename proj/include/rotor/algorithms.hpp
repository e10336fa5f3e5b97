#ifndef ROTOR_ALGORITHMS_HPP
#define ROTOR_ALGORITHMS_HPP

#include <cstdint>
#include <memory>
#include <set>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "rotor/rank_tracker.hpp"
#include "rotor/rng.hpp"
#include "rotor/rotor_state.hpp"
#include "rotor/tree.hpp"

namespace rotor {

struct LevelMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RoundCost {
  std::uint64_t access = 0;
  std::uint64_t swaps = 0;
  std::uint64_t total() const { return access + swaps; }
};

// Cyclic shift PD(u, v) for two nodes on the same level d: the root-to-v
// path elements move one level down, el(v) moves to u, and el(u) moves to
// the root. The v-path is marked as an uncharged touch first, then el(v)
// slides up (d swaps); for u != v it slides back down to u (d swaps) and
// the displaced element returns to the root (d-1 swaps).
void augmented_push_down(TreeState& tree, NodeId u, NodeId v, CostLedger& ledger);

// Exchanges el(a) and el(b) along the tree path through their lowest common
// ancestor in 2*dist(a,b) - 1 swaps, leaving every other element in place.
// The path from a must start inside marked territory.
void transpose_along_path(TreeState& tree, NodeId a, NodeId b, CostLedger& ledger);

// One serve of the named policy, starting from an already begun round.
// Both enforce the per-round cost bound (total <= 4 * level, or 1 at the
// root) and throw std::logic_error when an implementation bug breaks it.
RoundCost rotor_push_round(TreeState& tree, RotorState& rotor, ElementId e,
                           CostLedger& ledger);
RoundCost random_push_round(TreeState& tree, Rng& rng, ElementId e,
                            CostLedger& ledger);

// Uniform serve interface over the six policies. An instance owns its tree,
// ledger and any private state; instances never share mutable state.
class Algorithm {
 public:
  explicit Algorithm(TreeState tree) : tree_(std::move(tree)) {}
  virtual ~Algorithm() = default;

  virtual std::string_view name() const = 0;

  // Offline knowledge hook; only Static-Opt uses it.
  virtual void prepare(std::span<const ElementId> requests) { (void)requests; }

  RoundCost serve(ElementId e) {
    ledger_.begin_request();
    tree_.begin_round();
    return do_serve(e);
  }

  const TreeState& tree() const { return tree_; }
  const CostLedger& ledger() const { return ledger_; }

 protected:
  virtual RoundCost do_serve(ElementId e) = 0;

  TreeState tree_;
  CostLedger ledger_;
};

class RotorPush final : public Algorithm {
 public:
  explicit RotorPush(TreeState tree)
      : Algorithm(std::move(tree)), rotor_(tree_.depth()) {}

  std::string_view name() const override { return "rotor-push"; }
  const RotorState& rotor() const { return rotor_; }

 protected:
  RoundCost do_serve(ElementId e) override {
    return rotor_push_round(tree_, rotor_, e, ledger_);
  }

 private:
  RotorState rotor_;
};

class RandomPush final : public Algorithm {
 public:
  RandomPush(TreeState tree, std::uint64_t seed)
      : Algorithm(std::move(tree)), rng_(seed) {}

  std::string_view name() const override { return "random-push"; }

 protected:
  RoundCost do_serve(ElementId e) override {
    return random_push_round(tree_, rng_, e, ledger_);
  }

 private:
  Rng rng_;
};

// Least-recently-used lookup per tree level, fed by the owning algorithm.
class LevelLru {
 public:
  LevelLru(const TreeState& tree, const RankTracker& ranks);

  ElementId least_recent(std::uint32_t level) const {
    return levels_[level].begin()->second;
  }

  void update(ElementId e, std::int64_t old_stamp, std::uint32_t old_level,
              std::int64_t new_stamp, std::uint32_t new_level) {
    levels_[old_level].erase({old_stamp, e});
    levels_[new_level].insert({new_stamp, e});
  }

 private:
  std::vector<std::set<std::pair<std::int64_t, ElementId>>> levels_;
};

class MoveHalf final : public Algorithm {
 public:
  explicit MoveHalf(TreeState tree)
      : Algorithm(std::move(tree)), ranks_(tree_), lru_(tree_, ranks_) {}

  std::string_view name() const override { return "move-half"; }

 protected:
  RoundCost do_serve(ElementId e) override;

 private:
  RankTracker ranks_;
  LevelLru lru_;
};

class MaxPush final : public Algorithm {
 public:
  explicit MaxPush(TreeState tree)
      : Algorithm(std::move(tree)), ranks_(tree_), lru_(tree_, ranks_) {}

  std::string_view name() const override { return "max-push"; }
  const RankTracker& ranks() const { return ranks_; }

 protected:
  RoundCost do_serve(ElementId e) override;

 private:
  RankTracker ranks_;
  LevelLru lru_;
};

class StaticOpt final : public Algorithm {
 public:
  explicit StaticOpt(TreeState tree) : Algorithm(std::move(tree)) {}

  std::string_view name() const override { return "static-opt"; }

  // Re-places elements by decreasing request frequency in BFS order,
  // breaking ties by smaller element id.
  void prepare(std::span<const ElementId> requests) override;

 protected:
  RoundCost do_serve(ElementId e) override {
    return {tree_.access(e, ledger_), 0};
  }
};

class StaticOblivious final : public Algorithm {
 public:
  explicit StaticOblivious(TreeState tree) : Algorithm(std::move(tree)) {}

  std::string_view name() const override { return "static-oblivious"; }

 protected:
  RoundCost do_serve(ElementId e) override {
    return {tree_.access(e, ledger_), 0};
  }
};

inline constexpr std::string_view kAlgorithmNames[] = {
    "rotor-push", "random-push", "move-half",
    "max-push",   "static-opt",  "static-oblivious"};

std::unique_ptr<Algorithm> make_algorithm(std::string_view name, TreeState initial,
                                          std::uint64_t seed);

}  // namespace rotor

#endif
