#ifndef ROTOR_TREE_HPP
#define ROTOR_TREE_HPP

#include <bit>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <vector>

namespace rotor {

using ElementId = std::uint32_t;

// Position in the complete binary tree. Levels are numbered from 0 (the
// root); index is the left-to-right position within a level. BFS numbering
// is 2^level - 1 + index.
struct NodeId {
  std::uint32_t level = 0;
  std::uint32_t index = 0;

  static NodeId from_bfs(std::uint32_t pos) {
    std::uint32_t level = std::bit_width(pos + 1) - 1;
    return {level, pos + 1 - (1u << level)};
  }

  std::uint32_t bfs() const { return (1u << level) - 1 + index; }
  NodeId parent() const { return {level - 1, index / 2}; }
  NodeId child(std::uint32_t side) const { return {level + 1, 2 * index + side}; }

  friend bool operator==(const NodeId&, const NodeId&) = default;
};

struct NotAdjacent : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Raised when a swap touches no marked node. Shipped online algorithms must
// never trigger this; reference (offline) trees use offline_swap instead.
struct IllegalUnmarkedSwap : std::logic_error {
  using std::logic_error::logic_error;
};

// Access and adjustment units, with a per-request breakdown.
class CostLedger {
 public:
  struct Entry {
    std::uint64_t access = 0;
    std::uint64_t swaps = 0;
  };

  void begin_request() { log_.emplace_back(); }

  void add_access(std::uint64_t units) {
    access_cost_ += units;
    if (log_.empty()) log_.emplace_back();
    log_.back().access += units;
  }

  void add_swap() {
    swap_cost_ += 1;
    if (log_.empty()) log_.emplace_back();
    log_.back().swaps += 1;
  }

  std::uint64_t access_cost() const { return access_cost_; }
  std::uint64_t swap_cost() const { return swap_cost_; }
  std::uint64_t total() const { return access_cost_ + swap_cost_; }
  const std::vector<Entry>& entries() const { return log_; }

 private:
  std::uint64_t access_cost_ = 0;
  std::uint64_t swap_cost_ = 0;
  std::vector<Entry> log_;
};

enum class Layout { Identity, UniformRandom };

// Complete binary tree of 2^(depth+1) - 1 nodes holding a bijection between
// elements and nodes, plus the per-round mark bits that gate online swaps.
class TreeState {
 public:
  explicit TreeState(std::uint32_t depth);

  // placement[pos] = element at BFS position pos; must be a bijection.
  static TreeState from_placement(std::uint32_t depth, std::vector<ElementId> placement);

  std::uint32_t depth() const { return depth_; }
  std::uint32_t node_count() const { return static_cast<std::uint32_t>(elem_at_.size()); }

  ElementId element_at(NodeId v) const { return elem_at_[v.bfs()]; }
  NodeId node_of(ElementId e) const { return NodeId::from_bfs(node_pos_[e]); }
  std::uint32_t level_of(ElementId e) const {
    return std::bit_width(node_pos_[e] + 1) - 1;
  }

  // Clears all marks. Idempotent; does not touch the placement.
  void begin_round() { ++epoch_; }

  // Pays level+1, marks the root-to-node path, returns the cost paid.
  std::uint64_t access(ElementId e, CostLedger& ledger);

  // Marks a root-to-node path without charging. Algorithms use this for
  // auxiliary path touches that the cost model does not bill.
  void mark_path(NodeId v);

  bool marked(NodeId v) const { return mark_epoch_[v.bfs()] == epoch_; }

  // Exchanges the elements at a parent/child pair under the marked-swap
  // rule; marks both nodes afterwards.
  void swap(NodeId u, NodeId v, CostLedger& ledger);

  // Adjacency-checked swap without the mark rule; reference trees only.
  void offline_swap(NodeId u, NodeId v, CostLedger& ledger);

  void write_snapshot(std::ostream& out) const;

  friend bool operator==(const TreeState& a, const TreeState& b) {
    return a.depth_ == b.depth_ && a.elem_at_ == b.elem_at_;
  }

 private:
  void require_adjacent(NodeId u, NodeId v) const;
  void exchange(NodeId u, NodeId v, CostLedger& ledger);

  std::uint32_t depth_;
  std::vector<ElementId> elem_at_;      // by BFS position
  std::vector<std::uint32_t> node_pos_; // element -> BFS position
  std::vector<std::uint64_t> mark_epoch_;
  std::uint64_t epoch_ = 1;
};

TreeState build_tree(std::uint32_t depth, Layout layout, std::uint64_t seed = 0);

}  // namespace rotor

#endif
