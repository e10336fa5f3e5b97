#ifndef ROTOR_ROTOR_STATE_HPP
#define ROTOR_ROTOR_STATE_HPP

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "rotor/tree.hpp"

namespace rotor {

struct LevelOutOfRange : std::out_of_range {
  using std::out_of_range::out_of_range;
};

enum class Pointer : std::uint8_t { Left = 0, Right = 1 };

using GlobalPath = std::vector<NodeId>;

// One two-state pointer per non-leaf node, initially all pointing left.
// Following the pointers from the root yields the global path.
class RotorState {
 public:
  explicit RotorState(std::uint32_t depth)
      : depth_(depth), ptr_((1u << depth) - 1, 0) {}

  std::uint32_t depth() const { return depth_; }
  std::uint32_t pointer_count() const { return static_cast<std::uint32_t>(ptr_.size()); }

  Pointer pointer(NodeId v) const { return static_cast<Pointer>(ptr_[v.bfs()]); }
  void set_pointer(NodeId v, Pointer p) { ptr_[v.bfs()] = static_cast<std::uint8_t>(p); }

  GlobalPath global_path() const;

  // Node on the global path at the given level.
  NodeId path_node(std::uint32_t level) const;

  // Toggles the pointers at the global-path nodes strictly above level d,
  // computed on the state before any toggle. flip(0) is a no-op.
  void flip(std::uint32_t d);

  void write_snapshot(std::ostream& out) const;

  friend bool operator==(const RotorState&, const RotorState&) = default;

 private:
  std::uint32_t depth_;
  std::vector<std::uint8_t> ptr_;  // by BFS position, 0 = left, 1 = right
};

// Number of flip(level(u)) operations until u joins the global path.
// O(level) closed form via the subtree-rank recurrence.
std::uint32_t flip_rank(const RotorState& rotor, NodeId u);

// Definitional form: repeatedly flips a scratch copy and counts. Exponential
// in the level; kept as the testing oracle for flip_rank.
std::uint32_t flip_rank_sim(const RotorState& rotor, NodeId u);

// Flip ranks of every node, indexed by BFS position.
std::vector<std::uint32_t> flip_rank_table(const RotorState& rotor);
std::vector<std::uint32_t> flip_rank_table_serial(const RotorState& rotor);

}  // namespace rotor

#endif
