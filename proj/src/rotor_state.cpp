#include "rotor/rotor_state.hpp"

#include <ostream>

namespace rotor {

GlobalPath RotorState::global_path() const {
  GlobalPath path;
  path.reserve(depth_ + 1);
  NodeId v{0, 0};
  path.push_back(v);
  for (std::uint32_t d = 0; d < depth_; ++d) {
    v = v.child(ptr_[v.bfs()]);
    path.push_back(v);
  }
  return path;
}

NodeId RotorState::path_node(std::uint32_t level) const {
  if (level > depth_) throw LevelOutOfRange("path level exceeds tree depth");
  NodeId v{0, 0};
  for (std::uint32_t d = 0; d < level; ++d) v = v.child(ptr_[v.bfs()]);
  return v;
}

void RotorState::flip(std::uint32_t d) {
  if (d > depth_) throw LevelOutOfRange("flip level exceeds tree depth");
  NodeId v{0, 0};
  for (std::uint32_t i = 0; i < d; ++i) {
    std::uint32_t pos = v.bfs();
    v = v.child(ptr_[pos]);
    ptr_[pos] ^= 1;
  }
}

void RotorState::write_snapshot(std::ostream& out) const {
  for (std::uint32_t pos = 0; pos < ptr_.size(); ++pos) {
    NodeId v = NodeId::from_bfs(pos);
    out << v.level << ',' << v.index << ',' << (ptr_[pos] ? 'R' : 'L') << '\n';
  }
}

std::uint32_t flip_rank(const RotorState& rotor, NodeId u) {
  // Walking root -> u, a step off the pointed-to child contributes the
  // current stride 2^level; on-path steps contribute nothing.
  std::uint32_t rank = 0;
  NodeId w{0, 0};
  for (std::uint32_t d = 0; d < u.level; ++d) {
    std::uint32_t branch = (u.index >> (u.level - d - 1)) & 1u;
    if (branch != static_cast<std::uint32_t>(rotor.pointer(w)))
      rank += 1u << d;
    w = w.child(branch);
  }
  return rank;
}

std::uint32_t flip_rank_sim(const RotorState& rotor, NodeId u) {
  RotorState scratch = rotor;
  std::uint32_t count = 0;
  while (!(scratch.path_node(u.level) == u)) {
    scratch.flip(u.level);
    ++count;
  }
  return count;
}

// Both table builders propagate the rank recurrence one level at a time:
// a child inherits the parent rank plus 2^level(parent) when the pointer
// aims at the sibling.

std::vector<std::uint32_t> flip_rank_table_serial(const RotorState& rotor) {
  std::uint32_t n = (1u << (rotor.depth() + 1)) - 1;
  std::vector<std::uint32_t> table(n, 0);
  std::uint32_t internal = (1u << rotor.depth()) - 1;
  for (std::uint32_t pos = 0; pos < internal; ++pos) {
    std::uint32_t level = std::bit_width(pos + 1) - 1;
    std::uint32_t ptr = static_cast<std::uint32_t>(rotor.pointer(NodeId::from_bfs(pos)));
    table[2 * pos + 1] = table[pos] + (ptr == 0 ? 0 : (1u << level));
    table[2 * pos + 2] = table[pos] + (ptr == 1 ? 0 : (1u << level));
  }
  return table;
}

std::vector<std::uint32_t> flip_rank_table(const RotorState& rotor) {
  std::uint32_t n = (1u << (rotor.depth() + 1)) - 1;
  std::vector<std::uint32_t> table(n, 0);
  std::uint32_t* data = table.data();
  for (std::uint32_t level = 0; level < rotor.depth(); ++level) {
    std::int64_t first = (1u << level) - 1;
    std::int64_t last = (1u << (level + 1)) - 1;
    std::uint32_t stride = 1u << level;
#pragma omp parallel for schedule(static) if (last - first > 4096)
    for (std::int64_t pos = first; pos < last; ++pos) {
      std::uint32_t ptr =
          static_cast<std::uint32_t>(rotor.pointer(NodeId::from_bfs(static_cast<std::uint32_t>(pos))));
      data[2 * pos + 1] = data[pos] + (ptr == 0 ? 0 : stride);
      data[2 * pos + 2] = data[pos] + (ptr == 1 ? 0 : stride);
    }
  }
  return table;
}

}  // namespace rotor
