#include "rotor/tree.hpp"

#include <numeric>
#include <ostream>

#include "rotor/rng.hpp"

namespace rotor {

TreeState::TreeState(std::uint32_t depth)
    : depth_(depth),
      elem_at_((1u << (depth + 1)) - 1),
      node_pos_(elem_at_.size()),
      mark_epoch_(elem_at_.size(), 0) {
  std::iota(elem_at_.begin(), elem_at_.end(), 0u);
  std::iota(node_pos_.begin(), node_pos_.end(), 0u);
}

TreeState TreeState::from_placement(std::uint32_t depth,
                                    std::vector<ElementId> placement) {
  TreeState tree(depth);
  if (placement.size() != tree.elem_at_.size())
    throw std::invalid_argument("placement size does not match node count");
  std::vector<bool> seen(placement.size(), false);
  for (std::uint32_t pos = 0; pos < placement.size(); ++pos) {
    ElementId e = placement[pos];
    if (e >= placement.size() || seen[e])
      throw std::invalid_argument("placement is not a bijection");
    seen[e] = true;
    tree.node_pos_[e] = pos;
  }
  tree.elem_at_ = std::move(placement);
  return tree;
}

std::uint64_t TreeState::access(ElementId e, CostLedger& ledger) {
  NodeId v = node_of(e);
  std::uint64_t cost = v.level + 1;
  ledger.add_access(cost);
  mark_path(v);
  return cost;
}

void TreeState::mark_path(NodeId v) {
  std::uint32_t pos = v.bfs();
  while (true) {
    mark_epoch_[pos] = epoch_;
    if (pos == 0) break;
    pos = (pos - 1) / 2;
  }
}

void TreeState::require_adjacent(NodeId u, NodeId v) const {
  bool ok = (u.level + 1 == v.level && v.parent() == u) ||
            (v.level + 1 == u.level && u.parent() == v);
  if (!ok) throw NotAdjacent("swap requires a parent/child node pair");
}

void TreeState::exchange(NodeId u, NodeId v, CostLedger& ledger) {
  std::uint32_t pu = u.bfs(), pv = v.bfs();
  ElementId eu = elem_at_[pu], ev = elem_at_[pv];
  elem_at_[pu] = ev;
  elem_at_[pv] = eu;
  node_pos_[eu] = pv;
  node_pos_[ev] = pu;
  ledger.add_swap();
}

void TreeState::swap(NodeId u, NodeId v, CostLedger& ledger) {
  require_adjacent(u, v);
  if (!marked(u) && !marked(v))
    throw IllegalUnmarkedSwap("swap of two unmarked nodes");
  exchange(u, v, ledger);
  mark_epoch_[u.bfs()] = epoch_;
  mark_epoch_[v.bfs()] = epoch_;
}

void TreeState::offline_swap(NodeId u, NodeId v, CostLedger& ledger) {
  require_adjacent(u, v);
  exchange(u, v, ledger);
}

void TreeState::write_snapshot(std::ostream& out) const {
  for (std::uint32_t pos = 0; pos < node_count(); ++pos) {
    NodeId v = NodeId::from_bfs(pos);
    out << v.level << ',' << v.index << ',' << elem_at_[pos] << ','
        << (marked(v) ? 1 : 0) << '\n';
  }
}

TreeState build_tree(std::uint32_t depth, Layout layout, std::uint64_t seed) {
  if (layout == Layout::UniformRandom) {
    // Fisher-Yates over the identity placement.
    Rng rng(seed);
    std::uint32_t n = (1u << (depth + 1)) - 1;
    std::vector<ElementId> perm(n);
    std::iota(perm.begin(), perm.end(), 0u);
    for (std::uint32_t i = n - 1; i > 0; --i) {
      std::uint32_t j = static_cast<std::uint32_t>(rng.next_below(i + 1));
      std::swap(perm[i], perm[j]);
    }
    return TreeState::from_placement(depth, std::move(perm));
  }
  return TreeState(depth);
}

}  // namespace rotor
