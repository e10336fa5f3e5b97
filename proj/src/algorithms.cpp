#include "rotor/algorithms.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace rotor {

namespace {

std::vector<NodeId> path_from_root(NodeId v) {
  std::vector<NodeId> path(v.level + 1);
  for (std::uint32_t d = v.level; ; --d) {
    path[d] = v;
    if (d == 0) break;
    v = v.parent();
  }
  return path;
}

// a .. LCA .. b
std::vector<NodeId> tree_path(NodeId a, NodeId b) {
  std::vector<NodeId> up, down;
  while (a.level > b.level) {
    up.push_back(a);
    a = a.parent();
  }
  while (b.level > a.level) {
    down.push_back(b);
    b = b.parent();
  }
  while (!(a == b)) {
    up.push_back(a);
    a = a.parent();
    down.push_back(b);
    b = b.parent();
  }
  up.push_back(a);
  up.insert(up.end(), down.rbegin(), down.rend());
  return up;
}

void enforce_round_bound(RoundCost cost, std::uint32_t level) {
  std::uint64_t bound = level == 0 ? 1 : 4ull * level;
  if (cost.total() > bound)
    throw std::logic_error("push-down round cost " + std::to_string(cost.total()) +
                           " exceeds bound " + std::to_string(bound));
}

}  // namespace

void augmented_push_down(TreeState& tree, NodeId u, NodeId v, CostLedger& ledger) {
  if (u.level != v.level)
    throw LevelMismatch("push-down endpoints must share a level");
  std::uint32_t d = u.level;
  if (d == 0) return;

  tree.mark_path(v);
  std::vector<NodeId> vpath = path_from_root(v);
  for (std::uint32_t i = d; i > 0; --i) tree.swap(vpath[i - 1], vpath[i], ledger);

  if (u == v) return;
  std::vector<NodeId> upath = path_from_root(u);
  for (std::uint32_t i = 0; i < d; ++i) tree.swap(upath[i], upath[i + 1], ledger);
  for (std::uint32_t i = d - 1; i > 0; --i) tree.swap(upath[i - 1], upath[i], ledger);
}

void transpose_along_path(TreeState& tree, NodeId a, NodeId b, CostLedger& ledger) {
  if (a == b) return;
  std::vector<NodeId> path = tree_path(a, b);
  std::size_t k = path.size() - 1;
  for (std::size_t i = 0; i < k; ++i) tree.swap(path[i], path[i + 1], ledger);
  for (std::size_t i = k - 1; i > 0; --i) tree.swap(path[i - 1], path[i], ledger);
}

RoundCost rotor_push_round(TreeState& tree, RotorState& rotor, ElementId e,
                           CostLedger& ledger) {
  NodeId u = tree.node_of(e);
  std::uint32_t d = u.level;
  std::uint64_t swaps_before = ledger.swap_cost();
  std::uint64_t access = tree.access(e, ledger);
  augmented_push_down(tree, u, rotor.path_node(d), ledger);
  rotor.flip(d);
  RoundCost cost{access, ledger.swap_cost() - swaps_before};
  enforce_round_bound(cost, d);
  return cost;
}

RoundCost random_push_round(TreeState& tree, Rng& rng, ElementId e,
                            CostLedger& ledger) {
  NodeId u = tree.node_of(e);
  std::uint32_t d = u.level;
  std::uint64_t swaps_before = ledger.swap_cost();
  std::uint64_t access = tree.access(e, ledger);
  if (d > 0) {
    NodeId v{d, static_cast<std::uint32_t>(rng.next_bits(d))};
    augmented_push_down(tree, u, v, ledger);
  }
  RoundCost cost{access, ledger.swap_cost() - swaps_before};
  enforce_round_bound(cost, d);
  return cost;
}

LevelLru::LevelLru(const TreeState& tree, const RankTracker& ranks)
    : levels_(tree.depth() + 1) {
  for (std::uint32_t pos = 0; pos < tree.node_count(); ++pos) {
    NodeId v = NodeId::from_bfs(pos);
    ElementId e = tree.element_at(v);
    levels_[v.level].insert({ranks.stamp(e), e});
  }
}

RoundCost MoveHalf::do_serve(ElementId e) {
  NodeId u = tree_.node_of(e);
  std::uint32_t d = u.level;
  std::uint32_t half = d / 2;
  ElementId target = lru_.least_recent(half);  // pre-access recency

  std::uint64_t swaps_before = ledger_.swap_cost();
  std::uint64_t access = tree_.access(e, ledger_);
  std::int64_t old_stamp = ranks_.stamp(e);
  ranks_.touch(e);

  if (target == e) {  // d == 0: the root element is its own target
    lru_.update(e, old_stamp, d, ranks_.stamp(e), d);
    return {access, 0};
  }

  NodeId v = tree_.node_of(target);
  transpose_along_path(tree_, u, v, ledger_);
  lru_.update(e, old_stamp, d, ranks_.stamp(e), half);
  lru_.update(target, ranks_.stamp(target), half, ranks_.stamp(target), d);
  return {access, ledger_.swap_cost() - swaps_before};
}

RoundCost MaxPush::do_serve(ElementId e) {
  NodeId staging = tree_.node_of(e);
  std::uint32_t k = staging.level;

  // The whole cycle is fixed on the pre-access state: per level j, the
  // least recently used element and the node it occupies.
  std::vector<ElementId> lru_elem(k + 1, 0);
  std::vector<NodeId> target(k + 1);
  for (std::uint32_t j = 1; j <= k; ++j) {
    lru_elem[j] = lru_.least_recent(j);
    target[j] = tree_.node_of(lru_elem[j]);
  }
  ElementId root_elem = tree_.element_at({0, 0});

  std::uint64_t swaps_before = ledger_.swap_cost();
  std::uint64_t access = tree_.access(e, ledger_);
  std::int64_t old_stamp = ranks_.stamp(e);
  ranks_.touch(e);

  if (k == 0) {
    lru_.update(e, old_stamp, 0, ranks_.stamp(e), 0);
    return {access, 0};
  }

  // Movers cascade through the vacated staging node: each transposition
  // lands one element on its target and extracts the next mover.
  transpose_along_path(tree_, staging, {0, 0}, ledger_);
  for (std::uint32_t j = 1; j <= k; ++j) {
    if (target[j] == staging) continue;  // only when e is its own level's LRU
    transpose_along_path(tree_, staging, target[j], ledger_);
  }

  lru_.update(e, old_stamp, k, ranks_.stamp(e), 0);
  lru_.update(root_elem, ranks_.stamp(root_elem), 0, ranks_.stamp(root_elem), 1);
  for (std::uint32_t j = 1; j + 1 <= k; ++j)
    lru_.update(lru_elem[j], ranks_.stamp(lru_elem[j]), j, ranks_.stamp(lru_elem[j]), j + 1);
  // lru_elem[k] keeps its level and stamp; no update needed.

  return {access, ledger_.swap_cost() - swaps_before};
}

void StaticOpt::prepare(std::span<const ElementId> requests) {
  std::vector<std::uint64_t> count(tree_.node_count(), 0);
  for (ElementId e : requests) ++count[e];
  std::vector<ElementId> order(tree_.node_count());
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(), [&](ElementId a, ElementId b) {
    return count[a] != count[b] ? count[a] > count[b] : a < b;
  });
  tree_ = TreeState::from_placement(tree_.depth(), std::move(order));
}

std::unique_ptr<Algorithm> make_algorithm(std::string_view name, TreeState initial,
                                          std::uint64_t seed) {
  if (name == "rotor-push") return std::make_unique<RotorPush>(std::move(initial));
  if (name == "random-push") return std::make_unique<RandomPush>(std::move(initial), seed);
  if (name == "move-half") return std::make_unique<MoveHalf>(std::move(initial));
  if (name == "max-push") return std::make_unique<MaxPush>(std::move(initial));
  if (name == "static-opt") return std::make_unique<StaticOpt>(std::move(initial));
  if (name == "static-oblivious")
    return std::make_unique<StaticOblivious>(std::move(initial));
  throw std::invalid_argument("unknown algorithm: " + std::string(name));
}

}  // namespace rotor
