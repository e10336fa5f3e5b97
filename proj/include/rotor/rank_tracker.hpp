#ifndef ROTOR_RANK_TRACKER_HPP
#define ROTOR_RANK_TRACKER_HPP

#include <cstdint>
#include <vector>

#include "rotor/tree.hpp"

namespace rotor {

// Recency order over elements. Accessed elements carry a positive stamp in
// access order; never-accessed elements sort below all of them, with a
// larger initial BFS position counting as less recent. Stamps are distinct,
// so the order is total.
class RankTracker {
 public:
  explicit RankTracker(const TreeState& initial)
      : stamp_(initial.node_count()) {
    for (std::uint32_t pos = 0; pos < initial.node_count(); ++pos)
      stamp_[initial.element_at(NodeId::from_bfs(pos))] = -1 - static_cast<std::int64_t>(pos);
  }

  void touch(ElementId e) { stamp_[e] = ++clock_; }

  std::int64_t stamp(ElementId e) const { return stamp_[e]; }

  bool less_recent(ElementId a, ElementId b) const { return stamp_[a] < stamp_[b]; }

  // Number of distinct elements accessed since e's previous access,
  // inclusive of e. O(n); used by checks, not by the serving hot path.
  std::uint64_t rank(ElementId e) const {
    std::uint64_t more_recent = 0;
    for (std::int64_t s : stamp_)
      if (s > stamp_[e]) ++more_recent;
    return more_recent + 1;
  }

  std::uint32_t universe() const { return static_cast<std::uint32_t>(stamp_.size()); }

 private:
  std::vector<std::int64_t> stamp_;
  std::int64_t clock_ = 0;
};

}  // namespace rotor

#endif
