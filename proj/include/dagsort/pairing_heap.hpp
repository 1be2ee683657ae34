#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "oracle.hpp"

namespace dagsort {

// Pairing heap over vertex ids with two-pass delete-min. Keys are the
// vertices themselves and are only ever compared through the oracle passed
// to each operation, so every comparison is counted.
//
// Nodes live in an arena indexed by vertex id (capacity fixed at
// construction). No decrease-key.
class PairingHeap {
public:
  explicit PairingHeap(std::size_t capacity)
      : child_(capacity, nil), sibling_(capacity, nil) {}

  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }
  std::size_t capacity() const noexcept { return child_.size(); }

  // One link with the root: at most one comparison.
  template <ComparisonOracle Oracle>
  void insert(VertexId v, Oracle &oracle) {
    child_[v] = nil;
    sibling_[v] = nil;
    root_ = root_ == nil ? v : link(root_, v, oracle);
    ++size_;
  }

  template <ComparisonOracle Oracle>
  VertexId delete_min(Oracle &oracle) {
    if (root_ == nil)
      throw std::out_of_range("delete_min on an empty heap");
    const VertexId min = root_;
    root_ = combine_children(child_[min], oracle);
    child_[min] = nil;
    --size_;
    return min;
  }

private:
  static constexpr VertexId nil = static_cast<VertexId>(-1);

  // Makes the larger root the leftmost child of the smaller one.
  template <ComparisonOracle Oracle>
  VertexId link(VertexId a, VertexId b, Oracle &oracle) {
    if (oracle.less(b, a))
      std::swap(a, b);
    sibling_[b] = child_[a];
    child_[a] = b;
    sibling_[a] = nil;
    return a;
  }

  template <ComparisonOracle Oracle>
  VertexId combine_children(VertexId first, Oracle &oracle) {
    if (first == nil)
      return nil;

    // Left-to-right: link children in pairs.
    pairs_.clear();
    VertexId cur = first;
    while (cur != nil) {
      VertexId next = sibling_[cur];
      if (next == nil) {
        sibling_[cur] = nil;
        pairs_.push_back(cur);
        break;
      }
      VertexId after = sibling_[next];
      pairs_.push_back(link(cur, next, oracle));
      cur = after;
    }

    // Right-to-left: fold the pair winners into one tree.
    VertexId result = pairs_.back();
    for (std::size_t i = pairs_.size() - 1; i-- > 0;)
      result = link(pairs_[i], result, oracle);
    return result;
  }

  std::vector<VertexId> child_;
  std::vector<VertexId> sibling_;
  std::vector<VertexId> pairs_;
  VertexId root_ = nil;
  std::size_t size_ = 0;
};

} // namespace dagsort
