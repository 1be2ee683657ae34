#pragma once

#include <concepts>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dag.hpp"

namespace dagsort {

// Anything that answers "is u smaller than v?" for vertices.
template <class P>
concept ComparisonOracle = requires(P &p, VertexId u, VertexId v) {
  { p.less(u, v) } -> std::convertible_to<bool>;
};

// The unknown total order: rank(v) == k means v is the (k+1)-st smallest.
class HiddenOrder {
public:
  HiddenOrder() = default;

  // `ascending` lists the vertices from smallest to largest.
  explicit HiddenOrder(std::span<const VertexId> ascending)
      : order_(ascending.begin(), ascending.end()), rank_(ascending.size()) {
    require_permutation(ascending.size(), ascending);
    for (std::size_t i = 0; i < order_.size(); ++i)
      rank_[order_[i]] = i;
  }

  std::size_t size() const noexcept { return order_.size(); }
  std::size_t rank(VertexId v) const { return rank_.at(v); }
  const std::vector<VertexId> &ascending() const noexcept { return order_; }

private:
  std::vector<VertexId> order_;
  std::vector<std::size_t> rank_;
};

// The single gateway for vertex comparisons. Every answer costs one unit of
// `count()`; nothing else changes the counter and the ranks are not exposed.
class ComparisonProvider {
public:
  explicit ComparisonProvider(HiddenOrder hidden) : hidden_(std::move(hidden)) {}

  ComparisonProvider(const ComparisonProvider &) = delete;
  ComparisonProvider &operator=(const ComparisonProvider &) = delete;
  ComparisonProvider(ComparisonProvider &&) = default;
  ComparisonProvider &operator=(ComparisonProvider &&) = default;

  bool less(VertexId u, VertexId v) {
    if (u == v)
      throw std::invalid_argument("vertex " + std::to_string(u) +
                                  " compared with itself");
    ++count_;
    return hidden_.rank(u) < hidden_.rank(v);
  }

  std::uint64_t count() const noexcept { return count_; }
  std::size_t size() const noexcept { return hidden_.size(); }

private:
  HiddenOrder hidden_;
  std::uint64_t count_ = 0;
};

// Throws InconsistentOrderError when `ascending` violates an arc of `dag`,
// std::invalid_argument when it is not a permutation.
inline ComparisonProvider make_provider(const Dag &dag,
                                        std::span<const VertexId> ascending) {
  if (!is_topological_order(dag, ascending))
    throw InconsistentOrderError(
        "hidden order is not a topological order of the graph");
  return ComparisonProvider(HiddenOrder(ascending));
}

} // namespace dagsort
