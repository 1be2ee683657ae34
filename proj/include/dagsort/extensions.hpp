#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "dag.hpp"
#include "oracle.hpp"
#include "sorter.hpp"

namespace dagsort {

using BigCount = boost::multiprecision::cpp_int;

// Exact vertex limit for the subset dynamic programs.
inline constexpr std::size_t max_exact_vertices = 25;

struct ExtensionCount {
  BigCount value;
  double log2 = 0.0;
};

// log2 of a positive big integer from its top 53 bits.
inline double log2_of(const BigCount &x) {
  if (x <= 0)
    return -INFINITY;
  const auto top = static_cast<long>(boost::multiprecision::msb(x));
  if (top < 53)
    return std::log2(x.convert_to<double>());
  const BigCount head = x >> (top - 52);
  return std::log2(head.convert_to<double>()) + static_cast<double>(top - 52);
}

namespace detail {

// Counts stay below 25! < 2^84, so 128-bit words are exact inside the tables.
using Word = unsigned __int128;
using Mask = std::uint32_t;

inline BigCount to_big(Word w) {
  BigCount hi = static_cast<std::uint64_t>(w >> 64);
  return (hi << 64) | BigCount(static_cast<std::uint64_t>(w));
}

inline void require_exact_size(const Dag &dag) {
  if (dag.vertex_count() > max_exact_vertices)
    throw SizeGuardError("exact counting supports at most " +
                         std::to_string(max_exact_vertices) + " vertices, got " +
                         std::to_string(dag.vertex_count()));
}

inline std::vector<Mask> predecessor_masks(const Dag &dag) {
  std::vector<Mask> pred(dag.vertex_count(), 0);
  for (const auto &[u, v] : dag.arcs())
    pred[v] |= Mask{1} << u;
  return pred;
}

} // namespace detail

// Number of topological orders, by dynamic programming over the down-sets
// reachable from the empty set, one size layer at a time.
inline ExtensionCount count_extensions(const Dag &dag) {
  using namespace detail;
  require_exact_size(dag);
  (void)kahn_order(dag); // throws CycleError

  const auto n = static_cast<VertexId>(dag.vertex_count());
  const auto pred = predecessor_masks(dag);
  std::unordered_map<Mask, Word> layer{{0, 1}};
  std::unordered_map<Mask, Word> next;
  for (VertexId step = 0; step < n; ++step) {
    next.clear();
    next.reserve(layer.size() * 2);
    for (const auto &[done, ways] : layer)
      for (VertexId v = 0; v < n; ++v) {
        const Mask bit = Mask{1} << v;
        if (!(done & bit) && (pred[v] & ~done) == 0)
          next[done | bit] += ways;
      }
    layer.swap(next);
  }

  ExtensionCount result;
  result.value = to_big(layer.begin()->second);
  result.log2 = log2_of(result.value);
  return result;
}

// Memo table f(S) = number of topological orders of the subgraph induced by
// the remaining set S, for every S reachable from the full vertex set by
// deleting sources. Supports exact uniform sampling of topological orders.
class ExtensionTable {
public:
  explicit ExtensionTable(const Dag &dag) {
    detail::require_exact_size(dag);
    (void)kahn_order(dag);
    n_ = static_cast<VertexId>(dag.vertex_count());
    pred_ = detail::predecessor_masks(dag);
    full_ = (detail::Mask{1} << n_) - 1;
    fill(full_);
  }

  BigCount total() const { return detail::to_big(memo_.at(full_)); }
  std::size_t state_count() const noexcept { return memo_.size(); }

  // Builds the order front to back; a current source v of the remaining set
  // S is chosen with probability f(S \ {v}) / f(S).
  template <class Rng> std::vector<VertexId> sample(Rng &rng) const {
    std::vector<VertexId> order;
    order.reserve(n_);
    detail::Mask rest = full_;
    while (rest) {
      detail::Word pick = uniform_below(memo_.at(rest), rng);
      for (VertexId v = 0; v < n_; ++v) {
        const detail::Mask bit = detail::Mask{1} << v;
        if (!(rest & bit) || (pred_[v] & rest))
          continue;
        const detail::Word ways = memo_.at(rest & ~bit);
        if (pick < ways) {
          order.push_back(v);
          rest &= ~bit;
          break;
        }
        pick -= ways;
      }
    }
    return order;
  }

private:
  detail::Word fill(detail::Mask rest) {
    if (rest == 0)
      return 1;
    if (auto it = memo_.find(rest); it != memo_.end())
      return it->second;
    detail::Word total = 0;
    for (VertexId v = 0; v < n_; ++v) {
      const detail::Mask bit = detail::Mask{1} << v;
      if ((rest & bit) && !(pred_[v] & rest))
        total += fill(rest & ~bit);
    }
    memo_.emplace(rest, total);
    return total;
  }

  template <class Rng>
  static detail::Word uniform_below(detail::Word bound, Rng &rng) {
    std::uniform_int_distribution<std::uint64_t> word;
    const int bits = 128 - (static_cast<std::uint64_t>(bound >> 64)
                                ? std::countl_zero(static_cast<std::uint64_t>(bound >> 64))
                                : 64 + std::countl_zero(static_cast<std::uint64_t>(bound)));
    const detail::Word mask =
        bits >= 128 ? ~detail::Word{0} : (detail::Word{1} << bits) - 1;
    for (;;) {
      const detail::Word high = word(rng);
      const detail::Word r = ((high << 64) | word(rng)) & mask;
      if (r < bound)
        return r;
    }
  }

  VertexId n_ = 0;
  detail::Mask full_ = 0;
  std::vector<detail::Mask> pred_;
  std::unordered_map<detail::Mask, detail::Word> memo_{{0, 1}};
};

inline std::vector<VertexId> sample_extension(const Dag &dag,
                                              std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return ExtensionTable(dag).sample(rng);
}

struct LogTEstimate {
  double estimate = 0.0;
  std::uint64_t comparisons = 0;
};

// Sorts one uniformly sampled topological order with topological heapsort
// with insertion; the comparison count is a constant-factor estimate of
// log2 T with high probability.
inline LogTEstimate estimate_log_T(const Dag &dag, std::uint64_t seed) {
  const auto order = sample_extension(dag, seed);
  ComparisonProvider provider = make_provider(dag, order);
  const SortRun run = topological_heapsort_with_insertion(dag, provider);
  return {static_cast<double>(run.comparisons), run.comparisons};
}

} // namespace dagsort
