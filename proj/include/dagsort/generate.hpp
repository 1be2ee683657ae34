#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dag.hpp"

namespace dagsort {

// A graph together with a hidden order consistent with it.
struct Instance {
  Dag dag;
  std::vector<VertexId> order;
};

enum class GraphKind { chain, antichain, random, layered };

inline GraphKind parse_graph_kind(std::string_view s) {
  if (s == "chain")
    return GraphKind::chain;
  if (s == "antichain")
    return GraphKind::antichain;
  if (s == "random")
    return GraphKind::random;
  if (s == "layered")
    return GraphKind::layered;
  throw std::invalid_argument("unknown graph kind '" + std::string(s) + "'");
}

inline std::string_view to_string(GraphKind k) {
  switch (k) {
  case GraphKind::chain:
    return "chain";
  case GraphKind::antichain:
    return "antichain";
  case GraphKind::random:
    return "random";
  case GraphKind::layered:
    return "layered";
  }
  return "?";
}

namespace detail {

inline std::vector<VertexId> shuffled_ids(std::size_t n, std::mt19937_64 &rng) {
  std::vector<VertexId> ids(n);
  std::iota(ids.begin(), ids.end(), VertexId{0});
  std::shuffle(ids.begin(), ids.end(), rng);
  return ids;
}

inline void require_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("edge probability must be in [0, 1]");
}

} // namespace detail

// 0 -> 1 -> ... -> n-1, hidden order 0..n-1.
inline Instance make_chain(std::size_t n) {
  std::vector<Arc> arcs;
  for (VertexId v = 0; v + 1 < n; ++v)
    arcs.emplace_back(v, v + 1);
  std::vector<VertexId> order(n);
  std::iota(order.begin(), order.end(), VertexId{0});
  return {Dag(n, std::move(arcs)), std::move(order)};
}

// No arcs; the hidden order is a seeded permutation.
inline Instance make_antichain(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return {Dag(n, {}), detail::shuffled_ids(n, rng)};
}

// Plants a random hidden order, then keeps each forward pair independently
// with probability p. Pairs are skipped geometrically, so the cost is
// O(n + m) rather than O(n^2).
inline Instance make_random(std::size_t n, double p, std::uint64_t seed) {
  detail::require_probability(p);
  std::mt19937_64 rng(seed);
  auto order = detail::shuffled_ids(n, rng);
  std::vector<Arc> arcs;
  if (n >= 2 && p > 0.0) {
    std::geometric_distribution<std::uint64_t> gap(std::min(p, 1.0));
    std::uint64_t i = 0, j = 0; // current pair is (i, j), i < j
    for (;;) {
      j += (p >= 1.0 ? 0 : gap(rng)) + 1;
      while (i + 1 < n && j >= n) {
        j = j - n + i + 2;
        ++i;
      }
      if (i + 1 >= n)
        break;
      arcs.emplace_back(order[i], order[j]);
    }
  }
  return {Dag(n, std::move(arcs)), std::move(order)};
}

// Splits a random hidden order into `layer_count` contiguous groups and joins
// each vertex to each vertex of the next group with probability p.
inline Instance make_layered(std::size_t n, std::size_t layer_count, double p,
                             std::uint64_t seed) {
  detail::require_probability(p);
  if (layer_count == 0)
    throw std::invalid_argument("layer count must be positive");
  std::mt19937_64 rng(seed);
  auto order = detail::shuffled_ids(n, rng);
  std::vector<std::size_t> start(layer_count + 1);
  for (std::size_t l = 0; l <= layer_count; ++l)
    start[l] = l * n / layer_count;

  std::bernoulli_distribution keep(p);
  std::vector<Arc> arcs;
  for (std::size_t l = 0; l + 1 < layer_count; ++l)
    for (std::size_t a = start[l]; a < start[l + 1]; ++a)
      for (std::size_t b = start[l + 1]; b < start[l + 2]; ++b)
        if (keep(rng))
          arcs.emplace_back(order[a], order[b]);
  return {Dag(n, std::move(arcs)), std::move(order)};
}

struct GenerateParams {
  GraphKind kind = GraphKind::random;
  std::size_t n = 0;
  double p = 0.3;
  std::size_t layers = 2;
  std::uint64_t seed = 0;
};

inline Instance generate(const GenerateParams &params) {
  switch (params.kind) {
  case GraphKind::chain:
    return make_chain(params.n);
  case GraphKind::antichain:
    return make_antichain(params.n, params.seed);
  case GraphKind::random:
    return make_random(params.n, params.p, params.seed);
  case GraphKind::layered:
    return make_layered(params.n, params.layers, params.p, params.seed);
  }
  throw std::invalid_argument("unknown graph kind");
}

} // namespace dagsort
