#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace dagsort {

using Arc = std::pair<VertexId, VertexId>;

// Directed graph on the dense vertex range [0, n). Adjacency is stored in
// compressed form in both directions. Duplicate arcs are kept and counted
// in the in-degrees; none of the algorithms here need them removed.
class Dag {
public:
  Dag() = default;

  Dag(std::size_t n, std::vector<Arc> arcs) : n_(n), arcs_(std::move(arcs)) {
    for (const auto &[u, v] : arcs_) {
      if (u >= n_ || v >= n_)
        throw DagError("arc (" + std::to_string(u) + ", " + std::to_string(v) +
                       ") has an endpoint outside [0, " + std::to_string(n_) +
                       ")");
      if (u == v)
        throw CycleError({u});
    }
    build_csr(out_offsets_, out_targets_, false);
    build_csr(in_offsets_, in_sources_, true);
  }

  std::size_t vertex_count() const noexcept { return n_; }
  std::size_t arc_count() const noexcept { return arcs_.size(); }
  const std::vector<Arc> &arcs() const noexcept { return arcs_; }

  std::span<const VertexId> successors(VertexId v) const {
    return {out_targets_.data() + out_offsets_[v],
            out_targets_.data() + out_offsets_[v + 1]};
  }

  std::span<const VertexId> predecessors(VertexId v) const {
    return {in_sources_.data() + in_offsets_[v],
            in_sources_.data() + in_offsets_[v + 1]};
  }

  std::size_t in_degree(VertexId v) const {
    return in_offsets_[v + 1] - in_offsets_[v];
  }

  std::vector<std::size_t> in_degrees() const {
    std::vector<std::size_t> deg(n_);
    for (VertexId v = 0; v < n_; ++v)
      deg[v] = in_degree(v);
    return deg;
  }

private:
  void build_csr(std::vector<std::size_t> &offsets,
                 std::vector<VertexId> &targets, bool reversed) const {
    offsets.assign(n_ + 1, 0);
    for (const auto &[u, v] : arcs_)
      ++offsets[(reversed ? v : u) + 1];
    for (std::size_t i = 0; i < n_; ++i)
      offsets[i + 1] += offsets[i];
    targets.resize(arcs_.size());
    std::vector<std::size_t> fill(offsets.begin(), offsets.end() - 1);
    for (const auto &[u, v] : arcs_) {
      if (reversed)
        targets[fill[v]++] = u;
      else
        targets[fill[u]++] = v;
    }
  }

  std::size_t n_ = 0;
  std::vector<Arc> arcs_;
  std::vector<std::size_t> out_offsets_{0};
  std::vector<VertexId> out_targets_;
  std::vector<std::size_t> in_offsets_{0};
  std::vector<VertexId> in_sources_;
};

inline Dag build_dag(std::size_t n, std::vector<Arc> arcs) {
  return Dag(n, std::move(arcs));
}

// Longest-path data: `length[v]` is the number of vertices on a longest
// path ending in v, and `vertices` is one longest path of the whole graph.
struct Path {
  std::vector<VertexId> vertices;
  std::vector<std::size_t> length;
};

// layers[i] holds the vertices whose longest incoming path has i + 1
// vertices, in ascending id order.
struct LayerPartition {
  std::vector<std::vector<VertexId>> layers;
};

namespace detail {

// Given the vertices that survived a failed source-deletion pass (each of
// which still has a surviving predecessor), walk arcs backwards from the
// smallest survivor until a vertex repeats.
inline std::vector<VertexId> find_cycle(const Dag &dag,
                                        const std::vector<bool> &alive) {
  const auto n = static_cast<VertexId>(dag.vertex_count());
  VertexId start = 0;
  while (start < n && !alive[start])
    ++start;
  if (start == n)
    return {};

  std::vector<std::size_t> seen_at(n, SIZE_MAX);
  std::vector<VertexId> walk;
  VertexId v = start;
  while (seen_at[v] == SIZE_MAX) {
    seen_at[v] = walk.size();
    walk.push_back(v);
    VertexId next = n;
    for (VertexId u : dag.predecessors(v))
      if (alive[u] && u < next)
        next = u;
    if (next == n)
      return {}; // not reachable when `alive` came from a stalled sort
    v = next;
  }

  // The walk follows arcs backwards; reverse the cyclic part.
  std::vector<VertexId> cycle(walk.begin() + static_cast<std::ptrdiff_t>(seen_at[v]),
                              walk.end());
  std::reverse(cycle.begin(), cycle.end());
  std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()),
              cycle.end());
  return cycle;
}

} // namespace detail

// Kahn's topological sort with a FIFO queue; initial sources are enqueued in
// ascending id order. Throws CycleError carrying one cycle of the graph.
inline std::vector<VertexId> kahn_order(const Dag &dag) {
  const auto n = static_cast<VertexId>(dag.vertex_count());
  auto deg = dag.in_degrees();
  std::deque<VertexId> queue;
  for (VertexId v = 0; v < n; ++v)
    if (deg[v] == 0)
      queue.push_back(v);

  std::vector<VertexId> order;
  order.reserve(n);
  while (!queue.empty()) {
    VertexId v = queue.front();
    queue.pop_front();
    order.push_back(v);
    for (VertexId w : dag.successors(v))
      if (--deg[w] == 0)
        queue.push_back(w);
  }

  if (order.size() != n) {
    std::vector<bool> alive(n, true);
    for (VertexId v : order)
      alive[v] = false;
    throw CycleError(detail::find_cycle(dag, alive));
  }
  return order;
}

inline Path longest_path(const Dag &dag) {
  const auto n = dag.vertex_count();
  Path path;
  path.length.assign(n, 0);
  if (n == 0)
    return path;

  for (VertexId v : kahn_order(dag)) {
    std::size_t best = 0;
    for (VertexId u : dag.predecessors(v))
      best = std::max(best, path.length[u]);
    path.length[v] = best + 1;
  }

  VertexId v = static_cast<VertexId>(
      std::max_element(path.length.begin(), path.length.end()) -
      path.length.begin());
  path.vertices.push_back(v);
  while (path.length[v] > 1) {
    VertexId best = static_cast<VertexId>(n);
    for (VertexId u : dag.predecessors(v))
      if (best == n || path.length[u] > path.length[best] ||
          (path.length[u] == path.length[best] && u < best))
        best = u;
    v = best;
    path.vertices.push_back(v);
  }
  std::reverse(path.vertices.begin(), path.vertices.end());
  return path;
}

inline LayerPartition layers(const Dag &dag) {
  const Path path = longest_path(dag);
  LayerPartition result;
  result.layers.resize(path.vertices.size());
  for (VertexId v = 0; v < dag.vertex_count(); ++v)
    result.layers[path.length[v] - 1].push_back(v);
  return result;
}

// Throws std::invalid_argument unless `order` is a permutation of [0, n).
inline void require_permutation(std::size_t n, std::span<const VertexId> order) {
  if (order.size() != n)
    throw std::invalid_argument("order has " + std::to_string(order.size()) +
                                " entries, expected " + std::to_string(n));
  std::vector<bool> seen(n, false);
  for (VertexId v : order) {
    if (v >= n || seen[v])
      throw std::invalid_argument("order is not a permutation of [0, " +
                                  std::to_string(n) + ")");
    seen[v] = true;
  }
}

inline bool is_topological_order(const Dag &dag,
                                 std::span<const VertexId> order) {
  require_permutation(dag.vertex_count(), order);
  std::vector<std::size_t> position(dag.vertex_count());
  for (std::size_t i = 0; i < order.size(); ++i)
    position[order[i]] = i;
  return std::all_of(dag.arcs().begin(), dag.arcs().end(), [&](const Arc &a) {
    return position[a.first] < position[a.second];
  });
}

} // namespace dagsort
