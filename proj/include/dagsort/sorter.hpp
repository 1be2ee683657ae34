#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "dag.hpp"
#include "oracle.hpp"
#include "pairing_heap.hpp"

namespace dagsort {

enum class Algorithm { topological_heapsort, topological_heapsort_with_insertion };

inline std::string_view short_name(Algorithm a) {
  return a == Algorithm::topological_heapsort ? "ths" : "thsi";
}

// Heap lifetime of one vertex. Timestamps come from a counter that ticks once
// per heap insert and once per delete-min, so all endpoints are distinct.
struct IntervalRecord {
  VertexId vertex;
  std::uint64_t t_in;
  std::uint64_t t_out;
};

struct SortRun {
  Algorithm algorithm = Algorithm::topological_heapsort;
  std::vector<VertexId> order;
  std::uint64_t comparisons = 0;
  // Heap-processed vertices only, in deletion order, with original ids.
  std::vector<IntervalRecord> intervals;
  // Vertices on the longest path (0 when not computed).
  std::size_t path_length = 0;
  // Number of vertices that went through the heap.
  std::size_t heap_vertex_count = 0;
};

// The graph left after removing unmarked longest-path vertices and chaining
// the marked ones. Vertices are renumbered in ascending original-id order.
struct ReducedDag {
  Dag dag;
  std::vector<VertexId> to_original;
  // The full longest path, in path order (original ids).
  std::vector<VertexId> path;
  // Marked path vertices in path order (original ids).
  std::vector<VertexId> marked;
};

struct InsertionOptions {
  // When set to eps and the longest path has at most (1 - eps) n vertices,
  // skip the reduction and run plain topological heapsort.
  std::optional<double> skip_reduction_epsilon;
};

namespace detail {

// Routes comparisons on renumbered vertices to the caller's oracle.
template <ComparisonOracle Oracle> struct RenumberedOracle {
  Oracle &inner;
  std::span<const VertexId> to_original;
  bool less(VertexId a, VertexId b) {
    return inner.less(to_original[a], to_original[b]);
  }
};

// Topological sort with the current sources kept in a pairing heap. Calls
// `on_delete(v)` for each vertex as it leaves the heap, appending lifetimes
// (in the graph's own ids) to `intervals`.
template <ComparisonOracle Oracle, class OnDelete>
void heapsort_sources(const Dag &dag, Oracle &oracle, OnDelete &&on_delete,
                      std::vector<IntervalRecord> &intervals) {
  const auto n = static_cast<VertexId>(dag.vertex_count());
  auto deg = dag.in_degrees();
  std::vector<std::uint64_t> inserted_at(n);
  std::vector<bool> done(n, false);
  PairingHeap heap(n);
  std::uint64_t clock = 0;

  for (VertexId v = 0; v < n; ++v)
    if (deg[v] == 0) {
      inserted_at[v] = clock++;
      heap.insert(v, oracle);
    }

  intervals.reserve(intervals.size() + n);
  for (std::size_t removed = 0; removed < n; ++removed) {
    if (heap.empty()) {
      std::vector<bool> alive(n);
      for (VertexId v = 0; v < n; ++v)
        alive[v] = !done[v];
      throw CycleError(find_cycle(dag, alive));
    }
    const VertexId v = heap.delete_min(oracle);
    intervals.push_back({v, inserted_at[v], clock++});
    done[v] = true;
    on_delete(v);
    for (VertexId w : dag.successors(v))
      if (--deg[w] == 0) {
        inserted_at[w] = clock++;
        heap.insert(w, oracle);
      }
  }
}

} // namespace detail

// Topological sort that always removes the smallest current source.
// Returns the hidden order; the input graph is not modified.
template <ComparisonOracle Provider>
SortRun topological_heapsort(const Dag &dag, Provider &provider) {
  SortRun run;
  run.algorithm = Algorithm::topological_heapsort;
  run.heap_vertex_count = dag.vertex_count();
  run.order.reserve(dag.vertex_count());
  const auto before = provider.count();
  detail::heapsort_sources(
      dag, provider, [&](VertexId v) { run.order.push_back(v); },
      run.intervals);
  run.comparisons = provider.count() - before;
  return run;
}

// Number of elements of the ascending list `suffix` that are smaller than v.
// Probes positions 1, 2, 4, 8, ... until one exceeds v or the list ends,
// then binary-searches the unresolved gap. Uses at most
// 2 floor(log2(k + 1)) + 2 comparisons for a result k.
template <ComparisonOracle Provider>
std::size_t insert_search(std::span<const VertexId> suffix, VertexId v,
                          Provider &provider) {
  const std::size_t len = suffix.size();
  std::size_t lo = 0; // suffix[0, lo) known to be < v
  std::size_t hi = len; // answer known to be <= hi
  for (std::size_t probe = 1; probe <= len; probe *= 2) {
    if (provider.less(v, suffix[probe - 1])) {
      hi = probe - 1;
      break;
    }
    lo = probe;
  }
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (provider.less(v, suffix[mid]))
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

// Keeps the off-path vertices plus the marked vertices of `path`: the last
// path vertex, and for every off-path v the last path vertex with an arc
// into v and the first path vertex with an arc out of v. Other arcs between
// v and the path are dropped; consecutive marked vertices are chained.
inline ReducedDag build_reduced_dag(const Dag &dag, const Path &path) {
  const auto n = static_cast<VertexId>(dag.vertex_count());
  constexpr auto none = SIZE_MAX;
  std::vector<std::size_t> position(n, none);
  for (std::size_t i = 0; i < path.vertices.size(); ++i)
    position[path.vertices[i]] = i;

  ReducedDag reduced;
  reduced.path = path.vertices;
  if (n == 0)
    return reduced;

  std::vector<bool> marked(path.vertices.size(), false);
  marked.back() = true;

  std::vector<Arc> kept;
  for (VertexId v = 0; v < n; ++v) {
    if (position[v] != none)
      continue;
    std::size_t last_in = none;
    for (VertexId u : dag.predecessors(v))
      if (position[u] != none && (last_in == none || position[u] > last_in))
        last_in = position[u];
    std::size_t first_out = none;
    for (VertexId w : dag.successors(v)) {
      if (position[w] != none) {
        if (first_out == none || position[w] < first_out)
          first_out = position[w];
      } else {
        kept.emplace_back(v, w);
      }
    }
    if (last_in != none) {
      marked[last_in] = true;
      kept.emplace_back(path.vertices[last_in], v);
    }
    if (first_out != none) {
      marked[first_out] = true;
      kept.emplace_back(v, path.vertices[first_out]);
    }
  }

  for (std::size_t i = 0; i < marked.size(); ++i)
    if (marked[i])
      reduced.marked.push_back(path.vertices[i]);
  for (std::size_t i = 0; i + 1 < reduced.marked.size(); ++i)
    kept.emplace_back(reduced.marked[i], reduced.marked[i + 1]);

  std::vector<VertexId> local(n, static_cast<VertexId>(-1));
  for (VertexId v = 0; v < n; ++v)
    if (position[v] == none || marked[position[v]]) {
      local[v] = static_cast<VertexId>(reduced.to_original.size());
      reduced.to_original.push_back(v);
    }
  for (auto &[a, b] : kept) {
    a = local[a];
    b = local[b];
  }
  reduced.dag = Dag(reduced.to_original.size(), std::move(kept));
  return reduced;
}

// Topological heapsort on the reduced graph, merging the unmarked path
// vertices in by exponential + binary search as each heap vertex is output.
template <ComparisonOracle Provider>
SortRun topological_heapsort_with_insertion(const Dag &dag, Provider &provider,
                                            const InsertionOptions &options = {}) {
  const Path path = longest_path(dag); // throws CycleError
  const std::size_t n = dag.vertex_count();
  const std::size_t ell = path.vertices.size();

  if (options.skip_reduction_epsilon &&
      static_cast<double>(ell) <=
          (1.0 - *options.skip_reduction_epsilon) * static_cast<double>(n)) {
    SortRun run = topological_heapsort(dag, provider);
    run.algorithm = Algorithm::topological_heapsort_with_insertion;
    run.path_length = ell;
    return run;
  }

  const ReducedDag reduced = build_reduced_dag(dag, path);
  constexpr auto none = SIZE_MAX;
  std::vector<std::size_t> position(n, none);
  for (std::size_t i = 0; i < ell; ++i)
    position[path.vertices[i]] = i;

  SortRun run;
  run.algorithm = Algorithm::topological_heapsort_with_insertion;
  run.path_length = ell;
  run.heap_vertex_count = reduced.to_original.size();
  run.order.reserve(n);
  const auto before = provider.count();

  const std::span<const VertexId> line(path.vertices);
  std::size_t front = 0; // line[0, front) already output
  auto flush_to = [&](std::size_t end) {
    run.order.insert(run.order.end(), line.begin() + static_cast<std::ptrdiff_t>(front),
                     line.begin() + static_cast<std::ptrdiff_t>(end));
    front = end;
  };

  detail::RenumberedOracle<Provider> local{provider, reduced.to_original};
  detail::heapsort_sources(
      reduced.dag, local,
      [&](VertexId local_v) {
        const VertexId v = reduced.to_original[local_v];
        if (position[v] != none) {
          flush_to(position[v] + 1);
        } else {
          flush_to(front + insert_search(line.subspan(front), v, provider));
          run.order.push_back(v);
        }
      },
      run.intervals);
  flush_to(ell);

  for (auto &rec : run.intervals)
    rec.vertex = reduced.to_original[rec.vertex];
  run.comparisons = provider.count() - before;
  return run;
}

} // namespace dagsort
