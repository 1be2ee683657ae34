#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <tuple>
#include <utility>
#include <vector>

#include "sorter.hpp"

namespace dagsort {

// Greedy clique partition of a run's interval graph.
struct CliquePartition {
  // Ordered by critical time; members ordered by insertion time.
  std::vector<std::vector<VertexId>> cliques;
  // Insertion time of the last-inserted member of each clique.
  std::vector<std::uint64_t> critical_times;
  // selection_order[k] is the index (into `cliques`) of the k-th clique chosen.
  std::vector<std::size_t> selection_order;
};

struct WorkingSetReport {
  // Aligned with the interval list the report was computed from.
  std::vector<VertexId> vertices;
  std::vector<std::size_t> w;
  double sum_log_w = 0.0;
};

// Repeatedly removes a maximum clique of the remaining intervals: all
// intervals alive at the earliest time point of maximum overlap.
inline CliquePartition
greedy_clique_partition(std::span<const IntervalRecord> intervals) {
  struct Selected {
    std::uint64_t critical;
    std::vector<VertexId> members;
  };
  std::vector<Selected> selected;
  std::vector<bool> removed(intervals.size(), false);
  std::size_t remaining = intervals.size();

  // (time, +1 for an insertion or -1 for a deletion)
  std::vector<std::pair<std::uint64_t, int>> events;
  while (remaining > 0) {
    events.clear();
    for (std::size_t i = 0; i < intervals.size(); ++i)
      if (!removed[i]) {
        events.emplace_back(intervals[i].t_in, +1);
        events.emplace_back(intervals[i].t_out, -1);
      }
    std::sort(events.begin(), events.end());

    std::size_t live = 0, best = 0;
    std::uint64_t best_time = 0;
    for (const auto &[time, delta] : events) {
      if (delta > 0 && ++live > best) {
        best = live;
        best_time = time;
      } else if (delta < 0) {
        --live;
      }
    }

    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < intervals.size(); ++i)
      if (!removed[i] && intervals[i].t_in <= best_time &&
          best_time <= intervals[i].t_out)
        members.push_back(i);
    std::sort(members.begin(), members.end(), [&](std::size_t a, std::size_t b) {
      return intervals[a].t_in < intervals[b].t_in;
    });

    Selected clique{best_time, {}};
    for (std::size_t i : members) {
      removed[i] = true;
      clique.members.push_back(intervals[i].vertex);
    }
    remaining -= members.size();
    selected.push_back(std::move(clique));
  }

  std::vector<std::size_t> by_time(selected.size());
  for (std::size_t i = 0; i < by_time.size(); ++i)
    by_time[i] = i;
  std::sort(by_time.begin(), by_time.end(), [&](std::size_t a, std::size_t b) {
    return selected[a].critical < selected[b].critical;
  });

  CliquePartition partition;
  partition.selection_order.resize(selected.size());
  for (std::size_t rank = 0; rank < by_time.size(); ++rank) {
    auto &s = selected[by_time[rank]];
    partition.selection_order[by_time[rank]] = rank;
    partition.critical_times.push_back(s.critical);
    partition.cliques.push_back(std::move(s.members));
  }
  return partition;
}

// clique_index(p, n)[v] is the position of v's clique, or SIZE_MAX when v
// was not heap-processed.
inline std::vector<std::size_t> clique_index(const CliquePartition &partition,
                                             std::size_t n) {
  std::vector<std::size_t> index(n, SIZE_MAX);
  for (std::size_t i = 0; i < partition.cliques.size(); ++i)
    for (VertexId v : partition.cliques[i])
      index[v] = i;
  return index;
}

// Sum over cliques of |C| log2 |C|.
inline double clique_entropy(const CliquePartition &partition) {
  double sum = 0.0;
  for (const auto &c : partition.cliques)
    sum += static_cast<double>(c.size()) * std::log2(static_cast<double>(c.size()));
  return sum;
}

// Lower bound on log2 T: sum |C| log2 |C| - n log2 e. Not clamped at zero.
inline double partition_lower_bound(const CliquePartition &partition,
                                    std::size_t n) {
  return clique_entropy(partition) - static_cast<double>(n) * std::numbers::log2e;
}

// w(v): the largest number of heap items inserted no earlier than v that are
// simultaneously in the heap while v is. Counts only drop when an item
// inserted at or after v leaves, so it suffices to evaluate every live item
// right before each deletion.
inline WorkingSetReport working_set_sizes(std::span<const IntervalRecord> intervals) {
  WorkingSetReport report;
  report.vertices.reserve(intervals.size());
  for (const auto &rec : intervals)
    report.vertices.push_back(rec.vertex);
  report.w.assign(intervals.size(), 1);

  // (time, is_deletion, interval index)
  std::vector<std::tuple<std::uint64_t, bool, std::size_t>> events;
  events.reserve(2 * intervals.size());
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    events.emplace_back(intervals[i].t_in, false, i);
    events.emplace_back(intervals[i].t_out, true, i);
  }
  std::sort(events.begin(), events.end());

  std::vector<std::size_t> live; // ordered by insertion time
  for (const auto &[time, is_deletion, i] : events) {
    if (!is_deletion) {
      live.push_back(i);
      continue;
    }
    auto pos = std::find(live.begin(), live.end(), i);
    std::size_t count = static_cast<std::size_t>(live.end() - pos);
    for (auto it = pos;; --it) {
      report.w[*it] = std::max(report.w[*it], count);
      if (it == live.begin())
        break;
      ++count;
    }
    live.erase(pos);
  }

  for (std::size_t w : report.w)
    report.sum_log_w += std::log2(static_cast<double>(w));
  return report;
}

} // namespace dagsort
