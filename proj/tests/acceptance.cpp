// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails. All thresholds are fixed here.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "dagsort/dagsort.hpp"
#include "test_support.hpp"

using namespace dagsort;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char *f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// --- The desk-scale suite -------------------------------------------------

struct SuiteInstance {
  std::string label;
  Instance inst;
};

// Random instances with n <= 12: 1200 of them across p in {0.1, 0.3, 0.6},
// half with the planted order, half with a uniformly sampled one.
std::vector<SuiteInstance> small_random_suite() {
  const double ps[] = {0.1, 0.3, 0.6};
  std::vector<SuiteInstance> out;
  for (std::uint64_t seed = 0; seed < 1200; ++seed) {
    const std::size_t n = 1 + seed % 12;
    const double p = ps[(seed / 12) % 3];
    Instance inst = make_random(n, p, seed);
    if (seed % 2)
      inst.order = sample_extension(inst.dag, seed ^ 0x9e3779b97f4a7c15ULL);
    out.push_back({fmt("random n=%zu p=%.1f seed=%llu", n, p,
                       static_cast<unsigned long long>(seed)),
                   std::move(inst)});
  }
  return out;
}

std::vector<SuiteInstance> full_suite() {
  auto out = small_random_suite();
  const double ps[] = {0.05, 0.1, 0.2, 0.3, 0.6};
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const std::size_t n = 13 + seed % 3;
    const double p = ps[seed % 5];
    out.push_back({fmt("random n=%zu p=%.2f seed=%llu", n, p,
                       static_cast<unsigned long long>(seed + 5000)),
                   make_random(n, p, seed + 5000)});
  }
  for (std::size_t n = 1; n <= 15; ++n) {
    out.push_back({fmt("chain n=%zu", n), make_chain(n)});
    out.push_back({fmt("antichain n=%zu", n), make_antichain(n, n)});
  }
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const std::size_t n = 4 + seed % 12, layers = 1 + seed % 5;
    out.push_back({fmt("layered n=%zu layers=%zu seed=%llu", n, layers,
                       static_cast<unsigned long long>(seed)),
                   make_layered(n, layers, 0.5, seed)});
  }
  return out;
}

struct SuiteRecord {
  const SuiteInstance *source;
  SortRun ths, thsi;
  ExtensionCount count;
  ExtensionCount reduced_count;
  std::size_t ell;
  std::size_t reduced_n;
};

std::vector<SuiteRecord> run_suite(const std::vector<SuiteInstance> &suite) {
  std::vector<SuiteRecord> records;
  records.reserve(suite.size());
  for (const auto &s : suite) {
    SuiteRecord r{&s, {}, {}, count_extensions(s.inst.dag), {}, 0, 0};
    auto p1 = make_provider(s.inst.dag, s.inst.order);
    auto p2 = make_provider(s.inst.dag, s.inst.order);
    r.ths = topological_heapsort(s.inst.dag, p1);
    r.thsi = topological_heapsort_with_insertion(s.inst.dag, p2);
    const Path path = longest_path(s.inst.dag);
    r.ell = path.vertices.size();
    const auto reduced = build_reduced_dag(s.inst.dag, path);
    r.reduced_n = reduced.to_original.size();
    r.reduced_count = count_extensions(reduced.dag);
    records.push_back(std::move(r));
  }
  return records;
}

// --- Criteria -------------------------------------------------------------

Outcome exact_sorting() {
  const auto start = Clock::now();
  const auto suite = small_random_suite();
  std::size_t failures = 0;
  for (const auto &s : suite) {
    auto p1 = make_provider(s.inst.dag, s.inst.order);
    auto p2 = make_provider(s.inst.dag, s.inst.order);
    failures += topological_heapsort(s.inst.dag, p1).order != s.inst.order;
    failures += topological_heapsort_with_insertion(s.inst.dag, p2).order != s.inst.order;
  }
  const double secs = seconds_since(start);
  return {failures == 0 && suite.size() >= 1000 && secs < 10.0,
          fmt("%zu instances, %zu failures, %.2f s (limit 10 s)", suite.size(), failures,
              secs)};
}

Outcome zero_comparison_chains() {
  std::string detail;
  bool pass = true;
  for (std::size_t n : {1u, 2u, 10u, 1000u}) {
    const auto inst = make_chain(n);
    auto p1 = make_provider(inst.dag, inst.order);
    auto p2 = make_provider(inst.dag, inst.order);
    const auto a = topological_heapsort(inst.dag, p1);
    const auto b = topological_heapsort_with_insertion(inst.dag, p2);
    pass = pass && a.comparisons == 0 && b.comparisons == 0 && a.order == inst.order &&
           b.order == inst.order;
    detail += fmt("n=%zu:%llu/%llu ", n, static_cast<unsigned long long>(a.comparisons),
                  static_cast<unsigned long long>(b.comparisons));
  }
  return {pass, detail + "(ths/thsi comparisons)"};
}

Outcome partition_certificate(const std::vector<SuiteRecord> &records) {
  std::size_t checked = 0, violations = 0;
  double min_margin = INFINITY;
  for (const auto &r : records) {
    const auto part = greedy_clique_partition(r.ths.intervals);
    const double margin =
        r.count.log2 - partition_lower_bound(part, r.ths.intervals.size());
    const auto part_i = greedy_clique_partition(r.thsi.intervals);
    const double margin_i =
        r.reduced_count.log2 - partition_lower_bound(part_i, r.thsi.intervals.size());
    violations += (margin < -1e-9) + (margin_i < -1e-9);
    min_margin = std::min({min_margin, margin, margin_i});
    checked += 2;
  }
  return {violations == 0,
          fmt("%zu runs, %zu violations, min margin %.3f bits", checked, violations,
              min_margin)};
}

Outcome working_set_certificate(const std::vector<SuiteRecord> &records) {
  std::size_t checked = 0, violations = 0;
  for (const auto &r : records)
    for (const SortRun *run : {&r.ths, &r.thsi}) {
      const auto part = greedy_clique_partition(run->intervals);
      const auto ws = working_set_sizes(run->intervals);
      violations += ws.sum_log_w > 2 * clique_entropy(part) + 1e-9;
      ++checked;
    }
  return {violations == 0, fmt("%zu runs, %zu violations", checked, violations)};
}

Outcome path_length_bound(const std::vector<SuiteRecord> &records) {
  std::size_t violations = 0;
  for (const auto &r : records) {
    const std::size_t n = r.source->inst.dag.vertex_count();
    violations += r.count.value * r.count.value < (BigCount(1) << (n - r.ell));
  }
  return {violations == 0,
          fmt("%zu instances, %zu violations (T^2 >= 2^(n-ell), exact)", records.size(),
              violations)};
}

Outcome monotonicity() {
  using dagsort::reference::PlainInstance;
  auto T = [](std::size_t n, const std::vector<Arc> &arcs) {
    return count_extensions(Dag(n, arcs)).value;
  };
  auto instance = [](std::uint64_t seed) {
    return dagsort::reference::random_plain_instance(3 + seed % 8, 0.15 + 0.05 * (seed % 8),
                                                   seed + 100000);
  };
  std::mt19937_64 rng(4242);
  std::size_t cases[4] = {0, 0, 0, 0};
  std::size_t violations = 0;

  for (std::uint64_t seed = 0; cases[0] < 250 && seed < 50000; ++seed) {
    const auto g = instance(seed);
    for (std::size_t i = 0; i < g.arcs.size(); ++i) {
      if (!dagsort::reference::reachable_without(g.n, g.arcs, g.arcs[i].first,
                                               g.arcs[i].second, i))
        continue;
      auto fewer = g.arcs;
      fewer.erase(fewer.begin() + static_cast<std::ptrdiff_t>(i));
      violations += T(g.n, g.arcs) != T(g.n, fewer);
      ++cases[0];
      break;
    }
  }
  for (std::uint64_t seed = 0; cases[1] < 250; ++seed) {
    const auto g = instance(seed);
    const std::size_t i = rng() % g.n, j = rng() % g.n;
    if (i == j)
      continue;
    auto more = g.arcs;
    more.emplace_back(g.order[std::min(i, j)], g.order[std::max(i, j)]);
    violations += T(g.n, g.arcs) < T(g.n, more);
    ++cases[1];
  }
  for (std::uint64_t seed = 0; cases[2] < 250 && seed < 50000; ++seed) {
    const auto g = instance(seed);
    std::vector<int> in(g.n, 0), out(g.n, 0);
    for (const auto &[u, v] : g.arcs) {
      ++out[u];
      ++in[v];
    }
    for (VertexId x = 0; x < g.n; ++x) {
      if (in[x] != 1 || out[x] != 1)
        continue;
      VertexId u = 0, w = 0;
      std::vector<Arc> rest;
      for (const auto &a : g.arcs) {
        if (a.second == x)
          u = a.first;
        else if (a.first == x)
          w = a.second;
        else
          rest.push_back(a);
      }
      auto renum = [&](VertexId v) { return v > x ? v - 1 : v; };
      for (auto &a : rest)
        a = {renum(a.first), renum(a.second)};
      rest.emplace_back(renum(u), renum(w));
      violations += T(g.n, g.arcs) < T(g.n - 1, rest);
      ++cases[2];
      break;
    }
  }
  for (std::uint64_t seed = 0; cases[3] < 250; ++seed) {
    const auto g = instance(seed);
    const VertexId s = g.order[rng() % g.n];
    bool is_source = true;
    for (const auto &a : g.arcs)
      is_source = is_source && a.second != s;
    if (!is_source)
      continue;
    std::vector<Arc> rest;
    for (const auto &[u, v] : g.arcs)
      if (u != s)
        rest.emplace_back(u > s ? u - 1 : u, v > s ? v - 1 : v);
    violations += T(g.n, g.arcs) < T(g.n - 1, rest);
    ++cases[3];
  }
  const bool enough = cases[0] >= 200 && cases[1] >= 200 && cases[2] >= 200 && cases[3] >= 200;
  return {enough && violations == 0,
          fmt("pairs (i)=%zu (ii)=%zu (iii)=%zu (iv)=%zu, %zu violations", cases[0],
              cases[1], cases[2], cases[3], violations)};
}

Outcome comparison_budgets(const std::vector<SuiteRecord> &records) {
  constexpr double C = 10.0;
  std::size_t violations = 0;
  double worst_ths = 0, worst_thsi = 0;
  for (const auto &r : records) {
    const double n = static_cast<double>(r.source->inst.dag.vertex_count());
    const double ths_budget = C * (n + r.count.log2);
    const double thsi_budget = C * (r.count.log2 + 1);
    violations += static_cast<double>(r.ths.comparisons) > ths_budget;
    violations += static_cast<double>(r.thsi.comparisons) > thsi_budget;
    worst_ths = std::max(worst_ths, static_cast<double>(r.ths.comparisons) / (n + r.count.log2));
    worst_thsi =
        std::max(worst_thsi, static_cast<double>(r.thsi.comparisons) / (r.count.log2 + 1));
  }
  return {violations == 0,
          fmt("%zu instances, %zu violations; worst ratios ths %.2f, thsi %.2f (limit %.0f)",
              records.size(), violations, worst_ths, worst_thsi, C)};
}

Outcome reduced_size(const std::vector<SuiteRecord> &records) {
  std::size_t violations = 0;
  for (const auto &r : records) {
    const std::size_t n = r.source->inst.dag.vertex_count();
    violations += r.reduced_n > 3 * (n - r.ell) + 1;
  }
  return {violations == 0, fmt("%zu instances, %zu violations", records.size(), violations)};
}

double tv_from_uniform(const Dag &dag, std::uint64_t seed, std::size_t samples,
                       std::size_t expected_support) {
  ExtensionTable table(dag);
  std::mt19937_64 rng(seed);
  std::map<std::vector<VertexId>, std::size_t> freq;
  for (std::size_t i = 0; i < samples; ++i)
    ++freq[table.sample(rng)];
  const double u = 1.0 / static_cast<double>(expected_support);
  double tv = 0.0;
  for (const auto &[order, c] : freq)
    tv += std::abs(static_cast<double>(c) / static_cast<double>(samples) - u);
  tv += u * static_cast<double>(expected_support - freq.size());
  return tv / 2;
}

Outcome sampler_uniformity() {
  const std::vector<Arc> diamond{{0, 1}, {0, 2}, {1, 3}, {2, 3}};
  const std::vector<Arc> five{{0, 1}, {0, 2}, {3, 4}};
  const auto t_diamond = dagsort::reference::brute_force_count(4, diamond);
  const auto t_five = dagsort::reference::brute_force_count(5, five);
  const double a = tv_from_uniform(Dag(4, diamond), 1, 200000, t_diamond);
  const double b = tv_from_uniform(Dag(5, five), 2, 200000, t_five);
  return {a < 0.02 && b < 0.02 && t_five <= 30,
          fmt("TV diamond (T=%llu) %.4f, 5-vertex (T=%llu) %.4f (limit 0.02)",
              static_cast<unsigned long long>(t_diamond), a,
              static_cast<unsigned long long>(t_five), b)};
}

Outcome estimator_band() {
  const double log2_12_fact = count_extensions(Dag(12, {})).log2;
  double sum = 0;
  for (std::uint64_t s = 0; s < 50; ++s)
    sum += estimate_log_T(Dag(12, {}), s).estimate;
  const double mean = sum / 50;
  const double chain = estimate_log_T(make_chain(10).dag, 0).estimate;
  const bool pass =
      mean >= 0.5 * log2_12_fact && mean <= 6.0 * log2_12_fact && chain == 0.0;
  return {pass, fmt("antichain-12 mean %.2f in [%.2f, %.2f]; chain estimate %.1f", mean,
                    0.5 * log2_12_fact, 6.0 * log2_12_fact, chain)};
}

Outcome heap_model() {
  std::mt19937_64 rng(31337);
  std::size_t traces = 0, mismatches = 0;
  for (; traces < 10000; ++traces) {
    const std::size_t n = 1 + rng() % 64;
    std::vector<VertexId> ascending(n);
    std::iota(ascending.begin(), ascending.end(), VertexId{0});
    std::shuffle(ascending.begin(), ascending.end(), rng);
    ComparisonProvider p{HiddenOrder(ascending)};
    std::vector<std::size_t> rank(n);
    for (std::size_t i = 0; i < n; ++i)
      rank[ascending[i]] = i;
    std::vector<VertexId> pending(ascending);
    std::shuffle(pending.begin(), pending.end(), rng);

    PairingHeap heap(n);
    std::set<std::pair<std::size_t, VertexId>> model;
    std::size_t next = 0;
    bool ok = true;
    while (next < n || !model.empty()) {
      if (next < n && (model.empty() || rng() % 3 != 0)) {
        const VertexId v = pending[next++];
        heap.insert(v, p);
        model.emplace(rank[v], v);
      } else {
        const VertexId want = model.begin()->second;
        model.erase(model.begin());
        ok = ok && heap.delete_min(p) == want;
      }
    }
    mismatches += !ok || !heap.empty();
  }
  return {mismatches == 0, fmt("%zu traces, %zu mismatches", traces, mismatches)};
}

struct RankOracle {
  std::vector<int> ranks;
  std::uint64_t calls = 0;
  bool less(VertexId a, VertexId b) {
    ++calls;
    return ranks[a] < ranks[b];
  }
};

Outcome insert_search_budget() {
  std::size_t cases = 0, wrong = 0, over = 0;
  for (std::size_t len = 0; len <= 64; ++len) {
    std::vector<VertexId> list(len);
    std::iota(list.begin(), list.end(), VertexId{0});
    for (std::size_t k = 0; k <= len; ++k, ++cases) {
      RankOracle o;
      o.ranks.resize(len + 1);
      for (std::size_t i = 0; i < len; ++i)
        o.ranks[i] = static_cast<int>(2 * i + 2);
      o.ranks[len] = static_cast<int>(2 * k + 1);
      const auto got =
          insert_search(std::span<const VertexId>(list), static_cast<VertexId>(len), o);
      wrong += got != k;
      const double budget = 2 * std::floor(std::log2(static_cast<double>(k + 1))) + 2;
      over += static_cast<double>(o.calls) > budget;
    }
  }
  return {wrong == 0 && over == 0,
          fmt("%zu (length, rank) cases, %zu wrong splits, %zu over budget", cases, wrong,
              over)};
}

Outcome scale_smoke() {
  constexpr std::size_t n = 100000;
  const double p = 500000.0 / (static_cast<double>(n) * (n - 1) / 2);
  const auto gen_start = Clock::now();
  const Instance inst = make_random(n, p, 2024);
  const double gen_secs = seconds_since(gen_start);

  const auto start = Clock::now();
  auto provider = make_provider(inst.dag, inst.order);
  const SortRun run = topological_heapsort_with_insertion(inst.dag, provider);
  const double secs = seconds_since(start);
  const bool exact = run.order == inst.order;
  return {exact && secs < 5.0,
          fmt("n=%zu m=%zu: %.2f s (limit 5 s), %s, %llu comparisons, ell=%zu "
              "(generation %.2f s)",
              n, inst.dag.arc_count(), secs, exact ? "exact" : "WRONG ORDER",
              static_cast<unsigned long long>(run.comparisons), run.path_length,
              gen_secs)};
}

} // namespace

int main() {
  std::printf("building desk-scale suite...\n");
  const auto suite = full_suite();
  const auto records = run_suite(suite);
  std::printf("suite: %zu instances (n <= 15)\n", suite.size());

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 exact sorting", exact_sorting},
      {"2 zero-comparison chains", zero_comparison_chains},
      {"3 clique-partition lower bound <= log2 T", [&] { return partition_certificate(records); }},
      {"4 working-set sum <= 2 sum |C| log2 |C|", [&] { return working_set_certificate(records); }},
      {"5 T >= 2^((n - ell) / 2)", [&] { return path_length_bound(records); }},
      {"6 monotonicity under graph transformations", monotonicity},
      {"7 comparison budgets", [&] { return comparison_budgets(records); }},
      {"8 reduced graph size <= 3(n - ell) + 1", [&] { return reduced_size(records); }},
      {"9 sampler uniformity", sampler_uniformity},
      {"10 log2 T estimator band", estimator_band},
      {"11 heap model equivalence", heap_model},
      {"12 insertion search budget", insert_search_budget},
      {"13 scale smoke test", scale_smoke},
  };

  int failed = 0;
  for (const auto &[name, check] : criteria) {
    const Outcome o = check();
    failed += !o.pass;
    std::printf("[%s] %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
