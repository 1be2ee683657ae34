#pragma once

// Command-line front end for the dagsort library. Kept in a header so the
// test suite can drive every subcommand in-process.

#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dagsort/dagsort.hpp"

namespace dagsort::cli {

enum ExitCode : int {
  ok = 0,
  usage = 1,
  parse_failure = 2,
  cycle = 3,
  inconsistent_order = 4,
  size_guard = 5,
};

// Shortest round-trip decimal; integral values keep a trailing ".0".
inline std::string format_double(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  std::string s(buf, end);
  if (std::isfinite(x) && s.find_first_of(".eE") == std::string::npos)
    s += ".0";
  return s;
}

namespace detail {

inline Dag load_dag(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw ParseError("cannot open graph file '" + path + "'");
  return read_dag(in);
}

inline std::vector<VertexId> load_order(const std::string &path, std::size_t n) {
  std::ifstream in(path);
  if (!in)
    throw ParseError("cannot open order file '" + path + "'");
  return read_order(in, n);
}

// Writes to `path`, or to `fallback` when path is "-".
template <class Fn>
void with_output(const std::string &path, std::ostream &fallback, Fn &&fn) {
  if (path == "-") {
    fn(fallback);
    return;
  }
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("cannot write '" + path + "'");
  fn(out);
}

inline Algorithm parse_algorithm(const std::string &s) {
  if (s == "ths")
    return Algorithm::topological_heapsort;
  if (s == "thsi")
    return Algorithm::topological_heapsort_with_insertion;
  throw std::invalid_argument("unknown algorithm '" + s + "'");
}

inline SortRun run_algorithm(Algorithm algo, const Dag &dag,
                             ComparisonProvider &provider,
                             const InsertionOptions &options) {
  return algo == Algorithm::topological_heapsort
             ? topological_heapsort(dag, provider)
             : topological_heapsort_with_insertion(dag, provider, options);
}

inline std::string join(std::span<const VertexId> ids) {
  std::string s;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i)
      s += ' ';
    s += std::to_string(ids[i]);
  }
  return s;
}

struct GenArgs {
  std::string kind = "random";
  std::size_t n = 0;
  double p = 0.3;
  std::size_t layers = 2;
  std::uint64_t seed = 0;
  std::string graph, order;
};

inline int cmd_gen(const GenArgs &a, std::ostream &out) {
  GenerateParams params;
  params.kind = parse_graph_kind(a.kind);
  params.n = a.n;
  params.p = a.p;
  params.layers = a.layers;
  params.seed = a.seed;
  const Instance inst = generate(params);
  with_output(a.graph, out, [&](std::ostream &os) { write_dag(os, inst.dag); });
  with_output(a.order, out, [&](std::ostream &os) { write_order(os, inst.order); });
  return ok;
}

struct SortArgs {
  std::string algo = "thsi";
  std::string graph, order;
  bool stats = false;
  bool json = false;
  std::optional<double> skip_reduction_epsilon;
};

inline int cmd_sort(const SortArgs &a, std::ostream &out) {
  const Algorithm algo = parse_algorithm(a.algo);
  const Dag dag = load_dag(a.graph);
  const auto hidden = load_order(a.order, dag.vertex_count());
  (void)kahn_order(dag); // report cycles before order consistency
  ComparisonProvider provider = make_provider(dag, hidden);

  InsertionOptions options;
  options.skip_reduction_epsilon = a.skip_reduction_epsilon;
  const auto start = std::chrono::steady_clock::now();
  const SortRun run = run_algorithm(algo, dag, provider, options);
  const auto micros = std::chrono::duration_cast<std::chrono::microseconds>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  const std::size_t ell = run.path_length ? run.path_length
                                          : longest_path(dag).vertices.size();

  if (a.json) {
    nlohmann::json j;
    j["algo"] = short_name(algo);
    j["order"] = run.order;
    if (a.stats) {
      j["comparisons"] = run.comparisons;
      j["n"] = dag.vertex_count();
      j["m"] = dag.arc_count();
      j["ell"] = ell;
      j["reduced_n"] = run.heap_vertex_count;
      j["micros"] = micros;
    }
    out << j.dump() << '\n';
    return ok;
  }

  out << join(run.order) << '\n';
  if (a.stats) {
    out << "comparisons=" << run.comparisons << '\n'
        << "n=" << dag.vertex_count() << '\n'
        << "m=" << dag.arc_count() << '\n'
        << "ell=" << ell << '\n'
        << "reduced_n=" << run.heap_vertex_count << '\n'
        << "micros=" << micros << '\n';
  }
  return ok;
}

inline int cmd_count(const std::string &graph, std::ostream &out) {
  const Dag dag = load_dag(graph);
  const ExtensionCount count = count_extensions(dag);
  out << "T=" << count.value << " log2=" << format_double(count.log2) << '\n';
  return ok;
}

inline int cmd_estimate(const std::string &graph, std::uint64_t seed,
                        std::size_t repeats, std::ostream &out) {
  const Dag dag = load_dag(graph);
  double total = 0.0;
  for (std::size_t i = 0; i < repeats; ++i) {
    const std::uint64_t run_seed = seed + i;
    const LogTEstimate e = estimate_log_T(dag, run_seed);
    out << "run=" << i << " seed=" << run_seed
        << " comparisons=" << e.comparisons << '\n';
    total += e.estimate;
  }
  out << "mean=" << format_double(repeats ? total / static_cast<double>(repeats) : 0.0)
      << '\n';
  return ok;
}

inline const char *verdict(bool pass) { return pass ? "PASS" : "FAIL"; }

inline int cmd_analyze(const std::string &algo_name, const std::string &graph,
                       const std::string &order, std::ostream &out) {
  const Algorithm algo = parse_algorithm(algo_name);
  const Dag dag = load_dag(graph);
  const auto hidden = load_order(order, dag.vertex_count());
  (void)kahn_order(dag);
  ComparisonProvider provider = make_provider(dag, hidden);
  const SortRun run = run_algorithm(algo, dag, provider, {});
  const Path path = longest_path(dag);
  const std::size_t n = dag.vertex_count();
  const std::size_t ell = path.vertices.size();

  const CliquePartition partition = greedy_clique_partition(run.intervals);
  const WorkingSetReport ws = working_set_sizes(run.intervals);
  const double entropy = clique_entropy(partition);
  const double bound = partition_lower_bound(partition, run.intervals.size());

  out << "algo=" << short_name(algo) << " n=" << n << " m=" << dag.arc_count()
      << " ell=" << ell << " heap_vertices=" << run.intervals.size()
      << " comparisons=" << run.comparisons << '\n';
  for (std::size_t i = 0; i < partition.cliques.size(); ++i)
    out << "clique " << i << " critical=" << partition.critical_times[i]
        << " size=" << partition.cliques[i].size() << ": "
        << join(partition.cliques[i]) << '\n';
  out << "cliques=" << partition.cliques.size() << '\n'
      << "sum_c_log2_c=" << format_double(entropy) << '\n'
      << "partition_bound=" << format_double(bound) << '\n'
      << "sum_log2_w=" << format_double(ws.sum_log_w) << '\n';

  const bool working_set_ok = ws.sum_log_w <= 2.0 * entropy + 1e-9;
  if (n > max_exact_vertices) {
    out << "log2T=NA\n"
        << "working_set_check: " << verdict(working_set_ok) << '\n';
    return ok;
  }

  // The heap saw the reduced graph under thsi; its own count is the sharper
  // reference for the partition bound.
  const ExtensionCount total = count_extensions(dag);
  const ExtensionCount heap_total =
      algo == Algorithm::topological_heapsort
          ? total
          : count_extensions(build_reduced_dag(dag, path).dag);
  const bool partition_ok = bound <= heap_total.log2 + 1e-9;
  const bool path_ok =
      total.value * total.value >= (BigCount(1) << (n - ell));
  out << "log2T=" << format_double(total.log2) << '\n';
  if (algo != Algorithm::topological_heapsort)
    out << "log2T_heap_graph=" << format_double(heap_total.log2) << '\n';
  out << "partition_check: " << verdict(partition_ok)
      << " margin=" << format_double(heap_total.log2 - bound) << '\n'
      << "working_set_check: " << verdict(working_set_ok)
      << " margin=" << format_double(2.0 * entropy - ws.sum_log_w) << '\n'
      << "path_check: " << verdict(path_ok)
      << " margin=" << format_double(total.log2 - static_cast<double>(n - ell) / 2.0)
      << '\n';
  return ok;
}

struct BenchArgs {
  std::vector<std::string> kinds{"random"};
  std::vector<std::size_t> sizes{12};
  std::vector<std::uint64_t> seeds{0};
  std::vector<std::string> algos{"ths", "thsi"};
  double p = 0.3;
  std::size_t layers = 2;
  std::string out = "-";
};

inline constexpr const char *bench_header =
    "kind,n,m,seed,algo,comparisons,log2T,ell,reduced_n,micros";

inline int cmd_bench(const BenchArgs &a, std::ostream &out) {
  std::vector<Algorithm> algos;
  for (const auto &s : a.algos)
    algos.push_back(parse_algorithm(s));
  std::vector<GraphKind> kinds;
  for (const auto &s : a.kinds)
    kinds.push_back(parse_graph_kind(s));

  with_output(a.out, out, [&](std::ostream &csv) {
    csv << bench_header << '\n';
    for (GraphKind kind : kinds)
      for (std::size_t n : a.sizes)
        for (std::uint64_t seed : a.seeds) {
          const Instance inst = generate({kind, n, a.p, a.layers, seed});
          const std::string log2t =
              n <= max_exact_vertices
                  ? format_double(count_extensions(inst.dag).log2)
                  : "NA";
          const std::size_t ell = longest_path(inst.dag).vertices.size();
          for (Algorithm algo : algos) {
            ComparisonProvider provider = make_provider(inst.dag, inst.order);
            const auto start = std::chrono::steady_clock::now();
            const SortRun run = run_algorithm(algo, inst.dag, provider, {});
            const auto micros =
                std::chrono::duration_cast<std::chrono::microseconds>(
                    std::chrono::steady_clock::now() - start)
                    .count();
            if (run.order != inst.order)
              throw std::logic_error("sorted order differs from hidden order");
            csv << to_string(kind) << ',' << n << ',' << inst.dag.arc_count()
                << ',' << seed << ',' << short_name(algo) << ','
                << run.comparisons << ',' << log2t << ',' << ell << ','
                << (algo == Algorithm::topological_heapsort
                        ? std::string("NA")
                        : std::to_string(run.heap_vertex_count))
                << ',' << micros << '\n';
          }
        }
  });
  return ok;
}

} // namespace detail

// Runs the command line; returns the process exit code.
inline int run(int argc, const char *const *argv, std::ostream &out,
               std::ostream &err) {
  CLI::App app{"Sort a DAG under an unknown total order with few comparisons"};
  app.require_subcommand(1);

  detail::GenArgs gen;
  auto *gen_cmd = app.add_subcommand("gen", "Generate a graph and a consistent hidden order");
  gen_cmd->add_option("--kind", gen.kind, "chain | antichain | random | layered")
      ->check(CLI::IsMember({"chain", "antichain", "random", "layered"}));
  gen_cmd->add_option("--n", gen.n, "Vertex count")->required();
  gen_cmd->add_option("--p", gen.p, "Arc probability (random, layered)");
  gen_cmd->add_option("--layers", gen.layers, "Layer count (layered)");
  gen_cmd->add_option("--seed", gen.seed, "Random seed");
  gen_cmd->add_option("--graph", gen.graph, "Graph file to write ('-' for stdout)")->required();
  gen_cmd->add_option("--order", gen.order, "Order file to write ('-' for stdout)")->required();

  detail::SortArgs sort;
  auto *sort_cmd = app.add_subcommand("sort", "Recover the hidden order");
  sort_cmd->add_option("--algo", sort.algo, "ths | thsi")
      ->check(CLI::IsMember({"ths", "thsi"}));
  sort_cmd->add_option("--graph", sort.graph, "Graph file")->required();
  sort_cmd->add_option("--order", sort.order, "Hidden order file")->required();
  sort_cmd->add_flag("--stats", sort.stats, "Print comparison count and sizes");
  sort_cmd->add_flag("--json", sort.json, "Emit JSON");
  sort_cmd->add_option("--skip-reduction-epsilon", sort.skip_reduction_epsilon,
                       "thsi: skip the path reduction when ell <= (1 - eps) n");

  std::string count_graph;
  auto *count_cmd = app.add_subcommand("count", "Count topological orders exactly");
  count_cmd->add_option("--graph", count_graph, "Graph file")->required();

  std::string est_graph;
  std::uint64_t est_seed = 0;
  std::size_t est_repeats = 1;
  auto *est_cmd = app.add_subcommand("estimate", "Estimate log2 T from sampled sorts");
  est_cmd->add_option("--graph", est_graph, "Graph file")->required();
  est_cmd->add_option("--seed", est_seed, "Seed of the first run");
  est_cmd->add_option("--repeats", est_repeats, "Number of runs");

  std::string an_graph, an_order, an_algo = "ths";
  auto *an_cmd = app.add_subcommand("analyze", "Clique partition and bound checks for one run");
  an_cmd->add_option("--graph", an_graph, "Graph file")->required();
  an_cmd->add_option("--order", an_order, "Hidden order file")->required();
  an_cmd->add_option("--algo", an_algo, "ths | thsi")
      ->check(CLI::IsMember({"ths", "thsi"}));

  detail::BenchArgs bench;
  auto *bench_cmd = app.add_subcommand("bench", "Run a generated suite and write CSV");
  bench_cmd->add_option("--kind", bench.kinds, "Graph kinds (comma separated)")
      ->delimiter(',');
  bench_cmd->add_option("--n", bench.sizes, "Vertex counts (comma separated)")
      ->delimiter(',');
  bench_cmd->add_option("--seed", bench.seeds, "Seeds (comma separated)")->delimiter(',');
  bench_cmd->add_option("--algo", bench.algos, "Algorithms (comma separated)")
      ->delimiter(',');
  bench_cmd->add_option("--p", bench.p, "Arc probability");
  bench_cmd->add_option("--layers", bench.layers, "Layer count");
  bench_cmd->add_option("--out", bench.out, "CSV path ('-' for stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e, out, err) == 0 ? ok : usage;
  }

  try {
    if (gen_cmd->parsed())
      return detail::cmd_gen(gen, out);
    if (sort_cmd->parsed())
      return detail::cmd_sort(sort, out);
    if (count_cmd->parsed())
      return detail::cmd_count(count_graph, out);
    if (est_cmd->parsed())
      return detail::cmd_estimate(est_graph, est_seed, est_repeats, out);
    if (an_cmd->parsed())
      return detail::cmd_analyze(an_algo, an_graph, an_order, out);
    if (bench_cmd->parsed())
      return detail::cmd_bench(bench, out);
  } catch (const ParseError &e) {
    err << "parse error: " << e.what() << '\n';
    return parse_failure;
  } catch (const CycleError &e) {
    err << "cycle:";
    for (VertexId v : e.witness())
      err << ' ' << v;
    err << '\n';
    return cycle;
  } catch (const DagError &e) {
    err << "invalid graph: " << e.what() << '\n';
    return parse_failure;
  } catch (const InconsistentOrderError &e) {
    err << "inconsistent order: " << e.what() << '\n';
    return inconsistent_order;
  } catch (const SizeGuardError &e) {
    err << "too large: " << e.what() << '\n';
    return size_guard;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << '\n';
    return usage;
  }
  return usage;
}

} // namespace dagsort::cli
