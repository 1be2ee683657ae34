#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "dag.hpp"

namespace dagsort {

// Text formats.
//
//   graph file:  "n m" header, then m lines "u v" (0-based, decimal)
//   order file:  n lines, one vertex id each, smallest first
//
// Blank lines and lines starting with '#' are ignored in both.

namespace detail {

class LineReader {
public:
  explicit LineReader(std::istream &in) : in_(in) {}

  // Next non-blank, non-comment line split into decimal fields.
  bool next(std::vector<std::uint64_t> &fields) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      std::string_view view(line);
      if (!view.empty() && view.back() == '\r')
        view.remove_suffix(1);
      const auto first = view.find_first_not_of(" \t");
      if (first == std::string_view::npos || view[first] == '#')
        continue;
      fields.clear();
      std::size_t i = first;
      while (i < view.size()) {
        const auto end = std::min(view.find_first_of(" \t", i), view.size());
        std::uint64_t value = 0;
        const auto [ptr, ec] =
            std::from_chars(view.data() + i, view.data() + end, value);
        if (ec != std::errc() || ptr != view.data() + end)
          fail("expected a non-negative integer, got '" +
               std::string(view.substr(i, end - i)) + "'");
        fields.push_back(value);
        i = view.find_first_not_of(" \t", end);
        if (i == std::string_view::npos)
          break;
      }
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string &what) const {
    throw ParseError("line " + std::to_string(line_no_) + ": " + what);
  }

private:
  std::istream &in_;
  std::size_t line_no_ = 0;
};

} // namespace detail

inline Dag read_dag(std::istream &in) {
  detail::LineReader reader(in);
  std::vector<std::uint64_t> fields;
  if (!reader.next(fields))
    throw ParseError("graph file is empty");
  if (fields.size() != 2)
    reader.fail("header must be \"n m\"");
  const std::uint64_t n = fields[0], m = fields[1];
  if (n > UINT32_MAX)
    reader.fail("vertex count too large");

  std::vector<Arc> arcs;
  arcs.reserve(std::min<std::uint64_t>(m, 1u << 24));
  while (reader.next(fields)) {
    if (fields.size() != 2)
      reader.fail("arc line must be \"u v\"");
    if (arcs.size() == m)
      reader.fail("more than " + std::to_string(m) + " arc lines");
    if (fields[0] >= n || fields[1] >= n)
      reader.fail("arc endpoint out of range");
    arcs.emplace_back(static_cast<VertexId>(fields[0]),
                      static_cast<VertexId>(fields[1]));
  }
  if (arcs.size() != m)
    throw ParseError("expected " + std::to_string(m) + " arc lines, found " +
                     std::to_string(arcs.size()));
  return Dag(n, std::move(arcs));
}

inline std::vector<VertexId> read_order(std::istream &in, std::size_t n) {
  detail::LineReader reader(in);
  std::vector<std::uint64_t> fields;
  std::vector<VertexId> order;
  std::vector<bool> seen(n, false);
  while (reader.next(fields)) {
    if (fields.size() != 1)
      reader.fail("order line must hold one vertex id");
    if (fields[0] >= n)
      reader.fail("vertex id out of range");
    if (seen[fields[0]])
      reader.fail("vertex " + std::to_string(fields[0]) + " listed twice");
    seen[fields[0]] = true;
    order.push_back(static_cast<VertexId>(fields[0]));
  }
  if (order.size() != n)
    throw ParseError("order lists " + std::to_string(order.size()) +
                     " vertices, graph has " + std::to_string(n));
  return order;
}

inline void write_dag(std::ostream &out, const Dag &dag) {
  out << dag.vertex_count() << ' ' << dag.arc_count() << '\n';
  for (const auto &[u, v] : dag.arcs())
    out << u << ' ' << v << '\n';
}

inline void write_order(std::ostream &out, std::span<const VertexId> order) {
  for (VertexId v : order)
    out << v << '\n';
}

inline Dag parse_dag(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_dag(in);
}

inline std::vector<VertexId> parse_order(std::string_view text, std::size_t n) {
  std::istringstream in{std::string(text)};
  return read_order(in, n);
}

} // namespace dagsort
