#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dagsort {

using VertexId = std::uint32_t;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed text input (graph or order files).
struct ParseError : Error {
  using Error::Error;
};

// Structurally invalid graph, e.g. an arc endpoint out of range.
struct DagError : Error {
  using Error::Error;
};

// The graph has a directed cycle. `witness()` lists the cycle in arc
// direction, rotated to start at its smallest vertex.
class CycleError : public DagError {
public:
  explicit CycleError(std::vector<VertexId> witness)
      : DagError(describe(witness)), witness_(std::move(witness)) {}

  const std::vector<VertexId> &witness() const noexcept { return witness_; }

private:
  static std::string describe(const std::vector<VertexId> &cycle) {
    std::string s = "graph has a cycle:";
    for (VertexId v : cycle)
      s += ' ' + std::to_string(v);
    return s;
  }

  std::vector<VertexId> witness_;
};

// A hidden order that contradicts one of the given arcs.
struct InconsistentOrderError : Error {
  using Error::Error;
};

// Exact counting and sampling refuse graphs above their vertex limit.
struct SizeGuardError : Error {
  using Error::Error;
};

} // namespace dagsort
