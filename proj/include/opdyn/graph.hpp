#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "opdyn/matrix.hpp"

namespace opdyn {

// 0-based internally. Files and reports use 1-based ids.
using AgentId = std::size_t;

struct Edge {
  AgentId from;
  AgentId to;
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Directed trust network: an edge i -> j means agent i trusts agent j and
/// takes information from it.
///
/// Invariants checked at construction: n >= 2, no self-loops, and every agent
/// trusts at least one other agent (out-degree >= 1). Immutable afterwards.
class TrustGraph {
 public:
  explicit TrustGraph(BoolMatrix adjacency);

  /// Builds from 0-based edges. Duplicate edges collapse to one entry.
  static TrustGraph from_edges(std::size_t n, std::span<const Edge> edges);

  std::size_t size() const noexcept { return adjacency_.rows(); }
  bool trusts(AgentId i, AgentId j) const { return adjacency_(i, j) != 0; }
  const BoolMatrix& adjacency() const noexcept { return adjacency_; }

  /// 0-based edge list in row-major order.
  std::vector<Edge> edges() const;

 private:
  BoolMatrix adjacency_;
};

/// Number of agents that trust i (column sum).
std::size_t in_degree(const TrustGraph& g, AgentId i);
/// Number of agents i trusts (row sum); always >= 1.
std::size_t out_degree(const TrustGraph& g, AgentId i);

struct NeighborSets {
  // Both sorted ascending.
  std::vector<std::vector<AgentId>> direct;
  std::vector<std::vector<AgentId>> indirect;
};

/// direct(i) = agents i trusts; indirect(i) = agents two hops away that are
/// neither direct neighbors nor i itself.
NeighborSets neighbor_sets(const TrustGraph& g);

struct Reachability {
  // p_ij = 1 iff a path i -> ... -> j exists; reflexive.
  BoolMatrix accessibility;
  // Agents reachable from every agent, ascending.
  std::vector<AgentId> celebrities;
};

Reachability reachability(const TrustGraph& g);

/// Parses the edge-list text format: one "i j" pair of 1-based ids per line,
/// '#' comment lines and blank lines skipped. n defaults to the largest id.
TrustGraph parse_edge_list(std::istream& in,
                           std::optional<std::size_t> n = std::nullopt);
TrustGraph read_edge_list(const std::string& path,
                          std::optional<std::size_t> n = std::nullopt);

/// Builds from 1-based edges, inferring n from the largest id when absent.
TrustGraph graph_from_one_based(std::span<const std::pair<std::size_t, std::size_t>> edges,
                                std::optional<std::size_t> n = std::nullopt);

}  // namespace opdyn
