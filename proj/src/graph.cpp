#include "opdyn/graph.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>

#include "opdyn/error.hpp"

namespace opdyn {

namespace {

void check_agent(const TrustGraph& g, AgentId i) {
  if (i >= g.size()) {
    throw InvalidAgentError("agent id " + std::to_string(i + 1) +
                            " out of range [1, " + std::to_string(g.size()) +
                            "]");
  }
}

}  // namespace

TrustGraph::TrustGraph(BoolMatrix adjacency) : adjacency_(std::move(adjacency)) {
  const std::size_t n = adjacency_.rows();
  if (adjacency_.cols() != n) {
    throw ValidationError("adjacency matrix must be square");
  }
  if (n < 2) {
    throw ValidationError("trust graph needs at least 2 agents");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (adjacency_(i, i)) {
      throw ValidationError("agent " + std::to_string(i + 1) +
                            " has a self-trust edge; self-trust is carried by "
                            "self-confidence alpha");
    }
    bool any = false;
    for (std::size_t j = 0; j < n; ++j) {
      adjacency_(i, j) = adjacency_(i, j) ? 1 : 0;
      any = any || adjacency_(i, j);
    }
    if (!any) {
      throw ValidationError("agent " + std::to_string(i + 1) +
                            " trusts no other agent (out-degree 0)");
    }
  }
}

TrustGraph TrustGraph::from_edges(std::size_t n, std::span<const Edge> edges) {
  BoolMatrix adj(n, n, 0);
  for (const Edge& e : edges) {
    if (e.from >= n || e.to >= n) {
      throw InvalidAgentError("edge " + std::to_string(e.from + 1) + " -> " +
                              std::to_string(e.to + 1) +
                              " references an agent outside [1, " +
                              std::to_string(n) + "]");
    }
    adj(e.from, e.to) = 1;
  }
  return TrustGraph(std::move(adj));
}

std::vector<Edge> TrustGraph::edges() const {
  std::vector<Edge> out;
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = 0; j < size(); ++j)
      if (trusts(i, j)) out.push_back({i, j});
  return out;
}

std::size_t in_degree(const TrustGraph& g, AgentId i) {
  check_agent(g, i);
  std::size_t deg = 0;
  for (std::size_t k = 0; k < g.size(); ++k) deg += g.trusts(k, i);
  return deg;
}

std::size_t out_degree(const TrustGraph& g, AgentId i) {
  check_agent(g, i);
  std::size_t deg = 0;
  for (std::size_t k = 0; k < g.size(); ++k) deg += g.trusts(i, k);
  return deg;
}

NeighborSets neighbor_sets(const TrustGraph& g) {
  const std::size_t n = g.size();
  NeighborSets sets;
  sets.direct.resize(n);
  sets.indirect.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (g.trusts(i, j)) sets.direct[i].push_back(j);

  std::vector<std::uint8_t> mark(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(mark.begin(), mark.end(), 0);
    for (AgentId j : sets.direct[i])
      for (AgentId s : sets.direct[j])
        if (s != i && !g.trusts(i, s)) mark[s] = 1;
    for (std::size_t s = 0; s < n; ++s)
      if (mark[s]) sets.indirect[i].push_back(s);
  }
  return sets;
}

Reachability reachability(const TrustGraph& g) {
  const std::size_t n = g.size();
  BoolMatrix p = g.adjacency();
  for (std::size_t i = 0; i < n; ++i) p(i, i) = 1;
  // Warshall.
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (p(i, k))
        for (std::size_t j = 0; j < n; ++j) p(i, j) |= p(k, j);

  Reachability r{std::move(p), {}};
  for (std::size_t j = 0; j < n; ++j) {
    bool all = true;
    for (std::size_t i = 0; i < n && all; ++i) all = r.accessibility(i, j);
    if (all) r.celebrities.push_back(j);
  }
  return r;
}

TrustGraph graph_from_one_based(
    std::span<const std::pair<std::size_t, std::size_t>> edges,
    std::optional<std::size_t> n) {
  std::size_t max_id = 0;
  std::vector<Edge> zero_based;
  zero_based.reserve(edges.size());
  for (auto [from, to] : edges) {
    if (from == 0 || to == 0) {
      throw InvalidAgentError("agent ids are 1-based; got 0");
    }
    max_id = std::max({max_id, from, to});
    zero_based.push_back({from - 1, to - 1});
  }
  const std::size_t agents = n.value_or(max_id);
  if (max_id > agents) {
    throw InvalidAgentError("edge references agent " + std::to_string(max_id) +
                            " but n = " + std::to_string(agents));
  }
  return TrustGraph::from_edges(agents, zero_based);
}

TrustGraph parse_edge_list(std::istream& in, std::optional<std::size_t> n) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    long long from = 0, to = 0;
    std::string extra;
    if (!(fields >> from >> to) || (fields >> extra) || from < 1 || to < 1) {
      throw InputError("edge list line " + std::to_string(line_no) +
                       ": expected two positive agent ids, got '" + line + "'");
    }
    edges.emplace_back(static_cast<std::size_t>(from),
                       static_cast<std::size_t>(to));
  }
  return graph_from_one_based(edges, n);
}

TrustGraph read_edge_list(const std::string& path, std::optional<std::size_t> n) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open edge list '" + path + "'");
  return parse_edge_list(in, n);
}

}  // namespace opdyn
