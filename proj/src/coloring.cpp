#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <string>

#include "etopo/assignment.hpp"

namespace etopo {

const char* to_string(ColoringStatus status) {
  switch (status) {
    case ColoringStatus::colored: return "colored";
    case ColoringStatus::infeasible: return "infeasible";
    case ColoringStatus::unknown: return "unknown";
  }
  return "unknown";
}

ConflictGraph normalized(ConflictGraph graph) {
  const auto n = graph.vertices.size();
  for (auto& [a, b] : graph.edges) {
    if (a >= n || b >= n) {
      throw Error(Errc::invalid_argument, "edge endpoint outside the vertex list");
    }
    if (a == b) throw Error(Errc::invalid_argument, "self-loop on vertex " + std::to_string(a));
    if (a > b) std::swap(a, b);
  }
  std::sort(graph.edges.begin(), graph.edges.end());
  graph.edges.erase(std::unique(graph.edges.begin(), graph.edges.end()), graph.edges.end());
  return graph;
}

ConflictGraph build_conflict_graph(const AssignmentInstance& instance) {
  ConflictGraph g;
  for (std::size_t q = 0; q < instance.demands.size(); ++q) {
    g.vertices.push_back("q" + std::to_string(q) + "/u" + std::to_string(instance.demands[q].user));
  }
  std::set<std::size_t> interfering;
  for (const auto& set : instance.interference) {
    for (std::size_t i = 0; i < set.competing.size(); ++i) {
      interfering.insert(set.competing[i].demand);
      for (std::size_t j = i + 1; j < set.competing.size(); ++j) {
        const auto a = set.competing[i].demand;
        const auto b = set.competing[j].demand;
        if (a != b) g.edges.emplace_back(a, b);
      }
    }
  }
  g.k_star = interfering.size();
  return normalized(std::move(g));
}

bool is_proper_coloring(const ConflictGraph& graph, const std::vector<std::size_t>& color,
                        std::size_t colors) {
  if (color.size() != graph.vertices.size()) return false;
  if (std::any_of(color.begin(), color.end(), [&](std::size_t c) { return c >= colors; })) {
    return false;
  }
  return std::none_of(graph.edges.begin(), graph.edges.end(),
                      [&](const auto& e) { return color[e.first] == color[e.second]; });
}

namespace {

std::vector<std::vector<std::size_t>> adjacency(const ConflictGraph& graph) {
  std::vector<std::vector<std::size_t>> adj(graph.vertices.size());
  for (const auto& [a, b] : graph.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  return adj;
}

std::vector<std::size_t> by_degree(const std::vector<std::vector<std::size_t>>& adj) {
  std::vector<std::size_t> order(adj.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t l, std::size_t r) { return adj[l].size() > adj[r].size(); });
  return order;
}

constexpr std::size_t uncolored = static_cast<std::size_t>(-1);

// Backtracking in degree order. A vertex may open at most one new color,
// which removes color permutations from the search.
bool extend(const std::vector<std::vector<std::size_t>>& adj, const std::vector<std::size_t>& order,
            std::size_t pos, std::size_t used, std::size_t colors, std::vector<std::size_t>& color) {
  if (pos == order.size()) return true;
  const auto v = order[pos];
  const auto limit = std::min(colors, used + 1);
  for (std::size_t c = 0; c < limit; ++c) {
    bool clash = std::any_of(adj[v].begin(), adj[v].end(),
                             [&](std::size_t u) { return color[u] == c; });
    if (clash) continue;
    color[v] = c;
    if (extend(adj, order, pos + 1, std::max(used, c + 1), colors, color)) return true;
    color[v] = uncolored;
  }
  return false;
}

}  // namespace

ColoringResult color_graph(const ConflictGraph& input, std::size_t colors) {
  const auto graph = normalized(input);
  const auto adj = adjacency(graph);
  const auto order = by_degree(adj);
  ColoringResult result;
  std::vector<std::size_t> color(graph.vertices.size(), uncolored);

  if (graph.vertices.size() <= exact_coloring_cap) {
    if (extend(adj, order, 0, 0, colors, color)) {
      result.status = ColoringStatus::colored;
      result.color = std::move(color);
    } else {
      result.status = ColoringStatus::infeasible;
    }
    return result;
  }

  for (auto v : order) {
    std::vector<bool> taken(adj[v].size() + 1, false);
    for (auto u : adj[v]) {
      if (color[u] != uncolored && color[u] < taken.size()) taken[color[u]] = true;
    }
    const auto c = static_cast<std::size_t>(std::find(taken.begin(), taken.end(), false) - taken.begin());
    if (c >= colors) {
      result.status = ColoringStatus::unknown;
      return result;
    }
    color[v] = c;
  }
  result.status = ColoringStatus::colored;
  result.color = std::move(color);
  return result;
}

AssignmentInstance reduction_from_coloring(const ConflictGraph& input, std::size_t colors) {
  if (colors < 1) throw Error(Errc::invalid_argument, "the color count must be at least 1");
  const auto graph = normalized(input);
  const auto n = graph.vertices.size();

  // Node 0 is the shared target, node 1 the intermediate hub, node 2 + v the
  // source of vertex v. Link 0 joins hub and target and stores one state per
  // color; link 1 + v brings vertex v's demand to the hub.
  const NodeId target{0};
  const NodeId hub{1};
  std::vector<NodeId> nodes{target, hub};
  std::vector<EntangledLink> links;
  EntangledLink shared;
  shared.id = LinkId{0};
  shared.a = hub;
  shared.b = target;
  shared.throughput = static_cast<double>(std::max<std::size_t>(n, 1));
  shared.resource_count = static_cast<int>(colors);
  links.push_back(shared);
  for (std::size_t v = 0; v < n; ++v) {
    const NodeId source{static_cast<std::uint32_t>(2 + v)};
    nodes.push_back(source);
    EntangledLink leaf;
    leaf.id = LinkId{static_cast<std::uint32_t>(1 + v)};
    leaf.a = source;
    leaf.b = hub;
    leaf.throughput = 1.0;
    leaf.resource_count = 1;
    links.push_back(leaf);
  }
  OverlayNetwork network(nodes, links);

  ExplicitPlacement placement;
  for (NodeId node : network.nodes()) {
    placement.coords.emplace_back(node, LatticeCoord{{static_cast<std::int64_t>(raw(node))}});
  }
  auto graph_map = map_overlay(network, 1, static_cast<std::int64_t>(std::max<std::size_t>(n + 2, 2)),
                               placement);
  auto adapted = adapt_serial(graph_map, network, ThresholdPolicy{});

  std::vector<Demand> demands;
  for (std::size_t v = 0; v < n; ++v) {
    demands.push_back({static_cast<std::uint32_t>(v), NodeId{static_cast<std::uint32_t>(2 + v)},
                       target, 1.0});
  }

  AssignmentInstance inst;
  inst.resource_sets = make_resource_sets(network, adapted);
  for (const auto& [a, b] : graph.edges) {
    for (std::uint32_t f = 0; f < colors; ++f) {
      inst.interference.push_back({{LinkId{0}, f},
                                   {{static_cast<std::uint32_t>(a), a},
                                    {static_cast<std::uint32_t>(b), b}}});
    }
  }
  inst.network = std::move(network);
  inst.graph = std::move(graph_map);
  inst.adapted = std::move(adapted);
  inst.demands = std::move(demands);
  return inst;
}

}  // namespace etopo
