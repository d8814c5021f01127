#include "etopo/routing.hpp"

#include <deque>
#include <limits>
#include <string>
#include <vector>

namespace etopo {

const char* to_string(RouteStatus status) {
  return status == RouteStatus::found ? "found" : "unreachable";
}

namespace {

constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

struct Endpoints {
  std::size_t source;
  std::size_t target;
  std::vector<char> blocked;
};

Endpoints resolve(const BaseGraph& graph, NodeId source, NodeId target,
                  std::span<const NodeId> avoid) {
  Endpoints e{graph.checked_index(source), graph.checked_index(target),
              std::vector<char>(graph.nodes().size(), 0)};
  for (NodeId n : avoid) {
    if (auto i = graph.index_of(n)) e.blocked[*i] = 1;
  }
  return e;
}

RoutingOutcome trivial(NodeId source) {
  RoutingOutcome out;
  out.status = RouteStatus::found;
  out.path.nodes = {source};
  return out;
}

}  // namespace

RoutingOutcome route(const BaseGraph& graph, const AdaptedLinkSet& adapted, NodeId source,
                     NodeId target, std::uint64_t /*rng_seed*/, std::span<const NodeId> avoid) {
  auto ep = resolve(graph, source, target, avoid);
  if (source == target) return trivial(source);

  RoutingOutcome out;
  auto& visited = ep.blocked;
  if (visited[ep.source]) return out;
  visited[ep.source] = 1;

  // DFS stack of dense indices; the stack itself is the loop-free path.
  std::vector<std::size_t> stack{ep.source};
  std::vector<LinkId> via;

  while (!stack.empty()) {
    const std::size_t here = stack.back();
    if (here == ep.target) break;

    std::size_t best = npos;
    LinkId best_link{};
    std::uint64_t best_dist = std::numeric_limits<std::uint64_t>::max();
    NodeId best_id{};
    for (const Contact& c : graph.contacts_by_index(here)) {
      if (!adapted.contains(c.link)) continue;
      const std::size_t next = *graph.index_of(c.neighbor);
      if (visited[next]) continue;
      const std::uint64_t d = graph.distance_by_index(next, ep.target);
      // Contacts are sorted by (neighbor, link), so the first hit per
      // neighbor carries the lowest link id.
      if (best == npos || d < best_dist || (d == best_dist && c.neighbor < best_id)) {
        best = next;
        best_link = c.link;
        best_dist = d;
        best_id = c.neighbor;
      }
    }

    ++out.steps_taken;
    if (best == npos) {
      stack.pop_back();
      if (!via.empty()) via.pop_back();
      continue;
    }
    visited[best] = 1;
    stack.push_back(best);
    via.push_back(best_link);
  }

  if (stack.empty()) return out;

  out.status = RouteStatus::found;
  out.path.nodes.reserve(stack.size());
  for (std::size_t i : stack) out.path.nodes.push_back(graph.nodes()[i]);
  out.path.links = std::move(via);
  out.diameter = out.path.links.size();
  return out;
}

RoutingOutcome shortest_path_oracle(const BaseGraph& graph, const AdaptedLinkSet& adapted,
                                    NodeId source, NodeId target, std::span<const NodeId> avoid) {
  auto ep = resolve(graph, source, target, avoid);
  if (source == target) return trivial(source);

  RoutingOutcome out;
  if (ep.blocked[ep.source]) return out;

  const std::size_t count = graph.nodes().size();
  std::vector<std::size_t> parent(count, npos);
  std::vector<LinkId> parent_link(count);
  std::vector<char> seen = ep.blocked;
  std::deque<std::size_t> queue{ep.source};
  seen[ep.source] = 1;

  while (!queue.empty() && !seen[ep.target]) {
    const std::size_t here = queue.front();
    queue.pop_front();
    ++out.steps_taken;
    for (const Contact& c : graph.contacts_by_index(here)) {
      if (!adapted.contains(c.link)) continue;
      const std::size_t next = *graph.index_of(c.neighbor);
      if (seen[next]) continue;
      seen[next] = 1;
      parent[next] = here;
      parent_link[next] = c.link;
      queue.push_back(next);
    }
  }
  if (!seen[ep.target] || parent[ep.target] == npos) return out;

  std::vector<NodeId> nodes;
  std::vector<LinkId> links;
  for (std::size_t v = ep.target; v != ep.source; v = parent[v]) {
    nodes.push_back(graph.nodes()[v]);
    links.push_back(parent_link[v]);
  }
  nodes.push_back(source);
  out.status = RouteStatus::found;
  out.path.nodes.assign(nodes.rbegin(), nodes.rend());
  out.path.links.assign(links.rbegin(), links.rend());
  out.diameter = out.path.links.size();
  return out;
}

}  // namespace etopo
