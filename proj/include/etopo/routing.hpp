#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "etopo/adaption.hpp"
#include "etopo/base_graph.hpp"

namespace etopo {

struct Path {
  std::vector<NodeId> nodes;
  std::vector<LinkId> links;  // links[i] joins nodes[i] and nodes[i + 1]

  friend bool operator==(const Path&, const Path&) = default;
};

enum class RouteStatus { found, unreachable };

const char* to_string(RouteStatus status);

struct RoutingOutcome {
  RouteStatus status = RouteStatus::unreachable;
  Path path;                    // empty unless found
  std::size_t diameter = 0;     // edges on the returned path
  std::size_t steps_taken = 0;  // forwarding moves plus backtracks

  bool found() const { return status == RouteStatus::found; }
  friend bool operator==(const RoutingOutcome&, const RoutingOutcome&) = default;
};

// Greedy decentralized forwarding over S*: each hop goes to the unvisited
// contact closest (L1) to the target, lowest NodeId on ties. Dead ends
// backtrack. Nodes in `avoid` are never entered.
//
// The forwarding rule is fully deterministic, so rng_seed does not change
// the outcome; it is accepted so callers can pass the routing stream.
RoutingOutcome route(const BaseGraph& graph, const AdaptedLinkSet& adapted, NodeId source,
                     NodeId target, std::uint64_t rng_seed,
                     std::span<const NodeId> avoid = {});

// Breadth-first minimum-hop path over S*.
RoutingOutcome shortest_path_oracle(const BaseGraph& graph, const AdaptedLinkSet& adapted,
                                    NodeId source, NodeId target,
                                    std::span<const NodeId> avoid = {});

}  // namespace etopo
