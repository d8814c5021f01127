#pragma once

#include <cstdint>
#include <initializer_list>
#include <utility>
#include <vector>

#include "etopo/adaption.hpp"
#include "etopo/assignment.hpp"
#include "etopo/base_graph.hpp"
#include "etopo/overlay.hpp"

namespace th {

using namespace etopo;

inline EntangledLink link(std::uint32_t id, std::uint32_t a, std::uint32_t b, int level = 1,
                          double swap = 1.0, double loss = 0.0, double fidelity = 1.0,
                          double throughput = 1.0, int states = 1) {
  EntangledLink l;
  l.id = LinkId{id};
  l.a = NodeId{a};
  l.b = NodeId{b};
  l.level = level;
  l.swap_success = swap;
  l.photon_loss = loss;
  l.fidelity = fidelity;
  l.throughput = throughput;
  l.resource_count = states;
  return l;
}

inline std::vector<NodeId> nodes(std::uint32_t count) {
  std::vector<NodeId> out;
  for (std::uint32_t i = 0; i < count; ++i) out.push_back(NodeId{i});
  return out;
}

// Node i at coordinate (i) on a line.
inline ExplicitPlacement on_line(const OverlayNetwork& network) {
  ExplicitPlacement p;
  for (NodeId n : network.nodes()) p.coords.emplace_back(n, LatticeCoord{{static_cast<std::int64_t>(raw(n))}});
  return p;
}

inline ExplicitPlacement at(std::initializer_list<std::pair<std::uint32_t, std::vector<std::int64_t>>> coords) {
  ExplicitPlacement p;
  for (const auto& [n, c] : coords) p.coords.emplace_back(NodeId{n}, LatticeCoord{c});
  return p;
}

// Network with every link probability 1, mapped on a line, S* = S.
struct Line {
  OverlayNetwork network;
  BaseGraph graph;
  AdaptedLinkSet adapted;
};

inline Line on_line(std::uint32_t count, std::vector<EntangledLink> links) {
  Line l;
  l.network = OverlayNetwork(nodes(count), std::move(links));
  l.graph = map_overlay(l.network, 1, std::max<std::int64_t>(count, 2), on_line(l.network));
  l.adapted = adapt(l.graph, l.network, ThresholdPolicy{});
  return l;
}

inline std::vector<NodeId> ids(std::initializer_list<std::uint32_t> raw_ids) {
  std::vector<NodeId> out;
  for (auto i : raw_ids) out.push_back(NodeId{i});
  return out;
}

}  // namespace th
