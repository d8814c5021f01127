#pragma once

// Instance generators and brute-force oracles shared by the unit tests and
// the acceptance runner. The oracles deliberately avoid the library's
// search code.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "etopo/adaption.hpp"
#include "etopo/assignment.hpp"
#include "etopo/base_graph.hpp"
#include "etopo/harness.hpp"
#include "etopo/overlay.hpp"
#include "etopo/rng.hpp"
#include "etopo/routing.hpp"

namespace etest {

using Edge = std::pair<std::size_t, std::size_t>;

struct SimpleGraph {
  std::size_t vertices = 0;
  std::vector<Edge> edges;
};

etopo::ConflictGraph to_conflict_graph(const SimpleGraph& g);

// Every graph on 0..max_vertices vertices up to isomorphism.
std::vector<SimpleGraph> nonisomorphic_graphs(std::size_t max_vertices);

SimpleGraph random_graph(etopo::Rng& rng, std::size_t max_vertices);

// Tries all colors^V assignments.
bool brute_colorable(const SimpleGraph& g, std::size_t colors);

// Random network with its mapping onto a base-graph large enough to hold it.
struct Mapped {
  etopo::OverlayNetwork network;
  etopo::BaseGraph graph;
};

Mapped random_mapped(etopo::Rng& rng, std::uint32_t max_nodes, double max_density);

// Small instance for exhaustive checking: up to 4 nodes and 4 links, 1 to 3
// states per link, up to 3 demands and dyadic p*, rates and throughputs so
// objective sums are exact.
etopo::AssignmentInstance tiny_instance(etopo::Rng& rng);

// Random instance from the full pipeline with random interference sets.
etopo::AssignmentInstance pipeline_instance(etopo::Rng& rng);

// Instances where every link stores at least as many states as there are
// interfering demands, with throughput to spare.
etopo::AssignmentInstance trivial_case_instance(etopo::Rng& rng);

// Minimum objective over every binary assignment, or nullopt when none is
// feasible. Enumerates, for each user, every orientation of every link
// (unused, a->b, b->a) that conserves flow, then every combination of those
// patterns across users, then every choice of states on each link.
std::optional<double> brute_force_optimum(const etopo::AssignmentInstance& instance);

// Breadth-first hop distance over S*, avoiding no nodes.
std::optional<std::size_t> bfs_distance(const etopo::OverlayNetwork& network,
                                        const etopo::AdaptedLinkSet& adapted, etopo::NodeId s,
                                        etopo::NodeId t);

// Problems with a solver result: flow at every node for every served
// demand, interference, capacity and the path structure. Empty when sound.
std::vector<std::string> audit(const etopo::AssignmentInstance& instance,
                               const etopo::SolveResult& result);

// Flow conservation only: +1 at source, -1 at target, 0 elsewhere.
std::vector<std::string> audit_flow(const etopo::AssignmentInstance& instance,
                                    const etopo::SolveResult& result);

double product_probability(const etopo::EntangledLink& link);

}  // namespace etest
