#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "etopo/adaption.hpp"
#include "etopo/base_graph.hpp"
#include "etopo/overlay.hpp"

namespace etopo {

// Demand of user U_k for entanglement between source and target.
struct Demand {
  std::uint32_t user = 0;
  NodeId source{};
  NodeId target{};
  double rate = 0.0;  // Q^(F)(U_k)

  friend bool operator==(const Demand&, const Demand&) = default;
};

// L_h: the entangled states |psi_0> .. |psi_{g-1}> stored on link h.
struct ResourceSet {
  LinkId link{};
  std::vector<std::uint32_t> states;

  friend bool operator==(const ResourceSet&, const ResourceSet&) = default;
};

struct ResourceState {
  LinkId link{};
  std::uint32_t state = 0;

  friend bool operator==(const ResourceState&, const ResourceState&) = default;
  friend auto operator<=>(const ResourceState&, const ResourceState&) = default;
};

struct Competitor {
  std::uint32_t user = 0;
  std::size_t demand = 0;  // index into AssignmentInstance::demands

  friend bool operator==(const Competitor&, const Competitor&) = default;
};

// Demands contending for one resource state; at most one may hold it.
struct InterferenceSet {
  ResourceState resource;
  std::vector<Competitor> competing;

  friend bool operator==(const InterferenceSet&, const InterferenceSet&) = default;
};

// Resource states are shared freely unless an interference set says
// otherwise. Each demand belongs to a distinct user.
struct AssignmentInstance {
  OverlayNetwork network;
  BaseGraph graph;
  AdaptedLinkSet adapted;
  std::vector<Demand> demands;
  std::vector<ResourceSet> resource_sets;
  std::vector<InterferenceSet> interference;
};

// C^f_{k,h} = 1, with the node the user's flow leaves through link h.
struct StateAssignment {
  std::uint32_t user = 0;
  LinkId link{};
  std::uint32_t state = 0;
  NodeId from{};

  friend bool operator==(const StateAssignment&, const StateAssignment&) = default;
  friend auto operator<=>(const StateAssignment&, const StateAssignment&) = default;
};

// K^f_{k,q} = 1: demand q of user k holds contended resource state f of link h.
struct InterferenceGrant {
  std::uint32_t user = 0;
  std::size_t demand = 0;
  LinkId link{};
  std::uint32_t state = 0;

  friend bool operator==(const InterferenceGrant&, const InterferenceGrant&) = default;
  friend auto operator<=>(const InterferenceGrant&, const InterferenceGrant&) = default;
};

struct AssignmentSolution {
  std::vector<StateAssignment> c;
  std::vector<InterferenceGrant> k;

  friend bool operator==(const AssignmentSolution&, const AssignmentSolution&) = default;
};

enum class SolveStatus { optimal, feasible, infeasible };

const char* to_string(SolveStatus status);

struct SolveResult {
  SolveStatus status = SolveStatus::infeasible;
  AssignmentSolution solution;  // partial for an infeasible greedy run
  std::vector<std::size_t> served;
  std::vector<std::size_t> rejected;
  std::optional<double> zeta;  // set when every demand is served

  bool ok() const { return status != SolveStatus::infeasible; }
};

// ---- instance construction ------------------------------------------------

// One resource set per link of S*, sized by the link's resource_count.
std::vector<ResourceSet> make_resource_sets(const OverlayNetwork& network,
                                            const AdaptedLinkSet& adapted);

// Every resource state of every usable link is contended by all demands.
std::vector<InterferenceSet> full_interference(const std::vector<Demand>& demands,
                                               const std::vector<ResourceSet>& resource_sets);

AssignmentInstance make_instance(OverlayNetwork network, BaseGraph graph, AdaptedLinkSet adapted,
                                 std::vector<Demand> demands);

// Structural problems with the instance, empty when well formed.
std::vector<std::string> validate_instance(const AssignmentInstance& instance);

// The K grants implied by C for the instance's interference sets.
std::vector<InterferenceGrant> derive_grants(const AssignmentInstance& instance,
                                             const std::vector<StateAssignment>& c);

// ---- objective and constraints --------------------------------------------

// zeta(C) = sum over C entries of (1 - p*_h).
double objective(const AssignmentInstance& instance, const AssignmentSolution& solution);

struct CapacityViolation {
  LinkId link{};
  double load = 0.0;
  double throughput = 0.0;
};

std::vector<CapacityViolation> check_capacity(const AssignmentInstance& instance,
                                              const AssignmentSolution& solution);

// Outgoing minus incoming assigned states of `user` at `node`.
int flow_imbalance(const AssignmentInstance& instance, const AssignmentSolution& solution,
                   NodeId node, std::uint32_t user);

struct InterferenceViolation {
  ResourceState resource;
  std::size_t granted = 0;
};

std::vector<InterferenceViolation> check_interference(const AssignmentInstance& instance,
                                                      const AssignmentSolution& solution);

// ---- solvers ---------------------------------------------------------------

struct ExactLimits {
  std::size_t exhaustive_cap = 12;  // binary variables searched without pruning
  std::size_t bnb_cap = 40;         // binary variables searched with branch and bound
  std::size_t path_cap = 4096;      // candidate paths per demand

  friend bool operator==(const ExactLimits&, const ExactLimits&) = default;
};

// Number of C variables that can be nonzero: for each demand, the states of
// every link lying on at least one of its candidate paths.
std::size_t count_variables(const AssignmentInstance& instance, const ExactLimits& limits = {});

// Minimum-zeta assignment serving every demand, or infeasible. Throws
// too_large when the instance exceeds the limits.
SolveResult solve_exact(const AssignmentInstance& instance, const ExactLimits& limits = {});

// Interfering-demand assignment with spill into alternate resource sets.
SolveResult solve_greedy(const AssignmentInstance& instance, std::uint64_t rng_seed = 0);

// ---- graph of conflicts ----------------------------------------------------

struct ConflictGraph {
  std::vector<std::string> vertices;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // first < second, sorted, unique
  std::size_t k_star = 0;

  friend bool operator==(const ConflictGraph&, const ConflictGraph&) = default;
};

// Sorts edges, orients them (first < second) and drops duplicates. Throws on
// self-loops or out-of-range endpoints.
ConflictGraph normalized(ConflictGraph graph);

// Vertices are the demands' entangled states; an edge joins two of them when
// they contend for a common resource state. k_star counts the states that
// contend for anything.
ConflictGraph build_conflict_graph(const AssignmentInstance& instance);

enum class ColoringStatus { colored, infeasible, unknown };

const char* to_string(ColoringStatus status);

struct ColoringResult {
  ColoringStatus status = ColoringStatus::unknown;
  std::vector<std::size_t> color;  // per vertex, in [0, colors)
};

inline constexpr std::size_t exact_coloring_cap = 20;

// Exact search up to exact_coloring_cap vertices, largest-degree-first
// greedy beyond (which reports unknown when it runs out of colors).
ColoringResult color_graph(const ConflictGraph& graph, std::size_t colors);

bool is_proper_coloring(const ConflictGraph& graph, const std::vector<std::size_t>& color,
                        std::size_t colors);

// An assignment instance that is feasible iff `graph` is `colors`-colorable:
// one demand per vertex, all routed through a hub link with `colors` states,
// and each edge contends for every one of those states.
AssignmentInstance reduction_from_coloring(const ConflictGraph& graph, std::size_t colors);

}  // namespace etopo
