#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "etopo/overlay.hpp"
#include "etopo/types.hpp"

namespace etopo {

struct LatticeCoord {
  std::vector<std::int64_t> coords;

  std::size_t dimension() const { return coords.size(); }
  friend bool operator==(const LatticeCoord&, const LatticeCoord&) = default;
  friend auto operator<=>(const LatticeCoord&, const LatticeCoord&) = default;
};

// L1 (Manhattan) distance on the flat lattice, no wraparound.
std::uint64_t l1_distance(const LatticeCoord& a, const LatticeCoord& b);

struct Contact {
  NodeId neighbor{};
  LinkId link{};
};

struct ExplicitPlacement {
  std::vector<std::pair<NodeId, LatticeCoord>> coords;

  friend bool operator==(const ExplicitPlacement&, const ExplicitPlacement&) = default;
};

// Uniform random injective placement drawn from a seeded stream.
struct RandomPlacement {
  std::uint64_t seed = 0;

  friend bool operator==(const RandomPlacement&, const RandomPlacement&) = default;
};

using PlacementSpec = std::variant<ExplicitPlacement, RandomPlacement>;

// The k-dimensional n-size base-graph G^k holding the map phi of overlay
// nodes and the entangled contacts inherited from the overlay links.
class BaseGraph {
 public:
  BaseGraph() = default;

  int dimension() const { return k_; }
  std::int64_t size() const { return n_; }
  const std::vector<NodeId>& nodes() const { return nodes_; }

  bool is_mapped(NodeId node) const { return index_of(node).has_value(); }
  LatticeCoord coord(NodeId node) const;
  std::span<const Contact> contacts(NodeId node) const;

  std::uint64_t distance(NodeId x, NodeId y) const;

  // Dense index in [0, nodes().size()), for callers that keep per-node arrays.
  std::optional<std::size_t> index_of(NodeId node) const;
  std::size_t checked_index(NodeId node) const;
  std::uint64_t distance_by_index(std::size_t i, std::size_t j) const;
  std::span<const Contact> contacts_by_index(std::size_t i) const {
    return {contacts_.data() + offsets_[i], contacts_.data() + offsets_[i + 1]};
  }

  ExplicitPlacement placement() const;

 private:
  friend BaseGraph map_overlay(const OverlayNetwork&, int, std::int64_t, const PlacementSpec&);

  int k_ = 0;
  std::int64_t n_ = 0;
  std::vector<NodeId> nodes_;
  std::vector<std::int64_t> coords_;  // nodes_.size() * k_, row-major
  std::vector<std::size_t> offsets_;  // CSR offsets into contacts_
  std::vector<Contact> contacts_;
};

BaseGraph map_overlay(const OverlayNetwork& network, int k, std::int64_t n,
                      const PlacementSpec& placement);

// H_n: sum of L1 distances from phi(node) to each distinct entangled contact.
double normalizing_term(const BaseGraph& graph, NodeId node);

struct ConnectionProbability {
  NodeId x{};
  NodeId y{};
  LinkId link{};
  double p = 0.0;
  double lattice_term = 0.0;  // d^-k / H_n, with H_n taken at x
  double correction = 0.0;    // c_{phi(x),phi(y)}
};

// d(phi(x), phi(y))^-k / H_n(x).
double lattice_term(const BaseGraph& graph, NodeId x, NodeId y);

ConnectionProbability connection_probability(const BaseGraph& graph, const EntangledLink& link,
                                             NodeId from);

// When several levels join x and y, the lowest-level link is used.
ConnectionProbability connection_probability(const BaseGraph& graph,
                                             const OverlayNetwork& network, NodeId x, NodeId y);

}  // namespace etopo
