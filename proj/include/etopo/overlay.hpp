#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "etopo/types.hpp"

namespace etopo {

// An L_l-level entangled link E(x,y) of the overlay network.
struct EntangledLink {
  LinkId id{};
  NodeId a{};
  NodeId b{};
  int level = 1;
  double swap_success = 1.0;  // Pr(S)
  double photon_loss = 0.0;   // Pr(L)
  double fidelity = 1.0;      // F
  double throughput = 0.0;    // Q^(F)(E), states per second
  int resource_count = 1;     // g, stored entangled states

  bool joins(NodeId x, NodeId y) const { return (a == x && b == y) || (a == y && b == x); }
  NodeId other(NodeId x) const { return x == a ? b : a; }

  friend bool operator==(const EntangledLink&, const EntangledLink&) = default;
};

// Pr(S) * (1 - Pr(L)) * F.
double link_existence_probability(const EntangledLink& link);

// Hop distance spanned by an L_l link under the doubling architecture, 2^(l-1).
std::uint64_t hop_distance(int level);

// The overlay network N = (V, S). Nodes are kept sorted by id and links by
// link id. Construction does not validate; call validate() for that.
class OverlayNetwork {
 public:
  OverlayNetwork() = default;
  OverlayNetwork(std::vector<NodeId> nodes, std::vector<EntangledLink> links);

  const std::vector<NodeId>& nodes() const { return nodes_; }
  const std::vector<EntangledLink>& links() const { return links_; }

  bool has_node(NodeId id) const;
  const EntangledLink* find_link(LinkId id) const;
  const EntangledLink& link(LinkId id) const;  // throws not_found

  // Links between x and y of any level, ascending by link id.
  std::vector<const EntangledLink*> links_between(NodeId x, NodeId y) const;

  // Ids of links removed by failures. Removing one again is a no-op.
  const std::vector<LinkId>& retired() const { return retired_; }
  bool is_retired(LinkId id) const;

  // Copy keeping only the listed links; retired ids are carried over.
  OverlayNetwork with_links(std::vector<EntangledLink> links) const;

  friend bool operator==(const OverlayNetwork&, const OverlayNetwork&) = default;

 private:
  friend OverlayNetwork remove_link(const OverlayNetwork&, LinkId);

  std::vector<NodeId> nodes_;
  std::vector<EntangledLink> links_;
  std::vector<LinkId> retired_;
};

enum class FailureKind { remove_link, degrade_swap, degrade_loss, degrade_fidelity };

const char* to_string(FailureKind kind);
FailureKind failure_kind_from_string(const std::string& name);

// A node target applies the event to every link incident to that node.
using FailureTarget = std::variant<LinkId, NodeId>;

struct FailureEvent {
  FailureTarget target{};
  FailureKind kind = FailureKind::remove_link;
  double magnitude = 1.0;
  std::uint64_t time = 0;

  friend bool operator==(const FailureEvent&, const FailureEvent&) = default;
};

// remove-link drops the link. degrade-swap and degrade-fidelity scale the
// attribute by (1 - magnitude); degrade-loss scales the transmission factor
// (1 - photon_loss) by (1 - magnitude). Every degrade kind therefore scales
// the existence probability by exactly (1 - magnitude).
OverlayNetwork apply_failure(const OverlayNetwork& network, const FailureEvent& event);

struct Violation {
  std::string kind;
  std::string detail;
  std::vector<std::uint32_t> ids;
};

std::vector<Violation> validate(const OverlayNetwork& network);

}  // namespace etopo
