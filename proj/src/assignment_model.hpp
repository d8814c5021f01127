#pragma once

// Internal view of an AssignmentInstance shared by the solvers.

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "etopo/assignment.hpp"

namespace etopo::detail {

struct UsableLink {
  LinkId id{};
  NodeId a{};
  NodeId b{};
  double cost = 1.0;  // 1 - p*
  double throughput = 0.0;
  std::vector<std::uint32_t> states;
};

struct Hop {
  std::size_t link = 0;  // index into Model::links()
  NodeId to{};
};

// Capacity comparisons allow for summation-order rounding.
inline bool fits(double load, double throughput) { return load <= throughput + 1e-9; }

class Model {
 public:
  explicit Model(const AssignmentInstance& instance);

  const AssignmentInstance& instance() const { return *instance_; }
  const std::vector<UsableLink>& links() const { return links_; }
  std::optional<std::size_t> link_index(LinkId id) const;
  const std::vector<Hop>& hops(NodeId node) const;
  double rate(std::size_t demand) const { return instance_->demands[demand].rate; }

  // True when demands a and b appear together in an interference set on
  // state `state` of link `link`.
  bool conflicts(std::size_t link, std::uint32_t state, std::size_t a, std::size_t b) const;

  // S* restricted to links that carry at least one resource state.
  const AdaptedLinkSet& usable_set() const { return usable_; }

  // One state per listed demand on `link` such that no two conflicting
  // demands share a state, or nullopt when none exists. Lowest states first.
  std::optional<std::vector<std::uint32_t>> assign_states(
      std::size_t link, const std::vector<std::size_t>& demands) const;

 private:
  const AssignmentInstance* instance_;
  std::vector<UsableLink> links_;
  std::map<NodeId, std::vector<Hop>> hops_;
  std::map<std::pair<std::size_t, std::uint32_t>, std::set<std::pair<std::size_t, std::size_t>>>
      conflict_pairs_;
  AdaptedLinkSet usable_;
};

}  // namespace etopo::detail
