#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "etopo/base_graph.hpp"
#include "etopo/overlay.hpp"

namespace etopo {

struct RoutingOutcome;

// Per-level thresholds Pr*_{L_l}, with a fallback for unlisted levels.
struct ThresholdPolicy {
  double default_threshold = 0.0;
  std::map<int, double> per_level;

  double threshold_for(int level) const;
  bool valid() const;

  // True when every threshold of this policy is >= the matching one of other.
  bool dominates(const ThresholdPolicy& other) const;

  friend bool operator==(const ThresholdPolicy&, const ThresholdPolicy&) = default;
};

// How p* is formed for a retained link: the link's measured probability, or
// the threshold constant of its level.
enum class PStarMode { measured, threshold };

const char* to_string(PStarMode mode);
PStarMode pstar_mode_from_string(const std::string& name);

struct AdaptOptions {
  PStarMode pstar_mode = PStarMode::measured;
  // Additive uniform noise in [-amplitude, amplitude] on the probability
  // estimate of each link, drawn per link from noise_seed. Off at 0.
  double noise_amplitude = 0.0;
  std::uint64_t noise_seed = 0;
};

struct PStarEntry {
  LinkId link{};
  NodeId x{};
  NodeId y{};
  int level = 1;
  double probability = 0.0;  // estimated Pr_{L_l}(x, y)
  double threshold = 0.0;
  double p_star = 0.0;
  bool retained = false;

  friend bool operator==(const PStarEntry&, const PStarEntry&) = default;
};

// The adapted link set S* together with p* for every connected pair.
class AdaptedLinkSet {
 public:
  AdaptedLinkSet() = default;
  explicit AdaptedLinkSet(std::vector<PStarEntry> entries);

  const std::vector<LinkId>& links() const { return links_; }
  const std::vector<PStarEntry>& entries() const { return entries_; }
  std::size_t size() const { return links_.size(); }

  bool contains(LinkId link) const;
  const PStarEntry* entry(LinkId link) const;
  double p_star(LinkId link) const;  // 0 for links that are not tracked
  // Largest p* over the links joining x and y, 0 when none.
  double p_star(NodeId x, NodeId y) const;

  friend bool operator==(const AdaptedLinkSet&, const AdaptedLinkSet&) = default;

 private:
  std::vector<PStarEntry> entries_;  // sorted by link id
  std::vector<LinkId> links_;        // retained, sorted
};

double estimated_probability(const EntangledLink& link, const AdaptOptions& options);

// p*(phi(x), phi(y)) for the link joining x and y (lowest level when several).
double updated_probability(const BaseGraph& graph, const OverlayNetwork& network, NodeId x,
                           NodeId y, const ThresholdPolicy& policy,
                           const AdaptOptions& options = {});

PStarEntry update_link(const BaseGraph& graph, const EntangledLink& link,
                       const ThresholdPolicy& policy, const AdaptOptions& options);

// Threshold filter over every link. The per-link updates run in parallel;
// the result does not depend on the thread count.
AdaptedLinkSet adapt(const BaseGraph& graph, const OverlayNetwork& network,
                     const ThresholdPolicy& policy, const AdaptOptions& options = {});

// Single-threaded reference for adapt().
AdaptedLinkSet adapt_serial(const BaseGraph& graph, const OverlayNetwork& network,
                            const ThresholdPolicy& policy, const AdaptOptions& options = {});

// The overlay network restricted to the links of S*.
OverlayNetwork restrict_to(const OverlayNetwork& network, const AdaptedLinkSet& adapted);

RoutingOutcome adapt_and_route(const BaseGraph& graph, const OverlayNetwork& network,
                               const ThresholdPolicy& policy, NodeId source, NodeId target,
                               std::uint64_t rng_seed, const AdaptOptions& options = {});

}  // namespace etopo
