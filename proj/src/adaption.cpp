#include "etopo/adaption.hpp"

#include <algorithm>
#include <string>

#include "etopo/rng.hpp"
#include "etopo/routing.hpp"

namespace etopo {

double ThresholdPolicy::threshold_for(int level) const {
  auto it = per_level.find(level);
  return it == per_level.end() ? default_threshold : it->second;
}

bool ThresholdPolicy::valid() const {
  auto ok = [](double v) { return v >= 0.0 && v <= 1.0; };
  return ok(default_threshold) &&
         std::all_of(per_level.begin(), per_level.end(), [&](const auto& kv) { return ok(kv.second); });
}

bool ThresholdPolicy::dominates(const ThresholdPolicy& other) const {
  if (default_threshold < other.default_threshold) return false;
  for (const auto& [level, t] : per_level) {
    if (t < other.threshold_for(level)) return false;
  }
  for (const auto& [level, t] : other.per_level) {
    if (threshold_for(level) < t) return false;
  }
  return true;
}

const char* to_string(PStarMode mode) {
  return mode == PStarMode::measured ? "measured" : "threshold";
}

PStarMode pstar_mode_from_string(const std::string& name) {
  if (name == "measured") return PStarMode::measured;
  if (name == "threshold") return PStarMode::threshold;
  throw Error(Errc::invalid_argument, "unknown pstar mode '" + name + "'");
}

AdaptedLinkSet::AdaptedLinkSet(std::vector<PStarEntry> entries) : entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end(),
            [](const PStarEntry& l, const PStarEntry& r) { return l.link < r.link; });
  for (const auto& e : entries_) {
    if (e.retained) links_.push_back(e.link);
  }
}

const PStarEntry* AdaptedLinkSet::entry(LinkId link) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), link,
                             [](const PStarEntry& e, LinkId v) { return e.link < v; });
  if (it == entries_.end() || it->link != link) return nullptr;
  return &*it;
}

bool AdaptedLinkSet::contains(LinkId link) const {
  return std::binary_search(links_.begin(), links_.end(), link);
}

double AdaptedLinkSet::p_star(LinkId link) const {
  const auto* e = entry(link);
  return e ? e->p_star : 0.0;
}

double AdaptedLinkSet::p_star(NodeId x, NodeId y) const {
  double best = 0.0;
  for (const auto& e : entries_) {
    if ((e.x == x && e.y == y) || (e.x == y && e.y == x)) best = std::max(best, e.p_star);
  }
  return best;
}

double estimated_probability(const EntangledLink& link, const AdaptOptions& options) {
  const double measured = link_existence_probability(link);
  if (options.noise_amplitude <= 0.0) return measured;
  Rng rng(derive_seed(options.noise_seed, raw(link.id)));
  const double noise = rng.uniform(-options.noise_amplitude, options.noise_amplitude);
  return std::clamp(measured + noise, 0.0, 1.0);
}

PStarEntry update_link(const BaseGraph& graph, const EntangledLink& link,
                       const ThresholdPolicy& policy, const AdaptOptions& options) {
  PStarEntry e;
  e.link = link.id;
  e.x = link.a;
  e.y = link.b;
  e.level = link.level;
  e.probability = estimated_probability(link, options);
  e.threshold = policy.threshold_for(link.level);
  e.retained = e.probability >= e.threshold;
  if (e.retained) {
    const double term = lattice_term(graph, link.a, link.b);
    const double target = options.pstar_mode == PStarMode::measured ? e.probability : e.threshold;
    const double correction = target - term;
    e.p_star = std::clamp(term + correction, 0.0, 1.0);
  }
  return e;
}

double updated_probability(const BaseGraph& graph, const OverlayNetwork& network, NodeId x,
                           NodeId y, const ThresholdPolicy& policy, const AdaptOptions& options) {
  const EntangledLink* best = nullptr;
  for (const auto* l : network.links_between(x, y)) {
    if (best == nullptr || l->level < best->level) best = l;
  }
  if (best == nullptr) {
    throw Error(Errc::not_connected, "no entangled link between nodes " + std::to_string(raw(x)) +
                                         " and " + std::to_string(raw(y)));
  }
  return update_link(graph, *best, policy, options).p_star;
}

namespace {

void check_inputs(const BaseGraph& graph, const OverlayNetwork& network,
                  const ThresholdPolicy& policy) {
  if (!policy.valid()) throw Error(Errc::invalid_argument, "thresholds must lie in [0, 1]");
  for (const auto& l : network.links()) {
    if (!graph.is_mapped(l.a) || !graph.is_mapped(l.b)) {
      throw Error(Errc::unmapped,
                  "link " + std::to_string(raw(l.id)) + " has an endpoint outside the base-graph");
    }
  }
}

}  // namespace

AdaptedLinkSet adapt(const BaseGraph& graph, const OverlayNetwork& network,
                     const ThresholdPolicy& policy, const AdaptOptions& options) {
  check_inputs(graph, network, policy);
  const auto& links = network.links();
  const auto count = static_cast<std::ptrdiff_t>(links.size());
  std::vector<PStarEntry> entries(links.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    entries[static_cast<std::size_t>(i)] =
        update_link(graph, links[static_cast<std::size_t>(i)], policy, options);
  }
  return AdaptedLinkSet(std::move(entries));
}

AdaptedLinkSet adapt_serial(const BaseGraph& graph, const OverlayNetwork& network,
                            const ThresholdPolicy& policy, const AdaptOptions& options) {
  check_inputs(graph, network, policy);
  std::vector<PStarEntry> entries;
  entries.reserve(network.links().size());
  for (const auto& l : network.links()) entries.push_back(update_link(graph, l, policy, options));
  return AdaptedLinkSet(std::move(entries));
}

OverlayNetwork restrict_to(const OverlayNetwork& network, const AdaptedLinkSet& adapted) {
  std::vector<EntangledLink> kept;
  for (const auto& l : network.links()) {
    if (adapted.contains(l.id)) kept.push_back(l);
  }
  return network.with_links(std::move(kept));
}

RoutingOutcome adapt_and_route(const BaseGraph& graph, const OverlayNetwork& network,
                               const ThresholdPolicy& policy, NodeId source, NodeId target,
                               std::uint64_t rng_seed, const AdaptOptions& options) {
  const auto adapted = adapt(graph, network, policy, options);
  return route(graph, adapted, source, target, rng_seed);
}

}  // namespace etopo
