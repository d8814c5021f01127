#include "etopo/overlay.hpp"

#include <algorithm>
#include <map>
#include <tuple>
#include <utility>

namespace etopo {

double link_existence_probability(const EntangledLink& link) {
  return link.swap_success * (1.0 - link.photon_loss) * link.fidelity;
}

std::uint64_t hop_distance(int level) {
  if (level < 1 || level > 64) {
    throw Error(Errc::invalid_level, "entanglement level must be in [1, 64], got " +
                                         std::to_string(level));
  }
  return std::uint64_t{1} << (level - 1);
}

OverlayNetwork::OverlayNetwork(std::vector<NodeId> nodes, std::vector<EntangledLink> links)
    : nodes_(std::move(nodes)), links_(std::move(links)) {
  std::sort(nodes_.begin(), nodes_.end());
  std::stable_sort(links_.begin(), links_.end(),
                   [](const EntangledLink& l, const EntangledLink& r) { return l.id < r.id; });
}

bool OverlayNetwork::has_node(NodeId id) const {
  return std::binary_search(nodes_.begin(), nodes_.end(), id);
}

const EntangledLink* OverlayNetwork::find_link(LinkId id) const {
  auto it = std::lower_bound(links_.begin(), links_.end(), id,
                             [](const EntangledLink& l, LinkId v) { return l.id < v; });
  if (it == links_.end() || it->id != id) return nullptr;
  return &*it;
}

const EntangledLink& OverlayNetwork::link(LinkId id) const {
  if (const auto* l = find_link(id)) return *l;
  throw Error(Errc::not_found, "no link with id " + std::to_string(raw(id)));
}

std::vector<const EntangledLink*> OverlayNetwork::links_between(NodeId x, NodeId y) const {
  std::vector<const EntangledLink*> out;
  for (const auto& l : links_) {
    if (l.joins(x, y)) out.push_back(&l);
  }
  return out;
}

bool OverlayNetwork::is_retired(LinkId id) const {
  return std::binary_search(retired_.begin(), retired_.end(), id);
}

OverlayNetwork OverlayNetwork::with_links(std::vector<EntangledLink> links) const {
  OverlayNetwork out(nodes_, std::move(links));
  out.retired_ = retired_;
  return out;
}

OverlayNetwork remove_link(const OverlayNetwork& network, LinkId id) {
  OverlayNetwork out = network;
  std::erase_if(out.links_, [id](const EntangledLink& l) { return l.id == id; });
  auto pos = std::lower_bound(out.retired_.begin(), out.retired_.end(), id);
  if (pos == out.retired_.end() || *pos != id) out.retired_.insert(pos, id);
  return out;
}

const char* to_string(FailureKind kind) {
  switch (kind) {
    case FailureKind::remove_link: return "remove-link";
    case FailureKind::degrade_swap: return "degrade-swap";
    case FailureKind::degrade_loss: return "degrade-loss";
    case FailureKind::degrade_fidelity: return "degrade-fidelity";
  }
  return "unknown";
}

FailureKind failure_kind_from_string(const std::string& name) {
  for (auto kind : {FailureKind::remove_link, FailureKind::degrade_swap, FailureKind::degrade_loss,
                    FailureKind::degrade_fidelity}) {
    if (name == to_string(kind)) return kind;
  }
  throw Error(Errc::invalid_argument, "unknown failure kind '" + name + "'");
}

namespace {

void degrade(EntangledLink& link, FailureKind kind, double magnitude) {
  const double keep = 1.0 - magnitude;
  switch (kind) {
    case FailureKind::degrade_swap: link.swap_success *= keep; break;
    case FailureKind::degrade_fidelity: link.fidelity *= keep; break;
    case FailureKind::degrade_loss: link.photon_loss = 1.0 - (1.0 - link.photon_loss) * keep; break;
    case FailureKind::remove_link: break;
  }
}

}  // namespace

OverlayNetwork apply_failure(const OverlayNetwork& network, const FailureEvent& event) {
  if (!(event.magnitude >= 0.0 && event.magnitude <= 1.0)) {
    throw Error(Errc::invalid_argument, "failure magnitude must be in [0, 1]");
  }

  std::vector<LinkId> targets;
  if (const auto* link_id = std::get_if<LinkId>(&event.target)) {
    if (network.find_link(*link_id) == nullptr) {
      if (event.kind == FailureKind::remove_link && network.is_retired(*link_id)) return network;
      throw Error(Errc::not_found, "failure target link " + std::to_string(raw(*link_id)) +
                                       " does not exist");
    }
    targets.push_back(*link_id);
  } else {
    const NodeId node = std::get<NodeId>(event.target);
    if (!network.has_node(node)) {
      throw Error(Errc::not_found,
                  "failure target node " + std::to_string(raw(node)) + " does not exist");
    }
    for (const auto& l : network.links()) {
      if (l.a == node || l.b == node) targets.push_back(l.id);
    }
  }

  if (event.kind == FailureKind::remove_link) {
    OverlayNetwork out = network;
    for (LinkId id : targets) out = remove_link(out, id);
    return out;
  }

  std::vector<EntangledLink> links = network.links();
  for (auto& l : links) {
    if (std::binary_search(targets.begin(), targets.end(), l.id)) {
      degrade(l, event.kind, event.magnitude);
    }
  }
  return network.with_links(std::move(links));
}

namespace {

bool in_unit(double v) { return v >= 0.0 && v <= 1.0; }

}  // namespace

std::vector<Violation> validate(const OverlayNetwork& network) {
  std::vector<Violation> out;
  const auto& nodes = network.nodes();
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    if (nodes[i] == nodes[i - 1]) {
      out.push_back({"duplicate-node", "node id appears more than once", {raw(nodes[i])}});
    }
  }

  const auto& links = network.links();
  for (std::size_t i = 1; i < links.size(); ++i) {
    if (links[i].id == links[i - 1].id) {
      out.push_back({"duplicate-link-id", "link id appears more than once", {raw(links[i].id)}});
    }
  }

  std::map<std::tuple<NodeId, NodeId, int>, std::vector<std::uint32_t>> by_key;
  for (const auto& l : links) {
    const auto id = raw(l.id);
    if (!network.has_node(l.a) || !network.has_node(l.b)) {
      out.push_back({"unknown-endpoint", "link references a node that is not in the network", {id}});
    }
    if (l.a == l.b) {
      out.push_back({"self-loop", "link endpoints must be distinct", {id}});
    }
    if (l.level < 1) {
      out.push_back({"invalid-level", "level must be at least 1", {id}});
    }
    if (!in_unit(l.swap_success) || !in_unit(l.photon_loss) || !in_unit(l.fidelity)) {
      out.push_back({"probability-range",
                     "swap_success, photon_loss and fidelity must lie in [0, 1]", {id}});
    }
    if (!(l.throughput >= 0.0)) {
      out.push_back({"negative-throughput", "throughput must be nonnegative", {id}});
    }
    if (l.resource_count < 0) {
      out.push_back({"negative-resource-count", "resource_count must be nonnegative", {id}});
    }
    const auto lo = std::min(l.a, l.b);
    const auto hi = std::max(l.a, l.b);
    by_key[{lo, hi, l.level}].push_back(id);
  }
  for (const auto& [key, ids] : by_key) {
    if (ids.size() > 1) {
      out.push_back({"duplicate-pair-level", "more than one link for the same node pair and level",
                     ids});
    }
  }
  return out;
}

}  // namespace etopo
