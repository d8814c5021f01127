#include "etopo/base_graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <string>
#include <unordered_set>

#include "etopo/rng.hpp"

namespace etopo {

std::uint64_t l1_distance(const LatticeCoord& a, const LatticeCoord& b) {
  if (a.dimension() != b.dimension()) {
    throw Error(Errc::dimension_mismatch, "cannot measure distance between a " +
                                              std::to_string(a.dimension()) + "-d and a " +
                                              std::to_string(b.dimension()) + "-d coordinate");
  }
  std::uint64_t d = 0;
  for (std::size_t i = 0; i < a.coords.size(); ++i) {
    const auto diff = a.coords[i] - b.coords[i];
    d += static_cast<std::uint64_t>(diff < 0 ? -diff : diff);
  }
  return d;
}

std::optional<std::size_t> BaseGraph::index_of(NodeId node) const {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), node);
  if (it == nodes_.end() || *it != node) return std::nullopt;
  return static_cast<std::size_t>(it - nodes_.begin());
}

std::size_t BaseGraph::checked_index(NodeId node) const {
  if (auto i = index_of(node)) return *i;
  throw Error(Errc::unmapped, "node " + std::to_string(raw(node)) + " is not mapped");
}

LatticeCoord BaseGraph::coord(NodeId node) const {
  const auto i = checked_index(node);
  const auto k = static_cast<std::size_t>(k_);
  return LatticeCoord{{coords_.begin() + static_cast<std::ptrdiff_t>(i * k),
                       coords_.begin() + static_cast<std::ptrdiff_t>((i + 1) * k)}};
}

std::span<const Contact> BaseGraph::contacts(NodeId node) const {
  return contacts_by_index(checked_index(node));
}

std::uint64_t BaseGraph::distance_by_index(std::size_t i, std::size_t j) const {
  const auto k = static_cast<std::size_t>(k_);
  const std::int64_t* a = coords_.data() + i * k;
  const std::int64_t* b = coords_.data() + j * k;
  std::uint64_t d = 0;
  for (std::size_t c = 0; c < k; ++c) {
    const auto diff = a[c] - b[c];
    d += static_cast<std::uint64_t>(diff < 0 ? -diff : diff);
  }
  return d;
}

std::uint64_t BaseGraph::distance(NodeId x, NodeId y) const {
  return distance_by_index(checked_index(x), checked_index(y));
}

ExplicitPlacement BaseGraph::placement() const {
  ExplicitPlacement out;
  out.coords.reserve(nodes_.size());
  for (NodeId node : nodes_) out.coords.emplace_back(node, coord(node));
  return out;
}

namespace {

// n^k, or nullopt when it does not fit in 62 bits.
std::optional<std::uint64_t> lattice_cells(int k, std::int64_t n) {
  constexpr std::uint64_t limit = std::uint64_t{1} << 62;
  std::uint64_t cells = 1;
  for (int i = 0; i < k; ++i) {
    if (cells > limit / static_cast<std::uint64_t>(n)) return std::nullopt;
    cells *= static_cast<std::uint64_t>(n);
  }
  return cells;
}

void decode_cell(std::uint64_t cell, int k, std::int64_t n, std::int64_t* out) {
  for (int d = 0; d < k; ++d) {
    out[d] = static_cast<std::int64_t>(cell % static_cast<std::uint64_t>(n));
    cell /= static_cast<std::uint64_t>(n);
  }
}

std::vector<std::uint64_t> draw_cells(std::size_t count, std::uint64_t cells, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::uint64_t> out;
  out.reserve(count);
  if (cells <= 4 * static_cast<std::uint64_t>(count) && cells <= (std::uint64_t{1} << 26)) {
    std::vector<std::uint64_t> all(cells);
    std::iota(all.begin(), all.end(), std::uint64_t{0});
    for (std::size_t i = 0; i < count; ++i) {
      const auto j = i + rng.index(cells - i);
      std::swap(all[i], all[j]);
      out.push_back(all[i]);
    }
    return out;
  }
  std::unordered_set<std::uint64_t> taken;
  taken.reserve(count * 2);
  while (out.size() < count) {
    const auto cell = rng.index(cells);
    if (taken.insert(cell).second) out.push_back(cell);
  }
  return out;
}

}  // namespace

BaseGraph map_overlay(const OverlayNetwork& network, int k, std::int64_t n,
                      const PlacementSpec& placement) {
  if (k < 1) throw Error(Errc::invalid_argument, "base-graph dimension k must be at least 1");
  if (n < 2) throw Error(Errc::invalid_argument, "base-graph size n must be at least 2");

  const auto cells = lattice_cells(k, n);
  const std::size_t count = network.nodes().size();
  if (cells && *cells < count) {
    throw Error(Errc::too_small_lattice, "a " + std::to_string(k) + "-dimensional lattice of size " +
                                             std::to_string(n) + " has " + std::to_string(*cells) +
                                             " cells, fewer than " + std::to_string(count) +
                                             " nodes");
  }

  BaseGraph g;
  g.k_ = k;
  g.n_ = n;
  g.nodes_ = network.nodes();
  g.nodes_.erase(std::unique(g.nodes_.begin(), g.nodes_.end()), g.nodes_.end());
  const auto ku = static_cast<std::size_t>(k);
  g.coords_.assign(g.nodes_.size() * ku, 0);

  if (const auto* expl = std::get_if<ExplicitPlacement>(&placement)) {
    std::vector<bool> seen(g.nodes_.size(), false);
    std::set<std::vector<std::int64_t>> used;
    for (const auto& [node, c] : expl->coords) {
      const auto idx = g.index_of(node);
      if (!idx) {
        throw Error(Errc::placement,
                    "placement names node " + std::to_string(raw(node)) + " not in the network");
      }
      if (c.dimension() != ku) {
        throw Error(Errc::placement, "placement of node " + std::to_string(raw(node)) + " has " +
                                         std::to_string(c.dimension()) + " coordinates, expected " +
                                         std::to_string(k));
      }
      for (auto v : c.coords) {
        if (v < 0 || v >= n) {
          throw Error(Errc::placement,
                      "placement of node " + std::to_string(raw(node)) + " is outside the lattice");
        }
      }
      if (seen[*idx]) {
        throw Error(Errc::placement, "node " + std::to_string(raw(node)) + " is placed twice");
      }
      if (!used.insert(c.coords).second) {
        throw Error(Errc::placement,
                    "node " + std::to_string(raw(node)) + " collides with another node's position");
      }
      seen[*idx] = true;
      std::copy(c.coords.begin(), c.coords.end(),
                g.coords_.begin() + static_cast<std::ptrdiff_t>(*idx * ku));
    }
    for (std::size_t i = 0; i < seen.size(); ++i) {
      if (!seen[i]) {
        throw Error(Errc::placement,
                    "node " + std::to_string(raw(g.nodes_[i])) + " has no placement");
      }
    }
  } else {
    if (!cells) {
      throw Error(Errc::placement, "lattice is too large for random placement");
    }
    const auto seed = std::get<RandomPlacement>(placement).seed;
    const auto drawn = draw_cells(g.nodes_.size(), *cells, seed);
    for (std::size_t i = 0; i < drawn.size(); ++i) {
      decode_cell(drawn[i], k, n, g.coords_.data() + i * ku);
    }
  }

  // CSR contact lists, each sorted by (neighbor, link).
  std::vector<std::size_t> degree(g.nodes_.size(), 0);
  for (const auto& l : network.links()) {
    const auto a = g.index_of(l.a);
    const auto b = g.index_of(l.b);
    if (!a || !b) {
      throw Error(Errc::unmapped,
                  "link " + std::to_string(raw(l.id)) + " references a node outside the network");
    }
    ++degree[*a];
    ++degree[*b];
  }
  g.offsets_.assign(g.nodes_.size() + 1, 0);
  for (std::size_t i = 0; i < degree.size(); ++i) g.offsets_[i + 1] = g.offsets_[i] + degree[i];
  g.contacts_.resize(g.offsets_.back());
  std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& l : network.links()) {
    const auto a = *g.index_of(l.a);
    const auto b = *g.index_of(l.b);
    g.contacts_[fill[a]++] = Contact{l.b, l.id};
    g.contacts_[fill[b]++] = Contact{l.a, l.id};
  }
  for (std::size_t i = 0; i < g.nodes_.size(); ++i) {
    std::sort(g.contacts_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i]),
              g.contacts_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i + 1]),
              [](const Contact& l, const Contact& r) {
                return std::pair(l.neighbor, l.link) < std::pair(r.neighbor, r.link);
              });
  }
  return g;
}

double normalizing_term(const BaseGraph& graph, NodeId node) {
  const auto i = graph.checked_index(node);
  const auto contacts = graph.contacts_by_index(i);
  if (contacts.empty()) {
    throw Error(Errc::no_contacts,
                "node " + std::to_string(raw(node)) + " has no entangled contacts");
  }
  double sum = 0.0;
  // Contacts are sorted by neighbor, so repeated neighbors are adjacent.
  for (std::size_t c = 0; c < contacts.size(); ++c) {
    if (c > 0 && contacts[c].neighbor == contacts[c - 1].neighbor) continue;
    sum += static_cast<double>(graph.distance_by_index(i, graph.checked_index(contacts[c].neighbor)));
  }
  return sum;
}

double lattice_term(const BaseGraph& graph, NodeId x, NodeId y) {
  const auto d = static_cast<double>(graph.distance(x, y));
  return std::pow(d, -static_cast<double>(graph.dimension())) / normalizing_term(graph, x);
}

ConnectionProbability connection_probability(const BaseGraph& graph, const EntangledLink& link,
                                             NodeId from) {
  if (from != link.a && from != link.b) {
    throw Error(Errc::not_connected, "node " + std::to_string(raw(from)) +
                                         " is not an endpoint of link " +
                                         std::to_string(raw(link.id)));
  }
  const NodeId to = link.other(from);
  ConnectionProbability out;
  out.x = from;
  out.y = to;
  out.link = link.id;
  out.lattice_term = lattice_term(graph, from, to);
  out.correction = link_existence_probability(link) - out.lattice_term;
  out.p = std::clamp(out.lattice_term + out.correction, 0.0, 1.0);
  return out;
}

ConnectionProbability connection_probability(const BaseGraph& graph,
                                             const OverlayNetwork& network, NodeId x, NodeId y) {
  const EntangledLink* best = nullptr;
  for (const auto* l : network.links_between(x, y)) {
    if (best == nullptr || l->level < best->level) best = l;
  }
  if (best == nullptr) {
    throw Error(Errc::not_connected, "no entangled link between nodes " +
                                         std::to_string(raw(x)) + " and " +
                                         std::to_string(raw(y)));
  }
  return connection_probability(graph, *best, x);
}

}  // namespace etopo
