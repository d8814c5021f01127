#include "etopo/assignment.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "assignment_model.hpp"

namespace etopo {

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::feasible: return "feasible";
    case SolveStatus::infeasible: return "infeasible";
  }
  return "unknown";
}

namespace detail {

Model::Model(const AssignmentInstance& instance) : instance_(&instance) {
  std::vector<PStarEntry> usable_entries;
  for (const auto& rs : instance.resource_sets) {
    const auto* link = instance.network.find_link(rs.link);
    if (link == nullptr || !instance.adapted.contains(rs.link) || rs.states.empty()) continue;
    UsableLink u;
    u.id = link->id;
    u.a = link->a;
    u.b = link->b;
    u.cost = 1.0 - instance.adapted.p_star(link->id);
    u.throughput = link->throughput;
    u.states = rs.states;
    links_.push_back(std::move(u));
    usable_entries.push_back(*instance.adapted.entry(link->id));
  }
  std::sort(links_.begin(), links_.end(),
            [](const UsableLink& l, const UsableLink& r) { return l.id < r.id; });
  usable_ = AdaptedLinkSet(std::move(usable_entries));

  for (std::size_t i = 0; i < links_.size(); ++i) {
    hops_[links_[i].a].push_back({i, links_[i].b});
    hops_[links_[i].b].push_back({i, links_[i].a});
  }

  for (const auto& set : instance.interference) {
    const auto li = link_index(set.resource.link);
    if (!li) continue;
    auto& pairs = conflict_pairs_[{*li, set.resource.state}];
    for (std::size_t i = 0; i < set.competing.size(); ++i) {
      for (std::size_t j = i + 1; j < set.competing.size(); ++j) {
        auto a = set.competing[i].demand;
        auto b = set.competing[j].demand;
        if (a == b) continue;
        pairs.insert({std::min(a, b), std::max(a, b)});
      }
    }
  }
}

std::optional<std::size_t> Model::link_index(LinkId id) const {
  auto it = std::lower_bound(links_.begin(), links_.end(), id,
                             [](const UsableLink& l, LinkId v) { return l.id < v; });
  if (it == links_.end() || it->id != id) return std::nullopt;
  return static_cast<std::size_t>(it - links_.begin());
}

const std::vector<Hop>& Model::hops(NodeId node) const {
  static const std::vector<Hop> none;
  auto it = hops_.find(node);
  return it == hops_.end() ? none : it->second;
}

bool Model::conflicts(std::size_t link, std::uint32_t state, std::size_t a, std::size_t b) const {
  auto it = conflict_pairs_.find({link, state});
  if (it == conflict_pairs_.end()) return false;
  return it->second.count({std::min(a, b), std::max(a, b)}) > 0;
}

std::optional<std::vector<std::uint32_t>> Model::assign_states(
    std::size_t link, const std::vector<std::size_t>& demands) const {
  const auto& states = links_[link].states;
  std::vector<std::uint32_t> chosen(demands.size());
  std::vector<std::size_t> cursor(demands.size(), 0);
  std::size_t i = 0;
  while (i < demands.size()) {
    bool placed = false;
    while (cursor[i] < states.size()) {
      const auto f = states[cursor[i]++];
      bool clash = false;
      for (std::size_t j = 0; j < i && !clash; ++j) {
        clash = chosen[j] == f && conflicts(link, f, demands[i], demands[j]);
      }
      if (!clash) {
        chosen[i] = f;
        placed = true;
        break;
      }
    }
    if (placed) {
      ++i;
      continue;
    }
    if (i == 0) return std::nullopt;
    cursor[i] = 0;
    --i;
  }
  return chosen;
}

}  // namespace detail

std::vector<ResourceSet> make_resource_sets(const OverlayNetwork& network,
                                            const AdaptedLinkSet& adapted) {
  std::vector<ResourceSet> out;
  for (const auto& l : network.links()) {
    if (!adapted.contains(l.id)) continue;
    ResourceSet rs{l.id, {}};
    for (int f = 0; f < l.resource_count; ++f) rs.states.push_back(static_cast<std::uint32_t>(f));
    out.push_back(std::move(rs));
  }
  return out;
}

std::vector<InterferenceSet> full_interference(const std::vector<Demand>& demands,
                                               const std::vector<ResourceSet>& resource_sets) {
  std::vector<InterferenceSet> out;
  if (demands.size() < 2) return out;
  std::vector<Competitor> everyone;
  for (std::size_t q = 0; q < demands.size(); ++q) everyone.push_back({demands[q].user, q});
  for (const auto& rs : resource_sets) {
    for (auto f : rs.states) out.push_back({{rs.link, f}, everyone});
  }
  return out;
}

AssignmentInstance make_instance(OverlayNetwork network, BaseGraph graph, AdaptedLinkSet adapted,
                                 std::vector<Demand> demands) {
  AssignmentInstance inst;
  inst.resource_sets = make_resource_sets(network, adapted);
  inst.interference = full_interference(demands, inst.resource_sets);
  inst.network = std::move(network);
  inst.graph = std::move(graph);
  inst.adapted = std::move(adapted);
  inst.demands = std::move(demands);
  return inst;
}

std::vector<std::string> validate_instance(const AssignmentInstance& instance) {
  std::vector<std::string> out;
  std::set<std::uint32_t> users;
  for (std::size_t q = 0; q < instance.demands.size(); ++q) {
    const auto& d = instance.demands[q];
    const auto tag = "demand " + std::to_string(q) + ": ";
    if (!users.insert(d.user).second) out.push_back(tag + "user " + std::to_string(d.user) + " has another demand");
    if (d.source == d.target) out.push_back(tag + "source equals target");
    if (!(d.rate >= 0.0)) out.push_back(tag + "rate must be nonnegative");
    for (NodeId n : {d.source, d.target}) {
      if (!instance.network.has_node(n)) out.push_back(tag + "node " + std::to_string(raw(n)) + " is not in the network");
      else if (!instance.graph.is_mapped(n)) out.push_back(tag + "node " + std::to_string(raw(n)) + " is not mapped");
    }
  }

  std::set<LinkId> seen_links;
  for (const auto& rs : instance.resource_sets) {
    const auto tag = "resource set of link " + std::to_string(raw(rs.link)) + ": ";
    const auto* link = instance.network.find_link(rs.link);
    if (link == nullptr) {
      out.push_back(tag + "link is not in the network");
      continue;
    }
    if (!instance.adapted.contains(rs.link)) out.push_back(tag + "link is not in S*");
    if (!seen_links.insert(rs.link).second) out.push_back(tag + "listed twice");
    if (rs.states.size() != static_cast<std::size_t>(std::max(link->resource_count, 0))) {
      out.push_back(tag + "holds " + std::to_string(rs.states.size()) + " states but resource_count is " +
                    std::to_string(link->resource_count));
    }
    std::set<std::uint32_t> ids(rs.states.begin(), rs.states.end());
    if (ids.size() != rs.states.size()) out.push_back(tag + "state ids repeat");
  }

  for (std::size_t i = 0; i < instance.interference.size(); ++i) {
    const auto& set = instance.interference[i];
    const auto tag = "interference set " + std::to_string(i) + ": ";
    auto rs = std::find_if(instance.resource_sets.begin(), instance.resource_sets.end(),
                           [&](const ResourceSet& r) { return r.link == set.resource.link; });
    if (rs == instance.resource_sets.end() ||
        std::find(rs->states.begin(), rs->states.end(), set.resource.state) == rs->states.end()) {
      out.push_back(tag + "resource state does not exist");
    }
    if (set.competing.size() < 2) out.push_back(tag + "needs at least two competing demands");
    for (const auto& c : set.competing) {
      if (c.demand >= instance.demands.size()) {
        out.push_back(tag + "demand " + std::to_string(c.demand) + " does not exist");
      } else if (instance.demands[c.demand].user != c.user) {
        out.push_back(tag + "demand " + std::to_string(c.demand) + " belongs to another user");
      }
    }
  }
  return out;
}

std::vector<InterferenceGrant> derive_grants(const AssignmentInstance& instance,
                                             const std::vector<StateAssignment>& c) {
  std::set<std::tuple<std::uint32_t, LinkId, std::uint32_t>> held;
  for (const auto& e : c) held.insert({e.user, e.link, e.state});
  std::set<InterferenceGrant> grants;
  for (const auto& set : instance.interference) {
    for (const auto& comp : set.competing) {
      if (held.count({comp.user, set.resource.link, set.resource.state}) > 0) {
        grants.insert({comp.user, comp.demand, set.resource.link, set.resource.state});
      }
    }
  }
  return {grants.begin(), grants.end()};
}

namespace {

const Demand* demand_of_user(const AssignmentInstance& instance, std::uint32_t user) {
  for (const auto& d : instance.demands) {
    if (d.user == user) return &d;
  }
  return nullptr;
}

const ResourceSet* resource_set(const AssignmentInstance& instance, LinkId link) {
  for (const auto& rs : instance.resource_sets) {
    if (rs.link == link) return &rs;
  }
  return nullptr;
}

void check_reference(const AssignmentInstance& instance, const StateAssignment& e) {
  const auto* rs = resource_set(instance, e.link);
  if (rs == nullptr || !instance.adapted.contains(e.link)) {
    throw Error(Errc::not_found,
                "assignment references link " + std::to_string(raw(e.link)) + " outside S*");
  }
  if (std::find(rs->states.begin(), rs->states.end(), e.state) == rs->states.end()) {
    throw Error(Errc::not_found, "assignment references state " + std::to_string(e.state) +
                                     " missing from link " + std::to_string(raw(e.link)));
  }
  if (demand_of_user(instance, e.user) == nullptr) {
    throw Error(Errc::not_found, "assignment references unknown user " + std::to_string(e.user));
  }
}

}  // namespace

double objective(const AssignmentInstance& instance, const AssignmentSolution& solution) {
  double zeta = 0.0;
  for (const auto& e : solution.c) {
    check_reference(instance, e);
    zeta += 1.0 - instance.adapted.p_star(e.link);
  }
  return zeta;
}

std::vector<CapacityViolation> check_capacity(const AssignmentInstance& instance,
                                              const AssignmentSolution& solution) {
  std::map<LinkId, double> load;
  for (const auto& e : solution.c) {
    check_reference(instance, e);
    load[e.link] += demand_of_user(instance, e.user)->rate;
  }
  std::vector<CapacityViolation> out;
  for (const auto& [link, value] : load) {
    const double throughput = instance.network.link(link).throughput;
    if (!detail::fits(value, throughput)) out.push_back({link, value, throughput});
  }
  return out;
}

int flow_imbalance(const AssignmentInstance& instance, const AssignmentSolution& solution,
                   NodeId node, std::uint32_t user) {
  if (!instance.network.has_node(node)) {
    throw Error(Errc::not_found, "node " + std::to_string(raw(node)) + " is not in the network");
  }
  if (demand_of_user(instance, user) == nullptr) {
    throw Error(Errc::not_found, "unknown user " + std::to_string(user));
  }
  int delta = 0;
  for (const auto& e : solution.c) {
    if (e.user != user) continue;
    const auto& link = instance.network.link(e.link);
    if (e.from == node) ++delta;
    if (link.other(e.from) == node) --delta;
  }
  return delta;
}

std::vector<InterferenceViolation> check_interference(const AssignmentInstance& instance,
                                                      const AssignmentSolution& solution) {
  std::vector<InterferenceViolation> out;
  for (const auto& set : instance.interference) {
    std::size_t granted = 0;
    for (const auto& comp : set.competing) {
      granted += static_cast<std::size_t>(std::count_if(
          solution.k.begin(), solution.k.end(), [&](const InterferenceGrant& g) {
            return g.demand == comp.demand && g.link == set.resource.link &&
                   g.state == set.resource.state;
          }));
    }
    if (granted > 1) out.push_back({set.resource, granted});
  }
  return out;
}

}  // namespace etopo
