#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <numeric>
#include <set>

namespace etest {

using namespace etopo;

etopo::ConflictGraph to_conflict_graph(const SimpleGraph& g) {
  ConflictGraph out;
  for (std::size_t v = 0; v < g.vertices; ++v) out.vertices.push_back("v" + std::to_string(v));
  out.edges = g.edges;
  return out;
}

namespace {

std::vector<Edge> all_pairs(std::size_t n) {
  std::vector<Edge> pairs;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
  }
  return pairs;
}

}  // namespace

std::vector<SimpleGraph> nonisomorphic_graphs(std::size_t max_vertices) {
  std::vector<SimpleGraph> out;
  for (std::size_t n = 0; n <= max_vertices; ++n) {
    const auto pairs = all_pairs(n);
    std::map<Edge, std::size_t> bit;
    for (std::size_t i = 0; i < pairs.size(); ++i) bit[pairs[i]] = i;
    std::vector<std::vector<std::size_t>> perms;
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), std::size_t{0});
    do {
      perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));

    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
      bool canonical = true;
      for (const auto& perm : perms) {
        std::uint64_t image = 0;
        for (std::size_t i = 0; i < pairs.size(); ++i) {
          if ((mask >> i & 1) == 0) continue;
          auto a = perm[pairs[i].first];
          auto b = perm[pairs[i].second];
          image |= std::uint64_t{1} << bit[{std::min(a, b), std::max(a, b)}];
        }
        if (image < mask) {
          canonical = false;
          break;
        }
      }
      if (!canonical) continue;
      SimpleGraph g;
      g.vertices = n;
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (mask >> i & 1) g.edges.push_back(pairs[i]);
      }
      out.push_back(std::move(g));
    }
  }
  return out;
}

SimpleGraph random_graph(etopo::Rng& rng, std::size_t max_vertices) {
  SimpleGraph g;
  g.vertices = 1 + rng.index(max_vertices);
  const double density = rng.uniform01();
  for (const auto& e : all_pairs(g.vertices)) {
    if (rng.uniform01() < density) g.edges.push_back(e);
  }
  return g;
}

bool brute_colorable(const SimpleGraph& g, std::size_t colors) {
  if (g.vertices == 0) return true;
  std::vector<std::size_t> c(g.vertices, 0);
  for (;;) {
    bool proper = std::none_of(g.edges.begin(), g.edges.end(),
                               [&](const Edge& e) { return c[e.first] == c[e.second]; });
    if (proper) return true;
    std::size_t i = 0;
    while (i < c.size() && ++c[i] == colors) c[i++] = 0;
    if (i == c.size()) return false;
  }
}

Mapped random_mapped(etopo::Rng& rng, std::uint32_t max_nodes, double max_density) {
  GeneratorParams p;
  p.nodes = 2 + static_cast<std::uint32_t>(rng.index(max_nodes - 1));
  const std::uint64_t pairs = std::uint64_t{p.nodes} * (p.nodes - 1) / 2;
  p.links = static_cast<std::uint64_t>(std::floor(rng.uniform01() * max_density * static_cast<double>(pairs)));
  p.level_weights = {1.0 + rng.uniform01(), rng.uniform01(), rng.uniform01()};
  p.swap_success = {0.3 + 0.5 * rng.uniform01(), 1.0};
  p.photon_loss = {0.0, 0.4 * rng.uniform01()};
  p.fidelity = {0.5 + 0.4 * rng.uniform01(), 1.0};
  p.throughput = {1.0, 3.0};
  p.resources_min = 1;
  p.resources_max = 3;

  Mapped m;
  m.network = generate_network(p, rng.next());
  const int k = 1 + static_cast<int>(rng.index(2));
  std::int64_t n = 2;
  while (std::pow(static_cast<double>(n), k) < p.nodes) ++n;
  n += static_cast<std::int64_t>(rng.index(4));
  m.graph = map_overlay(m.network, k, n, RandomPlacement{rng.next()});
  return m;
}

namespace {

const double dyadic[] = {1.0, 0.875, 0.75, 0.5, 0.25, 0.125};

std::vector<InterferenceSet> random_interference(etopo::Rng& rng, const AssignmentInstance& inst,
                                                 double chance) {
  std::vector<InterferenceSet> out;
  const auto d = inst.demands.size();
  if (d < 2) return out;
  for (const auto& rs : inst.resource_sets) {
    for (auto f : rs.states) {
      if (rng.uniform01() >= chance) continue;
      InterferenceSet set{{rs.link, f}, {}};
      for (std::size_t q = 0; q < d; ++q) {
        if (rng.index(3) != 0) set.competing.push_back({inst.demands[q].user, q});
      }
      if (set.competing.size() >= 2) out.push_back(std::move(set));
    }
  }
  return out;
}

std::vector<Demand> random_demands(etopo::Rng& rng, const OverlayNetwork& network, std::size_t max_count,
                                   const std::vector<double>& rates) {
  std::vector<Demand> out;
  const auto count = 1 + rng.index(max_count);
  const auto& nodes = network.nodes();
  for (std::uint32_t u = 0; u < count; ++u) {
    const auto s = rng.index(nodes.size());
    auto t = rng.index(nodes.size() - 1);
    if (t >= s) ++t;
    out.push_back({u, nodes[s], nodes[t], rates[rng.index(rates.size())]});
  }
  return out;
}

}  // namespace

etopo::AssignmentInstance tiny_instance(etopo::Rng& rng) {
  const auto v = static_cast<std::uint32_t>(2 + rng.index(3));
  auto pairs = all_pairs(v);
  const auto count = 1 + rng.index(std::min<std::size_t>(4, pairs.size()));
  std::vector<NodeId> nodes;
  for (std::uint32_t i = 0; i < v; ++i) nodes.push_back(NodeId{i});
  std::vector<EntangledLink> links;
  for (std::size_t i = 0; i < count; ++i) {
    std::swap(pairs[i], pairs[i + rng.index(pairs.size() - i)]);
    EntangledLink l;
    l.id = LinkId{static_cast<std::uint32_t>(i)};
    l.a = NodeId{static_cast<std::uint32_t>(pairs[i].first)};
    l.b = NodeId{static_cast<std::uint32_t>(pairs[i].second)};
    l.throughput = static_cast<double>(rng.index(4)) * 0.5 + 0.5;
    l.resource_count = 1 + static_cast<int>(rng.index(3));
    links.push_back(l);
  }
  OverlayNetwork network(nodes, links);

  ExplicitPlacement placement;
  for (auto n : nodes) placement.coords.emplace_back(n, LatticeCoord{{static_cast<std::int64_t>(raw(n))}});
  BaseGraph graph = map_overlay(network, 1, v, placement);

  std::vector<PStarEntry> entries;
  for (const auto& l : network.links()) {
    PStarEntry e;
    e.link = l.id;
    e.x = l.a;
    e.y = l.b;
    e.retained = rng.index(8) != 0;
    e.probability = dyadic[rng.index(std::size(dyadic))];
    e.p_star = e.retained ? e.probability : 0.0;
    entries.push_back(e);
  }
  AdaptedLinkSet adapted(entries);

  auto demands = random_demands(rng, network, 3, {0.5, 1.0});
  AssignmentInstance inst = make_instance(network, graph, adapted, demands);
  inst.interference = random_interference(rng, inst, 0.6);
  return inst;
}

etopo::AssignmentInstance pipeline_instance(etopo::Rng& rng) {
  auto m = random_mapped(rng, 7, 0.7);
  ThresholdPolicy policy;
  policy.default_threshold = 0.5 * rng.uniform01();
  AdaptOptions options;
  options.pstar_mode = rng.index(2) == 0 ? PStarMode::measured : PStarMode::threshold;
  auto adapted = adapt(m.graph, m.network, policy, options);
  auto demands = random_demands(rng, m.network, 3, {0.5, 1.0});
  AssignmentInstance inst = make_instance(m.network, m.graph, adapted, demands);
  if (rng.index(3) != 0) inst.interference = random_interference(rng, inst, 0.7);
  return inst;
}

etopo::AssignmentInstance trivial_case_instance(etopo::Rng& rng) {
  const auto m = static_cast<std::uint32_t>(1 + rng.index(4));  // |I|
  const NodeId hub{0};
  const NodeId exit{1};
  const NodeId far{m + 2};
  const auto decoys = static_cast<std::uint32_t>(rng.index(4));
  const auto total = m + 3 + decoys;
  const double rate = rng.index(2) == 0 ? 0.5 : 1.0;

  std::vector<NodeId> nodes;
  for (std::uint32_t i = 0; i < total; ++i) nodes.push_back(NodeId{i});
  std::vector<EntangledLink> links;
  std::set<std::pair<std::uint32_t, std::uint32_t>> used;
  auto add = [&](NodeId a, NodeId b, int states) {
    const std::pair key{std::min(raw(a), raw(b)), std::max(raw(a), raw(b))};
    if (a == b || !used.insert(key).second) return;
    EntangledLink l;
    l.id = LinkId{static_cast<std::uint32_t>(links.size())};
    l.a = a;
    l.b = b;
    l.swap_success = 0.5 + 0.5 * rng.uniform01();
    l.throughput = rate * m + static_cast<double>(rng.index(3));
    l.resource_count = states;
    links.push_back(l);
  };
  auto states = [&] { return static_cast<int>(m + rng.index(3)); };
  add(hub, exit, states());
  add(exit, far, states());
  for (std::uint32_t i = 0; i < m; ++i) add(NodeId{2 + i}, hub, states());
  for (std::uint32_t i = 0; i < decoys * 2; ++i) {
    add(NodeId{static_cast<std::uint32_t>(rng.index(total))}, NodeId{static_cast<std::uint32_t>(rng.index(total))},
        states());
  }
  OverlayNetwork network(nodes, links);
  const int k = 1 + static_cast<int>(rng.index(2));
  std::int64_t n = 2;
  while (std::pow(static_cast<double>(n), k) < total) ++n;
  BaseGraph graph = map_overlay(network, k, n + static_cast<std::int64_t>(rng.index(3)), RandomPlacement{rng.next()});
  auto adapted = adapt(graph, network, ThresholdPolicy{});

  std::vector<Demand> demands;
  for (std::uint32_t i = 0; i < m; ++i) {
    demands.push_back({i, NodeId{2 + i}, rng.index(2) == 0 ? exit : far, rate});
  }
  return make_instance(network, graph, adapted, demands);
}

namespace {

struct OracleLink {
  NodeId a{};
  NodeId b{};
  double cost = 0.0;
  double throughput = 0.0;
  std::vector<std::uint32_t> states;
};

}  // namespace

std::optional<double> brute_force_optimum(const etopo::AssignmentInstance& inst) {
  std::vector<OracleLink> links;
  std::vector<LinkId> ids;
  for (const auto& rs : inst.resource_sets) {
    if (rs.states.empty() || !inst.adapted.contains(rs.link)) continue;
    const auto& l = inst.network.link(rs.link);
    links.push_back({l.a, l.b, 1.0 - inst.adapted.p_star(rs.link), l.throughput, rs.states});
    ids.push_back(rs.link);
  }
  const auto users = inst.demands.size();
  if (users == 0) return 0.0;

  // Pairs of demands barred from sharing (link index, state).
  std::set<std::tuple<std::size_t, std::uint32_t, std::size_t, std::size_t>> barred;
  for (const auto& set : inst.interference) {
    const auto it = std::find(ids.begin(), ids.end(), set.resource.link);
    if (it == ids.end()) continue;
    const auto li = static_cast<std::size_t>(it - ids.begin());
    for (const auto& a : set.competing) {
      for (const auto& b : set.competing) {
        if (a.demand != b.demand) barred.insert({li, set.resource.state, a.demand, b.demand});
      }
    }
  }

  // Orientation patterns per demand: 0 unused, 1 a->b, 2 b->a.
  std::vector<std::vector<std::vector<int>>> patterns(users);
  std::size_t combos = 1;
  for (std::size_t q = 0; q < users; ++q) {
    const auto& d = inst.demands[q];
    std::vector<int> o(links.size(), 0);
    for (;;) {
      std::map<NodeId, int> net;
      for (std::size_t i = 0; i < links.size(); ++i) {
        if (o[i] == 0) continue;
        const NodeId from = o[i] == 1 ? links[i].a : links[i].b;
        const NodeId to = o[i] == 1 ? links[i].b : links[i].a;
        ++net[from];
        --net[to];
      }
      bool ok = true;
      for (NodeId n : inst.network.nodes()) {
        const int want = n == d.source ? 1 : n == d.target ? -1 : 0;
        if (net[n] != want) ok = false;
      }
      if (ok) patterns[q].push_back(o);
      std::size_t i = 0;
      while (i < o.size() && ++o[i] == 3) o[i++] = 0;
      if (i == o.size()) break;
    }
    if (patterns[q].empty()) return std::nullopt;
    combos *= patterns[q].size();
  }

  std::optional<double> best;
  std::vector<std::size_t> pick(users, 0);
  for (std::size_t c = 0; c < combos; ++c) {
    std::size_t rest = c;
    for (std::size_t q = 0; q < users; ++q) {
      pick[q] = rest % patterns[q].size();
      rest /= patterns[q].size();
    }
    bool feasible = true;
    double cost = 0.0;
    for (std::size_t i = 0; i < links.size() && feasible; ++i) {
      std::vector<std::size_t> on;
      double load = 0.0;
      for (std::size_t q = 0; q < users; ++q) {
        if (patterns[q][pick[q]][i] != 0) {
          on.push_back(q);
          load += inst.demands[q].rate;
          cost += links[i].cost;
        }
      }
      if (on.empty()) continue;
      if (load > links[i].throughput + 1e-9) {
        feasible = false;
        break;
      }
      // Any state choice with no barred pair sharing a state.
      const auto g = links[i].states.size();
      std::vector<std::size_t> s(on.size(), 0);
      bool found = false;
      for (;;) {
        bool clash = false;
        for (std::size_t x = 0; x < on.size() && !clash; ++x) {
          for (std::size_t y = x + 1; y < on.size() && !clash; ++y) {
            if (s[x] == s[y] && barred.count({i, links[i].states[s[x]], on[x], on[y]}) > 0) clash = true;
          }
        }
        if (!clash) {
          found = true;
          break;
        }
        std::size_t j = 0;
        while (j < s.size() && ++s[j] == g) s[j++] = 0;
        if (j == s.size()) break;
      }
      if (!found) feasible = false;
    }
    if (feasible && (!best || cost < *best)) best = cost;
  }
  return best;
}

std::optional<std::size_t> bfs_distance(const etopo::OverlayNetwork& network,
                                        const etopo::AdaptedLinkSet& adapted, etopo::NodeId s,
                                        etopo::NodeId t) {
  std::map<NodeId, std::size_t> dist{{s, 0}};
  std::deque<NodeId> queue{s};
  while (!queue.empty()) {
    const auto x = queue.front();
    queue.pop_front();
    if (x == t) return dist[x];
    for (const auto& l : network.links()) {
      if (!adapted.contains(l.id) || (l.a != x && l.b != x)) continue;
      const auto y = l.other(x);
      if (dist.emplace(y, dist[x] + 1).second) queue.push_back(y);
    }
  }
  return std::nullopt;
}

std::vector<std::string> audit_flow(const etopo::AssignmentInstance& inst, const etopo::SolveResult& r) {
  std::vector<std::string> out;
  for (auto q : r.served) {
    const auto& d = inst.demands[q];
    for (NodeId n : inst.network.nodes()) {
      const int want = n == d.source ? 1 : n == d.target ? -1 : 0;
      const int got = flow_imbalance(inst, r.solution, n, d.user);
      if (got != want) {
        out.push_back("user " + std::to_string(d.user) + " node " + std::to_string(raw(n)) + ": imbalance " +
                      std::to_string(got) + ", expected " + std::to_string(want));
      }
    }
  }
  return out;
}

std::vector<std::string> audit(const etopo::AssignmentInstance& inst, const etopo::SolveResult& r) {
  auto out = audit_flow(inst, r);
  for (const auto& v : check_interference(inst, r.solution)) {
    out.push_back("interference on link " + std::to_string(raw(v.resource.link)) + " state " +
                  std::to_string(v.resource.state));
  }
  if (r.ok()) {
    for (const auto& v : check_capacity(inst, r.solution)) {
      out.push_back("capacity on link " + std::to_string(raw(v.link)));
    }
    if (r.served.size() != inst.demands.size()) out.push_back("ok result leaves demands unserved");
    if (!r.zeta || *r.zeta != objective(inst, r.solution)) out.push_back("zeta differs from the objective");
  }
  if (r.solution.k != derive_grants(inst, r.solution.c)) out.push_back("K is not derived from C");
  std::set<std::uint32_t> served_users;
  for (auto q : r.served) served_users.insert(inst.demands[q].user);
  for (const auto& e : r.solution.c) {
    if (served_users.count(e.user) == 0) out.push_back("C entry for an unserved user");
    if (!inst.adapted.contains(e.link)) out.push_back("C entry on a link outside S*");
    const auto rs = std::find_if(inst.resource_sets.begin(), inst.resource_sets.end(),
                                 [&](const ResourceSet& s) { return s.link == e.link; });
    if (rs == inst.resource_sets.end() ||
        std::find(rs->states.begin(), rs->states.end(), e.state) == rs->states.end()) {
      out.push_back("C entry on a state outside the resource set");
    }
  }
  return out;
}

double product_probability(const etopo::EntangledLink& l) {
  return l.swap_success * (1.0 - l.photon_loss) * l.fidelity;
}

}  // namespace etest
