#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <vector>

#include "assignment_model.hpp"
#include "etopo/assignment.hpp"
#include "etopo/routing.hpp"

namespace etopo {

namespace {

struct Taken {
  std::size_t link = 0;
  std::uint32_t state = 0;
  NodeId from{};
};

// Interfering-demand assignment at intermediate nodes. A demand walks its
// routed path claiming one resource state per link; when a resource set is
// exhausted at node x, the demand spills into the resource set of another
// link at x and is re-routed from that link's far endpoint.
class Greedy {
 public:
  Greedy(const detail::Model& model, std::uint64_t seed)
      : model_(model), seed_(seed), holders_(model.links().size()), load_(model.links().size(), 0.0) {}

  bool admit(std::size_t q) {
    const auto& d = model_.instance().demands[q];
    const auto& graph = model_.instance().graph;
    const auto base = route(graph, model_.usable_set(), d.source, d.target, seed_);
    if (!base.found()) return false;

    std::vector<NodeId> prefix{d.source};
    std::vector<Taken> taken;
    budget_ = 64 * (model_.links().size() + 1);
    if (!walk(q, base.path, prefix, taken, std::nullopt)) {
      release(q, taken);
      return false;
    }
    claimed_[q] = std::move(taken);
    return true;
  }

  const std::vector<Taken>& claimed(std::size_t q) const { return claimed_.at(q); }

 private:
  std::optional<std::uint32_t> free_state(std::size_t q, std::size_t li) const {
    const auto& link = model_.links()[li];
    if (!detail::fits(load_[li] + model_.rate(q), link.throughput)) return std::nullopt;
    for (auto f : link.states) {
      bool clash = std::any_of(holders_[li].begin(), holders_[li].end(), [&](const auto& h) {
        return h.second == f && model_.conflicts(li, f, q, h.first);
      });
      if (!clash) return f;
    }
    return std::nullopt;
  }

  void take(std::size_t q, std::size_t li, std::uint32_t f, NodeId from, std::vector<Taken>& taken) {
    holders_[li].emplace_back(q, f);
    load_[li] += model_.rate(q);
    taken.push_back({li, f, from});
  }

  void release(std::size_t q, std::vector<Taken>& taken, std::size_t keep = 0) {
    while (taken.size() > keep) {
      const auto t = taken.back();
      taken.pop_back();
      auto& h = holders_[t.link];
      h.erase(std::find(h.begin(), h.end(), std::pair(q, t.state)));
      load_[t.link] -= model_.rate(q);
    }
  }

  bool walk(std::size_t q, const Path& path, std::vector<NodeId>& prefix, std::vector<Taken>& taken,
            std::optional<std::size_t> arrived_via) {
    for (std::size_t i = 0; i < path.links.size(); ++i) {
      const NodeId x = path.nodes[i];
      const auto li = *model_.link_index(path.links[i]);
      if (auto f = free_state(q, li)) {
        take(q, li, *f, x, taken);
        prefix.push_back(path.nodes[i + 1]);
        arrived_via = li;
        continue;
      }
      return spill(q, x, li, arrived_via, prefix, taken);
    }
    return true;
  }

  bool spill(std::size_t q, NodeId x, std::size_t exhausted, std::optional<std::size_t> back,
             std::vector<NodeId>& prefix, std::vector<Taken>& taken) {
    const auto& d = model_.instance().demands[q];
    std::vector<detail::Hop> alternates;
    for (const auto& hop : model_.hops(x)) {
      if (hop.link == exhausted || (back && hop.link == *back)) continue;
      if (std::find(prefix.begin(), prefix.end(), hop.to) != prefix.end()) continue;
      alternates.push_back(hop);
    }
    std::stable_sort(alternates.begin(), alternates.end(), [&](const auto& l, const auto& r) {
      return model_.links()[l.link].cost < model_.links()[r.link].cost;
    });

    for (const auto& alt : alternates) {
      if (budget_ == 0) return false;
      --budget_;
      const auto f = free_state(q, alt.link);
      if (!f) continue;

      const auto mark = taken.size();
      const auto prefix_size = prefix.size();
      const auto onward = alt.to == d.target
                              ? RoutingOutcome{RouteStatus::found, Path{{alt.to}, {}}, 0, 0}
                              : route(model_.instance().graph, model_.usable_set(), alt.to,
                                      d.target, seed_, prefix);
      if (!onward.found()) continue;

      take(q, alt.link, *f, x, taken);
      prefix.push_back(alt.to);
      if (walk(q, onward.path, prefix, taken, alt.link)) return true;
      release(q, taken, mark);
      prefix.resize(prefix_size);
    }
    return false;
  }

  const detail::Model& model_;
  std::uint64_t seed_;
  std::vector<std::vector<std::pair<std::size_t, std::uint32_t>>> holders_;
  std::vector<double> load_;
  std::map<std::size_t, std::vector<Taken>> claimed_;
  std::size_t budget_ = 0;
};

}  // namespace

SolveResult solve_greedy(const AssignmentInstance& instance, std::uint64_t rng_seed) {
  detail::Model model(instance);
  const auto& demands = instance.demands;

  // Admission order: larger rates first, then lower user index.
  std::vector<std::size_t> order(demands.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
    if (demands[l].rate != demands[r].rate) return demands[l].rate > demands[r].rate;
    return demands[l].user < demands[r].user;
  });

  Greedy greedy(model, rng_seed);
  SolveResult result;
  for (auto q : order) {
    if (greedy.admit(q)) {
      result.served.push_back(q);
      for (const auto& t : greedy.claimed(q)) {
        result.solution.c.push_back({demands[q].user, model.links()[t.link].id, t.state, t.from});
      }
    } else {
      result.rejected.push_back(q);
    }
  }
  std::sort(result.served.begin(), result.served.end());
  std::sort(result.rejected.begin(), result.rejected.end());
  std::sort(result.solution.c.begin(), result.solution.c.end());
  result.solution.k = derive_grants(instance, result.solution.c);
  if (result.rejected.empty()) {
    result.status = SolveStatus::feasible;
    result.zeta = objective(instance, result.solution);
  }
  return result;
}

}  // namespace etopo
