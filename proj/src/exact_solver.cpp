#include <algorithm>
#include <limits>
#include <set>
#include <string>

#include "assignment_model.hpp"
#include "etopo/assignment.hpp"

namespace etopo {

namespace {

struct CandidatePath {
  std::vector<NodeId> nodes;
  std::vector<std::size_t> links;  // Model link indices
  double cost = 0.0;
};

// Every simple source-target path over usable links, in DFS order with hops
// ascending by link id.
std::vector<CandidatePath> enumerate_paths(const detail::Model& model, const Demand& demand,
                                           std::size_t cap) {
  std::vector<CandidatePath> out;
  CandidatePath current;
  current.nodes.push_back(demand.source);
  std::set<NodeId> on_path{demand.source};

  auto dfs = [&](auto&& self, NodeId here) -> void {
    if (here == demand.target) {
      if (out.size() >= cap) {
        throw Error(Errc::too_large, "more than " + std::to_string(cap) +
                                         " candidate paths for a demand of user " +
                                         std::to_string(demand.user));
      }
      out.push_back(current);
      return;
    }
    for (const auto& hop : model.hops(here)) {
      if (on_path.count(hop.to) > 0) continue;
      on_path.insert(hop.to);
      current.nodes.push_back(hop.to);
      current.links.push_back(hop.link);
      current.cost += model.links()[hop.link].cost;
      self(self, hop.to);
      current.cost -= model.links()[hop.link].cost;
      current.links.pop_back();
      current.nodes.pop_back();
      on_path.erase(hop.to);
    }
  };
  dfs(dfs, demand.source);

  // Recompute costs in path order so equal paths carry equal sums.
  for (auto& p : out) {
    p.cost = 0.0;
    for (auto li : p.links) p.cost += model.links()[li].cost;
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const CandidatePath& l, const CandidatePath& r) { return l.cost < r.cost; });
  return out;
}

std::size_t variables_for(const detail::Model& model,
                          const std::vector<std::vector<CandidatePath>>& paths) {
  std::size_t vars = 0;
  for (const auto& candidates : paths) {
    std::set<std::size_t> links;
    for (const auto& p : candidates) links.insert(p.links.begin(), p.links.end());
    for (auto li : links) vars += model.links()[li].states.size();
  }
  return vars;
}

std::vector<std::vector<CandidatePath>> all_candidates(const detail::Model& model,
                                                       const ExactLimits& limits) {
  std::vector<std::vector<CandidatePath>> paths;
  for (const auto& d : model.instance().demands) {
    paths.push_back(enumerate_paths(model, d, limits.path_cap));
  }
  return paths;
}

class Search {
 public:
  Search(const detail::Model& model, std::vector<std::vector<CandidatePath>> paths, bool prune)
      : model_(model),
        paths_(std::move(paths)),
        prune_(prune),
        users_(model.links().size()),
        load_(model.links().size(), 0.0),
        choice_(paths_.size(), 0),
        best_choice_(paths_.size(), 0),
        suffix_min_(paths_.size() + 1, 0.0) {
    for (std::size_t q = paths_.size(); q-- > 0;) {
      suffix_min_[q] = suffix_min_[q + 1] + paths_[q].front().cost;
    }
  }

  bool run() {
    descend(0, 0.0);
    return found_;
  }

  const std::vector<std::size_t>& best_choice() const { return best_choice_; }
  const std::vector<std::vector<CandidatePath>>& paths() const { return paths_; }

 private:
  bool link_ok(std::size_t li) const {
    return detail::fits(load_[li], model_.links()[li].throughput) &&
           model_.assign_states(li, users_[li]).has_value();
  }

  void descend(std::size_t q, double cost) {
    if (prune_ && found_ && cost + suffix_min_[q] >= best_cost_) return;
    if (q == paths_.size()) {
      if (!prune_) {
        for (std::size_t li = 0; li < users_.size(); ++li) {
          if (!users_[li].empty() && !link_ok(li)) return;
        }
      }
      if (!found_ || cost < best_cost_) {
        found_ = true;
        best_cost_ = cost;
        best_choice_ = choice_;
      }
      return;
    }
    const double rate = model_.rate(q);
    for (std::size_t i = 0; i < paths_[q].size(); ++i) {
      const auto& p = paths_[q][i];
      for (auto li : p.links) {
        users_[li].push_back(q);
        load_[li] += rate;
      }
      bool ok = true;
      if (prune_) {
        for (auto li : p.links) {
          if (!link_ok(li)) {
            ok = false;
            break;
          }
        }
      }
      if (ok) {
        choice_[q] = i;
        descend(q + 1, cost + p.cost);
      }
      for (auto li : p.links) {
        users_[li].pop_back();
        load_[li] -= rate;
      }
    }
  }

  const detail::Model& model_;
  std::vector<std::vector<CandidatePath>> paths_;
  bool prune_;
  std::vector<std::vector<std::size_t>> users_;
  std::vector<double> load_;
  std::vector<std::size_t> choice_;
  std::vector<std::size_t> best_choice_;
  std::vector<double> suffix_min_;
  bool found_ = false;
  double best_cost_ = std::numeric_limits<double>::infinity();
};

}  // namespace

std::size_t count_variables(const AssignmentInstance& instance, const ExactLimits& limits) {
  detail::Model model(instance);
  return variables_for(model, all_candidates(model, limits));
}

SolveResult solve_exact(const AssignmentInstance& instance, const ExactLimits& limits) {
  detail::Model model(instance);
  auto paths = all_candidates(model, limits);

  SolveResult result;
  const std::size_t demand_count = instance.demands.size();
  if (demand_count == 0) {
    result.status = SolveStatus::optimal;
    result.zeta = 0.0;
    return result;
  }

  const auto vars = variables_for(model, paths);
  if (vars > limits.bnb_cap) {
    throw Error(Errc::too_large, "instance has " + std::to_string(vars) +
                                     " binary variables, above the exact-search cap of " +
                                     std::to_string(limits.bnb_cap));
  }

  bool any_empty = std::any_of(paths.begin(), paths.end(),
                               [](const auto& candidates) { return candidates.empty(); });
  if (any_empty) {
    for (std::size_t q = 0; q < demand_count; ++q) result.rejected.push_back(q);
    return result;
  }

  Search search(model, std::move(paths), vars > limits.exhaustive_cap);
  if (!search.run()) {
    for (std::size_t q = 0; q < demand_count; ++q) result.rejected.push_back(q);
    return result;
  }

  // Rebuild the chosen paths and their states.
  std::vector<std::vector<std::size_t>> users(model.links().size());
  for (std::size_t q = 0; q < demand_count; ++q) {
    for (auto li : search.paths()[q][search.best_choice()[q]].links) users[li].push_back(q);
  }
  std::vector<std::vector<std::uint32_t>> states(model.links().size());
  for (std::size_t li = 0; li < users.size(); ++li) {
    if (!users[li].empty()) states[li] = *model.assign_states(li, users[li]);
  }
  for (std::size_t q = 0; q < demand_count; ++q) {
    const auto& p = search.paths()[q][search.best_choice()[q]];
    for (std::size_t h = 0; h < p.links.size(); ++h) {
      const auto li = p.links[h];
      const auto pos = std::find(users[li].begin(), users[li].end(), q) - users[li].begin();
      result.solution.c.push_back({instance.demands[q].user, model.links()[li].id,
                                   states[li][static_cast<std::size_t>(pos)], p.nodes[h]});
    }
    result.served.push_back(q);
  }
  std::sort(result.solution.c.begin(), result.solution.c.end());
  result.solution.k = derive_grants(instance, result.solution.c);
  result.status = SolveStatus::optimal;
  result.zeta = objective(instance, result.solution);
  return result;
}

}  // namespace etopo
