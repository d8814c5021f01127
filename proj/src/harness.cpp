#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <sstream>

#include "etopo/harness.hpp"
#include "etopo/rng.hpp"

namespace etopo {

using io::json;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double x) {
  std::ostringstream out;
  out.precision(17);
  out << x;
  return out.str();
}

PlacementSpec placement_for(const Scenario& s, std::uint64_t seed) {
  if (s.base_graph.placement) return *s.base_graph.placement;
  if (s.base_graph.seed) return RandomPlacement{*s.base_graph.seed};
  return RandomPlacement{derive_seed(seed, Stream::placement)};
}

TrialRecord run_trial(const Scenario& s, const OverlayNetwork& base,
                      const std::vector<FailureEvent>& schedule, std::uint64_t trial) {
  TrialRecord rec;
  rec.trial = trial;
  rec.seed = trial_seed(s.seed, trial);

  OverlayNetwork network = base;
  for (const auto& event : schedule) {
    if (event.time > trial) break;
    network = apply_failure(network, event);
  }
  rec.links_total = network.links().size();

  auto t = Clock::now();
  BaseGraph graph = map_overlay(network, s.base_graph.k, s.base_graph.n, placement_for(s, rec.seed));
  rec.times.map = seconds_since(t);

  t = Clock::now();
  AdaptOptions options;
  options.pstar_mode = s.pstar_mode;
  options.noise_amplitude = s.noise_amplitude;
  options.noise_seed = derive_seed(rec.seed, Stream::noise);
  AdaptedLinkSet adapted = adapt(graph, network, s.thresholds, options);
  rec.links_adapted = adapted.size();
  rec.times.adapt = seconds_since(t);

  t = Clock::now();
  const auto routing_seed = derive_seed(rec.seed, Stream::routing);
  for (const auto& d : s.demands) {
    rec.routes.push_back(route(graph, adapted, d.source, d.target, routing_seed));
  }
  rec.times.route = seconds_since(t);

  t = Clock::now();
  rec.instance = make_instance(std::move(network), std::move(graph), std::move(adapted), s.demands);
  if (s.solver == SolverChoice::greedy) {
    rec.solver = "greedy";
    rec.result = solve_greedy(rec.instance, routing_seed);
  } else {
    try {
      rec.result = solve_exact(rec.instance, s.limits);
      rec.solver = "exact";
    } catch (const Error& e) {
      if (e.code() != Errc::too_large || s.solver == SolverChoice::exact) throw;
      rec.solver = "greedy";
      rec.result = solve_greedy(rec.instance, routing_seed);
    }
  }
  rec.times.assign = seconds_since(t);
  return rec;
}

std::string joined(const std::vector<RoutingOutcome>& routes, auto field) {
  std::string out;
  for (std::size_t i = 0; i < routes.size(); ++i) {
    if (i > 0) out += ';';
    out += field(routes[i]);
  }
  return out;
}

}  // namespace

std::vector<TrialRecord> run_scenario(const Scenario& scenario) {
  if (scenario.trials < 1) throw Error(Errc::config, "scenario.trials: expected at least 1 trial");
  const OverlayNetwork base = scenario_network(scenario);
  validate_scenario(scenario, base);

  auto schedule = scenario.failures;
  std::stable_sort(schedule.begin(), schedule.end(),
                   [](const FailureEvent& l, const FailureEvent& r) { return l.time < r.time; });

  const auto trials = static_cast<std::int64_t>(scenario.trials);
  std::vector<TrialRecord> records(static_cast<std::size_t>(trials));
  std::vector<std::exception_ptr> errors(records.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < trials; ++i) {
    try {
      records[static_cast<std::size_t>(i)] = run_trial(scenario, base, schedule, static_cast<std::uint64_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return records;
}

std::string metrics_csv(const std::vector<TrialRecord>& records) {
  std::ostringstream out;
  out << "trial,seed,links_total,links_adapted,demands,routes_found,route_status,route_diameter,"
         "route_steps,solver,status,zeta,served,rejected\n";
  for (const auto& r : records) {
    const auto found = std::count_if(r.routes.begin(), r.routes.end(), [](const auto& o) { return o.found(); });
    out << r.trial << ',' << r.seed << ',' << r.links_total << ',' << r.links_adapted << ','
        << r.routes.size() << ',' << found << ','
        << joined(r.routes, [](const RoutingOutcome& o) { return std::string(to_string(o.status)); }) << ','
        << joined(r.routes, [](const RoutingOutcome& o) { return std::to_string(o.diameter); }) << ','
        << joined(r.routes, [](const RoutingOutcome& o) { return std::to_string(o.steps_taken); }) << ','
        << r.solver << ',' << to_string(r.result.status) << ','
        << (r.result.zeta ? fmt(*r.result.zeta) : std::string()) << ',' << r.result.served.size() << ','
        << r.result.rejected.size() << '\n';
  }
  return out.str();
}

json metrics_json(const std::vector<TrialRecord>& records) {
  json out = json::array();
  for (const auto& r : records) {
    json routes = json::array();
    for (const auto& o : r.routes) {
      routes.push_back({{"status", to_string(o.status)}, {"diameter", o.diameter}, {"steps_taken", o.steps_taken}});
    }
    out.push_back({{"trial", r.trial},
                   {"seed", r.seed},
                   {"links_total", r.links_total},
                   {"links_adapted", r.links_adapted},
                   {"routes", routes},
                   {"solver", r.solver},
                   {"status", to_string(r.result.status)},
                   {"zeta", r.result.zeta ? json(*r.result.zeta) : json(nullptr)},
                   {"served", r.result.served.size()},
                   {"rejected", r.result.rejected.size()}});
  }
  return out;
}

json solutions_json(const std::vector<TrialRecord>& records) {
  json trials = json::array();
  for (const auto& r : records) {
    json routes = json::array();
    for (const auto& o : r.routes) routes.push_back(io::routing_to_json(o));
    trials.push_back({{"trial", r.trial},
                      {"seed", r.seed},
                      {"solver", r.solver},
                      {"routes", routes},
                      {"solution", io::solution_to_json(r.result)}});
  }
  return {{"trials", trials}};
}

std::string timings_csv(const std::vector<TrialRecord>& records) {
  std::ostringstream out;
  out << "trial,map_s,adapt_s,route_s,assign_s\n";
  for (const auto& r : records) {
    out << r.trial << ',' << fmt(r.times.map) << ',' << fmt(r.times.adapt) << ','
        << fmt(r.times.route) << ',' << fmt(r.times.assign) << '\n';
  }
  return out.str();
}

namespace {

struct ScalingGraph {
  BaseGraph graph;
  AdaptedLinkSet adapted;
  std::vector<std::pair<NodeId, NodeId>> queries;
};

ScalingGraph scaling_graph(const ScalingParams& p, std::int64_t n, std::size_t g) {
  const auto seed = derive_seed(derive_seed(p.seed, static_cast<std::uint64_t>(n)), g);
  auto lattice = kleinberg_lattice(p.k, n, derive_seed(seed, Stream::generation));
  ScalingGraph out;
  out.graph = map_overlay(lattice.network, p.k, n, lattice.placement);
  out.adapted = adapt(out.graph, lattice.network, ThresholdPolicy{});
  Rng rng(derive_seed(seed, Stream::routing));
  const auto count = lattice.network.nodes().size();
  while (out.queries.size() < p.queries) {
    const auto s = rng.index(count);
    const auto t = rng.index(count);
    if (s == t) continue;
    out.queries.emplace_back(lattice.network.nodes()[s], lattice.network.nodes()[t]);
  }
  return out;
}

std::vector<ScalingRow> scaling(const ScalingParams& p, bool parallel) {
  std::vector<ScalingRow> rows;
  for (auto n : p.sizes) {
    ScalingRow row;
    row.n = n;
    double steps = 0.0;
    double diameter = 0.0;
    for (std::size_t g = 0; g < p.graphs; ++g) {
      const auto sg = scaling_graph(p, n, g);
      const auto q = static_cast<std::int64_t>(sg.queries.size());
      std::vector<RoutingOutcome> outcomes(sg.queries.size());
#pragma omp parallel for schedule(dynamic, 16) if (parallel)
      for (std::int64_t i = 0; i < q; ++i) {
        const auto& [s, t] = sg.queries[static_cast<std::size_t>(i)];
        outcomes[static_cast<std::size_t>(i)] = route(sg.graph, sg.adapted, s, t, 0);
      }
      for (const auto& o : outcomes) {
        ++row.queries;
        if (!o.found()) continue;
        ++row.found;
        steps += static_cast<double>(o.steps_taken);
        diameter += static_cast<double>(o.diameter);
      }
    }
    if (row.found > 0) {
      row.mean_steps = steps / static_cast<double>(row.found);
      row.mean_diameter = diameter / static_cast<double>(row.found);
    }
    const double lg = std::log2(static_cast<double>(n));
    row.ratio = row.mean_steps / (lg * lg);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

std::vector<ScalingRow> routing_scaling(const ScalingParams& params) { return scaling(params, true); }

std::vector<ScalingRow> routing_scaling_serial(const ScalingParams& params) {
  return scaling(params, false);
}

std::string scaling_csv(const std::vector<ScalingRow>& rows) {
  std::ostringstream out;
  out << "n,queries,found,mean_steps,mean_diameter,steps_over_log2n_sq\n";
  for (const auto& r : rows) {
    out << r.n << ',' << r.queries << ',' << r.found << ',' << fmt(r.mean_steps) << ','
        << fmt(r.mean_diameter) << ',' << fmt(r.ratio) << '\n';
  }
  return out.str();
}

json scaling_json(const std::vector<ScalingRow>& rows) {
  json out = json::array();
  for (const auto& r : rows) {
    out.push_back({{"n", r.n},
                   {"queries", r.queries},
                   {"found", r.found},
                   {"mean_steps", r.mean_steps},
                   {"mean_diameter", r.mean_diameter},
                   {"steps_over_log2n_sq", r.ratio}});
  }
  return out;
}

}  // namespace etopo
