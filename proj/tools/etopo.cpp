// etopo: command line front end for the entanglement topology toolkit.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "etopo/adaption.hpp"
#include "etopo/assignment.hpp"
#include "etopo/harness.hpp"
#include "etopo/io.hpp"
#include "etopo/rng.hpp"
#include "etopo/routing.hpp"

namespace {

using etopo::Errc;
using etopo::Error;
using etopo::io::json;

enum Exit : int { ok = 0, config_error = 1, infeasible_only = 2, internal_error = 3 };

struct Common {
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string format = "json";
  std::string pstar_mode;
};

// --seed wins over ETOPO_SEED, which wins over the config file.
std::uint64_t resolve_seed(const Common& c, std::uint64_t config_seed) {
  if (c.seed) return *c.seed;
  if (const char* env = std::getenv("ETOPO_SEED"); env != nullptr && *env != '\0') {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used, 0);
      if (used != std::string(env).size()) throw std::invalid_argument(env);
      return v;
    } catch (const std::exception&) {
      throw Error(Errc::config, std::string("ETOPO_SEED: not an unsigned integer: '") + env + "'");
    }
  }
  return config_seed;
}

void emit(const Common& c, const std::string& text) {
  if (c.out.empty() || c.out == "-") {
    std::cout << text;
  } else {
    etopo::io::write_text_file(c.out, text);
  }
}

void add_common(CLI::App* app, Common& c, bool with_format = true) {
  app->add_option("--seed", c.seed, "Root seed (overrides ETOPO_SEED and config)");
  app->add_option("--out", c.out, "Output path, stdout when omitted");
  if (with_format) {
    app->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  }
}

void add_pstar(CLI::App* app, Common& c) {
  app->add_option("--pstar-mode", c.pstar_mode, "p* reported per retained link")
      ->check(CLI::IsMember({"measured", "threshold"}));
}

struct GraphArgs {
  std::string network;
  int k = 1;
  std::int64_t n = 0;
  std::string placement;
  std::optional<std::uint64_t> placement_seed;
  std::string thresholds;
  std::optional<double> threshold;
};

void add_graph(CLI::App* app, GraphArgs& g) {
  app->add_option("--network", g.network, "Network JSON file")->required();
  app->add_option("--k", g.k, "Base-graph dimension")->check(CLI::Range(1, 16));
  app->add_option("--n", g.n, "Base-graph size (default: smallest lattice that fits)");
  app->add_option("--placement", g.placement, "Placement JSON file");
  app->add_option("--placement-seed", g.placement_seed, "Seed for random placement");
  app->add_option("--thresholds", g.thresholds, "Threshold policy JSON file");
  app->add_option("--threshold", g.threshold, "Single threshold for every level")->check(CLI::Range(0.0, 1.0));
}

struct Loaded {
  etopo::OverlayNetwork network;
  etopo::BaseGraph graph;
  etopo::ThresholdPolicy policy;
  etopo::AdaptOptions options;
};

Loaded load_graph(const GraphArgs& g, const Common& c) {
  Loaded out;
  out.network = etopo::io::network_from_json(etopo::io::read_json_file(g.network), g.network);
  std::int64_t n = g.n;
  if (n == 0) {
    const auto count = static_cast<double>(out.network.nodes().size());
    n = 2;
    while (std::pow(static_cast<double>(n), g.k) < count) ++n;
  }
  etopo::PlacementSpec spec;
  if (!g.placement.empty()) {
    if (g.placement_seed) throw Error(Errc::config, "--placement and --placement-seed are exclusive");
    spec = etopo::io::placement_from_json(etopo::io::read_json_file(g.placement), g.placement);
  } else {
    spec = etopo::RandomPlacement{g.placement_seed.value_or(
        etopo::derive_seed(resolve_seed(c, 0), etopo::Stream::placement))};
  }
  out.graph = etopo::map_overlay(out.network, g.k, n, spec);
  if (!g.thresholds.empty()) {
    if (g.threshold) throw Error(Errc::config, "--thresholds and --threshold are exclusive");
    out.policy = etopo::io::thresholds_from_json(etopo::io::read_json_file(g.thresholds), g.thresholds);
  } else if (g.threshold) {
    out.policy.default_threshold = *g.threshold;
  }
  if (!c.pstar_mode.empty()) out.options.pstar_mode = etopo::pstar_mode_from_string(c.pstar_mode);
  return out;
}

std::string network_csv(const etopo::OverlayNetwork& network) {
  std::ostringstream out;
  out.precision(17);
  out << "id,a,b,level,swap_success,photon_loss,fidelity,throughput,resource_count\n";
  for (const auto& l : network.links()) {
    out << raw(l.id) << ',' << raw(l.a) << ',' << raw(l.b) << ',' << l.level << ',' << l.swap_success
        << ',' << l.photon_loss << ',' << l.fidelity << ',' << l.throughput << ',' << l.resource_count
        << '\n';
  }
  return out.str();
}

std::string solution_csv(const etopo::SolveResult& result) {
  std::ostringstream out;
  out << "user,link,state,from\n";
  for (const auto& e : result.solution.c) {
    out << e.user << ',' << raw(e.link) << ',' << e.state << ',' << raw(e.from) << '\n';
  }
  return out.str();
}

std::string route_csv(const etopo::RoutingOutcome& o) {
  std::ostringstream out;
  out << "status,diameter,steps_taken,path\n" << to_string(o.status) << ',' << o.diameter << ','
      << o.steps_taken << ',';
  for (std::size_t i = 0; i < o.path.nodes.size(); ++i) out << (i ? ";" : "") << raw(o.path.nodes[i]);
  out << '\n';
  return out.str();
}

int exit_for(const Error& e) {
  switch (e.code()) {
    case Errc::config:
    case Errc::invalid_argument:
    case Errc::invalid_level:
    case Errc::not_found:
    case Errc::too_small_lattice:
    case Errc::placement:
    case Errc::dimension_mismatch:
    case Errc::unmapped:
    case Errc::too_large:
      return config_error;
    default:
      return internal_error;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement topology adaption, routing and assignment toolkit"};
  app.require_subcommand(1);

  Common c;

  // generate
  auto* gen = app.add_subcommand("generate", "Generate a random overlay network");
  etopo::GeneratorParams params;
  std::string params_file;
  std::optional<double> density;
  std::vector<double> swap, loss, fidelity, throughput;
  std::vector<int> resources;
  gen->add_option("--params", params_file, "Generator parameters JSON file");
  gen->add_option("--nodes", params.nodes, "Node count");
  gen->add_option("--links", params.links, "Link count");
  gen->add_option("--density", density, "Fraction of node pairs joined by a link")->check(CLI::Range(0.0, 1.0));
  gen->add_option("--level-weights", params.level_weights, "Relative weight of each level, from level 1")
      ->delimiter(',');
  gen->add_option("--swap-success", swap, "LO,HI")->delimiter(',')->expected(2);
  gen->add_option("--photon-loss", loss, "LO,HI")->delimiter(',')->expected(2);
  gen->add_option("--fidelity", fidelity, "LO,HI")->delimiter(',')->expected(2);
  gen->add_option("--throughput", throughput, "LO,HI")->delimiter(',')->expected(2);
  gen->add_option("--resources", resources, "MIN,MAX stored states per link")->delimiter(',')->expected(2);
  add_common(gen, c);

  // adapt
  auto* adp = app.add_subcommand("adapt", "Compute the adapted link set S*");
  GraphArgs ga;
  add_graph(adp, ga);
  add_common(adp, c);
  add_pstar(adp, c);

  // route
  auto* rte = app.add_subcommand("route", "Greedy route between two nodes over S*");
  GraphArgs gr;
  std::uint32_t source = 0;
  std::uint32_t target = 0;
  bool oracle = false;
  add_graph(rte, gr);
  rte->add_option("--source", source, "Source node id")->required();
  rte->add_option("--target", target, "Target node id")->required();
  rte->add_flag("--oracle", oracle, "Report the shortest-path oracle instead");
  add_common(rte, c);
  add_pstar(rte, c);

  // assign
  auto* asg = app.add_subcommand("assign", "Solve an assignment instance");
  std::string instance_file;
  std::string solver = "auto";
  etopo::ExactLimits limits;
  asg->add_option("--instance", instance_file, "Instance JSON file")->required();
  asg->add_option("--solver", solver, "Solver")->check(CLI::IsMember({"auto", "exact", "greedy"}));
  asg->add_option("--bnb-cap", limits.bnb_cap, "Largest variable count searched exactly");
  add_common(asg, c);

  // run
  auto* run = app.add_subcommand("run", "Run a scenario and export metrics and solutions");
  std::string scenario_file;
  bool timings = false;
  run->add_option("--scenario", scenario_file, "Scenario JSON file")->required();
  run->add_flag("--timings", timings, "Also write per-phase wall times to timings.csv");
  run->add_option("--seed", c.seed, "Root seed (overrides ETOPO_SEED and config)");
  run->add_option("--out", c.out, "Output directory")->default_str(".");
  run->add_option("--format", c.format, "Metrics format")->check(CLI::IsMember({"csv", "json"}));
  add_pstar(run, c);

  // reduce-coloring
  auto* red = app.add_subcommand("reduce-coloring", "Build the assignment instance of a coloring problem");
  std::string graph_file;
  std::size_t colors = 0;
  bool check = false;
  red->add_option("--graph", graph_file, "Graph JSON file")->required();
  red->add_option("--colors", colors, "Number of colors k*")->required()->check(CLI::PositiveNumber);
  red->add_flag("--check", check, "Solve the instance and report colorability on stderr");
  red->add_option("--out", c.out, "Output path, stdout when omitted");

  // bench-routing
  auto* bench = app.add_subcommand("bench-routing", "Greedy routing steps over Kleinberg lattices");
  etopo::ScalingParams sp;
  bool serial = false;
  bench->add_option("--k", sp.k, "Lattice dimension")->check(CLI::IsMember({1, 2}));
  bench->add_option("--n", sp.sizes, "Lattice sizes")->delimiter(',');
  bench->add_option("--graphs", sp.graphs, "Graphs per size");
  bench->add_option("--queries", sp.queries, "Queries per graph");
  bench->add_flag("--serial", serial, "Run queries on one thread");
  add_common(bench, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : config_error;
  }

  try {
    if (gen->parsed()) {
      if (!params_file.empty()) {
        json spec = {{"network", {{"generate", etopo::io::read_json_file(params_file)}}},
                     {"base_graph", {{"k", 1}, {"n", 2}}}};
        try {
          params = std::get<etopo::GeneratorParams>(etopo::scenario_from_json(spec).network);
        } catch (const Error& e) {
          throw Error(Errc::config, params_file + ": " + e.what());
        }
      }
      if (density) {
        const double pairs = static_cast<double>(params.nodes) * (params.nodes > 0 ? params.nodes - 1 : 0) / 2.0;
        params.links = static_cast<std::uint64_t>(std::llround(*density * pairs));
      }
      if (!swap.empty()) params.swap_success = {swap[0], swap[1]};
      if (!loss.empty()) params.photon_loss = {loss[0], loss[1]};
      if (!fidelity.empty()) params.fidelity = {fidelity[0], fidelity[1]};
      if (!throughput.empty()) params.throughput = {throughput[0], throughput[1]};
      if (!resources.empty()) {
        params.resources_min = resources[0];
        params.resources_max = resources[1];
      }
      const auto problems = etopo::validate_params(params);
      if (!problems.empty()) throw Error(Errc::config, "generate: " + problems.front());
      const auto network = etopo::generate_network(
          params, etopo::derive_seed(resolve_seed(c, 0), etopo::Stream::generation));
      emit(c, c.format == "csv" ? network_csv(network) : etopo::io::dump(etopo::io::network_to_json(network)));
      return ok;
    }

    if (adp->parsed()) {
      const auto g = load_graph(ga, c);
      const auto adapted = etopo::adapt(g.graph, g.network, g.policy, g.options);
      emit(c, c.format == "csv" ? etopo::io::adapted_to_csv(adapted)
                                : etopo::io::dump(etopo::io::adapted_to_json(adapted, g.policy)));
      return ok;
    }

    if (rte->parsed()) {
      const auto g = load_graph(gr, c);
      const auto adapted = etopo::adapt(g.graph, g.network, g.policy, g.options);
      const etopo::NodeId s{source};
      const etopo::NodeId t{target};
      const auto outcome = oracle ? etopo::shortest_path_oracle(g.graph, adapted, s, t)
                                  : etopo::route(g.graph, adapted, s, t,
                                                 etopo::derive_seed(resolve_seed(c, 0), etopo::Stream::routing));
      emit(c, c.format == "csv" ? route_csv(outcome) : etopo::io::dump(etopo::io::routing_to_json(outcome)));
      return outcome.found() ? ok : infeasible_only;
    }

    if (asg->parsed()) {
      const auto instance = etopo::io::instance_from_json(etopo::io::read_json_file(instance_file), instance_file);
      const auto seed = etopo::derive_seed(resolve_seed(c, 0), etopo::Stream::routing);
      etopo::SolveResult result;
      if (solver == "greedy") {
        result = etopo::solve_greedy(instance, seed);
      } else {
        try {
          result = etopo::solve_exact(instance, limits);
        } catch (const Error& e) {
          if (e.code() != Errc::too_large || solver == "exact") throw;
          result = etopo::solve_greedy(instance, seed);
        }
      }
      emit(c, c.format == "csv" ? solution_csv(result) : etopo::io::dump(etopo::io::solution_to_json(result)));
      return result.ok() ? ok : infeasible_only;
    }

    if (run->parsed()) {
      auto scenario = etopo::load_scenario(scenario_file);
      scenario.seed = resolve_seed(c, scenario.seed);
      if (!c.pstar_mode.empty()) scenario.pstar_mode = etopo::pstar_mode_from_string(c.pstar_mode);
      const auto records = etopo::run_scenario(scenario);
      const std::filesystem::path dir = c.out.empty() ? "." : c.out;
      if (run->count("--format") > 0 && c.format == "json") {
        etopo::io::write_text_file(dir / "metrics.json", etopo::io::dump(etopo::metrics_json(records)));
      } else {
        etopo::io::write_text_file(dir / "metrics.csv", etopo::metrics_csv(records));
      }
      etopo::io::write_text_file(dir / "solutions.json", etopo::io::dump(etopo::solutions_json(records)));
      if (timings) etopo::io::write_text_file(dir / "timings.csv", etopo::timings_csv(records));
      const bool all_infeasible = std::all_of(records.begin(), records.end(),
                                              [](const auto& r) { return !r.result.ok(); });
      return all_infeasible ? infeasible_only : ok;
    }

    if (red->parsed()) {
      const auto graph = etopo::io::conflict_graph_from_json(etopo::io::read_json_file(graph_file), graph_file);
      const auto instance = etopo::reduction_from_coloring(graph, colors);
      emit(c, etopo::io::dump(etopo::io::instance_to_json(instance, etopo::ThresholdPolicy{},
                                                          etopo::PStarMode::measured)));
      if (check) {
        const auto result = etopo::solve_exact(instance);
        std::cerr << (result.ok() ? "colorable" : "not colorable") << " with " << colors << " colors\n";
        return result.ok() ? ok : infeasible_only;
      }
      return ok;
    }

    if (bench->parsed()) {
      sp.seed = resolve_seed(c, 0);
      const auto rows = serial ? etopo::routing_scaling_serial(sp) : etopo::routing_scaling(sp);
      emit(c, c.format == "csv" ? etopo::scaling_csv(rows) : etopo::io::dump(etopo::scaling_json(rows)));
      return ok;
    }
  } catch (const Error& e) {
    std::cerr << "etopo: " << e.what() << '\n';
    return exit_for(e);
  } catch (const std::exception& e) {
    std::cerr << "etopo: internal error: " << e.what() << '\n';
    return internal_error;
  }
  return internal_error;
}
