#include <cmath>
#include <set>
#include <string>

#include "etopo/harness.hpp"
#include "etopo/rng.hpp"
#include "json_reader.hpp"

namespace etopo {

using io::json;
using namespace io::detail;

const char* to_string(SolverChoice choice) {
  switch (choice) {
    case SolverChoice::automatic: return "auto";
    case SolverChoice::exact: return "exact";
    case SolverChoice::greedy: return "greedy";
  }
  return "auto";
}

SolverChoice solver_choice_from_string(const std::string& name) {
  if (name == "auto") return SolverChoice::automatic;
  if (name == "exact") return SolverChoice::exact;
  if (name == "greedy") return SolverChoice::greedy;
  throw Error(Errc::invalid_argument, "unknown solver '" + name + "' (expected auto, exact or greedy)");
}

namespace {

json range_to_json(const Range& r) { return json::array({r.lo, r.hi}); }

Range range_from_json(const json& v, const std::string& where) {
  if (v.is_number()) {
    const double x = number(v, where);
    return {x, x};
  }
  if (!v.is_array() || v.size() != 2) fail(where, "expected a number or a [lo, hi] pair");
  return {number(v[0], item(where, 0)), number(v[1], item(where, 1))};
}

json params_to_json(const GeneratorParams& p) {
  return {{"nodes", p.nodes},
          {"links", p.links},
          {"level_weights", p.level_weights},
          {"swap_success", range_to_json(p.swap_success)},
          {"photon_loss", range_to_json(p.photon_loss)},
          {"fidelity", range_to_json(p.fidelity)},
          {"throughput", range_to_json(p.throughput)},
          {"resources", json::array({p.resources_min, p.resources_max})}};
}

GeneratorParams params_from_json(const json& v, const std::string& where) {
  Reader r(v, where);
  GeneratorParams p;
  p.nodes = id32(r.at("nodes"), r.path("nodes"));
  const auto* links = r.find("links");
  const auto* density = r.find("density");
  if ((links == nullptr) == (density == nullptr)) fail(where, "expected exactly one of 'links' or 'density'");
  if (links != nullptr) {
    p.links = unsigned_integer(*links, r.path("links"));
  } else {
    const double d = probability(*density, r.path("density"));
    const double pairs = static_cast<double>(p.nodes) * (p.nodes > 0 ? p.nodes - 1 : 0) / 2.0;
    p.links = static_cast<std::uint64_t>(std::llround(d * pairs));
  }
  if (const auto* w = r.find("level_weights")) {
    array(*w, r.path("level_weights"));
    p.level_weights.clear();
    for (std::size_t i = 0; i < w->size(); ++i) p.level_weights.push_back(number((*w)[i], item(r.path("level_weights"), i)));
  }
  if (const auto* x = r.find("swap_success")) p.swap_success = range_from_json(*x, r.path("swap_success"));
  if (const auto* x = r.find("photon_loss")) p.photon_loss = range_from_json(*x, r.path("photon_loss"));
  if (const auto* x = r.find("fidelity")) p.fidelity = range_from_json(*x, r.path("fidelity"));
  if (const auto* x = r.find("throughput")) p.throughput = range_from_json(*x, r.path("throughput"));
  if (const auto* x = r.find("resources")) {
    if (x->is_number_integer()) {
      p.resources_min = p.resources_max = static_cast<int>(integer(*x, r.path("resources")));
    } else {
      if (!x->is_array() || x->size() != 2) fail(r.path("resources"), "expected an integer or a [min, max] pair");
      p.resources_min = static_cast<int>(integer((*x)[0], item(r.path("resources"), 0)));
      p.resources_max = static_cast<int>(integer((*x)[1], item(r.path("resources"), 1)));
    }
  }
  r.finish();
  const auto problems = validate_params(p);
  if (!problems.empty()) fail(where, problems.front());
  return p;
}

}  // namespace

Scenario scenario_from_json(const json& value, const std::filesystem::path& base_dir) {
  const std::string where = "scenario";
  Reader r(value, where);
  Scenario s;

  {
    Reader nr(r.at("network"), r.path("network"));
    const int given = nr.has("file") + nr.has("inline") + nr.has("generate");
    if (given != 1) fail(r.path("network"), "expected exactly one of 'file', 'inline' or 'generate'");
    if (const auto* f = nr.find("file")) {
      std::filesystem::path p = text(*f, nr.path("file"));
      s.network = NetworkFile{p.is_absolute() ? p : base_dir / p};
    } else if (const auto* in = nr.find("inline")) {
      s.network = io::network_from_json(*in, nr.path("inline"));
    } else {
      s.network = params_from_json(nr.at("generate"), nr.path("generate"));
    }
    nr.finish();
  }

  {
    Reader gr(r.at("base_graph"), r.path("base_graph"));
    const auto k = integer(gr.at("k"), gr.path("k"));
    if (k < 1 || k > 16) fail(gr.path("k"), "expected a dimension in [1, 16]");
    s.base_graph.k = static_cast<int>(k);
    s.base_graph.n = integer(gr.at("n"), gr.path("n"));
    if (s.base_graph.n < 2) fail(gr.path("n"), "expected a lattice size of at least 2");
    if (const auto* seed = gr.find("seed")) s.base_graph.seed = unsigned_integer(*seed, gr.path("seed"));
    if (const auto* p = gr.find("placement")) s.base_graph.placement = io::placement_from_json(*p, gr.path("placement"));
    if (s.base_graph.seed && s.base_graph.placement) fail(r.path("base_graph"), "'seed' and 'placement' are exclusive");
    gr.finish();
  }

  if (const auto* t = r.find("thresholds")) s.thresholds = io::thresholds_from_json(*t, r.path("thresholds"));
  if (const auto* m = r.find("pstar_mode")) {
    try {
      s.pstar_mode = pstar_mode_from_string(text(*m, r.path("pstar_mode")));
    } catch (const Error& e) {
      if (e.code() == Errc::config) throw;
      fail(r.path("pstar_mode"), e.what());
    }
  }
  if (const auto* noise = r.find("noise")) {
    Reader nr(*noise, r.path("noise"));
    s.noise_amplitude = probability(nr.at("amplitude"), nr.path("amplitude"));
    nr.finish();
  }
  if (const auto* d = r.find("demands")) {
    array(*d, r.path("demands"));
    for (std::size_t i = 0; i < d->size(); ++i) s.demands.push_back(io::demand_from_json((*d)[i], item(r.path("demands"), i)));
  }
  if (const auto* f = r.find("failures")) {
    array(*f, r.path("failures"));
    for (std::size_t i = 0; i < f->size(); ++i) s.failures.push_back(io::failure_from_json((*f)[i], item(r.path("failures"), i)));
  }
  if (const auto* t = r.find("trials")) {
    s.trials = unsigned_integer(*t, r.path("trials"));
    if (s.trials < 1) fail(r.path("trials"), "expected at least 1 trial");
  }
  if (const auto* seed = r.find("seed")) s.seed = unsigned_integer(*seed, r.path("seed"));
  if (const auto* solver = r.find("solver")) {
    try {
      s.solver = solver_choice_from_string(text(*solver, r.path("solver")));
    } catch (const Error& e) {
      if (e.code() == Errc::config) throw;
      fail(r.path("solver"), e.what());
    }
  }
  if (const auto* lim = r.find("limits")) {
    Reader lr(*lim, r.path("limits"));
    if (const auto* x = lr.find("exhaustive_cap")) s.limits.exhaustive_cap = unsigned_integer(*x, lr.path("exhaustive_cap"));
    if (const auto* x = lr.find("bnb_cap")) s.limits.bnb_cap = unsigned_integer(*x, lr.path("bnb_cap"));
    if (const auto* x = lr.find("path_cap")) s.limits.path_cap = unsigned_integer(*x, lr.path("path_cap"));
    lr.finish();
  }
  r.finish();

  std::set<std::uint32_t> users;
  for (std::size_t i = 0; i < s.demands.size(); ++i) {
    if (!users.insert(s.demands[i].user).second) {
      fail(item(r.path("demands"), i) + ".user", "each user may have only one demand");
    }
  }
  if (!s.thresholds.valid()) fail(r.path("thresholds"), "thresholds must lie in [0, 1]");
  return s;
}

json scenario_to_json(const Scenario& s) {
  json network;
  if (const auto* f = std::get_if<NetworkFile>(&s.network)) {
    network = {{"file", f->path.string()}};
  } else if (const auto* n = std::get_if<OverlayNetwork>(&s.network)) {
    network = {{"inline", io::network_to_json(*n)}};
  } else {
    network = {{"generate", params_to_json(std::get<GeneratorParams>(s.network))}};
  }
  json graph = {{"k", s.base_graph.k}, {"n", s.base_graph.n}};
  if (s.base_graph.seed) graph["seed"] = *s.base_graph.seed;
  if (s.base_graph.placement) graph["placement"] = io::placement_to_json(*s.base_graph.placement);

  json demands = json::array();
  for (const auto& d : s.demands) demands.push_back(io::demand_to_json(d));
  json failures = json::array();
  for (const auto& f : s.failures) failures.push_back(io::failure_to_json(f));

  return {{"network", network},
          {"base_graph", graph},
          {"thresholds", io::thresholds_to_json(s.thresholds)},
          {"pstar_mode", to_string(s.pstar_mode)},
          {"noise", {{"amplitude", s.noise_amplitude}}},
          {"demands", demands},
          {"failures", failures},
          {"trials", s.trials},
          {"seed", s.seed},
          {"solver", to_string(s.solver)},
          {"limits",
           {{"exhaustive_cap", s.limits.exhaustive_cap},
            {"bnb_cap", s.limits.bnb_cap},
            {"path_cap", s.limits.path_cap}}}};
}

Scenario load_scenario(const std::filesystem::path& path) {
  return scenario_from_json(io::read_json_file(path), path.parent_path());
}

OverlayNetwork scenario_network(const Scenario& s) {
  if (const auto* f = std::get_if<NetworkFile>(&s.network)) {
    return io::network_from_json(io::read_json_file(f->path), f->path.string());
  }
  if (const auto* n = std::get_if<OverlayNetwork>(&s.network)) return *n;
  return generate_network(std::get<GeneratorParams>(s.network), derive_seed(s.seed, Stream::generation));
}

void validate_scenario(const Scenario& s, const OverlayNetwork& network) {
  for (std::size_t i = 0; i < s.demands.size(); ++i) {
    const auto at = item("scenario.demands", i);
    if (!network.has_node(s.demands[i].source)) fail(at + ".source", "node is not in the network");
    if (!network.has_node(s.demands[i].target)) fail(at + ".target", "node is not in the network");
  }
  for (std::size_t i = 0; i < s.failures.size(); ++i) {
    const auto at = item("scenario.failures", i) + ".target";
    const auto& target = s.failures[i].target;
    if (const auto* l = std::get_if<LinkId>(&target)) {
      if (network.find_link(*l) == nullptr) fail(at + ".link", "link is not in the network");
    } else if (!network.has_node(std::get<NodeId>(target))) {
      fail(at + ".node", "node is not in the network");
    }
  }
  if (s.base_graph.placement) {
    for (std::size_t i = 0; i < s.base_graph.placement->coords.size(); ++i) {
      const auto& [node, c] = s.base_graph.placement->coords[i];
      const auto at = item("scenario.base_graph.placement", i);
      if (!network.has_node(node)) fail(at + ".node", "node is not in the network");
      if (c.dimension() != static_cast<std::size_t>(s.base_graph.k)) fail(at + ".coords", "dimension differs from k");
    }
  }
}

std::uint64_t trial_seed(std::uint64_t root, std::uint64_t trial) {
  return derive_seed(derive_seed(root, Stream::trial), trial);
}

}  // namespace etopo
