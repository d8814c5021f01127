#include "etopo/io.hpp"

#include "json_reader.hpp"

#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace etopo::io {

using namespace detail;

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::config, path.string() + ": cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(Errc::config, path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::config, path.string() + ": cannot write file");
  out << text;
}

std::string dump(const json& value) { return value.dump(2) + "\n"; }

json network_to_json(const OverlayNetwork& network) {
  json nodes = json::array();
  for (NodeId n : network.nodes()) nodes.push_back(raw(n));
  json links = json::array();
  for (const auto& l : network.links()) {
    links.push_back({{"id", raw(l.id)},
                     {"a", raw(l.a)},
                     {"b", raw(l.b)},
                     {"level", l.level},
                     {"swap_success", l.swap_success},
                     {"photon_loss", l.photon_loss},
                     {"fidelity", l.fidelity},
                     {"throughput", l.throughput},
                     {"resource_count", l.resource_count}});
  }
  return {{"nodes", nodes}, {"links", links}};
}

OverlayNetwork network_from_json(const json& value, const std::string& where) {
  Reader r(value, where);
  std::vector<NodeId> nodes;
  const auto& jn = array(r.at("nodes"), r.path("nodes"));
  for (std::size_t i = 0; i < jn.size(); ++i) nodes.push_back(NodeId{id32(jn[i], item(r.path("nodes"), i))});

  std::vector<EntangledLink> links;
  const auto& jl = array(r.at("links"), r.path("links"));
  for (std::size_t i = 0; i < jl.size(); ++i) {
    const auto at = item(r.path("links"), i);
    Reader lr(jl[i], at);
    EntangledLink l;
    l.id = LinkId{id32(lr.at("id"), lr.path("id"))};
    l.a = NodeId{id32(lr.at("a"), lr.path("a"))};
    l.b = NodeId{id32(lr.at("b"), lr.path("b"))};
    const auto level = integer(lr.at("level"), lr.path("level"));
    if (level < 1 || level > 64) fail(lr.path("level"), "level must be in [1, 64]");
    l.level = static_cast<int>(level);
    l.swap_success = probability(lr.at("swap_success"), lr.path("swap_success"));
    l.photon_loss = probability(lr.at("photon_loss"), lr.path("photon_loss"));
    l.fidelity = probability(lr.at("fidelity"), lr.path("fidelity"));
    l.throughput = number(lr.at("throughput"), lr.path("throughput"));
    if (l.throughput < 0) fail(lr.path("throughput"), "must be nonnegative");
    if (const auto* g = lr.find("resource_count")) {
      const auto count = integer(*g, lr.path("resource_count"));
      if (count < 0 || count > std::numeric_limits<int>::max()) {
        fail(lr.path("resource_count"), "must be a nonnegative integer");
      }
      l.resource_count = static_cast<int>(count);
    }
    lr.finish();
    links.push_back(l);
  }
  r.finish();

  OverlayNetwork network(std::move(nodes), std::move(links));
  const auto problems = validate(network);
  if (!problems.empty()) {
    std::string ids;
    for (auto id : problems.front().ids) ids += (ids.empty() ? "" : ",") + std::to_string(id);
    fail(where, problems.front().kind + " (" + ids + "): " + problems.front().detail);
  }
  return network;
}

json placement_to_json(const ExplicitPlacement& placement) {
  json out = json::array();
  for (const auto& [node, c] : placement.coords) {
    out.push_back({{"node", raw(node)}, {"coords", c.coords}});
  }
  return out;
}

ExplicitPlacement placement_from_json(const json& value, const std::string& where) {
  ExplicitPlacement out;
  array(value, where);
  for (std::size_t i = 0; i < value.size(); ++i) {
    Reader r(value[i], item(where, i));
    const NodeId node{id32(r.at("node"), r.path("node"))};
    const auto& jc = array(r.at("coords"), r.path("coords"));
    LatticeCoord c;
    for (std::size_t d = 0; d < jc.size(); ++d) c.coords.push_back(integer(jc[d], item(r.path("coords"), d)));
    r.finish();
    out.coords.emplace_back(node, std::move(c));
  }
  return out;
}

json thresholds_to_json(const ThresholdPolicy& policy) {
  json levels = json::object();
  for (const auto& [level, t] : policy.per_level) levels[std::to_string(level)] = t;
  return {{"default", policy.default_threshold}, {"levels", levels}};
}

ThresholdPolicy thresholds_from_json(const json& value, const std::string& where) {
  Reader r(value, where);
  ThresholdPolicy policy;
  if (const auto* d = r.find("default")) policy.default_threshold = probability(*d, r.path("default"));
  if (const auto* levels = r.find("levels")) {
    if (!levels->is_object()) fail(r.path("levels"), "expected an object keyed by level");
    for (const auto& [key, t] : levels->items()) {
      const auto at = r.path("levels") + "." + key;
      int level = 0;
      try {
        std::size_t used = 0;
        level = std::stoi(key, &used);
        if (used != key.size()) throw std::invalid_argument(key);
      } catch (const std::exception&) {
        fail(at, "level keys must be integers");
      }
      if (level < 1) fail(at, "level must be at least 1");
      policy.per_level[level] = probability(t, at);
    }
  }
  r.finish();
  return policy;
}

json failure_to_json(const FailureEvent& event) {
  json target;
  if (const auto* l = std::get_if<LinkId>(&event.target)) {
    target = {{"link", raw(*l)}};
  } else {
    target = {{"node", raw(std::get<NodeId>(event.target))}};
  }
  return {{"target", target},
          {"kind", to_string(event.kind)},
          {"magnitude", event.magnitude},
          {"time", event.time}};
}

FailureEvent failure_from_json(const json& value, const std::string& where) {
  Reader r(value, where);
  FailureEvent e;
  Reader tr(r.at("target"), r.path("target"));
  const bool link = tr.has("link");
  const bool node = tr.has("node");
  if (link == node) fail(r.path("target"), "expected exactly one of 'link' or 'node'");
  if (link) {
    e.target = LinkId{id32(tr.at("link"), tr.path("link"))};
  } else {
    e.target = NodeId{id32(tr.at("node"), tr.path("node"))};
  }
  tr.finish();
  try {
    e.kind = failure_kind_from_string(text(r.at("kind"), r.path("kind")));
  } catch (const Error& err) {
    if (err.code() == Errc::config) throw;
    fail(r.path("kind"), err.what());
  }
  if (const auto* m = r.find("magnitude")) e.magnitude = probability(*m, r.path("magnitude"));
  if (const auto* t = r.find("time")) e.time = unsigned_integer(*t, r.path("time"));
  r.finish();
  return e;
}

json demand_to_json(const Demand& d) {
  return {{"user", d.user}, {"source", raw(d.source)}, {"target", raw(d.target)}, {"rate", d.rate}};
}

Demand demand_from_json(const json& value, const std::string& where) {
  Reader r(value, where);
  Demand d;
  d.user = id32(r.at("user"), r.path("user"));
  d.source = NodeId{id32(r.at("source"), r.path("source"))};
  d.target = NodeId{id32(r.at("target"), r.path("target"))};
  d.rate = number(r.at("rate"), r.path("rate"));
  if (d.rate < 0) fail(r.path("rate"), "must be nonnegative");
  if (d.source == d.target) fail(where, "source and target must differ");
  r.finish();
  return d;
}

json adapted_to_json(const AdaptedLinkSet& adapted, const ThresholdPolicy& policy) {
  json entries = json::array();
  for (const auto& e : adapted.entries()) {
    entries.push_back({{"link", raw(e.link)},
                       {"x", raw(e.x)},
                       {"y", raw(e.y)},
                       {"level", e.level},
                       {"probability", e.probability},
                       {"threshold", e.threshold},
                       {"p_star", e.p_star},
                       {"retained", e.retained}});
  }
  json retained = json::array();
  for (LinkId id : adapted.links()) retained.push_back(raw(id));
  return {{"thresholds", thresholds_to_json(policy)},
          {"links_total", adapted.entries().size()},
          {"links_adapted", adapted.size()},
          {"adapted_links", retained},
          {"entries", entries}};
}

std::string adapted_to_csv(const AdaptedLinkSet& adapted) {
  std::ostringstream out;
  out.precision(17);
  out << "link,x,y,level,probability,threshold,p_star,retained\n";
  for (const auto& e : adapted.entries()) {
    out << raw(e.link) << ',' << raw(e.x) << ',' << raw(e.y) << ',' << e.level << ','
        << e.probability << ',' << e.threshold << ',' << e.p_star << ',' << (e.retained ? 1 : 0)
        << '\n';
  }
  return out.str();
}

json routing_to_json(const RoutingOutcome& outcome) {
  json nodes = json::array();
  for (NodeId n : outcome.path.nodes) nodes.push_back(raw(n));
  json links = json::array();
  for (LinkId l : outcome.path.links) links.push_back(raw(l));
  json out = {{"status", to_string(outcome.status)},
              {"diameter", outcome.diameter},
              {"steps_taken", outcome.steps_taken}};
  if (outcome.found()) out["path"] = {{"nodes", nodes}, {"links", links}};
  return out;
}

json instance_to_json(const AssignmentInstance& instance, const ThresholdPolicy& policy,
                      PStarMode mode) {
  json demands = json::array();
  for (const auto& d : instance.demands) demands.push_back(demand_to_json(d));
  json sets = json::array();
  for (const auto& rs : instance.resource_sets) {
    sets.push_back({{"link", raw(rs.link)}, {"states", rs.states}});
  }
  json interference = json::array();
  for (const auto& set : instance.interference) {
    json competing = json::array();
    for (const auto& c : set.competing) competing.push_back({{"user", c.user}, {"demand", c.demand}});
    interference.push_back({{"resource_state", {{"link", raw(set.resource.link)}, {"state", set.resource.state}}},
                            {"competing", competing}});
  }
  return {{"network", network_to_json(instance.network)},
          {"base_graph",
           {{"k", instance.graph.dimension()},
            {"n", instance.graph.size()},
            {"placement", placement_to_json(instance.graph.placement())}}},
          {"adaption", {{"thresholds", thresholds_to_json(policy)}, {"pstar_mode", to_string(mode)}}},
          {"demands", demands},
          {"resource_sets", sets},
          {"interference", interference}};
}

AssignmentInstance instance_from_json(const json& value, const std::string& where) {
  Reader r(value, where);
  AssignmentInstance inst;
  inst.network = network_from_json(r.at("network"), r.path("network"));

  Reader gr(r.at("base_graph"), r.path("base_graph"));
  const auto k = integer(gr.at("k"), gr.path("k"));
  const auto n = integer(gr.at("n"), gr.path("n"));
  const auto placement = placement_from_json(gr.at("placement"), gr.path("placement"));
  gr.finish();
  try {
    inst.graph = map_overlay(inst.network, static_cast<int>(k), n, placement);
  } catch (const Error& e) {
    fail(r.path("base_graph"), e.what());
  }

  ThresholdPolicy policy;
  AdaptOptions options;
  if (const auto* a = r.find("adaption")) {
    Reader ar(*a, r.path("adaption"));
    if (const auto* t = ar.find("thresholds")) policy = thresholds_from_json(*t, ar.path("thresholds"));
    if (const auto* m = ar.find("pstar_mode")) {
      try {
        options.pstar_mode = pstar_mode_from_string(text(*m, ar.path("pstar_mode")));
      } catch (const Error& e) {
        if (e.code() == Errc::config) throw;
        fail(ar.path("pstar_mode"), e.what());
      }
    }
    ar.finish();
  }
  inst.adapted = adapt(inst.graph, inst.network, policy, options);

  const auto& jd = array(r.at("demands"), r.path("demands"));
  for (std::size_t i = 0; i < jd.size(); ++i) inst.demands.push_back(demand_from_json(jd[i], item(r.path("demands"), i)));

  if (const auto* js = r.find("resource_sets")) {
    array(*js, r.path("resource_sets"));
    for (std::size_t i = 0; i < js->size(); ++i) {
      const auto at = item(r.path("resource_sets"), i);
      Reader sr((*js)[i], at);
      ResourceSet rs;
      rs.link = LinkId{id32(sr.at("link"), sr.path("link"))};
      const auto& states = array(sr.at("states"), sr.path("states"));
      for (std::size_t s = 0; s < states.size(); ++s) rs.states.push_back(id32(states[s], item(sr.path("states"), s)));
      sr.finish();
      inst.resource_sets.push_back(std::move(rs));
    }
  } else {
    inst.resource_sets = make_resource_sets(inst.network, inst.adapted);
  }

  if (const auto* ji = r.find("interference")) {
    array(*ji, r.path("interference"));
    for (std::size_t i = 0; i < ji->size(); ++i) {
      const auto at = item(r.path("interference"), i);
      Reader ir((*ji)[i], at);
      InterferenceSet set;
      Reader rr(ir.at("resource_state"), ir.path("resource_state"));
      set.resource.link = LinkId{id32(rr.at("link"), rr.path("link"))};
      set.resource.state = id32(rr.at("state"), rr.path("state"));
      rr.finish();
      const auto& comp = array(ir.at("competing"), ir.path("competing"));
      for (std::size_t c = 0; c < comp.size(); ++c) {
        Reader cr(comp[c], item(ir.path("competing"), c));
        Competitor who;
        who.user = id32(cr.at("user"), cr.path("user"));
        who.demand = unsigned_integer(cr.at("demand"), cr.path("demand"));
        cr.finish();
        set.competing.push_back(who);
      }
      ir.finish();
      inst.interference.push_back(std::move(set));
    }
  } else {
    inst.interference = full_interference(inst.demands, inst.resource_sets);
  }
  r.finish();

  const auto problems = validate_instance(inst);
  if (!problems.empty()) fail(where, problems.front());
  return inst;
}

json solution_to_json(const SolveResult& result) {
  json c = json::array();
  for (const auto& e : result.solution.c) {
    c.push_back({{"user", e.user}, {"link", raw(e.link)}, {"state", e.state}, {"from", raw(e.from)}});
  }
  json k = json::array();
  for (const auto& g : result.solution.k) {
    k.push_back({{"user", g.user}, {"demand", g.demand}, {"link", raw(g.link)}, {"state", g.state}});
  }
  json out = {{"status", to_string(result.status)},
              {"zeta", result.zeta ? json(*result.zeta) : json(nullptr)},
              {"served", result.served},
              {"rejected", result.rejected},
              {"C", c},
              {"K", k}};
  return out;
}

AssignmentSolution solution_from_json(const json& value, const std::string& where) {
  Reader r(value, where);
  AssignmentSolution out;
  const auto& c = array(r.at("C"), r.path("C"));
  for (std::size_t i = 0; i < c.size(); ++i) {
    Reader er(c[i], item(r.path("C"), i));
    StateAssignment e;
    e.user = id32(er.at("user"), er.path("user"));
    e.link = LinkId{id32(er.at("link"), er.path("link"))};
    e.state = id32(er.at("state"), er.path("state"));
    e.from = NodeId{id32(er.at("from"), er.path("from"))};
    er.finish();
    out.c.push_back(e);
  }
  const auto& k = array(r.at("K"), r.path("K"));
  for (std::size_t i = 0; i < k.size(); ++i) {
    Reader gr(k[i], item(r.path("K"), i));
    InterferenceGrant g;
    g.user = id32(gr.at("user"), gr.path("user"));
    g.demand = unsigned_integer(gr.at("demand"), gr.path("demand"));
    g.link = LinkId{id32(gr.at("link"), gr.path("link"))};
    g.state = id32(gr.at("state"), gr.path("state"));
    gr.finish();
    out.k.push_back(g);
  }
  // Descriptive fields written alongside C and K.
  for (const char* key : {"status", "zeta", "served", "rejected", "trial", "solver"}) r.find(key);
  r.finish();
  return out;
}

json conflict_graph_to_json(const ConflictGraph& graph) {
  json edges = json::array();
  for (const auto& [a, b] : graph.edges) edges.push_back({a, b});
  return {{"vertices", graph.vertices}, {"edges", edges}, {"k_star", graph.k_star}};
}

ConflictGraph conflict_graph_from_json(const json& value, const std::string& where) {
  Reader r(value, where);
  ConflictGraph g;
  const auto& v = r.at("vertices");
  if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i) g.vertices.push_back(text(v[i], item(r.path("vertices"), i)));
  } else {
    const auto count = unsigned_integer(v, r.path("vertices"));
    for (std::uint64_t i = 0; i < count; ++i) g.vertices.push_back("v" + std::to_string(i));
  }
  const auto& edges = array(r.at("edges"), r.path("edges"));
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto at = item(r.path("edges"), i);
    if (!edges[i].is_array() || edges[i].size() != 2) fail(at, "expected a pair of vertex indices");
    g.edges.emplace_back(unsigned_integer(edges[i][0], at), unsigned_integer(edges[i][1], at));
  }
  if (const auto* k = r.find("k_star")) g.k_star = unsigned_integer(*k, r.path("k_star"));
  r.finish();
  try {
    return normalized(std::move(g));
  } catch (const Error& e) {
    fail(where, e.what());
  }
}

}  // namespace etopo::io
