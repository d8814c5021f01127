#include <algorithm>
#include <string>

#include "doctest.h"
#include "etopo/io.hpp"
#include "helpers.hpp"
#include "support/support.hpp"

using namespace etopo;
using th::link;

namespace {

std::string error_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    CHECK(e.code() == Errc::config);
    return e.what();
  }
  return {};
}

bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

}  // namespace

TEST_CASE("network round trip") {
  OverlayNetwork n(th::nodes(3), {link(0, 0, 1, 2, 0.9, 0.1, 0.95, 3.5, 2), link(1, 1, 2)});
  const auto j = io::network_to_json(n);
  CHECK(io::network_from_json(j) == n);
  CHECK(io::network_from_json(io::json::parse(io::dump(j))) == n);
}

TEST_CASE("network errors carry field paths") {
  auto j = io::network_to_json(OverlayNetwork(th::nodes(2), {link(0, 0, 1)}));
  j["links"][0]["extra"] = 1;
  CHECK(contains(error_of([&] { io::network_from_json(j); }), "network.links[0]"));
  CHECK(contains(error_of([&] { io::network_from_json(j); }), "extra"));

  j["links"][0].erase("extra");
  j["links"][0]["swap_success"] = 1.5;
  CHECK(contains(error_of([&] { io::network_from_json(j); }), "network.links[0].swap_success"));

  j["links"][0]["swap_success"] = 1.0;
  j["links"][0]["level"] = 0;
  CHECK(contains(error_of([&] { io::network_from_json(j); }), "network.links[0].level"));

  j["links"][0]["level"] = 1;
  j["links"][0]["b"] = 9;
  CHECK_FALSE(error_of([&] { io::network_from_json(j); }).empty());

  CHECK_FALSE(error_of([] { io::network_from_json(io::json::array()); }).empty());
}

TEST_CASE("placement, thresholds, failures and demands round trip") {
  const auto p = th::at({{0, {1, 2}}, {3, {0, 0}}});
  CHECK(io::placement_from_json(io::placement_to_json(p)) == p);

  ThresholdPolicy policy;
  policy.default_threshold = 0.25;
  policy.per_level = {{2, 0.5}, {3, 0.75}};
  CHECK(io::thresholds_from_json(io::thresholds_to_json(policy)) == policy);
  CHECK(contains(error_of([] { io::thresholds_from_json(io::json{{"default", 2.0}}); }), "thresholds.default"));

  FailureEvent e{LinkId{3}, FailureKind::degrade_fidelity, 0.25, 2};
  CHECK(io::failure_from_json(io::failure_to_json(e)) == e);
  FailureEvent f{NodeId{1}, FailureKind::degrade_swap, 0.5, 0};
  CHECK(io::failure_from_json(io::failure_to_json(f)) == f);
  CHECK(contains(error_of([] { io::failure_from_json(io::json::parse(R"({"target":{"link":1,"node":2},"kind":"remove-link"})")); }),
                 "failure.target"));
  CHECK(contains(error_of([] { io::failure_from_json(io::json::parse(R"({"target":{"link":1},"kind":"melt"})")); }),
                 "failure.kind"));

  Demand d{4, NodeId{1}, NodeId{2}, 0.5};
  CHECK(io::demand_from_json(io::demand_to_json(d)) == d);
  CHECK(contains(error_of([] { io::demand_from_json(io::json::parse(R"({"user":0,"source":1,"target":2,"rate":-1})")); }),
                 "demand.rate"));
}

TEST_CASE("instance round trip") {
  Rng rng(404);
  for (int i = 0; i < 30; ++i) {
    const auto inst = etest::pipeline_instance(rng);
    const auto back = io::instance_from_json(io::instance_to_json(inst, ThresholdPolicy{}, PStarMode::measured));
    CHECK(back.network == inst.network);
    CHECK(back.demands == inst.demands);
    CHECK(back.resource_sets == inst.resource_sets);
    CHECK(back.interference == inst.interference);
  }
}

TEST_CASE("instance defaults to full interference") {
  auto line = th::on_line(3, {link(0, 0, 1, 1, 1, 0, 1, 2, 2), link(1, 1, 2)});
  auto inst = make_instance(line.network, line.graph, line.adapted, {{0, NodeId{0}, NodeId{2}, 1}});
  auto j = io::instance_to_json(inst, ThresholdPolicy{}, PStarMode::measured);
  j.erase("resource_sets");
  j.erase("interference");
  const auto back = io::instance_from_json(j);
  CHECK(back.resource_sets == inst.resource_sets);
  CHECK(back.interference == inst.interference);
  j["surprise"] = true;
  CHECK(contains(error_of([&] { io::instance_from_json(j); }), "surprise"));
}

TEST_CASE("solution round trip re-validates zeta") {
  Rng rng(77);
  int checked = 0;
  for (int i = 0; i < 60; ++i) {
    const auto inst = etest::tiny_instance(rng);
    const auto r = solve_exact(inst);
    if (!r.ok()) continue;
    const auto back = io::solution_from_json(io::json::parse(io::dump(io::solution_to_json(r))));
    CHECK(back == r.solution);
    CHECK(objective(inst, back) == *r.zeta);
    ++checked;
  }
  CHECK(checked > 0);
}

TEST_CASE("conflict graph JSON") {
  const auto g = io::conflict_graph_from_json(io::json::parse(R"({"vertices":3,"edges":[[2,0],[0,1],[1,0]]})"));
  CHECK(g.vertices.size() == 3);
  CHECK(g.edges == std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {0, 2}});
  CHECK(io::conflict_graph_from_json(io::conflict_graph_to_json(g)) == g);
  const auto named = io::conflict_graph_from_json(io::json::parse(R"({"vertices":["a","b"],"edges":[[0,1]],"k_star":2})"));
  CHECK(named.vertices == std::vector<std::string>{"a", "b"});
  CHECK(named.k_star == 2);
  CHECK_FALSE(error_of([] { io::conflict_graph_from_json(io::json::parse(R"({"vertices":2,"edges":[[0,5]]})")); }).empty());
}

TEST_CASE("adapted set exports") {
  OverlayNetwork n(th::nodes(3), {link(0, 0, 1, 1, 0.5), link(1, 1, 2, 1, 0.9)});
  auto g = map_overlay(n, 1, 3, th::on_line(n));
  ThresholdPolicy policy;
  policy.default_threshold = 0.6;
  const auto s = adapt(g, n, policy);
  const auto j = io::adapted_to_json(s, policy);
  CHECK(j["links_total"] == 2);
  CHECK(j["links_adapted"] == 1);
  CHECK(j["adapted_links"] == io::json::array({1}));
  const auto csv = io::adapted_to_csv(s);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
}

TEST_CASE("routing export") {
  auto line = th::on_line(3, {link(0, 0, 1), link(1, 1, 2)});
  const auto r = route(line.graph, line.adapted, NodeId{0}, NodeId{2}, 0);
  const auto j = io::routing_to_json(r);
  CHECK(j["status"] == "found");
  CHECK(j["diameter"] == 2);
  CHECK(j["path"]["nodes"] == io::json::array({0, 1, 2}));
  OverlayNetwork cut(th::nodes(3), {link(0, 0, 1)});
  auto g = map_overlay(cut, 1, 3, th::on_line(cut));
  const auto miss = io::routing_to_json(route(g, adapt(g, cut, ThresholdPolicy{}), NodeId{0}, NodeId{2}, 0));
  CHECK_FALSE(miss.contains("path"));
}
