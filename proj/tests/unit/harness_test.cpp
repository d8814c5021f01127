#include <algorithm>
#include <filesystem>
#include <string>

#include "doctest.h"
#include "etopo/harness.hpp"
#include "etopo/io.hpp"
#include "helpers.hpp"

using namespace etopo;

namespace {

std::string error_of(const io::json& j) {
  try {
    const auto s = scenario_from_json(j, ".");
    run_scenario(s);
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

io::json small_scenario() {
  return io::json::parse(R"({
    "seed": 5,
    "trials": 2,
    "network": {"inline": {"nodes": [0, 1, 2, 3],
      "links": [
        {"id": 0, "a": 0, "b": 1, "level": 1, "swap_success": 0.9, "photon_loss": 0, "fidelity": 1, "throughput": 2, "resource_count": 2},
        {"id": 1, "a": 1, "b": 2, "level": 1, "swap_success": 0.5, "photon_loss": 0, "fidelity": 1, "throughput": 2, "resource_count": 2},
        {"id": 2, "a": 2, "b": 3, "level": 1, "swap_success": 0.8, "photon_loss": 0, "fidelity": 1, "throughput": 2, "resource_count": 2}]}},
    "base_graph": {"k": 1, "n": 4, "placement": [
      {"node": 0, "coords": [0]}, {"node": 1, "coords": [1]}, {"node": 2, "coords": [2]}, {"node": 3, "coords": [3]}]},
    "thresholds": {"default": 0},
    "demands": [{"user": 0, "source": 0, "target": 3, "rate": 1}]
  })");
}

}  // namespace

TEST_CASE("generator with no links") {
  GeneratorParams p;
  p.nodes = 5;
  p.links = 0;
  const auto n = generate_network(p, 1);
  CHECK(n.nodes().size() == 5);
  CHECK(n.links().empty());
}

TEST_CASE("generator is reproducible") {
  GeneratorParams p;
  p.nodes = 10;
  p.links = 15;
  const auto a = generate_network(p, 42);
  CHECK(a == generate_network(p, 42));
  CHECK_FALSE(a == generate_network(p, 43));
  CHECK(a.links().size() == 15);
  for (const auto& l : a.links()) {
    CHECK(l.level == 1);
    CHECK(l.a != l.b);
  }
}

TEST_CASE("generator respects ranges") {
  GeneratorParams p;
  p.nodes = 20;
  p.links = 150;
  p.level_weights = {1, 1, 1};
  p.swap_success = {0.5, 0.7};
  p.throughput = {2, 3};
  p.resources_min = 2;
  p.resources_max = 4;
  for (const auto& l : generate_network(p, 9).links()) {
    CHECK(l.level >= 1);
    CHECK(l.level <= 3);
    CHECK(l.swap_success >= 0.5);
    CHECK(l.swap_success <= 0.7);
    CHECK(l.throughput >= 2);
    CHECK(l.resource_count >= 2);
    CHECK(l.resource_count <= 4);
  }
}

TEST_CASE("generator rejects impossible requests") {
  GeneratorParams p;
  p.nodes = 4;
  p.links = 7;
  CHECK_FALSE(validate_params(p).empty());
  CHECK_THROWS_AS(generate_network(p, 1), Error);
  p.links = 6;
  p.swap_success = {0.8, 0.2};
  CHECK_THROWS_AS(generate_network(p, 1), Error);
}

TEST_CASE("scenario round trip") {
  const auto s = scenario_from_json(small_scenario(), ".");
  CHECK(scenario_from_json(scenario_to_json(s), ".") == s);
  const std::filesystem::path fixture = ETOPO_FIXTURE;
  const auto f = load_scenario(fixture);
  CHECK(scenario_from_json(io::json::parse(io::dump(scenario_to_json(f))), fixture.parent_path()) == f);
}

TEST_CASE("zero threshold keeps every link") {
  const auto records = run_scenario(scenario_from_json(small_scenario(), "."));
  REQUIRE(records.size() == 2);
  for (const auto& r : records) {
    CHECK(r.links_adapted == r.links_total);
    CHECK(r.routes[0].found());
    CHECK(r.result.ok());
    // Every C entry on the chain costs 1 - p*.
    CHECK(*r.result.zeta == doctest::Approx(0.1 + 0.5 + 0.2).epsilon(1e-12));
  }
  CHECK(records[0].seed != records[1].seed);
}

TEST_CASE("removing every link leaves nothing reachable") {
  auto j = small_scenario();
  j["failures"] = io::json::array();
  for (int id = 0; id < 3; ++id) j["failures"].push_back({{"target", {{"link", id}}}, {"kind", "remove-link"}});
  const auto records = run_scenario(scenario_from_json(j, "."));
  for (const auto& r : records) {
    CHECK(r.links_total == 0);
    CHECK_FALSE(r.routes[0].found());
    CHECK(r.result.status == SolveStatus::infeasible);
    CHECK_FALSE(r.result.zeta);
  }
  const auto csv = metrics_csv(records);
  CHECK(csv.find("unreachable") != std::string::npos);
  CHECK(metrics_json(records)[0]["zeta"].is_null());
}

TEST_CASE("failures apply from their time onward") {
  auto j = small_scenario();
  j["trials"] = 3;
  j["failures"] = io::json::parse(R"([{"target": {"link": 1}, "kind": "remove-link", "time": 2}])");
  const auto records = run_scenario(scenario_from_json(j, "."));
  CHECK(records[0].links_total == 3);
  CHECK(records[1].links_total == 3);
  CHECK(records[2].links_total == 2);
  CHECK_FALSE(records[2].result.ok());
}

TEST_CASE("threshold filter feeds routing") {
  auto j = small_scenario();
  j["thresholds"] = {{"default", 0.6}};
  const auto records = run_scenario(scenario_from_json(j, "."));
  CHECK(records[0].links_adapted == 2);
  CHECK_FALSE(records[0].routes[0].found());
}

TEST_CASE("solver choice") {
  auto j = small_scenario();
  j["solver"] = "greedy";
  CHECK(run_scenario(scenario_from_json(j, "."))[0].solver == "greedy");
  j["solver"] = "exact";
  j["limits"] = {{"bnb_cap", 1}, {"exhaustive_cap", 1}};
  CHECK_THROWS_AS(run_scenario(scenario_from_json(j, ".")), Error);
  j["solver"] = "auto";
  CHECK(run_scenario(scenario_from_json(j, "."))[0].solver == "greedy");
}

TEST_CASE("config errors name the field") {
  auto j = small_scenario();
  j["trials"] = 0;
  CHECK(error_of(j).find("scenario.trials") != std::string::npos);

  j = small_scenario();
  j["demands"][0]["target"] = 9;
  CHECK(error_of(j).find("scenario.demands[0].target") != std::string::npos);

  j = small_scenario();
  j["base_graph"]["k"] = 0;
  CHECK(error_of(j).find("scenario.base_graph.k") != std::string::npos);

  j = small_scenario();
  j["solver"] = "quantum";
  CHECK(error_of(j).find("scenario.solver") != std::string::npos);

  j = small_scenario();
  j["colour"] = 1;
  CHECK(error_of(j).find("colour") != std::string::npos);

  j = small_scenario();
  j["demands"].push_back({{"user", 0}, {"source", 1}, {"target", 2}, {"rate", 1}});
  CHECK(error_of(j).find("scenario.demands[1].user") != std::string::npos);

  j = small_scenario();
  j["base_graph"]["placement"][0]["coords"] = {0, 0};
  CHECK_FALSE(error_of(j).empty());
}

TEST_CASE("exports have one row per trial") {
  const auto records = run_scenario(scenario_from_json(small_scenario(), "."));
  const auto csv = metrics_csv(records);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
  CHECK(csv.rfind("trial,seed,", 0) == 0);
  CHECK(metrics_json(records).size() == 2);
  CHECK(solutions_json(records)["trials"].size() == 2);
  const auto t = timings_csv(records);
  CHECK(std::count(t.begin(), t.end(), '\n') == 3);
}

TEST_CASE("trial seeds are derived from the root seed") {
  CHECK(trial_seed(1, 0) == trial_seed(1, 0));
  CHECK(trial_seed(1, 0) != trial_seed(1, 1));
  CHECK(trial_seed(1, 0) != trial_seed(2, 0));
}

TEST_CASE("parallel and serial scaling agree") {
  ScalingParams p;
  p.sizes = {16, 32};
  p.graphs = 2;
  p.queries = 40;
  p.seed = 3;
  const auto a = routing_scaling(p);
  const auto b = routing_scaling_serial(p);
  REQUIRE(a.size() == 2);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].found == a[i].queries);
    CHECK(a[i].mean_steps == b[i].mean_steps);
    CHECK(a[i].mean_diameter == b[i].mean_diameter);
  }
  CHECK(scaling_json(a).size() == 2);
}
