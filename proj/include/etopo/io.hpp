#pragma once

// JSON readers and writers for the file formats the CLI exchanges. Readers
// reject unknown fields and report problems as Errc::config errors prefixed
// with the offending field path.

#include <filesystem>
#include <string>

#include "etopo/adaption.hpp"
#include "etopo/assignment.hpp"
#include "etopo/base_graph.hpp"
#include "etopo/overlay.hpp"
#include "etopo/routing.hpp"
#include "json.hpp"

namespace etopo::io {

using json = nlohmann::json;

json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

// Pretty-printed with a trailing newline.
std::string dump(const json& value);

// {"nodes": [ids], "links": [{id, a, b, level, swap_success, photon_loss,
// fidelity, throughput, resource_count}]}; resource_count defaults to 1.
json network_to_json(const OverlayNetwork& network);
OverlayNetwork network_from_json(const json& value, const std::string& where = "network");

// [{"node": id, "coords": [..]}]
json placement_to_json(const ExplicitPlacement& placement);
ExplicitPlacement placement_from_json(const json& value, const std::string& where = "placement");

// {"default": r, "levels": {"l": r, ...}}
json thresholds_to_json(const ThresholdPolicy& policy);
ThresholdPolicy thresholds_from_json(const json& value, const std::string& where = "thresholds");

json failure_to_json(const FailureEvent& event);
FailureEvent failure_from_json(const json& value, const std::string& where = "failure");

json demand_to_json(const Demand& demand);
Demand demand_from_json(const json& value, const std::string& where = "demand");

// S* report: thresholds, counts and one entry per link with its p*.
json adapted_to_json(const AdaptedLinkSet& adapted, const ThresholdPolicy& policy);
std::string adapted_to_csv(const AdaptedLinkSet& adapted);

json routing_to_json(const RoutingOutcome& outcome);

// Instance file. The base-graph is stored as {k, n, placement} and S* as
// {thresholds, pstar_mode}; both are rebuilt on load.
json instance_to_json(const AssignmentInstance& instance, const ThresholdPolicy& policy,
                      PStarMode mode);
AssignmentInstance instance_from_json(const json& value, const std::string& where = "instance");

json solution_to_json(const SolveResult& result);
AssignmentSolution solution_from_json(const json& value, const std::string& where = "solution");

// {"vertices": count or [labels], "edges": [[a, b], ...]}
json conflict_graph_to_json(const ConflictGraph& graph);
ConflictGraph conflict_graph_from_json(const json& value, const std::string& where = "graph");

}  // namespace etopo::io
