#pragma once

// Scenario runner: seeded network generation, the per-trial
// map -> adapt -> route -> assign pipeline and metrics export.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "etopo/adaption.hpp"
#include "etopo/assignment.hpp"
#include "etopo/base_graph.hpp"
#include "etopo/io.hpp"
#include "etopo/overlay.hpp"
#include "etopo/routing.hpp"

namespace etopo {

struct Range {
  double lo = 0.0;
  double hi = 0.0;

  friend bool operator==(const Range&, const Range&) = default;
};

struct GeneratorParams {
  std::uint32_t nodes = 0;
  std::uint64_t links = 0;
  std::vector<double> level_weights{1.0};  // weight of level l at index l - 1
  Range swap_success{1.0, 1.0};
  Range photon_loss{0.0, 0.0};
  Range fidelity{1.0, 1.0};
  Range throughput{1.0, 1.0};
  int resources_min = 1;
  int resources_max = 1;

  friend bool operator==(const GeneratorParams&, const GeneratorParams&) = default;
};

// Problems with the parameters, empty when valid.
std::vector<std::string> validate_params(const GeneratorParams& params);

// Nodes 0..nodes-1 and `links` distinct node pairs. Throws invalid_argument
// on invalid params, including more links than node pairs.
OverlayNetwork generate_network(const GeneratorParams& params, std::uint64_t seed);

// Lattice of n^k nodes (k = 1 or 2) with nearest-neighbor links plus one
// long-range contact per node drawn with probability proportional to d^-k.
// Node ids are row-major coordinates; every link has probability 1 and the
// level floor(log2 d) + 1.
struct LatticeNetwork {
  OverlayNetwork network;
  ExplicitPlacement placement;
  int k = 0;
  std::int64_t n = 0;
};

LatticeNetwork kleinberg_lattice(int k, std::int64_t n, std::uint64_t seed);

// ---- scenarios ---------------------------------------------------------------

struct NetworkFile {
  std::filesystem::path path;

  friend bool operator==(const NetworkFile&, const NetworkFile&) = default;
};

using NetworkSource = std::variant<NetworkFile, OverlayNetwork, GeneratorParams>;

struct BaseGraphParams {
  int k = 1;
  std::int64_t n = 2;
  std::optional<std::uint64_t> seed;  // fixed placement seed, else drawn per trial
  std::optional<ExplicitPlacement> placement;

  friend bool operator==(const BaseGraphParams&, const BaseGraphParams&) = default;
};

enum class SolverChoice { automatic, exact, greedy };

const char* to_string(SolverChoice choice);
SolverChoice solver_choice_from_string(const std::string& name);

struct Scenario {
  NetworkSource network;
  BaseGraphParams base_graph;
  ThresholdPolicy thresholds;
  PStarMode pstar_mode = PStarMode::measured;
  double noise_amplitude = 0.0;
  std::vector<Demand> demands;
  std::vector<FailureEvent> failures;
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  SolverChoice solver = SolverChoice::automatic;
  ExactLimits limits;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

// Relative network file paths resolve against base_dir. Throws Errc::config
// with the offending field path.
Scenario scenario_from_json(const io::json& value, const std::filesystem::path& base_dir = {});
io::json scenario_to_json(const Scenario& scenario);
Scenario load_scenario(const std::filesystem::path& path);

// The overlay network a scenario starts from: loaded, inline or generated
// from the scenario seed.
OverlayNetwork scenario_network(const Scenario& scenario);

// Cross-checks the scenario against its network; throws Errc::config.
void validate_scenario(const Scenario& scenario, const OverlayNetwork& network);

std::uint64_t trial_seed(std::uint64_t root, std::uint64_t trial);

struct PhaseTimes {
  double map = 0.0;
  double adapt = 0.0;
  double route = 0.0;
  double assign = 0.0;
};

struct TrialRecord {
  std::uint64_t trial = 0;
  std::uint64_t seed = 0;
  std::size_t links_total = 0;    // |S| after failures
  std::size_t links_adapted = 0;  // |S*|
  std::vector<RoutingOutcome> routes;
  std::string solver;
  SolveResult result;
  PhaseTimes times;
  AssignmentInstance instance;
};

std::vector<TrialRecord> run_scenario(const Scenario& scenario);

// Wall times are excluded from both outputs so they stay byte-identical.
std::string metrics_csv(const std::vector<TrialRecord>& records);
io::json metrics_json(const std::vector<TrialRecord>& records);
io::json solutions_json(const std::vector<TrialRecord>& records);
std::string timings_csv(const std::vector<TrialRecord>& records);

// ---- routing scaling ------------------------------------------------------------

struct ScalingRow {
  std::int64_t n = 0;
  std::size_t queries = 0;
  std::size_t found = 0;
  double mean_steps = 0.0;
  double mean_diameter = 0.0;
  double ratio = 0.0;  // mean_steps / (log2 n)^2
};

struct ScalingParams {
  int k = 2;
  std::vector<std::int64_t> sizes{64, 128, 256, 512};
  std::size_t graphs = 4;
  std::size_t queries = 250;  // per graph
  std::uint64_t seed = 0;
};

std::vector<ScalingRow> routing_scaling(const ScalingParams& params);
std::vector<ScalingRow> routing_scaling_serial(const ScalingParams& params);

std::string scaling_csv(const std::vector<ScalingRow>& rows);
io::json scaling_json(const std::vector<ScalingRow>& rows);

}  // namespace etopo
