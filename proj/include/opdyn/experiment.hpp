#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "opdyn/consensus.hpp"
#include "opdyn/dynamics.hpp"
#include "opdyn/graph.hpp"
#include "opdyn/influence.hpp"

namespace opdyn {

using nlohmann::json;

// Seeded generator used for random alpha / x(0). Draw order: alpha, then x(0).
inline constexpr const char* kGeneratorDescription =
    "std::mt19937_64; u -> ((u >> 11) + 0.5) * 2^-53";

/// Everything needed to run one experiment or a sweep. Mirrors the JSON
/// config file and the CLI flags.
struct RunConfig {
  // Exactly one of network_path / edges supplies the graph. Edges are 1-based.
  std::optional<std::string> network_path;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::optional<std::size_t> n;

  // One value broadcasts to all agents.
  std::vector<double> alpha;
  bool alpha_random = false;
  std::vector<double> x0;
  bool x0_random = false;

  std::vector<double> f = {0.5};
  // Uniform self-confidence values to sweep; replaces alpha per point.
  std::vector<double> alpha_sweep;
  double r = 0.8;

  double eps_consensus = 1e-8;
  // When set, also report the first time the spread drops below this.
  std::optional<double> eps_time;
  std::size_t max_steps = 1'000'000;
  std::size_t stride = 1;

  std::string output_dir;
  std::optional<std::uint64_t> seed;
};

/// Range checks that need no graph: f, r, tolerances, explicit alpha and x0
/// values, seed presence. Throws ParameterError naming the field.
void validate(const RunConfig& config);

RunConfig config_from_json(const json& j);
/// Reads a JSON config. A relative "network" path resolves against the
/// config file's directory.
RunConfig load_config(const std::filesystem::path& path);
json to_json(const RunConfig& config);

/// Graph plus concrete per-agent vectors after broadcasting and seeded draws.
struct ResolvedInputs {
  TrustGraph graph;
  std::vector<double> alpha;
  std::vector<double> x0;
};

ResolvedInputs resolve(const RunConfig& config);

enum class RunMode { Simulate, Analyze };

struct RunReport {
  json config_echo;  // replayable config for exactly this point
  AgentParams params;
  std::vector<double> x0;
  WeightModel weights;
  PressureMatrix pressure;
  std::optional<Trajectory> trajectory;  // absent in Analyze mode
  std::optional<double> timing_eps;
  std::optional<std::size_t> timing_convergence_time;
  ConsensusReport consensus;
};

/// Convergence time used for sweep comparisons: the timing-eps time when
/// configured, otherwise the trajectory's own convergence time.
std::optional<std::size_t> comparison_time(const RunReport& report);

/// Single parameter point: builds graph, weights, B, simulates, predicts and
/// verifies. Writes exports when output_dir is set. Throws ParameterError
/// when the config describes more than one point.
RunReport run(const RunConfig& config, RunMode mode = RunMode::Simulate);

/// One run per (alpha_sweep value, f value) pair, alpha-major. All points
/// share the graph and x(0). Points run concurrently; results are ordered by
/// sweep index. Writes point_<k>/ subdirectories and sweep_summary.csv.
std::vector<RunReport> sweep(const RunConfig& config,
                             RunMode mode = RunMode::Simulate);

struct MatrixComparison {
  std::string name;
  Matrix printed;
  Matrix computed;
  double max_delta = 0.0;
};

struct PaperReproduction {
  RunReport baseline;                     // f = 0.5
  std::vector<RunReport> pressure_vs_none;  // f = 0, 0.5
  std::vector<RunReport> pressure_sweep;    // six f values
  std::vector<RunReport> confidence_sweep;  // four uniform alpha, f = 0.3
  std::vector<MatrixComparison> comparisons;  // W, W', B
};

/// Runs the embedded six-agent reference experiments and compares the
/// weight matrices against the published ones.
PaperReproduction reproduce_paper(const std::string& output_dir = {});

/// Export helpers.
std::string format_double(double v);
void write_matrix_csv(const std::filesystem::path& path, const Matrix& m);
void write_trajectory_csv(const std::filesystem::path& path,
                          const Trajectory& traj);
json report_to_json(const RunReport& report);
void write_run(const RunReport& report, const std::filesystem::path& dir);
void write_sweep_summary(const std::filesystem::path& path,
                         const std::vector<RunReport>& reports);
std::string pressure_matrix_filename(double f);

}  // namespace opdyn
