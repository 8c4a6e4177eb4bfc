#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "pie/graph.hpp"
#include "pie/network.hpp"
#include "pie/route_eval.hpp"
#include "pie/sim_kernel.hpp"
#include "pie/source_routing.hpp"

namespace pie {

struct ExperimentConfig {
  GlpParams glp;
  /// When set, the topology is read from this edge list instead of GLP.
  std::optional<std::string> edge_list;
  /// Unset: unit weights for GLP, file weights for an edge list.
  std::optional<WeightMode> weights;
  /// Number of locality levels; unset means default_levels(n).
  std::optional<std::size_t> levels;
  std::size_t pairs = 10000;
  std::vector<std::uint64_t> seeds{1, 2, 3};
  std::vector<double> failure_fractions{0.0, 0.02, 0.04, 0.06, 0.08, 0.10};
  bool source_routing = false;
  std::string out_dir = ".";
  SimConfig sim;
  Execution exec = Execution::kParallel;

  void validate() const;
};

/// max(1, floor(log2 n) - 7).
std::size_t default_levels(std::size_t n);

/// Topology for one seed: GLP (seeded) or the edge list restricted to its
/// largest component, then weighted per `weights`.
Graph build_topology(const ExperimentConfig& config, std::uint64_t seed);

std::size_t resolve_levels(const ExperimentConfig& config, std::size_t n);

struct StretchStats {
  std::size_t attempted = 0;
  std::size_t delivered = 0;
  std::size_t ttl_exceeded = 0;
  double sum = 0.0;
  double mean = 0.0;
  double p90 = 0.0;
  double p95 = 0.0;
  double max = 0.0;
  double fraction_shortest = 0.0;
  double delivered_ratio = 0.0;
  /// (stretch, fraction of delivered routes with stretch <= value), one row
  /// per distinct value.
  std::vector<std::pair<double, double>> cdf;
  /// Sorted stretch values of delivered routes.
  std::vector<double> values;
};

/// Statistics from raw stretch values. `attempted` counts every route tried,
/// delivered or not.
StretchStats summarize_stretch(std::vector<double> values, std::size_t attempted,
                               std::size_t ttl_exceeded);

/// Pools per-seed statistics: counts and sums add, quantiles come from the
/// merged sample.
StretchStats merge_stretch(std::span<const StretchStats> parts);

struct RouteRecord {
  std::uint64_t seed = 0;
  NodePair pair{};
  RouteTrace trace;
  Weight shortest = 0.0;
  std::optional<FlowRecord> flow;
};

struct StretchReport {
  std::vector<std::uint64_t> seeds;
  std::vector<std::size_t> levels;  // per seed
  std::vector<StretchStats> per_seed;
  StretchStats pooled;
  /// Present with source routing: steady-state stretch of the extension.
  std::vector<StretchStats> steered_per_seed;
  std::optional<StretchStats> steered_pooled;
  std::optional<BifSetStats> bifsets;
  std::vector<RouteRecord> routes;
};

StretchReport eval_stretch(const ExperimentConfig& config);

struct FailurePoint {
  double fraction = 0.0;
  std::size_t routes = 0;
  std::size_t pie_delivered = 0;
  std::size_t baseline_delivered = 0;

  double pie_ratio() const;
  double baseline_ratio() const;
  std::size_t pie_failures() const { return routes - pie_delivered; }
  std::size_t baseline_failures() const { return routes - baseline_delivered; }
};

/// Success ratios per failure fraction, pooled over seeds. Failures are
/// injected after convergence; pairs are sampled among alive nodes.
std::vector<FailurePoint> eval_failures(const ExperimentConfig& config);

struct ScalingRow {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t min_dim = 0;
  double mean_dim = 0.0;
  std::size_t max_dim = 0;
  double mean_stretch = 0.0;
  double fraction_shortest = 0.0;
  /// Nodes breaking dim <= 1 + ceil(log2 maxdeg) * hopDepth in some tree.
  std::size_t bound_violations = 0;
};

/// Nodes u and levels l where the level-l vector of u is longer than
/// 1 + ceil(log2 maxdeg) * hopDepth(u).
std::size_t dimension_bound_violations(const PieNetwork& net);

/// Per-n coordinate counts (summed over each node's m trees) and route
/// quality, with m = default_levels(n) unless `config.levels` is set.
std::vector<ScalingRow> eval_scaling(std::span<const std::size_t> sweep,
                                     const ExperimentConfig& config);

// ---------------------------------------------------------------------------
// Result files

void write_stretch_csv(const StretchReport& report, std::ostream& out);
void write_cdf_csv(const StretchStats& stats, std::ostream& out);
void write_routes_csv(const StretchReport& report, std::ostream& out);
void write_flows_csv(const StretchReport& report, std::ostream& out);
void write_failures_csv(std::span<const FailurePoint> points, std::ostream& out);
void write_scaling_csv(std::span<const ScalingRow> rows, std::ostream& out);

/// Version string baked in at configure time (git describe).
std::string version_string();

/// JSON manifest with the configuration, seeds, command and version.
void write_manifest(const ExperimentConfig& config, const std::string& command,
                    std::ostream& out);

/// Writes `contents` to `dir/name`, creating `dir` if needed. I/O failures
/// throw std::runtime_error with the system message.
void write_file(const std::string& dir, const std::string& name, const std::string& contents);

}  // namespace pie
