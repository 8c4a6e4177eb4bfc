#include "pie/experiments.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

namespace pie {

void ExperimentConfig::validate() const {
  if (pairs < 1) throw ValidationError("pairs must be >= 1");
  if (seeds.empty()) throw ValidationError("at least one seed is required");
  for (double f : failure_fractions) {
    if (!(f >= 0.0 && f < 1.0)) throw ValidationError("failure fractions must lie in [0, 1)");
  }
  if (levels && *levels < 1) throw ValidationError("levels must be >= 1");
  if (!edge_list) glp.validate();
  sim.validate();
}

std::size_t default_levels(std::size_t n) {
  if (n < 2) throw ValidationError("default_levels needs n >= 2");
  const auto floor_log2 = static_cast<std::size_t>(std::bit_width(n) - 1);
  return floor_log2 > 8 ? floor_log2 - 7 : 1;
}

Graph build_topology(const ExperimentConfig& config, std::uint64_t seed) {
  if (config.edge_list) {
    Graph g = largest_component(load_edge_list_file(*config.edge_list).graph);
    return config.weights ? assign_weights(g, *config.weights, seed) : g;
  }
  return assign_weights(generate_glp(config.glp, seed), config.weights.value_or(WeightMode::kUnit),
                        seed);
}

std::size_t resolve_levels(const ExperimentConfig& config, std::size_t n) {
  return config.levels ? *config.levels : default_levels(n);
}

StretchStats summarize_stretch(std::vector<double> values, std::size_t attempted,
                               std::size_t ttl_exceeded) {
  StretchStats s;
  s.attempted = attempted;
  s.ttl_exceeded = ttl_exceeded;
  s.delivered = values.size();
  s.delivered_ratio = attempted ? static_cast<double>(s.delivered) / static_cast<double>(attempted) : 0.0;
  if (values.empty()) return s;

  // Integer-free weights can leave shortest routes a rounding error above 1.
  for (double& v : values) {
    if (std::abs(v - 1.0) <= 1e-12) v = 1.0;
  }
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  for (double v : values) s.sum += v;
  s.mean = s.sum / n;
  auto rank = [&](double q) {
    auto idx = static_cast<std::size_t>(std::ceil(q * n));
    return values[std::min(values.size() - 1, idx == 0 ? 0 : idx - 1)];
  };
  s.p90 = rank(0.90);
  s.p95 = rank(0.95);
  s.max = values.back();
  const auto shortest = static_cast<std::size_t>(
      std::upper_bound(values.begin(), values.end(), 1.0) - values.begin());
  s.fraction_shortest = static_cast<double>(shortest) / n;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i + 1 == values.size() || values[i + 1] != values[i]) {
      s.cdf.emplace_back(values[i], static_cast<double>(i + 1) / n);
    }
  }
  s.values = std::move(values);
  return s;
}

StretchStats merge_stretch(std::span<const StretchStats> parts) {
  std::vector<double> all;
  std::size_t attempted = 0;
  std::size_t ttl = 0;
  double sum = 0.0;
  for (const auto& p : parts) {
    all.insert(all.end(), p.values.begin(), p.values.end());
    attempted += p.attempted;
    ttl += p.ttl_exceeded;
    sum += p.sum;
  }
  StretchStats merged = summarize_stretch(std::move(all), attempted, ttl);
  merged.sum = sum;
  if (merged.delivered) merged.mean = sum / static_cast<double>(merged.delivered);
  return merged;
}

namespace {

std::uint64_t pair_seed(std::uint64_t seed, std::uint64_t unit) { return derive_seed(seed, unit); }

StretchStats stats_from_traces(std::span<const RouteTrace> traces, std::span<const Weight> dist) {
  std::vector<double> values;
  values.reserve(traces.size());
  std::size_t ttl = 0;
  for (std::size_t i = 0; i < traces.size(); ++i) {
    if (traces[i].outcome == RouteOutcome::kTtlExceeded) ++ttl;
    if (traces[i].delivered()) values.push_back(stretch(traces[i], dist[i]));
  }
  return summarize_stretch(std::move(values), traces.size(), ttl);
}

}  // namespace

StretchReport eval_stretch(const ExperimentConfig& config) {
  config.validate();
  StretchReport report;
  report.seeds = config.seeds;
  std::vector<FlowRecord> all_flows;
  for (std::uint64_t seed : config.seeds) {
    Graph g = build_topology(config, seed);
    const std::size_t m = resolve_levels(config, g.node_count());
    PieNetwork net = build_network(std::move(g), m, seed, config.sim);
    report.levels.push_back(m);

    auto eligible = alive_nodes(net.graph.node_count(), nullptr);
    auto pairs = sample_pairs(eligible, config.pairs, pair_seed(seed, 0));
    auto dist = pair_distances(net.graph, pairs, config.exec);
    auto traces = trace_routes(net, pairs, nullptr, config.exec);
    report.per_seed.push_back(stats_from_traces(traces, dist));

    std::vector<FlowRecord> flows;
    if (config.source_routing) {
      flows = simulate_flows(net, pairs, nullptr, config.exec);
      std::vector<RouteTrace> steady;
      steady.reserve(flows.size());
      for (const auto& f : flows) steady.push_back(f.steady);
      report.steered_per_seed.push_back(stats_from_traces(steady, dist));
    }
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      RouteRecord rec{seed, pairs[i], std::move(traces[i]), dist[i], std::nullopt};
      if (config.source_routing) {
        all_flows.push_back(flows[i]);
        rec.flow = std::move(flows[i]);
      }
      report.routes.push_back(std::move(rec));
    }
  }
  report.pooled = merge_stretch(report.per_seed);
  if (config.source_routing) {
    report.steered_pooled = merge_stretch(report.steered_per_seed);
    report.bifsets = bifset_stats(all_flows);
  }
  return report;
}

double FailurePoint::pie_ratio() const {
  return routes ? static_cast<double>(pie_delivered) / static_cast<double>(routes) : 1.0;
}

double FailurePoint::baseline_ratio() const {
  return routes ? static_cast<double>(baseline_delivered) / static_cast<double>(routes) : 1.0;
}

std::vector<FailurePoint> eval_failures(const ExperimentConfig& config) {
  config.validate();
  std::vector<FailurePoint> points(config.failure_fractions.size());
  for (std::size_t j = 0; j < points.size(); ++j) points[j].fraction = config.failure_fractions[j];

  for (std::uint64_t seed : config.seeds) {
    Graph g = build_topology(config, seed);
    const std::size_t m = resolve_levels(config, g.node_count());
    PieNetwork net = build_network(std::move(g), m, seed, config.sim);
    for (std::size_t j = 0; j < points.size(); ++j) {
      FailureSet failures = inject_failures(net.graph, points[j].fraction, pair_seed(seed, 1000 + j));
      auto eligible = alive_nodes(net.graph.node_count(), &failures);
      auto pairs = sample_pairs(eligible, config.pairs, pair_seed(seed, 2000 + j));
      auto traces = trace_routes(net, pairs, &failures, config.exec);
      auto baseline = baseline_delivery(net.graph, pairs, &failures, config.exec);
      points[j].routes += pairs.size();
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (traces[i].delivered()) ++points[j].pie_delivered;
        if (baseline[i]) ++points[j].baseline_delivered;
      }
    }
  }
  return points;
}

std::size_t dimension_bound_violations(const PieNetwork& net) {
  const std::size_t max_degree = net.graph.max_degree();
  const std::size_t log_delta = max_degree > 1 ? std::bit_width(max_degree - 1) : 0;
  std::size_t violations = 0;
  for (std::size_t l = 0; l < net.forests.size(); ++l) {
    const auto depth = hop_depths(net.forests[l]);
    for (NodeId u = 0; u < net.graph.node_count(); ++u) {
      if (net.embedding.at(u, l).dim() > 1 + log_delta * depth[u]) ++violations;
    }
  }
  return violations;
}

std::vector<ScalingRow> eval_scaling(std::span<const std::size_t> sweep,
                                     const ExperimentConfig& config) {
  if (!std::is_sorted(sweep.begin(), sweep.end())) {
    throw ValidationError("scaling sweep must be ascending");
  }
  std::vector<ScalingRow> rows;
  for (std::size_t n : sweep) {
    ExperimentConfig cfg = config;
    cfg.edge_list.reset();
    cfg.glp.n = n;
    cfg.validate();
    ScalingRow row;
    row.n = n;
    row.min_dim = static_cast<std::size_t>(-1);
    double dim_sum = 0.0;
    std::size_t dim_count = 0;
    std::vector<StretchStats> parts;
    for (std::uint64_t seed : cfg.seeds) {
      Graph g = build_topology(cfg, seed);
      row.m = resolve_levels(cfg, g.node_count());
      PieNetwork net = build_network(std::move(g), row.m, seed, cfg.sim);
      for (NodeId u = 0; u < net.graph.node_count(); ++u) {
        const std::size_t d = net.embedding.total_dim(u);
        row.min_dim = std::min(row.min_dim, d);
        row.max_dim = std::max(row.max_dim, d);
        dim_sum += static_cast<double>(d);
        ++dim_count;
      }
      row.bound_violations += dimension_bound_violations(net);

      auto eligible = alive_nodes(net.graph.node_count(), nullptr);
      auto pairs = sample_pairs(eligible, cfg.pairs, pair_seed(seed, 0));
      auto dist = pair_distances(net.graph, pairs, cfg.exec);
      auto traces = trace_routes(net, pairs, nullptr, cfg.exec);
      parts.push_back(stats_from_traces(traces, dist));
    }
    row.mean_dim = dim_count ? dim_sum / static_cast<double>(dim_count) : 0.0;
    auto pooled = merge_stretch(parts);
    row.mean_stretch = pooled.mean;
    row.fraction_shortest = pooled.fraction_shortest;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace pie
