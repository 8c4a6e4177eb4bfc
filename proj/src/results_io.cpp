#include <cerrno>
#include <cstring>
#include <filesystem>
#include <fstream>

#include "json.hpp"
#include "pie/experiments.hpp"
#include "pie/format.hpp"

#ifndef PIE_VERSION
#define PIE_VERSION "unknown"
#endif

namespace pie {

namespace {

std::string stretch_cell(const RouteTrace& trace, Weight shortest) {
  if (!trace.delivered() || trace.hops() == 0) return "";
  return format_number(stretch(trace, shortest));
}

}  // namespace

void write_stretch_csv(const StretchReport& report, std::ostream& out) {
  out << "seed,src,dst,stretch,outcome\n";
  for (const auto& r : report.routes) {
    const RouteTrace& t = r.flow ? r.flow->steady : r.trace;
    out << r.seed << ',' << r.pair.src << ',' << r.pair.dst << ',' << stretch_cell(t, r.shortest)
        << ',' << to_string(t.outcome) << '\n';
  }
}

void write_cdf_csv(const StretchStats& stats, std::ostream& out) {
  out << "stretch,cumFraction\n";
  for (const auto& [value, cum] : stats.cdf) {
    out << format_number(value) << ',' << format_number(cum) << '\n';
  }
}

void write_routes_csv(const StretchReport& report, std::ostream& out) {
  write_route_header(out);
  for (const auto& r : report.routes) write_route_row(out, r.pair.src, r.pair.dst, r.trace, r.shortest);
}

void write_flows_csv(const StretchReport& report, std::ostream& out) {
  write_flow_header(out);
  for (const auto& r : report.routes) {
    if (r.flow) write_flow_row(out, *r.flow, r.shortest);
  }
}

void write_failures_csv(std::span<const FailurePoint> points, std::ostream& out) {
  out << "fraction,pieRatio,baselineRatio\n";
  for (const auto& p : points) {
    out << format_number(p.fraction) << ',' << format_number(p.pie_ratio()) << ','
        << format_number(p.baseline_ratio()) << '\n';
  }
}

void write_scaling_csv(std::span<const ScalingRow> rows, std::ostream& out) {
  out << "n,m,minDim,meanDim,maxDim,meanStretch,fracShortest\n";
  for (const auto& r : rows) {
    out << r.n << ',' << r.m << ',' << r.min_dim << ',' << format_number(r.mean_dim) << ','
        << r.max_dim << ',' << format_number(r.mean_stretch) << ','
        << format_number(r.fraction_shortest) << '\n';
  }
}

std::string version_string() { return PIE_VERSION; }

void write_manifest(const ExperimentConfig& config, const std::string& command,
                    std::ostream& out) {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["version"] = version_string();
  if (config.edge_list) {
    j["topology"] = {{"edgeList", *config.edge_list}};
  } else {
    j["topology"] = {{"glp",
                      {{"n", config.glp.n},
                       {"lambda", config.glp.lambda},
                       {"initialClique", config.glp.initial_clique},
                       {"edgesPerStep", config.glp.edges_per_step},
                       {"mixProbability", config.glp.mix_probability},
                       {"beta", config.glp.effective_beta()}}}};
  }
  j["weights"] = config.weights ? to_string(*config.weights) : std::string("default");
  j["levels"] = config.levels ? nlohmann::ordered_json(*config.levels) : nlohmann::ordered_json("auto");
  j["pairs"] = config.pairs;
  j["seeds"] = config.seeds;
  j["failureFractions"] = config.failure_fractions;
  j["sourceRouting"] = config.source_routing;
  j["sim"] = {{"maxRounds", config.sim.max_rounds},
              {"convergenceWindow", config.sim.convergence_window}};
  out << j.dump(2) << '\n';
}

void write_file(const std::string& dir, const std::string& name, const std::string& contents) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create " + dir + ": " + ec.message());
  const auto path = std::filesystem::path(dir) / name;
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot open " + path.string() + ": " + std::strerror(errno));
  file << contents;
  file.flush();
  if (!file) throw std::runtime_error("write failed for " + path.string() + ": " + std::strerror(errno));
}

}  // namespace pie
