// Command-line front end: topology generation, embedding dumps and the
// stretch / failure / scaling experiments.

#include <cstdio>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "pie/experiments.hpp"
#include "pie/format.hpp"

namespace {

struct Options {
  pie::ExperimentConfig config;
  std::string weights;
  std::size_t levels = 0;  // 0 = auto
  std::vector<std::size_t> sweep{1024, 2048, 4096, 8192, 16384};
};

void add_common(CLI::App* cmd, Options& opt) {
  auto& c = opt.config;
  cmd->add_option("--n", c.glp.n, "GLP node count")->capture_default_str();
  cmd->add_option("--lambda", c.glp.lambda, "GLP target power-law exponent")->capture_default_str();
  cmd->add_option("--clique", c.glp.initial_clique, "GLP initial clique size")->capture_default_str();
  cmd->add_option("--edges-per-step", c.glp.edges_per_step, "GLP links per growth step")
      ->capture_default_str();
  cmd->add_option("--mix", c.glp.mix_probability, "GLP probability of a link-only step")
      ->capture_default_str();
  cmd->add_option_function<double>("--beta", [&c](double b) { c.glp.beta = b; },
                                   "GLP preference shift (default: derived from --lambda)");
  cmd->add_option("--levels", opt.levels, "number of tree levels m (0 = floor(log2 n) - 7)")
      ->capture_default_str();
  cmd->add_option("--weights", opt.weights, "link weights: unit | uniform")
      ->check(CLI::IsMember({"unit", "uniform"}));
  cmd->add_option("--pairs", c.pairs, "source-destination pairs per seed")->capture_default_str();
  cmd->add_option("--seeds", c.seeds, "experiment seeds")->delimiter(',')->capture_default_str();
  cmd->add_flag("--source-routing", c.source_routing, "enable the source-aided extension");
  cmd->add_option_function<std::string>("--edge-list", [&c](const std::string& p) { c.edge_list = p; },
                                        "read the topology from an edge list")
      ->check(CLI::ExistingFile);
  cmd->add_option("--out", c.out_dir, "output directory")->capture_default_str();
  cmd->add_option("--max-rounds", c.sim.max_rounds, "protocol round budget")->capture_default_str();
}

void finalize(Options& opt) {
  if (!opt.weights.empty()) opt.config.weights = pie::parse_weight_mode(opt.weights);
  if (opt.levels > 0) opt.config.levels = opt.levels;
}

std::string render(const auto& writer) {
  std::ostringstream out;
  writer(out);
  return out.str();
}

void print_stats(const char* label, const pie::StretchStats& s) {
  std::printf("%s: routes=%zu delivered=%.6f ttlExceeded=%zu mean=%.6f p90=%.6f p95=%.6f max=%.6f "
              "shortest=%.6f\n",
              label, s.attempted, s.delivered_ratio, s.ttl_exceeded, s.mean, s.p90, s.p95, s.max,
              s.fraction_shortest);
}

int run_generate(Options& opt) {
  for (auto seed : opt.config.seeds) {
    auto g = pie::build_topology(opt.config, seed);
    auto name = "graph-" + std::to_string(seed) + ".txt";
    pie::write_file(opt.config.out_dir, name, render([&](std::ostream& o) { pie::write_edge_list(g, o); }));
    std::printf("seed %llu: %zu nodes, %zu edges, max degree %zu -> %s\n",
                static_cast<unsigned long long>(seed), g.node_count(), g.edge_count(),
                g.max_degree(), name.c_str());
  }
  return 0;
}

int run_embed(Options& opt) {
  for (auto seed : opt.config.seeds) {
    auto g = pie::build_topology(opt.config, seed);
    const auto m = pie::resolve_levels(opt.config, g.node_count());
    auto net = pie::build_network(std::move(g), m, seed, opt.config.sim);
    auto name = "coords-" + std::to_string(seed) + ".csv";
    pie::write_file(opt.config.out_dir, name,
                    render([&](std::ostream& o) { pie::write_coordinate_dump(net.embedding, o); }));
    std::printf("seed %llu: m=%zu tree rounds=%zu tree messages=%zu coord messages=%zu -> %s\n",
                static_cast<unsigned long long>(seed), m, net.tree_rounds(), net.tree_messages(),
                net.embedding.messages, name.c_str());
  }
  return 0;
}

int run_routes(Options& opt) {
  const auto& c = opt.config;
  auto report = pie::eval_stretch(c);
  const auto& primary = report.steered_pooled ? *report.steered_pooled : report.pooled;
  pie::write_file(c.out_dir, "stretch.csv", render([&](std::ostream& o) { pie::write_stretch_csv(report, o); }));
  pie::write_file(c.out_dir, "cdf.csv", render([&](std::ostream& o) { pie::write_cdf_csv(primary, o); }));
  pie::write_file(c.out_dir, "routes.csv", render([&](std::ostream& o) { pie::write_routes_csv(report, o); }));
  if (c.source_routing) {
    pie::write_file(c.out_dir, "flows.csv", render([&](std::ostream& o) { pie::write_flows_csv(report, o); }));
  }
  pie::write_file(c.out_dir, "manifest.json",
                  render([&](std::ostream& o) { pie::write_manifest(c, "routes", o); }));
  print_stats("plain", report.pooled);
  if (report.steered_pooled) print_stats("source-routing", *report.steered_pooled);
  if (report.bifsets) {
    std::printf("bifurcation sets: benefiting=%zu mean=%.4f max=%zu\n", report.bifsets->benefiting,
                report.bifsets->mean, report.bifsets->max);
  }
  return 0;
}

int run_failures(Options& opt) {
  const auto& c = opt.config;
  auto points = pie::eval_failures(c);
  pie::write_file(c.out_dir, "failures.csv",
                  render([&](std::ostream& o) { pie::write_failures_csv(points, o); }));
  pie::write_file(c.out_dir, "manifest.json",
                  render([&](std::ostream& o) { pie::write_manifest(c, "failures", o); }));
  for (const auto& p : points) {
    std::printf("failed=%.3f routes=%zu pie=%.4f baseline=%.4f\n", p.fraction, p.routes,
                p.pie_ratio(), p.baseline_ratio());
  }
  return 0;
}

int run_scaling(Options& opt) {
  const auto& c = opt.config;
  auto rows = pie::eval_scaling(opt.sweep, c);
  pie::write_file(c.out_dir, "scaling.csv",
                  render([&](std::ostream& o) { pie::write_scaling_csv(rows, o); }));
  pie::write_file(c.out_dir, "manifest.json",
                  render([&](std::ostream& o) { pie::write_manifest(c, "scaling", o); }));
  for (const auto& r : rows) {
    std::printf("n=%zu m=%zu dims min/mean/max=%zu/%.2f/%zu stretch=%.4f shortest=%.4f "
                "boundViolations=%zu\n",
                r.n, r.m, r.min_dim, r.mean_dim, r.max_dim, r.mean_stretch, r.fraction_shortest,
                r.bound_violations);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Greedy routing over multi-level isometric tree embeddings"};
  app.require_subcommand(1);
  app.set_version_flag("--version", pie::version_string());

  Options opt;
  auto* generate = app.add_subcommand("generate", "emit the topology as an edge list");
  auto* embed = app.add_subcommand("embed", "emit the coordinate dump");
  auto* routes = app.add_subcommand("routes", "stretch evaluation");
  auto* failures = app.add_subcommand("failures", "success ratio under node failures");
  auto* scaling = app.add_subcommand("scaling", "coordinate counts and stretch versus n");
  for (auto* cmd : {generate, embed, routes, failures, scaling}) add_common(cmd, opt);
  failures->add_option("--fractions", opt.config.failure_fractions, "failed-node fractions")
      ->delimiter(',')
      ->capture_default_str();
  scaling->add_option("--sweep", opt.sweep, "ascending node counts")
      ->delimiter(',')
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // help and version are "errors" with a zero exit code
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    finalize(opt);
    opt.config.validate();
    if (*generate) return run_generate(opt);
    if (*embed) return run_embed(opt);
    if (*routes) return run_routes(opt);
    if (*failures) return run_failures(opt);
    if (*scaling) return run_scaling(opt);
  } catch (const pie::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return 2;
  } catch (const pie::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const pie::ConvergenceError& e) {
    std::cerr << "convergence failure: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
