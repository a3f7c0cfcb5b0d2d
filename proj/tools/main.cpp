#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "orientsel/errors.hpp"
#include "orientsel/log.hpp"
#include "orientsel/pipeline.hpp"
#include "orientsel/tag_rules.hpp"

namespace {

using namespace orientsel;

GeoPoint parse_lonlat(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos)
    throw ConfigError("expected lon,lat but got \"" + text + "\"");
  try {
    std::size_t used = 0;
    const double lon = std::stod(text.substr(0, comma), &used);
    if (used != comma) throw std::invalid_argument("trailing characters");
    const std::string lat_part = text.substr(comma + 1);
    const double lat = std::stod(lat_part, &used);
    if (used != lat_part.size()) throw std::invalid_argument("trailing characters");
    return {lon, lat};
  } catch (const std::exception&) {
    throw ConfigError("expected lon,lat but got \"" + text + "\"");
  }
}

int cmd_run(const std::string& config_path, const std::string& output_dir) {
  PipelineConfig cfg = load_config(config_path);
  if (!output_dir.empty()) cfg.output_dir = output_dir;

  Pipeline pipeline(std::move(cfg));
  const RunSummary summary = pipeline.run();

  std::cout << "manifest: " << summary.manifest_path.string() << "\n";
  std::cout << "contexts: " << summary.contexts_ok << " ok, " << summary.contexts_failed
            << " failed\n";
  return summary.contexts_failed > 0 ? 2 : 0;
}

int cmd_route(const std::string& config_path, const std::string& from, const std::string& to) {
  PipelineConfig cfg = load_config(config_path);
  if (!from.empty() || !to.empty()) {
    if (from.empty() || to.empty()) throw ConfigError("--from and --to must be given together");
    cfg.route_from = parse_lonlat(from);
    cfg.route_to = parse_lonlat(to);
    cfg.has_route_endpoints = true;
    cfg.route_file.reset();
  }

  Pipeline pipeline(std::move(cfg));
  pipeline.prepare();
  std::cout << pipeline.route_geojson().dump(2) << "\n";
  return 0;
}

int cmd_score(const std::string& config_path, const std::string& context_name, int top) {
  PipelineConfig cfg = load_config(config_path);

  const ContextSpec* spec = nullptr;
  for (const auto& c : cfg.contexts) {
    if (c.name == context_name) {
      spec = &c;
      break;
    }
  }
  if (spec == nullptr) throw ConfigError("unknown context \"" + context_name + "\"");
  const ContextSpec chosen = *spec;

  Pipeline pipeline(std::move(cfg));
  pipeline.prepare();
  ContextResult res = pipeline.evaluate_context(chosen);
  if (top >= 0 && res.ranked.size() > static_cast<std::size_t>(top))
    res.ranked.resize(static_cast<std::size_t>(top));

  std::cout << std::left << std::setw(5) << "rank" << std::setw(10) << "S_f" << std::setw(6)
            << "type" << std::setw(28) << "category" << std::setw(10) << "dist_m"
            << "id / name\n";
  for (const auto& rc : res.ranked) {
    std::ostringstream sf;
    sf << std::fixed << std::setprecision(4) << rc.breakdown.total;
    std::ostringstream dist;
    dist << std::fixed << std::setprecision(1) << rc.breakdown.dist_to_route;
    std::cout << std::left << std::setw(5) << rc.rank << std::setw(10) << sf.str() << std::setw(6)
              << feature_type_name(rc.candidate.type) << std::setw(28) << rc.candidate.category
              << std::setw(10) << dist.str() << rc.candidate.id;
    if (!rc.candidate.name.empty()) std::cout << " (" << rc.candidate.name << ")";
    std::cout << "\n";
  }
  return 0;
}

int cmd_validate(const std::string& config_path) {
  const PipelineConfig cfg = load_config(config_path);
  const auto rules = load_tag_rules(cfg.rules_path);
  if (!std::filesystem::exists(cfg.data_path))
    throw ConfigError("data file not found: " + cfg.data_path.string());

  std::cout << "config OK: " << cfg.scales.size() << " scales, " << cfg.contexts.size()
            << " contexts, " << rules.size() << " tag rules\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Route-dependent orientation information selection"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output_dir;
  std::string from;
  std::string to;
  std::string context_name;
  int top = 10;

  CLI::App* run = app.add_subcommand("run", "Run the full pipeline and write GeoJSON bundles");
  run->add_option("--config", config_path, "Pipeline config JSON")->required();
  run->add_option("--output-dir", output_dir, "Override the configured output directory");

  CLI::App* route = app.add_subcommand("route", "Compute the route and print it as GeoJSON");
  route->add_option("--config", config_path, "Pipeline config JSON")->required();
  route->add_option("--from", from, "Route start as lon,lat (overrides config)");
  route->add_option("--to", to, "Route end as lon,lat (overrides config)");

  CLI::App* score = app.add_subcommand("score", "Print the ranked candidate table for one context");
  score->add_option("--config", config_path, "Pipeline config JSON")->required();
  score->add_option("--context", context_name, "Context name from the config")->required();
  score->add_option("--top", top, "Number of rows to print");

  CLI::App* validate = app.add_subcommand("validate", "Check config and tag rules, no execution");
  validate->add_option("--config", config_path, "Pipeline config JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return 1;
  }

  try {
    if (run->parsed()) return cmd_run(config_path, output_dir);
    if (route->parsed()) return cmd_route(config_path, from, to);
    if (score->parsed()) return cmd_score(config_path, context_name, top);
    if (validate->parsed()) return cmd_validate(config_path);
  } catch (const orientsel::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const orientsel::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
