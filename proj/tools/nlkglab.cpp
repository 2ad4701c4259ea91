#include <cstdio>
#include <exception>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nlkg/commands.hpp"
#include "nlkg/config.hpp"
#include "nlkg/errors.hpp"
#include "nlkg/report.hpp"

namespace {

nlkg::RunConfig resolve_config(const std::string& path,
                               const std::string& preset_name) {
  if (!path.empty() && !preset_name.empty())
    throw nlkg::ConfigError("pass either --config or --preset, not both");
  if (!path.empty()) return nlkg::load_config(path);
  return nlkg::preset(preset_name.empty() ? "default" : preset_name);
}

std::vector<nlkg::RunConfig> load_sweep(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw nlkg::ConfigError("sweep: cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  nlkg::Json j;
  try {
    j = nlkg::Json::parse(ss.str());
  } catch (const std::exception& e) {
    throw nlkg::ConfigError(std::string("sweep: bad JSON: ") + e.what());
  }
  if (!j.is_array())
    throw nlkg::ConfigError("sweep: expected a JSON array of configurations");
  std::vector<nlkg::RunConfig> runs;
  for (const auto& item : j)
    runs.push_back(nlkg::config_from_json_text(item.dump()));
  return runs;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "spectral laboratory for a nonlinear Klein-Gordon equation with a "
      "potential well on a line segment"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, preset_name, out_dir, sweep_path;
  std::string mode = "both";
  bool as_json = false;
  long long seed = -1;
  nlkg::ScanOptions scan;

  app.add_option("-c,--config", config_path, "JSON run configuration");
  app.add_option("--preset", preset_name,
                 "built-in configuration: " + nlkg::preset_names());
  app.add_option("-o,--out", out_dir, "directory for reports and series");
  app.add_flag("--json", as_json, "print the JSON report instead of text");
  app.add_option("--seed", seed, "override the run seed");

  app.add_subcommand("spectrum",
                     "eigenmodes, resonance checks, radiation channels");

  auto* fg = app.add_subcommand(
      "fgr", "normal form, damping matrices, interaction coefficients");
  fg->add_flag("--scan", scan.enabled,
               "scan the lowest damping rate against its jet derivative");
  fg->add_option("--scan-points", scan.points, "scan resolution")
      ->check(CLI::PositiveNumber);
  fg->add_option("--scan-lo", scan.lo, "scan range, lower end");
  fg->add_option("--scan-hi", scan.hi, "scan range, upper end");

  auto* ev = app.add_subcommand(
      "evolve", "integrate the wave equation and/or the reduced model");
  ev->add_option("--mode", mode, "pde | reduced | both")
      ->check(CLI::IsMember({"pde", "reduced", "both"}));

  auto* sw = app.add_subcommand(
      "sweep", "batch of fgr runs from a JSON array of configurations");
  sw->add_option("file", sweep_path, "JSON array of run configurations")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 4;  // command-line misuse is a configuration error
  }

  try {
    nlkg::CmdOptions opt;
    opt.out_dir = out_dir;
    nlkg::Json rep;
    if (sw->parsed()) {
      auto runs = load_sweep(sweep_path);
      if (seed >= 0)
        for (auto& c : runs) c.seed = static_cast<unsigned long long>(seed);
      rep = nlkg::cmd_sweep(runs, opt);
    } else {
      nlkg::RunConfig c = resolve_config(config_path, preset_name);
      if (seed >= 0) c.seed = static_cast<unsigned long long>(seed);
      if (app.got_subcommand("spectrum"))
        rep = nlkg::cmd_spectrum(c, opt);
      else if (fg->parsed())
        rep = nlkg::cmd_fgr(c, opt, scan);
      else
        rep = nlkg::cmd_evolve(c, mode, opt);
    }
    if (as_json)
      std::fputs((rep.dump(2) + "\n").c_str(), stdout);
    else
      std::fputs(nlkg::render_text(rep).c_str(), stdout);
    return 0;
  } catch (const nlkg::ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  } catch (const nlkg::HypothesisError& e) {
    std::fprintf(stderr, "hypothesis violated: %s\n", e.what());
    return 2;
  } catch (const nlkg::ResolutionError& e) {
    std::fprintf(stderr, "unresolved: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 1;
  }
}
