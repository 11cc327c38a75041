#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "brody/runner.hpp"

namespace {

struct Flags {
  std::map<std::string, std::string> values;
  bool exact = false;
  bool floating = false;
};

void add_common(CLI::App* app, Flags& flags) {
  static const std::pair<const char*, const char*> options[] = {
      {"seed", "RNG seed (default 42)"},
      {"eps", "cover radius in radians, e.g. pi/16 (default)"},
      {"height", "entry bound for the submodule scan, 1 to 3 (default 1)"},
      {"n-max", "largest family index n (default 100)"},
      {"budget", "consecutive covered probes that stop net construction (default 10000)"},
      {"out", "output directory (default brody_out)"},
      {"config", "key = value config file; flags override it"},
      {"probes", "coverage probes (default 100000)"},
      {"probes-per-ball", "margin probes per ball (default 1000)"},
      {"max-centers", "cap on net size (default 1000000)"},
      {"time-limit", "net construction deadline in seconds, 0 = none"},
      {"count", "number of random directions for closure (default 100)"},
      {"family", "curve family: constant, tilted or quadratic"},
      {"lattice", "gaussian, sampled, or synthetic (obstruct only)"},
      {"ts", "comma-separated deformation parameters"}};
  for (const auto& [name, help] : options) {
    std::string key = name;
    app->add_option_function<std::string>(
        "--" + key, [&flags, key](const std::string& v) { flags.values[key] = v; }, help);
  }
  auto* exact = app->add_flag("--exact", flags.exact, "exact arithmetic");
  app->add_flag("--floating", flags.floating, "floating-point arithmetic (default)")->excludes(exact);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lattice, blow-up and Grassmannian experiments"};
  app.set_version_flag("--version", brody::library_version());
  app.require_subcommand(1);
  Flags flags;
  const std::map<std::string, std::string> help{
      {"scan", "totally-real scan over bounded-height rank-3 submodules"},
      {"deform", "deformation making a rank-3 submodule totally real"},
      {"cover", "Grassmannian net, coverage check and angle margins"},
      {"explode", "derivative explosion along a curve family"},
      {"closure", "closure dimensions of random complex directions"},
      {"obstruct", "explosion along translates of a one-parameter group"}};
  for (const auto& name : brody::subcommand_names()) add_common(app.add_subcommand(name, help.at(name)), flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const std::string sub = app.get_subcommands().front()->get_name();
  if (flags.exact) flags.values["mode"] = "exact";
  if (flags.floating) flags.values["mode"] = "floating";
  try {
    brody::ExperimentConfig config = brody::resolve_config(sub, flags.values);
    brody::RunOutcome outcome = brody::run(config);
    brody::write_outputs(outcome, config.out_dir);
    std::cout << sub << ": " << outcome.report["status"].get<std::string>() << " (" << config.out_dir
              << "/report.json)\n";
    for (const auto& a : outcome.report["assertions"])
      if (!a["passed"].get<bool>())
        std::cerr << "failed: " << a["name"].get<std::string>()
                  << (a.contains("detail") ? " - " + a["detail"].get<std::string>() : "") << "\n";
    return outcome.exit_code;
  } catch (const brody::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const brody::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
