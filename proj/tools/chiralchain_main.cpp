#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "chiralchain/jobs.hpp"
#include "chiralchain/parallel.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

void print_error(const char* type, const std::string& message) {
  std::cerr << "{\"error\":{\"type\":\"" << type << "\",\"message\":\"" << message << "\"}}\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"chiralchain: statics and quench dynamics of the long-range XY chain "
               "with long-range Dzyaloshinskii-Moriya interaction"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;
  int workers = 0;
  std::string out_dir;
  bool plot = false;

  const std::vector<std::string> kinds = {"phase-diagram", "correlations", "entropy", "quench",
                                          "scaling"};
  for (const auto& kind : kinds) {
    CLI::App* sub = app.add_subcommand(kind, "run a " + kind + " job");
    sub->add_option("--config", config_path, "job configuration file")->required();
    sub->add_option("--set", overrides, "override a config key, section.key=value");
    sub->add_option("--workers", workers, "worker threads (0 = all cores)");
    sub->add_option("--out", out_dir, "output directory override");
    sub->add_flag("--plot", plot, "emit SVG plots next to the CSVs");
  }

  CLI11_PARSE(app, argc, argv);
  const std::string kind = app.get_subcommands().front()->get_name();

  try {
    std::ifstream in(config_path);
    if (!in) {
      print_error("config", "cannot open config file " + config_path);
      return kExitConfig;
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    std::string text = buffer.str();

    text = chiralchain::cli::apply_override(text, "job=" + kind);
    for (const auto& assignment : overrides)
      text = chiralchain::cli::apply_override(text, assignment);
    if (workers > 0)
      text = chiralchain::cli::apply_override(text, "workers=" + std::to_string(workers));
    if (!out_dir.empty())
      text = chiralchain::cli::apply_override(text, "output.dir=" + out_dir);
    if (plot) text = chiralchain::cli::apply_override(text, "output.plot=on");

    const chiralchain::cli::JobConfig config = chiralchain::cli::parse_config(text);
    const auto written = chiralchain::cli::run_job(config);
    for (const auto& path : written) std::cout << path.string() << "\n";
    return kExitOk;
  } catch (const chiralchain::cli::ConfigError& err) {
    print_error("config", err.what());
    return kExitConfig;
  } catch (const std::invalid_argument& err) {
    print_error("config", err.what());
    return kExitConfig;
  } catch (const chiralchain::ConsistencyError& err) {
    print_error("consistency", err.what());
    return kExitNumerical;
  } catch (const std::exception& err) {
    print_error("internal", err.what());
    return kExitNumerical;
  }
}
