#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "fracheat/config.hpp"
#include "fracheat/errors.hpp"
#include "fracheat/experiments.hpp"
#include "fracheat/report.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

std::string usage_footer() {
  std::string s = "Experiments:";
  for (const auto& n : fracheat::experiment_names()) s += "\n  " + n;
  s += "\n\nParameters are passed as --key value after the experiment name.";
  s += "\nOutputs go to $FRACHEAT_RESULTS (default: current directory).";
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudospectral lab for the fractional heat equation with quadratic nonlinearity"};
  app.footer(usage_footer());
  app.allow_extras();
  std::string experiment;
  std::string config_file;
  std::string output;
  bool list = false;
  app.add_option("experiment", experiment, "Experiment name");
  app.add_option("--config", config_file, "key = value config file");
  app.add_option("--output", output, "Output root (overrides $FRACHEAT_RESULTS)");
  app.add_flag("--list", list, "List experiments and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitPass : kExitConfig;
  }

  if (list) {
    for (const auto& n : fracheat::experiment_names()) std::cout << n << '\n';
    return kExitPass;
  }
  if (experiment.empty()) {
    std::cerr << "fracheat: missing experiment name\n" << app.help();
    return kExitConfig;
  }

  try {
    auto config = config_file.empty() ? fracheat::ExperimentConfig{} : fracheat::ExperimentConfig::load(config_file);
    const auto extras = app.remaining();
    for (std::size_t i = 0; i < extras.size(); ++i) {
      std::string key = extras[i];
      if (key.rfind("--", 0) != 0) throw fracheat::ConfigError("unexpected argument '" + key + "'");
      key.erase(0, 2);
      std::string value;
      if (const auto eq = key.find('='); eq != std::string::npos) {
        value = key.substr(eq + 1);
        key.resize(eq);
      } else if (i + 1 < extras.size()) {
        value = extras[++i];
      } else {
        throw fracheat::ConfigError("--" + key + ": missing value");
      }
      config.set(key, value, "--" + key);
    }

    const auto record = fracheat::run_experiment(experiment, config);
    const auto root = output.empty() ? fracheat::output_root() : std::filesystem::path(output);
    const auto files = fracheat::emit_report({record}, root);

    std::cout << fracheat::render_csv({record});
    for (const auto& [name, ok] : record.verdicts) {
      std::cout << (ok ? "PASS " : "FAIL ") << name << '\n';
    }
    for (const auto& p : files.csv) std::cerr << "wrote " << p.string() << '\n';
    std::cerr << "appended " << files.registry.string() << '\n';
    return record.passed() ? kExitPass : kExitFail;
  } catch (const fracheat::ConfigError& e) {
    std::cerr << "fracheat: config error: " << e.what() << '\n';
  } catch (const fracheat::BudgetError& e) {
    std::cerr << "fracheat: budget error: " << e.what() << '\n';
  } catch (const fracheat::IoError& e) {
    std::cerr << "fracheat: I/O error: " << e.what() << '\n';
  } catch (const fracheat::Error& e) {
    std::cerr << "fracheat: " << e.what() << '\n';
  }
  return kExitConfig;
}
