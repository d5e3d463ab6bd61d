// burgers: command-line driver.
//
//   burgers run   --example 1 --scheme cg --nu 0.1 --dx 0.02 --dt 0.01 --t-end 1.0
//   burgers sweep --example 1 --sweep-dx 0.005,0.01,0.02,0.04 --dt 0.0125 --steps 100
//   burgers scale --scale-ns 1,2 --scale-dt 0.2,0.8,3.2
//
// Every flag also exists as a key in a --config file (dashes become
// underscores). Exit codes: 0 ok, 1 usage/configuration, 2 numerical
// failure, 3 I/O.

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "burgers/cli/commands.hpp"
#include "burgers/cli/config.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitIo = 3;

std::string flag_name(const std::string& key) {
  std::string f = "--" + key;
  for (char& c : f) {
    if (c == '_') c = '-';
  }
  return f;
}

struct Flags {
  std::string config_file;
  bool dump = false;
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;

  void attach(CLI::App& app) {
    app.add_option("--config", config_file, "key=value configuration file")->check(CLI::ExistingFile);
    app.add_flag("--dump-config", dump, "print the resolved configuration and exit");
    for (const auto& key : burgers::cli::config_keys()) {
      options[key] = app.add_option(flag_name(key), values[key], "config key '" + key + "'");
    }
  }

  burgers::cli::ExperimentConfig build() const {
    burgers::cli::ExperimentConfig cfg;
    if (!config_file.empty()) {
      std::ifstream in(config_file);
      if (!in) throw burgers::IoError("cannot read config file '" + config_file + "'");
      std::stringstream ss;
      ss << in.rdbuf();
      burgers::cli::apply(cfg, burgers::cli::parse_key_values(ss.str(), config_file));
    }
    burgers::cli::KeyValues overrides;
    for (const auto& [key, opt] : options) {
      if (opt->count() > 0) overrides[key] = values.at(key);
    }
    burgers::cli::apply(cfg, overrides);
    return cfg;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Burgers / Burgers-Fisher solver (Hopf-Cole transform with exact-kernel diffusion)"};
  app.require_subcommand(1);
  Flags run_flags, sweep_flags, scale_flags;
  auto* run = app.add_subcommand("run", "run one configuration; write snapshots and norms");
  auto* sweep = app.add_subcommand("sweep", "run the Cartesian product of the sweep axes");
  auto* scale = app.add_subcommand("scale", "weak-scaling timings");
  run_flags.attach(*run);
  sweep_flags.attach(*sweep);
  scale_flags.attach(*scale);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    const Flags& flags = run->parsed() ? run_flags : sweep->parsed() ? sweep_flags : scale_flags;
    const auto cfg = flags.build();
    if (flags.dump) {
      std::cout << burgers::cli::serialize(cfg);
      return 0;
    }
    if (run->parsed()) {
      const auto out = burgers::cli::cmd_run(cfg);
      for (const auto& r : out.norms) {
        std::cout << "t=" << r.t << " l1=" << r.report.l1 << " l2=" << r.report.l2 << " linf=" << r.report.linf
                  << '\n';
      }
      for (const auto& f : out.files) std::cout << "wrote " << f.string() << '\n';
    } else if (sweep->parsed()) {
      const auto rows = burgers::cli::cmd_sweep(cfg);
      std::cout << rows.size() << " sweep cell(s) written to " << cfg.output << "/sweep.csv\n";
    } else {
      burgers::cli::cmd_scale(cfg);
    }
  } catch (const burgers::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const burgers::IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const burgers::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const burgers::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return 0;
}
