#include "qlr/config.hpp"
#include "qlr/types.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <iostream>
#include <string>

int main(int argc, char** argv) {
  CLI::App app{
      "qlr - linear dynamical response for Markovian open quantum systems"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  int jobs = 1;
  double epsilon = -1.0;
  bool timestamp = false;

  const std::vector<std::string> subcommands = {
      "chi-time", "chi-freq", "mhr",  "gap-scaling",
      "spectrum", "correlations", "power"};
  for (const auto& name : subcommands) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "model configuration file")
        ->required();
    sub->add_option("--out", out_path, "output CSV path");
    sub->add_option("--jobs", jobs, "data-parallel sweep workers");
    sub->add_option("--epsilon", epsilon, "resolvent regularization");
    sub->add_flag("--timestamp", timestamp,
                  "add a generated-at line to the header");
  }

  CLI11_PARSE(app, argc, argv);
  const std::string name = app.get_subcommands().front()->get_name();

  try {
    const nlohmann::json config = qlr::cli::load_config_file(config_path);

    qlr::cli::RunOptions opts;
    opts.jobs = jobs;
    opts.timestamp = timestamp;
    if (epsilon >= 0) opts.epsilon = epsilon;

    const qlr::cli::SweepResult result =
        qlr::cli::run_subcommand(name, config, opts);

    std::string target = out_path;
    if (target.empty() && config.contains("output"))
      target = config.at("output").get<std::string>();
    if (target.empty())
      std::cout << qlr::cli::to_csv(result);
    else
      qlr::cli::write_csv_file(result, target);
    return 0;
  } catch (const qlr::cli::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const qlr::PreconditionError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const qlr::DimensionError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const qlr::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const qlr::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
