// eraserlab: command-line front end for the double-slit eraser simulator.
//
//   eraserlab <command> --config <file> [--out <dir>] [--seed <u64>] [--points <n>]

#include <CLI11.hpp>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "eraser/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Polarization-entangled double-slit quantum eraser simulator"};
  app.require_subcommand(1, 1);

  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> points;

  const std::map<std::string, std::string> descriptions{
      {"pattern", "exact coincidence curve"},
      {"scan", "Monte Carlo detector scan with Poisson counts"},
      {"erase-demo", "fringe, antifringe, their average and the open pattern"},
      {"whichpath", "slit probabilities conditioned on p and s polarizations"},
      {"ordering", "p-first versus s-first coincidence patterns"},
      {"chsh", "CHSH value of the source pair at optimized analyzer angles"}};

  for (const auto name : eraser::command_names()) {
    auto* sub = app.add_subcommand(std::string(name), descriptions.at(std::string(name)));
    sub->add_option("--config", config_path, "bench configuration file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "output directory")->capture_default_str();
    sub->add_option("--seed", seed, "override the scan seed");
    sub->add_option("--points", points, "override the number of scan points")->check(CLI::PositiveNumber);
  }

  CLI11_PARSE(app, argc, argv);

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    const eraser::BenchConfig config = eraser::load_config(config_path);
    const eraser::RunResult result = eraser::run(command, config, {out_dir, seed, points});
    std::cout << result.summary << '\n';
    for (const auto& f : result.files) std::cout << "wrote " << f.string() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "eraserlab " << command << ": " << config_path << ": " << e.what() << '\n';
    return 1;
  }
  return 0;
}
