#include <string>

#include <CLI11.hpp>

#include "ncl/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"nonlocal-cluster-lab: weighted three-phase nonlocal perimeter experiments"};
  app.require_subcommand(1);

  std::string run_path, echo_path;
  CLI::App* run = app.add_subcommand("run", "execute an experiment config, write CSV");
  run->add_option("config", run_path, "JSON config file")->required();
  CLI::App* echo = app.add_subcommand("echo", "print the fully-defaulted config");
  echo->add_option("config", echo_path, "JSON config file")->required();

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) return ncl::run_config_file(run_path);
  return ncl::echo_config_file(echo_path);
}
