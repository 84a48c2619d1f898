#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "gpa/io/run.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Grouped PEPA analyser"};
  app.require_subcommand(1);

  gpa::io::RunConfig cfg;
  std::string method = "closure";
  auto* run = app.add_subcommand("run", "Run every analysis in a model file");
  run->add_option("file", cfg.input, "Model file")->required()->check(CLI::ExistingFile);
  run->add_option("--out-dir", cfg.out_dir, "Directory for CSV outputs");
  run->add_option("--seed", cfg.seed, "Master seed for simulation");
  run->add_option("--threads", cfg.threads, "Simulation worker threads")
      ->check(CLI::PositiveNumber);
  run->add_option("--variance-method", method, "Second-order method for ODE analyses")
      ->check(CLI::IsMember({"closure", "lna"}));
  run->add_flag("--dump-classes", cfg.dump_classes, "Print the transition classes");
  run->add_flag("--dump-odes", cfg.dump_odes, "Print every generated ODE system");
  run->add_flag("--sim-switchpoints", cfg.sim_switchpoints,
                "Allow plotSwitchpoints in simulation and comparison analyses");

  std::string check_input;
  auto* check = app.add_subcommand("check", "Parse and validate a model file");
  check->add_option("file", check_input, "Model file")->required()->check(CLI::ExistingFile);

  std::string csv;
  auto* gnuplot = app.add_subcommand("gnuplot", "Print a gnuplot script for a CSV output");
  gnuplot->add_option("csv", csv, "CSV file")->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) {
    cfg.variance_method =
        method == "lna" ? gpa::moments::Mode::kLna : gpa::moments::Mode::kClosure;
    return gpa::io::run_file(cfg, std::cout, std::cerr);
  }
  if (check->parsed()) return gpa::io::check_file(check_input, std::cout, std::cerr);
  return gpa::io::gnuplot_file(csv, std::cout, std::cerr);
}
