#pragma once

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <vector>

#include "gpa/moments/moment_system.hpp"

namespace gpa::io {

struct RunConfig {
  std::filesystem::path input;
  std::filesystem::path out_dir = ".";
  std::uint64_t seed = 0;
  unsigned threads = 1;
  moments::Mode variance_method = moments::Mode::kClosure;
  bool dump_classes = false;
  bool dump_odes = false;
  bool sim_switchpoints = false;
};

/// Parses, validates and runs every analysis of cfg.input, writing one CSV per
/// command. Redirect targets are resolved against the output directory.
/// Diagnostics go to `err`, dumps to `out`. Returns the process exit status.
int run_file(const RunConfig& cfg, std::ostream& out, std::ostream& err,
             std::vector<std::filesystem::path>* written = nullptr);

/// Parse and validate only. Returns the process exit status.
int check_file(const std::filesystem::path& input, std::ostream& out, std::ostream& err);

/// Prints a gnuplot script for a CSV produced by run_file.
int gnuplot_file(const std::filesystem::path& csv, std::ostream& out, std::ostream& err);

}  // namespace gpa::io
