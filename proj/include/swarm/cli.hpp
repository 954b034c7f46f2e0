#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace swarm::cli {

enum ExitCode : int { kOk = 0, kError = 1, kNotGathering = 2 };

struct RunConfig {
  std::string subcommand;
  std::string topology;
  std::string matrix;
  bool general = false;
  std::string init;
  std::optional<std::uint64_t> seed;
  double dt = 1e-3;
  double horizon = 20.0;
  std::string normalizer = "identity";
  std::optional<double> radius;
  std::size_t stride = 1;
  std::size_t ensemble = 0;
  std::string out;
  std::string report;
  std::string series;
  std::string edges_csv;
  std::string generating_config;
  std::string format = "json";
};

/// Runs a parsed configuration. Data goes to `out` unless a file path is
/// configured; diagnostics go to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv-style arguments (without the program name) and runs them.
int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace swarm::cli
