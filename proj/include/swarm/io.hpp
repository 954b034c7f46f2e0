#pragma once

#include "swarm/configuration.hpp"
#include "swarm/topology.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

namespace swarm::io {

/// Malformed input file; the message names the file and the line or field.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// {"n": int, "w": [float], "name": optional string}
CirculantTopology parse_topology(std::string_view text, const std::string& source);
CirculantTopology read_topology(const std::filesystem::path& path);

/// {"n": int, "rows": [[float]]}
WeightMatrix parse_matrix(std::string_view text, const std::string& source);
WeightMatrix read_matrix(const std::filesystem::path& path);

/// {"positions": [[x, y], ...]}
Configuration parse_configuration(std::string_view text, const std::string& source);
Configuration read_configuration(const std::filesystem::path& path);

/// 17 significant digits, "%.17g".
std::string format_double(double v);

/// Writes to a sibling temporary file and renames it over `path`.
void write_atomic(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

}  // namespace swarm::io
