#include "swarm/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace swarm::io {

using nlohmann::json;

namespace {

json parse_json(std::string_view text, const std::string& source) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const std::size_t offset = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + offset, '\n');
    std::ostringstream os;
    os << source << ":" << line << ": malformed JSON: " << e.what();
    throw InputError(os.str());
  }
}

[[noreturn]] void field_error(const std::string& source, const std::string& field,
                              const std::string& what) {
  throw InputError(source + ": field '" + field + "': " + what);
}

const json& require(const json& doc, const std::string& source, const char* field) {
  if (!doc.is_object()) throw InputError(source + ": expected a JSON object");
  const auto it = doc.find(field);
  if (it == doc.end()) field_error(source, field, "missing");
  return *it;
}

double number_at(const json& v, const std::string& source, const std::string& field) {
  if (!v.is_number()) field_error(source, field, "expected a number");
  return v.get<double>();
}

}  // namespace

CirculantTopology parse_topology(std::string_view text, const std::string& source) {
  const json doc = parse_json(text, source);
  const json& n = require(doc, source, "n");
  const json& w = require(doc, source, "w");
  if (!n.is_number_integer()) field_error(source, "n", "expected an integer");
  if (!w.is_array()) field_error(source, "w", "expected an array of numbers");
  std::vector<double> weights;
  for (std::size_t i = 0; i < w.size(); ++i) {
    weights.push_back(number_at(w[i], source, "w[" + std::to_string(i) + "]"));
  }
  if (n.get<long long>() != static_cast<long long>(weights.size())) {
    field_error(source, "w", "length " + std::to_string(weights.size()) +
                                 " does not match n = " + n.dump());
  }
  std::string name;
  if (const auto it = doc.find("name"); it != doc.end()) {
    if (!it->is_string()) field_error(source, "name", "expected a string");
    name = it->get<std::string>();
  }
  try {
    return CirculantTopology(std::move(weights), std::move(name));
  } catch (const std::invalid_argument& e) {
    field_error(source, "w", e.what());
  }
}

WeightMatrix parse_matrix(std::string_view text, const std::string& source) {
  const json doc = parse_json(text, source);
  const json& rows = require(doc, source, "rows");
  if (!rows.is_array() || rows.empty()) {
    field_error(source, "rows", "expected a non-empty array of rows");
  }
  const auto n = static_cast<Eigen::Index>(rows.size());
  if (const auto it = doc.find("n"); it != doc.end()) {
    if (!it->is_number_integer() || it->get<long long>() != n) {
      field_error(source, "n", "does not match the number of rows");
    }
  }
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const json& row = rows[static_cast<std::size_t>(i)];
    const std::string field = "rows[" + std::to_string(i) + "]";
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
      field_error(source, field, "expected " + std::to_string(n) + " numbers");
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      m(i, j) = number_at(row[static_cast<std::size_t>(j)], source,
                          field + "[" + std::to_string(j) + "]");
    }
  }
  return general_matrix(std::move(m));
}

Configuration parse_configuration(std::string_view text, const std::string& source) {
  const json doc = parse_json(text, source);
  const json& pos = require(doc, source, "positions");
  if (!pos.is_array() || pos.empty()) {
    field_error(source, "positions", "expected a non-empty array of [x, y]");
  }
  std::vector<Point> pts;
  for (std::size_t i = 0; i < pos.size(); ++i) {
    const std::string field = "positions[" + std::to_string(i) + "]";
    if (!pos[i].is_array() || pos[i].size() != 2) field_error(source, field, "expected [x, y]");
    pts.push_back({number_at(pos[i][0], source, field + "[0]"),
                   number_at(pos[i][1], source, field + "[1]")});
  }
  return Configuration(std::move(pts));
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path.string() + ": cannot open file");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

CirculantTopology read_topology(const std::filesystem::path& path) {
  return parse_topology(read_file(path), path.string());
}

WeightMatrix read_matrix(const std::filesystem::path& path) {
  return parse_matrix(read_file(path), path.string());
}

Configuration read_configuration(const std::filesystem::path& path) {
  return parse_configuration(read_file(path), path.string());
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error(tmp.string() + ": cannot open for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error(tmp.string() + ": write failed");
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace swarm::io
