#include "swarm/cli.hpp"
#include "swarm/io.hpp"
#include "swarm/spectral.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <sstream>

#include <unistd.h>

using namespace swarm;
namespace fs = std::filesystem;

namespace {

const fs::path kExamples = SWARM_EXAMPLES_DIR;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::main(args, out, err);
  return {code, out.str(), err.str()};
}

std::string example(const std::string& name) { return (kExamples / name).string(); }

class ScratchDir {
 public:
  ScratchDir() : path_(fs::temp_directory_path() / ("swarm_cli_" + std::to_string(::getpid()))) {
    fs::create_directories(path_);
  }
  ~ScratchDir() { fs::remove_all(path_); }
  std::string file(const std::string& name, const std::string& content = {}) const {
    const fs::path p = path_ / name;
    if (!content.empty()) io::write_atomic(p, content);
    return p.string();
  }

 private:
  fs::path path_;
};

std::vector<std::string> split_lines(const std::string& s) {
  std::vector<std::string> lines;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("check exit codes") {
  CHECK(run({"check", "--topology", example("gtm7.json")}).code == cli::kOk);
  CHECK(run({"check", "--topology", example("counterexample.json")}).code == cli::kOk);
  CHECK(run({"check", "--matrix", example("three_agents.json")}).code == cli::kOk);

  const Outcome split = run({"check", "--topology", example("jump2_n6.json")});
  CHECK(split.code == cli::kNotGathering);
  const auto j = nlohmann::json::parse(split.out);
  CHECK(j["gathering"] == false);
  CHECK(j["connected"] == false);
  CHECK(j["witness"].get<std::string>().find("gcd") != std::string::npos);

  CHECK(run({"check", "--topology", example("missing.json")}).code == cli::kError);
  CHECK(run({"check"}).code == cli::kError);
}

TEST_CASE("check report fields") {
  const auto neg = nlohmann::json::parse(run({"check", "--topology", example("counterexample.json")}).out);
  CHECK(neg["name"] == "negative-weights");
  CHECK(neg["nonneg"] == false);
  CHECK(neg["gathering_circulant"].is_null());
  CHECK(neg["non_defective_real"] == false);
  CHECK(neg["eigenvalues"].size() == 3);

  const auto general = nlohmann::json::parse(run({"check", "--matrix", example("three_agents.json")}).out);
  CHECK(general["weakly_connected"] == true);
  CHECK(general["strongly_connected"] == false);
  CHECK(general["connected"].is_null());
  CHECK(general["non_defective_real"] == true);

  const auto forced = nlohmann::json::parse(
      run({"check", "--topology", example("gtm7.json"), "--general"}).out);
  CHECK(forced["gathering"] == true);
  CHECK(forced["connected"] == true);
  CHECK(forced["gathering_circulant"].is_null());
}

TEST_CASE("spectrum CSV lists N-bug rates") {
  const Outcome o = run({"spectrum", "--topology", example("nbug6.json")});
  REQUIRE(o.code == cli::kOk);
  const auto lines = split_lines(o.out);
  REQUIRE(lines.size() == 5);
  CHECK(lines[0] == "j,re_lambda,im_lambda,rate,dim,strong_stable");
  const std::vector<double> rates{1.0, 0.5, -0.5, -1.0};
  for (std::size_t j = 0; j < 4; ++j) {
    std::vector<std::string> cells;
    std::istringstream row(lines[j + 1]);
    for (std::string cell; std::getline(row, cell, ',');) cells.push_back(cell);
    REQUIRE(cells.size() == 6);
    CHECK(std::stoul(cells[0]) == j);
    CHECK(std::abs(std::stod(cells[3]) - rates[j]) < 1e-12);
    CHECK(cells[4] == ((j == 0 || j == 3) ? "2" : "4"));
    CHECK(cells[5] == (j == 3 ? "true" : "false"));
  }
}

TEST_CASE("spectrum JSON and generating configurations") {
  ScratchDir dir;
  const std::string gen = dir.file("gen.csv");
  const Outcome o = run({"spectrum", "--topology", example("gtm7.json"), "--format", "json",
                         "--generating-config", gen});
  REQUIRE(o.code == cli::kOk);
  const auto j = nlohmann::json::parse(o.out);
  CHECK(j["n"] == 7);
  CHECK(j["subspaces"].size() == 4);
  const auto lines = split_lines(io::read_file(gen));
  CHECK(lines[0] == "j,agent,x,y");
  CHECK(lines.size() == 1 + 4 * 7);
  CHECK(lines[1] == "0,0,1,0");
}

TEST_CASE("decompose emits components and a time series") {
  ScratchDir dir;
  const std::string series = dir.file("series.csv");
  const Outcome o = run({"decompose", "--topology", example("gtm7.json"), "--random-seed", "3",
                         "--T", "1", "--dt", "0.25", "--series", series});
  REQUIRE(o.code == cli::kOk);
  const auto j = nlohmann::json::parse(o.out);
  CHECK(j["n"] == 7);
  CHECK(j["components"].size() == 3);
  for (const auto& c : j["components"]) {
    CHECK(c["decay_exponent"].get<double>() == doctest::Approx(c["rate"].get<double>() - 1.0));
    CHECK(c["dim"] == 4);
  }
  const auto lines = split_lines(io::read_file(series));
  CHECK(lines[0] == "t,alpha_1,norm_beta_1,alpha_2,norm_beta_2,alpha_3,norm_beta_3");
  CHECK(lines.size() == 6);
  CHECK(lines[1].rfind("0,1,", 0) == 0);
}

TEST_CASE("simulate flags the negative-weight visibility violation") {
  ScratchDir dir;
  const std::string report = dir.file("vis.json");
  const Outcome o = run({"simulate", "--topology", example("counterexample.json"), "--init",
                         example("counterexample_init.json"), "--T", "0.1", "--dt", "1e-4",
                         "--radius", "1", "--report", report});
  REQUIRE(o.code == cli::kOk);
  CHECK(o.err.find("visibility violated on edge (0,1)") != std::string::npos);
  const auto j = nlohmann::json::parse(io::read_file(report));
  CHECK(j["visibility_preserved"] == false);
  CHECK(j["first_violation"]["edge"] == nlohmann::json::array({0, 1}));
  CHECK(split_lines(o.out).front() == "t,x_0,y_0,x_1,y_1,x_2,y_2");
}

TEST_CASE("visibility subcommand") {
  ScratchDir dir;
  const std::string edges = dir.file("edges.csv");
  const Outcome o = run({"visibility", "--topology", example("gtm7.json"), "--random-seed", "1",
                         "--radius", "10", "--T", "2", "--dt", "0.01", "--edges-csv", edges});
  REQUIRE(o.code == cli::kOk);
  const auto j = nlohmann::json::parse(o.out);
  CHECK(j["visibility_preserved"] == true);
  CHECK(j["max_edge_nonincreasing"] == true);
  CHECK(j["edges"].size() == 7);
  CHECK(split_lines(io::read_file(edges)).size() == 202);

  const Outcome bad = run({"visibility", "--topology", example("gtm7.json"), "--random-seed", "1",
                           "--radius", "0.01"});
  CHECK(bad.code == cli::kError);
  CHECK(bad.err.find("edge") != std::string::npos);
}

TEST_CASE("repeated runs are byte-identical") {
  const std::vector<std::string> args{"simulate", "--topology", example("gtm7.json"),
                                      "--random-seed", "42", "--T", "1", "--dt", "0.01",
                                      "--normalizer", "smooth:0.01"};
  const Outcome a = run(args), b = run(args);
  REQUIRE(a.code == cli::kOk);
  CHECK(a.out == b.out);
  CHECK(split_lines(a.out).size() == 102);
}

TEST_CASE("ensemble writes one trajectory per seed") {
  ScratchDir dir;
  const std::string out = dir.file("traj.csv");
  const Outcome o = run({"simulate", "--topology", example("nbug6.json"), "--random-seed", "5",
                         "--ensemble", "3", "--T", "0.5", "--dt", "0.1", "--out", out});
  REQUIRE(o.code == cli::kOk);
  for (int k = 0; k < 3; ++k) {
    const std::string member = dir.file("traj_" + std::to_string(k) + ".csv");
    REQUIRE(fs::exists(member));
    const Outcome single = run({"simulate", "--topology", example("nbug6.json"), "--random-seed",
                                std::to_string(5 + k), "--T", "0.5", "--dt", "0.1"});
    CHECK(io::read_file(member) == single.out);
  }
  CHECK(run({"simulate", "--topology", example("nbug6.json"), "--ensemble", "2", "--out", out}).code ==
        cli::kError);
}

TEST_CASE("malformed input is reported with a location") {
  ScratchDir dir;
  const std::string broken = dir.file("broken.json", "{\n  \"n\": 3,\n  \"w\": [0, 1, \n}\n");
  const Outcome o = run({"check", "--topology", broken});
  CHECK(o.code == cli::kError);
  CHECK(o.err.find("broken.json:4") != std::string::npos);

  const std::string wrong = dir.file("wrong.json", "{\"n\": 4, \"w\": [0, 1, 0]}");
  const Outcome w = run({"check", "--topology", wrong});
  CHECK(w.code == cli::kError);
  CHECK(w.err.find("'w'") != std::string::npos);

  const std::string init = dir.file("init.json", "{\"positions\": [[0, 0], [1]]}");
  const Outcome i = run({"simulate", "--topology", example("nbug6.json"), "--init", init});
  CHECK(i.code == cli::kError);
  CHECK(i.err.find("positions") != std::string::npos);
}

TEST_CASE("usage errors print help") {
  const Outcome unknown = run({"check", "--bogus"});
  CHECK(unknown.code == cli::kError);
  CHECK(unknown.err.find("Usage") != std::string::npos);
  CHECK(run({}).code == cli::kError);
  CHECK(run({"simulate", "--topology", example("gtm7.json")}).code == cli::kError);
  CHECK(run({"simulate", "--topology", example("gtm7.json"), "--random-seed", "1", "--normalizer",
             "smooth:abc"})
            .code == cli::kError);
  CHECK(run({"--help"}).code == cli::kOk);
}

TEST_CASE("topology file round-trips through the dense matrix") {
  const CirculantTopology top = io::read_topology(example("gtm7.json"));
  const std::vector<double> back = generating_vector(dense_matrix(top));
  CHECK(back == std::vector<double>(top.weights().begin(), top.weights().end()));
  CHECK(top.name() == "go-to-the-middle");
}
