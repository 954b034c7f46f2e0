#include "swarm/cli.hpp"

#include "swarm/classify.hpp"
#include "swarm/decompose.hpp"
#include "swarm/dynamics.hpp"
#include "swarm/io.hpp"
#include "swarm/spectral.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <thread>

namespace swarm::cli {

using nlohmann::ordered_json;

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void emit(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty()) {
    out << content;
  } else {
    io::write_atomic(path, content);
  }
}

ordered_json complex_json(std::complex<double> z) { return {z.real(), z.imag()}; }

Normalizer parse_normalizer(const std::string& spec) {
  if (spec == "identity") return Normalizer::identity();
  if (spec.rfind("smooth:", 0) == 0) {
    const std::string eps = spec.substr(7);
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(eps, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != eps.size()) {
      throw UsageError("--normalizer: cannot parse epsilon '" + eps + "'");
    }
    return Normalizer::smooth(value);
  }
  throw UsageError("--normalizer must be 'identity' or 'smooth:EPS'");
}

void check_positive(const RunConfig& c) {
  if (!(c.dt > 0.0)) throw UsageError("--dt must be positive");
  if (!(c.horizon > 0.0)) throw UsageError("--T must be positive");
  if (c.stride == 0) throw UsageError("--stride must be positive");
  if (c.radius && !(*c.radius > 0.0)) throw UsageError("--radius must be positive");
}

CirculantTopology require_topology(const RunConfig& c) {
  if (c.topology.empty()) throw UsageError(c.subcommand + " requires --topology");
  return io::read_topology(c.topology);
}

Configuration initial_configuration(const RunConfig& c, std::size_t n) {
  if (!c.init.empty() == c.seed.has_value()) {
    throw UsageError("exactly one of --init and --random-seed is required");
  }
  Configuration z0 = c.seed ? random_cloud(n, *c.seed) : io::read_configuration(c.init);
  if (z0.size() != n) {
    throw io::InputError(c.init + ": " + std::to_string(z0.size()) +
                         " positions for a topology of " + std::to_string(n) + " agents");
  }
  return z0;
}

std::string trajectory_csv(const Trajectory& traj) {
  std::string s = "t";
  const std::size_t n = traj.states.front().size();
  for (std::size_t i = 0; i < n; ++i) {
    s += ",x_" + std::to_string(i) + ",y_" + std::to_string(i);
  }
  s += '\n';
  for (std::size_t k = 0; k < traj.size(); ++k) {
    s += io::format_double(traj.times[k]);
    for (const Point& p : traj.states[k].positions()) {
      s += ',';
      s += io::format_double(p.x);
      s += ',';
      s += io::format_double(p.y);
    }
    s += '\n';
  }
  return s;
}

ordered_json edge_json(const Edge& e) { return {e.from, e.to}; }

ordered_json visibility_json(const VisibilityReport& rep) {
  ordered_json j;
  j["radius"] = rep.radius;
  j["visibility_preserved"] = !rep.first_violation.has_value();
  j["max_edge_nonincreasing"] = rep.max_edge_nonincreasing;
  if (rep.first_violation) {
    j["first_violation"] = {{"time", rep.first_violation->time},
                            {"edge", edge_json(rep.first_violation->edge)},
                            {"distance", rep.first_violation->distance}};
  } else {
    j["first_violation"] = nullptr;
  }
  ordered_json edges = ordered_json::array();
  for (std::size_t e = 0; e < rep.edges.size(); ++e) {
    edges.push_back({{"edge", edge_json(rep.edges[e])}, {"max_distance", rep.edge_max[e]}});
  }
  j["edges"] = std::move(edges);
  return j;
}

std::string edge_distance_csv(const Trajectory& traj, const VisibilityReport& rep) {
  std::string s = "t";
  for (const Edge& e : rep.edges) {
    s += ",d_" + std::to_string(e.from) + "_" + std::to_string(e.to);
  }
  s += ",max\n";
  for (std::size_t k = 0; k < traj.size(); ++k) {
    s += io::format_double(traj.times[k]);
    for (double d : rep.distances[k]) {
      s += ',';
      s += io::format_double(d);
    }
    s += ',';
    s += io::format_double(rep.max_edge_series[k]);
    s += '\n';
  }
  return s;
}

IntegrationOptions options(const RunConfig& c) {
  return {c.dt, c.horizon, c.stride};
}

int run_check(const RunConfig& c, std::ostream& out) {
  if (c.topology.empty() == c.matrix.empty()) {
    throw UsageError("check requires exactly one of --topology and --matrix");
  }
  ClassificationReport rep;
  std::string name;
  std::vector<std::complex<double>> values;
  if (!c.matrix.empty()) {
    const WeightMatrix w = io::read_matrix(c.matrix);
    rep = classify(w);
    values = eig(w).eigenvalues;
  } else {
    const CirculantTopology top = io::read_topology(c.topology);
    name = top.name();
    const WeightMatrix w = dense_matrix(top);
    if (c.general) {
      rep = classify(w);
      rep.connected = is_connected(top);
      rep.doubly_stochastic = is_doubly_stochastic(top);
    } else {
      rep = classify(top);
    }
    values = eig(w).eigenvalues;
  }

  ordered_json j;
  if (!name.empty()) j["name"] = name;
  j["gathering"] = rep.gathering();
  j["consistent"] = rep.consistent;
  j["connected"] = rep.connected ? ordered_json(*rep.connected) : ordered_json(nullptr);
  j["nonneg"] = rep.nonneg;
  j["gathering_spectral"] = rep.gathering_spectral;
  j["gathering_circulant"] =
      rep.gathering_circulant ? ordered_json(*rep.gathering_circulant) : ordered_json(nullptr);
  j["equilibria_are_V0_only"] = rep.equilibria_are_v0_only
                                    ? ordered_json(*rep.equilibria_are_v0_only)
                                    : ordered_json(nullptr);
  j["all_initial_converge"] = rep.all_initial_converge;
  j["doubly_stochastic"] =
      rep.doubly_stochastic ? ordered_json(*rep.doubly_stochastic) : ordered_json(nullptr);
  j["weakly_connected"] = rep.weakly_connected;
  j["strongly_connected"] = rep.strongly_connected;
  j["non_defective_real"] = rep.non_defective_real;
  j["witness"] = rep.witness.empty() ? ordered_json(nullptr) : ordered_json(rep.witness);
  ordered_json ev = ordered_json::array();
  for (const auto& z : values) ev.push_back(complex_json(z));
  j["eigenvalues"] = std::move(ev);
  emit(c.out, j.dump(2) + "\n", out);
  return rep.gathering() ? kOk : kNotGathering;
}

int run_spectrum(const RunConfig& c, std::ostream& out) {
  const CirculantTopology top = require_topology(c);
  const SpectralData spec = closed_form_spectrum(top);
  if (c.format == "json") {
    ordered_json rows = ordered_json::array();
    for (const Subspace& s : spec.subspaces) {
      rows.push_back({{"j", s.index},
                      {"re_lambda", s.eigenvalue.real()},
                      {"im_lambda", s.eigenvalue.imag()},
                      {"rate", s.rate},
                      {"decay_exponent", -1.0 + s.rate},
                      {"dim", s.dim},
                      {"strong_stable", spec.strong_stable == s.index}});
    }
    emit(c.out, ordered_json{{"n", spec.n}, {"subspaces", rows}}.dump(2) + "\n", out);
  } else {
    std::string s = "j,re_lambda,im_lambda,rate,dim,strong_stable\n";
    for (const Subspace& sub : spec.subspaces) {
      s += std::to_string(sub.index) + ',' + io::format_double(sub.eigenvalue.real()) + ',' +
           io::format_double(sub.eigenvalue.imag()) + ',' + io::format_double(sub.rate) + ',' +
           std::to_string(sub.dim) + ',' +
           (spec.strong_stable == sub.index ? "true" : "false") + '\n';
    }
    emit(c.out, s, out);
  }
  if (!c.generating_config.empty()) {
    std::string s = "j,agent,x,y\n";
    for (const Subspace& sub : spec.subspaces) {
      for (std::size_t i = 0; i < spec.n; ++i) {
        const auto k = static_cast<Eigen::Index>(i);
        s += std::to_string(sub.index) + ',' + std::to_string(i) + ',' +
             io::format_double(sub.generating(k)) + ',' +
             io::format_double(sub.generating(static_cast<Eigen::Index>(spec.n) + k)) + '\n';
      }
    }
    io::write_atomic(c.generating_config, s);
  }
  return kOk;
}

int run_decompose(const RunConfig& c, std::ostream& out) {
  check_positive(c);
  const CirculantTopology top = require_topology(c);
  const SpectralData spec = closed_form_spectrum(top);
  const Configuration z0 = initial_configuration(c, top.size());
  const Decomposition dec = decompose(z0, spec);

  ordered_json comps = ordered_json::array();
  for (const Component& comp : dec.components) {
    ordered_json beta = ordered_json::array();
    for (Eigen::Index k = 0; k < comp.beta0.size(); ++k) beta.push_back(comp.beta0(k));
    comps.push_back({{"j", comp.index},
                     {"rate", comp.convergence_rate},
                     {"decay_exponent", comp.decay_exponent},
                     {"rotation", comp.rotation},
                     {"dim", comp.dim},
                     {"beta0", std::move(beta)},
                     {"norm_beta0", comp.beta0.norm()}});
  }
  ordered_json j;
  j["n"] = dec.n;
  j["zstar"] = {dec.zstar.x, dec.zstar.y};
  j["components"] = std::move(comps);
  emit(c.out, j.dump(2) + "\n", out);

  if (!c.series.empty()) {
    std::string s = "t";
    for (const Component& comp : dec.components) {
      s += ",alpha_" + std::to_string(comp.index) + ",norm_beta_" + std::to_string(comp.index);
    }
    s += '\n';
    const auto steps = static_cast<std::size_t>(std::floor(c.horizon / c.dt * (1.0 + 1e-12)));
    for (std::size_t k = 0; k <= steps; k += c.stride) {
      const double t = static_cast<double>(k) * c.dt;
      s += io::format_double(t);
      for (const EvolvedComponent& e : evolve(dec, t)) {
        s += ',' + io::format_double(e.alpha) + ',' + io::format_double(e.beta.norm());
      }
      s += '\n';
    }
    io::write_atomic(c.series, s);
  }
  return kOk;
}

std::size_t thread_cap() {
  std::size_t cap = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("SWARM_SPECTRAL_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) cap = static_cast<std::size_t>(v);
  }
  return cap;
}

std::string indexed_path(const std::string& path, std::size_t k) {
  std::filesystem::path p(path);
  const std::string stem = p.stem().string() + "_" + std::to_string(k);
  return (p.parent_path() / (stem + p.extension().string())).string();
}

int run_simulate(const RunConfig& c, std::ostream& out, std::ostream& err) {
  check_positive(c);
  const CirculantTopology top = require_topology(c);
  const WeightMatrix w = dense_matrix(top);
  const Normalizer nrm = parse_normalizer(c.normalizer);

  const auto simulate_one = [&](const Configuration& z0) {
    Trajectory traj = integrate_normalized(w, nrm, z0, options(c));
    traj.topology = top.name();
    return traj;
  };

  if (c.ensemble > 0) {
    if (!c.seed || c.out.empty()) {
      throw UsageError("--ensemble requires --random-seed and --out");
    }
    std::vector<std::string> errors(c.ensemble);
    const std::size_t workers = std::min(c.ensemble, thread_cap());
    std::vector<std::thread> pool;
    for (std::size_t wk = 0; wk < workers; ++wk) {
      pool.emplace_back([&, wk] {
        for (std::size_t k = wk; k < c.ensemble; k += workers) {
          try {
            const Trajectory traj = simulate_one(random_cloud(top.size(), *c.seed + k));
            io::write_atomic(indexed_path(c.out, k), trajectory_csv(traj));
          } catch (const std::exception& e) {
            errors[k] = e.what();
          }
        }
      });
    }
    for (std::thread& t : pool) t.join();
    int code = kOk;
    for (std::size_t k = 0; k < errors.size(); ++k) {
      if (!errors[k].empty()) {
        err << "ensemble member " << k << ": " << errors[k] << "\n";
        code = kError;
      }
    }
    return code;
  }

  const Configuration z0 = initial_configuration(c, top.size());
  const Trajectory traj = simulate_one(z0);
  emit(c.out, trajectory_csv(traj), out);

  if (c.radius) {
    const VisibilityReport rep = visibility_monitor(traj, top, *c.radius);
    const std::string text = visibility_json(rep).dump(2) + "\n";
    if (!c.report.empty()) {
      io::write_atomic(c.report, text);
    } else {
      err << text;
    }
    if (rep.first_violation) {
      err << "visibility violated on edge (" << rep.first_violation->edge.from << ","
          << rep.first_violation->edge.to << ") at t = "
          << io::format_double(rep.first_violation->time) << "\n";
    }
  }
  return kOk;
}

int run_visibility(const RunConfig& c, std::ostream& out, std::ostream& err) {
  check_positive(c);
  if (!c.radius) throw UsageError("visibility requires --radius");
  const CirculantTopology top = require_topology(c);
  const WeightMatrix w = dense_matrix(top);
  const Normalizer nrm = parse_normalizer(c.normalizer);
  const Configuration z0 = initial_configuration(c, top.size());
  Trajectory traj = integrate_normalized(w, nrm, z0, options(c));
  traj.topology = top.name();
  const VisibilityReport rep = visibility_monitor(traj, top, *c.radius);
  emit(c.out, visibility_json(rep).dump(2) + "\n", out);
  if (!c.edges_csv.empty()) io::write_atomic(c.edges_csv, edge_distance_csv(traj, rep));
  if (rep.first_violation) {
    err << "visibility violated on edge (" << rep.first_violation->edge.from << ","
        << rep.first_violation->edge.to << ") at t = "
        << io::format_double(rep.first_violation->time) << "\n";
  }
  return kOk;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.subcommand == "check") return run_check(config, out);
    if (config.subcommand == "spectrum") return run_spectrum(config, out);
    if (config.subcommand == "decompose") return run_decompose(config, out);
    if (config.subcommand == "simulate") return run_simulate(config, out, err);
    if (config.subcommand == "visibility") return run_visibility(config, out, err);
    throw UsageError("unknown subcommand '" + config.subcommand + "'");
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
  } catch (const InvalidInitialConfiguration& e) {
    err << "error: " << e.what() << "\n";
  } catch (const Blowup& e) {
    err << "error: blowup at t = " << io::format_double(e.time)
        << " (the protocol is not gathering)\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return kError;
}

int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gathering protocols on circulant topologies: classification, "
               "spectra, decomposition and simulation",
               "swarm"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::uint64_t seed = 0;

  const auto add_topology = [&](CLI::App* sub) {
    sub->add_option("--topology", cfg.topology, "Topology JSON {\"n\", \"w\", \"name\"}");
  };
  const auto add_init = [&](CLI::App* sub) {
    sub->add_option("--init", cfg.init, "Initial configuration JSON {\"positions\": [[x, y], ...]}");
    sub->add_option("--random-seed", seed, "Uniform [-1,1]^2 cloud from a mt19937_64 seed");
  };
  const auto add_time = [&](CLI::App* sub) {
    sub->add_option("--dt", cfg.dt, "Step size")->capture_default_str();
    sub->add_option("--T", cfg.horizon, "Time horizon")->capture_default_str();
    sub->add_option("--stride", cfg.stride, "Keep every K-th step")->capture_default_str();
  };

  CLI::App* check = app.add_subcommand("check", "Classify a protocol; exit 0 iff gathering, 2 otherwise");
  add_topology(check);
  check->add_option("--matrix", cfg.matrix, "General weight matrix JSON {\"n\", \"rows\"}");
  check->add_flag("--general", cfg.general, "Use only the spectral test on the topology matrix");
  check->add_option("--out", cfg.out, "Write the JSON report here instead of stdout");

  CLI::App* spectrum = app.add_subcommand("spectrum", "Closed-form eigenvalues, rates and subspaces");
  add_topology(spectrum);
  spectrum->add_option("--out", cfg.out, "Output path (default stdout)");
  spectrum->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  spectrum->add_option("--generating-config", cfg.generating_config,
                       "Write the (Re v_j, Im v_j) configuration of every subspace as CSV");

  CLI::App* decomp = app.add_subcommand("decompose", "Project a configuration onto the invariant subspaces");
  add_topology(decomp);
  add_init(decomp);
  add_time(decomp);
  decomp->add_option("--out", cfg.out, "JSON output path (default stdout)");
  decomp->add_option("--series", cfg.series, "CSV time series of alpha_j(t) and |beta_j(t)|");

  CLI::App* simulate = app.add_subcommand("simulate", "Integrate the protocol with RK4");
  add_topology(simulate);
  add_init(simulate);
  add_time(simulate);
  simulate->add_option("--normalizer", cfg.normalizer, "identity or smooth:EPS")->capture_default_str();
  simulate->add_option("--out", cfg.out, "Trajectory CSV path (default stdout)");
  simulate->add_option("--radius", cfg.radius, "Also monitor visibility with this viewing range");
  simulate->add_option("--report", cfg.report, "Visibility report JSON path (default stderr)");
  simulate->add_option("--ensemble", cfg.ensemble, "Simulate K clouds with seeds S..S+K-1");

  CLI::App* vis = app.add_subcommand("visibility", "Check that communicating agents stay within range");
  add_topology(vis);
  add_init(vis);
  add_time(vis);
  vis->add_option("--normalizer", cfg.normalizer, "identity or smooth:EPS")->capture_default_str();
  vis->add_option("--radius", cfg.radius, "Viewing range C")->required();
  vis->add_option("--out", cfg.out, "Report JSON path (default stdout)");
  vis->add_option("--edges-csv", cfg.edges_csv, "Per-edge distance CSV");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n\n" << app.help();
    return kError;
  }

  CLI::App* chosen = app.get_subcommands().front();
  cfg.subcommand = chosen->get_name();
  if (const CLI::Option* opt = chosen->get_option_no_throw("--random-seed"); opt && opt->count() > 0) {
    cfg.seed = seed;
  }
  if (cfg.subcommand == "spectrum" && chosen->count("--format") == 0) cfg.format = "csv";
  return run(cfg, out, err);
}

}  // namespace swarm::cli
