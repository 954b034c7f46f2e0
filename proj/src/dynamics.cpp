#include "swarm/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace swarm {

namespace {

using Positions = Eigen::Matrix<double, Eigen::Dynamic, 2, Eigen::RowMajor>;

void check_size(const Eigen::VectorXd& z, const WeightMatrix& w) {
  if (z.size() != 2 * static_cast<Eigen::Index>(w.size())) {
    throw std::invalid_argument("state size does not match weight matrix");
  }
}

// -z_i + sum_j w_ij z_j for every agent, one row per agent.
Positions directions(const Eigen::VectorXd& z, const WeightMatrix& w) {
  const Eigen::Map<const Positions> p(z.data(), z.size() / 2, 2);
  return w.entries * p - p;
}

Eigen::VectorXd flatten(const Positions& p) {
  return Eigen::Map<const Eigen::VectorXd>(p.data(), p.size());
}

}  // namespace

Normalizer Normalizer::linear(double c) { return {Kind::linear, 0.0, c}; }

Normalizer Normalizer::smooth(double eps) {
  if (!(eps >= kMinEpsilon) || !std::isfinite(eps)) {
    throw std::invalid_argument("smooth normalizer requires eps >= 1e-6");
  }
  return {Kind::smooth_eps, eps, 1.0};
}

std::string Normalizer::describe() const {
  std::ostringstream os;
  os.precision(17);
  if (kind_ == Kind::smooth_eps) {
    os << "smooth:" << eps_;
  } else if (c_ == 1.0) {
    os << "identity";
  } else {
    os << "linear:" << c_;
  }
  return os.str();
}

Eigen::Vector2d Normalizer::operator()(const Eigen::Vector2d& v) const {
  if (kind_ == Kind::linear) return c_ * v;
  const double r = v.norm();
  return v / (r + std::exp(-(r * r) / eps_));
}

Eigen::VectorXd linear_rhs(const Eigen::VectorXd& z, const WeightMatrix& w) {
  check_size(z, w);
  return flatten(directions(z, w));
}

Eigen::VectorXd linear_rhs(const Configuration& z, const WeightMatrix& w) {
  return linear_rhs(z.interleaved(), w);
}

Eigen::VectorXd normalized_rhs(const Eigen::VectorXd& z, const WeightMatrix& w,
                               const Normalizer& nrm) {
  check_size(z, w);
  Positions d = directions(z, w);
  if (nrm.kind() == Normalizer::Kind::linear) return flatten(nrm.scale() * d);
  for (Eigen::Index i = 0; i < d.rows(); ++i) {
    const Eigen::Vector2d v = d.row(i).transpose();
    d.row(i) = nrm(v).transpose();
  }
  return flatten(d);
}

Eigen::Matrix2d jacobian_at_zero(const Normalizer& nrm, double h) {
  Eigen::Matrix2d jac;
  for (int k = 0; k < 2; ++k) {
    const Eigen::Vector2d e = Eigen::Vector2d::Unit(k) * h;
    jac.col(k) = (nrm(e) - nrm(-e)) / (2.0 * h);
  }
  return jac;
}

Trajectory integrate(const RightHandSide& rhs, const Configuration& z0,
                     const IntegrationOptions& opts) {
  if (!(opts.dt > 0.0) || !(opts.horizon > 0.0)) {
    throw std::invalid_argument("dt and T must be positive");
  }
  if (opts.stride == 0) throw std::invalid_argument("stride must be positive");

  const auto full_steps =
      static_cast<std::size_t>(std::floor(opts.horizon / opts.dt * (1.0 + 1e-12)));
  const double tail = opts.horizon - static_cast<double>(full_steps) * opts.dt;
  const bool has_tail = tail > 1e-12 * opts.dt;
  const std::size_t steps = full_steps + (has_tail ? 1 : 0);

  Trajectory traj;
  traj.dt = opts.dt;
  traj.times.reserve(steps / opts.stride + 2);
  traj.states.reserve(steps / opts.stride + 2);

  Eigen::VectorXd z = z0.interleaved();
  traj.times.push_back(0.0);
  traj.states.push_back(z0);

  for (std::size_t k = 1; k <= steps; ++k) {
    const double h = (has_tail && k == steps) ? tail : opts.dt;
    const Eigen::VectorXd k1 = rhs(z);
    const Eigen::VectorXd k2 = rhs(z + 0.5 * h * k1);
    const Eigen::VectorXd k3 = rhs(z + 0.5 * h * k2);
    const Eigen::VectorXd k4 = rhs(z + h * k3);
    z += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    const double t = (has_tail && k == steps) ? opts.horizon
                                              : static_cast<double>(k) * opts.dt;
    if (!z.allFinite() || z.cwiseAbs().maxCoeff() > kBlowupThreshold) {
      throw Blowup(t);
    }
    if (k % opts.stride == 0 || k == steps) {
      traj.times.push_back(t);
      traj.states.push_back(Configuration::from_interleaved(z));
    }
  }
  return traj;
}

Trajectory integrate_linear(const WeightMatrix& w, const Configuration& z0,
                            const IntegrationOptions& opts) {
  Trajectory traj = integrate(
      [&w](const Eigen::VectorXd& z) { return linear_rhs(z, w); }, z0, opts);
  traj.normalizer = "identity";
  return traj;
}

Trajectory integrate_normalized(const WeightMatrix& w, const Normalizer& nrm,
                                const Configuration& z0,
                                const IntegrationOptions& opts) {
  Trajectory traj = integrate(
      [&w, &nrm](const Eigen::VectorXd& z) { return normalized_rhs(z, w, nrm); },
      z0, opts);
  traj.normalizer = nrm.describe();
  return traj;
}

VisibilityReport visibility_monitor(const Trajectory& traj,
                                    const CirculantTopology& top, double radius) {
  return visibility_monitor(traj, top.edges(), radius);
}

VisibilityReport visibility_monitor(const Trajectory& traj,
                                    const std::vector<Edge>& edges, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("radius must be positive");
  if (traj.states.empty()) throw std::invalid_argument("empty trajectory");

  VisibilityReport rep;
  rep.radius = radius;
  rep.edges = undirected_pairs(edges);
  const double limit = radius * (1.0 + kVisibilitySlack);

  std::vector<Edge> offending;
  for (const Edge& e : rep.edges) {
    if (traj.states.front().distance(e.from, e.to) > limit) offending.push_back(e);
  }
  if (!offending.empty()) {
    std::ostringstream os;
    os << "initial configuration violates radius on edges";
    for (const Edge& e : offending) os << " (" << e.from << "," << e.to << ")";
    throw InvalidInitialConfiguration(os.str(), std::move(offending));
  }

  rep.edge_max.assign(rep.edges.size(), 0.0);
  rep.max_edge_series.reserve(traj.size());
  rep.distances.reserve(traj.size());
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const Configuration& c = traj.states[k];
    std::vector<double> row(rep.edges.size());
    double step_max = 0.0;
    for (std::size_t e = 0; e < rep.edges.size(); ++e) {
      const double d = c.distance(rep.edges[e].from, rep.edges[e].to);
      row[e] = d;
      rep.edge_max[e] = std::max(rep.edge_max[e], d);
      step_max = std::max(step_max, d);
      if (!rep.first_violation && d > limit) {
        rep.first_violation = Violation{traj.times[k], rep.edges[e], d};
      }
    }
    if (!rep.max_edge_series.empty() &&
        step_max > rep.max_edge_series.back() + kVisibilitySlack) {
      rep.max_edge_nonincreasing = false;
    }
    rep.max_edge_series.push_back(step_max);
    rep.distances.push_back(std::move(row));
  }
  return rep;
}

std::vector<Edge> distance_increases(const Trajectory& traj, double slack) {
  std::vector<Edge> out;
  if (traj.states.empty()) return out;
  const Configuration& first = traj.states.front();
  const std::size_t n = first.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d0 = first.distance(i, j);
      for (const Configuration& c : traj.states) {
        if (c.distance(i, j) > d0 + slack) {
          out.push_back({i, j});
          break;
        }
      }
    }
  }
  return out;
}

}  // namespace swarm
