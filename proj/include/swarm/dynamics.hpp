#pragma once

#include "swarm/configuration.hpp"
#include "swarm/topology.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace swarm {

inline constexpr double kBlowupThreshold = 1e12;
inline constexpr double kMinEpsilon = 1e-6;
inline constexpr double kVisibilitySlack = 1e-9;
/// Central-difference step for jacobian_at_zero. The smooth normalizer has
/// a |v| kink in its denominator, so the central quotient carries an O(h)
/// bias; h = 1e-7 keeps it below 1e-6 while rounding stays near 1e-9.
inline constexpr double kJacobianStep = 1e-7;

/// Raised when an integrated state leaves the finite range.
class Blowup : public std::runtime_error {
 public:
  explicit Blowup(double t) : std::runtime_error("blowup"), time(t) {}
  double time;
};

/// Velocity normalizer N: R^2 -> R^2 with N(0) = 0.
class Normalizer {
 public:
  enum class Kind { linear, smooth_eps };

  /// N(v) = v.
  static Normalizer identity() { return linear(1.0); }
  /// N(v) = c v.
  static Normalizer linear(double c);
  /// N(v) = v / (|v| + exp(-|v|^2 / eps)). Throws for eps < 1e-6.
  static Normalizer smooth(double eps);

  Kind kind() const { return kind_; }
  double epsilon() const { return eps_; }
  /// Derivative scale at the origin, DN(0) = c I.
  double scale() const { return c_; }
  std::string describe() const;

  Eigen::Vector2d operator()(const Eigen::Vector2d& v) const;

 private:
  Normalizer(Kind k, double eps, double c) : kind_(k), eps_(eps), c_(c) {}
  Kind kind_;
  double eps_;
  double c_;
};

/// z_i' = -z_i + sum_j w_ij z_j on an interleaved state.
Eigen::VectorXd linear_rhs(const Eigen::VectorXd& z, const WeightMatrix& w);
Eigen::VectorXd linear_rhs(const Configuration& z, const WeightMatrix& w);

/// z_i' = N(-z_i + sum_j w_ij z_j).
Eigen::VectorXd normalized_rhs(const Eigen::VectorXd& z, const WeightMatrix& w,
                               const Normalizer& nrm);

/// Central finite-difference Jacobian of N at the origin.
Eigen::Matrix2d jacobian_at_zero(const Normalizer& nrm, double h = kJacobianStep);

using RightHandSide = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

struct IntegrationOptions {
  double dt = 1e-3;
  double horizon = 20.0;
  std::size_t stride = 1;  ///< keep every stride-th step (the last step is always kept)
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Configuration> states;
  std::string topology;
  std::string integrator = "rk4";
  double dt = 0.0;
  std::string normalizer;

  std::size_t size() const { return times.size(); }
};

/// Classical fixed-step RK4 on the interleaved state. Step k lands at
/// t = k dt; a final shorter step reaches the horizon exactly.
/// Throws Blowup when any coordinate exceeds 1e12 or becomes non-finite.
Trajectory integrate(const RightHandSide& rhs, const Configuration& z0,
                     const IntegrationOptions& opts);

Trajectory integrate_linear(const WeightMatrix& w, const Configuration& z0,
                            const IntegrationOptions& opts);
Trajectory integrate_normalized(const WeightMatrix& w, const Normalizer& nrm,
                                const Configuration& z0,
                                const IntegrationOptions& opts);

struct Violation {
  double time = 0.0;
  Edge edge;
  double distance = 0.0;
};

struct VisibilityReport {
  double radius = 0.0;
  std::vector<Edge> edges;               ///< unordered communicating pairs
  std::vector<double> edge_max;          ///< per edge, over the trajectory
  std::vector<double> max_edge_series;   ///< max over edges, per stored time
  std::optional<Violation> first_violation;
  /// Max edge distance never grows by more than kVisibilitySlack between
  /// consecutive stored times.
  bool max_edge_nonincreasing = true;
  /// Edge distances per stored time, edge-major within a row.
  std::vector<std::vector<double>> distances;
};

/// Raised when the initial configuration does not respect the radius.
class InvalidInitialConfiguration : public std::invalid_argument {
 public:
  InvalidInitialConfiguration(const std::string& what, std::vector<Edge> offending)
      : std::invalid_argument(what), edges(std::move(offending)) {}
  std::vector<Edge> edges;
};

VisibilityReport visibility_monitor(const Trajectory& traj,
                                    const CirculantTopology& top, double radius);
VisibilityReport visibility_monitor(const Trajectory& traj,
                                    const std::vector<Edge>& edges, double radius);

/// Agent pairs (any, not only communicating) whose distance at some stored
/// time exceeds their initial distance by more than `slack`.
std::vector<Edge> distance_increases(const Trajectory& traj,
                                     double slack = kVisibilitySlack);

}  // namespace swarm
