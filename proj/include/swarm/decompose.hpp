#pragma once

#include "swarm/configuration.hpp"
#include "swarm/spectral.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

namespace swarm {

/// Part of a configuration living in one invariant subspace V_j, j >= 1.
struct Component {
  std::size_t index = 0;
  std::size_t dim = 0;
  Eigen::MatrixXd basis;  ///< orthonormal basis of V_j (stacked layout)
  Eigen::VectorXd beta0;  ///< coordinates in `basis` at t = 0
  Eigen::VectorXd xi0;    ///< basis * beta0
  double convergence_rate = 0.0;  ///< Re(lambda_j)
  double decay_exponent = 0.0;    ///< -1 + Re(lambda_j)
  double rotation = 0.0;          ///< Im(lambda_j)
};

/// Z~(0) = Z~* + sum_j Xi_j(0).
struct Decomposition {
  std::size_t n = 0;
  Point zstar;
  std::vector<Component> components;  ///< j = 1..floor(N/2)
};

struct EvolvedComponent {
  std::size_t index = 0;
  double alpha = 1.0;    ///< exp((-1 + Re lambda_j) t)
  Eigen::VectorXd beta;  ///< rotated coefficients, ||beta|| == ||beta0||
  Eigen::VectorXd xi;    ///< basis * beta
};

/// Projects a configuration onto the invariant subspaces of a circulant
/// spectrum. Throws std::invalid_argument on a size mismatch or when
/// lambda_0 != 1 (inconsistent weights).
Decomposition decompose(const Configuration& z0, const SpectralData& spec);

/// Closed-form coefficients at time t >= 0.
std::vector<EvolvedComponent> evolve(const Decomposition& dec, double t);

/// Exact solution of the stacked linear system at time t >= 0.
Configuration reconstruct(const Decomposition& dec, double t);

}  // namespace swarm
