#include "swarm/decompose.hpp"

#include <cmath>
#include <stdexcept>

namespace swarm {

Decomposition decompose(const Configuration& z0, const SpectralData& spec) {
  if (z0.size() != spec.n) {
    throw std::invalid_argument("configuration size does not match spectrum");
  }
  if (spec.subspaces.empty() ||
      std::abs(spec.subspaces.front().eigenvalue - 1.0) > kConsistencyTolerance) {
    throw std::invalid_argument("decomposition requires consistent weights (lambda_0 = 1)");
  }

  Decomposition dec;
  dec.n = spec.n;
  dec.zstar = z0.centroid();

  const Eigen::VectorXd z = z0.stacked();
  for (std::size_t j = 1; j < spec.subspaces.size(); ++j) {
    const Subspace& s = spec.subspaces[j];
    Component c;
    c.index = j;
    c.dim = s.dim;
    c.basis = s.basis;
    c.beta0 = s.basis.transpose() * z;
    c.xi0 = s.basis * c.beta0;
    c.convergence_rate = s.rate;
    c.decay_exponent = -1.0 + s.rate;
    c.rotation = s.rotation;
    dec.components.push_back(std::move(c));
  }
  return dec;
}

std::vector<EvolvedComponent> evolve(const Decomposition& dec, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("time must be non-negative");
  std::vector<EvolvedComponent> out;
  out.reserve(dec.components.size());
  for (const Component& c : dec.components) {
    EvolvedComponent e;
    e.index = c.index;
    e.alpha = std::exp(c.decay_exponent * t);
    e.beta = c.beta0;
    if (c.dim == 4 && c.rotation != 0.0) {
      // Both planes (b1, b2) and (b3, b4) rotate by Im(lambda_j) t.
      const double angle = c.rotation * t;
      const double cs = std::cos(angle);
      const double sn = std::sin(angle);
      for (Eigen::Index p = 0; p < 4; p += 2) {
        const double u = c.beta0(p);
        const double v = c.beta0(p + 1);
        e.beta(p) = cs * u - sn * v;
        e.beta(p + 1) = sn * u + cs * v;
      }
    }
    e.xi = c.basis * e.beta;
    out.push_back(std::move(e));
  }
  return out;
}

Configuration reconstruct(const Decomposition& dec, double t) {
  const auto n = static_cast<Eigen::Index>(dec.n);
  Eigen::VectorXd z(2 * n);
  z.head(n).setConstant(dec.zstar.x);
  z.tail(n).setConstant(dec.zstar.y);
  for (const EvolvedComponent& e : evolve(dec, t)) z += e.alpha * e.xi;
  return Configuration::from_stacked(z);
}

}  // namespace swarm
