#include "swarm/classify.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace swarm {

namespace {

std::string format_complex(std::complex<double> z) {
  std::ostringstream os;
  os.precision(12);
  os << z.real();
  if (z.imag() != 0.0) os << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  return os.str();
}

double angle_to_ones(const Eigen::VectorXcd& v) {
  const double norm = v.norm();
  if (norm == 0.0) return std::numbers::pi / 2;
  const std::complex<double> mean = v.mean();
  const Eigen::VectorXcd residual = v.array() - mean;
  return std::asin(std::min(1.0, residual.norm() / norm));
}

}  // namespace

Verdict is_gathering_general(const WeightMatrix& w) {
  return is_gathering_general(eig(w));
}

Verdict is_gathering_general(const GeneralSpectrum& spec) {
  std::size_t at_one = 0;
  std::size_t one_index = 0;
  for (std::size_t k = 0; k < spec.eigenvalues.size(); ++k) {
    if (std::abs(spec.eigenvalues[k] - 1.0) <= kUnitEigenvalueRadius) {
      ++at_one;
      one_index = k;
    }
  }
  if (at_one == 0) return {false, "1 is not an eigenvalue"};
  if (at_one > 1) {
    return {false, "eigenvalue 1 has algebraic multiplicity " + std::to_string(at_one)};
  }
  const Eigen::VectorXcd v = spec.eigenvectors.col(static_cast<Eigen::Index>(one_index));
  const double angle = angle_to_ones(v);
  if (!(angle < kConsensusAngle)) {
    return {false, "eigenvector of eigenvalue 1 is not parallel to (1, ..., 1)"};
  }
  for (std::size_t k = 0; k < spec.eigenvalues.size(); ++k) {
    if (k == one_index) continue;
    const auto z = spec.eigenvalues[k];
    if (!(z.real() < 1.0 - kStrictRateMargin)) {
      return {false, "eigenvalue " + format_complex(z) + " has real part >= 1"};
    }
  }
  return {true, {}};
}

Verdict is_gathering_circulant(const CirculantTopology& top) {
  if (top.has_negative_weights()) {
    throw std::invalid_argument("requires non-negative weights");
  }
  if (!is_connected(top)) {
    std::size_t g = top.size();
    for (std::size_t s : top.jumps()) g = std::gcd(g, s);
    return {false, "interaction graph is disconnected: gcd(N, jumps) = " + std::to_string(g)};
  }
  const double sum = top.weight_sum();
  if (std::abs(sum - 1.0) > kConsistencyTolerance) {
    std::ostringstream os;
    os.precision(17);
    os << "weights are not consistent: sum = " << sum;
    return {false, os.str()};
  }
  return {true, {}};
}

EquilibriaClass equilibria_class(const WeightMatrix& w) {
  if (!is_consistent(w)) return {false, std::nullopt};
  return equilibria_class(w, eig(w));
}

EquilibriaClass equilibria_class(const WeightMatrix& w, const GeneralSpectrum& spec) {
  if (!is_consistent(w)) return {false, std::nullopt};
  return {true, geometric_multiplicity(w.entries, 1.0, spec.scale) == 1};
}

bool converges_all(const WeightMatrix& w) { return converges_all(eig(w)); }

bool converges_all(const GeneralSpectrum& spec) {
  for (const auto& z : spec.eigenvalues) {
    if (std::abs(z - 1.0) <= kUnitEigenvalueRadius) continue;
    if (!(z.real() < 1.0 - kStrictRateMargin)) return false;
  }
  for (const EigenCluster& c : spec.clusters) {
    if (std::abs(c.value - 1.0) <= kUnitEigenvalueRadius && c.geometric != c.algebraic) {
      return false;
    }
  }
  return true;
}

bool necessary_connectivity(const WeightMatrix& w) {
  return weakly_connected(w.size(), matrix_edges(w));
}

bool sufficient_pf(const WeightMatrix& w) {
  if (w.has_negative_entries()) {
    throw std::invalid_argument("requires non-negative weights");
  }
  return strongly_connected(w.size(), matrix_edges(w)) && is_consistent(w);
}

bool is_doubly_stochastic(const CirculantTopology& top) {
  for (double v : top.weights()) {
    if (v < 0.0 || v > 1.0) return false;
  }
  return std::abs(top.weight_sum() - 1.0) <= kConsistencyTolerance;
}

namespace {

ClassificationReport spectral_part(const WeightMatrix& w) {
  ClassificationReport r;
  const GeneralSpectrum spec = eig(w);
  const auto edges = matrix_edges(w);
  r.consistent = is_consistent(w);
  r.nonneg = !w.has_negative_entries();
  const Verdict g = is_gathering_general(spec);
  r.gathering_spectral = g.value;
  r.witness = g.witness;
  r.equilibria_are_v0_only = equilibria_class(w, spec).v0_only;
  r.all_initial_converge = converges_all(spec);
  r.weakly_connected = weakly_connected(w.size(), edges);
  r.strongly_connected = strongly_connected(w.size(), edges);
  r.non_defective_real = is_non_defective_real(spec);
  return r;
}

}  // namespace

ClassificationReport classify(const WeightMatrix& w) { return spectral_part(w); }

ClassificationReport classify(const CirculantTopology& top) {
  ClassificationReport r = spectral_part(dense_matrix(top));
  r.connected = is_connected(top);
  r.doubly_stochastic = is_doubly_stochastic(top);
  if (!top.has_negative_weights()) {
    const Verdict c = is_gathering_circulant(top);
    r.gathering_circulant = c.value;
    if (!c.value) r.witness = c.witness;
  } else if (r.witness.empty()) {
    r.witness = "negative weights: classified by the spectral test only";
  } else {
    r.witness += "; negative weights: classified by the spectral test only";
  }
  return r;
}

}  // namespace swarm
