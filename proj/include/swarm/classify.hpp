#pragma once

#include "swarm/eigen_oracle.hpp"
#include "swarm/topology.hpp"

#include <Eigen/Dense>

#include <optional>
#include <string>

namespace swarm {

/// Distance from 1 within which an eigenvalue counts as "the" eigenvalue 1.
inline constexpr double kUnitEigenvalueRadius = 1e-8;
/// Re(lambda) < 1 - margin is required of every other eigenvalue.
inline constexpr double kStrictRateMargin = 1e-12;
/// Maximum angle between the unit-eigenvalue eigenvector and (1, ..., 1).
inline constexpr double kConsensusAngle = 1e-8;

/// Boolean outcome plus a human-readable reason when it is false (or, for
/// some predicates, the evidence when true).
struct Verdict {
  bool value = false;
  std::string witness;

  explicit operator bool() const { return value; }
};

/// Simple eigenvalue 1 with eigenvector parallel to the ones vector and
/// Re(lambda) < 1 for every other eigenvalue.
Verdict is_gathering_general(const WeightMatrix& w);
Verdict is_gathering_general(const GeneralSpectrum& spec);

/// Connected interaction graph and consistent weights. Requires w_i >= 0;
/// throws std::invalid_argument("requires non-negative weights") otherwise.
Verdict is_gathering_circulant(const CirculantTopology& top);

struct EquilibriaClass {
  bool consistent = false;
  /// Only gathering points are equilibria; unset when not consistent.
  std::optional<bool> v0_only;
};

EquilibriaClass equilibria_class(const WeightMatrix& w);
EquilibriaClass equilibria_class(const WeightMatrix& w, const GeneralSpectrum& spec);

/// Every solution converges: Re(lambda) < 1 or lambda == 1, and the
/// eigenvalue 1 (if present) is semisimple.
bool converges_all(const WeightMatrix& w);
bool converges_all(const GeneralSpectrum& spec);

/// Weak connectivity of the off-diagonal nonzero pattern.
bool necessary_connectivity(const WeightMatrix& w);

/// Strong connectivity plus consistency. Requires non-negative entries;
/// throws std::invalid_argument otherwise.
bool sufficient_pf(const WeightMatrix& w);

/// All w_i in [0, 1] and sum w_i == 1.
bool is_doubly_stochastic(const CirculantTopology& top);

struct ClassificationReport {
  bool consistent = false;
  std::optional<bool> connected;  ///< circulant inputs only
  bool nonneg = false;
  bool gathering_spectral = false;
  std::optional<bool> gathering_circulant;  ///< non-negative circulant only
  std::optional<bool> equilibria_are_v0_only;
  bool all_initial_converge = false;
  std::optional<bool> doubly_stochastic;  ///< circulant inputs only
  bool weakly_connected = false;
  bool strongly_connected = false;
  bool non_defective_real = false;
  std::string witness;

  bool gathering() const { return gathering_spectral; }
};

ClassificationReport classify(const CirculantTopology& top);
ClassificationReport classify(const WeightMatrix& w);

}  // namespace swarm
