#pragma once

#include "swarm/topology.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace swarm {

/// Raised when the QR iteration exceeds its sweep cap.
class EigenNoConvergence : public std::runtime_error {
 public:
  EigenNoConvergence() : std::runtime_error("qr_no_convergence") {}
};

inline constexpr std::size_t kMaxOracleDimension = 256;
inline constexpr int kQrSweepsPerRow = 30;

/// Group of numerically coincident eigenvalues.
struct EigenCluster {
  std::complex<double> value;  ///< cluster mean
  std::size_t algebraic = 0;
  std::size_t geometric = 0;
};

struct GeneralSpectrum {
  std::vector<std::complex<double>> eigenvalues;  ///< with multiplicity
  Eigen::MatrixXcd eigenvectors;                  ///< column k pairs with eigenvalues[k]
  std::vector<EigenCluster> clusters;
  bool defective = false;
  bool all_real = true;
  double scale = 1.0;  ///< Frobenius norm of W (1 for the zero matrix)

  /// Tolerance used to merge eigenvalues into clusters.
  double cluster_radius() const { return 1e-8 * scale; }
  const EigenCluster* cluster_near(std::complex<double> z) const;
};

/// Dense nonsymmetric eigendecomposition. Eigenvalues with
/// |Im| < 1e-10 (1 + |lambda|) are snapped to the real axis; geometric
/// multiplicities come from the numerical rank of W - lambda I.
GeneralSpectrum eig(const WeightMatrix& w);

/// N - rank(W - lambda I) with absolute rank tolerance 1e-10 ||W||.
std::size_t geometric_multiplicity(const Eigen::MatrixXd& w,
                                   std::complex<double> lambda, double scale);

/// All eigenvalues real and no cluster is defective.
bool is_non_defective_real(const GeneralSpectrum& spec);
bool is_non_defective_real(const WeightMatrix& w);

/// Bottleneck distance between two equally sized multisets, computed by
/// greedy nearest matching (an upper bound on the optimal matching).
double multiset_distance(std::span<const std::complex<double>> a,
                         std::span<const std::complex<double>> b);

}  // namespace swarm
