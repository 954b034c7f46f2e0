#pragma once

#include "swarm/topology.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace swarm {

/// |Im lambda| below this is treated as a real eigenvalue.
inline constexpr double kRealEigenvalueTolerance = 1e-12;
/// Rates closer than this are considered tied for the strong-stable test.
inline constexpr double kRateTieTolerance = 1e-12;

struct EigenPair {
  std::size_t index = 0;
  std::complex<double> value;
  Eigen::VectorXcd vector;
};

/// One invariant subspace V_j of the stacked system Z~ = (X, Y).
///
/// For 4-dimensional subspaces the columns of `basis` are ordered so that
/// (b1, b2) and (b3, b4) are the two planes on which I_2 (x) W acts as the
/// rotation-scaling block Lambda_j:
///
///   b1 ~ (Re v, Im v),  b2 ~ (-Im v, Re v),
///   b3 ~ (Im v, Re v),  b4 ~ (Re v, -Im v).
///
/// Two-dimensional subspaces (j = 0, and j = N/2 for even N) carry
/// b1 ~ (v, 0) and b2 ~ (0, v).
struct Subspace {
  std::size_t index = 0;
  std::size_t dim = 0;
  Eigen::MatrixXd basis;  ///< 2N x dim, orthonormal columns
  std::complex<double> eigenvalue;
  double rate = 0.0;      ///< Re(lambda_j)
  double rotation = 0.0;  ///< Im(lambda_j)
  Eigen::Matrix2d block = Eigen::Matrix2d::Zero();
  /// (Re v_j, Im v_j) in stacked layout with raw unit-modulus scaling.
  Eigen::VectorXd generating;
};

struct SpectralData {
  std::size_t n = 0;
  std::vector<EigenPair> pairs;       ///< j = 0..N-1
  std::vector<Subspace> subspaces;    ///< j = 0..floor(N/2)
  std::optional<std::size_t> strong_stable;

  std::size_t pair_count() const { return subspaces.size(); }
};

/// exp(2 pi i m / n) with m reduced mod n; quarter turns are exact.
std::complex<double> unit_root(std::size_t m, std::size_t n);

/// lambda_j = sum_i w_i omega^{ij} for j = 0..N-1.
std::vector<std::complex<double>> circulant_eigenvalues(
    const CirculantTopology& top);

/// v_j = (1, omega^j, ..., omega^{(N-1)j}). Throws std::out_of_range.
Eigen::VectorXcd eigenvector(std::size_t n, std::size_t j);

/// Orthonormal basis of V_j, 0 <= j <= floor(N/2). `lambda` fills the rate,
/// rotation and block fields. Throws std::out_of_range.
Subspace subspace_basis(std::size_t n, std::size_t j,
                        std::complex<double> lambda = {});

SpectralData closed_form_spectrum(const CirculantTopology& top);

/// (j, Re lambda_j) for j = 0..floor(N/2).
std::vector<std::pair<std::size_t, double>> convergence_rates(
    const SpectralData& spec);

/// [[Re, -Im], [Im, Re]]; a 1x1 matrix when lambda is real.
Eigen::MatrixXd real_block(std::complex<double> lambda);

/// Assembles the orthonormal bases of all subspaces into one 2N x 2N matrix.
Eigen::MatrixXd assembled_basis(const SpectralData& spec);

}  // namespace swarm
