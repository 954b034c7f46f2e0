#include "swarm/eigen_oracle.hpp"
#include "swarm/spectral.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace swarm;
using cd = std::complex<double>;

namespace {

// Laplace expansion along the first row; exponential, fine for N <= 6.
cd cofactor_det(const Eigen::MatrixXcd& m) {
  const Eigen::Index n = m.rows();
  if (n == 1) return m(0, 0);
  cd det = 0.0;
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::MatrixXcd minor(n - 1, n - 1);
    for (Eigen::Index i = 1; i < n; ++i) {
      for (Eigen::Index j = 0, k = 0; j < n; ++j) {
        if (j != c) minor(i - 1, k++) = m(i, j);
      }
    }
    det += (c % 2 == 0 ? 1.0 : -1.0) * m(0, c) * cofactor_det(minor);
  }
  return det;
}

std::vector<double> random_weights(std::mt19937_64& gen, std::size_t n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> w(n);
  for (double& v : w) v = u(gen);
  return w;
}

Eigen::MatrixXd app_a_matrix() {
  Eigen::Matrix3d m;
  m << 0, 0.5, 0.5, 0.5, 0, 0.5, 0, 0, 1;
  return m;
}

}  // namespace

TEST_CASE("identity has one eigenvalue of full multiplicity") {
  const GeneralSpectrum s = eig(general_matrix(Eigen::MatrixXd::Identity(3, 3)));
  REQUIRE(s.clusters.size() == 1);
  CHECK(s.clusters[0].value == cd(1.0, 0.0));
  CHECK(s.clusters[0].algebraic == 3);
  CHECK(s.clusters[0].geometric == 3);
  CHECK_FALSE(s.defective);
  CHECK(is_non_defective_real(s));
}

TEST_CASE("non-circulant three-agent matrix has eigenvalues 1, 1/2, -1/2") {
  const GeneralSpectrum s = eig(general_matrix(app_a_matrix()));
  const std::vector<cd> expected{1.0, 0.5, -0.5};
  CHECK(multiset_distance(s.eigenvalues, expected) < 1e-12);
  CHECK(s.all_real);
  CHECK(is_non_defective_real(s));
}

TEST_CASE("circulant(0,5,-4) matches the closed form and is not real") {
  const auto top = make_circulant({0, 5, -4});
  const GeneralSpectrum s = eig(dense_matrix(top));
  CHECK(multiset_distance(s.eigenvalues, circulant_eigenvalues(top)) < 1e-9);
  CHECK_FALSE(s.all_real);
  CHECK_FALSE(is_non_defective_real(dense_matrix(top)));
}

TEST_CASE("Jordan block is defective") {
  Eigen::Matrix2d j;
  j << 1, 1, 0, 1;
  const GeneralSpectrum s = eig(general_matrix(j));
  REQUIRE(s.clusters.size() == 1);
  CHECK(s.clusters[0].algebraic == 2);
  CHECK(s.clusters[0].geometric == 1);
  CHECK(s.defective);
  CHECK_FALSE(is_non_defective_real(s));
}

TEST_CASE("Go-To-The-Middle is non-defective with real spectrum") {
  for (std::size_t n = 3; n <= 16; ++n) {
    std::vector<double> w(n, 0.0);
    w[1] += 0.5;
    w[n - 1] += 0.5;
    CHECK(is_non_defective_real(dense_matrix(make_circulant(w))));
  }
}

TEST_CASE("residuals and characteristic polynomial at desk scale") {
  std::mt19937_64 gen(99);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 60; ++trial) {
    const Eigen::Index n = 1 + trial % 6;
    Eigen::MatrixXd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) m(i, j) = nd(gen);
    const GeneralSpectrum s = eig(general_matrix(m));
    const double norm = m.norm();
    REQUIRE(s.eigenvalues.size() == static_cast<std::size_t>(n));
    for (std::size_t k = 0; k < s.eigenvalues.size(); ++k) {
      const cd lambda = s.eigenvalues[k];
      const Eigen::VectorXcd v = s.eigenvectors.col(static_cast<Eigen::Index>(k));
      CHECK((m.cast<cd>() * v - lambda * v).norm() <= 1e-8 * norm * v.norm());
      Eigen::MatrixXcd shifted = m.cast<cd>();
      shifted.diagonal().array() -= lambda;
      CHECK(std::abs(cofactor_det(shifted)) <= 1e-6 * std::pow(norm, static_cast<double>(n)));
    }
    // Conjugate closure for real input.
    for (const cd& z : s.eigenvalues) {
      if (z.imag() == 0.0) continue;
      const auto partner = std::find_if(s.eigenvalues.begin(), s.eigenvalues.end(),
                                        [&](const cd& y) { return std::abs(y - std::conj(z)) < 1e-9; });
      CHECK(partner != s.eigenvalues.end());
    }
    std::size_t total = 0;
    for (const auto& c : s.clusters) total += c.algebraic;
    CHECK(total == static_cast<std::size_t>(n));
  }
}

TEST_CASE("closed form equals oracle for random circulants") {
  std::mt19937_64 gen(2024);
  std::uniform_int_distribution<std::size_t> size(2, 32);
  for (int trial = 0; trial < 200; ++trial) {
    const auto top = make_circulant(random_weights(gen, size(gen)));
    const GeneralSpectrum s = eig(dense_matrix(top));
    REQUIRE(multiset_distance(s.eigenvalues, circulant_eigenvalues(top)) < 1e-9);
  }
}

TEST_CASE("multiset_distance") {
  const std::vector<cd> a{1.0, cd(0, 1), cd(0, -1)};
  const std::vector<cd> b{cd(0, -1), 1.0 + 1e-3, cd(0, 1)};
  CHECK(multiset_distance(a, b) == doctest::Approx(1e-3));
  const std::vector<cd> c{1.0};
  CHECK(std::isinf(multiset_distance(a, c)));
}

TEST_CASE("oracle rejects empty and oversized input") {
  WeightMatrix big{Eigen::MatrixXd::Zero(300, 300), MatrixOrigin::general};
  CHECK_THROWS_AS(eig(big), std::invalid_argument);
}

TEST_CASE("zero matrix is diagonalizable") {
  const GeneralSpectrum s = eig(general_matrix(Eigen::MatrixXd::Zero(4, 4)));
  REQUIRE(s.clusters.size() == 1);
  CHECK(s.clusters[0].geometric == 4);
  CHECK_FALSE(s.defective);
}
