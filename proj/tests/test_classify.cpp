#include "swarm/classify.hpp"
#include "swarm/configuration.hpp"

#include <doctest.h>

#include <random>

using namespace swarm;

namespace {

Eigen::MatrixXd app_a_matrix() {
  Eigen::Matrix3d m;
  m << 0, 0.5, 0.5, 0.5, 0, 0.5, 0, 0, 1;
  return m;
}

std::vector<double> nbug(std::size_t n) {
  std::vector<double> w(n, 0.0);
  w[1] = 1.0;
  return w;
}

std::vector<double> gtm(std::size_t n) {
  std::vector<double> w(n, 0.0);
  w[1] += 0.5;
  w[n - 1] += 0.5;
  return w;
}

}  // namespace

TEST_CASE("is_gathering_general examples") {
  CHECK(is_gathering_general(general_matrix(app_a_matrix())).value);
  CHECK(is_gathering_general(dense_matrix(make_circulant({0, 5, -4}))).value);

  // Jump 2 only on N = 6: two components, eigenvalue 1 is double.
  const Verdict v = is_gathering_general(dense_matrix(make_circulant({0.5, 0, 0.5, 0, 0, 0})));
  CHECK_FALSE(v.value);
  CHECK(v.witness.find("multiplicity 2") != std::string::npos);

  const Verdict inconsistent = is_gathering_general(dense_matrix(make_circulant({0, 1, 1})));
  CHECK_FALSE(inconsistent.value);
  CHECK_FALSE(inconsistent.witness.empty());
}

TEST_CASE("is_gathering_circulant examples") {
  for (std::size_t n = 3; n <= 12; ++n) {
    CHECK(is_gathering_circulant(make_circulant(nbug(n))).value);
    CHECK(is_gathering_circulant(make_circulant(gtm(n))).value);
  }
  const Verdict v = is_gathering_circulant(make_circulant({0, 0, 0.5, 0, 0.5, 0}));
  CHECK_FALSE(v.value);
  CHECK(v.witness.find("gcd") != std::string::npos);
  CHECK_THROWS_WITH_AS(is_gathering_circulant(make_circulant({0, 5, -4})),
                       "requires non-negative weights", std::invalid_argument);
}

TEST_CASE("equilibria_class") {
  const auto gta = equilibria_class(dense_matrix(make_circulant(std::vector<double>(5, 0.2))));
  CHECK(gta.consistent);
  CHECK(gta.v0_only == std::optional<bool>(true));

  const auto id = equilibria_class(general_matrix(Eigen::MatrixXd::Identity(4, 4)));
  CHECK(id.consistent);
  CHECK(id.v0_only == std::optional<bool>(false));

  const auto bad = equilibria_class(dense_matrix(make_circulant({0, 1, 1})));
  CHECK_FALSE(bad.consistent);
  CHECK_FALSE(bad.v0_only.has_value());
}

TEST_CASE("converges_all") {
  CHECK(converges_all(general_matrix(Eigen::MatrixXd::Identity(3, 3))));
  CHECK(converges_all(dense_matrix(make_circulant({0, 2, -1}))));
  Eigen::Matrix2d jordan;
  jordan << 1, 1, 0, 1;
  CHECK_FALSE(converges_all(general_matrix(jordan)));
  // Rotation with Re(lambda) = 1, lambda != 1: periodic, not convergent.
  Eigen::Matrix2d periodic;
  periodic << 1, -1, 1, 1;
  CHECK_FALSE(converges_all(general_matrix(periodic)));
}

TEST_CASE("necessary_connectivity") {
  CHECK(necessary_connectivity(general_matrix(app_a_matrix())));
  CHECK(necessary_connectivity(dense_matrix(make_circulant(gtm(8)))));

  Eigen::MatrixXd blocks = Eigen::MatrixXd::Zero(4, 4);
  blocks << 0, 1, 0, 0,
            1, 0, 0, 0,
            0, 0, 0, 1,
            0, 0, 1, 0;
  const WeightMatrix w = general_matrix(blocks);
  CHECK(is_consistent(w));
  CHECK_FALSE(necessary_connectivity(w));
  CHECK_FALSE(is_gathering_general(w).value);
}

TEST_CASE("sufficient_pf") {
  CHECK(sufficient_pf(dense_matrix(make_circulant(gtm(7)))));
  CHECK_FALSE(sufficient_pf(general_matrix(app_a_matrix())));
  CHECK_FALSE(sufficient_pf(general_matrix(Eigen::MatrixXd::Identity(3, 3))));
  CHECK_THROWS_AS(sufficient_pf(dense_matrix(make_circulant({0, 5, -4}))), std::invalid_argument);
}

TEST_CASE("is_doubly_stochastic") {
  CHECK(is_doubly_stochastic(make_circulant(std::vector<double>(6, 1.0 / 6))));
  CHECK_FALSE(is_doubly_stochastic(make_circulant({0, 5, -4})));
  CHECK(is_doubly_stochastic(make_circulant({1, 0, 0, 0})));
}

TEST_CASE("gathering point is the average") {
  CHECK(Configuration::coincident(4, {1, 2}).centroid() == Point{1, 2});
  const Configuration pair({{0, 0}, {2, 4}});
  CHECK(pair.centroid() == Point{1, 2});
}

TEST_CASE("circulant and spectral gathering tests agree for random weights, N <= 12") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  for (std::size_t n = 2; n <= 12; ++n) {
    for (std::uint32_t mask = 0; mask < (1u << (n - 1)); ++mask) {
      std::vector<double> w(n, 0.0);
      w[0] = (mask % 3 == 0) ? u(gen) : 0.0;
      for (std::size_t s = 1; s < n; ++s) {
        if (mask & (1u << (s - 1))) w[s] = u(gen);
      }
      double total = 0.0;
      for (double v : w) total += v;
      if (total == 0.0) w[0] = total = 1.0;
      for (double& v : w) v /= total;
      // Force an exact unit sum so consistency is not decided by rounding.
      double rest = 0.0;
      for (std::size_t s = 1; s < n; ++s) rest += w[s];
      w[0] = std::max(0.0, 1.0 - rest);

      const auto top = make_circulant(w);
      const bool circ = is_gathering_circulant(top).value;
      const WeightMatrix m = dense_matrix(top);
      const bool spec = is_gathering_general(m).value;
      REQUIRE_MESSAGE(circ == spec, "n=" << n << " mask=" << mask);
      if (sufficient_pf(m)) REQUIRE(spec);
      if (spec && is_consistent(m)) REQUIRE(necessary_connectivity(m));
    }
  }
}

TEST_CASE("classification report for the three-agent non-circulant matrix") {
  const ClassificationReport r = classify(general_matrix(app_a_matrix()));
  CHECK(r.gathering());
  CHECK(r.consistent);
  CHECK(r.weakly_connected);
  CHECK_FALSE(r.strongly_connected);
  CHECK_FALSE(r.connected.has_value());
  CHECK(r.non_defective_real);
}

TEST_CASE("classification report for negative weights uses the spectral test") {
  const ClassificationReport r = classify(make_circulant({0, 5, -4}));
  CHECK(r.gathering());
  CHECK_FALSE(r.nonneg);
  CHECK_FALSE(r.gathering_circulant.has_value());
  CHECK(r.doubly_stochastic == std::optional<bool>(false));
  CHECK_FALSE(r.non_defective_real);
  CHECK(r.witness.find("negative") != std::string::npos);
}

TEST_CASE("classification report for a disconnected circulant") {
  const ClassificationReport r = classify(make_circulant({0, 0, 0.5, 0, 0.5, 0}));
  CHECK_FALSE(r.gathering());
  CHECK(r.gathering_circulant == std::optional<bool>(false));
  CHECK(r.connected == std::optional<bool>(false));
  CHECK(r.equilibria_are_v0_only == std::optional<bool>(false));
}
