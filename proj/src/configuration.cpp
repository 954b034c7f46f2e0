#include "swarm/configuration.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace swarm {

Configuration::Configuration(std::vector<Point> positions)
    : positions_(std::move(positions)) {}

Configuration Configuration::from_interleaved(const Eigen::VectorXd& z) {
  if (z.size() % 2 != 0) throw std::invalid_argument("odd state length");
  std::vector<Point> p(static_cast<std::size_t>(z.size() / 2));
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(2 * i);
    p[i] = {z(k), z(k + 1)};
  }
  return Configuration(std::move(p));
}

Configuration Configuration::from_stacked(const Eigen::VectorXd& z) {
  if (z.size() % 2 != 0) throw std::invalid_argument("odd state length");
  const Eigen::Index n = z.size() / 2;
  std::vector<Point> p(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    p[static_cast<std::size_t>(i)] = {z(i), z(n + i)};
  }
  return Configuration(std::move(p));
}

Configuration Configuration::coincident(std::size_t n, Point p) {
  return Configuration(std::vector<Point>(n, p));
}

Eigen::VectorXd Configuration::interleaved() const {
  Eigen::VectorXd z(static_cast<Eigen::Index>(2 * size()));
  for (std::size_t i = 0; i < size(); ++i) {
    z(static_cast<Eigen::Index>(2 * i)) = positions_[i].x;
    z(static_cast<Eigen::Index>(2 * i + 1)) = positions_[i].y;
  }
  return z;
}

Eigen::VectorXd Configuration::stacked() const {
  const auto n = static_cast<Eigen::Index>(size());
  Eigen::VectorXd z(2 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    z(i) = positions_[static_cast<std::size_t>(i)].x;
    z(n + i) = positions_[static_cast<std::size_t>(i)].y;
  }
  return z;
}

Point Configuration::centroid() const {
  Point c;
  for (const Point& p : positions_) {
    c.x += p.x;
    c.y += p.y;
  }
  const auto n = static_cast<double>(size());
  return {c.x / n, c.y / n};
}

double Configuration::distance(std::size_t i, std::size_t j) const {
  return std::hypot(positions_[i].x - positions_[j].x,
                    positions_[i].y - positions_[j].y);
}

double Configuration::diameter() const {
  double d = 0.0;
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = i + 1; j < size(); ++j) d = std::max(d, distance(i, j));
  }
  return d;
}

Configuration random_cloud(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  const auto draw = [&gen] {
    const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    return 2.0 * u - 1.0;
  };
  std::vector<Point> p(n);
  for (Point& q : p) {
    q.x = draw();
    q.y = draw();
  }
  return Configuration(std::move(p));
}

}  // namespace swarm
