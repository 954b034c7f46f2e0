#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace swarm {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

/// Positions of N agents in the plane.
///
/// Two flat layouts are used: interleaved Z = (x_0, y_0, ..., x_{N-1},
/// y_{N-1}) and stacked Z~ = (x_0, ..., x_{N-1}, y_0, ..., y_{N-1}).
/// Conversions between them are pure permutations.
class Configuration {
 public:
  Configuration() = default;
  explicit Configuration(std::vector<Point> positions);

  static Configuration from_interleaved(const Eigen::VectorXd& z);
  static Configuration from_stacked(const Eigen::VectorXd& z);
  /// Every agent at `p`.
  static Configuration coincident(std::size_t n, Point p);

  std::size_t size() const { return positions_.size(); }
  const std::vector<Point>& positions() const { return positions_; }
  const Point& operator[](std::size_t i) const { return positions_[i]; }

  Eigen::VectorXd interleaved() const;
  Eigen::VectorXd stacked() const;

  Point centroid() const;
  double distance(std::size_t i, std::size_t j) const;
  /// Largest pairwise distance.
  double diameter() const;

 private:
  std::vector<Point> positions_;
};

/// Uniform cloud on [-1, 1]^2 from a seeded mt19937_64. Each coordinate is
/// 2u - 1 with u = (draw >> 11) * 2^-53, so clouds are identical across
/// standard library implementations.
Configuration random_cloud(std::size_t n, std::uint64_t seed);

}  // namespace swarm
