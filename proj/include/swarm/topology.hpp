#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace swarm {

/// Entries with |w_s| at or below this count as absent edges.
inline constexpr double kJumpTolerance = 1e-15;
/// Row-sum tolerance for the consistency condition.
inline constexpr double kConsistencyTolerance = 1e-12;

/// Directed interaction edge: agent `to` uses the position of agent `from`.
struct Edge {
  std::size_t from;
  std::size_t to;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Circulant interaction topology generated by a weight vector
/// w = (w_0, ..., w_{N-1}). Agent i listens to agent i+s mod N for every
/// jump s, i.e. every s >= 1 with w_s != 0.
class CirculantTopology {
 public:
  /// Throws std::invalid_argument("too few agents") when w has fewer than
  /// two entries.
  explicit CirculantTopology(std::vector<double> w, std::string name = {});

  std::size_t size() const { return w_.size(); }
  std::span<const double> weights() const { return w_; }
  double weight(std::size_t s) const { return w_[s % w_.size()]; }
  double self_weight() const { return w_.front(); }
  const std::vector<std::size_t>& jumps() const { return jumps_; }
  const std::string& name() const { return name_; }

  bool has_negative_weights() const;
  /// w_{N-i} == w_i for i = 1..N-1.
  bool is_symmetric() const;
  double weight_sum() const;

  /// Directed edges (i+s mod N, i) for every agent i and jump s.
  std::vector<Edge> edges() const;

 private:
  std::vector<double> w_;
  std::vector<std::size_t> jumps_;
  std::string name_;
};

CirculantTopology make_circulant(std::vector<double> w);

enum class MatrixOrigin { circulant, general };

/// Dense N x N weight matrix, either materialized from a circulant topology
/// or supplied directly.
struct WeightMatrix {
  Eigen::MatrixXd entries;
  MatrixOrigin origin = MatrixOrigin::general;

  std::size_t size() const { return static_cast<std::size_t>(entries.rows()); }
  Eigen::VectorXd row_sums() const { return entries.rowwise().sum(); }
  bool is_symmetric() const;
  bool has_negative_entries() const;
};

/// Wraps an arbitrary square matrix. Throws std::invalid_argument for empty,
/// non-square or non-finite input.
WeightMatrix general_matrix(Eigen::MatrixXd entries);

/// W_{i,j} = w_{(j-i) mod N}.
WeightMatrix dense_matrix(const CirculantTopology& top);

/// Recovers the generating vector (first row) of a circulant-origin matrix.
std::vector<double> generating_vector(const WeightMatrix& w);

/// gcd(N, s_1, ..., s_k) == 1.
bool is_connected(const CirculantTopology& top);
/// Undirected breadth-first reachability over the explicit edge set.
bool is_connected_bfs(const CirculantTopology& top);

/// Every row sums to one within kConsistencyTolerance.
bool is_consistent(const WeightMatrix& w);

enum class Layout {
  interleaved,  ///< Z = (x_0, y_0, x_1, y_1, ...): W (x) I_2
  stacked,      ///< Z~ = (X, Y): I_2 (x) W
};

struct LiftedMatrix {
  Eigen::MatrixXd entries;
  Layout layout;
};

LiftedMatrix lift(const WeightMatrix& w, Layout layout);

/// Off-diagonal nonzero pattern of a general matrix, as directed edges
/// (j, i) for w_{i,j} != 0.
std::vector<Edge> matrix_edges(const WeightMatrix& w);

/// Collapses directed edges to unordered agent pairs, first occurrence order,
/// self-loops dropped.
std::vector<Edge> undirected_pairs(std::span<const Edge> edges);

bool weakly_connected(std::size_t n, std::span<const Edge> edges);
bool strongly_connected(std::size_t n, std::span<const Edge> edges);

}  // namespace swarm
