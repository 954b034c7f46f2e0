#include "swarm/topology.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>

namespace swarm {

CirculantTopology::CirculantTopology(std::vector<double> w, std::string name)
    : w_(std::move(w)), name_(std::move(name)) {
  if (w_.size() < 2) throw std::invalid_argument("too few agents");
  for (double v : w_) {
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite weight");
  }
  for (std::size_t s = 1; s < w_.size(); ++s) {
    if (std::abs(w_[s]) > kJumpTolerance) jumps_.push_back(s);
  }
}

bool CirculantTopology::has_negative_weights() const {
  return std::any_of(w_.begin(), w_.end(), [](double v) { return v < 0.0; });
}

bool CirculantTopology::is_symmetric() const {
  const std::size_t n = w_.size();
  for (std::size_t i = 1; i < n; ++i) {
    if (w_[n - i] != w_[i]) return false;
  }
  return true;
}

double CirculantTopology::weight_sum() const {
  return std::accumulate(w_.begin(), w_.end(), 0.0);
}

std::vector<Edge> CirculantTopology::edges() const {
  const std::size_t n = w_.size();
  std::vector<Edge> out;
  out.reserve(n * jumps_.size());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t s : jumps_) out.push_back({(i + s) % n, i});
  }
  return out;
}

CirculantTopology make_circulant(std::vector<double> w) {
  return CirculantTopology(std::move(w));
}

bool WeightMatrix::is_symmetric() const {
  return entries == entries.transpose();
}

bool WeightMatrix::has_negative_entries() const {
  return (entries.array() < 0.0).any();
}

WeightMatrix general_matrix(Eigen::MatrixXd entries) {
  if (entries.rows() == 0 || entries.rows() != entries.cols()) {
    throw std::invalid_argument("weight matrix must be square and non-empty");
  }
  if (!entries.allFinite()) {
    throw std::invalid_argument("weight matrix has non-finite entries");
  }
  return {std::move(entries), MatrixOrigin::general};
}

WeightMatrix dense_matrix(const CirculantTopology& top) {
  const auto n = static_cast<Eigen::Index>(top.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      m(i, j) = top.weight(static_cast<std::size_t>((j - i + n) % n));
    }
  }
  return {std::move(m), MatrixOrigin::circulant};
}

std::vector<double> generating_vector(const WeightMatrix& w) {
  if (w.origin != MatrixOrigin::circulant) {
    throw std::invalid_argument("matrix is not circulant-origin");
  }
  const Eigen::VectorXd row = w.entries.row(0).transpose();
  return {row.data(), row.data() + row.size()};
}

bool is_connected(const CirculantTopology& top) {
  std::size_t g = top.size();
  for (std::size_t s : top.jumps()) g = std::gcd(g, s);
  return g == 1;
}

namespace {

bool reachable_from_zero(std::size_t n, std::span<const Edge> edges,
                         bool undirected, bool reverse) {
  std::vector<std::vector<std::size_t>> adj(n);
  for (const Edge& e : edges) {
    if (undirected || !reverse) adj[e.from].push_back(e.to);
    if (undirected || reverse) adj[e.to].push_back(e.from);
  }
  std::vector<bool> seen(n, false);
  std::queue<std::size_t> queue;
  seen[0] = true;
  queue.push(0);
  std::size_t count = 1;
  while (!queue.empty()) {
    const std::size_t u = queue.front();
    queue.pop();
    for (std::size_t v : adj[u]) {
      if (!seen[v]) {
        seen[v] = true;
        ++count;
        queue.push(v);
      }
    }
  }
  return count == n;
}

}  // namespace

bool is_connected_bfs(const CirculantTopology& top) {
  const auto edges = top.edges();
  return reachable_from_zero(top.size(), edges, true, false);
}

bool is_consistent(const WeightMatrix& w) {
  const Eigen::VectorXd sums = w.row_sums();
  return ((sums.array() - 1.0).abs() <= kConsistencyTolerance).all();
}

LiftedMatrix lift(const WeightMatrix& w, Layout layout) {
  const Eigen::Index n = w.entries.rows();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  if (layout == Layout::stacked) {
    out.topLeftCorner(n, n) = w.entries;
    out.bottomRightCorner(n, n) = w.entries;
  } else {
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        out(2 * i, 2 * j) = w.entries(i, j);
        out(2 * i + 1, 2 * j + 1) = w.entries(i, j);
      }
    }
  }
  return {std::move(out), layout};
}

std::vector<Edge> matrix_edges(const WeightMatrix& w) {
  const std::size_t n = w.size();
  std::vector<Edge> out;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && std::abs(w.entries(i, j)) > kJumpTolerance) {
        out.push_back({j, i});
      }
    }
  }
  return out;
}

std::vector<Edge> undirected_pairs(std::span<const Edge> edges) {
  std::set<std::pair<std::size_t, std::size_t>> seen;
  std::vector<Edge> out;
  for (const Edge& e : edges) {
    if (e.from == e.to) continue;
    const auto key = std::minmax(e.from, e.to);
    if (seen.insert(key).second) out.push_back({key.first, key.second});
  }
  return out;
}

// Strong: every vertex reaches 0 and is reached from 0.
bool strongly_connected(std::size_t n, std::span<const Edge> edges) {
  return reachable_from_zero(n, edges, false, false) &&
         reachable_from_zero(n, edges, false, true);
}

bool weakly_connected(std::size_t n, std::span<const Edge> edges) {
  return reachable_from_zero(n, edges, true, false);
}

}  // namespace swarm
