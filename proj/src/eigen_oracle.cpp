#include "swarm/eigen_oracle.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>

namespace swarm {

const EigenCluster* GeneralSpectrum::cluster_near(std::complex<double> z) const {
  const EigenCluster* best = nullptr;
  double best_d = cluster_radius();
  for (const EigenCluster& c : clusters) {
    const double d = std::abs(c.value - z);
    if (d <= best_d) {
      best_d = d;
      best = &c;
    }
  }
  return best;
}

std::size_t geometric_multiplicity(const Eigen::MatrixXd& w,
                                   std::complex<double> lambda, double scale) {
  const Eigen::Index n = w.rows();
  Eigen::MatrixXcd shifted = w.cast<std::complex<double>>();
  shifted.diagonal().array() -= lambda;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(shifted);
  const double tol = 1e-10 * scale;
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::abs(qr.matrixQR()(i, i)) > tol) ++rank;
  }
  return static_cast<std::size_t>(n) - rank;
}

GeneralSpectrum eig(const WeightMatrix& w) {
  const Eigen::Index n = w.entries.rows();
  if (n == 0 || static_cast<std::size_t>(n) > kMaxOracleDimension) {
    throw std::invalid_argument("eigen oracle supports 1 <= N <= 256");
  }
  if (!w.entries.allFinite()) {
    throw std::invalid_argument("weight matrix has non-finite entries");
  }

  GeneralSpectrum out;
  const double norm = w.entries.norm();
  out.scale = norm > 0.0 ? norm : 1.0;

  Eigen::EigenSolver<Eigen::MatrixXd> solver;
  solver.setMaxIterations(kQrSweepsPerRow * static_cast<int>(n));
  solver.compute(w.entries, true);
  if (solver.info() != Eigen::Success) throw EigenNoConvergence();

  out.eigenvectors = solver.eigenvectors();
  const Eigen::VectorXcd values = solver.eigenvalues();
  out.eigenvalues.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) {
    std::complex<double> z = values(k);
    if (std::abs(z.imag()) < 1e-10 * (1.0 + std::abs(z))) {
      z = {z.real(), 0.0};
    } else {
      out.all_real = false;
    }
    out.eigenvalues.push_back(z);
  }

  // Single-linkage clustering within the cluster radius.
  const double radius = out.cluster_radius();
  std::vector<int> label(out.eigenvalues.size(), -1);
  int next = 0;
  for (std::size_t s = 0; s < out.eigenvalues.size(); ++s) {
    if (label[s] >= 0) continue;
    label[s] = next;
    std::vector<std::size_t> stack{s};
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      for (std::size_t v = 0; v < out.eigenvalues.size(); ++v) {
        if (label[v] < 0 &&
            std::abs(out.eigenvalues[u] - out.eigenvalues[v]) <= radius) {
          label[v] = next;
          stack.push_back(v);
        }
      }
    }
    ++next;
  }
  out.clusters.resize(static_cast<std::size_t>(next));
  for (std::size_t s = 0; s < out.eigenvalues.size(); ++s) {
    EigenCluster& c = out.clusters[static_cast<std::size_t>(label[s])];
    c.value += out.eigenvalues[s];
    ++c.algebraic;
  }
  for (EigenCluster& c : out.clusters) {
    c.value /= static_cast<double>(c.algebraic);
    if (std::abs(c.value.imag()) < 1e-10 * (1.0 + std::abs(c.value))) {
      c.value = {c.value.real(), 0.0};
    }
    c.geometric = std::min(c.algebraic,
                           geometric_multiplicity(w.entries, c.value, out.scale));
    if (c.geometric < c.algebraic) out.defective = true;
  }
  return out;
}

bool is_non_defective_real(const GeneralSpectrum& spec) {
  return spec.all_real && !spec.defective;
}

bool is_non_defective_real(const WeightMatrix& w) {
  return is_non_defective_real(eig(w));
}

double multiset_distance(std::span<const std::complex<double>> a,
                         std::span<const std::complex<double>> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  std::vector<bool> used(b.size(), false);
  double worst = 0.0;
  for (const auto& z : a) {
    std::size_t pick = b.size();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (used[k]) continue;
      const double d = std::abs(z - b[k]);
      if (d < best) {
        best = d;
        pick = k;
      }
    }
    used[pick] = true;
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace swarm
