#include "swarm/spectral.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace swarm {

std::complex<double> unit_root(std::size_t m, std::size_t n) {
  m %= n;
  if ((4 * m) % n == 0) {
    switch ((4 * m) / n) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(m) /
                       static_cast<double>(n);
  return {std::cos(angle), std::sin(angle)};
}

std::vector<std::complex<double>> circulant_eigenvalues(
    const CirculantTopology& top) {
  const std::size_t n = top.size();
  std::vector<std::complex<double>> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::complex<double> sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double w = top.weight(i);
      if (w != 0.0) sum += w * unit_root(i * j, n);
    }
    out[j] = sum;
  }
  return out;
}

Eigen::VectorXcd eigenvector(std::size_t n, std::size_t j) {
  if (j >= n) throw std::out_of_range("eigenvector index out of range");
  Eigen::VectorXcd v(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    v(static_cast<Eigen::Index>(i)) = unit_root(i * j, n);
  }
  return v;
}

namespace {

Eigen::VectorXd stack(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  Eigen::VectorXd out(x.size() + y.size());
  out << x, y;
  return out;
}

// Modified Gram-Schmidt with one re-orthogonalization pass. Candidates whose
// residual falls below `drop` relative to their own norm are discarded.
Eigen::MatrixXd orthonormalize(const std::vector<Eigen::VectorXd>& candidates,
                               double drop) {
  std::vector<Eigen::VectorXd> kept;
  for (const Eigen::VectorXd& c : candidates) {
    const double scale = c.norm();
    if (scale == 0.0) continue;
    Eigen::VectorXd r = c;
    for (int pass = 0; pass < 2; ++pass) {
      for (const Eigen::VectorXd& q : kept) r -= q.dot(r) * q;
    }
    const double rn = r.norm();
    if (rn <= drop * scale) continue;
    kept.push_back(r / rn);
  }
  Eigen::MatrixXd basis(candidates.front().size(),
                        static_cast<Eigen::Index>(kept.size()));
  for (std::size_t k = 0; k < kept.size(); ++k) {
    basis.col(static_cast<Eigen::Index>(k)) = kept[k];
  }
  return basis;
}

}  // namespace

Subspace subspace_basis(std::size_t n, std::size_t j,
                        std::complex<double> lambda) {
  if (j > n / 2) throw std::out_of_range("subspace index out of range");
  const Eigen::VectorXcd v = eigenvector(n, j);
  const Eigen::VectorXd re = v.real();
  const Eigen::VectorXd im = v.imag();

  Subspace sub;
  sub.index = j;
  sub.basis = orthonormalize({stack(re, im), stack(-im, re), stack(im, re),
                              stack(re, -im)},
                             1e-10);
  sub.dim = static_cast<std::size_t>(sub.basis.cols());
  const std::size_t expected = (j == 0 || 2 * j == n) ? 2 : 4;
  if (sub.dim != expected) {
    throw std::logic_error("invariant subspace has unexpected dimension");
  }
  sub.eigenvalue = lambda;
  sub.rate = lambda.real();
  sub.rotation = lambda.imag();
  sub.block << lambda.real(), -lambda.imag(), lambda.imag(), lambda.real();
  sub.generating = stack(re, im);
  return sub;
}

SpectralData closed_form_spectrum(const CirculantTopology& top) {
  const std::size_t n = top.size();
  const auto lambdas = circulant_eigenvalues(top);

  SpectralData spec;
  spec.n = n;
  spec.pairs.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    spec.pairs.push_back({j, lambdas[j], eigenvector(n, j)});
  }
  for (std::size_t j = 0; j <= n / 2; ++j) {
    spec.subspaces.push_back(subspace_basis(n, j, lambdas[j]));
  }

  // Strong stable: a unique strict minimum of Re(lambda_j) over j >= 1.
  std::optional<std::size_t> best;
  bool tied = false;
  for (std::size_t j = 1; j < spec.subspaces.size(); ++j) {
    const double r = spec.subspaces[j].rate;
    if (!best) {
      best = j;
    } else if (r < spec.subspaces[*best].rate - kRateTieTolerance) {
      best = j;
      tied = false;
    } else if (std::abs(r - spec.subspaces[*best].rate) <= kRateTieTolerance) {
      tied = true;
    }
  }
  if (best && !tied) spec.strong_stable = best;
  return spec;
}

std::vector<std::pair<std::size_t, double>> convergence_rates(
    const SpectralData& spec) {
  std::vector<std::pair<std::size_t, double>> out;
  out.reserve(spec.subspaces.size());
  for (const Subspace& s : spec.subspaces) out.emplace_back(s.index, s.rate);
  return out;
}

Eigen::MatrixXd real_block(std::complex<double> lambda) {
  if (std::abs(lambda.imag()) < kRealEigenvalueTolerance) {
    return Eigen::MatrixXd::Constant(1, 1, lambda.real());
  }
  Eigen::MatrixXd m(2, 2);
  m << lambda.real(), -lambda.imag(), lambda.imag(), lambda.real();
  return m;
}

Eigen::MatrixXd assembled_basis(const SpectralData& spec) {
  const auto rows = static_cast<Eigen::Index>(2 * spec.n);
  Eigen::MatrixXd out(rows, rows);
  Eigen::Index col = 0;
  for (const Subspace& s : spec.subspaces) {
    out.middleCols(col, s.basis.cols()) = s.basis;
    col += s.basis.cols();
  }
  if (col != rows) throw std::logic_error("subspace dimensions do not sum to 2N");
  return out;
}

}  // namespace swarm
