#pragma once

#include "wls/error.hpp"
#include "wls/matrix_spectrum.hpp"
#include "wls/random.hpp"
#include "wls/slicing.hpp"

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include <cmath>
#include <cstdint>
#include <vector>

namespace wls::test {

// Runs f and returns the kind of the wls::Error it throws.
template <typename F>
ErrorKind error_kind(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected wls::Error";
  return ErrorKind::UsageError;
}

inline Eigen::MatrixXd gaussian(Index rows, Index cols, std::uint64_t seed,
                                std::uint64_t stream = 0) {
  RandomStream rng(seed, stream);
  Eigen::MatrixXd m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) m(i, j) = rng.normal();
  }
  return m;
}

inline std::vector<double> gaussian_vector(Index n, std::uint64_t seed, std::uint64_t stream = 0) {
  RandomStream rng(seed, stream);
  std::vector<double> v(static_cast<std::size_t>(n));
  for (auto& x : v) x = rng.normal();
  return v;
}

inline std::vector<double> column(const Eigen::MatrixXd& m, Index j) {
  return {m.col(j).data(), m.col(j).data() + m.rows()};
}

// Per-slice averages by an explicit loop over samples.
inline Eigen::MatrixXd naive_slice_means(const Eigen::MatrixXd& u, const SlicingScheme& s) {
  Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(s.h, u.cols());
  std::vector<double> counts(static_cast<std::size_t>(s.h), 0.0);
  for (Index i = 0; i < u.rows(); ++i) {
    const Index slice = s.assignment[static_cast<std::size_t>(i)];
    counts[static_cast<std::size_t>(slice)] += 1.0;
    for (Index k = 0; k < u.cols(); ++k) sums(slice, k) += u(i, k);
  }
  for (Index l = 0; l < s.h; ++l) sums.row(l) /= counts[static_cast<std::size_t>(l)];
  return sums;
}

// W accumulated one rank-1 term at a time.
inline Eigen::MatrixXd rank_one_weight(const Eigen::MatrixXd& means,
                                       const std::vector<Index>& counts, Index n) {
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(means.cols(), means.cols());
  for (Index l = 0; l < means.rows(); ++l) {
    const double share = static_cast<double>(counts[static_cast<std::size_t>(l)]) /
                         static_cast<double>(n);
    for (Index a = 0; a < means.cols(); ++a) {
      for (Index b = 0; b < means.cols(); ++b) w(a, b) += share * means(l, a) * means(l, b);
    }
  }
  return w;
}

// Diagonal of sum_l (n_l / n) m_l m_l^T, where m_l averages the whitened rows
// (X^T X)^{-1/2} x_i over slice l. The inverse square root comes from a
// symmetric eigendecomposition, so no SVD is involved.
inline Eigen::VectorXd whitened_slice_oracle(const Eigen::MatrixXd& centered,
                                             const SlicingScheme& s) {
  const Eigen::MatrixXd gram = centered.transpose() * centered;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
  const Eigen::MatrixXd inv_sqrt = eig.eigenvectors() *
                                   eig.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                                   eig.eigenvectors().transpose();
  const Eigen::MatrixXd z = centered * inv_sqrt;  // rows are whitened samples
  const Eigen::MatrixXd m = naive_slice_means(z, s);
  const auto n = centered.rows();
  Eigen::MatrixXd total = Eigen::MatrixXd::Zero(centered.cols(), centered.cols());
  for (Index l = 0; l < s.h; ++l) {
    const double share = static_cast<double>(s.counts[static_cast<std::size_t>(l)]) /
                         static_cast<double>(n);
    total += share * m.row(l).transpose() * m.row(l);
  }
  return total.diagonal();
}

// D(r) straight from the definition, for r = 1..m.
inline std::vector<double> spike_criterion(const std::vector<double>& theta, Index n, Index m,
                                           double c_n1) {
  std::vector<double> d(static_cast<std::size_t>(m));
  for (Index r = 1; r <= m; ++r) {
    double loss = 0.0;
    for (Index i = r; i < static_cast<Index>(theta.size()); ++i) {
      const double t = theta[static_cast<std::size_t>(i)];
      loss -= std::log(t) + 1.0 - t;
    }
    d[static_cast<std::size_t>(r - 1)] =
        loss + c_n1 * static_cast<double>(r) / std::sqrt(static_cast<double>(n));
  }
  return d;
}

inline std::size_t argmin_first(const std::vector<double>& v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] < v[best]) best = i;
  }
  return best;
}

}  // namespace wls::test
