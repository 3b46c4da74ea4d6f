#include "wls/matrix_spectrum.hpp"

#include "wls/error.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <string>

namespace wls {

DesignMatrix make_design(Eigen::MatrixXd raw) {
  if (raw.rows() < 2) {
    throw Error(ErrorKind::TooFewSamples,
                "design needs at least 2 samples, got " +
                    std::to_string(raw.rows()));
  }
  if (raw.cols() < 1) {
    throw Error(ErrorKind::InvalidInput, "design has no predictor columns");
  }
  if (!raw.allFinite()) {
    throw Error(ErrorKind::InvalidInput, "design contains non-finite entries");
  }
  DesignMatrix x;
  x.values = std::move(raw);
  return x;
}

DesignMatrix center_columns(const Eigen::MatrixXd& raw) {
  DesignMatrix x = make_design(raw);
  x.column_means = x.values.colwise().mean().transpose();
  x.values.rowwise() -= x.column_means.transpose();
  x.centered = true;
  return x;
}

Index SpectralDecomposition::numerical_rank() const noexcept {
  if (singular_values.size() == 0 || !(singular_values[0] > 0.0)) {
    return 0;
  }
  const double cut = kRankTolerance * singular_values[0];
  Index r = 0;
  while (r < singular_values.size() && singular_values[r] > cut) {
    ++r;
  }
  return r;
}

SpectralDecomposition thin_svd(const DesignMatrix& x, Index k) {
  if (!x.centered) {
    throw Error(ErrorKind::InvalidInput, "thin_svd expects a centered design");
  }
  const Index max_rank = std::min(x.n(), x.p());
  if (k < 1 || k > max_rank) {
    throw Error(ErrorKind::InvalidRank,
                "requested rank " + std::to_string(k) + " outside [1, " +
                    std::to_string(max_rank) + "]");
  }

  Eigen::BDCSVD<Eigen::MatrixXd> svd(x.values,
                                     Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) {
    throw Error(ErrorKind::NumericalFailure, "SVD did not converge");
  }

  SpectralDecomposition out;
  out.left = svd.matrixU().leftCols(k);
  out.singular_values = svd.singularValues().head(k);
  out.right = svd.matrixV().leftCols(k);
  if (!out.left.allFinite() || !out.right.allFinite() ||
      !out.singular_values.allFinite()) {
    throw Error(ErrorKind::NumericalFailure, "SVD produced non-finite factors");
  }

  for (Index c = 0; c < k; ++c) {
    Index pivot = 0;
    out.right.col(c).cwiseAbs().maxCoeff(&pivot);
    if (out.right(pivot, c) < 0.0) {
      out.right.col(c) *= -1.0;
      out.left.col(c) *= -1.0;
    }
  }
  return out;
}

Eigen::VectorXd theta_sequence(const Eigen::VectorXd& singular_values) {
  if (singular_values.size() == 0) {
    throw Error(ErrorKind::InvalidSpectrum, "empty singular value sequence");
  }
  for (Index i = 0; i < singular_values.size(); ++i) {
    const double s = singular_values[i];
    if (!std::isfinite(s) || s <= 0.0) {
      throw Error(ErrorKind::InvalidSpectrum,
                  "singular value " + std::to_string(i) + " is not positive");
    }
    if (i > 0 && s > singular_values[i - 1]) {
      throw Error(ErrorKind::InvalidSpectrum,
                  "singular values must be nonincreasing");
    }
  }

  const double top = singular_values[0];
  Index kept = 0;
  while (kept < singular_values.size() &&
         singular_values[kept] > kRankTolerance * top) {
    ++kept;
  }
  Eigen::VectorXd theta(kept);
  theta[0] = 2.0;
  for (Index i = 1; i < kept; ++i) {
    const double ratio = singular_values[i] / top;
    theta[i] = ratio * ratio + 1.0;
  }
  return theta;
}

SpikeSelection bic_spike_count(const Eigen::VectorXd& theta, Index n, Index p,
                               const SpikeOptions& options) {
  if (theta.size() == 0) {
    throw Error(ErrorKind::InvalidInput, "empty theta sequence");
  }
  if (!(options.c_n1 > 0.0)) {
    throw Error(ErrorKind::InvalidInput, "c_n1 must be positive");
  }
  const Index m = std::min(n, p);
  if (theta.size() > m) {
    throw Error(ErrorKind::InvalidInput,
                "theta has more entries than min(n, p)");
  }

  SpikeSelection sel;
  sel.mode = options.mode;
  sel.loss_trace.assign(static_cast<std::size_t>(m), 0.0);
  sel.criterion_trace.assign(static_cast<std::size_t>(m), 0.0);

  // loss(r) = sum_{i=r+1}^{m} (theta_i - 1 - log theta_i), accumulated from
  // the tail. Each summand is clamped at zero so the suffix sum is monotone.
  double suffix = 0.0;
  for (Index r = m; r >= 1; --r) {
    sel.loss_trace[static_cast<std::size_t>(r - 1)] = suffix;
    if (r - 1 < theta.size()) {
      const double excess = theta[r - 1] - 1.0;
      suffix += std::max(0.0, excess - std::log1p(excess));
    }
  }
  const double step = options.c_n1 / std::sqrt(static_cast<double>(n));
  for (Index r = 1; r <= m; ++r) {
    const auto idx = static_cast<std::size_t>(r - 1);
    sel.criterion_trace[idx] = sel.loss_trace[idx] + step * static_cast<double>(r);
  }

  switch (options.mode) {
    case SpikeMode::Auto: {
      std::size_t best = 0;
      for (std::size_t i = 1; i < sel.criterion_trace.size(); ++i) {
        if (sel.criterion_trace[i] < sel.criterion_trace[best]) best = i;
      }
      sel.d_hat = static_cast<Index>(best) + 1;
      break;
    }
    case SpikeMode::Full:
      sel.d_hat = m;
      break;
    case SpikeMode::Fixed:
      if (options.fixed_d < 1 || options.fixed_d > m) {
        throw Error(ErrorKind::InvalidRank,
                    "fixed spike count " + std::to_string(options.fixed_d) +
                        " outside [1, " + std::to_string(m) + "]");
      }
      sel.d_hat = options.fixed_d;
      break;
  }
  return sel;
}

}  // namespace wls
