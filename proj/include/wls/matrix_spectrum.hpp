#pragma once

#include <Eigen/Core>

#include <vector>

namespace wls {

using Index = Eigen::Index;

/// The regression design: n samples (rows) by p predictors (columns).
///
/// `column_means` is populated by center_columns() and holds the means that
/// were subtracted; a design built with make_design() is left uncentered.
struct DesignMatrix {
  Eigen::MatrixXd values;
  Eigen::VectorXd column_means;
  bool centered = false;

  Index n() const noexcept { return values.rows(); }
  Index p() const noexcept { return values.cols(); }
};

/// Validates a raw matrix (n >= 2, p >= 1, finite) without centering it.
DesignMatrix make_design(Eigen::MatrixXd raw);

/// Subtracts each column's mean. Throws InvalidInput on non-finite entries
/// and TooFewSamples when n < 2.
DesignMatrix center_columns(const Eigen::MatrixXd& raw);

/// Thin SVD factors X = U diag(s) V^T of a centered design.
///
/// Holds exactly the k requested components. Trailing singular values may be
/// numerically zero; numerical_rank() counts the ones above
/// kRankTolerance * s[0].
struct SpectralDecomposition {
  Eigen::MatrixXd left;
  Eigen::VectorXd singular_values;
  Eigen::MatrixXd right;

  Index rank() const noexcept { return singular_values.size(); }
  Index numerical_rank() const noexcept;
};

/// Singular values below this fraction of the largest one count as zero.
inline constexpr double kRankTolerance = 1e-12;

/// Computes the leading k singular triplets (1 <= k <= min(n, p)).
///
/// Each singular pair is sign-normalised so that the largest-magnitude entry
/// of every column of V is positive, which makes the output deterministic.
SpectralDecomposition thin_svd(const DesignMatrix& x, Index k);

/// theta_i = s_i^2 / s_1^2 + 1 for the singular values above the rank
/// tolerance. Throws InvalidSpectrum for empty, non-positive, non-finite or
/// increasing input.
Eigen::VectorXd theta_sequence(const Eigen::VectorXd& singular_values);

enum class SpikeMode { Auto, Full, Fixed };

struct SpikeOptions {
  SpikeMode mode = SpikeMode::Auto;
  double c_n1 = 0.002;
  Index fixed_d = 0;  // used when mode == Fixed
};

/// Outcome of the spiked-eigenvalue count selection.
///
/// `criterion_trace[r - 1]` is D(r) and `loss_trace[r - 1]` its loss part,
/// for r = 1..min(n, p).
struct SpikeSelection {
  Index d_hat = 0;
  std::vector<double> criterion_trace;
  std::vector<double> loss_trace;
  SpikeMode mode = SpikeMode::Auto;
};

/// BIC-type choice of the number of spiked eigenvalues:
///
///   D(r) = sum_{i>r} (theta_i - 1 - log theta_i) + c_n1 * r / sqrt(n)
///
/// minimised over r = 1..min(n, p); ties resolve to the smallest r. Entries
/// missing from `theta` (numerically zero singular values) contribute no loss.
SpikeSelection bic_spike_count(const Eigen::VectorXd& theta, Index n, Index p,
                               const SpikeOptions& options);

}  // namespace wls
