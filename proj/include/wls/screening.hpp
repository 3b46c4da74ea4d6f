#pragma once

#include "wls/matrix_spectrum.hpp"
#include "wls/slicing.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace wls {

/// Row h of `means` is the average of the rows of U that fall into slice h.
struct SliceMeans {
  Eigen::MatrixXd means;
  std::vector<Index> counts;
};

SliceMeans slice_means(const Eigen::MatrixXd& u, const SlicingScheme& slices);

/// W = sum_h (n_h / n) ubar_h^T ubar_h, a d x d PSD matrix.
struct WeightMatrix {
  Eigen::MatrixXd values;

  Index d() const noexcept { return values.rows(); }
};

WeightMatrix weight_matrix(const SliceMeans& means, Index n);

/// Weighted leverage scores omega_j = V_(j) W V_(j)^T, one per row of V.
/// Rows are processed in parallel blocks; see reference::wls_scores for the
/// serial definition.
Eigen::VectorXd wls_scores(const Eigen::MatrixXd& v, const WeightMatrix& w);

/// Predictor indices ordered by descending score, ties by ascending index.
std::vector<Index> rank_descending(const Eigen::VectorXd& scores);

struct ModelSize {
  Index p0_hat = 0;
  std::vector<double> g_trace;  // g_trace[r - 1] = G(r)
};

/// Scores below this fraction of the largest one are left out of the G(r)
/// search.
inline constexpr double kZeroScoreTolerance = 1e-12;

/// BIC-type model size:
///
///   G(r) = -log(sum_{j<=r} omega_(j)) + r (log n + c_n2 log p) / max(n, p)
///
/// over r = 1..r_max, where r_max counts the scores above the zero threshold
/// (capped at min(n, p)). Ties resolve to the smallest r.
ModelSize bic_model_size(std::span<const double> sorted_scores, Index n,
                         Index p, double c_n2);

struct ScreenConfig {
  std::optional<Index> slices;  // default_slice_count(n) when unset
  double c_n1 = 0.002;
  double c_n2 = 1.0;
  SpikeMode d_mode = SpikeMode::Auto;
  Index fixed_d = 0;
  std::optional<Index> top_k;  // bypasses G(r) when set
  bool center = true;          // center an uncentered design instead of failing
};

struct ScreeningResult {
  Eigen::VectorXd scores;
  std::vector<Index> ranking;
  // Number of singular pairs the scores were built from: the selected spike
  // count, capped at the numerical rank of the design.
  Index d_hat = 0;
  SpikeSelection spikes;
  std::vector<double> g_trace;
  std::vector<Index> selected;
  Index p0_hat = 0;
  Index slice_count = 0;
  std::vector<std::string> warnings;
};

/// Full weighted-leverage-score screen of one dataset.
ScreeningResult screen(const DesignMatrix& x, const ResponseVector& y,
                       const ScreenConfig& config = {});

}  // namespace wls
