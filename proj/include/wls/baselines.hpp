#pragma once

#include "wls/matrix_spectrum.hpp"
#include "wls/slicing.hpp"

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wls {

enum class BaselineMethod { Sis, DcSis, Sirs };

std::string_view to_string(BaselineMethod method) noexcept;

/// Per-predictor marginal statistics of a comparison screener, with the
/// floor(n / log n) cutoff.
struct BaselineScores {
  BaselineMethod method = BaselineMethod::Sis;
  Eigen::VectorXd scores;
  std::vector<Index> ranking;
  Index cutoff = 0;
  std::vector<std::string> warnings;
};

/// floor(n / ln n) clamped to [1, p].
Index cutoff_size(Index n, Index p);

/// The cutoff_size(n, p) best-ranked predictors (ties by ascending index).
std::vector<Index> cutoff_rank(const Eigen::VectorXd& scores, Index n, Index p);

/// |Pearson correlation(x_j, y)|. Zero-variance columns score 0.
BaselineScores sis_scores(const DesignMatrix& x, const ResponseVector& y);

/// Biased (V-statistic) sample distance correlation of (x_j, y), in [0, 1].
BaselineScores dcor_scores(const DesignMatrix& x, const ResponseVector& y);

/// SIRS: n^-1 sum_k [ n^-1 sum_i xs_ij 1(y_i < y_k) ]^2 with xs_j the
/// standardised column.
BaselineScores sirs_scores(const DesignMatrix& x, const ResponseVector& y);

/// Distance correlation of two univariate samples in O(n^2) time and O(n)
/// memory.
double distance_correlation(std::span<const double> a, std::span<const double> b);

}  // namespace wls
