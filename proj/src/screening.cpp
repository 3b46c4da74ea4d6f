#include "wls/screening.hpp"

#include "wls/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace wls {

SliceMeans slice_means(const Eigen::MatrixXd& u, const SlicingScheme& slices) {
  const Index n = u.rows();
  if (static_cast<Index>(slices.assignment.size()) != n) {
    throw Error(ErrorKind::InvalidInput,
                "slice assignment length does not match U's row count");
  }
  if (u.cols() < 1 || slices.h < 1) {
    throw Error(ErrorKind::InvalidInput, "slice_means needs d >= 1 and h >= 1");
  }

  SliceMeans out;
  out.means = Eigen::MatrixXd::Zero(slices.h, u.cols());
  out.counts.assign(static_cast<std::size_t>(slices.h), 0);
  for (Index i = 0; i < n; ++i) {
    const Index slot = slices.assignment[static_cast<std::size_t>(i)];
    if (slot < 0 || slot >= slices.h) {
      throw Error(ErrorKind::InvalidInput, "slice id out of range");
    }
    out.means.row(slot) += u.row(i);
    ++out.counts[static_cast<std::size_t>(slot)];
  }
  for (Index s = 0; s < slices.h; ++s) {
    const Index count = out.counts[static_cast<std::size_t>(s)];
    if (count == 0) {
      throw Error(ErrorKind::InvalidInput, "empty slice " + std::to_string(s));
    }
    out.means.row(s) /= static_cast<double>(count);
  }
  return out;
}

WeightMatrix weight_matrix(const SliceMeans& means, Index n) {
  if (static_cast<Index>(means.counts.size()) != means.means.rows()) {
    throw Error(ErrorKind::InvalidInput, "slice counts do not match slice means");
  }
  const Index total = std::accumulate(means.counts.begin(), means.counts.end(), Index{0});
  if (total != n || n < 1) {
    throw Error(ErrorKind::InvalidInput, "slice counts must sum to n");
  }

  // Scale each slice mean by sqrt(n_h / n) so W = M^T M stays exactly
  // symmetric and PSD.
  Eigen::MatrixXd scaled = means.means;
  for (Index s = 0; s < scaled.rows(); ++s) {
    scaled.row(s) *= std::sqrt(static_cast<double>(means.counts[static_cast<std::size_t>(s)]) /
                               static_cast<double>(n));
  }
  WeightMatrix w;
  w.values = Eigen::MatrixXd::Zero(scaled.cols(), scaled.cols());
  w.values.selfadjointView<Eigen::Lower>().rankUpdate(scaled.transpose());
  w.values.triangularView<Eigen::StrictlyUpper>() = w.values.transpose();
  return w;
}

Eigen::VectorXd wls_scores(const Eigen::MatrixXd& v, const WeightMatrix& w) {
  if (v.cols() != w.d() || w.values.cols() != w.d()) {
    throw Error(ErrorKind::InvalidInput,
                "V has " + std::to_string(v.cols()) + " columns but W is " +
                    std::to_string(w.d()) + " x " + std::to_string(w.values.cols()));
  }
  const Index p = v.rows();
  constexpr Index kBlock = 64;
  const Index blocks = (p + kBlock - 1) / kBlock;
  Eigen::VectorXd scores(p);

#pragma omp parallel for schedule(static)
  for (Index b = 0; b < blocks; ++b) {
    const Index start = b * kBlock;
    const Index len = std::min(kBlock, p - start);
    const Eigen::MatrixXd vw = v.middleRows(start, len) * w.values;
    scores.segment(start, len) =
        vw.cwiseProduct(v.middleRows(start, len)).rowwise().sum();
  }
  return scores;
}

std::vector<Index> rank_descending(const Eigen::VectorXd& scores) {
  std::vector<Index> order(static_cast<std::size_t>(scores.size()));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return scores[a] > scores[b]; });
  return order;
}

ModelSize bic_model_size(std::span<const double> sorted_scores, Index n,
                         Index p, double c_n2) {
  if (!(c_n2 > 0.0)) {
    throw Error(ErrorKind::InvalidInput, "c_n2 must be positive");
  }
  if (sorted_scores.empty() || !(sorted_scores.front() > 0.0)) {
    throw Error(ErrorKind::DegenerateScores, "no positive scores to select from");
  }
  for (std::size_t j = 1; j < sorted_scores.size(); ++j) {
    if (sorted_scores[j] > sorted_scores[j - 1]) {
      throw Error(ErrorKind::InvalidInput, "scores must be sorted descending");
    }
  }

  const double cut = kZeroScoreTolerance * sorted_scores.front();
  std::size_t r_max = 0;
  while (r_max < sorted_scores.size() && sorted_scores[r_max] > cut) ++r_max;
  r_max = std::min(r_max, static_cast<std::size_t>(std::min(n, p)));

  const double penalty = (std::log(static_cast<double>(n)) +
                          c_n2 * std::log(static_cast<double>(p))) /
                         static_cast<double>(std::max(n, p));
  ModelSize out;
  out.g_trace.reserve(r_max);
  double cumulative = 0.0;
  std::size_t best = 0;
  for (std::size_t r = 1; r <= r_max; ++r) {
    cumulative += sorted_scores[r - 1];
    out.g_trace.push_back(-std::log(cumulative) + static_cast<double>(r) * penalty);
    if (out.g_trace.back() < out.g_trace[best]) best = r - 1;
  }
  out.p0_hat = static_cast<Index>(best) + 1;
  return out;
}

ScreeningResult screen(const DesignMatrix& x, const ResponseVector& y,
                       const ScreenConfig& config) {
  DesignMatrix centered;
  const DesignMatrix* design = &x;
  if (!x.centered) {
    if (!config.center) {
      throw Error(ErrorKind::InvalidInput, "design is not centered");
    }
    centered = center_columns(x.values);
    design = &centered;
  }
  const Index n = design->n();
  const Index p = design->p();
  if (y.n() != n) {
    throw Error(ErrorKind::InvalidInput,
                "response has " + std::to_string(y.n()) + " entries, design has " +
                    std::to_string(n) + " rows");
  }

  ScreeningResult result;
  const SlicingScheme slices =
      make_slices(y, config.slices.value_or(default_slice_count(n)));
  result.slice_count = slices.h;
  result.warnings = slices.warnings;

  const SpectralDecomposition svd = thin_svd(*design, std::min(n, p));
  const Index rank = svd.numerical_rank();
  if (rank == 0) {
    throw Error(ErrorKind::NumericalFailure, "design has no variation");
  }
  const Eigen::VectorXd theta = theta_sequence(svd.singular_values.head(rank));
  result.spikes = bic_spike_count(
      theta, n, p, SpikeOptions{config.d_mode, config.c_n1, config.fixed_d});
  result.d_hat = std::min(result.spikes.d_hat, rank);
  if (config.d_mode == SpikeMode::Fixed && result.d_hat < result.spikes.d_hat) {
    result.warnings.push_back("fixed spike count capped at numerical rank " +
                              std::to_string(rank));
  }

  const Index d = result.d_hat;
  const SliceMeans means = slice_means(svd.left.leftCols(d), slices);
  const WeightMatrix w = weight_matrix(means, n);
  result.scores = wls_scores(svd.right.leftCols(d), w);
  result.ranking = rank_descending(result.scores);

  if (config.top_k) {
    if (*config.top_k < 1) {
      throw Error(ErrorKind::InvalidInput, "top-k must be at least 1");
    }
    result.p0_hat = std::min(*config.top_k, p);
  } else {
    std::vector<double> sorted(static_cast<std::size_t>(p));
    for (Index j = 0; j < p; ++j) {
      sorted[static_cast<std::size_t>(j)] = result.scores[result.ranking[static_cast<std::size_t>(j)]];
    }
    ModelSize size = bic_model_size(sorted, n, p, config.c_n2);
    result.p0_hat = size.p0_hat;
    result.g_trace = std::move(size.g_trace);
  }
  result.selected.assign(result.ranking.begin(),
                         result.ranking.begin() + result.p0_hat);
  return result;
}

}  // namespace wls
