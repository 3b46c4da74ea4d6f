#include "wls/baselines.hpp"

#include "wls/error.hpp"
#include "wls/screening.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace wls {

std::string_view to_string(BaselineMethod method) noexcept {
  switch (method) {
    case BaselineMethod::Sis: return "sis";
    case BaselineMethod::DcSis: return "dcsis";
    case BaselineMethod::Sirs: return "sirs";
  }
  return "unknown";
}

Index cutoff_size(Index n, Index p) {
  const auto raw = static_cast<Index>(
      std::floor(static_cast<double>(n) / std::log(static_cast<double>(n))));
  return std::clamp<Index>(raw, 1, p);
}

std::vector<Index> cutoff_rank(const Eigen::VectorXd& scores, Index n, Index p) {
  std::vector<Index> order = rank_descending(scores);
  order.resize(static_cast<std::size_t>(cutoff_size(n, p)));
  return order;
}

namespace {

void check_inputs(const DesignMatrix& x, const ResponseVector& y) {
  if (y.n() != x.n()) {
    throw Error(ErrorKind::InvalidInput, "response length does not match design rows");
  }
  if (x.n() < 2) {
    throw Error(ErrorKind::TooFewSamples, "need at least 2 samples");
  }
}

BaselineScores finish(BaselineMethod method, Eigen::VectorXd scores, Index n,
                      std::vector<Index> flat_columns) {
  BaselineScores out;
  out.method = method;
  out.ranking = rank_descending(scores);
  out.cutoff = cutoff_size(n, scores.size());
  out.scores = std::move(scores);
  if (!flat_columns.empty()) {
    std::string msg = std::to_string(flat_columns.size()) +
                      " zero-variance column(s) scored 0, first is column " +
                      std::to_string(flat_columns.front());
    out.warnings.push_back(std::move(msg));
  }
  return out;
}

// Row means, grand mean and the double-centred sum of squares of the
// pairwise absolute-distance matrix of a univariate sample.
struct DistanceSummary {
  std::vector<double> row_means;
  double grand_mean = 0.0;
  double centered_sq = 0.0;  // sum_kl A_kl^2
};

DistanceSummary summarize(std::span<const double> a) {
  const auto n = a.size();
  DistanceSummary s;
  s.row_means.assign(n, 0.0);
  double sum_sq = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t l = k + 1; l < n; ++l) {
      const double dist = std::abs(a[k] - a[l]);
      s.row_means[k] += dist;
      s.row_means[l] += dist;
      sum_sq += 2.0 * dist * dist;
    }
  }
  const double dn = static_cast<double>(n);
  double row_sq = 0.0;
  for (double& r : s.row_means) {
    s.grand_mean += r;
    r /= dn;
    row_sq += r * r;
  }
  s.grand_mean /= dn * dn;
  s.centered_sq = sum_sq - 2.0 * dn * row_sq + dn * dn * s.grand_mean * s.grand_mean;
  return s;
}

// sum_kl A_kl B_kl = sum_kl a_kl b_kl - 2 n sum_k ra_k rb_k + n^2 ma mb,
// which needs only the row means of both distance matrices.
double distance_correlation(std::span<const double> a, std::span<const double> b,
                            const DistanceSummary& sb) {
  const auto n = a.size();
  const DistanceSummary sa = summarize(a);
  if (!(sa.centered_sq > 0.0) || !(sb.centered_sq > 0.0)) return 0.0;

  double cross = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t l = k + 1; l < n; ++l) {
      cross += 2.0 * std::abs(a[k] - a[l]) * std::abs(b[k] - b[l]);
    }
  }
  const double dn = static_cast<double>(n);
  double row_cross = 0.0;
  for (std::size_t k = 0; k < n; ++k) row_cross += sa.row_means[k] * sb.row_means[k];
  const double dcov = cross - 2.0 * dn * row_cross + dn * dn * sa.grand_mean * sb.grand_mean;

  const double ratio = dcov / std::sqrt(sa.centered_sq * sb.centered_sq);
  return std::sqrt(std::clamp(ratio, 0.0, 1.0));
}

}  // namespace

double distance_correlation(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorKind::InvalidInput, "distance_correlation needs equal-length samples");
  }
  return distance_correlation(a, b, summarize(b));
}

BaselineScores sis_scores(const DesignMatrix& x, const ResponseVector& y) {
  check_inputs(x, y);
  const Index n = x.n();
  const Index p = x.p();
  const Eigen::Map<const Eigen::VectorXd> yv(y.values.data(), n);
  const Eigen::VectorXd yc = yv.array() - yv.mean();
  const double y_norm = yc.norm();
  if (!(y_norm > 0.0)) {
    throw Error(ErrorKind::DegenerateResponse, "response is constant");
  }

  Eigen::VectorXd scores(p);
  std::vector<char> flat(static_cast<std::size_t>(p), 0);
#pragma omp parallel for schedule(static)
  for (Index j = 0; j < p; ++j) {
    const Eigen::VectorXd xc = x.values.col(j).array() - x.values.col(j).mean();
    const double x_norm = xc.norm();
    if (!(x_norm > 0.0)) {
      scores[j] = 0.0;
      flat[static_cast<std::size_t>(j)] = 1;
      continue;
    }
    scores[j] = std::min(1.0, std::abs(xc.dot(yc)) / (x_norm * y_norm));
  }

  std::vector<Index> flat_columns;
  for (Index j = 0; j < p; ++j) {
    if (flat[static_cast<std::size_t>(j)]) flat_columns.push_back(j);
  }
  return finish(BaselineMethod::Sis, std::move(scores), n, std::move(flat_columns));
}

BaselineScores dcor_scores(const DesignMatrix& x, const ResponseVector& y) {
  check_inputs(x, y);
  const Index n = x.n();
  const Index p = x.p();
  const std::span<const double> yv(y.values);
  const DistanceSummary sy = summarize(yv);

  Eigen::VectorXd scores(p);
#pragma omp parallel for schedule(dynamic, 4)
  for (Index j = 0; j < p; ++j) {
    const std::span<const double> col(x.values.col(j).data(), static_cast<std::size_t>(n));
    scores[j] = distance_correlation(col, yv, sy);
  }
  return finish(BaselineMethod::DcSis, std::move(scores), n, {});
}

BaselineScores sirs_scores(const DesignMatrix& x, const ResponseVector& y) {
  check_inputs(x, y);
  const Index n = x.n();
  const Index p = x.p();
  const auto un = static_cast<std::size_t>(n);

  // Sorting by y turns 1(y_i < y_k) into a prefix of the sorted order; `below`
  // holds, per sample k, how many samples lie strictly below y_k.
  std::vector<Index> order(un);
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    return y.values[static_cast<std::size_t>(a)] < y.values[static_cast<std::size_t>(b)];
  });
  std::vector<std::size_t> below(un);
  for (std::size_t pos = 0; pos < un; ++pos) {
    std::size_t first = pos;
    if (pos > 0 && y.values[static_cast<std::size_t>(order[pos])] ==
                       y.values[static_cast<std::size_t>(order[pos - 1])]) {
      first = below[static_cast<std::size_t>(order[pos - 1])];
    }
    below[static_cast<std::size_t>(order[pos])] = first;
  }

  Eigen::VectorXd scores(p);
  std::vector<char> flat(static_cast<std::size_t>(p), 0);
  const double dn = static_cast<double>(n);
#pragma omp parallel for schedule(static)
  for (Index j = 0; j < p; ++j) {
    const auto col = x.values.col(j);
    const double mean = col.mean();
    const double sd = std::sqrt((col.array() - mean).square().sum() / (dn - 1.0));
    if (!(sd > 0.0)) {
      scores[j] = 0.0;
      flat[static_cast<std::size_t>(j)] = 1;
      continue;
    }
    std::vector<double> prefix(un + 1, 0.0);
    for (std::size_t pos = 0; pos < un; ++pos) {
      prefix[pos + 1] = prefix[pos] + (col[order[pos]] - mean) / sd;
    }
    double total = 0.0;
    for (std::size_t k = 0; k < un; ++k) {
      const double inner = prefix[below[k]] / dn;
      total += inner * inner;
    }
    scores[j] = total / dn;
  }

  std::vector<Index> flat_columns;
  for (Index j = 0; j < p; ++j) {
    if (flat[static_cast<std::size_t>(j)]) flat_columns.push_back(j);
  }
  return finish(BaselineMethod::Sirs, std::move(scores), n, std::move(flat_columns));
}

}  // namespace wls
