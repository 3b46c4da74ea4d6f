#include "wls/reference.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace wls::reference {

Eigen::VectorXd wls_scores(const Eigen::MatrixXd& v, const WeightMatrix& w) {
  const Index p = v.rows();
  const Index d = v.cols();
  Eigen::VectorXd scores = Eigen::VectorXd::Zero(p);
  for (Index j = 0; j < p; ++j) {
    double total = 0.0;
    for (Index a = 0; a < d; ++a) {
      for (Index b = 0; b < d; ++b) {
        total += v(j, a) * w.values(a, b) * v(j, b);
      }
    }
    scores[j] = total;
  }
  return scores;
}

Eigen::VectorXd sis_scores(const Eigen::MatrixXd& x, std::span<const double> y) {
  const auto n = static_cast<Index>(y.size());
  double y_mean = 0.0;
  for (double v : y) y_mean += v;
  y_mean /= static_cast<double>(n);

  Eigen::VectorXd scores(x.cols());
  for (Index j = 0; j < x.cols(); ++j) {
    double x_mean = 0.0;
    for (Index i = 0; i < n; ++i) x_mean += x(i, j);
    x_mean /= static_cast<double>(n);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (Index i = 0; i < n; ++i) {
      const double dx = x(i, j) - x_mean;
      const double dy = y[static_cast<std::size_t>(i)] - y_mean;
      sxy += dx * dy;
      sxx += dx * dx;
      syy += dy * dy;
    }
    scores[j] = (sxx > 0.0 && syy > 0.0) ? std::abs(sxy) / std::sqrt(sxx * syy) : 0.0;
  }
  return scores;
}

namespace {

Eigen::MatrixXd double_centered_distances(std::span<const double> a) {
  const auto n = static_cast<Index>(a.size());
  Eigen::MatrixXd dist(n, n);
  for (Index k = 0; k < n; ++k) {
    for (Index l = 0; l < n; ++l) {
      dist(k, l) = std::abs(a[static_cast<std::size_t>(k)] - a[static_cast<std::size_t>(l)]);
    }
  }
  const Eigen::VectorXd row = dist.rowwise().mean();
  const Eigen::RowVectorXd col = dist.colwise().mean();
  const double grand = dist.mean();
  for (Index k = 0; k < n; ++k) {
    for (Index l = 0; l < n; ++l) {
      dist(k, l) += grand - row[k] - col[l];
    }
  }
  return dist;
}

}  // namespace

double distance_correlation(std::span<const double> a, std::span<const double> b) {
  const Eigen::MatrixXd da = double_centered_distances(a);
  const Eigen::MatrixXd db = double_centered_distances(b);
  const double n2 = static_cast<double>(a.size() * a.size());
  const double dcov = da.cwiseProduct(db).sum() / n2;
  const double va = da.squaredNorm() / n2;
  const double vb = db.squaredNorm() / n2;
  if (!(va > 0.0) || !(vb > 0.0)) return 0.0;
  return std::sqrt(std::max(0.0, dcov / std::sqrt(va * vb)));
}

Eigen::VectorXd dcor_scores(const Eigen::MatrixXd& x, std::span<const double> y) {
  Eigen::VectorXd scores(x.cols());
  for (Index j = 0; j < x.cols(); ++j) {
    const std::span<const double> col(x.col(j).data(), static_cast<std::size_t>(x.rows()));
    scores[j] = distance_correlation(col, y);
  }
  return scores;
}

Eigen::VectorXd sirs_scores(const Eigen::MatrixXd& x, std::span<const double> y) {
  const Index n = x.rows();
  const double dn = static_cast<double>(n);
  Eigen::VectorXd scores(x.cols());
  for (Index j = 0; j < x.cols(); ++j) {
    const double mean = x.col(j).mean();
    const double sd = std::sqrt((x.col(j).array() - mean).square().sum() / (dn - 1.0));
    if (!(sd > 0.0)) {
      scores[j] = 0.0;
      continue;
    }
    double total = 0.0;
    for (Index k = 0; k < n; ++k) {
      double inner = 0.0;
      for (Index i = 0; i < n; ++i) {
        if (y[static_cast<std::size_t>(i)] < y[static_cast<std::size_t>(k)]) {
          inner += (x(i, j) - mean) / sd;
        }
      }
      inner /= dn;
      total += inner * inner;
    }
    scores[j] = total / dn;
  }
  return scores;
}

}  // namespace wls::reference
