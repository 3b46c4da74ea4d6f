#pragma once

#include "wls/matrix_spectrum.hpp"
#include "wls/screening.hpp"

#include <span>

// Serial, straight-from-the-definition versions of the parallel kernels.
// They are slow on purpose and exist for tests and the kernel benchmark.
namespace wls::reference {

Eigen::VectorXd wls_scores(const Eigen::MatrixXd& v, const WeightMatrix& w);

Eigen::VectorXd sis_scores(const Eigen::MatrixXd& x, std::span<const double> y);

// Materialises both n x n double-centred distance matrices.
double distance_correlation(std::span<const double> a, std::span<const double> b);

Eigen::VectorXd dcor_scores(const Eigen::MatrixXd& x, std::span<const double> y);

// O(n^2 p) double loop over the indicator 1(y_i < y_k).
Eigen::VectorXd sirs_scores(const Eigen::MatrixXd& x, std::span<const double> y);

}  // namespace wls::reference
