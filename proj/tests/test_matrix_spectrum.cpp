#include "wls/error.hpp"
#include "wls/matrix_spectrum.hpp"
#include "wls/simgen.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>

namespace wls {
namespace {

using test::error_kind;

TEST(CenterColumns, TwoPointColumn) {
  Eigen::MatrixXd raw(2, 1);
  raw << 1, 3;
  const DesignMatrix x = center_columns(raw);
  EXPECT_TRUE(x.centered);
  EXPECT_DOUBLE_EQ(x.values(0, 0), -1.0);
  EXPECT_DOUBLE_EQ(x.values(1, 0), 1.0);
  EXPECT_DOUBLE_EQ(x.column_means[0], 2.0);
}

TEST(CenterColumns, IdempotentOnZeroMeanInput) {
  Eigen::MatrixXd raw(3, 2);
  raw << -1, 2, 0, -4, 1, 2;
  const DesignMatrix x = center_columns(raw);
  EXPECT_EQ(x.values, raw);
  EXPECT_EQ(x.column_means, Eigen::VectorXd::Zero(2));
}

TEST(CenterColumns, RandomColumnsSumToZero) {
  const Eigen::MatrixXd raw = test::gaussian(10, 4, 11).array() + 3.0;
  const DesignMatrix x = center_columns(raw);
  for (Index j = 0; j < 4; ++j) {
    double sum = 0.0;
    for (Index i = 0; i < 10; ++i) sum += x.values(i, j);
    EXPECT_LT(std::abs(sum), 1e-10);
  }
}

TEST(CenterColumns, RejectsBadInput) {
  Eigen::MatrixXd raw = Eigen::MatrixXd::Ones(3, 2);
  raw(1, 1) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_EQ(error_kind([&] { center_columns(raw); }), ErrorKind::InvalidInput);
  raw(1, 1) = std::numeric_limits<double>::infinity();
  EXPECT_EQ(error_kind([&] { center_columns(raw); }), ErrorKind::InvalidInput);
  EXPECT_EQ(error_kind([&] { center_columns(Eigen::MatrixXd::Ones(1, 3)); }),
            ErrorKind::TooFewSamples);
  EXPECT_EQ(error_kind([&] { make_design(Eigen::MatrixXd::Ones(1, 3)); }),
            ErrorKind::TooFewSamples);
}

TEST(ThinSvd, SingularValuesMatchGramEigenvalues) {
  Eigen::MatrixXd raw(4, 2);
  raw << 3, 0, -3, 0, 0, 2, 0, -2;
  const DesignMatrix x = center_columns(raw);
  const SpectralDecomposition svd = thin_svd(x, 2);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(x.values.transpose() * x.values);
  // Eigenvalues come out ascending.
  for (Index i = 0; i < 2; ++i) {
    const double oracle = std::sqrt(eig.eigenvalues()[1 - i]);
    EXPECT_LT(std::abs(svd.singular_values[i] - oracle) / oracle, 1e-10);
  }
}

TEST(ThinSvd, RankOneMatrix) {
  Eigen::VectorXd u(5), v(3);
  u << 1, -2, 0.5, 3, -1;
  v << 2, 1, -1;
  const DesignMatrix x = center_columns(u * v.transpose());
  const SpectralDecomposition svd = thin_svd(x, 3);
  EXPECT_LT(svd.singular_values[1] / svd.singular_values[0], 1e-10);
  EXPECT_EQ(svd.numerical_rank(), 1);
}

TEST(ThinSvd, WideReconstruction) {
  const DesignMatrix x = center_columns(test::gaussian(20, 50, 5));
  const SpectralDecomposition svd = thin_svd(x, 20);
  // A centered 20-row matrix has rank 19: the 20th singular value is zero.
  EXPECT_EQ(svd.numerical_rank(), 19);
  const Eigen::MatrixXd rebuilt =
      svd.left * svd.singular_values.asDiagonal() * svd.right.transpose();
  EXPECT_LT((rebuilt - x.values).norm() / x.values.norm(), 1e-10);
}

class ThinSvdSizes : public ::testing::TestWithParam<std::pair<int, int>> {};

TEST_P(ThinSvdSizes, OrthonormalityReconstructionAndCenteredU) {
  const auto [n, p] = GetParam();
  const DesignMatrix x = center_columns(test::gaussian(n, p, 100 + n + p));
  const Index k = std::min(n, p);
  const SpectralDecomposition full = thin_svd(x, k);
  const Index r = full.numerical_rank();
  const SpectralDecomposition svd = thin_svd(x, r);

  const Eigen::MatrixXd utu = svd.left.transpose() * svd.left;
  const Eigen::MatrixXd vtv = svd.right.transpose() * svd.right;
  EXPECT_LT((utu - Eigen::MatrixXd::Identity(r, r)).cwiseAbs().maxCoeff(), 1e-8);
  EXPECT_LT((vtv - Eigen::MatrixXd::Identity(r, r)).cwiseAbs().maxCoeff(), 1e-8);
  const Eigen::MatrixXd rebuilt =
      svd.left * svd.singular_values.asDiagonal() * svd.right.transpose();
  EXPECT_LT((rebuilt - x.values).norm() / x.values.norm(), 1e-8);
  EXPECT_LT(svd.left.colwise().sum().cwiseAbs().maxCoeff(), 1e-8);
  for (Index i = 1; i < r; ++i) {
    EXPECT_LE(svd.singular_values[i], svd.singular_values[i - 1]);
  }
}

INSTANTIATE_TEST_SUITE_P(Shapes, ThinSvdSizes,
                         ::testing::Values(std::pair{30, 8}, std::pair{8, 30},
                                           std::pair{60, 60}, std::pair{200, 500},
                                           std::pair{500, 200}));

TEST(ThinSvd, SignConventionAndDeterminism) {
  const DesignMatrix x = center_columns(test::gaussian(40, 12, 9));
  const SpectralDecomposition a = thin_svd(x, 12);
  const SpectralDecomposition b = thin_svd(x, 12);
  EXPECT_EQ(a.right, b.right);
  EXPECT_EQ(a.left, b.left);
  for (Index c = 0; c < a.right.cols(); ++c) {
    Index arg = 0;
    a.right.col(c).cwiseAbs().maxCoeff(&arg);
    EXPECT_GT(a.right(arg, c), 0.0);
  }
}

TEST(ThinSvd, Errors) {
  const DesignMatrix x = center_columns(test::gaussian(6, 4, 1));
  EXPECT_EQ(error_kind([&] { thin_svd(x, 0); }), ErrorKind::InvalidRank);
  EXPECT_EQ(error_kind([&] { thin_svd(x, 5); }), ErrorKind::InvalidRank);
  const DesignMatrix raw = make_design(test::gaussian(6, 4, 1));
  EXPECT_EQ(error_kind([&] { thin_svd(raw, 2); }), ErrorKind::InvalidInput);
}

TEST(ThetaSequence, EqualSpectrum) {
  const Eigen::VectorXd theta = theta_sequence(Eigen::Vector3d(1, 1, 1));
  EXPECT_EQ(theta, Eigen::Vector3d(2, 2, 2));
}

TEST(ThetaSequence, DirectFormula) {
  const Eigen::VectorXd theta = theta_sequence(Eigen::Vector2d(2, 1));
  EXPECT_DOUBLE_EQ(theta[0], 2.0);
  EXPECT_DOUBLE_EQ(theta[1], 1.25);
}

TEST(ThetaSequence, FourValues) {
  const Eigen::Vector4d s(10, 3, 1, 0.5);
  const Eigen::VectorXd theta = theta_sequence(s);
  // Oracle: (s_i / s_1)^2 + 1 evaluated term by term.
  for (Index i = 0; i < 4; ++i) {
    const double oracle = (s[i] * s[i]) / (s[0] * s[0]) + 1.0;
    EXPECT_NEAR(theta[i], oracle, 1e-15);
  }
  EXPECT_EQ(theta[0], 2.0);
  EXPECT_NEAR(theta[1], 1.09, 1e-12);
  EXPECT_NEAR(theta[2], 1.01, 1e-12);
  EXPECT_NEAR(theta[3], 1.0025, 1e-12);
}

TEST(ThetaSequence, DropsNumericallyZeroValues) {
  const Eigen::VectorXd theta = theta_sequence(Eigen::Vector3d(1, 0.5, 1e-14));
  EXPECT_EQ(theta.size(), 2);
}

TEST(ThetaSequence, Errors) {
  EXPECT_EQ(error_kind([] { theta_sequence(Eigen::VectorXd()); }), ErrorKind::InvalidSpectrum);
  EXPECT_EQ(error_kind([] { theta_sequence(Eigen::Vector2d(1, 0)); }),
            ErrorKind::InvalidSpectrum);
  EXPECT_EQ(error_kind([] { theta_sequence(Eigen::Vector2d(1, -1)); }),
            ErrorKind::InvalidSpectrum);
  EXPECT_EQ(error_kind([] { theta_sequence(Eigen::Vector2d(1, 2)); }),
            ErrorKind::InvalidSpectrum);
}

TEST(BicSpikeCount, SingleDominantSpike) {
  const double eps = 1e-12;
  Eigen::VectorXd theta = Eigen::VectorXd::Constant(50, 1.0 + eps);
  theta[0] = 2.0;
  SpikeOptions opts;
  opts.c_n1 = 1.0;
  const SpikeSelection sel = bic_spike_count(theta, 100, 50, opts);
  EXPECT_EQ(sel.d_hat, 1);
  EXPECT_EQ(sel.criterion_trace.size(), 50u);
}

TEST(BicSpikeCount, FullModeIgnoresTheta) {
  SpikeOptions opts;
  opts.mode = SpikeMode::Full;
  const Eigen::VectorXd theta = Eigen::VectorXd::Constant(10, 1.5);
  const SpikeSelection sel = bic_spike_count(theta, 50, 200, opts);
  EXPECT_EQ(sel.d_hat, 50);
  EXPECT_EQ(sel.mode, SpikeMode::Full);
}

TEST(BicSpikeCount, FixedMode) {
  SpikeOptions opts;
  opts.mode = SpikeMode::Fixed;
  opts.fixed_d = 3;
  const Eigen::VectorXd theta = Eigen::VectorXd::Constant(10, 1.5);
  EXPECT_EQ(bic_spike_count(theta, 20, 10, opts).d_hat, 3);
  opts.fixed_d = 11;
  EXPECT_EQ(error_kind([&] { bic_spike_count(theta, 20, 10, opts); }), ErrorKind::InvalidRank);
  opts.fixed_d = 0;
  EXPECT_EQ(error_kind([&] { bic_spike_count(theta, 20, 10, opts); }), ErrorKind::InvalidRank);
}

TEST(BicSpikeCount, Errors) {
  EXPECT_EQ(error_kind([] { bic_spike_count(Eigen::VectorXd(), 10, 10, {}); }),
            ErrorKind::InvalidInput);
  SpikeOptions opts;
  opts.c_n1 = 0.0;
  EXPECT_EQ(error_kind([&] { bic_spike_count(Eigen::Vector2d(2, 1.5), 10, 10, opts); }),
            ErrorKind::InvalidInput);
}

TEST(BicSpikeCount, TraceMatchesDirectEvaluation) {
  const DesignMatrix x = center_columns(test::gaussian(80, 30, 77));
  const SpectralDecomposition svd = thin_svd(x, 30);
  const Eigen::VectorXd theta = theta_sequence(svd.singular_values);
  for (double c : {0.002, 0.5, 2.0}) {
    SpikeOptions opts;
    opts.c_n1 = c;
    const SpikeSelection sel = bic_spike_count(theta, 80, 30, opts);
    const std::vector<double> oracle = test::spike_criterion(
        {theta.data(), theta.data() + theta.size()}, 80, 30, c);
    ASSERT_EQ(sel.criterion_trace.size(), oracle.size());
    for (std::size_t r = 0; r < oracle.size(); ++r) {
      EXPECT_NEAR(sel.criterion_trace[r], oracle[r], 1e-12 * (1.0 + std::abs(oracle[r])));
    }
    EXPECT_EQ(sel.d_hat, static_cast<Index>(test::argmin_first(oracle)) + 1);
    for (std::size_t r = 1; r < sel.loss_trace.size(); ++r) {
      EXPECT_LE(sel.loss_trace[r], sel.loss_trace[r - 1]);
    }
  }
}

TEST(BicSpikeCount, TiesResolveToSmallestR) {
  // theta = 1 beyond the first entry makes the loss zero everywhere, so D(r)
  // is the penalty alone and strictly increasing.
  const Eigen::VectorXd theta = Eigen::Vector3d(2.0, 1.0, 1.0);
  const SpikeSelection sel = bic_spike_count(theta, 100, 3, {});
  EXPECT_EQ(sel.d_hat, 1);
}

TEST(BicSpikeCount, PlantedThreeSpikeSpectrum) {
  ScenarioConfig c;
  c.id = "three-spike";
  c.setting = DesignSetting::Spiked;
  c.n = 400;
  c.p = 600;
  c.spike_profile = SpikeProfile::Custom;
  c.custom_spikes = {50, 40, 30};
  c.v_mode = RotationMode::Identity;
  c.true_set = {0, 1, 2, 3, 4, 5};
  c.seed = 2024;
  const Dataset data = generate(c, 0);
  const DesignMatrix x = center_columns(data.x.values);
  const SpectralDecomposition svd = thin_svd(x, 400);
  const Eigen::VectorXd theta = theta_sequence(svd.singular_values.head(svd.numerical_rank()));
  SpikeOptions opts;
  const SpikeSelection sel = bic_spike_count(theta, 400, 600, opts);
  const std::vector<double> oracle = test::spike_criterion(
      {theta.data(), theta.data() + theta.size()}, 400, 400, opts.c_n1);
  EXPECT_EQ(test::argmin_first(oracle) + 1, 3u);
  EXPECT_EQ(sel.d_hat, 3);
}

}  // namespace
}  // namespace wls
