#pragma once

#include "wls/matrix_spectrum.hpp"
#include "wls/random.hpp"
#include "wls/slicing.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace wls {

enum class DesignSetting { Spiked, Ar1 };

// example1..3 are the spike profiles of the three simulation models; `none`
// gives an identity scale and `custom` takes its leading entries from
// ScenarioConfig::custom_spikes.
enum class SpikeProfile { None, Example1, Example2, Example3, Custom };

enum class RotationMode { Haar, Identity };

enum class ResponseModel { Linear, IndexRatio, Hetero };

struct ScenarioConfig {
  std::string id;
  DesignSetting setting = DesignSetting::Ar1;
  Index n = 0;
  Index p = 0;
  double sigma = 1.0;
  double rho = 0.0;
  SpikeProfile spike_profile = SpikeProfile::None;
  RotationMode v_mode = RotationMode::Identity;
  ResponseModel model = ResponseModel::Linear;
  std::vector<Index> true_set;  // 0-based, strictly increasing
  std::vector<double> custom_spikes;
  Index replicates = 100;
  std::uint64_t seed = 1;
};

/// Throws InvalidInput when a field breaks the ScenarioConfig invariants.
void validate(const ScenarioConfig& config);

/// One simulated replicate: raw (uncentered) design and response.
struct Dataset {
  DesignMatrix x;
  ResponseVector y;
};

/// Leading diagonal entries of the scale matrix for a profile; the remaining
/// p - size() entries are 1. Example profiles use ceil(p / sqrt(n)) as the
/// smallest spike.
std::vector<double> spike_values(SpikeProfile profile, Index n, Index p,
                                 const std::vector<double>& custom = {});

/// p x p Haar-distributed orthogonal matrix: QR of a Gaussian matrix with the
/// signs of R's diagonal folded into Q.
Eigen::MatrixXd haar_orthogonal(Index p, RandomStream& rng);

/// Rows x_i = V * diag(scale) * u_i with u_i standard normal. A null
/// `rotation` stands for V = I.
DesignMatrix make_spiked_design(Index n, Index p, const std::vector<double>& spikes,
                                const Eigen::MatrixXd* rotation, RandomStream& latent);

/// Gaussian rows with Cov(x_j, x_k) = rho^|j-k|, built column by column with
/// the exact AR(1) recursion.
DesignMatrix make_ar1_design(Index n, Index p, double rho, RandomStream& rng);

/// Evaluates a response model row by row with standard normal noise.
ResponseVector apply_model(const Eigen::MatrixXd& x, ResponseModel model,
                           const std::vector<Index>& true_set, double sigma,
                           RandomStream& noise);

/// Draws replicates of one scenario.
///
/// The rotation V is the eigenvector matrix of the population covariance, so
/// it is drawn once per scenario (from the seed alone) and shared by every
/// replicate; only the latent factors and the noise change between
/// replicates. The same (config, replicate) always yields the same bits.
class ScenarioSampler {
 public:
  explicit ScenarioSampler(ScenarioConfig config);

  const ScenarioConfig& config() const noexcept { return config_; }
  Dataset draw(std::uint64_t replicate) const;

 private:
  ScenarioConfig config_;
  std::vector<double> spikes_;
  Eigen::MatrixXd rotation_;  // empty unless Haar
};

/// Convenience for a single replicate; rebuilds the rotation on every call.
Dataset generate(const ScenarioConfig& config, std::uint64_t replicate);

/// The 28 simulation scenarios (1.1-1.10, 2.1-2.10, 3.1-3.8).
const std::vector<ScenarioConfig>& scenario_catalog();

/// Throws UsageError listing the valid ids when `id` is unknown.
const ScenarioConfig& find_scenario(std::string_view id);

/// `key = value` text form; true_set is written 1-based.
std::string to_text(const ScenarioConfig& config);
ScenarioConfig scenario_from_text(std::string_view text);

std::string_view to_string(DesignSetting v) noexcept;
std::string_view to_string(SpikeProfile v) noexcept;
std::string_view to_string(RotationMode v) noexcept;
std::string_view to_string(ResponseModel v) noexcept;

}  // namespace wls
