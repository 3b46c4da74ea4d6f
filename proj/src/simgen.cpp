#include "wls/simgen.hpp"

#include "wls/error.hpp"

#include <Eigen/QR>

#include <charconv>
#include <cmath>
#include <sstream>

namespace wls {

std::string_view to_string(DesignSetting v) noexcept {
  return v == DesignSetting::Spiked ? "spiked" : "ar1";
}

std::string_view to_string(SpikeProfile v) noexcept {
  switch (v) {
    case SpikeProfile::None: return "none";
    case SpikeProfile::Example1: return "example1";
    case SpikeProfile::Example2: return "example2";
    case SpikeProfile::Example3: return "example3";
    case SpikeProfile::Custom: return "custom";
  }
  return "none";
}

std::string_view to_string(RotationMode v) noexcept {
  return v == RotationMode::Haar ? "haar" : "identity";
}

std::string_view to_string(ResponseModel v) noexcept {
  switch (v) {
    case ResponseModel::Linear: return "linear";
    case ResponseModel::IndexRatio: return "index_ratio";
    case ResponseModel::Hetero: return "hetero";
  }
  return "linear";
}

void validate(const ScenarioConfig& c) {
  auto fail = [&](const std::string& what) {
    throw Error(ErrorKind::InvalidInput, "scenario '" + c.id + "': " + what);
  };
  if (c.n < 2) fail("n must be at least 2");
  if (c.p < 1) fail("p must be at least 1");
  if (!(c.sigma > 0.0)) fail("sigma must be positive");
  if (!(c.rho >= 0.0 && c.rho < 1.0)) fail("rho must lie in [0, 1)");
  if (c.true_set.size() != 6) fail("models use exactly 6 true predictors");
  for (std::size_t i = 0; i < c.true_set.size(); ++i) {
    if (c.true_set[i] < 0 || c.true_set[i] >= c.p) fail("true_set index out of range");
    if (i > 0 && c.true_set[i] <= c.true_set[i - 1]) fail("true_set must be increasing");
  }
  if (c.replicates < 1) fail("replicates must be at least 1");
}

std::vector<double> spike_values(SpikeProfile profile, Index n, Index p,
                                 const std::vector<double>& custom) {
  const double floor_spike =
      std::ceil(static_cast<double>(p) / std::sqrt(static_cast<double>(n)));
  std::vector<double> spikes;
  auto ladder = [&](int top) {
    for (int k = top; k >= 0; --k) spikes.push_back(floor_spike + k);
  };
  switch (profile) {
    case SpikeProfile::None: break;
    case SpikeProfile::Example1: ladder(80); break;
    case SpikeProfile::Example2:
    case SpikeProfile::Example3: ladder(50); break;
    case SpikeProfile::Custom: spikes = custom; break;
  }
  if (static_cast<Index>(spikes.size()) > p) {
    throw Error(ErrorKind::InvalidProfile,
                std::to_string(spikes.size()) + " spikes do not fit in p = " +
                    std::to_string(p));
  }
  for (double s : spikes) {
    if (!(s > 0.0) || !std::isfinite(s)) {
      throw Error(ErrorKind::InvalidProfile, "spike values must be positive");
    }
  }
  return spikes;
}

Eigen::MatrixXd haar_orthogonal(Index p, RandomStream& rng) {
  Eigen::MatrixXd g(p, p);
  for (Index i = 0; i < p; ++i) {
    for (Index j = 0; j < p; ++j) g(i, j) = rng.normal();
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  const auto& r = qr.matrixQR();
  for (Index j = 0; j < p; ++j) {
    if (r(j, j) < 0.0) q.col(j) *= -1.0;
  }
  return q;
}

DesignMatrix make_spiked_design(Index n, Index p, const std::vector<double>& spikes,
                                const Eigen::MatrixXd* rotation, RandomStream& latent) {
  if (static_cast<Index>(spikes.size()) > p) {
    throw Error(ErrorKind::InvalidProfile, "more spikes than predictors");
  }
  Eigen::MatrixXd u(n, p);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < p; ++j) u(i, j) = latent.normal();
  }
  for (std::size_t k = 0; k < spikes.size(); ++k) {
    u.col(static_cast<Index>(k)) *= spikes[k];
  }
  if (rotation == nullptr) {
    return make_design(std::move(u));
  }
  if (rotation->rows() != p || rotation->cols() != p) {
    throw Error(ErrorKind::InvalidInput, "rotation must be p x p");
  }
  return make_design(u * rotation->transpose());
}

DesignMatrix make_ar1_design(Index n, Index p, double rho, RandomStream& rng) {
  if (!(rho >= 0.0 && rho < 1.0)) {
    throw Error(ErrorKind::InvalidInput, "rho must lie in [0, 1)");
  }
  const double innovation = std::sqrt(1.0 - rho * rho);
  Eigen::MatrixXd x(n, p);
  for (Index i = 0; i < n; ++i) {
    x(i, 0) = rng.normal();
    for (Index j = 1; j < p; ++j) {
      x(i, j) = rho * x(i, j - 1) + innovation * rng.normal();
    }
  }
  return make_design(std::move(x));
}

ResponseVector apply_model(const Eigen::MatrixXd& x, ResponseModel model,
                           const std::vector<Index>& true_set, double sigma,
                           RandomStream& noise) {
  if (true_set.size() != 6) {
    throw Error(ErrorKind::InvalidInput, "response models need 6 true predictors");
  }
  for (Index t : true_set) {
    if (t < 0 || t >= x.cols()) {
      throw Error(ErrorKind::InvalidInput, "true predictor index out of range");
    }
  }
  const Index n = x.rows();
  std::vector<double> y(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    const auto t = [&](int k) { return x(i, true_set[static_cast<std::size_t>(k)]); };
    const double eps = noise.normal();
    double value = 0.0;
    switch (model) {
      case ResponseModel::Linear:
        value = t(0) + t(1) + t(2) + t(3) + t(4) + t(5) + sigma * eps;
        break;
      case ResponseModel::IndexRatio: {
        const double inner = t(4) + 1.2 * t(5) + 1.0;
        value = (t(0) + t(1) + 1.5 * t(2) + 1.2 * t(3)) / (0.5 + inner * inner) +
                sigma * eps;
        break;
      }
      case ResponseModel::Hetero:
        // Near-zero denominators are kept; the heavy tail is part of the model.
        value = sigma * eps /
                (1.0 + 1.2 * t(0) + t(1) + t(2) + 1.5 * t(3) + t(4) + t(5));
        break;
    }
    y[static_cast<std::size_t>(i)] = value;
  }
  return ResponseVector::continuous(std::move(y));
}

ScenarioSampler::ScenarioSampler(ScenarioConfig config) : config_{std::move(config)} {
  validate(config_);
  if (config_.setting == DesignSetting::Spiked) {
    spikes_ = spike_values(config_.spike_profile, config_.n, config_.p, config_.custom_spikes);
    if (config_.v_mode == RotationMode::Haar) {
      RandomStream rotation(config_.seed, shared_stream_id(StreamTag::Rotation));
      rotation_ = haar_orthogonal(config_.p, rotation);
    }
  }
}

Dataset ScenarioSampler::draw(std::uint64_t replicate) const {
  RandomStream design(config_.seed, stream_id(replicate, StreamTag::Design));
  RandomStream noise(config_.seed, stream_id(replicate, StreamTag::Noise));

  Dataset data;
  if (config_.setting == DesignSetting::Spiked) {
    const Eigen::MatrixXd* rotation = rotation_.size() > 0 ? &rotation_ : nullptr;
    data.x = make_spiked_design(config_.n, config_.p, spikes_, rotation, design);
  } else {
    data.x = make_ar1_design(config_.n, config_.p, config_.rho, design);
  }
  data.y = apply_model(data.x.values, config_.model, config_.true_set, config_.sigma, noise);
  return data;
}

Dataset generate(const ScenarioConfig& config, std::uint64_t replicate) {
  return ScenarioSampler(config).draw(replicate);
}

namespace {

ScenarioConfig spiked(std::string id, Index n, Index p, double sigma, SpikeProfile profile,
                      RotationMode v_mode, ResponseModel model) {
  ScenarioConfig c;
  c.id = std::move(id);
  c.setting = DesignSetting::Spiked;
  c.n = n;
  c.p = p;
  c.sigma = sigma;
  c.spike_profile = profile;
  c.v_mode = v_mode;
  c.model = model;
  c.true_set = {0, 9, 14, 19, 24, 29};
  return c;
}

ScenarioConfig ar1(std::string id, Index n, Index p, double rho, double sigma,
                   ResponseModel model) {
  ScenarioConfig c;
  c.id = std::move(id);
  c.setting = DesignSetting::Ar1;
  c.n = n;
  c.p = p;
  c.rho = rho;
  c.sigma = sigma;
  c.model = model;
  c.true_set = {0, 9, 19, 29, 39, 49};
  return c;
}

std::vector<ScenarioConfig> build_catalog() {
  using enum ResponseModel;
  const auto e1 = SpikeProfile::Example1;
  const auto e2 = SpikeProfile::Example2;
  const auto e3 = SpikeProfile::Example3;
  const auto haar = RotationMode::Haar;
  const auto ident = RotationMode::Identity;
  return {
      spiked("1.1", 500, 700, 1.0, e1, haar, Linear),
      spiked("1.2", 500, 1500, 1.0, e1, haar, Linear),
      spiked("1.3", 500, 1500, 1.5, e1, haar, Linear),
      spiked("1.4", 500, 2000, 1.0, e1, haar, Linear),
      spiked("1.5", 300, 1000, 1.0, e1, haar, Linear),
      ar1("1.6", 500, 100, 0.5, 1.0, Linear),
      ar1("1.7", 500, 1000, 0.5, 1.0, Linear),
      ar1("1.8", 500, 1000, 0.5, 1.5, Linear),
      ar1("1.9", 500, 1500, 0.5, 1.0, Linear),
      ar1("1.10", 300, 1000, 0.3, 1.0, Linear),
      spiked("2.1", 1000, 1200, 1.0, e2, ident, IndexRatio),
      spiked("2.2", 1000, 1500, 1.0, e2, ident, IndexRatio),
      spiked("2.3", 1000, 1500, 1.5, e2, ident, IndexRatio),
      spiked("2.4", 1000, 2000, 1.0, e2, ident, IndexRatio),
      spiked("2.5", 300, 2000, 1.0, e2, ident, IndexRatio),
      ar1("2.6", 1000, 200, 0.5, 1.0, IndexRatio),
      ar1("2.7", 1000, 2000, 0.5, 1.0, IndexRatio),
      ar1("2.8", 1000, 2000, 0.5, 1.5, IndexRatio),
      ar1("2.9", 1000, 2500, 0.5, 1.0, IndexRatio),
      ar1("2.10", 500, 2000, 0.3, 1.0, IndexRatio),
      spiked("3.1", 1000, 1200, 1.0, e3, ident, Hetero),
      spiked("3.2", 1000, 1500, 1.0, e3, ident, Hetero),
      spiked("3.3", 1000, 2000, 1.0, e3, ident, Hetero),
      spiked("3.4", 300, 2000, 1.0, e3, ident, Hetero),
      ar1("3.5", 1000, 200, 0.3, 1.0, Hetero),
      ar1("3.6", 1000, 2000, 0.1, 1.0, Hetero),
      ar1("3.7", 1000, 2500, 0.1, 1.0, Hetero),
      ar1("3.8", 500, 2000, 0.1, 1.0, Hetero),
  };
}

}  // namespace

const std::vector<ScenarioConfig>& scenario_catalog() {
  static const std::vector<ScenarioConfig> catalog = build_catalog();
  return catalog;
}

const ScenarioConfig& find_scenario(std::string_view id) {
  for (const auto& c : scenario_catalog()) {
    if (c.id == id) return c;
  }
  std::string valid;
  for (const auto& c : scenario_catalog()) {
    if (!valid.empty()) valid += ", ";
    valid += c.id;
  }
  throw Error(ErrorKind::UsageError,
              "unknown scenario '" + std::string(id) + "'; valid ids: " + valid);
}

namespace {

std::string join_doubles(const std::vector<double>& values) {
  std::ostringstream out;
  out.precision(17);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out << ',';
    out << values[i];
  }
  return out.str();
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw Error(ErrorKind::ParseError,
                "bad value '" + std::string(text) + "' for '" + std::string(key) + "'");
  }
  return value;
}

template <typename Enum, std::size_t N>
Enum parse_enum(std::string_view key, std::string_view text, const Enum (&options)[N]) {
  for (Enum option : options) {
    if (to_string(option) == text) return option;
  }
  throw Error(ErrorKind::ParseError,
              "bad value '" + std::string(text) + "' for '" + std::string(key) + "'");
}

std::vector<std::string_view> split_commas(std::string_view text) {
  std::vector<std::string_view> parts;
  while (!text.empty()) {
    const auto comma = text.find(',');
    parts.push_back(trim(text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return parts;
}

}  // namespace

std::string to_text(const ScenarioConfig& c) {
  std::ostringstream out;
  out.precision(17);
  out << "id = " << c.id << '\n'
      << "setting = " << to_string(c.setting) << '\n'
      << "n = " << c.n << '\n'
      << "p = " << c.p << '\n'
      << "sigma = " << c.sigma << '\n'
      << "rho = " << c.rho << '\n'
      << "spike_profile = " << to_string(c.spike_profile) << '\n'
      << "v_mode = " << to_string(c.v_mode) << '\n'
      << "model = " << to_string(c.model) << '\n'
      << "true_set = ";
  for (std::size_t i = 0; i < c.true_set.size(); ++i) {
    out << (i > 0 ? "," : "") << c.true_set[i] + 1;
  }
  out << '\n';
  if (!c.custom_spikes.empty()) out << "custom_spikes = " << join_doubles(c.custom_spikes) << '\n';
  out << "replicates = " << c.replicates << '\n' << "seed = " << c.seed << '\n';
  return out.str();
}

ScenarioConfig scenario_from_text(std::string_view text) {
  static constexpr DesignSetting kSettings[] = {DesignSetting::Spiked, DesignSetting::Ar1};
  static constexpr SpikeProfile kProfiles[] = {SpikeProfile::None, SpikeProfile::Example1,
                                               SpikeProfile::Example2, SpikeProfile::Example3,
                                               SpikeProfile::Custom};
  static constexpr RotationMode kRotations[] = {RotationMode::Haar, RotationMode::Identity};
  static constexpr ResponseModel kModels[] = {ResponseModel::Linear, ResponseModel::IndexRatio,
                                              ResponseModel::Hetero};
  ScenarioConfig c;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto newline = text.find('\n');
    std::string_view line = text.substr(0, newline);
    text.remove_prefix(newline == std::string_view::npos ? text.size() : newline + 1);
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorKind::ParseError,
                  "scenario line " + std::to_string(line_no) + " has no '='");
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));

    if (key == "id") c.id = value;
    else if (key == "setting") c.setting = parse_enum(key, value, kSettings);
    else if (key == "n") c.n = parse_number<Index>(key, value);
    else if (key == "p") c.p = parse_number<Index>(key, value);
    else if (key == "sigma") c.sigma = parse_number<double>(key, value);
    else if (key == "rho") c.rho = parse_number<double>(key, value);
    else if (key == "spike_profile") c.spike_profile = parse_enum(key, value, kProfiles);
    else if (key == "v_mode") c.v_mode = parse_enum(key, value, kRotations);
    else if (key == "model") c.model = parse_enum(key, value, kModels);
    else if (key == "replicates") c.replicates = parse_number<Index>(key, value);
    else if (key == "seed") c.seed = parse_number<std::uint64_t>(key, value);
    else if (key == "true_set") {
      c.true_set.clear();
      for (auto part : split_commas(value)) c.true_set.push_back(parse_number<Index>(key, part) - 1);
    } else if (key == "custom_spikes") {
      c.custom_spikes.clear();
      for (auto part : split_commas(value)) c.custom_spikes.push_back(parse_number<double>(key, part));
    } else {
      throw Error(ErrorKind::ParseError, "unknown scenario key '" + std::string(key) + "'");
    }
  }
  validate(c);
  return c;
}

}  // namespace wls
